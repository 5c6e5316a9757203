"""Command line interface for the sl3web toolkit.

Results go to standard output as TSV or JSON lines; logs go to standard error.
"""
import logging
from pathlib import Path
from typing import Optional, Tuple

import click

from adapters.kl_table_cache_adapter import KLTableCacheAdapter
from adapters.render_adapter import RENDER_FORMATS, RenderAdapter
from core.errors import CombinatoricsError, PreconditionError
from core.kl_table import KLTable
from core.web import WebSum
from services.generalized_tau_service import GeneralizedTauService, MatchReport
from services.kazhdan_lusztig_service import KazhdanLusztigService
from services.khovanov_kuperberg_service import KhovanovKuperbergService
from services.robinson_schensted_service import RobinsonSchenstedService
from services.skein_reduction_service import PARAMETERS, SkeinReductionService
from services.tau_systems import system_from_name
from services.verification_service import CHECKS, VerificationService
from services.web_action_service import WebActionService
from utils.file_utils import FileUtils
from utils.parsing_utils import ParsingUtils

logger = logging.getLogger(__name__)


class CombinatoricsGroup(click.Group):
    """Click group turning library errors into exit code 1."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except CombinatoricsError as exception:
            logger.error(f"❌ {exception.__class__.__name__}: {exception}")
            ctx.exit(1)


def _load_table(n: int, threads: Optional[int] = None, use_cache: bool = True) -> KLTable:
    cache = KLTableCacheAdapter()
    table = cache.load(n) if use_cache else None
    if table is None:
        table = KazhdanLusztigService(threads=threads).compute_kl_table(n)
        if use_cache:
            cache.save(table)
    return table


@click.group(cls=CombinatoricsGroup)
def cli() -> None:
    """Tableaux, Kazhdan-Lusztig cells and sl3 webs."""


@cli.command("rs")
@click.argument("permutation")
@click.option("--steps", is_flag=True, help="Print every intermediate (P, Q) pair.")
def rs_command(permutation: str, steps: bool) -> None:
    """Print P and Q of a permutation such as 54312."""
    service = RobinsonSchenstedService()
    w = ParsingUtils.parse_permutation(permutation)
    if steps:
        for k, (p_rows, q_rows) in enumerate(service.insert_steps(w), start=1):
            click.echo(f"{k}\t{_rows(p_rows)}\t{_rows(q_rows)}")
        return
    p, q = service.rs(w)
    click.echo(f"{w}\t{p}\t{q}")


@cli.group(cls=CombinatoricsGroup)
def kl() -> None:
    """Kazhdan-Lusztig polynomials and left cells."""


@kl.command("table")
@click.argument("n", type=click.IntRange(min=1))
@click.option("--nontrivial", is_flag=True, help="Only pairs with P_{y,w} != 1.")
@click.option("--threads", type=click.IntRange(min=1), default=None)
@click.option("--cache/--no-cache", default=True, help="Reuse the .npz cache.")
def kl_table(n: int, nontrivial: bool, threads: Optional[int], cache: bool) -> None:
    """Print y, w, P_{y,w} and mu(y,w) for every y <= w."""
    table = _load_table(n, threads, cache)
    for w in table.elements:
        for y in table.elements:
            polynomial = table.polynomial(y, w)
            if polynomial.is_zero or (nontrivial and polynomial == 1):
                continue
            click.echo(f"{y}\t{w}\t{polynomial.format('v')}\t{table.mu(y, w)}")


@kl.command("cells")
@click.argument("n", type=click.IntRange(min=1))
@click.option("--threads", type=click.IntRange(min=1), default=None)
def kl_cells(n: int, threads: Optional[int]) -> None:
    """Print each left cell as its recording tableau and members."""
    service = KazhdanLusztigService(threads=threads)
    table = _load_table(n, threads)
    for cell in service.left_cells(table):
        members = ",".join(str(w) for w in cell.sorted_members())
        click.echo(f"{cell.right_tableau}\t{len(cell)}\t{members}")


@kl.command("act")
@click.argument("n", type=click.IntRange(min=1))
@click.argument("i", type=click.IntRange(min=1))
@click.argument("w")
def kl_act(n: int, i: int, w: str) -> None:
    """Print T_{s_i} C_w in the left cell of w."""
    service = KazhdanLusztigService()
    table = _load_table(n)
    x = ParsingUtils.parse_permutation(w)
    if x.n != n:
        raise PreconditionError(f"{w} is not an element of S_{n}")
    cell = service.cell_of(table, x)
    for y, coefficient in sorted(service.ts_action_on_cell(table, cell, i, x).items(),
                                 key=lambda item: item[0].one_line):
        click.echo(f"C_{y}\t{coefficient.format('v')}")


@cli.group(cls=CombinatoricsGroup)
def web() -> None:
    """sl3 webs: construction, Yamanouchi words, the S_n action."""


@web.command("from-tableau")
@click.argument("tableau")
@click.option("--output", "-o", type=click.Path(dir_okay=False, path_type=Path), default=None)
def web_from_tableau(tableau: str, output: Optional[Path]) -> None:
    """Print (or write) the web of an [n,n,n] tableau."""
    result = KhovanovKuperbergService().tableau_to_web(ParsingUtils.parse_tableau(tableau))
    if output is None:
        click.echo(result.to_text(), nl=False)
    else:
        FileUtils().write_web(output, result)


@web.command("yamanouchi")
@click.argument("web_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
def web_yamanouchi(web_file: Path) -> None:
    """Print the Yamanouchi word, tableau and boundary depths of a reduced web."""
    kk = KhovanovKuperbergService()
    loaded = FileUtils().read_web(web_file)
    word = kk.web_to_yamanouchi(loaded)
    depths = ",".join(str(depth) for depth in loaded.boundary_depths())
    click.echo(f"{word}\t{word.to_tableau()}\t{depths}")


@web.command("act")
@click.argument("word")
@click.argument("web_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--mode", type=click.Choice(sorted(PARAMETERS)), default="symmetric")
def web_act(word: str, web_file: Path, mode: str) -> None:
    """Apply a generator word such as s2s1 to a web; print coefficient and tableau."""
    parameters = PARAMETERS[mode]
    kk = KhovanovKuperbergService()
    loaded = FileUtils().read_web(web_file)
    result = SkeinReductionService(parameters).act_word(
        ParsingUtils.parse_generator_word(word), WebSum.single(loaded), parameters)
    for term, coefficient in result.items():
        click.echo(f"{coefficient.format(parameters.symbol)}\t{kk.web_to_tableau(term)}")


@web.command("search-negative")
@click.argument("n", type=click.IntRange(min=1))
@click.option("--threads", type=click.IntRange(min=1), default=None)
@click.option("--limit", type=click.IntRange(min=1), default=None)
@click.option("--generator", "generators", type=click.IntRange(min=1), multiple=True,
              help="Restrict to s_k; repeatable.")
def web_search_negative(n: int, threads: Optional[int], limit: Optional[int],
                        generators: Tuple[int, ...]) -> None:
    """Stream reduced webs with a negative coefficient in some s_k W as JSON lines."""
    records = WebActionService().find_negative_coefficient(
        n, threads=threads, limit=limit, generators=generators or None)
    for record in records:
        click.echo(record.model_dump_json())


@cli.group(cls=CombinatoricsGroup)
def gentau() -> None:
    """Generalized tau-invariants."""


@gentau.command("match")
@click.argument("system_a")
@click.argument("system_b")
@click.option("--n", "rank", type=click.IntRange(min=1), required=True, help="Rank of S_n.")
@click.option("--many-to-one", is_flag=True, help="Allow several A objects per B object.")
@click.pass_context
def gentau_match(ctx: click.Context, system_a: str, system_b: str, rank: int,
                 many_to_one: bool) -> None:
    """Match two tau systems, e.g. ``tableaux:3,3,3`` and ``webs:3``; print TSV pairs."""
    a = system_from_name(system_a, rank)
    b = system_from_name(system_b, rank)
    result = GeneralizedTauService().match_across(a, b, bijective=not many_to_one)
    for x, y in sorted(result.mapping.items(), key=lambda item: a.label(item[0])):
        click.echo(f"{a.label(x)}\t{b.label(y)}")
    report = MatchReport(system_a=a.name, system_b=b.name, rank=rank, matched=result.matched,
                         pairs=len(result.mapping), order=result.order,
                         problems=list(result.problems))
    logger.info(report.model_dump_json())
    ctx.exit(0 if result.matched else 1)


@cli.command("verify")
@click.argument("check", type=click.Choice(CHECKS))
@click.option("--n", type=click.IntRange(min=1), default=None)
@click.option("--webs", type=click.IntRange(min=1), default=None)
@click.option("--threads", type=click.IntRange(min=1), default=None)
@click.option("--generator", "generators", type=click.IntRange(min=1), multiple=True,
              help="Generators scanned by negative-coefficient; repeatable, all by default.")
@click.pass_context
def verify(ctx: click.Context, check: str, n: Optional[int], webs: Optional[int],
           threads: Optional[int], generators: Tuple[int, ...]) -> None:
    """Run a named check; print its report as one JSON line; exit 0 iff it passes."""
    report = VerificationService(threads=threads).run(check, n=n, webs=webs,
                                                      generators=generators or None)
    click.echo(report.model_dump_json())
    ctx.exit(0 if report.passed else 1)


@cli.command("render")
@click.argument("kind", type=click.Choice(("web", "tableau")))
@click.argument("item")
@click.option("--format", "fmt", type=click.Choice(RENDER_FORMATS), default="svg")
@click.option("--output", "-o", type=click.Path(dir_okay=False, path_type=Path), required=True)
@click.option("--depths", is_flag=True, help="Label faces with their depth.")
def render(kind: str, item: str, fmt: str, output: Path, depths: bool) -> None:
    """Draw a web (file or [n,n,n] tableau) or a tableau."""
    if kind == "tableau":
        target = ParsingUtils.parse_tableau(item)
    elif Path(item).is_file():
        target = FileUtils().read_web(Path(item))
    else:
        target = KhovanovKuperbergService().tableau_to_web(ParsingUtils.parse_tableau(item))
    RenderAdapter().render(target, fmt, output, depths)
    click.echo(str(output))


def _rows(rows) -> str:
    return "/".join(",".join(str(value) for value in row) for row in rows)

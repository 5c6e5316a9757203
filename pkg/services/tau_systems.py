"""Ready-made tau systems: permutations, tableaux, reduced webs and KL cells."""
import re
from typing import Optional

from core.errors import ParseError
from core.kl_table import Cell, KLTable
from core.permutation import Permutation
from core.tableau import Shape, StandardTableau
from services.generalized_tau_service import TauSystem
from services.kazhdan_lusztig_service import KazhdanLusztigService
from services.khovanov_kuperberg_service import KhovanovKuperbergService
from services.web_action_service import WebActionService


def permutation_system(n: int) -> TauSystem:
    return TauSystem(f"perms({n})", n, lambda: Permutation.all(n), lambda x: x.tau,
                     lambda i, j, x: x.f_sn(i, j))


def inverse_permutation_system(n: int) -> TauSystem:
    """Objects x carrying tau and f of x^{-1}; matching it recovers Q(x)."""
    return TauSystem(f"perms-inverse({n})", n, lambda: Permutation.all(n),
                     lambda x: x.invert().tau,
                     lambda i, j, x: x.invert().f_sn(i, j).invert())


def tableau_system(n: int, shape: Optional[Shape] = None) -> TauSystem:
    """All standard tableaux with n boxes, or those of one shape."""
    if shape is None:
        return TauSystem(f"tableaux({n})", n, lambda: StandardTableau.all_of_size(n),
                         lambda t: t.tau, lambda i, j, t: t.f_yt(i, j))
    return TauSystem(f"tableaux{list(shape)}", n, lambda: StandardTableau.all(shape),
                     lambda t: t.tau, lambda i, j, t: t.f_yt(i, j))


def web_system(k: int, actions: Optional[WebActionService] = None,
               kk: Optional[KhovanovKuperbergService] = None) -> TauSystem:
    """Reduced webs on 3k points, labelled by their Khovanov-Kuperberg tableau."""
    kk = kk or KhovanovKuperbergService()
    actions = actions or WebActionService(kk=kk)
    return TauSystem(f"webs({k})", 3 * k, lambda: kk.reduced_webs(k), actions.tau_web,
                     actions.f_web, label=lambda web: f"W[{kk.web_to_tableau(web)}]")


def kl_cell_system(table: KLTable, cell: Cell,
                   service: Optional[KazhdanLusztigService] = None) -> TauSystem:
    """KL basis elements C_w of one left cell with tau and f read off the cell action."""
    service = service or KazhdanLusztigService()
    return TauSystem(
        f"klcell({cell.right_tableau})", table.n, cell.sorted_members,
        lambda w: service.cell_tau(table, cell, w),
        lambda i, j, w: service.f_kl(table, cell, i, j, w),
        label=lambda w: f"C_{w}")


_SHAPE = re.compile(r"^\d+(,\d+)*$")


def system_from_name(name: str, rank: int,
                     kl: Optional[KazhdanLusztigService] = None) -> TauSystem:
    """Build a system from its command-line name.

    Names: ``perms``, ``perms-inverse``, ``tableaux``, ``tableaux:<shape>``,
    ``webs:<k>`` and ``klcell:<Q>``, where Q is the recording tableau of the
    cell and fixes n.

    Raises:
        ParseError: On unknown names or malformed parameters.
    """
    kind, _, argument = name.partition(":")
    if kind == "perms" and not argument:
        return permutation_system(rank)
    if kind == "perms-inverse" and not argument:
        return inverse_permutation_system(rank)
    if kind == "tableaux":
        if not argument:
            return tableau_system(rank)
        if not _SHAPE.match(argument):
            raise ParseError(f"bad shape {argument!r}")
        shape = tuple(int(part) for part in argument.split(","))
        return tableau_system(sum(shape), shape)
    if kind == "webs" and argument.isdigit():
        return web_system(int(argument))
    if kind == "klcell" and argument:
        recording = StandardTableau.parse(argument)
        kl = kl or KazhdanLusztigService()
        table = kl.compute_kl_table(recording.n)
        cell = next(cell for cell in kl.left_cells(table) if cell.right_tableau == recording)
        return kl_cell_system(table, cell, kl)
    raise ParseError(f"unknown tau system {name!r}")

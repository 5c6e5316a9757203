"""Web tau-invariants, the web f-maps and the search for negative coefficients."""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from core.config import config
from core.errors import PreconditionError, UniquenessError, UnreducedWebError
from core.tableau import StandardTableau
from core.web import Web, WebSum
from services.khovanov_kuperberg_service import KhovanovKuperbergService
from services.skein_reduction_service import SYMMETRIC, SkeinReductionService


class NegativeCoefficientRecord(BaseModel):
    """A reduced web W' with negative coefficient in s_k W at q = -1."""
    n: int
    generator: int
    source_tableau: str
    target_tableau: str
    coefficient: int


@dataclass(frozen=True)
class _ScanTask:
    tableau: str
    generators: Tuple[int, ...]


class WebActionService:
    """Service for the symmetric-group action on reduced webs."""

    def __init__(self, skein: Optional[SkeinReductionService] = None,
                 kk: Optional[KhovanovKuperbergService] = None) -> None:
        """Initialize the web action service.

        Args:
            skein: Reduction engine; a symmetric one is built when omitted.
            kk: Tableau/web converter.
        """
        self.__logger = logging.getLogger(self.__class__.__name__)
        self.__skein = skein or SkeinReductionService(SYMMETRIC)
        self.__kk = kk or KhovanovKuperbergService()

    def is_reduced(self, web: Web) -> bool:
        return web.is_reduced

    def tau_web(self, web: Web) -> FrozenSet[int]:
        """Indices i whose boundary vertices i, i+1 share their internal neighbour.

        Raises:
            UnreducedWebError: If the web is not reduced.
        """
        self.__require_reduced(web)
        return web.tau

    def f_web(self, i: int, j: int, web: Web) -> Web:
        """The unique reduced term of s_j W lying in D_{j,i}; its coefficient must be +1.

        Raises:
            PreconditionError: If |i-j| != 1, an index is out of range or W
                is not in D_{i,j}.
            UnreducedWebError: If W is not reduced.
            UniquenessError: If the term is missing, repeated or has another
                coefficient.
        """
        m = web.boundary_count
        if abs(i - j) != 1 or min(i, j) < 1 or max(i, j) > m - 1:
            raise PreconditionError(f"bad index pair ({i},{j}) for {m} boundary points")
        tau = self.tau_web(web)
        if i not in tau or j in tau:
            raise PreconditionError(f"web is not in D_{{{i},{j}}} (tau={sorted(tau)})")
        image = self.__skein.apply_generator(j, WebSum.single(web), SYMMETRIC)
        candidates = [(term, coefficient) for term, coefficient in image.items()
                      if j in term.tau and i not in term.tau]
        if len(candidates) != 1 or candidates[0][1] != 1:
            self.__logger.error(
                f"f_web({i},{j}) found {[(repr(t), str(c)) for t, c in candidates]}")
            raise UniquenessError(
                f"expected one term of coefficient 1 in D_{{{j},{i}}}, got {len(candidates)}")
        return candidates[0][0]

    def find_negative_coefficient(
        self,
        n: int,
        threads: Optional[int] = None,
        limit: Optional[int] = None,
        generators: Optional[Iterable[int]] = None,
    ) -> Iterator[NegativeCoefficientRecord]:
        """Stream every reduced W' with a negative coefficient in some s_k W.

        Webs come from [n,n,n] tableaux in lexicographic order; only k not in
        tau(W) are tried, since s_k W = -W otherwise. s_k W is W plus the
        reduced H smoothing at strands k, k+1.

        Args:
            n: Web size parameter (3n boundary points).
            threads: Worker processes; 1 runs inline.
            limit: Stop after this many records.
            generators: Restrict k, e.g. to (1,).

        Raises:
            PreconditionError: If n < 1 or a generator is out of range.
        """
        if n < 1:
            raise PreconditionError(f"n must be positive, got {n}")
        chosen = tuple(sorted(set(generators))) if generators else tuple(range(1, 3 * n))
        if any(not 1 <= k <= 3 * n - 1 for k in chosen):
            raise PreconditionError(f"generators {chosen} out of range for {3 * n} points")
        threads = threads or config.threads
        tasks = (_ScanTask(str(tableau), chosen) for tableau in StandardTableau.all((n, n, n)))
        self.__logger.info(f"🔎 Scanning webs on {3 * n} points, generators {list(chosen)}, "
                           f"{threads} worker(s)")
        emitted = 0
        scanned = 0
        executor = ProcessPoolExecutor(max_workers=threads) if threads > 1 else None
        try:
            results = (executor.map(_scan, tasks, chunksize=64) if executor
                       else map(_scan, tasks))
            for task_records in results:
                scanned += 1
                if scanned % config.search_progress_every == 0:
                    self.__logger.info(f"… {scanned} webs scanned, {emitted} negative terms")
                for generator, source, target, coefficient in task_records:
                    yield NegativeCoefficientRecord(n=n, generator=generator, source_tableau=source,
                                                    target_tableau=target, coefficient=coefficient)
                    emitted += 1
                    if limit is not None and emitted >= limit:
                        return
        finally:
            if executor is not None:
                executor.shutdown(wait=True, cancel_futures=True)
            self.__logger.info(f"✅ Scan finished: {scanned} webs, {emitted} negative terms")

    def __require_reduced(self, web: Web) -> None:
        if not web.is_reduced:
            self.__logger.error(f"operation needs a reduced web, got {web!r}")
            raise UnreducedWebError("the web is not reduced")


_WORKER_SERVICES: Dict[str, object] = {}


def _scan(task: _ScanTask) -> List[Tuple[int, str, str, int]]:
    """Negative coefficients of s_k W for one web, run inside worker processes."""
    if not _WORKER_SERVICES:
        _WORKER_SERVICES["kk"] = KhovanovKuperbergService()
        _WORKER_SERVICES["skein"] = SkeinReductionService(SYMMETRIC)
    kk: KhovanovKuperbergService = _WORKER_SERVICES["kk"]
    skein: SkeinReductionService = _WORKER_SERVICES["skein"]
    web = kk.tableau_to_web(StandardTableau.parse(task.tableau))
    found = []
    for k in task.generators:
        if k in web.tau:
            continue
        coefficients = skein.apply_h(k, web, SYMMETRIC).integer_coefficients()
        coefficients[web] = coefficients.get(web, 0) + 1
        for term, coefficient in sorted(coefficients.items()):
            if coefficient < 0:
                found.append((k, task.tableau, str(kk.web_to_tableau(term)), coefficient))
    return found


def scan_generators(records: Sequence[NegativeCoefficientRecord]) -> Dict[int, int]:
    """Number of records per generator."""
    counts: Dict[int, int] = {}
    for record in records:
        counts[record.generator] = counts.get(record.generator, 0) + 1
    return counts

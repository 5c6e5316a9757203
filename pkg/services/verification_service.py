"""Named end-to-end checks reproducing the worked examples and theorems.

Every check returns a :class:`VerifyReport`; a failing report names the
smallest input that reproduces the failure.
"""
import logging
import time
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from core.errors import PreconditionError, ResourceLimitError, UniquenessError, VerificationError
from core.permutation import Permutation
from core.tableau import StandardTableau, hook_length_count, partitions
from services.generalized_tau_service import GeneralizedTauService
from services.kazhdan_lusztig_service import KazhdanLusztigService
from services.khovanov_kuperberg_service import KhovanovKuperbergService
from services.robinson_schensted_service import RobinsonSchenstedService
from services.skein_reduction_service import SYMMETRIC, SkeinReductionService
from services.tau_systems import tableau_system, web_system
from services.web_action_service import WebActionService, scan_generators

CheckOutcome = Tuple[bool, Optional[str], Dict[str, Any]]

CHECKS = ("rs-example", "f-yt-chain", "tau-commute", "cells-equal-rs-fibers", "klexchange",
          "kk-roundtrip", "gentau-match", "s-squared", "negative-coefficient", "character-n2")

WORKED_PERMUTATION = "54312"
WORKED_CHAIN_START = "125/34/6"
WORKED_CHAIN = [(5, 4), (4, 3), (2, 1), (3, 4)]
WORKED_CHAIN_END = "146/25/3"
WORKED_WEB_TABLEAU = "1,3,7,9/2,5,8,11/4,6,10,12"
WORKED_WEB_WORD = "+0+-0-+0+-0-"
WORKED_WEB_DEPTHS = [0, 1, 1, 2, 1, 1, 0, 1, 1, 2, 1, 1, 0]

_WEB_LIMIT = 5
_ACTION_LIMIT = 3
_SEARCH_LIMIT = 7


class VerifyReport(BaseModel):
    """Outcome of one named check."""
    check: str
    params: Dict[str, Any]
    passed: bool
    counterexample: Optional[str] = None
    duration_seconds: float
    details: Dict[str, Any] = Field(default_factory=dict)


class VerificationService:
    """Service running the registered verification checks."""

    def __init__(self, threads: Optional[int] = None) -> None:
        """Initialize the verification service.

        Args:
            threads: Worker count handed to the KL service and the web search.
        """
        self.__logger = logging.getLogger(self.__class__.__name__)
        self.__threads = threads
        self.__rs = RobinsonSchenstedService()
        self.__kl = KazhdanLusztigService(threads=threads)
        self.__kk = KhovanovKuperbergService()
        self.__skein = SkeinReductionService(SYMMETRIC)
        self.__actions = WebActionService(self.__skein, self.__kk)
        self.__gentau = GeneralizedTauService()
        self.__checks: Dict[str, Callable[[Dict[str, Any]], CheckOutcome]] = {
            "rs-example": self.__rs_example,
            "f-yt-chain": self.__f_yt_chain,
            "tau-commute": self.__tau_commute,
            "cells-equal-rs-fibers": self.__cells_equal_rs_fibers,
            "klexchange": self.__klexchange,
            "kk-roundtrip": self.__kk_roundtrip,
            "gentau-match": self.__gentau_match,
            "s-squared": self.__s_squared,
            "negative-coefficient": self.__negative_coefficient,
            "character-n2": self.__character_n2,
        }

    @property
    def checks(self) -> List[str]:
        return list(self.__checks)

    def run(self, check: str, n: Optional[int] = None, webs: Optional[int] = None,
            generators: Optional[Sequence[int]] = None) -> VerifyReport:
        """Run one check.

        Args:
            check: Registered check name.
            n: Rank parameter of the check.
            webs: Largest web size parameter.
            generators: Indices k scanned by ``negative-coefficient``; all by default.

        Raises:
            PreconditionError: On an unknown check name.
            ResourceLimitError: If a parameter exceeds the check's bound.
        """
        if check not in self.__checks:
            raise PreconditionError(f"unknown check {check!r}; known: {', '.join(self.__checks)}")
        params = {"n": n, "webs": webs, "generators": sorted(set(generators)) if generators else None}
        started = time.perf_counter()
        self.__logger.info(f"▶️ verify {check} {params}")
        try:
            passed, counterexample, details = self.__checks[check](params)
        except (VerificationError, UniquenessError) as exception:
            passed, counterexample, details = False, str(exception), {}
        report = VerifyReport(check=check, params={k: v for k, v in params.items() if v is not None},
                              passed=passed, counterexample=counterexample,
                              duration_seconds=round(time.perf_counter() - started, 3),
                              details=details)
        log = self.__logger.info if passed else self.__logger.error
        log(f"{'✅' if passed else '❌'} {check} in {report.duration_seconds}s")
        return report

    def __rs_example(self, params: Dict[str, Any]) -> CheckOutcome:
        w = Permutation.parse(WORKED_PERMUTATION)
        p, q = self.__rs.rs(w)
        expected_p = StandardTableau([[1, 2], [3], [4], [5]])
        expected_q = StandardTableau([[1, 5], [2], [3], [4]])
        passed = p == expected_p and q == expected_q and self.__rs.rs_inverse(p, q) == w
        return passed, None if passed else f"rs({w}) = ({p}, {q})", {"P": str(p), "Q": str(q)}

    def __f_yt_chain(self, params: Dict[str, Any]) -> CheckOutcome:
        start = StandardTableau.parse(WORKED_CHAIN_START)
        path = start.to_superstandard_path()
        end = start.apply_path(path)
        passed = (path == WORKED_CHAIN and end == StandardTableau.parse(WORKED_CHAIN_END) and
                  end.is_column_superstandard)
        details = {"path": [list(move) for move in path], "end": str(end)}
        return passed, None if passed else f"path of {start}: {path}", details

    def __tau_commute(self, params: Dict[str, Any]) -> CheckOutcome:
        largest = self.__bounded(params, "webs", 3, _WEB_LIMIT)
        checked = 0
        for k in range(1, largest + 1):
            for tableau in StandardTableau.all((k, k, k)):
                web = self.__kk.tableau_to_web(tableau)
                if web.tau != tableau.tau:
                    return False, f"tau({tableau}) != tau(W_T)", {}
                for i, j in _adjacent_pairs(3 * k):
                    if not tableau.in_domain(i, j):
                        continue
                    image = self.__actions.f_web(i, j, web)
                    if image != self.__kk.tableau_to_web(tableau.f_yt(i, j)):
                        return False, f"f_web({i},{j}) on W of {tableau}", {}
                    word = self.__kk.web_to_yamanouchi(web)
                    moved = word.differing_positions(self.__kk.web_to_yamanouchi(image))
                    if not moved <= {i, i + 1, j, j + 1}:
                        return False, f"words of W and f_web({i},{j})W differ at {sorted(moved)}", {}
                    checked += 1
        return True, None, {"commutations": checked}

    def __cells_equal_rs_fibers(self, params: Dict[str, Any]) -> CheckOutcome:
        n = params["n"] or 5
        table = self.__kl.compute_kl_table(n)
        cells = self.__kl.left_cells(table)
        expected = sum(hook_length_count(shape) for shape in partitions(n))
        if len(cells) != expected:
            return False, f"S_{n}: {len(cells)} cells, expected {expected}", {}
        for x in table.elements:
            for i in range(1, n):
                if table.mu(x, x.left_multiply(i)) != 1:
                    return False, f"mu({x}, s_{i}{x}) != 1", {}
        by_shape: Dict[Tuple[int, ...], List] = {}
        for cell in cells:
            by_shape.setdefault(cell.right_tableau.shape, []).append(cell)
        for same_shape in by_shape.values():
            reference = same_shape[0]
            for other in same_shape[1:]:
                image = {x: self.__rs.rs_inverse(self.__rs.rs(x)[0], other.right_tableau)
                         for x in reference.members}
                for x in reference.members:
                    for y in reference.members:
                        if table.mu(x, y) != table.mu(image[x], image[y]):
                            return False, f"mu({x},{y}) not preserved into cell {other.right_tableau}", {}
        return True, None, {"cells": len(cells)}

    def __klexchange(self, params: Dict[str, Any]) -> CheckOutcome:
        n = params["n"] or 4
        table = self.__kl.compute_kl_table(n)
        checked = 0
        for cell in self.__kl.left_cells(table):
            for w in cell.sorted_members():
                for i, j in _adjacent_pairs(n):
                    if i not in w.tau or j in w.tau:
                        continue
                    y = w.f_sn(i, j)
                    if self.__kl.f_kl(table, cell, i, j, w) != y:
                        return False, f"f_kl({i},{j},C_{w}) != f_sn", {}
                    if table.mu(w, y) != 1:
                        return False, f"mu({w},{y}) = {table.mu(w, y)}", {}
                    if y not in cell:
                        return False, f"{w} and f_sn({i},{j}) = {y} lie in different left cells", {}
                    partners = self.__kl.exchange_partners(table, w, i, j)
                    if partners != [y]:
                        return False, f"{w} has mu-neighbours {partners} in D_{{{j},{i}}}", {}
                    checked += 1
        return True, None, {"exchanges": checked}

    def __kk_roundtrip(self, params: Dict[str, Any]) -> CheckOutcome:
        largest = self.__bounded(params, "webs", 3, _WEB_LIMIT)
        counts = {}
        for k in range(1, largest + 1):
            webs = self.__kk.reduced_webs(k)
            for tableau, web in zip(StandardTableau.all((k, k, k)), webs):
                if not web.is_reduced:
                    return False, f"W of {tableau} is not reduced", {}
                if self.__kk.web_to_tableau(web) != tableau:
                    return False, f"round trip fails at {tableau}", {}
            if len(set(webs)) != len(webs):
                return False, f"two tableaux of size {k} share a web", {}
            counts[k] = len(webs)
        worked = self.__kk.tableau_to_web(StandardTableau.parse(WORKED_WEB_TABLEAU))
        word = str(self.__kk.web_to_yamanouchi(worked))
        depths = worked.boundary_depths()
        if word != WORKED_WEB_WORD or depths != WORKED_WEB_DEPTHS:
            return False, f"worked web gives {word} with depths {depths}", {}
        return True, None, {"webs": counts}

    def __gentau_match(self, params: Dict[str, Any]) -> CheckOutcome:
        k = self.__bounded(params, "webs", 3, _WEB_LIMIT)
        tableaux = tableau_system(3 * k, (k, k, k))
        webs = web_system(k, self.__actions, self.__kk)
        result = self.__gentau.match_across(tableaux, webs)
        if not result.matched:
            return False, "; ".join(result.problems[:3]), {}
        for tableau, web in result.mapping.items():
            if web != self.__kk.tableau_to_web(tableau):
                return False, f"{tableau} matched a web other than its own", {}
        return True, None, {"pairs": len(result.mapping), "order": result.order}

    def __s_squared(self, params: Dict[str, Any]) -> CheckOutcome:
        largest = self.__bounded(params, "webs", 3, _ACTION_LIMIT)
        for k in range(1, largest + 1):
            basis = self.__kk.reduced_webs(k)
            size = len(basis)
            identity = np.eye(size, dtype=np.int64)
            matrices = {i: self.__skein.action_matrix(i, k, SYMMETRIC) for i in range(1, 3 * k)}
            for i, matrix in matrices.items():
                if not np.array_equal(matrix @ matrix, identity):
                    return False, f"s_{i}^2 != 1 on webs of size {k}", {}
                for column, web in enumerate(basis):
                    negated = np.array_equal(matrix[:, column], -identity[:, column])
                    if negated != (i in web.tau):
                        return False, f"s_{i} on W[{self.__kk.web_to_tableau(web)}]", {}
                for j, other in matrices.items():
                    if abs(i - j) == 1 and not np.array_equal(matrix @ other @ matrix,
                                                              other @ matrix @ other):
                        return False, f"braid relation for s_{i}, s_{j} fails at size {k}", {}
                    if abs(i - j) > 1 and not np.array_equal(matrix @ other, other @ matrix):
                        return False, f"s_{i} and s_{j} do not commute at size {k}", {}
        return True, None, {"sizes": largest}

    def __negative_coefficient(self, params: Dict[str, Any]) -> CheckOutcome:
        n = params["n"] or 6
        if n > _SEARCH_LIMIT:
            raise ResourceLimitError(f"negative-coefficient search is bounded by n <= {_SEARCH_LIMIT}")
        chosen = params["generators"] or list(range(1, 3 * n))
        records = list(self.__actions.find_negative_coefficient(n, threads=self.__threads,
                                                                generators=chosen))
        witness = next((record for record in records if record.coefficient == -2), None)
        details: Dict[str, Any] = {"generators": chosen, "records": len(records),
                                   "per_generator": scan_generators(records)}
        if witness is not None:
            details["witness"] = witness.model_dump()
        if n < 6:
            return True, None, details
        passed = witness is not None
        return passed, None if passed else f"no coefficient -2 in s_k W for k in {chosen}, n={n}", details

    def __character_n2(self, params: Dict[str, Any]) -> CheckOutcome:
        webs = {i: self.__skein.action_matrix(i, 2, SYMMETRIC) for i in range(1, 6)}
        table = self.__kl.compute_kl_table(6)
        cell = next(cell for cell in self.__kl.left_cells(table)
                    if cell.right_tableau.shape == (2, 2, 2))
        cells = self.__kl.action_matrices(table, cell)
        for w in table.elements:
            web_matrix = np.eye(5, dtype=np.int64)
            cell_matrix = np.eye(len(cell), dtype=np.int64)
            for i in w.reduced_word():
                web_matrix = web_matrix @ webs[i]
                cell_matrix = cell_matrix @ cells[i]
            if np.trace(web_matrix) != np.trace(cell_matrix):
                return False, f"traces differ at {w}", {}
        return True, None, {"elements": table.size, "cell": str(cell.right_tableau)}

    @staticmethod
    def __bounded(params: Dict[str, Any], key: str, default: int, limit: int) -> int:
        value = params[key] or default
        if value > limit:
            raise ResourceLimitError(f"--{key} {value} exceeds the bound {limit} for this check")
        return value


def _adjacent_pairs(n: int) -> List[Tuple[int, int]]:
    """Ordered pairs (i,j) of adjacent generator indices of S_n."""
    return [(i, j) for i in range(1, n) for j in (i - 1, i + 1) if 1 <= j <= n - 1]

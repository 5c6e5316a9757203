"""Kazhdan-Lusztig polynomials, the mu-graph, left cells and cell modules."""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, FrozenSet, List, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from core.config import config
from core.errors import (
    PreconditionError,
    ResourceLimitError,
    UniquenessError,
    VerificationError,
)
from core.kl_table import Cell, KLTable
from core.laurent import LaurentPoly
from core.permutation import Permutation
from core.tableau import StandardTableau
from services.kl_validation_service import KLValidationService
from services.robinson_schensted_service import RobinsonSchenstedService

_V = LaurentPoly.v()
_HALF = LaurentPoly.half()


class KazhdanLusztigService:
    """Service computing KL tables and acting on cell modules."""

    def __init__(
        self,
        threads: Optional[int] = None,
        memory_limit_mb: Optional[int] = None,
        max_n: Optional[int] = None,
    ) -> None:
        """Initialize the Kazhdan-Lusztig service.

        Args:
            threads: Worker threads per length stratum.
            memory_limit_mb: Refuse tables whose estimated size exceeds this.
            max_n: Largest n accepted by :meth:`compute_kl_table`.
        """
        self.__logger = logging.getLogger(self.__class__.__name__)
        self.__threads = threads or config.threads
        self.__memory_limit_mb = memory_limit_mb or config.kl_memory_limit_mb
        self.__max_n = max_n or config.kl_max_n
        self.__rs = RobinsonSchenstedService()

    def compute_kl_table(self, n: int, validate: bool = True) -> KLTable:
        """Run the classical recursion over increasing length, then validate.

        Args:
            n: Rank of the symmetric group.
            validate: Run the defining-condition check (always on from the CLI).

        Returns:
            The validated table.

        Raises:
            ResourceLimitError: If n or the memory estimate exceeds the bounds.
            VerificationError: If the table fails its defining conditions.
        """
        self.__check_budget(n)
        started = time.perf_counter()
        elements = sorted(Permutation.all(n), key=lambda w: (w.length, w.one_line))
        polynomials, mu_matrix = self.__run_recursion(n, elements)
        table = KLTable(n, elements, polynomials, mu_matrix)
        self.__logger.info(
            f"🧮 KL table for S_{n}: {table.size} elements in "
            f"{time.perf_counter() - started:.2f}s")
        if validate:
            KLValidationService().validate(table)
        return table

    def mu(self, table: KLTable, y: Permutation, w: Permutation) -> int:
        return table.mu(y, w)

    def left_cells(self, table: KLTable) -> List[Cell]:
        """Strongly connected classes of the preorder generated by x -> y when
        mu(x,y) != 0 and tau(x) is not contained in tau(y).

        Raises:
            VerificationError: If a class is not exactly one RS Q-fiber.
        """
        rows, cols = np.nonzero(table.mu_matrix())
        masks = table.tau_masks
        keep = (masks[rows] & ~masks[cols]) != 0
        graph = csr_matrix(
            (np.ones(int(keep.sum()), dtype=np.int8), (rows[keep], cols[keep])),
            shape=(table.size, table.size),
        )
        _, labels = connected_components(graph, directed=True, connection="strong")

        classes: Dict[int, List[Permutation]] = {}
        for index, label in enumerate(labels):
            classes.setdefault(int(label), []).append(table.elements[index])

        fibers = self.__fibers(table)
        recording = {w: q for q, members in fibers.items() for w in members}

        cells: List[Cell] = []
        for members in classes.values():
            tableaux = {recording[w] for w in members}
            if len(tableaux) != 1:
                self.__logger.error(f"Cell {members[:4]}... mixes {len(tableaux)} Q-tableaux")
                raise VerificationError("a left cell spans several Q-fibers")
            q = tableaux.pop()
            if len(fibers[q]) != len(members):
                raise VerificationError(f"left cell for Q={q} is smaller than its fiber")
            cells.append(Cell(frozenset(members), q))
        cells.sort(key=lambda cell: cell.right_tableau)
        self.__logger.info(f"S_{table.n}: {len(cells)} left cells")
        return cells

    def right_cells(self, table: KLTable) -> List[Cell]:
        """Right cells as inverses of left cells; labelled by P = Q of the inverse."""
        return [
            Cell(frozenset(w.invert() for w in cell.members), cell.right_tableau)
            for cell in self.left_cells(table)
        ]

    def cell_of(self, table: KLTable, w: Permutation) -> Cell:
        """The left cell of w, read off its recording-tableau fiber.

        Raises:
            PreconditionError: If w is not an element of the table.
        """
        if w not in table.index_of:
            raise PreconditionError(f"{w} is not an element of S_{table.n}")
        q = self.__rs.rs(w)[1]
        return Cell(self.__fibers(table)[q], q)

    def exchange_partners(self, table: KLTable, x: Permutation, i: int,
                          j: int) -> List[Permutation]:
        """Elements z of D_{j,i} with mu(x,z) != 0, in table order.

        Raises:
            PreconditionError: If |i-j| != 1 or x is not in D_{i,j}.
        """
        if abs(i - j) != 1 or min(i, j) < 1 or max(i, j) > table.n - 1:
            raise PreconditionError(f"bad index pair ({i},{j}) for S_{table.n}")
        if i not in x.tau or j in x.tau:
            raise PreconditionError(f"{x} is not in D_{{{i},{j}}}")
        masks = table.tau_masks
        in_target = ((masks >> j) & 1 == 1) & ((masks >> i) & 1 == 0)
        row = table.mu_matrix()[table.index_of[x]]
        return [table.elements[int(k)] for k in np.nonzero(in_target & (row != 0))[0]]

    def ts_action_on_cell(self, table: KLTable, cell: Cell, i: int,
                          w: Permutation) -> Dict[Permutation, LaurentPoly]:
        """T_{s_i} C_w inside the cell module.

        Returns ``{w: -1}`` when i is in tau(w); otherwise
        ``v C_w + v^{1/2} sum mu(w,y) C_y`` over cell members y with i in tau(y).

        Raises:
            PreconditionError: If w is not a member of the cell.
        """
        if not 1 <= i <= table.n - 1:
            raise PreconditionError(f"s_{i} is not a generator of S_{table.n}")
        if w not in cell:
            raise PreconditionError(f"{w} is not in the cell of {cell.right_tableau}")
        if i in w.tau:
            return {w: LaurentPoly.constant(-1)}
        result: Dict[Permutation, LaurentPoly] = {w: _V}
        for y in cell.sorted_members():
            if i in y.tau:
                weight = table.mu(w, y)
                if weight:
                    result[y] = _HALF * weight
        return result

    def cell_tau(self, table: KLTable, cell: Cell, w: Permutation) -> FrozenSet[int]:
        """Indices i with T_{s_i} C_w = -C_w."""
        minus_one = {w: LaurentPoly.constant(-1)}
        return frozenset(i for i in range(1, table.n)
                         if self.ts_action_on_cell(table, cell, i, w) == minus_one)

    def f_kl(self, table: KLTable, cell: Cell, i: int, j: int,
             w: Permutation) -> Permutation:
        """The unique summand of T_{s_j} C_w lying in D_{j,i}.

        Raises:
            PreconditionError: If |i-j| != 1 or C_w is not in D_{i,j}.
            UniquenessError: If the summand is missing or not unique.
        """
        if abs(i - j) != 1:
            raise PreconditionError(f"indices {i} and {j} are not adjacent")
        tau = self.cell_tau(table, cell, w)
        if i not in tau or j in tau:
            raise PreconditionError(f"C_{w} is not in D_{{{i},{j}}}")
        candidates = [
            y for y in self.ts_action_on_cell(table, cell, j, w)
            if j in y.tau and i not in y.tau
        ]
        if len(candidates) != 1:
            self.__logger.error(f"f_kl({i},{j},{w}) candidates: {candidates}")
            raise UniquenessError(f"expected one summand in D_{{{j},{i}}}, got {len(candidates)}")
        return candidates[0]

    def action_matrices(self, table: KLTable, cell: Cell) -> Dict[int, np.ndarray]:
        """Matrices of s_1..s_{n-1} on the cell module at v = 1 (columns are images)."""
        members = cell.sorted_members()
        position = {w: k for k, w in enumerate(members)}
        matrices: Dict[int, np.ndarray] = {}
        for i in range(1, table.n):
            matrix = np.zeros((len(members), len(members)), dtype=np.int64)
            for w in members:
                for y, coefficient in self.ts_action_on_cell(table, cell, i, w).items():
                    matrix[position[y], position[w]] = int(coefficient.evaluate(1, 1))
            matrices[i] = matrix
        return matrices

    def __fibers(self, table: KLTable) -> Dict[StandardTableau, FrozenSet[Permutation]]:
        if table.q_fibers is None:
            grouped: Dict[StandardTableau, List[Permutation]] = {}
            for w in table.elements:
                grouped.setdefault(self.__rs.rs(w)[1], []).append(w)
            table.q_fibers = {q: frozenset(members) for q, members in grouped.items()}
            self.__logger.debug(f"S_{table.n}: {len(grouped)} recording-tableau fibers")
        return table.q_fibers

    def __check_budget(self, n: int) -> None:
        if n < 1:
            raise PreconditionError(f"n must be positive, got {n}")
        if n > self.__max_n:
            self.__logger.error(f"n={n} exceeds KL_MAX_N={self.__max_n}")
            raise ResourceLimitError(f"n={n} exceeds the configured bound {self.__max_n}")
        size = 1
        for k in range(2, n + 1):
            size *= k
        longest = n * (n - 1) // 2
        estimated_mb = size * size * 8 * (1 + longest // 4) / 2**20
        if estimated_mb > self.__memory_limit_mb:
            self.__logger.error(
                f"KL table for S_{n} needs ~{estimated_mb:.0f} MB "
                f"(limit {self.__memory_limit_mb} MB)")
            raise ResourceLimitError(f"estimated {estimated_mb:.0f} MB exceeds the memory limit")

    def __run_recursion(self, n: int, elements: List[Permutation]
                       ) -> Tuple[List[np.ndarray], np.ndarray]:
        size = len(elements)
        index = {w: k for k, w in enumerate(elements)}
        lengths = np.array([w.length for w in elements], dtype=np.int64)
        left = {
            s: np.array([index[w.left_multiply(s)] for w in elements], dtype=np.int64)
            for s in range(1, n)
        }
        descent = {
            s: np.array([s in w.tau for w in elements], dtype=bool) for s in range(1, n)
        }
        mu_matrix = np.zeros((size, size), dtype=np.int64)
        polynomials: List[Optional[np.ndarray]] = [None] * size

        base = np.zeros((size, 1), dtype=np.int64)
        base[0, 0] = 1
        polynomials[0] = base

        def compute(w_index: int) -> np.ndarray:
            w = elements[w_index]
            s = min(w.tau)
            v_index = int(left[s][w_index])
            p_v = polynomials[v_index]
            p_v_s = p_v[left[s]]
            c = descent[s][:, None]
            width = p_v.shape[1] + 1
            result = np.zeros((size, width), dtype=np.int64)
            result[:, :-1] += np.where(c, p_v_s, p_v)
            result[:, 1:] += np.where(c, p_v, p_v_s)

            column = mu_matrix[:, v_index]
            candidates = np.nonzero((column != 0) & descent[s] &
                                    (lengths < lengths[v_index]))[0]
            for z_index in candidates:
                shift = int(lengths[w_index] - lengths[z_index]) // 2
                p_z = polynomials[z_index]
                needed = shift + p_z.shape[1]
                if needed > result.shape[1]:
                    result = np.pad(result, ((0, 0), (0, needed - result.shape[1])))
                result[:, shift:needed] -= column[z_index] * p_z
            return _trim(result)

        max_length = int(lengths.max())
        for length in range(1, max_length + 1):
            stratum = [int(k) for k in np.nonzero(lengths == length)[0]]
            if self.__threads > 1 and len(stratum) > 1:
                with ThreadPoolExecutor(max_workers=self.__threads) as executor:
                    results = list(executor.map(compute, stratum))
            else:
                results = [compute(k) for k in stratum]
            for w_index, array in zip(stratum, results):
                polynomials[w_index] = array
                _fill_mu(mu_matrix, array, lengths, w_index)
            self.__logger.debug(f"S_{n}: length {length} done ({len(stratum)} elements)")
        return polynomials, mu_matrix


def _trim(array: np.ndarray) -> np.ndarray:
    width = array.shape[1]
    while width > 1 and not array[:, width - 1].any():
        width -= 1
    return np.ascontiguousarray(array[:, :width])


def _fill_mu(mu_matrix: np.ndarray, array: np.ndarray, lengths: np.ndarray,
             w_index: int) -> None:
    gap = lengths[w_index] - lengths
    degree = (gap - 1) // 2
    rows = np.nonzero((gap > 0) & (gap % 2 == 1) & (degree < array.shape[1]))[0]
    if rows.size == 0:
        return
    values = array[rows, degree[rows]]
    mu_matrix[rows, w_index] = values
    mu_matrix[w_index, rows] = values

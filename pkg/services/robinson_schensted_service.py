"""Robinson-Schensted row insertion and its inverse."""
import logging
from bisect import bisect_right
from typing import Iterator, List, Tuple

from core.errors import ShapeError
from core.permutation import Permutation
from core.tableau import StandardTableau

TableauPair = Tuple[StandardTableau, StandardTableau]


class RobinsonSchenstedService:
    """Service computing (P(w), Q(w)) and inverting the correspondence."""

    def __init__(self) -> None:
        """Initialize the Robinson-Schensted service."""
        self.__logger = logging.getLogger(self.__class__.__name__)

    def rs(self, w: Permutation) -> TableauPair:
        """Insert w_1, ..., w_n into the first row, bumping into lower rows.

        Args:
            w: Permutation in one-line notation.

        Returns:
            The insertion tableau P and the recording tableau Q.
        """
        p_rows, q_rows = self.__insert_all(w)
        return StandardTableau(p_rows), StandardTableau(q_rows)

    def insert_steps(self, w: Permutation) -> Iterator[Tuple[List[List[int]], List[List[int]]]]:
        """Yield the partial pair (P_k, Q_k) after each insertion.

        Partial P tableaux hold a subset of 1..n, so they are returned as row
        lists rather than StandardTableau objects.
        """
        p_rows: List[List[int]] = []
        q_rows: List[List[int]] = []
        for step, value in enumerate(w.one_line, start=1):
            self.__insert(p_rows, q_rows, value, step)
            yield [list(row) for row in p_rows], [list(row) for row in q_rows]

    def rs_inverse(self, p: StandardTableau, q: StandardTableau) -> Permutation:
        """Recover w from (P, Q) by reverse bumping from the largest Q label down.

        Raises:
            ShapeError: If P and Q have different shapes.
        """
        if p.shape != q.shape:
            self.__logger.error(f"Shape mismatch: {p.shape} vs {q.shape}")
            raise ShapeError(f"P and Q differ in shape: {p.shape} vs {q.shape}")
        p_rows = [list(row) for row in p.rows]
        n = p.n
        word = [0] * n
        for label in range(n, 0, -1):
            row = q.row_of(label)
            value = p_rows[row].pop()
            for upper in range(row - 1, -1, -1):
                target = p_rows[upper]
                position = bisect_right(target, value) - 1
                target[position], value = value, target[position]
            word[label - 1] = value
            while p_rows and not p_rows[-1]:
                p_rows.pop()
        return Permutation(word)

    def q_via_inverse(self, w: Permutation) -> StandardTableau:
        """Q(w) obtained as P(w^{-1})."""
        return self.rs(w.invert())[0]

    def __insert_all(self, w: Permutation) -> Tuple[List[List[int]], List[List[int]]]:
        p_rows: List[List[int]] = []
        q_rows: List[List[int]] = []
        for step, value in enumerate(w.one_line, start=1):
            self.__insert(p_rows, q_rows, value, step)
        self.__logger.debug(f"RS({w}) -> P={p_rows} Q={q_rows}")
        return p_rows, q_rows

    @staticmethod
    def __insert(p_rows: List[List[int]], q_rows: List[List[int]], value: int,
                 step: int) -> None:
        row = 0
        while True:
            if row == len(p_rows):
                p_rows.append([value])
                q_rows.append([step])
                return
            target = p_rows[row]
            position = bisect_right(target, value)
            if position == len(target):
                target.append(value)
                q_rows[row].append(step)
                return
            target[position], value = value, target[position]
            row += 1

"""Value types for Kazhdan-Lusztig data: the polynomial table and left cells."""
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from core.laurent import LaurentPoly
from core.permutation import Permutation
from core.tableau import StandardTableau


class KLTable:
    """P_{y,w} for all y, w in S_n plus the symmetric mu matrix.

    Elements are indexed in order of (length, one-line word). ``poly_array(w)``
    is an int64 array of shape (n!, width) whose row y holds the coefficients
    of P_{y,w} in increasing degree; rows of y not below w are zero.
    """

    def __init__(self, n: int, elements: Sequence[Permutation],
                 polynomials: List[np.ndarray], mu_matrix: np.ndarray) -> None:
        self.n = n
        self.elements: Tuple[Permutation, ...] = tuple(elements)
        self.index_of: Dict[Permutation, int] = {
            w: k for k, w in enumerate(self.elements)
        }
        self.lengths = np.array([w.length for w in self.elements], dtype=np.int64)
        self.tau_masks = np.array(
            [sum(1 << i for i in w.tau) for w in self.elements], dtype=np.int64)
        self.__polynomials = polynomials
        self.__mu = mu_matrix
        # Recording-tableau fibers, filled in once by the KL service.
        self.q_fibers: Optional[Dict[StandardTableau, FrozenSet[Permutation]]] = None

    @property
    def size(self) -> int:
        return len(self.elements)

    def length_of(self, w: Permutation) -> int:
        return int(self.lengths[self.index_of[w]])

    def poly_array(self, w_index: int) -> np.ndarray:
        return self.__polynomials[w_index]

    def polynomial(self, y: Permutation, w: Permutation) -> LaurentPoly:
        """P_{y,w} as a polynomial in v (zero unless y <= w)."""
        row = self.__polynomials[self.index_of[w]][self.index_of[y]]
        return LaurentPoly({2 * d: int(c) for d, c in enumerate(row) if c})

    def mu(self, y: Permutation, w: Permutation) -> int:
        return int(self.__mu[self.index_of[y], self.index_of[w]])

    def mu_matrix(self) -> np.ndarray:
        return self.__mu


@dataclass(frozen=True)
class Cell:
    """A left cell with its common recording tableau."""
    members: FrozenSet[Permutation]
    right_tableau: StandardTableau

    def sorted_members(self) -> List[Permutation]:
        return sorted(self.members, key=lambda w: (w.length, w.one_line))

    def __contains__(self, w: object) -> bool:
        return w in self.members

    def __len__(self) -> int:
        return len(self.members)

"""Checks a KL table against its defining conditions.

The table is accepted only if every C_w = v^{l(w)/2} sum (-1)^{l(w)-l(y)}
v^{-l(y)} bar(P_{y,w}) T_y is bar-invariant and every P_{y,w} respects the
degree bound. An independent solver derives the polynomials from
bar-invariance alone and serves as an oracle for small n.
"""
import logging
import time
from typing import Dict, List, Tuple

import numpy as np

from core.errors import VerificationError
from core.hecke import HeckeElement
from core.kl_table import KLTable
from core.laurent import LaurentPoly
from core.permutation import Permutation

_FLOAT_EXACT_BOUND = 2**52
_V_INV = LaurentPoly.monomial(-2)


class KLValidationService:
    """Service validating Kazhdan-Lusztig tables."""

    def __init__(self, bar_check_max_n: int = 6, chunk_count: int = 8) -> None:
        """Initialize the validation service.

        Args:
            bar_check_max_n: Largest n for the exhaustive dense bar check; the
                dense tensors grow like (n!)^2 * n^2.
            chunk_count: Number of row blocks used when forming bar(C_w).
        """
        self.__logger = logging.getLogger(self.__class__.__name__)
        self.__bar_check_max_n = bar_check_max_n
        self.__chunk_count = chunk_count

    def validate(self, table: KLTable) -> None:
        """Run every check and raise on the first family of failures.

        Raises:
            VerificationError: If any defining condition fails.
        """
        started = time.perf_counter()
        degree_failures = self.degree_bound_failures(table)
        if degree_failures:
            self.__fail(table, "degree bound / normalisation", degree_failures)

        mu = table.mu_matrix()
        if not np.array_equal(mu, mu.T):
            self.__fail(table, "mu symmetry", [])
        if (mu < 0).any():
            rows, cols = np.nonzero(mu < 0)
            pairs = [(table.elements[rows[0]], table.elements[cols[0]])]
            self.__fail(table, "mu nonnegativity", pairs)

        if table.n <= self.__bar_check_max_n:
            bar_failures = self.bar_invariance_failures(table)
            if bar_failures:
                self.__fail(table, "bar invariance", [(w, w) for w in bar_failures])
        else:
            self.__logger.warning(
                f"⚠️ Dense bar-invariance check skipped for S_{table.n} "
                f"(exhaustive only up to n={self.__bar_check_max_n})")
        self.__logger.info(
            f"✅ KL table for S_{table.n} validated in "
            f"{time.perf_counter() - started:.2f}s")

    def degree_bound_failures(self, table: KLTable) -> List[Tuple[Permutation, Permutation]]:
        """Pairs (y,w) violating P_{w,w}=1 or deg P_{y,w} <= (l(w)-l(y)-1)/2."""
        failures: List[Tuple[Permutation, Permutation]] = []
        lengths = table.lengths
        for w_index in range(table.size):
            array = table.poly_array(w_index)
            diagonal = array[w_index]
            if diagonal[0] != 1 or diagonal[1:].any():
                failures.append((table.elements[w_index], table.elements[w_index]))
            gap = lengths[w_index] - lengths
            for degree in range(array.shape[1]):
                rows = np.nonzero(array[:, degree])[0]
                rows = rows[rows != w_index]
                bad = rows[2 * degree > gap[rows] - 1]
                failures.extend(
                    (table.elements[y], table.elements[w_index]) for y in bad[:1])
        return failures

    def bar_invariance_failures(self, table: KLTable) -> List[Permutation]:
        """Elements w whose C_w is not bar-invariant, via dense Hecke tensors."""
        size = table.size
        longest = int(table.lengths.max()) if size > 1 else 0
        bar_basis = self.__bar_basis_tensor(table, longest)
        coefficients = self.__kl_coefficient_tensor(table, longest)

        bound = (int(np.abs(coefficients).max(initial=0)) *
                 int(np.abs(bar_basis).max(initial=0)) * size * (longest + 1))
        use_float = bound < _FLOAT_EXACT_BOUND
        self.__logger.debug(
            f"Bar check for S_{table.n}: bound {bound}, float path {use_float}")
        flat_basis = bar_basis.reshape(size, size * (longest + 1))
        if use_float:
            flat_basis = flat_basis.astype(np.float64)

        failures: List[Permutation] = []
        chunk = max(1, -(-size // self.__chunk_count))
        for start in range(0, size, chunk):
            rows = slice(start, min(size, start + chunk))
            image = np.zeros((rows.stop - start, size, 2 * longest + 1), dtype=np.int64)
            for k in range(longest + 1):
                block = coefficients[k, rows]
                if not block.any():
                    continue
                if use_float:
                    product = np.rint(block.astype(np.float64) @ flat_basis).astype(np.int64)
                else:
                    product = block @ flat_basis
                image[:, :, k:k + longest + 1] += product.reshape(-1, size, longest + 1)
            expected = self.__expected_tensor(table, longest, rows)
            mismatched = np.nonzero((image != expected).any(axis=(1, 2)))[0]
            failures.extend(table.elements[start + int(k)] for k in mismatched)
        return failures

    def solve_by_bar_invariance(self, n: int) -> Dict[Tuple[Permutation, Permutation], LaurentPoly]:
        """Derive every nonzero P_{y,w} of S_n from bar-invariance alone.

        For each w the coefficients c_y of C_w are fixed by descending
        induction on l(y): writing c_y = v^{-l(y)/2} g, bar-invariance gives
        g - bar(g) = v^{l(y)/2} * (sum over longer x of bar(c_x) [T_y]bar(T_x)),
        and the degree bound says g has only positive exponents.
        """
        elements = sorted(Permutation.all(n), key=lambda w: (w.length, w.one_line))
        bar_images: Dict[Permutation, HeckeElement] = {}
        for x in elements:
            if not x.tau:
                bar_images[x] = HeckeElement.identity(n)
                continue
            s = min(x.tau)
            previous = bar_images[x.left_multiply(s)]
            bar_images[x] = (previous.left_mul_generator(s).scale(_V_INV) +
                             previous.scale(_V_INV - 1))

        table: Dict[Tuple[Permutation, Permutation], LaurentPoly] = {}
        for w in elements:
            lw = w.length
            known: Dict[Permutation, LaurentPoly] = {w: LaurentPoly.monomial(-lw)}
            for y in sorted((y for y in elements if y.length < lw),
                            key=lambda y: (-y.length, y.one_line)):
                rhs = LaurentPoly()
                for x, c_x in known.items():
                    beta = bar_images[x].coefficient(y)
                    if beta:
                        rhs = rhs + c_x.bar() * beta
                shifted = rhs.shift(y.length)
                g = LaurentPoly({code: value for code, value in shifted.items() if code > 0})
                if g:
                    known[y] = g.shift(-y.length)
            for y, c_y in known.items():
                sign = -1 if (lw - y.length) % 2 else 1
                g = c_y.shift(y.length)
                table[(y, w)] = g.bar().shift(lw - y.length) * sign
        return table

    def __bar_basis_tensor(self, table: KLTable, longest: int) -> np.ndarray:
        """bar(T_y) for every y as an array (y, x, exponent + longest), exponents -L..0."""
        size = table.size
        n = table.n
        offset = longest + 1
        width = longest + 3
        index = table.index_of
        left = {
            s: np.array([index[w.left_multiply(s)] for w in table.elements], dtype=np.int64)
            for s in range(1, n)
        }
        descent = {
            s: np.array([s in w.tau for w in table.elements], dtype=bool) for s in range(1, n)
        }
        work = np.zeros((size, size, width), dtype=np.int64)
        work[0, 0, offset] = 1
        for y_index in range(1, size):
            s = min(table.elements[y_index].tau)
            previous = work[left[s][y_index]]
            ascent = ~descent[s]
            lowered = descent[s]
            product = np.zeros_like(previous)
            product[left[s][ascent]] += previous[ascent]
            product[left[s][lowered], 1:] += previous[lowered, :-1]
            product[lowered, 1:] += previous[lowered, :-1]
            product[lowered] -= previous[lowered]
            image = -previous
            image[:, :-1] += product[:, 1:] + previous[:, 1:]
            work[y_index] = image
        if work[:, :, 0].any() or work[:, :, -1].any():
            raise VerificationError("bar(T_y) left its expected exponent window")
        return np.ascontiguousarray(work[:, :, 1:offset + 1])

    @staticmethod
    def __kl_coefficient_tensor(table: KLTable, longest: int) -> np.ndarray:
        """A[k, w, y] = (-1)^{l(w)-l(y)} [v^k] v^{l(y)} P_{y,w}(v)."""
        size = table.size
        lengths = table.lengths
        tensor = np.zeros((longest + 1, size, size), dtype=np.int64)
        for w_index in range(size):
            array = table.poly_array(w_index)
            signs = np.where((lengths[w_index] - lengths) % 2 == 1, -1, 1)
            for degree in range(array.shape[1]):
                rows = np.nonzero(array[:, degree])[0]
                tensor[lengths[rows] + degree, w_index, rows] = signs[rows] * array[rows, degree]
        return tensor

    @staticmethod
    def __expected_tensor(table: KLTable, longest: int, rows: slice) -> np.ndarray:
        """v^{l(w)/2} C_w written with exponent index f = exponent + L."""
        size = table.size
        lengths = table.lengths
        expected = np.zeros((rows.stop - rows.start, size, 2 * longest + 1), dtype=np.int64)
        for local, w_index in enumerate(range(rows.start, rows.stop)):
            array = table.poly_array(w_index)
            gap = lengths[w_index] - lengths
            signs = np.where(gap % 2 == 1, -1, 1)
            for degree in range(array.shape[1]):
                xs = np.nonzero(array[:, degree])[0]
                expected[local, xs, gap[xs] - degree + longest] = signs[xs] * array[xs, degree]
        return expected

    def __fail(self, table: KLTable, condition: str,
               witnesses: List[Tuple[Permutation, Permutation]]) -> None:
        sample = ", ".join(f"({y},{w})" for y, w in witnesses[:5])
        self.__logger.error(f"KL table for S_{table.n} fails {condition}: {sample}")
        raise VerificationError(f"KL table for S_{table.n} fails {condition} {sample}".strip())

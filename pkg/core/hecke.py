"""The Hecke algebra of S_n over Z[v^{1/2}, v^{-1/2}] in the T_w basis.

Quadratic relation: (T_s + 1)(T_s - v) = 0, so
T_s T_w = T_{sw} when sw > w and v T_{sw} + (v - 1) T_w otherwise.
"""
from typing import Dict, Iterator, Mapping, Tuple

from core.errors import PreconditionError
from core.kl_table import KLTable
from core.laurent import LaurentPoly, Scalar
from core.permutation import Permutation

_V = LaurentPoly.v()
_V_INV = LaurentPoly.monomial(-2)


class HeckeElement:
    """Finite sum of T_w with LaurentPoly coefficients; zero terms are never stored."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Permutation, Scalar] = None) -> None:
        self.n = n
        cleaned: Dict[Permutation, LaurentPoly] = {}
        for w, coefficient in (terms or {}).items():
            if w.n != n:
                raise PreconditionError(f"{w} is not in S_{n}")
            value = LaurentPoly.coerce(coefficient)
            if value:
                cleaned[w] = value
        self._terms = cleaned

    @classmethod
    def basis(cls, w: Permutation) -> "HeckeElement":
        return cls(w.n, {w: 1})

    @classmethod
    def identity(cls, n: int) -> "HeckeElement":
        return cls.basis(Permutation.identity(n))

    @classmethod
    def generator(cls, i: int, n: int) -> "HeckeElement":
        return cls.basis(Permutation.simple(i, n))

    @classmethod
    def inverse_generator(cls, i: int, n: int) -> "HeckeElement":
        """T_s^{-1} = v^{-1} T_s + (v^{-1} - 1)."""
        return cls(n, {
            Permutation.simple(i, n): _V_INV,
            Permutation.identity(n): _V_INV - 1,
        })

    def items(self) -> Iterator[Tuple[Permutation, LaurentPoly]]:
        return iter(sorted(self._terms.items(), key=lambda item: item[0].one_line))

    def coefficient(self, w: Permutation) -> LaurentPoly:
        return self._terms.get(w, LaurentPoly())

    def left_mul_generator(self, i: int) -> "HeckeElement":
        """Return T_{s_i} · h."""
        result: Dict[Permutation, LaurentPoly] = {}
        for w, coefficient in self._terms.items():
            sw = w.left_multiply(i)
            if i not in w.tau:
                _accumulate(result, sw, coefficient)
            else:
                _accumulate(result, sw, coefficient * _V)
                _accumulate(result, w, coefficient * (_V - 1))
        return HeckeElement(self.n, result)

    def right_mul_generator(self, i: int) -> "HeckeElement":
        """Return h · T_{s_i}, where w s_i exchanges positions i and i+1."""
        result: Dict[Permutation, LaurentPoly] = {}
        s = Permutation.simple(i, self.n)
        for w, coefficient in self._terms.items():
            ws = w.compose(s)
            if i not in w.right_descents():
                _accumulate(result, ws, coefficient)
            else:
                _accumulate(result, ws, coefficient * _V)
                _accumulate(result, w, coefficient * (_V - 1))
        return HeckeElement(self.n, result)

    def bar(self) -> "HeckeElement":
        """Bar involution: v^{1/2} -> v^{-1/2} and T_w -> T_{w^{-1}}^{-1}."""
        total = HeckeElement(self.n)
        for w, coefficient in self._terms.items():
            image = HeckeElement.identity(self.n)
            for i in reversed(w.reduced_word()):
                image = HeckeElement.inverse_generator(i, self.n) * image
            total = total + image.scale(coefficient.bar())
        return total

    def scale(self, factor: Scalar) -> "HeckeElement":
        factor = LaurentPoly.coerce(factor)
        return HeckeElement(self.n, {w: c * factor for w, c in self._terms.items()})

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        merged = dict(self._terms)
        for w, coefficient in other._terms.items():
            _accumulate(merged, w, coefficient)
        return HeckeElement(self.n, merged)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.scale(-1)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        total = HeckeElement(self.n)
        for w, coefficient in self._terms.items():
            product = other
            for i in reversed(w.reduced_word()):
                product = product.left_mul_generator(i)
            total = total + product.scale(coefficient)
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        body = " + ".join(f"({c})T_{w}" for w, c in self.items()) or "0"
        return f"HeckeElement({body})"


def hecke_mul_generator(h: HeckeElement, i: int) -> HeckeElement:
    """Left multiplication T_{s_i} · h."""
    return h.left_mul_generator(i)


def _accumulate(bucket: Dict[Permutation, LaurentPoly], w: Permutation,
                value: LaurentPoly) -> None:
    total = bucket.get(w, LaurentPoly()) + value
    if total:
        bucket[w] = total
    else:
        bucket.pop(w, None)


def kl_basis_element(table: KLTable, w: Permutation) -> HeckeElement:
    """C_w = v^{l(w)/2} sum_y (-1)^{l(w)-l(y)} v^{-l(y)} bar(P_{y,w}) T_y."""
    lw = w.length
    terms: Dict[Permutation, LaurentPoly] = {}
    for y in table.elements:
        polynomial = table.polynomial(y, w)
        if polynomial:
            sign = -1 if (lw - y.length) % 2 else 1
            terms[y] = polynomial.bar().shift(lw - 2 * y.length) * sign
    return HeckeElement(w.n, terms)

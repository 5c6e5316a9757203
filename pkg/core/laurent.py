"""Laurent polynomials with integer coefficients in a half-step variable.

A single class covers both rings the package works in: Z[v^{1/2}, v^{-1/2}]
for Hecke algebra coefficients and Z[q, q^{-1}] for skein coefficients.
Exponents are stored as integer counts of half-steps, so ``v`` has exponent
code 2 and ``v^{1/2}`` has code 1.
"""
import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from core.errors import ParseError, PreconditionError

Scalar = Union[int, "LaurentPoly"]

_TERM_PATTERN = re.compile(
    r"^(?P<coef>\d+)?\*?(?:(?P<var>[vq])(?:\^(?P<exp>\(?-?\d+(?:/2)?\)?))?)?$")


class LaurentPoly:
    """Immutable Laurent polynomial ``sum c_e * x^(e/2)``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[int, int]] = None) -> None:
        """Build a polynomial from an exponent-code to coefficient mapping.

        Args:
            terms: Mapping from half-step exponent codes to coefficients.
                Zero coefficients are dropped.
        """
        cleaned: Dict[int, int] = {}
        for code, coefficient in (terms or {}).items():
            if coefficient:
                cleaned[int(code)] = int(coefficient)
        self._terms: Tuple[Tuple[int, int], ...] = tuple(sorted(cleaned.items()))
        self._hash: Optional[int] = None

    @classmethod
    def constant(cls, value: int) -> "LaurentPoly":
        return cls({0: value})

    @classmethod
    def monomial(cls, code: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({code: coefficient})

    @classmethod
    def v(cls) -> "LaurentPoly":
        return cls({2: 1})

    @classmethod
    def half(cls) -> "LaurentPoly":
        """Return v^{1/2}."""
        return cls({1: 1})

    @classmethod
    def q_integer(cls, k: int) -> "LaurentPoly":
        """Return the quantum integer [k]_q = q^{k-1} + q^{k-3} + ... + q^{1-k}."""
        if k <= 0:
            raise PreconditionError(f"quantum integer needs k >= 1, got {k}")
        return cls({2 * (k - 1 - 2 * t): 1 for t in range(k)})

    @classmethod
    def coerce(cls, value: Scalar) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int):
            return cls.constant(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to LaurentPoly")

    def items(self) -> Iterator[Tuple[int, int]]:
        """Yield (exponent code, coefficient) pairs in increasing exponent order."""
        return iter(self._terms)

    def coefficient(self, code: int) -> int:
        for term_code, value in self._terms:
            if term_code == code:
                return value
        return 0

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def has_half_integer_exponents(self) -> bool:
        return any(code % 2 for code, _ in self._terms)

    def min_code(self) -> int:
        return self._terms[0][0] if self._terms else 0

    def max_code(self) -> int:
        return self._terms[-1][0] if self._terms else 0

    def bar(self) -> "LaurentPoly":
        """Apply the involution x^{1/2} -> x^{-1/2}."""
        return LaurentPoly({-code: value for code, value in self._terms})

    def shift(self, code: int) -> "LaurentPoly":
        """Multiply by the monomial with the given exponent code."""
        return LaurentPoly({c + code: value for c, value in self._terms})

    def evaluate(self, x: Union[int, Fraction],
                 sqrt_x: Optional[Union[int, Fraction]] = None) -> Fraction:
        """Substitute a nonzero rational for the variable.

        Args:
            x: Value of the whole-step variable (v or q).
            sqrt_x: Chosen square root of ``x``; required whenever a
                half-integer exponent is present.

        Returns:
            Exact value as a Fraction.

        Raises:
            PreconditionError: If ``x`` is zero, or a square root is needed
                and missing or wrong.
        """
        x = Fraction(x)
        if x == 0:
            raise PreconditionError("cannot substitute 0 into a Laurent polynomial")
        if self.has_half_integer_exponents:
            if sqrt_x is None:
                raise PreconditionError(
                    "half-integer exponents need an explicit square root")
            root = Fraction(sqrt_x)
            if root * root != x:
                raise PreconditionError(f"{sqrt_x} is not a square root of {x}")
            return sum((value * root**code for code, value in self._terms),
                       Fraction(0))
        return sum((value * x**(code // 2) for code, value in self._terms),
                   Fraction(0))

    def __add__(self, other: Scalar) -> "LaurentPoly":
        if not isinstance(other, (int, LaurentPoly)):
            return NotImplemented
        merged = dict(self._terms)
        for code, value in LaurentPoly.coerce(other).items():
            merged[code] = merged.get(code, 0) + value
        return LaurentPoly(merged)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({code: -value for code, value in self._terms})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        if not isinstance(other, (int, LaurentPoly)):
            return NotImplemented
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        if not isinstance(other, (int, LaurentPoly)):
            return NotImplemented
        return LaurentPoly.coerce(other) + (-self)

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({code: value * other for code, value in self._terms})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        product: Dict[int, int] = {}
        for code_a, value_a in self._terms:
            for code_b, value_b in other._terms:
                code = code_a + code_b
                product[code] = product.get(code, 0) + value_a * value_b
        return LaurentPoly(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if exponent < 0:
            if len(self._terms) != 1 or self._terms[0][1] not in (1, -1):
                raise PreconditionError(
                    "only unit monomials have Laurent inverses")
            code, value = self._terms[0]
            return LaurentPoly({-code * -exponent: value**(-exponent)})
        result = LaurentPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            if len(self._terms) <= 1 and all(c == 0 for c, _ in self._terms):
                self._hash = hash(self._terms[0][1] if self._terms else 0)
            else:
                self._hash = hash(self._terms)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.format()!r})"

    def __str__(self) -> str:
        return self.format()

    def format(self, symbol: str = "v") -> str:
        """Render terms by descending exponent, e.g. ``v + 2 + v^-1``."""
        if not self._terms:
            return "0"
        pieces = []
        for code, value in reversed(self._terms):
            sign = "-" if value < 0 else "+"
            magnitude = abs(value)
            if code == 0:
                body = str(magnitude)
            else:
                power = _format_exponent(code)
                variable = symbol if power == "1" else f"{symbol}^{power}"
                body = variable if magnitude == 1 else f"{magnitude}*{variable}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse the text form produced by :meth:`format` (``v`` or ``q``).

        Raises:
            ParseError: On malformed input.
        """
        compact = text.replace(" ", "").replace("−", "-")
        if not compact:
            raise ParseError("empty polynomial text")
        if compact == "0":
            return cls()
        if compact[0] not in "+-":
            compact = "+" + compact
        terms: Dict[int, int] = {}
        for sign, body in _split_terms(compact):
            match = _TERM_PATTERN.match(body)
            if not match or (match.group("coef") is None and
                             match.group("var") is None):
                raise ParseError(f"malformed term {body!r} in {text!r}")
            coefficient = int(match.group("coef") or 1)
            code = 0
            if match.group("var"):
                code = _parse_exponent(match.group("exp"))
            terms[code] = terms.get(code, 0) + (coefficient if sign == "+" else
                                                -coefficient)
        return cls(terms)


def _format_exponent(code: int) -> str:
    if code % 2 == 0:
        return str(code // 2)
    return f"({code}/2)"


def _parse_exponent(raw: Optional[str]) -> int:
    if raw is None:
        return 2
    raw = raw.strip("()")
    if raw.endswith("/2"):
        return int(raw[:-2])
    return 2 * int(raw)


def _split_terms(compact: str) -> Iterable[Tuple[str, str]]:
    """Split ``+a-b+c`` into signed bodies, ignoring signs inside exponents."""
    start = 0
    depth = 0
    for position in range(1, len(compact) + 1):
        if position == len(compact):
            yield compact[start], compact[start + 1:position]
            return
        char = compact[position]
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        elif char in "+-" and depth == 0 and compact[position - 1] != "^":
            yield compact[start], compact[start + 1:position]
            start = position


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)

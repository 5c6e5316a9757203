"""Permutations of S_n in one-line notation.

Generators act on the left by exchanging VALUES: ``s_i·x`` swaps the entries
``i`` and ``i+1`` of the one-line word. Generator indices run 1..n-1.
"""
from functools import cached_property
from itertools import permutations as _iter_permutations
from typing import FrozenSet, Iterator, List, Sequence, Tuple

from core.errors import ParseError, PreconditionError


class Permutation:
    """An element of S_n stored as the tuple of images of 1..n."""

    __slots__ = ("one_line", "__dict__")

    def __init__(self, one_line: Sequence[int]) -> None:
        """Create a permutation, validating the one-line word.

        Args:
            one_line: Images of 1..n in order.

        Raises:
            PreconditionError: If the word is not a permutation of 1..n.
        """
        word = tuple(int(value) for value in one_line)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise PreconditionError(f"not a permutation of 1..{len(word)}: {word}")
        self.one_line: Tuple[int, ...] = word

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(range(n, 0, -1))

    @classmethod
    def simple(cls, i: int, n: int) -> "Permutation":
        """Return the transposition s_i of S_n exchanging i and i+1."""
        if not 1 <= i <= n - 1:
            raise PreconditionError(f"s_{i} is not a generator of S_{n}")
        word = list(range(1, n + 1))
        word[i - 1], word[i] = word[i], word[i - 1]
        return cls(word)

    @classmethod
    def all(cls, n: int) -> Iterator["Permutation"]:
        """Enumerate S_n in lexicographic one-line order."""
        for word in _iter_permutations(range(1, n + 1)):
            yield cls(word)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse ``54312`` or ``10,2,3,...`` forms.

        Raises:
            ParseError: If the text is not a permutation.
        """
        cleaned = text.strip()
        try:
            if "," in cleaned:
                values = [int(part) for part in cleaned.split(",")]
            else:
                values = [int(char) for char in cleaned]
            return cls(values)
        except (ValueError, PreconditionError) as exception:
            raise ParseError(f"cannot parse permutation {text!r}") from exception

    @property
    def n(self) -> int:
        return len(self.one_line)

    @cached_property
    def positions(self) -> Tuple[int, ...]:
        """0-based position of each value 1..n."""
        where = [0] * self.n
        for position, value in enumerate(self.one_line):
            where[value - 1] = position
        return tuple(where)

    def compose(self, other: "Permutation") -> "Permutation":
        """Return ``self ∘ other``, i.e. k -> self(other(k)).

        Raises:
            PreconditionError: On size mismatch.
        """
        self.__check_same_size(other)
        return Permutation(self.one_line[value - 1] for value in other.one_line)

    def invert(self) -> "Permutation":
        return Permutation(position + 1 for position in self.positions)

    def left_multiply(self, i: int) -> "Permutation":
        """Return s_i·x by exchanging the values i and i+1."""
        if not 1 <= i <= self.n - 1:
            raise PreconditionError(f"s_{i} is not a generator of S_{self.n}")
        word = list(self.one_line)
        a, b = self.positions[i - 1], self.positions[i]
        word[a], word[b] = word[b], word[a]
        return Permutation(word)

    @cached_property
    def length(self) -> int:
        """Inversion count, equal to the Coxeter length."""
        word = self.one_line
        return sum(1 for a in range(self.n) for b in range(a + 1, self.n)
                   if word[a] > word[b])

    @cached_property
    def tau(self) -> FrozenSet[int]:
        """Left descent set {i : i+1 appears left of i}."""
        return frozenset(i for i in range(1, self.n)
                         if self.positions[i] < self.positions[i - 1])

    def right_descents(self) -> FrozenSet[int]:
        return frozenset(i for i in range(1, self.n)
                         if self.one_line[i - 1] > self.one_line[i])

    def reduced_word(self) -> List[int]:
        """A reduced word i_1..i_k with x = s_{i_1} ... s_{i_k}."""
        word: List[int] = []
        current = self
        while current.tau:
            i = min(current.tau)
            word.append(i)
            current = current.left_multiply(i)
        return word

    def bruhat_leq(self, other: "Permutation") -> bool:
        """Bruhat order via the dominance criterion on prefix sets.

        x <= y iff for every k the sorted prefix x_1..x_k is dominated
        entrywise by the sorted prefix y_1..y_k.
        """
        self.__check_same_size(other)
        for k in range(1, self.n):
            mine = sorted(self.one_line[:k])
            theirs = sorted(other.one_line[:k])
            if any(a > b for a, b in zip(mine, theirs)):
                return False
        return True

    def f_sn(self, i: int, j: int) -> "Permutation":
        """The map D_{i,j} -> D_{j,i}: the unique member of D_{j,i} among s_i·x, s_j·x.

        Raises:
            PreconditionError: If |i-j| != 1 or x is not in D_{i,j}.
        """
        _check_adjacent(i, j, self.n)
        if i not in self.tau or j in self.tau:
            raise PreconditionError(
                f"{self} is not in D_{{{i},{j}}} (tau={sorted(self.tau)})")
        for k in (i, j):
            candidate = self.left_multiply(k)
            if j in candidate.tau and i not in candidate.tau:
                return candidate
        raise PreconditionError(f"no image of {self} in D_{{{j},{i}}}")

    @staticmethod
    def dual_knuth_related(x: "Permutation", y: "Permutation", i: int) -> bool:
        """Whether x and y differ by a dual Knuth step with index i.

        Either i, i+1 are exchanged and i-1 sits between them, or i-1, i are
        exchanged and i+1 sits between them.
        """
        x.__check_same_size(y)
        n = x.n
        if not 2 <= i <= n - 1:
            return False
        for swapped, witness in ((i, i - 1), (i - 1, i + 1)):
            if x.left_multiply(swapped) != y:
                continue
            lo, hi = sorted((x.positions[swapped - 1], x.positions[swapped]))
            if lo < x.positions[witness - 1] < hi:
                return True
        return False

    def __check_same_size(self, other: "Permutation") -> None:
        if self.n != other.n:
            raise PreconditionError(
                f"size mismatch: S_{self.n} versus S_{other.n}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.one_line == other.one_line

    def __lt__(self, other: "Permutation") -> bool:
        return self.one_line < other.one_line

    def __hash__(self) -> int:
        return hash(self.one_line)

    def __repr__(self) -> str:
        return f"Permutation({self})"

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(str(value) for value in self.one_line)
        return ",".join(str(value) for value in self.one_line)


def bruhat_leq_by_subwords(x: Permutation, y: Permutation) -> bool:
    """Brute-force Bruhat comparison: x is a subword product of a reduced word of y."""
    word = y.reduced_word()
    reachable = {Permutation.identity(y.n)}
    for letter in reversed(word):
        reachable |= {element.left_multiply(letter) for element in reachable}
    return x in reachable


def _check_adjacent(i: int, j: int, n: int) -> None:
    if abs(i - j) != 1:
        raise PreconditionError(f"indices {i} and {j} are not adjacent")
    if not (1 <= min(i, j) and max(i, j) <= n - 1):
        raise PreconditionError(f"indices {i},{j} out of range for S_{n}")

"""Standard Young tableaux, their tau-invariants and f-maps, and Yamanouchi words."""
from functools import cached_property, lru_cache, reduce
from itertools import chain
from math import factorial
from operator import mul
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from core.errors import ParseError, PreconditionError, ShapeError

Shape = Tuple[int, ...]
Move = Tuple[int, int]

YAMANOUCHI_SYMBOLS: Tuple[str, str, str] = ("+", "0", "-")


def partitions(n: int, largest: Optional[int] = None) -> List[Shape]:
    """All partitions of n as weakly decreasing tuples, in reverse lex order."""
    if largest is None:
        largest = n
    if n == 0:
        return [()]
    result: List[Shape] = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            result.append((first,) + rest)
    return result


def hook_length_count(shape: Shape) -> int:
    """Number of standard tableaux of the given shape (hook-length formula)."""
    n = sum(shape)
    if n == 0:
        return 1
    hooks = ((shape[row] - column + sum(1 for lower in shape[row + 1:]
                                        if lower > column))
             for row in range(len(shape))
             for column in range(shape[row]))
    return factorial(n) // reduce(mul, hooks, 1)


class StandardTableau:
    """Rows strictly increase left to right, columns top to bottom, entries 1..n."""

    __slots__ = ("rows", "__dict__")

    def __init__(self, rows: Sequence[Sequence[int]]) -> None:
        """Create and validate a standard tableau.

        Args:
            rows: Row contents from top to bottom.

        Raises:
            ShapeError: If the filling is not standard.
        """
        self.rows: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(int(value) for value in row) for row in rows if len(row))
        self.__validate()

    def __validate(self) -> None:
        shape = self.shape
        if any(a < b for a, b in zip(shape, shape[1:])):
            raise ShapeError(f"row lengths must weakly decrease: {shape}")
        entries = sorted(chain.from_iterable(self.rows))
        if entries != list(range(1, len(entries) + 1)):
            raise ShapeError(f"entries must be exactly 1..n: {self}")
        for row in self.rows:
            if any(a >= b for a, b in zip(row, row[1:])):
                raise ShapeError(f"row {row} is not increasing in {self}")
        for upper, lower in zip(self.rows, self.rows[1:]):
            if any(lower[c] <= upper[c] for c in range(len(lower))):
                raise ShapeError(f"a column of {self} is not increasing")

    @classmethod
    def parse(cls, text: str) -> "StandardTableau":
        """Parse ``1,3,5/2,4,7/6,8,9``; single-digit rows may omit commas."""
        try:
            rows = []
            for chunk in text.strip().split("/"):
                chunk = chunk.strip().strip("()")
                if "," in chunk:
                    rows.append([int(part) for part in chunk.split(",")])
                else:
                    rows.append([int(char) for char in chunk])
            return cls(rows)
        except (ValueError, ShapeError) as exception:
            raise ParseError(f"cannot parse tableau {text!r}") from exception

    @classmethod
    def all(cls, shape: Shape) -> Iterator["StandardTableau"]:
        """Enumerate the standard tableaux of a shape in lexicographic row order."""
        for rows in _fillings(tuple(shape)):
            yield cls(rows)

    @classmethod
    def all_of_size(cls, n: int) -> Iterator["StandardTableau"]:
        for shape in partitions(n):
            yield from cls.all(shape)

    @classmethod
    def column_superstandard(cls, shape: Shape) -> "StandardTableau":
        """Fill the columns of ``shape`` consecutively, left to right."""
        rows: List[List[int]] = [[] for _ in shape]
        label = 1
        for column in range(shape[0] if shape else 0):
            for row in range(len(shape)):
                if shape[row] > column:
                    rows[row].append(label)
                    label += 1
        return cls(rows)

    @property
    def shape(self) -> Shape:
        return tuple(len(row) for row in self.rows)

    @property
    def n(self) -> int:
        return sum(self.shape)

    @cached_property
    def _cells(self) -> Dict[int, Tuple[int, int]]:
        return {
            value: (r, c)
            for r, row in enumerate(self.rows)
            for c, value in enumerate(row)
        }

    def row_of(self, value: int) -> int:
        return self._cells[value][0]

    def column_of(self, value: int) -> int:
        return self._cells[value][1]

    @cached_property
    def tau(self) -> FrozenSet[int]:
        """{i : i+1 lies in a lower row than i}."""
        return frozenset(i for i in range(1, self.n)
                         if self.row_of(i + 1) > self.row_of(i))

    def swap(self, i: int) -> Optional["StandardTableau"]:
        """Exchange the labels i and i+1, or return None if not standard."""
        (r1, c1), (r2, c2) = self._cells[i], self._cells[i + 1]
        if r1 == r2 or c1 == c2:
            return None
        rows = [list(row) for row in self.rows]
        rows[r1][c1], rows[r2][c2] = i + 1, i
        return StandardTableau(rows)

    def f_yt(self, i: int, j: int) -> "StandardTableau":
        """The map D_{i,j} -> D_{j,i}: the standard one of s_i·Y, s_j·Y lying in D_{j,i}.

        Raises:
            PreconditionError: If |i-j| != 1, indices are out of range, or Y
                is not in D_{i,j}.
        """
        if abs(i - j) != 1 or min(i, j) < 1 or max(i, j) > self.n - 1:
            raise PreconditionError(f"bad index pair ({i},{j}) for n={self.n}")
        if i not in self.tau or j in self.tau:
            raise PreconditionError(
                f"{self} is not in D_{{{i},{j}}} (tau={sorted(self.tau)})")
        for k in (i, j):
            candidate = self.swap(k)
            if candidate is not None and j in candidate.tau and i not in candidate.tau:
                return candidate
        raise PreconditionError(f"no image of {self} in D_{{{j},{i}}}")

    def in_domain(self, i: int, j: int) -> bool:
        return i in self.tau and j not in self.tau

    @property
    def is_column_superstandard(self) -> bool:
        return self == StandardTableau.column_superstandard(self.shape)

    def remove_largest(self) -> "StandardTableau":
        """Delete the box holding n."""
        row = self.row_of(self.n)
        rows = [list(r) for r in self.rows]
        rows[row].pop()
        return StandardTableau(rows)

    def apply_path(self, path: Sequence[Move]) -> "StandardTableau":
        current = self
        for i, j in path:
            current = current.f_yt(i, j)
        return current

    def to_superstandard_path(self) -> List[Move]:
        """Moves (i,j) whose f_yt images carry Y to the column superstandard tableau.

        Follows the inductive construction: push the largest non-descent up to
        n-1, recurse on Y without n, then strip the first column and recurse on
        the rest with shifted labels. Moves (i,i-1) that coincide with the move
        (i,i+1) on the current tableau are recorded as (i,i+1).
        """
        path = _superstandard_moves(self)
        normalized: List[Move] = []
        current = self
        for i, j in path:
            if (j == i - 1 and i + 1 <= self.n - 1 and current.in_domain(i, i + 1)):
                alternative = current.f_yt(i, i + 1)
                image = current.f_yt(i, j)
                if alternative == image:
                    normalized.append((i, i + 1))
                    current = image
                    continue
            normalized.append((i, j))
            current = current.f_yt(i, j)
        return normalized

    def to_yamanouchi(self) -> "YamanouchiWord":
        """Symbol k is +, 0, - as k sits in the top, middle or bottom row.

        Raises:
            ShapeError: If the shape is not [n,n,n].
        """
        shape = self.shape
        if len(shape) != 3 or len(set(shape)) != 1:
            raise ShapeError(f"Yamanouchi words need shape [n,n,n], got {list(shape)}")
        return YamanouchiWord("".join(YAMANOUCHI_SYMBOLS[self.row_of(k)]
                                      for k in range(1, self.n + 1)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StandardTableau):
            return NotImplemented
        return self.rows == other.rows

    def __lt__(self, other: "StandardTableau") -> bool:
        return (self.shape, self.rows) < (other.shape, other.rows)

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"StandardTableau({self})"

    def __str__(self) -> str:
        return "/".join(",".join(str(value) for value in row) for row in self.rows)


class YamanouchiWord:
    """A word over {+, 0, -} whose prefixes satisfy #(+) >= #(0) >= #(-)."""

    __slots__ = ("symbols",)

    def __init__(self, symbols: str) -> None:
        """Validate the prefix condition.

        Raises:
            ShapeError: On foreign symbols or a prefix violation.
        """
        symbols = symbols.replace("−", "-")
        counts = {symbol: 0 for symbol in YAMANOUCHI_SYMBOLS}
        for position, symbol in enumerate(symbols):
            if symbol not in counts:
                raise ShapeError(f"unexpected symbol {symbol!r} in {symbols!r}")
            counts[symbol] += 1
            if not counts["+"] >= counts["0"] >= counts["-"]:
                raise ShapeError(
                    f"prefix of length {position + 1} of {symbols!r} is not Yamanouchi")
        self.symbols: str = symbols

    @property
    def is_balanced(self) -> bool:
        return all(self.symbols.count(s) * 3 == len(self.symbols)
                   for s in YAMANOUCHI_SYMBOLS)

    def to_tableau(self) -> StandardTableau:
        """Row r of the tableau lists the positions carrying the r-th symbol.

        Raises:
            ShapeError: If the word is not balanced.
        """
        if not self.is_balanced:
            raise ShapeError(f"Yamanouchi word {self.symbols!r} is not balanced")
        rows: List[List[int]] = [[], [], []]
        for position, symbol in enumerate(self.symbols, start=1):
            rows[YAMANOUCHI_SYMBOLS.index(symbol)].append(position)
        if not rows[0]:
            raise ShapeError("the empty word has no tableau")
        return StandardTableau(rows)

    def differing_positions(self, other: "YamanouchiWord") -> FrozenSet[int]:
        """1-based positions where two words of equal length disagree."""
        if len(self) != len(other):
            raise PreconditionError("words have different lengths")
        return frozenset(k + 1 for k, (a, b) in enumerate(zip(self.symbols, other.symbols))
                         if a != b)

    def __len__(self) -> int:
        return len(self.symbols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, YamanouchiWord):
            return NotImplemented
        return self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"YamanouchiWord({self.symbols!r})"

    def __str__(self) -> str:
        return self.symbols


@lru_cache(maxsize=None)
def _fillings(shape: Shape) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
    """Fillings of ``shape`` by placing n in each removable corner recursively."""
    n = sum(shape)
    if n == 0:
        return ((),)
    found = []
    for row in range(len(shape)):
        removable = shape[row] > 0 and (row + 1 == len(shape) or shape[row + 1] < shape[row])
        if not removable:
            continue
        smaller = list(shape)
        smaller[row] -= 1
        trimmed = tuple(part for part in smaller if part)
        for rows in _fillings(trimmed):
            grown = [list(r) for r in rows] + [[] for _ in range(len(shape) - len(rows))]
            grown[row].append(n)
            found.append(tuple(tuple(r) for r in grown))
    return tuple(sorted(found))


def _superstandard_moves(tableau: StandardTableau) -> List[Move]:
    if tableau.is_column_superstandard or len(tableau.shape) == 0:
        return []
    if len(tableau.shape) == 1 or tableau.shape[0] == 1:
        return []
    n = tableau.n
    moves: List[Move] = []
    current = tableau
    while True:
        free = [k for k in range(1, n) if k not in current.tau]
        k = max(free)
        if k == n - 1:
            break
        moves.append((k + 1, k))
        current = current.f_yt(k + 1, k)

    inner_moves = _superstandard_moves(current.remove_largest())
    moves.extend(inner_moves)
    current = current.apply_path(inner_moves)

    first_column = sum(1 for length in current.shape if length > 0)
    rest_rows = [[value - first_column for value in row[1:]] for row in current.rows]
    rest_rows = [row for row in rest_rows if row]
    if rest_rows:
        rest = StandardTableau(rest_rows)
        for i, j in _superstandard_moves(rest):
            moves.append((i + first_column, j + first_column))
    return moves

"""Hypothesis strategies shared by the test modules."""
from collections import Counter

from hypothesis import strategies as st

from core.permutation import Permutation
from core.tableau import StandardTableau


@st.composite
def permutation_strategy(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    return Permutation(draw(st.permutations(range(1, n + 1))))


@st.composite
def permutation_pair_strategy(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    x = Permutation(draw(st.permutations(range(1, n + 1))))
    y = Permutation(draw(st.permutations(range(1, n + 1))))
    return x, y


@st.composite
def partition_strategy(draw, max_n=8):
    n = draw(st.integers(min_value=1, max_value=max_n))
    k = draw(st.integers(min_value=1, max_value=n))
    bins = draw(st.lists(st.integers(min_value=0, max_value=k - 1), min_size=n, max_size=n))
    return tuple(sorted(Counter(bins).values(), reverse=True))


@st.composite
def tableau_strategy(draw, max_n=8):
    """A standard tableau grown one box at a time at a random addable corner."""
    shape = draw(partition_strategy(max_n=max_n))
    rows = [[] for _ in shape]
    for value in range(1, sum(shape) + 1):
        corners = [r for r in range(len(shape))
                   if len(rows[r]) < shape[r] and (r == 0 or len(rows[r - 1]) > len(rows[r]))]
        rows[draw(st.sampled_from(corners))].append(value)
    return StandardTableau(rows)


@st.composite
def rectangle_tableau_strategy(draw, max_k=3):
    k = draw(st.integers(min_value=1, max_value=max_k))
    return draw(st.sampled_from(list(StandardTableau.all((k, k, k)))))

import pytest
from hypothesis import given

from core.errors import ParseError, PreconditionError
from core.permutation import Permutation, bruhat_leq_by_subwords
from tests.strategies import permutation_pair_strategy, permutation_strategy


def test_parse_and_print():
    w = Permutation.parse("54312")
    assert w.one_line == (5, 4, 3, 1, 2)
    assert str(w) == "54312"
    long = Permutation.parse("10,2,3,4,5,6,7,8,9,1")
    assert long.n == 10
    assert str(long) == "10,2,3,4,5,6,7,8,9,1"


@pytest.mark.parametrize("text", ["5431", "1123", "12a", "0"])
def test_parse_rejects_non_permutations(text):
    with pytest.raises(ParseError):
        Permutation.parse(text)


def test_tau_is_the_left_descent_set():
    assert Permutation.parse("132").tau == {2}
    assert Permutation.parse("231").tau == {1}
    assert Permutation.parse("25413").tau == {1, 3, 4}
    assert Permutation.identity(5).tau == frozenset()
    assert Permutation.longest(4).tau == {1, 2, 3}


def test_f_sn_examples():
    assert Permutation.parse("132").f_sn(2, 1) == Permutation.parse("231")
    assert Permutation.parse("25413").f_sn(1, 2) == Permutation.parse("35412")


def test_f_sn_preconditions():
    w = Permutation.parse("25413")
    with pytest.raises(PreconditionError):
        w.f_sn(1, 3)
    with pytest.raises(PreconditionError):
        w.f_sn(2, 1)
    with pytest.raises(PreconditionError):
        w.f_sn(4, 5)


def test_simple_rejects_bad_index():
    with pytest.raises(PreconditionError):
        Permutation.simple(3, 3)


@given(permutation_strategy(min_n=3, max_n=7))
def test_f_sn_is_a_bijection_between_domains(w):
    for i in range(1, w.n):
        for j in (i - 1, i + 1):
            if not 1 <= j <= w.n - 1 or i not in w.tau or j in w.tau:
                continue
            image = w.f_sn(i, j)
            assert j in image.tau and i not in image.tau
            assert image.f_sn(j, i) == w


@given(permutation_strategy())
def test_reduced_word_rebuilds_the_permutation(w):
    word = w.reduced_word()
    assert len(word) == w.length
    current = Permutation.identity(w.n)
    for i in reversed(word):
        current = current.left_multiply(i)
    assert current == w


@given(permutation_strategy())
def test_inverse_and_descents(w):
    assert w.compose(w.invert()) == Permutation.identity(w.n)
    assert w.right_descents() == w.invert().tau
    assert w.invert().length == w.length


@given(permutation_strategy(min_n=2))
def test_left_multiplication_changes_length_by_one(w):
    for i in range(1, w.n):
        expected = w.length - 1 if i in w.tau else w.length + 1
        assert w.left_multiply(i).length == expected


def test_longest_length():
    assert Permutation.longest(5).length == 10


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_bruhat_order_matches_subwords(n):
    elements = list(Permutation.all(n))
    for x in elements:
        for y in elements:
            assert x.bruhat_leq(y) == bruhat_leq_by_subwords(x, y)


@given(permutation_pair_strategy(max_n=5))
def test_bruhat_order_matches_subwords_sampled(pair):
    x, y = pair
    assert x.bruhat_leq(y) == bruhat_leq_by_subwords(x, y)


def test_dual_knuth_steps():
    x = Permutation.parse("25413")
    assert Permutation.dual_knuth_related(x, Permutation.parse("35412"), 2)
    assert not Permutation.dual_knuth_related(x, x, 2)
    assert not Permutation.dual_knuth_related(x, Permutation.parse("24513"), 5)
    assert not Permutation.dual_knuth_related(x, Permutation.parse("35412"), 1)

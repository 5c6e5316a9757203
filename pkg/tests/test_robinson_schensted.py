from math import factorial

import pytest
from hypothesis import given

from core.errors import ShapeError
from core.permutation import Permutation
from core.tableau import StandardTableau, hook_length_count, partitions
from services.robinson_schensted_service import RobinsonSchenstedService
from tests.strategies import permutation_strategy

service = RobinsonSchenstedService()


def test_worked_example():
    p, q = service.rs(Permutation.parse("54312"))
    assert p == StandardTableau.parse("12/3/4/5")
    assert q == StandardTableau.parse("15/2/3/4")


def test_insertion_steps_end_at_the_pair():
    w = Permutation.parse("54312")
    steps = list(service.insert_steps(w))
    assert len(steps) == 5
    assert steps[0] == ([[5]], [[1]])
    assert steps[1] == ([[4], [5]], [[1], [2]])
    p, q = service.rs(w)
    assert [tuple(row) for row in steps[-1][0]] == list(p.rows)
    assert [tuple(row) for row in steps[-1][1]] == list(q.rows)


@given(permutation_strategy(max_n=8))
def test_inverse_recovers_the_permutation(w):
    p, q = service.rs(w)
    assert p.shape == q.shape
    assert service.rs_inverse(p, q) == w


@given(permutation_strategy(max_n=8))
def test_symmetry_and_descents(w):
    p, q = service.rs(w)
    assert service.q_via_inverse(w) == q
    assert p.tau == w.tau


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_bijection_onto_pairs(n):
    pairs = {service.rs(w) for w in Permutation.all(n)}
    assert len(pairs) == factorial(n)
    assert sum(hook_length_count(shape)**2 for shape in partitions(n)) == factorial(n)


def test_shape_mismatch():
    with pytest.raises(ShapeError):
        service.rs_inverse(StandardTableau.parse("12"), StandardTableau.parse("1/2"))


def _exchanges(w):
    for i in range(1, w.n):
        for j in (i - 1, i + 1):
            if 1 <= j <= w.n - 1 and i in w.tau and j not in w.tau:
                yield i, j


def _assert_exchange_commutes(w):
    p, q = service.rs(w)
    for i, j in _exchanges(w):
        image_p, image_q = service.rs(w.f_sn(i, j))
        assert image_q == q
        assert image_p == p.f_yt(i, j)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_exchange_keeps_q_and_moves_p(n):
    for w in Permutation.all(n):
        _assert_exchange_commutes(w)


@given(permutation_strategy(min_n=8, max_n=11))
def test_exchange_keeps_q_and_moves_p_for_larger_n(w):
    _assert_exchange_commutes(w)

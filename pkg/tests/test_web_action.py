import pytest

from core.errors import PreconditionError, UnreducedWebError
from core.tableau import StandardTableau
from core.web import Web
from services.web_action_service import NegativeCoefficientRecord, scan_generators

T_1 = "135/247/689"
T_2 = "1,3,7,9/2,5,8,11/4,6,10,12"


def _web(kk, text):
    return kk.tableau_to_web(StandardTableau.parse(text))


def _adjacent_pairs(m):
    return [(i, j) for i in range(1, m) for j in (i - 1, i + 1) if 1 <= j <= m - 1]


def test_nine_point_examples(actions, kk):
    w_1 = _web(kk, T_1)
    assert actions.tau_web(w_1) == {1, 3, 5, 7}
    image = actions.f_web(1, 2, w_1)
    assert actions.tau_web(image) == {2, 5, 7}
    assert image == _web(kk, "125/347/689")

    twins = [web for web in kk.reduced_webs(3) if web.tau == {1, 3, 5, 7}]
    assert len(twins) == 2
    w_2 = next(web for web in twins if web != w_1)
    assert actions.tau_web(actions.f_web(1, 2, w_2)) == {2, 3, 5, 7}


def test_twelve_point_examples(actions, kk):
    w_3 = _web(kk, T_2)
    assert actions.tau_web(w_3) == {1, 3, 5, 7, 9, 11}
    image = actions.f_web(7, 6, w_3)
    assert actions.tau_web(image) == {1, 3, 6, 9, 11}
    assert actions.tau_web(actions.f_web(1, 2, image)) == {2, 3, 6, 9, 11}
    assert image == kk.tableau_to_web(StandardTableau.parse(T_2).f_yt(7, 6))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_f_web_follows_f_yt(actions, kk, n):
    for tableau in StandardTableau.all((n, n, n)):
        web = kk.tableau_to_web(tableau)
        for i, j in _adjacent_pairs(3 * n):
            if not tableau.in_domain(i, j):
                continue
            image = actions.f_web(i, j, web)
            assert image == kk.tableau_to_web(tableau.f_yt(i, j))
            assert actions.f_web(j, i, image) == web


def test_f_web_preconditions(actions, kk):
    star = _web(kk, "13/25/46")
    with pytest.raises(PreconditionError):
        actions.f_web(1, 3, star)
    with pytest.raises(PreconditionError):
        actions.f_web(2, 1, star)
    with pytest.raises(PreconditionError):
        actions.f_web(5, 6, star)


def test_unreduced_webs_are_rejected(actions, kk):
    graph = _web(kk, "13/25/46").to_graph()
    graph.insert_h(2)
    unreduced = Web.from_graph(graph)
    assert not actions.is_reduced(unreduced)
    with pytest.raises(UnreducedWebError):
        actions.tau_web(unreduced)
    with pytest.raises(UnreducedWebError):
        actions.f_web(1, 2, unreduced)


def test_search_on_three_points_is_empty(actions):
    assert list(actions.find_negative_coefficient(1, threads=1)) == []


def test_search_records_are_consistent(actions, kk):
    for record in actions.find_negative_coefficient(3, threads=1, generators=[1, 2]):
        source = StandardTableau.parse(record.source_tableau)
        assert record.n == 3
        assert record.coefficient < 0
        assert record.generator in (1, 2)
        assert record.generator not in source.tau


def test_search_preconditions(actions):
    with pytest.raises(PreconditionError):
        list(actions.find_negative_coefficient(0))
    with pytest.raises(PreconditionError):
        list(actions.find_negative_coefficient(2, threads=1, generators=[6]))


def test_scan_generators():
    records = [
        NegativeCoefficientRecord(n=6, generator=k, source_tableau="", target_tableau="", coefficient=-1)
        for k in (1, 1, 4)
    ]
    assert scan_generators(records) == {1: 2, 4: 1}


@pytest.mark.slow
def test_eighteen_points_have_a_minus_two(actions):
    found = None
    for record in actions.find_negative_coefficient(6, generators=[1]):
        if record.coefficient == -2:
            found = record
            break
    assert found is not None
    assert found.generator == 1

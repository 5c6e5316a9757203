import numpy as np
import pytest

from core.errors import PreconditionError
from core.laurent import ONE, LaurentPoly
from core.tableau import StandardTableau
from core.web import Web, WebSum
from services.skein_reduction_service import BRAID, HECKE, ORDERS, SYMMETRIC, SkeinReductionService

Q = LaurentPoly.monomial(2)
V = LaurentPoly.v()


def _web(kk, text):
    return kk.tableau_to_web(StandardTableau.parse(text))


def _with_h(web, i):
    graph = web.to_graph()
    graph.insert_h(i)
    return Web.from_graph(graph)


def _theta():
    return Web(0, ["source", "sink"], [(0, 1), (0, 1), (0, 1)], {0: [0, 1, 2], 1: [2, 1, 0]})


def _identity(size):
    identity = np.full((size, size), LaurentPoly(), dtype=object)
    for k in range(size):
        identity[k, k] = ONE
    return identity


def _is_zero(matrix):
    return all(entry == 0 for entry in matrix.flat)


@pytest.mark.parametrize("parameters,circle", [
    (SYMMETRIC, LaurentPoly.constant(3)),
    (BRAID, LaurentPoly.q_integer(3)),
    (HECKE, V + 1 + LaurentPoly.monomial(-2)),
])
def test_circles(skein, parameters, circle):
    assert skein.evaluate_closed(Web.empty(), parameters) == 1
    assert skein.evaluate_closed(Web.empty(1), parameters) == circle
    assert skein.evaluate_closed(Web.empty(2), parameters) == circle * circle


def test_theta_is_bigon_times_circle(skein):
    assert skein.evaluate_closed(_theta()) == -6
    assert skein.evaluate_closed(_theta(), BRAID) == LaurentPoly.q_integer(2) * LaurentPoly.q_integer(3)


def test_closed_values_are_cached_with_a_bound():
    skein = SkeinReductionService(SYMMETRIC, closed_cache_size=2)
    assert skein.evaluate_closed(_theta()) == -6
    assert skein.evaluate_closed(_theta()) == -6
    assert skein.closed_cache_info().hits >= 1
    for parameters in (BRAID, HECKE, SYMMETRIC):
        skein.evaluate_closed(_theta(), parameters)
    info = skein.closed_cache_info()
    assert info.maxsize == 2
    assert info.currsize == 2


def test_closed_evaluation_needs_a_closed_web(skein, kk):
    with pytest.raises(PreconditionError):
        skein.evaluate_closed(_web(kk, "1/2/3"))


def test_bigon_collapses(skein, kk):
    star = _web(kk, "13/25/46")
    assert skein.apply_h(1, star) == WebSum.single(star, -2)
    assert skein.apply_h(1, star, BRAID) == WebSum.single(star, LaurentPoly.q_integer(2))


@pytest.mark.parametrize("parameters,eigenvalue", [
    (SYMMETRIC, LaurentPoly.constant(-1)),
    (BRAID, LaurentPoly.monomial(8, -1)),
    (HECKE, LaurentPoly.constant(-1)),
])
def test_generators_in_tau_act_by_a_scalar(skein, kk, parameters, eigenvalue):
    star = _web(kk, "13/25/46")
    for i in star.tau:
        assert skein.apply_generator(i, WebSum.single(star), parameters) == WebSum.single(star, eigenvalue)


def test_word_action_on_the_star(skein, kk):
    star = _web(kk, "13/25/46")
    expected = -(WebSum.single(star) + WebSum.single(_web(kk, "14/25/36")) +
                 WebSum.single(_web(kk, "12/35/46")))
    assert skein.act_word([2, 1], WebSum.single(star)) == expected


@pytest.fixture(scope="module")
def symmetric_action(skein):
    matrices = {}

    def build(n):
        if n not in matrices:
            matrices[n] = {i: skein.action_matrix(i, n) for i in range(1, 3 * n)}
        return matrices[n]

    return build


@pytest.mark.parametrize("n", [1, 2, 3])
def test_symmetric_generators_square_to_one(symmetric_action, n):
    for matrix in symmetric_action(n).values():
        assert np.array_equal(matrix @ matrix, np.eye(len(matrix), dtype=np.int64))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_symmetric_braid_relations(symmetric_action, n):
    matrices = symmetric_action(n)
    for i in range(1, 3 * n - 1):
        a, b = matrices[i], matrices[i + 1]
        assert np.array_equal(a @ b @ a, b @ a @ b)
    for i in matrices:
        for j in range(i + 2, 3 * n):
            assert np.array_equal(matrices[i] @ matrices[j], matrices[j] @ matrices[i])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_generator_negates_exactly_the_webs_with_it_in_tau(symmetric_action, kk, n):
    basis = kk.reduced_webs(n)
    minus_identity = -np.eye(len(basis), dtype=np.int64)
    for i, matrix in symmetric_action(n).items():
        for column, web in enumerate(basis):
            negated = np.array_equal(matrix[:, column], minus_identity[:, column])
            assert negated == (i in web.tau)


@pytest.mark.parametrize("i", [1, 2, 3])
def test_braid_quadratic_relation(skein, i):
    matrix = skein.action_matrix(i, 2, BRAID)
    identity = _identity(len(matrix))
    product = (matrix - identity * LaurentPoly.monomial(4)) @ (matrix + identity * LaurentPoly.monomial(8))
    assert _is_zero(product)


@pytest.mark.parametrize("i", [1, 2, 3])
def test_hecke_quadratic_relation(skein, i):
    matrix = skein.action_matrix(i, 2, HECKE)
    identity = _identity(len(matrix))
    assert _is_zero((matrix + identity) @ (matrix - identity * V))


def test_reduction_orders_agree(kk):
    braid = SkeinReductionService(BRAID)
    for tableau in StandardTableau.all((2, 2, 2)):
        web = kk.tableau_to_web(tableau)
        for i in range(1, 6):
            if i in web.tau:
                continue
            unreduced = WebSum.single(_with_h(web, i))
            results = [braid.reduce(unreduced, order=order, seed=3) for order in ORDERS]
            results.append(braid.reduce(unreduced, order="random", seed=11))
            assert all(result == results[0] for result in results)
            assert results[0] == braid.apply_h(i, web)
            assert all(term.is_reduced for term in results[0])


def test_trace_sees_every_rewrite(skein, kk):
    unreduced = _with_h(_web(kk, "13/25/46"), 2)
    assert not unreduced.is_reduced
    seen = []
    result = skein.reduce(WebSum.single(unreduced), trace=lambda web, c: seen.append((web, c)))
    assert seen[0] == (unreduced, ONE)
    assert len(seen) > len(result)
    assert all(web in {w for w, _ in seen} for web in result)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_shared_neighbours_survive_reduction(skein, kk, n):
    for web in kk.reduced_webs(n):
        for k in range(1, 3 * n):
            if k in web.tau:
                continue
            unreduced = _with_h(web, k)
            shared = unreduced.tau
            assert k in shared
            seen = []
            result = skein.reduce(WebSum.single(unreduced), SYMMETRIC,
                                  trace=lambda term, c: seen.append(term))
            assert all(shared <= term.tau for term in seen)
            assert all(shared <= term.tau for term in result)


def test_index_and_order_checks(skein, kk):
    star = WebSum.single(_web(kk, "13/25/46"))
    with pytest.raises(PreconditionError):
        skein.apply_generator(0, star)
    with pytest.raises(PreconditionError):
        skein.apply_generator(6, star)
    with pytest.raises(PreconditionError):
        skein.reduce(star, order="sideways")

import numpy as np
import pytest

from core.errors import PreconditionError, ResourceLimitError, VerificationError
from core.kl_table import KLTable
from core.laurent import LaurentPoly
from core.permutation import Permutation
from core.tableau import StandardTableau, hook_length_count, partitions
from services.kazhdan_lusztig_service import KazhdanLusztigService
from services.kl_validation_service import KLValidationService
from services.robinson_schensted_service import RobinsonSchenstedService

V = LaurentPoly.v()
HALF = LaurentPoly.half()

NONTRIVIAL_S4 = {
    ("1234", "3412"), ("1324", "3412"), ("1234", "4231"), ("2134", "4231"),
    ("1243", "4231"), ("2143", "4231"),
}


def _perm(text):
    return Permutation.parse(text)


def test_small_tables(kl_table_3):
    assert kl_table_3.size == 6
    for w in kl_table_3.elements:
        for y in kl_table_3.elements:
            expected = 1 if y.bruhat_leq(w) else 0
            assert kl_table_3.polynomial(y, w) == expected


def test_nontrivial_polynomials_of_s4(kl_table_4):
    found = set()
    for w in kl_table_4.elements:
        for y in kl_table_4.elements:
            polynomial = kl_table_4.polynomial(y, w)
            if polynomial and polynomial != 1:
                assert polynomial == V + 1
                found.add((str(y), str(w)))
    assert found == NONTRIVIAL_S4


def test_zero_exactly_off_bruhat_order(kl_table_4):
    for w in kl_table_4.elements:
        for y in kl_table_4.elements:
            assert bool(kl_table_4.polynomial(y, w)) == y.bruhat_leq(w)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_table_matches_bar_invariance_oracle(kl_service, n):
    table = kl_service.compute_kl_table(n)
    oracle = KLValidationService().solve_by_bar_invariance(n)
    nonzero = {(y, w) for w in table.elements for y in table.elements if table.polynomial(y, w)}
    assert set(oracle) == nonzero
    for (y, w), polynomial in oracle.items():
        assert table.polynomial(y, w) == polynomial


def test_mu_matrix(kl_table_4):
    mu = kl_table_4.mu_matrix()
    assert np.array_equal(mu, mu.T)
    assert (mu >= 0).all()
    assert kl_table_4.mu(_perm("1324"), _perm("3412")) == 1
    assert kl_table_4.mu(_perm("1234"), _perm("3412")) == 0
    assert kl_table_4.mu(_perm("1234"), _perm("2134")) == 1


def test_validation_rejects_a_corrupted_table(kl_table_3):
    polynomials = [kl_table_3.poly_array(k).copy() for k in range(kl_table_3.size)]
    polynomials[-1][0, 0] = 2
    broken = KLTable(3, kl_table_3.elements, polynomials, kl_table_3.mu_matrix())
    assert KLValidationService().bar_invariance_failures(broken)
    with pytest.raises(VerificationError):
        KLValidationService().validate(broken)


def test_validation_rejects_a_degree_violation(kl_table_3):
    polynomials = [kl_table_3.poly_array(k).copy() for k in range(kl_table_3.size)]
    w_index = kl_table_3.index_of[_perm("213")]
    widened = np.zeros((kl_table_3.size, 2), dtype=np.int64)
    widened[:, :polynomials[w_index].shape[1]] = polynomials[w_index]
    widened[kl_table_3.index_of[_perm("123")], 1] = 1
    polynomials[w_index] = widened
    broken = KLTable(3, kl_table_3.elements, polynomials, kl_table_3.mu_matrix())
    assert KLValidationService().degree_bound_failures(broken)
    with pytest.raises(VerificationError):
        KLValidationService().validate(broken)


def test_resource_limits():
    with pytest.raises(ResourceLimitError):
        KazhdanLusztigService(max_n=3).compute_kl_table(4)
    with pytest.raises(ResourceLimitError):
        KazhdanLusztigService(memory_limit_mb=1).compute_kl_table(6)
    with pytest.raises(PreconditionError):
        KazhdanLusztigService().compute_kl_table(0)


def test_left_cells_of_s3(kl_service, kl_table_3):
    cells = {frozenset(str(w) for w in cell.members) for cell in kl_service.left_cells(kl_table_3)}
    assert cells == {
        frozenset({"123"}), frozenset({"213", "312"}), frozenset({"132", "231"}), frozenset({"321"})
    }


@pytest.mark.parametrize("n", [3, 4])
def test_left_cells_are_recording_tableau_fibres(kl_service, kl_table_3, kl_table_4, n):
    table = kl_table_3 if n == 3 else kl_table_4
    rs = RobinsonSchenstedService()
    cells = kl_service.left_cells(table)
    assert len(cells) == sum(hook_length_count(shape) for shape in partitions(n))
    for cell in cells:
        assert {rs.rs(w)[1] for w in cell.members} == {cell.right_tableau}
        assert len(cell) == hook_length_count(cell.right_tableau.shape)


def test_right_cells_are_inverse_left_cells(kl_service, kl_table_3):
    rs = RobinsonSchenstedService()
    for cell in kl_service.right_cells(kl_table_3):
        assert {rs.rs(w)[0] for w in cell.members} == {cell.right_tableau}


def test_action_on_the_cell_of_213(kl_service, kl_table_3):
    w = _perm("213")
    cell = kl_service.cell_of(kl_table_3, w)
    assert cell.right_tableau == StandardTableau.parse("13/2")
    assert kl_service.ts_action_on_cell(kl_table_3, cell, 2, w) == {w: V, _perm("312"): HALF}
    assert kl_service.ts_action_on_cell(kl_table_3, cell, 1, w) == {w: LaurentPoly.constant(-1)}
    with pytest.raises(PreconditionError):
        kl_service.ts_action_on_cell(kl_table_3, cell, 1, _perm("132"))
    with pytest.raises(PreconditionError):
        kl_service.ts_action_on_cell(kl_table_3, cell, 3, w)


def test_cell_tau_is_the_descent_set(kl_service, kl_table_4):
    for cell in kl_service.left_cells(kl_table_4):
        for w in cell.members:
            assert kl_service.cell_tau(kl_table_4, cell, w) == w.tau


def test_kl_exchange_matches_f_sn(kl_service, kl_table_4):
    for cell in kl_service.left_cells(kl_table_4):
        for w in cell.members:
            for i in range(1, 4):
                for j in (i - 1, i + 1):
                    if 1 <= j <= 3 and i in w.tau and j not in w.tau:
                        assert kl_service.f_kl(kl_table_4, cell, i, j, w) == w.f_sn(i, j)


@pytest.fixture(scope="module")
def kl_table_5(kl_service) -> KLTable:
    return kl_service.compute_kl_table(5)


def _assert_exchange_edges(kl_service, table):
    cells = kl_service.left_cells(table)
    cell_index = {w: k for k, cell in enumerate(cells) for w in cell.members}
    checked = 0
    for x in table.elements:
        for i in range(1, table.n):
            for j in (i - 1, i + 1):
                if not 1 <= j <= table.n - 1 or i not in x.tau or j in x.tau:
                    continue
                y = x.f_sn(i, j)
                assert table.mu(x, y) == 1
                assert cell_index[x] == cell_index[y]
                assert kl_service.exchange_partners(table, x, i, j) == [y]
                checked += 1
    assert checked


@pytest.mark.parametrize("n", [3, 4, 5])
def test_exchange_is_the_only_mu_edge_into_the_target(request, kl_service, n):
    _assert_exchange_edges(kl_service, request.getfixturevalue(f"kl_table_{n}"))


@pytest.mark.slow
def test_exchange_edges_in_s6(kl_service):
    _assert_exchange_edges(kl_service, kl_service.compute_kl_table(6))


def test_exchange_partner_preconditions(kl_service, kl_table_3):
    with pytest.raises(PreconditionError):
        kl_service.exchange_partners(kl_table_3, _perm("213"), 2, 1)
    with pytest.raises(PreconditionError):
        kl_service.exchange_partners(kl_table_3, _perm("213"), 1, 3)


def test_cell_of_reuses_the_recording_fibres(kl_service, kl_table_4, monkeypatch):
    w = _perm("2143")
    first = kl_service.cell_of(kl_table_4, w)
    assert kl_table_4.q_fibers is not None
    calls = []
    insert = RobinsonSchenstedService.rs
    monkeypatch.setattr(RobinsonSchenstedService, "rs",
                        lambda self, x: calls.append(x) or insert(self, x))
    assert kl_service.cell_of(kl_table_4, w) == first
    assert calls == [w]
    assert first in kl_service.left_cells(kl_table_4)
    assert calls == [w]
    with pytest.raises(PreconditionError):
        kl_service.cell_of(kl_table_4, _perm("213"))


def test_f_kl_preconditions(kl_service, kl_table_3):
    w = _perm("213")
    cell = kl_service.cell_of(kl_table_3, w)
    with pytest.raises(PreconditionError):
        kl_service.f_kl(kl_table_3, cell, 2, 1, w)
    with pytest.raises(PreconditionError):
        kl_service.f_kl(kl_table_3, cell, 1, 3, w)


def test_cell_action_matrices_give_a_representation(kl_service, kl_table_4):
    for cell in kl_service.left_cells(kl_table_4):
        matrices = kl_service.action_matrices(kl_table_4, cell)
        identity = np.eye(len(cell), dtype=np.int64)
        for i, matrix in matrices.items():
            assert np.array_equal(matrix @ matrix, identity)
            if i + 1 in matrices:
                other = matrices[i + 1]
                assert np.array_equal(matrix @ other @ matrix, other @ matrix @ other)


@pytest.mark.slow
def test_s6_cells(kl_service):
    table = kl_service.compute_kl_table(6)
    cells = kl_service.left_cells(table)
    assert len(cells) == 76
    assert max(len(cell) for cell in cells) == 16

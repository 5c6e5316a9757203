import pytest

from core.errors import PreconditionError
from core.hecke import HeckeElement, hecke_mul_generator, kl_basis_element
from core.laurent import LaurentPoly
from core.permutation import Permutation

V = LaurentPoly.v()
HALF = LaurentPoly.half()


@pytest.mark.parametrize("i", [1, 2, 3])
def test_quadratic_relation(i):
    t = HeckeElement.generator(i, 4)
    one = HeckeElement.identity(4)
    assert t * t == t.scale(V - 1) + one.scale(V)
    assert t * HeckeElement.inverse_generator(i, 4) == one
    assert HeckeElement.inverse_generator(i, 4) * t == one


def test_braid_relation():
    t1, t2 = HeckeElement.generator(1, 3), HeckeElement.generator(2, 3)
    assert t1 * t2 * t1 == t2 * t1 * t2
    assert t1 * t2 * t1 == HeckeElement.basis(Permutation.longest(3))


def test_left_and_right_multiplication_agree_with_products():
    w = Permutation.parse("2413")
    t_w = HeckeElement.basis(w)
    for i in (1, 2, 3):
        t = HeckeElement.generator(i, 4)
        assert t_w.left_mul_generator(i) == t * t_w
        assert t_w.right_mul_generator(i) == t_w * t


def test_bar_is_an_involution():
    h = HeckeElement(3, {Permutation.parse("231"): V + 2, Permutation.parse("213"): HALF})
    assert h.bar().bar() == h
    assert HeckeElement.generator(1, 3).bar() == HeckeElement.inverse_generator(1, 3)


def test_size_mismatch():
    with pytest.raises(PreconditionError):
        HeckeElement(3, {Permutation.parse("1234"): 1})


def test_kl_basis_elements_are_bar_invariant(kl_table_4):
    for w in kl_table_4.elements:
        c_w = kl_basis_element(kl_table_4, w)
        assert c_w.bar() == c_w


def test_generators_in_tau_act_by_minus_one(kl_table_3):
    for w in kl_table_3.elements:
        c_w = kl_basis_element(kl_table_3, w)
        for i in w.tau:
            assert HeckeElement.generator(i, 3) * c_w == c_w.scale(-1)


def test_generator_action_on_213(kl_table_3):
    c_213 = kl_basis_element(kl_table_3, Permutation.parse("213"))
    c_312 = kl_basis_element(kl_table_3, Permutation.parse("312"))
    expected = c_213.scale(V) + c_312.scale(HALF)
    assert HeckeElement.generator(2, 3) * c_213 == expected


def test_simple_kl_basis_element(kl_table_3):
    c_s = kl_basis_element(kl_table_3, Permutation.simple(1, 3))
    expected = HeckeElement(3, {
        Permutation.simple(1, 3): LaurentPoly.monomial(-1),
        Permutation.identity(3): -HALF,
    })
    assert c_s == expected


def test_mul_generator_on_kl_basis(kl_table_3):
    c_w0 = kl_basis_element(kl_table_3, Permutation.longest(3))
    for i in (1, 2):
        assert hecke_mul_generator(c_w0, i) == c_w0.scale(-1)
    c_e = kl_basis_element(kl_table_3, Permutation.identity(3))
    assert hecke_mul_generator(c_e, 1) == HeckeElement.generator(1, 3)

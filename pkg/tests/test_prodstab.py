from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from e3stab.cohomology import CohomClass, cycle_class, integrate, wedge
from e3stab.exact import I, cq
from e3stab.lattice import LatticeVec, class_of, exp_divisor
from e3stab.mirror import central_charge, charge_vector
from e3stab.prodstab import (
    abcd, coefficient_relations, exp_expansion, exp_pairing, fiber_divisor, gcharge_vector,
    injectivity_rank, poincare_coeff_relations_check, product_charge, project_v,
    project_v_finite_difference, reduced_charge, surface_divisor,
)
from e3stab.support import CoeffVars, Y

O = LatticeVec.basis
BASIS = [O(k) for k in range(14)]
E2 = lambda name: LatticeVec.basis(name, "E2")
Z5 = LatticeVec.zero("E2")
int_vecs = st.lists(st.integers(-4, 4), min_size=14, max_size=14).map(lambda c: LatticeVec("E3", tuple(c)))


def test_project_v_examples():
    assert project_v(O("O_0")) == (Z5, E2("O_0"))
    assert project_v(O("O_X")) == (E2("O_S"), Z5)
    assert project_v(O("O_D3")) == (Z5, E2("O_S"))


@pytest.mark.parametrize("k", [3, 4, 5])
def test_project_v_finite_difference(k):
    for v in BASIS:
        assert project_v_finite_difference(v, k) == project_v(v)


def test_abcd_examples():
    assert abcd(O("O_0"), 1, 1).as_tuple() == tuple(map(cq, (0, 1, 0, 0)))
    assert abcd(O("O_X"), 1, 1).as_tuple() == tuple(map(cq, (-1, 0, 0, 0)))


def test_phi_relations_on_every_basis_vector():
    for v in BASIS:
        e, f = abcd(v, 1), abcd(v, 4)
        assert (f.a, f.b, f.c, f.d) == (-e.b, e.a, -e.d, e.c)
    assert poincare_coeff_relations_check() == 0


@pytest.mark.parametrize("name", ["O_D1", "O_Delta12"])
def test_poincare_relations_examples(name):
    assert poincare_coeff_relations_check([O(name)]) == 0


@settings(max_examples=20, deadline=None)
@given(int_vecs)
def test_poincare_relations_linear(v):
    assert poincare_coeff_relations_check([v]) == 0


# --- product charge -------------------------------------------------------------

def test_product_charge_of_point():
    assert product_charge(O("O_0"), 1, 1, 0) == cq(1)


def test_product_charge_is_exponential_pairing():
    W = exp_divisor((1, 1, 1))
    for v in BASIS:
        assert product_charge(v, 1, 1, 0) == central_charge(W, v)


@pytest.mark.parametrize("alpha", [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)])
@pytest.mark.parametrize("t", [Fraction(1), Fraction(1, 2)])
def test_gcharge_identity(alpha, t):
    W = exp_divisor((1, 1, 1), t) + exp_divisor((-1, -1, 1), t).scale(cq(alpha))
    assert W == gcharge_vector(alpha, t)
    for v in BASIS:
        assert product_charge(v, t, t, alpha) == central_charge(W, v)


def test_product_charge_domain():
    with pytest.raises(ValueError):
        product_charge(O("O_0"), 0, 1)
    with pytest.raises(ValueError):
        product_charge(O("O_0"), 1, 1, 1)


# --- the reduced charge ------------------------------------------------------------

def test_reduced_charge_at_origin():
    for v in BASIS:
        assert reduced_charge(v, 0, 0, 0) == product_charge(v, 1, 1, 0)


@pytest.mark.parametrize("params", [(Fraction(1, 10), Fraction(1, 5), Fraction(3, 10)),
                                    (Fraction(0), Fraction(1, 2), Fraction(1, 7)),
                                    (Fraction(1, 3), Fraction(1, 3), Fraction(1, 4))])
def test_reduced_charge_matches_mirror_charge(params):
    W = charge_vector(*params)
    for v in BASIS:
        assert reduced_charge(v, *params) == central_charge(W, v)


def test_coefficient_cross_relations():
    for v in BASIS:
        s, d = coefficient_relations(v)
        assert len(s) == 1 and len(d) == 1


@settings(max_examples=20, deadline=None)
@given(int_vecs, st.fractions(0, Fraction(1, 3)), st.fractions(0, Fraction(1, 3)), st.fractions(0, Fraction(1, 3)))
def test_y_function_is_the_charge(v, al, be, ga):
    re, im = Y(CoeffVars.of_vector(v), cq(al), cq(be), cq(ga))
    assert re + I * im == central_charge(charge_vector(al, be, ga), v)


# --- injectivity ----------------------------------------------------------------------

def test_injectivity_ranks():
    assert injectivity_rank() == 14
    assert injectivity_rank((1, 2, 3)) < 14
    assert injectivity_rank((1,)) == 5


# --- exponential expansion -------------------------------------------------------------

@pytest.mark.parametrize("t", [Fraction(1), Fraction(2), Fraction(1, 2)])
@pytest.mark.parametrize("which", ["D", "D+H"])
def test_exp_expansion(t, which):
    F = CohomClass("E3", dict(surface_divisor().items()))  # pullback of D to E3
    if which == "D+H":
        F = F + fiber_divisor()
    for v in BASIS:
        ch = class_of(v)
        assert exp_expansion(F, ch, t) == exp_pairing(F, ch, t)


def test_surface_charge_of_point_and_fundamental_class():
    # <exp(iD), [pt]> = 1 and <exp(iD), 1> = int (iD)^2 / 2 = -D1 D2 = -1 on S
    e2 = cycle_class("Point", "E2")
    assert exp_pairing(surface_divisor(), e2, 1) == cq(1)
    assert exp_pairing(surface_divisor(), CohomClass.one("E2"), 1) == cq(-1)
    assert integrate(wedge(cycle_class("D1", "E2"), cycle_class("D2", "E2"))) == cq(1)

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from e3stab import exact as ex
from e3stab.exact import cq
from e3stab.lattice import LatticeVec, euler_pairing, exp_divisor
from e3stab.support import (
    CoeffVars, QuadForm, abstract_P, blocks, case1_difference_formula, case2_minors, case3_minors,
    case_parameters, charge_row, combined_Q, computed_minors, cone_grid, difference_form, eta_bound,
    kernel_basis, kernel_definiteness, lattice_Q, P_value, primed_weights, restricted_definiteness,
    solve_ST, support_check, surface_form, surface_kernel_eigenvalues, surface_Q,
    surface_support_constant, vanishing_check, verify_linalg_grid,
)

S = lambda name: LatticeVec.basis(name, "E2")
fracs = st.fractions(Fraction(1, 50), Fraction(3, 10), max_denominator=50)


def unit(k, n=14):
    e = np.zeros(n)
    e[k] = 1
    return e


# --- the surface --------------------------------------------------------------------

def test_surface_Q_examples():
    assert surface_Q(S("O_0")) == cq(0)
    assert surface_Q(S("O_S") + S("O_0")) == cq(-2)
    with pytest.raises(ValueError):
        surface_Q(LatticeVec.basis("O_0"))


def test_surface_form_matches_pairing():
    G = surface_form()
    for k in range(5):
        assert G(unit(k, 5)) == pytest.approx(float(ex.re_part(surface_Q(LatticeVec.basis(k, "E2")))))


def test_surface_constant():
    c = surface_support_constant()
    assert c.value == Fraction(1, 2)
    assert c.schur == [[Fraction(1, 2), 0], [0, Fraction(1, 2)]]
    assert c.kernel_max < 0


def test_surface_kernel_eigenvalues():
    assert np.allclose(surface_kernel_eigenvalues(), [-1, -1, -2 / 3], atol=1e-12)


def test_surface_constant_is_attained():
    # random integer classes never beat 1/2 and come arbitrarily close
    g = lambda v: ex.to_complex(euler_pairing(exp_divisor((1, 1), 1, "E2"), v))
    rng = np.random.default_rng(0)
    best = -np.inf
    for _ in range(2000):
        v = LatticeVec("E2", tuple(int(x) for x in rng.integers(-4, 5, 5)))
        if abs(g(v)) > 1e-12:
            best = max(best, float(ex.re_part(surface_Q(v))) / abs(g(v)) ** 2)
    assert best <= 0.5 + 1e-12
    assert best == pytest.approx(0.5)


# --- forms on the lattice -------------------------------------------------------------

@pytest.mark.parametrize("i", range(1, 7))
def test_lattice_Q_vanishes_on_point_and_structure_sheaf(i):
    q = lattice_Q(i, Fraction(1, 4))
    assert q.exact
    for name in ("O_0", "O_X"):
        k = next(j for j in range(14) if LatticeVec.basis(j) == LatticeVec.basis(name))
        assert q(unit(k)) == 0


def test_lattice_Q_domain():
    with pytest.raises(ValueError):
        lattice_Q(7, 1)
    with pytest.raises(ValueError):
        lattice_Q(1, 0)


def test_combined_Q_is_weighted_sum():
    eta = [Fraction(1, 8)] * 6
    w = (Fraction(1, 5), Fraction(1, 4), Fraction(1, 3))
    Q = combined_Q(*w, eta)
    want = sum((lattice_Q(i, eta[0]).gram * w[(i - 1) % 3] for i in range(1, 7)), np.zeros((14, 14), dtype=object))
    assert np.all(Q.gram == want)
    with pytest.raises(ValueError):
        combined_Q(0, 1, 1, eta)


def test_eta_bound():
    assert eta_bound(0.2) == pytest.approx(0.4)


def test_kernel_basis():
    Z = charge_row(0, 0, 0)
    K = kernel_basis(Z)
    assert K.shape == (14, 12)
    assert np.max(np.abs(Z @ K)) < 1e-12
    with pytest.raises(ValueError):
        kernel_basis(np.zeros(14))
    with pytest.raises(ValueError):
        kernel_basis(np.ones(13))


def test_restricted_definiteness_needs_orthonormal_basis():
    with pytest.raises(ValueError):
        restricted_definiteness(np.eye(14), 2 * np.eye(14)[:, :12])
    top, neg = restricted_definiteness(-np.eye(14), np.eye(14)[:, :12])
    assert top == -1 and neg


# --- abstract coefficient forms ---------------------------------------------------------

def test_coeff_vars_relations():
    v = CoeffVars((1, 2, 3), (4, 5, 6), 10, -1)
    assert v.c == (6, 5, 4) and v.d == (0, 1, 2)
    assert v.full(4) == (-4, 1, -0, 6)
    assert CoeffVars.from_coeffs(v.a, v.b, v.c, v.d) == v
    with pytest.raises(ValueError):
        CoeffVars.from_coeffs((1, 2, 3), (4, 5, 6), (6, 5, 5), (0, 1, 2))
    assert CoeffVars.from_coeffs((1, 2, 3), (4, 5, 6), (6, 5, 4 + 1e-12), (0, 1, 2), tol=1e-9).S == 10


def test_abstract_P_diagonal_at_lambda_zero():
    # at lambda = 0, S = T = 0 and every variable gets w (2C - 2)
    w = Fraction(1, 5)
    for C in (Fraction(3, 10), Fraction(1, 5)):
        G = abstract_P(w, w, w, C, 0).gram
        assert np.all(G == np.diag([w * (2 * C - 2)] * 6))
    assert abstract_P(w, w, w, Fraction(3, 10), 0).gram[0, 0] == Fraction(-7, 25)


@settings(max_examples=30, deadline=None)
@given(fracs, fracs, fracs, fracs, st.fractions(0, 1, max_denominator=20),
       st.lists(st.integers(-5, 5), min_size=6, max_size=6))
def test_P_value_agrees_with_abstract_P(al, be, ga, C, lam, x):
    a, b = [Fraction(t) for t in x[:3]], [Fraction(t) for t in x[3:]]
    Sv, Tv = solve_ST(np.array(a, dtype=object), np.array(b, dtype=object), (al, be, ga), lam)
    v = CoeffVars(tuple(a), tuple(b), Sv, Tv)
    direct = P_value(v, (al, be, ga), C)
    Q = abstract_P(al, be, ga, C, lam)
    assert Q(np.array(a + b, dtype=object)) == direct


@settings(max_examples=30, deadline=None)
@given(fracs, fracs, fracs, st.fractions(0, 1, max_denominator=20),
       st.lists(st.integers(-5, 5), min_size=6, max_size=6))
def test_solve_ST_lands_in_kernel(al, be, ga, lam, x):
    from e3stab.support import Y
    a, b = tuple(map(Fraction, x[:3])), tuple(map(Fraction, x[3:]))
    v = CoeffVars(a, b, *solve_ST(a, b, (al, be, ga), lam))
    assert Y(v, lam * al, lam * be, lam * ga) == (0, 0)


def test_blocks_split():
    Q = abstract_P(0.2, 0.2, 0.2, 0.2, 0.5)
    A, B = blocks(Q)
    assert A.shape == B.shape == (3, 3)
    with pytest.raises(ValueError):
        blocks(QuadForm("Coeff12", np.ones((6, 6))))


def test_abstract_P_rejects_nonpositive_C():
    with pytest.raises(ValueError):
        abstract_P(0.2, 0.2, 0.2, 0, 0)


# --- primed weights and the closed-form minors -----------------------------------------------

def test_primed_weights():
    assert primed_weights([0.1, 0.2, 0.3]) == [0.1, 0.2, 0.3]
    assert primed_weights([0.3, 0.3, 0]) == pytest.approx([0.3, 0.3, 0.4 / 3])
    assert primed_weights([0.2, 0, 0]) == pytest.approx([0.2, 0.2, 0.2])
    y, w, C = case_parameters(3, (0.2,))
    assert y == [0.2, 0, 0] and C == pytest.approx(0.2)
    with pytest.raises(ValueError):
        case_parameters(2, (0.2, 0))


def test_case1_formula_against_difference_form():
    rng = np.random.default_rng(0)
    for _ in range(10):
        al, be, ga = rng.uniform(0.02, 0.3, 3)
        C, lam = rng.uniform(0.01, 1 - al - be - ga), rng.uniform(0.05, 1)
        D = difference_form((al, be, ga), (0, 0, 0), C, lam)
        x = rng.standard_normal(3)
        want = case1_difference_formula(al, be, ga, C, lam, x)
        assert D(np.r_[x, 0, 0, 0]) == pytest.approx(want, rel=1e-9)
        assert D(np.r_[0, 0, 0, x]) == pytest.approx(want, rel=1e-9)


@pytest.mark.parametrize("block", ["a", "b"])
def test_case2_minors(block):
    p = (Fraction(1, 5), Fraction(1, 10), Fraction(1, 4))
    C, lam = Fraction(1, 10), Fraction(1, 2)
    got = computed_minors(2, p, C, lam, block)
    assert tuple(got) == case2_minors(*p, C, lam)


@pytest.mark.parametrize("block", ["a", "b"])
def test_case3_minors(block):
    p = (Fraction(1, 5), Fraction(1, 6), Fraction(1, 7))
    C, lam = Fraction(1, 10), Fraction(2, 3)
    got = computed_minors(3, p, C, lam, block)
    assert tuple(got) == case3_minors(*p, C, lam)


def test_computed_minors_case_guard():
    with pytest.raises(ValueError):
        computed_minors(1, (0.1, 0.1, 0.1), 0.1, 0.5)
    with pytest.raises(ValueError):
        computed_minors(4, (0.1, 0.1, 0.1), 0.1, 0.5)


# --- grids ---------------------------------------------------------------------------

def test_case1_grid():
    rep = verify_linalg_grid(1, cone_grid([0.05, 0.1, 0.15, 0.2, 0.25, 0.3]))
    assert rep.points == 2376 and rep.ok and rep.worst_margin < 0


def test_case2_grid():
    rep = verify_linalg_grid(2, [(a, b) for a in (0.1, 0.3, 0.5) for b in (0.1, 0.2, 0.3)])
    assert rep.points == 99 and rep.ok


def test_case3_grid():
    rep = verify_linalg_grid(3, [(a,) for a in (0.1, 0.3, 0.5, 0.7)])
    assert rep.points == 44 and rep.ok
    assert rep.to_json()["ok"]


def test_cone_grid():
    vals = [Fraction(1, 5), Fraction(2, 5)]
    assert len(cone_grid(vals, 3)) == 4
    assert len(cone_grid(vals, 3, strict=False)) == 7
    assert (vals[1], vals[1], vals[0]) in cone_grid(vals, 3, strict=False)
    assert (vals[1], vals[1], vals[0]) not in cone_grid(vals, 3)


def test_kernel_definiteness_example():
    top, neg = kernel_definiteness((0.2, 0.2, 0.2), 0.5)
    assert neg and top < 0


# --- the combined verdict --------------------------------------------------------------

@pytest.mark.parametrize("params", [(0.2, 0.2, 0.2), (0.3, 0, 0), (0.1, 0.2, 0), (0, 0, 0)])
def test_support_check_negative(params):
    res = support_check(*params)
    assert res.verdict == "negative-definite"
    assert res.worst_margin < 0 and len(res.grid) == 11
    assert res.to_json()["surface_constant"] == "1/2"


def test_support_check_violated_with_large_C():
    assert support_check(0.2, 0.2, 0.2, C=0.9).verdict == "violated"


def test_support_check_domain():
    with pytest.raises(ValueError):
        support_check(0.5, 0.5, 0.1)
    with pytest.raises(ValueError):
        support_check(-0.1, 0.2, 0.2)


def test_vanishing_check():
    assert vanishing_check(LatticeVec.zero())
    for k in range(14):
        assert not vanishing_check(LatticeVec.basis(k))


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=14, max_size=14))
def test_vanishing_only_at_zero(c):
    v = LatticeVec("E3", tuple(c))
    assert vanishing_check(v) == (not any(c))


def test_quadform_json_and_guards():
    Q = lattice_Q(2, Fraction(1, 3))
    data = Q.to_json()
    assert data["exact"] and data["space"] == "Lattice14" and len(data["gram"]) == 14
    assert data["params"]["eta"] == "1/3"
    with pytest.raises(ValueError):
        QuadForm("Surface5", np.eye(4))
    with pytest.raises(ValueError):
        QuadForm("Coeff12", np.triu(np.ones((6, 6))))
    assert np.allclose(Q.hessian(), 2 * Q.numeric())

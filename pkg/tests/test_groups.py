from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from e3stab.groups import (
    IDENTITY, J6, Factor, GeneratorWord, GroupElement, H_mat, N_mat, act, exact_symplectic, exp_p,
    is_symplectic, nhj_decompose, p_basis, random_group_element, random_unitary, rationalize,
    rotation, unitary_to_sp,
)
from e3stab.trilinear import FORM14_NAMES, ThreeForm, from_form14, primitivity_residual
from e3stab.verification import random_symplectic

DZ123 = ThreeForm.monomial("z1", "z2", "z3")
seeds = st.integers(0, 2**32 - 1)


def rand_primitive(rng):
    vals = rng.standard_normal(14) + 1j * rng.standard_normal(14)
    return from_form14(**dict(zip(FORM14_NAMES, vals)))


# --- group elements and the action --------------------------------------------------

def test_invalid_elements_rejected():
    with pytest.raises(ValueError):
        GroupElement(np.diag([2.0, 1, 1, 1, 1, 1]))
    with pytest.raises(ValueError):
        GroupElement(np.eye(6), np.diag([1.0, -1.0]))


def test_identity_action():
    om = rand_primitive(np.random.default_rng(0))
    assert act(IDENTITY, om).allclose(om, 0)


def test_rotation_of_values():
    th = 0.9
    assert act(GroupElement(np.eye(6), rotation(th)), DZ123).allclose(np.exp(1j * th) * DZ123, 1e-14)


def test_unitary_phase_sign_convention():
    # left action: (g.Omega)(v) = Omega(g^-1 v), so dz1 picks up e^{-i phi}
    phi = 0.7
    g = GroupElement(unitary_to_sp(np.diag([np.exp(1j * phi), 1, 1])))
    assert act(g, DZ123).allclose(np.exp(-1j * phi) * DZ123, 1e-14)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_composition_law(seed):
    rng = np.random.default_rng(seed)
    g, h = random_group_element(rng), random_group_element(rng)
    om = rand_primitive(rng)
    assert act(g @ h, om).allclose(act(g, act(h, om)), 1e-10 * om.norm())


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_action_preserves_primitivity(seed):
    rng = np.random.default_rng(seed)
    om = act(random_group_element(rng), rand_primitive(rng))
    assert primitivity_residual(om) < 1e-9 * om.norm()


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_compact_part_preserves_norm(seed):
    rng = np.random.default_rng(seed)
    g = GroupElement(unitary_to_sp(random_unitary(rng)), rotation(rng.uniform(0, 2 * np.pi)))
    om = ThreeForm(rng.standard_normal(20) + 1j * rng.standard_normal(20))
    assert act(g, om).norm() == pytest.approx(om.norm(), rel=1e-10)


def test_p_basis_is_symmetric():
    basis = p_basis()
    assert len(basis) == 14
    for A, B in basis:
        assert np.array_equal(A, A.T) and np.array_equal(B, B.T)
        assert is_symplectic(expm(0.3 * A))
    assert np.linalg.matrix_rank(np.array([np.r_[A.ravel(), B.ravel()] for A, B in basis])) == 14


# --- generator words ----------------------------------------------------------------

def test_decompose_j():
    w = nhj_decompose(J6)
    assert [f.kind for f in w.factors] == ["J"]


def test_decompose_h():
    w = nhj_decompose(H_mat(np.diag([2.0, 1, 1])))
    assert [f.kind for f in w.factors] == ["H"]
    assert np.allclose(w.factors[0].A, np.diag([2.0, 1, 1]))


def test_decompose_exp_of_p_direction():
    rng = np.random.default_rng(1)
    for _ in range(20):
        g = exp_p(0.5 * rng.standard_normal(14)).sp
        assert np.linalg.norm(nhj_decompose(g).matrix() - g) < 1e-12


def test_decompose_random_symplectic():
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(1000):
        g = random_symplectic(rng)
        worst = max(worst, np.linalg.norm(nhj_decompose(g).matrix() - g) / np.linalg.norm(g))
    assert worst < 1e-10


def test_singular_pivot_is_regularized():
    g = N_mat(np.diag([1.0, 0, 0])) @ J6 @ H_mat(np.diag([1.0, 2.0, 0.5]))
    assert abs(np.linalg.det(g[:3, :3])) < 1e-12
    assert np.allclose(nhj_decompose(g).matrix(), g, atol=1e-12)


def test_decompose_rejects_non_symplectic():
    with pytest.raises(ValueError):
        nhj_decompose(np.diag([2.0, 1, 1, 1, 1, 1]))


def test_every_factor_is_symplectic():
    rng = np.random.default_rng(3)
    w = nhj_decompose(random_symplectic(rng))
    for f in w.factors:
        assert is_symplectic(f.matrix())


# --- rationalization ----------------------------------------------------------------

def test_rationalize_rational_input_is_exact():
    g = N_mat([[Fraction(1, 2), 0, 1], [0, 3, 0], [1, 0, -1]]) @ J6 @ H_mat(np.diag([2.0, 0.5, 1.0]))
    w = rationalize(g, 1e-1)
    assert w.rational
    assert np.array_equal(np.array(w.exact_matrix(), dtype=float), g)


@pytest.mark.parametrize("seed", range(5))
def test_rationalize_random(seed):
    g = random_symplectic(np.random.default_rng(seed))
    w = rationalize(g, 1e-6)
    G = w.exact_matrix()
    assert exact_symplectic(G)
    assert np.linalg.norm(np.array(G, dtype=float) - g) <= 1e-6


def test_rationalize_slightly_rotated_j():
    th = 1e-2
    R = np.array([[np.cos(th), -np.sin(th), 0], [np.sin(th), np.cos(th), 0], [0, 0, 1]])
    g = J6 @ H_mat(R)
    w = rationalize(g, 1e-3)
    assert len(w) <= 3
    G = w.exact_matrix()
    assert exact_symplectic(G)
    assert np.linalg.norm(np.array(G, dtype=float) - g) <= 1e-3


def test_word_json_round_trip():
    w = rationalize(random_symplectic(np.random.default_rng(4)), 1e-4)
    back = GeneratorWord.from_json(w.to_json())
    assert back.rational and back.exact_matrix() == w.exact_matrix()
    assert Factor.from_json({"kind": "J"}).kind == "J"


@settings(max_examples=20, deadline=None)
@given(st.lists(st.tuples(st.sampled_from("NHJ"), st.lists(st.integers(-3, 3), min_size=9, max_size=9)),
                min_size=1, max_size=4))
def test_rational_words_are_exactly_symplectic(word):
    factors = []
    for kind, xs in word:
        if kind == "J":
            factors.append(Factor("J"))
            continue
        A = [[Fraction(xs[3 * i + j]) for j in range(3)] for i in range(3)]
        if kind == "N":
            A = [[A[min(i, j)][max(i, j)] for j in range(3)] for i in range(3)]
        else:
            A = [[A[i][j] + (7 if i == j else 0) for j in range(3)] for i in range(3)]  # diagonally dominant
        factors.append(Factor(kind, A))
    assert exact_symplectic(GeneratorWord(tuple(factors), rational=True).exact_matrix())

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from e3stab.groups import random_unitaries, random_unitary
from e3stab.trilinear import (
    FORM14_NAMES, MONOMIALS, ThreeForm, Trivector, X_FRAME, evaluate, evaluate_frames, form8,
    form14_coeffs, from_form14, lagrangian_cubic, normal_form, primitive_projection,
    primitivity_residual, type_split,
)

DZ123 = ThreeForm.monomial("z1", "z2", "z3")
seeds = st.integers(0, 2**32 - 1)


def rand_form(rng):
    return ThreeForm(rng.standard_normal(20) + 1j * rng.standard_normal(20))


def rand_primitive(rng):
    vals = rng.standard_normal(14) + 1j * rng.standard_normal(14)
    return from_form14(**dict(zip(FORM14_NAMES, vals)))


def unframed(t: Trivector) -> Trivector:
    return Trivector(t.coeffs)


# --- evaluate ----------------------------------------------------------------------

def test_evaluate_coordinate_examples():
    assert evaluate(DZ123, Trivector.coordinate("x1", "x2", "x3")) == pytest.approx(1)
    assert evaluate(DZ123, Trivector.coordinate("y1", "x2", "x3")) == pytest.approx(1j)


def test_frame_and_coefficient_routes_agree():
    rng = np.random.default_rng(3)
    for _ in range(20):
        om = rand_form(rng)
        t = Trivector.from_frame(random_unitary(rng))
        assert evaluate(om, t) == pytest.approx(evaluate(om, unframed(t)), abs=1e-12)


def test_hadamard_bound_on_unitary_frames():
    rng = np.random.default_rng(0)
    gam = (0.1, 0.2, 0.3)
    vals = np.abs(evaluate_frames(normal_form(gam), random_unitaries(rng, 2000)))
    assert vals.min() >= 1 - sum(gam) - 1e-12


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_evaluate_linearity(seed):
    rng = np.random.default_rng(seed)
    a, b = rand_form(rng), rand_form(rng)
    c = complex(*rng.standard_normal(2))
    s, r = rng.standard_normal(2)
    t1 = Trivector.from_frame(random_unitary(rng))
    t2 = Trivector.from_frame(random_unitary(rng))
    assert evaluate(a * c + b, t1) == pytest.approx(c * evaluate(a, t1) + evaluate(b, t1), abs=1e-12)
    mix = Trivector(s * t1.coeffs + r * t2.coeffs)
    assert evaluate(a, mix) == pytest.approx(s * evaluate(a, unframed(t1)) + r * evaluate(a, unframed(t2)), abs=1e-12)


# --- types -------------------------------------------------------------------------

def test_type_split_of_dz123():
    parts = type_split(DZ123)
    assert parts[0].allclose(DZ123)
    assert all(p.norm() == 0 for p in parts[1:])


def test_type_split_of_form8():
    om = form8(0.7, (0.1, 0.2, 0.3), (0.4, 0.5, 0.6), 0.8)
    p30, p21, p12, p03 = type_split(om)
    assert p30.allclose(form8(0.7))
    assert p21.allclose(form8(0, beta=(0.1, 0.2, 0.3)))
    assert p12.allclose(form8(0, gamma=(0.4, 0.5, 0.6)))
    assert p03.allclose(form8(0, delta=0.8))


def test_conjugation_swaps_types():
    om = rand_form(np.random.default_rng(1))
    assert type_split(om.conjugate())[0].allclose(type_split(om)[3].conjugate(), 1e-14)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_type_parts_reassemble_and_are_orthogonal(seed):
    om = rand_form(np.random.default_rng(seed))
    parts = type_split(om)
    assert sum(parts, ThreeForm.zero()).allclose(om, 1e-14)
    for i in range(4):
        for j in range(i + 1, 4):
            assert abs(parts[i].inner(parts[j])) < 1e-12


# --- primitivity ---------------------------------------------------------------------

def test_primitivity_examples():
    assert primitivity_residual(DZ123) == 0
    # (dz1 dzbar1 dz2) ^ (i/2) dz3 dzbar3 is the only surviving term
    assert primitivity_residual(ThreeForm.monomial("z1", "zbar1", "z2")) == pytest.approx(0.5)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_form14_combinations_are_primitive(seed):
    assert primitivity_residual(rand_primitive(np.random.default_rng(seed))) < 1e-12


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_projection_coefficients_reassemble(seed):
    P = primitive_projection(rand_form(np.random.default_rng(seed)))
    assert primitivity_residual(P) < 1e-12
    assert from_form14(**form14_coeffs(P)).allclose(P, 1e-12)


def test_primitive_subspace_has_dimension_14():
    rng = np.random.default_rng(2)
    M = np.array([primitive_projection(rand_form(rng)).coeffs for _ in range(30)])
    assert np.linalg.matrix_rank(M, tol=1e-9) == 14


# --- lagrangian cubic ----------------------------------------------------------------

def test_cubic_of_form8_on_reference():
    al, be, ga, de = 0.9, (0.1, 0.2, 0.05), (0.3, 0.1, 0.2), 0.4
    w = Trivector.from_frame(X_FRAME)
    got = lagrangian_cubic(form8(al, be, ga, de), w)
    assert np.allclose(got, [al, sum(be), sum(ga), de], atol=1e-14)
    assert np.allclose(lagrangian_cubic(DZ123, w), [1, 0, 0, 0])


def test_cubic_reproduces_loop():
    rng = np.random.default_rng(4)
    om = rand_primitive(rng)
    w = Trivector.from_frame(random_unitary(rng))
    P = np.array(lagrangian_cubic(om, w))
    for th in (0, np.pi / 4, np.pi / 2, 3 * np.pi / 4):
        direct = evaluate(om, w.rotate(th))
        assert direct == pytest.approx(np.exp(-3j * th) * np.polyval(P, np.exp(2j * th)), abs=1e-12)


def test_cubic_needs_lagrangian():
    F = np.eye(3, dtype=complex)
    F[:, 1] = [1j, 1, 0]  # column 2 is not orthogonal to column 1 under the symplectic form
    with pytest.raises(ValueError):
        lagrangian_cubic(DZ123, Trivector.from_frame(F))


def test_json_round_trip():
    om = rand_form(np.random.default_rng(5))
    assert ThreeForm.from_json(om.to_json()).allclose(om, 0)
    assert len(MONOMIALS) == 20

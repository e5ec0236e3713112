from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from e3stab import exact as ex
from e3stab.cohomology import CohomClass, cycle_class, mukai_pairing
from e3stab.exact import I, cq
from e3stab.groups import Factor
from e3stab.lattice import (
    BASIS_E3, REFERENCE_EULER, LatticeMatrix, LatticeVec, autoeq_matrix, chern, euler_matrix,
    euler_pairing, exp_divisor, involution_matrix, is_isometry, transform_matrix,
)
from e3stab.mirror import integer_block, sp_action_matrix

O = lambda name: LatticeVec.basis(name)


def vec(*coords):
    return LatticeVec("E3", tuple(coords))


def test_chern_examples():
    assert chern("O_X") == CohomClass.one("E3")
    assert chern("O_D1") == cycle_class("D1")
    assert chern("O_0") == cycle_class("Point")


def test_euler_matrix_matches_reference():
    M = euler_matrix()
    assert M == REFERENCE_EULER
    assert M[0][13] == 1
    assert M[1][9] == -1
    assert M[7][3] == 1
    assert round(np.linalg.det(np.array(M, float))) != 0


def test_euler_is_mukai_on_chern_characters():
    for a in BASIS_E3:
        for b in BASIS_E3:
            assert euler_pairing(O(a), O(b)) == mukai_pairing(chern(a), chern(b))


def test_exp_divisor_examples():
    one, i = cq(1), I
    assert exp_divisor((1, 1, 1)) == vec(one, i, i, i, 0, 0, 0, -one, -one, -one, 0, 0, 0, -i)
    assert exp_divisor((-1, -1, 1)) == vec(one, -i, -i, i, 0, 0, 0, -one, one, one, 0, 0, 0, -i)
    for signs in [(1, 1, 1), (1, -1, 1), (-1, -1, -1)]:
        assert exp_divisor(signs, 0) == O("O_X")


def test_exp_divisor_scales_with_t():
    # coefficients are t^k on the codimension-k slots
    t = Fraction(1, 3)
    v, w = exp_divisor((1, -1, 1), t), exp_divisor((1, -1, 1))
    for k, name in enumerate(BASIS_E3):
        codim = {0: 0, 13: 3}.get(k, 1 if k <= 6 else 2)
        assert v.coords[k] == w.coords[k] * cq(t ** codim)


def test_phi_on_exp_il():
    e = exp_divisor((1, 1, 1))
    assert autoeq_matrix("Phi") @ e == e.scale(-I)


def test_phi_sends_divisors_to_curves():
    Phi = autoeq_matrix("Phi")
    for k, curve in ((1, "O_C23"), (2, "O_C13"), (3, "O_C12")):
        image = Phi @ LatticeVec.basis(k)
        nonzero = [BASIS_E3[j] for j, c in enumerate(image.coords) if c]
        assert nonzero == [curve]


def test_f_has_order_three():
    F = autoeq_matrix("F")
    assert F @ F @ F == autoeq_matrix("Id")
    assert not F @ F == autoeq_matrix("Id")


def test_phi_squared_is_minus_involution():
    Phi = autoeq_matrix("Phi")
    assert Phi @ Phi == -involution_matrix()


@pytest.mark.parametrize("kind", ["F", "F2", "Phi", "TensorO(D1)", "TensorO(D3)", "TensorO(Delta12)",
                                  "TensorO(-F12)", "TensorO(Delta23)"])
def test_autoequivalences_are_isometries(kind):
    assert is_isometry(autoeq_matrix(kind))


@pytest.mark.parametrize("i", range(1, 7))
def test_transforms_are_isometries(i):
    assert is_isometry(transform_matrix(i))


def test_sp_action_identity():
    I6 = [[int(i == j) for j in range(6)] for i in range(6)]
    assert sp_action_matrix(I6) == autoeq_matrix("Id")


def _up_to_sign(A: LatticeMatrix, B: LatticeMatrix) -> bool:
    return A == B or A == -B


def test_sp_action_generator_images():
    assert _up_to_sign(sp_action_matrix(integer_block("J")), autoeq_matrix("Phi"))
    E11 = [[1, 0, 0], [0, 0, 0], [0, 0, 0]]
    assert _up_to_sign(sp_action_matrix(integer_block("N", E11)), autoeq_matrix("TensorO(D1)"))


def test_sp_action_rejects_non_symplectic():
    bad = [[int(i == j) * (2 if i == 0 else 1) for j in range(6)] for i in range(6)]
    with pytest.raises(ValueError):
        sp_action_matrix(bad)


def test_json_round_trip():
    v = exp_divisor((1, -1, 1), Fraction(2, 5))
    assert LatticeVec.from_json(v.to_json()) == v


def test_wrong_length_rejected():
    with pytest.raises(ValueError):
        LatticeVec("E3", (1, 2, 3))


# --- random rational symplectic words ---------------------------------------------

sym3 = st.tuples(*[st.integers(-2, 2)] * 6).map(
    lambda a: [[a[0], a[3], a[4]], [a[3], a[1], a[5]], [a[4], a[5], a[2]]])
unimodular = st.sampled_from([
    [[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
    [[2, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, -1], [0, 0, 1]],
])
factor = st.one_of(st.just(("J", None)), st.tuples(st.just("N"), sym3), st.tuples(st.just("H"), unimodular))
words = st.lists(factor, min_size=1, max_size=3)


def _product(word):
    out = [[Fraction(int(i == j)) for j in range(6)] for i in range(6)]
    for kind, A in word:
        M = Factor(kind, None if A is None else [[Fraction(x) for x in r] for r in A]).exact()
        out = [[sum(a * b for a, b in zip(r, c)) for c in zip(*M)] for r in out]
    return out


@settings(max_examples=10, deadline=None)
@given(words, words)
def test_sp_action_is_homomorphism_up_to_sign(w1, w2):
    g, h = _product(w1), _product(w2)
    gh = [[sum(a * b for a, b in zip(r, c)) for c in zip(*h)] for r in g]
    assert _up_to_sign(sp_action_matrix(gh), sp_action_matrix(g) @ sp_action_matrix(h))


@settings(max_examples=10, deadline=None)
@given(words)
def test_sp_action_is_isometry(w):
    assert is_isometry(sp_action_matrix(_product(w)))

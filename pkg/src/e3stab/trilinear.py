"""Complex alternating 3-forms on R^6 = C^3.

Forms are stored on the 20 monomials in the generators
(dz1, dz2, dz3, dzbar1, dzbar2, dzbar3) = zeta_0..zeta_5, indices ascending.
Trivectors are stored on the 20 monomials in (dx1, dy1, dx2, dy2, dx3, dy3).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .cohomology import merge_sign

GENS = ("z1", "z2", "z3", "zbar1", "zbar2", "zbar3")
REAL_GENS = ("x1", "y1", "x2", "y2", "x3", "y3")
MONOMIALS = list(combinations(range(6), 3))
INDEX = {m: i for i, m in enumerate(MONOMIALS)}
BARS = np.array([sum(1 for g in m if g >= 3) for m in MONOMIALS])
DEFAULT_TOL = 1e-9


def _sort_sign(seq: Sequence[int]) -> tuple[tuple[int, ...], int]:
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return tuple(sorted(seq)), 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return tuple(sorted(seq)), sign


def _gen_index(g: str | int) -> int:
    if isinstance(g, int):
        return g
    # accept "z1", "zbar1", "1", "1bar"
    g = g.strip()
    if g.startswith("zbar"):
        return 2 + int(g[4:])
    if g.startswith("z"):
        return int(g[1:]) - 1
    raise ValueError(f"unknown generator {g!r}")


@dataclass(frozen=True)
class ThreeForm:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).reshape(20).copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls) -> "ThreeForm":
        return cls(np.zeros(20, complex))

    @classmethod
    def monomial(cls, *gens, coeff: complex = 1.0) -> "ThreeForm":
        """The form coeff * dzeta_a ^ dzeta_b ^ dzeta_c in the order given."""
        idx, sign = _sort_sign([_gen_index(g) for g in gens])
        out = np.zeros(20, complex)
        if sign:
            out[INDEX[idx]] = sign * coeff
        return cls(out)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Sequence, complex]]) -> "ThreeForm":
        out = cls.zero()
        for gens, c in terms:
            out = out + cls.monomial(*gens, coeff=c)
        return out

    def __add__(self, other: "ThreeForm") -> "ThreeForm":
        return ThreeForm(self.coeffs + other.coeffs)

    def __sub__(self, other: "ThreeForm") -> "ThreeForm":
        return ThreeForm(self.coeffs - other.coeffs)

    def __neg__(self) -> "ThreeForm":
        return ThreeForm(-self.coeffs)

    def __mul__(self, c: complex) -> "ThreeForm":
        return ThreeForm(self.coeffs * c)

    __rmul__ = __mul__

    def __truediv__(self, c: complex) -> "ThreeForm":
        return ThreeForm(self.coeffs / c)

    def conjugate(self) -> "ThreeForm":
        perm, sign = _conj_perm()
        out = np.zeros(20, complex)
        out[perm] = sign * np.conj(self.coeffs)
        return ThreeForm(out)

    def norm2(self) -> float:
        return float(np.vdot(self.coeffs, self.coeffs).real)

    def norm(self) -> float:
        return float(np.sqrt(self.norm2()))

    def inner(self, other: "ThreeForm") -> complex:
        """Monomial inner product, antilinear in the first slot."""
        return complex(np.vdot(self.coeffs, other.coeffs))

    def coeff(self, *gens) -> complex:
        idx, sign = _sort_sign([_gen_index(g) for g in gens])
        return sign * self.coeffs[INDEX[idx]] if sign else 0.0

    def allclose(self, other: "ThreeForm", tol: float = DEFAULT_TOL) -> bool:
        return bool(np.max(np.abs(self.coeffs - other.coeffs)) <= tol)

    def to_json(self) -> dict:
        terms = []
        for m, c in zip(MONOMIALS, self.coeffs):
            if c != 0:
                terms.append({"gens": [GENS[g] for g in m], "re": float(c.real), "im": float(c.imag)})
        return {"terms": terms}

    @classmethod
    def from_json(cls, data: Mapping) -> "ThreeForm":
        return cls.from_terms((t["gens"], complex(t["re"], t["im"])) for t in data["terms"])


@lru_cache(maxsize=None)
def _conj_perm() -> tuple[np.ndarray, np.ndarray]:
    perm = np.zeros(20, int)
    sign = np.zeros(20)
    for i, m in enumerate(MONOMIALS):
        idx, s = _sort_sign([(g + 3) % 6 for g in m])
        perm[i] = INDEX[idx]
        sign[i] = s
    return perm, sign


# --- trivectors -------------------------------------------------------------

def frame_to_real(frame: np.ndarray) -> np.ndarray:
    """6x3 real matrix of the frame columns in (x1, y1, x2, y2, x3, y3)."""
    frame = np.asarray(frame, complex)
    out = np.empty((6, frame.shape[1]))
    out[0::2] = frame.real
    out[1::2] = frame.imag
    return out


def _minors3(M: np.ndarray) -> np.ndarray:
    """All 20 maximal minors of a (..., 6, 3) array, rows in monomial order."""
    rows = np.array(MONOMIALS)
    return np.linalg.det(M[..., rows, :])


@dataclass(frozen=True)
class Trivector:
    coeffs: np.ndarray
    frame: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, float).reshape(20).copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_frame(cls, frame: np.ndarray) -> "Trivector":
        frame = np.asarray(frame, complex)
        return cls(_minors3(frame_to_real(frame)), frame)

    @classmethod
    def coordinate(cls, *names: str) -> "Trivector":
        """Wedge of coordinate vectors such as coordinate('x1', 'x2', 'y3')."""
        frame = np.zeros((3, 3), complex)
        for j, name in enumerate(names):
            k = int(name[1:]) - 1
            frame[k, j] = 1.0 if name[0] == "x" else 1.0j
        return cls.from_frame(frame)

    def rotate(self, theta: float) -> "Trivector":
        """Image under multiplication by e^{i theta} on C^3."""
        if self.frame is None:
            raise ValueError("rotation needs a frame-tagged trivector")
        return Trivector.from_frame(np.exp(1j * theta) * self.frame)

    def is_lagrangian(self, tol: float = 1e-9) -> bool:
        if self.frame is None:
            return False
        F = self.frame
        return bool(np.max(np.abs((F.conj().T @ F).imag)) < tol) and abs(np.linalg.det(F)) > tol


X_FRAME = np.eye(3, dtype=complex)


def reference_v() -> Trivector:
    return Trivector.coordinate("x1", "x2", "x3")


@lru_cache(maxsize=None)
def _contraction() -> np.ndarray:
    """E[I, J] = dzeta_I(d_J) on interleaved real basis vectors."""
    Z = np.zeros((6, 6), complex)  # rows: zeta generator, cols: real basis vector
    for k in range(3):
        Z[k, 2 * k], Z[k, 2 * k + 1] = 1, 1j
        Z[k + 3, 2 * k], Z[k + 3, 2 * k + 1] = 1, -1j
    rows = np.array(MONOMIALS)
    return np.linalg.det(Z[rows[:, None, :, None], rows[None, :, None, :]])


def zeta_matrix(frame: np.ndarray) -> np.ndarray:
    """(..., 6, 3): the six generators evaluated on the frame columns."""
    frame = np.asarray(frame, complex)
    return np.concatenate([frame, frame.conj()], axis=-2)


def evaluate(omega: ThreeForm, t: Trivector) -> complex:
    if t.frame is not None:
        return complex(_minors3(zeta_matrix(t.frame)) @ omega.coeffs)
    return complex(omega.coeffs @ _contraction() @ t.coeffs)


def evaluate_frames(omega: ThreeForm, frames: np.ndarray) -> np.ndarray:
    """Vectorized evaluation on a stack of frames of shape (n, 3, 3)."""
    return _minors3(zeta_matrix(frames)) @ omega.coeffs


# --- types and primitivity -------------------------------------------------

TYPES = ((3, 0), (2, 1), (1, 2), (0, 3))


def type_split(omega: ThreeForm) -> tuple[ThreeForm, ThreeForm, ThreeForm, ThreeForm]:
    return tuple(ThreeForm(np.where(BARS == q, omega.coeffs, 0)) for _, q in TYPES)


def type_part(omega: ThreeForm, p: int, q: int) -> ThreeForm:
    return ThreeForm(np.where(BARS == q, omega.coeffs, 0))


@lru_cache(maxsize=None)
def _omega_wedge() -> np.ndarray:
    """6 x 20 matrix of Omega -> Omega ^ omega on the 5-element monomials."""
    fives = list(combinations(range(6), 5))
    pos = {m: i for i, m in enumerate(fives)}
    W = np.zeros((6, 20), complex)
    for j, m in enumerate(MONOMIALS):
        for k in range(3):
            pair = (k, k + 3)
            if set(pair) & set(m):
                continue
            key = tuple(sorted(m + pair))
            W[pos[key], j] += 0.5j * merge_sign(m, pair)
    return W


def wedge_omega(omega: ThreeForm) -> np.ndarray:
    return _omega_wedge() @ omega.coeffs


def primitivity_residual(omega: ThreeForm) -> float:
    return float(np.linalg.norm(wedge_omega(omega)))


# --- the fourteen primitive coordinates -----------------------------------

FORM14_NAMES = ("alpha", "beta1", "beta2", "beta3", "beta12", "beta13", "beta23",
                "gamma1", "gamma2", "gamma3", "gamma12", "gamma13", "gamma23", "delta")

_FORM14_TERMS = {
    "alpha": [("z1", "z2", "z3")],
    "beta1": [("zbar1", "z2", "z3")],
    "beta2": [("z1", "zbar2", "z3")],
    "beta3": [("z1", "z2", "zbar3")],
    "beta12": [("zbar2", "z2", "z3"), ("z1", "zbar1", "z3")],
    "beta13": [("zbar3", "z2", "z3"), ("z1", "z2", "zbar1")],
    "beta23": [("z1", "zbar3", "z3"), ("z1", "z2", "zbar2")],
    "gamma1": [("z1", "zbar2", "zbar3")],
    "gamma2": [("zbar1", "z2", "zbar3")],
    "gamma3": [("zbar1", "zbar2", "z3")],
    "gamma12": [("z2", "zbar2", "zbar3"), ("zbar1", "z1", "zbar3")],
    "gamma13": [("z3", "zbar2", "zbar3"), ("zbar1", "zbar2", "z1")],
    "gamma23": [("zbar1", "z3", "zbar3"), ("zbar1", "zbar2", "z2")],
    "delta": [("zbar1", "zbar2", "zbar3")],
}


@lru_cache(maxsize=None)
def form14_basis() -> np.ndarray:
    """20 x 14 matrix whose columns are the primitive basis forms."""
    cols = [ThreeForm.from_terms((g, 1.0) for g in _FORM14_TERMS[n]).coeffs for n in FORM14_NAMES]
    return np.array(cols).T


def from_form14(**kw: complex) -> ThreeForm:
    unknown = set(kw) - set(FORM14_NAMES)
    if unknown:
        raise ValueError(f"unknown coefficients {sorted(unknown)}")
    vec = np.array([kw.get(n, 0.0) for n in FORM14_NAMES], complex)
    return ThreeForm(form14_basis() @ vec)


def form14_coeffs(omega: ThreeForm) -> dict[str, complex]:
    """Coordinates of the primitive projection of omega (columns have disjoint supports)."""
    B = form14_basis()
    c = (B.conj().T @ omega.coeffs) / np.sum(np.abs(B) ** 2, axis=0)
    return dict(zip(FORM14_NAMES, c))


@lru_cache(maxsize=None)
def _primitive_projector() -> np.ndarray:
    B = form14_basis()
    Q, _ = np.linalg.qr(B)
    return Q @ Q.conj().T


def primitive_projection(omega: ThreeForm) -> ThreeForm:
    return ThreeForm(_primitive_projector() @ omega.coeffs)


def form8(alpha=1.0, beta=(0, 0, 0), gamma=(0, 0, 0), delta=0.0) -> ThreeForm:
    return from_form14(alpha=alpha, beta1=beta[0], beta2=beta[1], beta3=beta[2],
                       gamma1=gamma[0], gamma2=gamma[1], gamma3=gamma[2], delta=delta)


def normal_form(gammas: Sequence[float]) -> ThreeForm:
    return form8(1.0, (0, 0, 0), tuple(gammas), 0.0)


# (1,2)-part <-> complex 3x3 matrix N with Omega = sum N_ab dz_a ^ *dzbar_b,
# where *dzbar1 = dzbar2^dzbar3, *dzbar2 = dzbar3^dzbar1, *dzbar3 = dzbar1^dzbar2.
_STAR = ((4, 5), (5, 3), (3, 4))


@lru_cache(maxsize=None)
def _matrix_slots() -> list[tuple[int, int, int, int]]:
    slots = []
    for a in range(3):
        for b in range(3):
            idx, sign = _sort_sign((a,) + _STAR[b])
            slots.append((a, b, INDEX[idx], sign))
    return slots


def matrix_12(omega: ThreeForm) -> np.ndarray:
    N = np.zeros((3, 3), complex)
    for a, b, i, s in _matrix_slots():
        N[a, b] = s * omega.coeffs[i]
    return N


def form_from_matrix_12(N: np.ndarray) -> ThreeForm:
    out = np.zeros(20, complex)
    for a, b, i, s in _matrix_slots():
        out[i] += s * N[a, b]
    return ThreeForm(out)


def lagrangian_cubic(omega: ThreeForm, w: Trivector, tol: float = 1e-9) -> tuple[complex, complex, complex, complex]:
    """(c3, c2, c1, c0) with omega(e^{i theta} w) = e^{-3 i theta} P(e^{2 i theta})."""
    if not w.is_lagrangian(tol):
        raise ValueError("the trivector is not a frame-tagged Lagrangian")
    return tuple(evaluate(part, w) for part in type_split(omega))

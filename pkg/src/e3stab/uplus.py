"""Membership and component tests for the space U+(3) of admissible 3-forms.

A primitive complex 3-form lies in U(3) when it is nonzero on every
Lagrangian subspace, and in U+(3) when it is moreover in the component of
dz1^dz2^dz3. Sampling can only certify rejection: a Lagrangian frame where
the form vanishes, or a Lagrangian loop whose winding number is not +3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .groups import random_unitaries
from .trilinear import (
    DEFAULT_TOL, ThreeForm, Trivector, X_FRAME, evaluate, evaluate_frames, lagrangian_cubic,
    primitivity_residual,
)

SCHUR_TIE = 1e-12
WINDING_GRID = 720
DEFAULT_SAMPLES = 4096


# --- cubics and the Schur-Cohn test ----------------------------------------

@dataclass(frozen=True)
class Cubic:
    """c3 z^3 + c2 z^2 + c1 z + c0."""
    c3: complex
    c2: complex
    c1: complex
    c0: complex

    @classmethod
    def monic(cls, a: complex, b: complex, c: complex) -> "Cubic":
        return cls(1.0, a, b, c)

    @property
    def coeffs(self) -> np.ndarray:
        return np.array([self.c3, self.c2, self.c1, self.c0], complex)

    def __call__(self, z):
        return np.polyval(self.coeffs, z)

    def roots(self) -> np.ndarray:
        if self.c3 == 0:
            raise ValueError("leading coefficient vanishes")
        return np.roots(self.coeffs)


def reciprocal_adjoint(p: np.ndarray) -> np.ndarray:
    """P*(z) = z^n conj(P(1/conj z)); coefficients are listed from the top degree down."""
    return np.conj(np.asarray(p, complex)[::-1])


def schur_transform(p: np.ndarray) -> np.ndarray:
    """TP = conj(P(0)) P - conj(P*(0)) P*, returned with the (vanishing) top coefficient dropped."""
    p = np.asarray(p, complex)
    ps = reciprocal_adjoint(p)
    tp = np.conj(p[-1]) * p - np.conj(ps[-1]) * ps
    return tp[1:]


def _roots_inside_oracle(p: np.ndarray) -> bool:
    return bool(np.all(np.abs(np.roots(p)) < 1.0))


def roots_in_open_disk(p: Cubic | Sequence[complex]) -> bool:
    """True iff every root has modulus < 1.

    Each step requires TP(0) = |P(0)|^2 - |lead|^2 < 0; the next polynomial is
    the reciprocal adjoint of TP (which has the same roots as P minus the one
    at 0 when TP(0) < 0, by Rouche). Near-ties fall back to companion-matrix
    eigenvalues.
    """
    coeffs = p.coeffs if isinstance(p, Cubic) else np.asarray(p, complex)
    if coeffs[0] == 0:
        raise ValueError("leading coefficient vanishes")
    q = coeffs / np.max(np.abs(coeffs))
    while len(q) > 1:
        delta = schur_transform(q)[-1].real
        if abs(delta) < SCHUR_TIE:
            return _roots_inside_oracle(q)
        if delta > 0:
            return False
        q = -reciprocal_adjoint(schur_transform(q))
        q = q / np.max(np.abs(q))
    return True


def polyunstable_hypothesis(a: complex, b: complex, c: complex) -> bool:
    """0 < 1 - |c|^2 <= |a conj(c) - conj(b)| for the monic cubic z^3 + a z^2 + b z + c."""
    lhs = 1.0 - abs(c) ** 2
    return bool(0.0 < lhs <= abs(a * np.conj(c) - np.conj(b)))


# --- loops of Lagrangians ---------------------------------------------------

def loop_values(omega: ThreeForm, frame: np.ndarray, n: int = WINDING_GRID) -> np.ndarray:
    """omega(e^{i theta} frame) on the grid theta = 2 pi k / n, k = 0..n."""
    theta = np.linspace(0.0, 2 * np.pi, n + 1)
    frames = np.exp(1j * theta)[:, None, None] * np.asarray(frame, complex)[None]
    return evaluate_frames(omega, frames)


def winding_number(omega: ThreeForm, w: Trivector | np.ndarray | None = None, tol: float = DEFAULT_TOL) -> int:
    """Winding number of theta -> omega(e^{i theta} w) around 0, theta in [0, 2 pi]."""
    frame = _frame(w)
    vals = loop_values(omega, frame)
    if np.min(np.abs(vals)) <= tol:
        raise ValueError("the loop passes too close to zero")
    turns = np.sum(np.angle(vals[1:] / vals[:-1])) / (2 * np.pi)
    k = int(round(turns))
    if abs(turns - k) > 1e-6 or k not in (-3, -1, 1, 3):
        raise ValueError(f"unexpected winding {turns:.6f}")
    return k


def _frame(w) -> np.ndarray:
    if w is None:
        return X_FRAME
    if isinstance(w, Trivector):
        if w.frame is None:
            raise ValueError("need a frame-tagged trivector")
        return w.frame
    return np.asarray(w, complex)


def cubic_winding(omega: ThreeForm, w: Trivector | None = None, tol: float = DEFAULT_TOL) -> int:
    """Winding from root counting: omega(e^{i theta} w) = e^{-3 i theta} P(e^{2 i theta})."""
    w = w if w is not None else Trivector.from_frame(X_FRAME)
    c3, c2, c1, c0 = lagrangian_cubic(omega, w, tol)
    p = np.array([c3, c2, c1, c0])
    while len(p) and abs(p[0]) <= tol:
        p = p[1:]
    inside = int(np.sum(np.abs(np.roots(p)) < 1.0)) if len(p) > 1 else 0
    return 2 * inside - 3


def coordinate_frames() -> list[np.ndarray]:
    """The eight frames choosing d/dx_k or d/dy_k in each factor."""
    out = []
    for mask in range(8):
        F = np.eye(3, dtype=complex)
        for k in range(3):
            if mask >> k & 1:
                F[k, k] = 1j
        out.append(F)
    return out


@dataclass
class MembershipVerdict:
    status: str  # "RejectedWitness", "RejectedComponent" or "PassedSamples"
    samples_used: int
    min_abs_value: float
    witness: tuple[Trivector, float] | None = None
    winding: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def rejected(self) -> bool:
        return self.status != "PassedSamples"

    def to_json(self) -> dict:
        out = {"status": self.status, "samples_used": self.samples_used,
               "min_abs_value": self.min_abs_value, "winding": self.winding, "notes": list(self.notes)}
        if self.witness is not None:
            t, val = self.witness
            frame = t.frame
            out["witness"] = {"frame_re": frame.real.tolist(), "frame_im": frame.imag.tolist(), "abs_value": val}
        return out


def _refine_on_loop(omega: ThreeForm, frame: np.ndarray, n: int = 360) -> tuple[float, np.ndarray]:
    """Minimize |omega(e^{i theta} frame)| over theta in [0, pi]; returns (value, frame)."""
    theta = np.linspace(0.0, np.pi, n + 1)
    vals = np.abs(evaluate_frames(omega, np.exp(1j * theta)[:, None, None] * frame[None]))
    k = int(np.argmin(vals))
    lo, hi = theta[max(k - 1, 0)], theta[min(k + 1, n)]
    f = lambda t: abs(evaluate_frames(omega, (np.exp(1j * t) * frame)[None])[0]) ** 2
    res = minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": 1e-14})
    best_t = res.x if res.fun < vals[k] ** 2 else theta[k]
    return float(np.sqrt(min(res.fun, vals[k] ** 2))), np.exp(1j * best_t) * frame


def membership_test(omega: ThreeForm, n_samples: int = DEFAULT_SAMPLES, seed: int = 0,
                    tol: float = DEFAULT_TOL, n_loops: int = 16) -> MembershipVerdict:
    """Search for evidence that omega is not in U+(3).

    Evaluates on the coordinate frames and n_samples Haar-random unitary
    frames, then minimizes |omega| along the loops e^{i theta} b through the
    coordinate frames and the n_loops lowest-valued samples. A vanishing value
    gives RejectedWitness; otherwise a winding number other than +3 on the
    reference loop gives RejectedComponent.
    """
    if primitivity_residual(omega) > tol:
        raise ValueError("form is not primitive")
    rng = np.random.default_rng(seed)
    frames = np.concatenate([np.array(coordinate_frames()), random_unitaries(rng, n_samples)])
    vals = np.abs(evaluate_frames(omega, frames))
    order = np.argsort(vals)
    best = float(vals[order[0]])
    best_frame = frames[order[0]]
    candidates = list(range(8)) + [int(i) for i in order[:n_loops]]
    for i in dict.fromkeys(candidates):
        if best < tol:
            break
        val, frame = _refine_on_loop(omega, frames[i])
        if val < best:
            best, best_frame = val, frame
    used = len(frames)
    if best < tol:
        return MembershipVerdict("RejectedWitness", used, best, (Trivector.from_frame(best_frame), best))
    try:
        w = winding_number(omega, X_FRAME, tol)
    except ValueError as exc:
        return MembershipVerdict("RejectedWitness", used, best, (Trivector.from_frame(best_frame), best),
                                 notes=[str(exc)])
    if w != 3:
        return MembershipVerdict("RejectedComponent", used, best, winding=w,
                                 notes=["reference loop winds %+d, not +3" % w])
    # necessary condition from the cubic on the reference Lagrangian
    p = Cubic(*lagrangian_cubic(omega, Trivector.from_frame(X_FRAME), tol))
    if abs(p.c3) <= tol or not roots_in_open_disk(p):
        return MembershipVerdict("RejectedComponent", used, best, winding=w,
                                 notes=["reference cubic has a root outside the open disk"])
    return MembershipVerdict("PassedSamples", used, best, winding=w)


def admissibility_verdict(omega: ThreeForm, n_samples: int = DEFAULT_SAMPLES, seed: int = 0,
                          tol: float = DEFAULT_TOL) -> MembershipVerdict:
    """membership_test with the heuristic label spelled out in the notes."""
    v = membership_test(omega, n_samples=n_samples, seed=seed, tol=tol)
    if not v.rejected:
        v.notes.append("no obstruction found; sampling cannot certify membership")
    return v


def covering_coords(omega: ThreeForm, tol: float = DEFAULT_TOL) -> tuple[float, ThreeForm]:
    """(theta, Omega_0) with theta = arg omega(d/dx1, d/dx2, d/dx3) and Omega_0 = e^{-i theta} omega."""
    val = evaluate(omega, Trivector.from_frame(X_FRAME))
    if abs(val) <= tol:
        raise ValueError("form vanishes on the reference Lagrangian")
    theta = float(np.angle(val)) % (2 * np.pi)
    return theta, omega * np.exp(-1j * theta)

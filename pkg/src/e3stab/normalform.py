"""Reduction of a form in U+(3) to its normal form dz123 + sum_k gamma_k (slot k).

Pipeline: minimize the norm along the non-compact directions of
Sp(6) x SL(2) until the (2,1) and (0,3) parts vanish, diagonalize the
(1,2)-part by a unitary congruence (Takagi), then fix phases, order and
scale with the torus U(1)^3 x U(1), a coordinate permutation and a dilation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .groups import (
    IDENTITY, GroupElement, act, act_values, lambda3, p_basis, rotation, unitary_to_sp, _zeta_block,
)
from .trilinear import (
    DEFAULT_TOL, ThreeForm, form14_coeffs, matrix_12, normal_form, type_part,
)

SLOT_NAMES = ("gamma1", "gamma2", "gamma3")
OFF_SLOTS = ("beta1", "beta2", "beta3", "beta12", "beta13", "beta23",
             "gamma12", "gamma13", "gamma23", "delta")


@dataclass
class DescentConfig:
    tol: float = 1e-10
    # the (2,1) and (0,3) parts vanish exactly at the minimum; near sum(gamma) = 1
    # the curvature is tiny, so a small gradient alone does not force them small
    off_tol: float = 1e-11
    max_iter: int = 100_000
    step0: float = 0.1
    shrink: float = 0.5
    armijo: float = 1e-4
    grow: float = 2.0
    # "newton" preconditions the gradient by the exact Hessian along the flow;
    # "gradient" is plain steepest descent (slow near the boundary sum(gamma) -> 1)
    method: str = "newton"


@dataclass
class NormalFormResult:
    gammas: tuple[float, float, float]
    group: GroupElement
    residuals: dict = field(default_factory=dict)
    permutation: tuple[int, int, int] = (0, 1, 2)
    iterations: int = 0

    @property
    def form(self) -> ThreeForm:
        return normal_form(self.gammas)

    def to_json(self) -> dict:
        return {"gammas": list(self.gammas), "group": self.group.to_json(),
                "residuals": dict(self.residuals), "permutation": list(self.permutation),
                "iterations": self.iterations}


# --- the moment map --------------------------------------------------------

def _realify(L: np.ndarray) -> np.ndarray:
    return np.block([[L.real, -L.imag], [L.imag, L.real]])


def _lambda3_derivation(A: np.ndarray) -> np.ndarray:
    # lambda3(I + hA) is cubic in h; Richardson on central differences is exact
    f = lambda h: (lambda3(np.eye(6) + h * A) - lambda3(np.eye(6) - h * A)) / (2 * h)
    return (4 * f(0.5) - f(1.0)) / 3


@lru_cache(maxsize=None)
def generator_matrices() -> np.ndarray:
    """(14, 40, 40): derivative at t = 0 of Omega . exp(t X_a) on (Re, Im) coefficient vectors.

    The symplectic part acts by pullback along exp(t X), the SL(2) part
    acts on values.
    """
    Z, Zinv = _zeta_block()
    out = []
    for X_sp, X_sl in p_basis():
        if np.any(X_sp):
            D = _lambda3_derivation(Z @ X_sp @ Zinv).T
            out.append(_realify(D))
        else:
            cols = []
            for k in range(40):
                e = np.zeros(40)
                e[k] = 1.0
                img = act_values(X_sl, ThreeForm(e[:20] + 1j * e[20:]))
                cols.append(np.concatenate([img.coeffs.real, img.coeffs.imag]))
            out.append(np.array(cols).T)
    return np.array(out)


def _vec(omega: ThreeForm) -> np.ndarray:
    return np.concatenate([omega.coeffs.real, omega.coeffs.imag])


def moment_gradient(omega: ThreeForm) -> np.ndarray:
    """Re <Omega, X_a Omega> for the fourteen p-basis directions, = 1/2 d/dt |Omega exp(t X_a)|^2."""
    w = _vec(omega)
    return np.einsum("i,aij,j->a", w, generator_matrices(), w)


def moment_hessian(omega: ThreeForm) -> np.ndarray:
    """d/dt of the gradient along Omega . exp(t X_b): <w, (M_a M_b + M_b M_a) w>, positive semidefinite."""
    w = _vec(omega)
    Mw = np.einsum("aij,j->ai", generator_matrices(), w)
    H = Mw @ Mw.T
    return H + H.T


def flow_element(coeffs: np.ndarray) -> GroupElement:
    """Group element g with act(g, Omega) = Omega . exp(sum_a coeffs[a] X_a)."""
    basis = p_basis()
    A = sum(c * b[0] for c, b in zip(coeffs, basis))
    B = sum(c * b[1] for c, b in zip(coeffs, basis))
    return GroupElement(expm(-A), expm(B))


def off_type_norm(omega: ThreeForm) -> float:
    return float(np.sqrt(type_part(omega, 2, 1).norm2() + type_part(omega, 0, 3).norm2()))


def minimize_norm(omega: ThreeForm, tol: float | None = None, max_iter: int | None = None,
                  config: DescentConfig | None = None) -> tuple[ThreeForm, GroupElement, dict]:
    """Descent of |Omega|^2 along one-parameter subgroups exp(-s sum d_a X_a), Armijo backtracking.

    Stops when the gradient norm is below tol and the off-type norm below
    config.off_tol (relative to |Omega|). Returns (Omega', g, info) with
    Omega' = act(g, omega). Raises RuntimeError when max_iter is exceeded.
    """
    cfg = config or DescentConfig()
    tol = cfg.tol if tol is None else tol
    max_iter = cfg.max_iter if max_iter is None else max_iter
    g = IDENTITY
    cur = omega
    f = cur.norm2()
    grad = moment_gradient(cur)
    gn = float(np.linalg.norm(grad))
    step = cfg.step0 if cfg.method == "gradient" else 1.0
    history = [f]
    it = 0
    while gn >= tol or off_type_norm(cur) >= cfg.off_tol * np.sqrt(f):
        if it >= max_iter:
            raise RuntimeError(f"descent did not converge in {max_iter} steps (gradient norm {gn:.3e})")
        it += 1
        direction = _direction(cur, grad, cfg.method)
        slope = float(grad @ direction)
        s = step
        while True:
            h = flow_element(-s * direction)
            trial = act(h, cur)
            # f(trial) - f(cur) without cancellation
            df = float(np.real(np.vdot(trial.coeffs + cur.coeffs, trial.coeffs - cur.coeffs)))
            wanted = cfg.armijo * s * 2 * slope
            if wanted > 1e-13 * f:
                ok = df <= -wanted
                new_grad = None
            else:
                # below the resolution of f: require the gradient to shrink instead
                new_grad = moment_gradient(trial)
                ok = np.linalg.norm(new_grad) < gn or (df <= 0 and off_type_norm(trial) < off_type_norm(cur))
            if ok:
                break
            s *= cfg.shrink
            if s < 1e-12:
                raise RuntimeError(f"line search failed (gradient norm {gn:.3e})")
        g = h @ g
        cur, f = trial, f + df
        history.append(f)
        grad = moment_gradient(cur) if new_grad is None else new_grad
        gn = float(np.linalg.norm(grad))
        step = min(s * cfg.grow, 10.0) if cfg.method == "gradient" else 1.0
    info = {"iterations": it, "gradient_norm": gn, "history": history}
    return cur, g, info


def _direction(omega: ThreeForm, grad: np.ndarray, method: str) -> np.ndarray:
    if method == "gradient":
        return grad
    if method != "newton":
        raise ValueError(f"unknown descent method {method!r}")
    H = moment_hessian(omega)
    w, V = np.linalg.eigh(H)
    # stabilizer directions have zero curvature; damp them instead of inverting
    w = np.maximum(w, 1e-8 * max(1.0, w[-1]))
    d = V @ ((V.T @ grad) / w)
    return d if grad @ d > 0 else grad


# --- unitary normalization -------------------------------------------------

def takagi(N: np.ndarray, tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Unitary V and sigma >= 0 with N = V diag(sigma) V^T for complex symmetric N."""
    N = np.asarray(N, complex)
    n = N.shape[0]
    A, B = N.real, N.imag
    H = np.block([[A, B], [B, -A]])
    w, vecs = np.linalg.eigh(H)
    scale = max(1.0, float(np.max(np.abs(w))))
    keep = [k for k in range(2 * n - 1, -1, -1) if w[k] > tol * scale][:n]
    cols = [vecs[:n, k] + 1j * vecs[n:, k] for k in keep]
    sig = [float(w[k]) for k in keep]
    V = np.array(cols).T.reshape(n, len(cols))
    if len(cols) < n:
        # complete with an orthonormal basis of the complement: conj of those span ker N
        Q, _ = np.linalg.qr(np.concatenate([V, np.eye(n)], axis=1))
        V = np.concatenate([V, Q[:, len(cols):n]], axis=1)
        sig += [0.0] * (n - len(cols))
    return V, np.array(sig)


def diagonalize_12_part(omega: ThreeForm, tol: float = 1e-8) -> tuple[ThreeForm, GroupElement]:
    """Unitary u with act(u, omega) having diagonal (1,2)-part diag(sigma) * det(V).

    Uses N' = det(U) conj(U) N conj(U)^T for U in U(3), with U = V^T from the
    Takagi factorization N = V diag(sigma) V^T.
    """
    if off_type_norm(omega) > tol:
        raise ValueError("the (2,1) and (0,3) parts must vanish first")
    N = matrix_12(omega)
    if np.max(np.abs(N - np.diag(np.diag(N)))) < 1e-14 and np.all(np.diag(N).real >= 0) \
            and np.all(np.abs(np.diag(N).imag) < 1e-14):
        return omega, IDENTITY
    V, _ = takagi(N)
    u = GroupElement(unitary_to_sp(V.T))
    return act(u, omega), u


def permutation_unitary(perm) -> np.ndarray:
    """P with P e_k = e_perm[k]."""
    P = np.zeros((3, 3))
    for k, p in enumerate(perm):
        P[p, k] = 1.0
    return P


# rows: alpha, gamma1, gamma2, gamma3; columns: phi1, phi2, phi3, psi
WEIGHTS = np.array([[-1, -1, -1, 1], [-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1]], float)


def torus_element(phi, psi: float) -> GroupElement:
    U = np.diag(np.exp(1j * np.asarray(phi, float)))
    return GroupElement(unitary_to_sp(U), rotation(psi))


def phase_and_sort(omega: ThreeForm, tol: float = 1e-8) -> NormalFormResult:
    """Sort the diagonal slots, make alpha = 1 and every gamma_k >= 0."""
    c = form14_coeffs(omega)
    off = max(abs(c[k]) for k in OFF_SLOTS)
    if off > tol:
        raise ValueError(f"form is not diagonal (off-diagonal size {off:.2e})")
    alpha = c["alpha"]
    if abs(alpha) <= tol:
        raise ValueError("alpha vanishes: the form is not in U+(3)")
    mags = [abs(c[k]) for k in SLOT_NAMES]
    order = tuple(int(k) for k in np.argsort(mags, kind="stable"))
    # slot k of the image comes from slot order[k]: the coordinate order[k] moves to k
    perm = [0, 0, 0]
    for k, src in enumerate(order):
        perm[src] = k
    P = GroupElement(unitary_to_sp(permutation_unitary(perm)))
    cur = act(P, omega)
    c = form14_coeffs(cur)
    vals = [c["alpha"]] + [c[k] for k in SLOT_NAMES]
    target = -np.array([np.angle(v) if abs(v) > tol else 0.0 for v in vals])
    sol = np.linalg.solve(WEIGHTS, target)
    T = torus_element(sol[:3], sol[3])
    cur = act(T, cur)
    a = abs(form14_coeffs(cur)["alpha"])
    S = GroupElement(np.eye(6), np.eye(2) / a)
    cur = act(S, cur)
    c = form14_coeffs(cur)
    gam = tuple(float(c[k].real) for k in SLOT_NAMES)
    g = S @ T @ P
    return NormalFormResult(gam, g, {"phase_error": float(max(abs(c["alpha"] - 1), *(abs(c[k].imag) for k in SLOT_NAMES)))},
                            tuple(perm))


def orbit_invariants(omega: ThreeForm, config: DescentConfig | None = None) -> NormalFormResult:
    """Sorted gamma invariants with the group element reaching the normal form."""
    cur, g1, info = minimize_norm(omega, config=config)
    off = off_type_norm(cur)
    cur, g2 = diagonalize_12_part(cur, tol=max(1e-8, 10 * off))
    res = phase_and_sort(cur, tol=1e-7)
    g = res.group @ g2 @ g1
    gam = res.gammas
    if min(gam) < -1e-9 or sum(gam) >= 1:
        raise ValueError(f"invariants {gam} are outside the fundamental domain")
    recon = act(g, omega) - normal_form(gam)
    res.group = g
    res.iterations = info["iterations"]
    res.residuals.update({"gradient_norm": info["gradient_norm"], "off_type_norm": off,
                          "reconstruction_error": float(recon.norm())})
    return res


def fundamental_domain_contains(omega: ThreeForm, tol: float = DEFAULT_TOL) -> bool:
    """Exact-shape membership: omega = dz123 + sum gamma_k (slot k) with gamma_k >= 0, sum < 1.

    Such forms are in U+(3): on a unitary frame the dz123 term has modulus 1
    and each slot term at most gamma_k (Hadamard).
    """
    c = form14_coeffs(omega)
    if max(abs(c[k]) for k in OFF_SLOTS) > tol or abs(c["alpha"] - 1) > tol:
        return False
    gam = [c[k] for k in SLOT_NAMES]
    if any(abs(x.imag) > tol or x.real < -tol for x in gam):
        return False
    return sum(x.real for x in gam) < 1

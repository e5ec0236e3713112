"""Quadratic forms for the support property and their definiteness on kernels.

On the surface S = E^2 the form is Q = -chi_S(., .). On N(E^3) the form
attached to the transform Phi_i is

    Q_i(v) = b_i c_i - a_i d_i + eta Q(v1(Phi_i v)),

and the abstract forms P_i = b_i c_i - a_i d_i + C (a_i^2 + c_i^2) live on real
coefficient variables tied together by

    c_i + b_i = S,   -a_i + d_i = T    (i = 1, 2, 3),
    (a, b, c, d)_{i+3} = (-b_i, a_i, -d_i, c_i).

Gram matrices use the convention q(x) = x^T G x. Entries are Fractions when
every parameter is rational (int or Fraction) and floats otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np
import sympy
from scipy.linalg import null_space

from . import exact as ex
from .lattice import LatticeVec, euler_matrix, euler_pairing
from .prodstab import _abcd_rows, project_v, v1_stack

DEFINITE_TOL = 1e-10
LAMBDA_STEPS = 11
CHART = ("a1", "a2", "a3", "b1", "b2", "b3")


def _rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _num(x):
    return x if _rational(x) else float(x)


def _sym_outer(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Gram matrix of the product of two linear forms."""
    M = np.multiply.outer(u, v)
    return (M + M.T) / 2 if M.dtype != object else (M + M.T) * Fraction(1, 2)


def _as_float(G: np.ndarray) -> np.ndarray:
    return np.array(G, dtype=float)


@dataclass
class QuadForm:
    space: str  # "Lattice14", "Coeff12" (6-variable chart) or "Surface5"
    gram: np.ndarray
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        n = self.gram.shape[0]
        if self.gram.shape != (n, n):
            raise ValueError("gram must be square")
        if not np.all(self.gram == self.gram.T):
            raise ValueError("gram must be symmetric")
        want = {"Lattice14": 14, "Coeff12": 6, "Surface5": 5}.get(self.space)
        if want is not None and n != want:
            raise ValueError(f"{self.space} forms have size {want}")

    @property
    def exact(self) -> bool:
        return self.gram.dtype == object

    def numeric(self) -> np.ndarray:
        return _as_float(self.gram)

    def __call__(self, x):
        x = np.asarray(x, dtype=self.gram.dtype if self.exact else float)
        return x @ self.gram @ x

    def __add__(self, other: "QuadForm") -> "QuadForm":
        if self.space != other.space:
            raise ValueError("space mismatch")
        return QuadForm(self.space, self.gram + other.gram, {})

    def scale(self, c) -> "QuadForm":
        return QuadForm(self.space, self.gram * _num(c), dict(self.params))

    def hessian(self) -> np.ndarray:
        return 2 * self.gram

    def to_json(self) -> dict:
        if self.exact:
            gram = [[ex.fmt_q(x) for x in row] for row in self.gram]
        else:
            gram = self.gram.tolist()
        return {"space": self.space, "exact": self.exact, "gram": gram,
                "params": {k: (ex.fmt_q(v) if _rational(v) else v) for k, v in self.params.items()}}


# --- the surface ------------------------------------------------------------

@lru_cache(maxsize=None)
def _surface_gram() -> np.ndarray:
    chi = np.array(euler_matrix("E2"), dtype=object)
    return np.vectorize(Fraction, otypes=[object])(-chi)


def surface_Q(v: LatticeVec):
    """-chi_S(v, v) for a class on E^2 (exact)."""
    if v.ambient != "E2":
        raise ValueError("surface_Q takes a class on E^2")
    return -euler_pairing(v, v)


def surface_form() -> QuadForm:
    return QuadForm("Surface5", _surface_gram().copy())


@lru_cache(maxsize=None)
def _surface_charge_rows() -> np.ndarray:
    """2 x 5 real matrix (Re g, Im g) of g = <exp(i D), .> on N(E^2)."""
    from .lattice import exp_divisor
    e = exp_divisor((1, 1), 1, "E2")
    vals = [euler_pairing(e, LatticeVec.basis(k, "E2")) for k in range(5)]
    return np.array([[ex.re_part(z) for z in vals], [ex.im_part(z) for z in vals]], dtype=object)


def surface_kernel_eigenvalues() -> np.ndarray:
    """Eigenvalues of Q restricted to ker g (an orthonormal basis of the real kernel)."""
    R = _as_float(_surface_charge_rows())
    K = null_space(R)
    return np.linalg.eigvalsh(K.T @ _as_float(_surface_gram()) @ K)


@dataclass(frozen=True)
class SurfaceConstant:
    value: object  # exact sympy number
    schur: list  # 2x2 rational matrix on the (Re g, Im g) plane
    kernel_max: float  # largest eigenvalue of Q on ker g

    def __float__(self) -> float:
        return float(self.value)


@lru_cache(maxsize=None)
def surface_support_constant() -> SurfaceConstant:
    """C_S = max of Q(v) / |g(v)|^2 over v outside ker g.

    With v = W z + K k (g(W z) = z, K a basis of ker g) and Q negative definite
    on ker g, the maximum over the fibre is the Schur complement
    q(z) = W'GW - W'GK (K'GK)^-1 K'GW, so C_S is its top eigenvalue.
    """
    G = sympy.Matrix(_surface_gram().tolist())
    R = sympy.Matrix(_surface_charge_rows().tolist())
    K = sympy.Matrix.hstack(*R.nullspace())
    W = R.pinv()
    GK = K.T * G * K
    kmax = float(max(np.linalg.eigvalsh(np.array(GK.tolist(), dtype=float))))
    if kmax >= 0:
        raise ValueError("Q is not negative definite on ker g")
    S = W.T * G * W - W.T * G * K * GK.inv() * K.T * G * W
    S = sympy.simplify(S)
    top = max(S.eigenvals().keys(), key=lambda e: float(e))
    return SurfaceConstant(sympy.nsimplify(top), [[Fraction(str(x)) for x in row] for row in S.tolist()], kmax)


# --- forms on N(E^3) ---------------------------------------------------------

def _frac_row(row) -> np.ndarray:
    out = []
    for z in row:
        if ex.im_part(z):
            raise ValueError("expected a real coefficient")
        out.append(ex.re_part(z))
    return np.array(out, dtype=object)


@lru_cache(maxsize=None)
def _coeff_rows(i: int) -> tuple[np.ndarray, ...]:
    return tuple(_frac_row(r) for r in _abcd_rows(i, Fraction(1)))


@lru_cache(maxsize=None)
def _v1_matrix(i: int) -> np.ndarray:
    return np.array([_frac_row(r) for r in v1_stack([i]).to_list()], dtype=object)


@lru_cache(maxsize=None)
def _bcad_gram(i: int) -> np.ndarray:
    a, b, c, d = _coeff_rows(i)
    return _sym_outer(b, c) - _sym_outer(a, d)


@lru_cache(maxsize=None)
def _v1_gram(i: int) -> np.ndarray:
    V = _v1_matrix(i)
    return V.T @ _surface_gram() @ V


def _finish(G: np.ndarray, exact: bool) -> np.ndarray:
    return G if exact else _as_float(G)


def lattice_Q(i: int, eta) -> QuadForm:
    """Gram of v -> b_i c_i - a_i d_i + eta Q(v1(Phi_i v)) in lattice coordinates."""
    if not 1 <= i <= 6:
        raise ValueError("transform index runs over 1..6")
    if not eta > 0:
        raise ValueError("eta must be positive")
    eta = _num(eta)
    G = _bcad_gram(i) + _v1_gram(i) * (eta if _rational(eta) else Fraction(eta))
    return QuadForm("Lattice14", _finish(G, _rational(eta)), {"i": i, "eta": eta})


def combined_Q(alpha_p, beta_p, gamma_p, eta: Sequence) -> QuadForm:
    """alpha'(Q1 + Q4) + beta'(Q2 + Q5) + gamma'(Q3 + Q6) with Q_i at eta[i-1]."""
    weights = [_num(alpha_p), _num(beta_p), _num(gamma_p)]
    if len(eta) != 6:
        raise ValueError("need six eta values")
    if min(weights) <= 0:
        raise ValueError("weights must be positive")
    exact = all(_rational(x) for x in weights) and all(_rational(x) for x in eta)
    G = np.zeros((14, 14), dtype=object if exact else float)
    for i in range(1, 7):
        w = weights[(i - 1) % 3]
        G = G + lattice_Q(i, eta[i - 1]).gram * w
    params = {"alpha'": weights[0], "beta'": weights[1], "gamma'": weights[2]}
    params.update({f"eta{i}": _num(e) for i, e in enumerate(eta, start=1)})
    return QuadForm("Lattice14", G, params)


def eta_bound(C) -> float:
    """eta_i < C / C_S makes eta Q(v1) <= C (a^2 + c^2)."""
    return float(C) / float(surface_support_constant())


# --- kernels ------------------------------------------------------------------

def charge_row(alpha, beta_, gamma) -> np.ndarray:
    """Z_(alpha, beta, gamma) on the 14 basis vectors, as a complex array."""
    from .mirror import charge_functional, charge_vector
    return np.array([ex.to_complex(z) for z in charge_functional(charge_vector(alpha, beta_, gamma))])


def kernel_basis(Z: Sequence[complex], tol: float = 1e-12) -> np.ndarray:
    """Orthonormal 14 x 12 basis of the real kernel of (Re Z, Im Z)."""
    Z = np.asarray(Z, dtype=complex)
    if Z.shape != (14,):
        raise ValueError("Z must list 14 values")
    R = np.vstack([Z.real, Z.imag])
    K = null_space(R, rcond=tol)
    if K.shape[1] != 12:
        raise ValueError(f"degenerate charge: kernel has dimension {K.shape[1]}")
    return K


def restricted_definiteness(Q: QuadForm | np.ndarray, K: np.ndarray,
                            tol: float = DEFINITE_TOL) -> tuple[float, bool]:
    """(largest eigenvalue of K^T G K, negative definite?)."""
    G = Q.numeric() if isinstance(Q, QuadForm) else np.asarray(Q, dtype=float)
    K = np.asarray(K, dtype=float)
    if not np.allclose(K.T @ K, np.eye(K.shape[1]), atol=1e-9):
        raise ValueError("kernel basis must be orthonormal")
    top = float(np.linalg.eigvalsh(K.T @ G @ K)[-1])
    return top, top < -tol


# --- abstract coefficient forms -------------------------------------------------

@dataclass(frozen=True)
class CoeffVars:
    """The twelve coefficients a_i, b_i, c_i, d_i (i = 1..3) with the S, T relations built in."""
    a: tuple
    b: tuple
    S: object
    T: object

    @property
    def c(self) -> tuple:
        return tuple(self.S - x for x in self.b)

    @property
    def d(self) -> tuple:
        return tuple(self.T + x for x in self.a)

    @classmethod
    def from_coeffs(cls, a, b, c, d, tol=0) -> "CoeffVars":
        """Build from twelve values, checking c_i + b_i and d_i - a_i are constant."""
        S = {x + y for x, y in zip(b, c)} if tol == 0 else [x + y for x, y in zip(b, c)]
        T = {y - x for x, y in zip(a, d)} if tol == 0 else [y - x for x, y in zip(a, d)]
        if tol == 0:
            if len(S) != 1 or len(T) != 1:
                raise ValueError("c_i + b_i and -a_i + d_i must not depend on i")
            return cls(tuple(a), tuple(b), S.pop(), T.pop())
        if np.ptp(S) > tol or np.ptp(T) > tol:
            raise ValueError("c_i + b_i and -a_i + d_i must not depend on i")
        return cls(tuple(a), tuple(b), S[0], T[0])

    @classmethod
    def of_vector(cls, vec: LatticeVec) -> "CoeffVars":
        from .prodstab import abcd
        co = [abcd(vec, i, 1) for i in (1, 2, 3)]
        return cls.from_coeffs(*[[getattr(x, k) for x in co] for k in "abcd"])

    def full(self, i: int) -> tuple:
        """(a_i, b_i, c_i, d_i) for i = 1..6."""
        k = (i - 1) % 3
        a, b, c, d = self.a[k], self.b[k], self.c[k], self.d[k]
        return (a, b, c, d) if i <= 3 else (-b, a, -d, c)


def Y(v: CoeffVars, alpha, beta_, gamma):
    """The charge Z_(alpha, beta, gamma) written through the coefficients."""
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3), (d1, d2, d3) = v.a, v.b, v.c, v.d
    real = (c1 + b1) + alpha * (b1 - c1) + beta_ * (b2 - c2) + gamma * (b3 - c3)
    imag = (d1 - a1) + alpha * (-a1 - d1) + beta_ * (-a2 - d2) + gamma * (-a3 - d3)
    return real, imag


def P_value(v: CoeffVars, weights: Sequence, C) -> object:
    """sum_i w_i (P_i + P_{i+3}) evaluated directly on the twelve coefficients."""
    total = 0
    for i in range(1, 7):
        a, b, c, d = v.full(i)
        total = total + weights[(i - 1) % 3] * (b * c - a * d + C * (a * a + c * c))
    return total


def solve_ST(a, b, y_params: Sequence, lam):
    """S, T on ker Y at the scaled parameters lam * y_params."""
    al, be, ga = y_params
    den = 1 - lam * (al + be + ga)
    if den == 0:
        raise ValueError("1 - lambda (alpha + beta + gamma) vanishes")
    S = -2 * lam * (al * b[0] + be * b[1] + ga * b[2]) / den
    T = 2 * lam * (al * a[0] + be * a[1] + ga * a[2]) / den
    return S, T


def abstract_P(alpha_p, beta_p, gamma_p, C, lam=0, y_params: Sequence | None = None) -> QuadForm:
    """Gram of P_(alpha', beta', gamma') on ker Y in the chart (a1, a2, a3, b1, b2, b3).

    y_params fixes the charge (default: the weights). S and T are eliminated
    by Y = 0 at lam * y_params; c_i = S - b_i and d_i = T + a_i.
    """
    weights = [_num(alpha_p), _num(beta_p), _num(gamma_p)]
    y = weights if y_params is None else [_num(x) for x in y_params]
    C, lam = _num(C), _num(lam)
    if not C > 0:
        raise ValueError("C must be positive")
    exact = all(_rational(x) for x in (*weights, *y, C, lam))
    dt = object if exact else float
    one = Fraction(1) if exact else 1.0
    E = np.eye(6, dtype=int).astype(dt) * one
    a, b = E[:3], E[3:]
    S, T = solve_ST(a, b, y, lam)
    G = np.zeros((6, 6), dtype=dt)
    for k in range(3):
        c, d = S - b[k], T + a[k]
        base = _sym_outer(b[k], c) - _sym_outer(a[k], d)
        G = G + (2 * base + (_sym_outer(a[k], a[k]) + _sym_outer(c, c)) * C
                 + (_sym_outer(b[k], b[k]) + _sym_outer(d, d)) * C) * weights[k]
    params = {"alpha'": weights[0], "beta'": weights[1], "gamma'": weights[2], "C": C, "lambda": lam,
              "alpha": y[0], "beta": y[1], "gamma": y[2]}
    return QuadForm("Coeff12", G, params)


def blocks(Q: QuadForm) -> tuple[np.ndarray, np.ndarray]:
    """(a-block, b-block) of a chart form; the cross block vanishes."""
    G = Q.gram
    cross = G[:3, 3:]
    if np.any(_as_float(cross) != 0):
        raise ValueError("form mixes a and b variables")
    return G[:3, :3], G[3:, 3:]


def difference_form(y_params: Sequence, primed: Sequence, C, lam) -> QuadForm:
    """P at lambda = 0 with the primed weights switched off, minus P at lambda.

    The weights of P are y_params + primed: primed supplies the positive
    weights used where a charge parameter vanishes.
    """
    y = [_num(x) for x in y_params]
    w = [_num(p) + q for p, q in zip(primed, y)]
    base = abstract_P(*y, C, 0, y)
    return QuadForm("Coeff12", base.gram - abstract_P(*w, C, lam, y).gram,
                    {"C": _num(C), "lambda": _num(lam)})


def minor(M: np.ndarray, idx: Sequence[int]):
    """Determinant of the principal submatrix on idx (exact for Fraction entries)."""
    sub = M[np.ix_(list(idx), list(idx))]
    if sub.dtype == object:
        return sympy.Matrix(sub.tolist()).det()
    return float(np.linalg.det(sub))


# --- closed-form Sylvester minors ------------------------------------------------------

def case1_difference_formula(alpha, beta_, gamma, C, lam, x: Sequence) -> float:
    """PSD rank-one difference for the all-positive case at x = (x1, x2, x3)."""
    s = alpha + beta_ + gamma
    lin = alpha * x[0] + beta_ * x[1] + gamma * x[2]
    return -4 * lin ** 2 * lam * (-1 + C + lam * s) / (-1 + lam * s) ** 2


def case2_minors(alpha, beta_, gamma_p, C, lam) -> tuple:
    """Minors of the b-block difference on {b3}, {b1}, {b1, b3} when gamma = 0."""
    s = alpha + beta_
    den = (-1 + s * lam) ** 2
    return (-4 * (-1 + C) * gamma_p,
            -8 * alpha ** 2 * lam * (-1 + C + (s + C * gamma_p) * lam) / den,
            16 * (-1 + C) * alpha ** 2 * gamma_p * lam * (-2 + (2 * s + gamma_p) * lam + C * (2 + gamma_p * lam)) / den)


def case3_minors(alpha, beta_p, gamma_p, C, lam) -> tuple:
    """Leading minors of the b-block difference in the order (b2, b3, b1) when beta = gamma = 0."""
    return (-4 * (-1 + C) * beta_p,
            16 * (-1 + C) ** 2 * beta_p * gamma_p,
            -64 * (-1 + C) ** 2 * alpha ** 2 * beta_p * gamma_p * lam
            * (2 * (-1 + C) + 2 * alpha * lam + (1 + C) * (beta_p + gamma_p) * lam) / (-1 + alpha * lam) ** 2)


def computed_minors(case: int, params: Sequence, C, lam, block: str = "b") -> tuple:
    """The same minors computed from the Hessian of difference_form."""
    if case == 1:
        raise ValueError("case 1 is compared through the difference form itself")
    if case == 2:
        alpha, beta_, gamma_p = params
        D = difference_form((alpha, beta_, 0), (0, 0, gamma_p), C, lam)
        order = [(2,), (0,), (0, 2)]
    elif case == 3:
        alpha, beta_p, gamma_p = params
        D = difference_form((alpha, 0, 0), (0, beta_p, gamma_p), C, lam)
        order = [(1,), (1, 2), (1, 2, 0)]
    else:
        raise ValueError("case must be 1, 2 or 3")
    ablk, bblk = blocks(D)
    H = 2 * (bblk if block == "b" else ablk)
    return tuple(minor(H, idx) for idx in order)


# --- grids ------------------------------------------------------------------------

@dataclass
class GridReport:
    case: int
    points: int
    violations: list
    worst_margin: float  # largest restricted eigenvalue seen (negative is good)
    worst_point: dict | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"case": self.case, "points": self.points, "violations": self.violations,
                "worst_margin": self.worst_margin, "worst_point": self.worst_point, "ok": self.ok}


def lambda_grid(steps: int = LAMBDA_STEPS) -> list[float]:
    return list(np.linspace(0.0, 1.0, steps))


def primed_weights(params: Sequence[float]) -> list[float]:
    """Weights for the coefficient forms: each vanishing parameter gets (1 - sum) / (zeros + 2)."""
    zeros = sum(1 for x in params if x == 0)
    fill = (1 - sum(params)) / (zeros + 2)
    return [float(x) if x else fill for x in params]


def case_parameters(case: int, point: Sequence[float]) -> tuple[list, list, float]:
    """(charge parameters, weights, C) for a grid point of the given case.

    Case 1 takes (alpha, beta, gamma), case 2 (alpha, beta) with gamma = 0,
    case 3 (alpha,) with beta = gamma = 0; zero parameters get the weights of
    primed_weights (gamma' = (1 - alpha - beta) / 3, beta' = gamma' = (1 - alpha) / 4).
    Each time C = (1 - weight sum) / 2.
    """
    if case not in (1, 2, 3):
        raise ValueError("case must be 1, 2 or 3")
    y = [float(x) for x in point[:4 - case]] + [0.0] * (case - 1)
    if len(y) != 3 or min(y[:4 - case]) <= 0:
        raise ValueError(f"case {case} needs {4 - case} positive parameters")
    w = primed_weights(y)
    return y, w, (1 - sum(w)) / 2


def verify_linalg_grid(case: int, grid: Iterable[Sequence[float]], lambdas: Sequence[float] | None = None,
                       C=None, tol: float = DEFINITE_TOL) -> GridReport:
    """All eigenvalues of abstract_P on ker Y must be negative at every grid point and lambda."""
    lambdas = lambda_grid() if lambdas is None else lambdas
    worst, worst_pt, bad, n = -np.inf, None, [], 0
    for point in grid:
        y, w, c_default = case_parameters(case, point)
        c = c_default if C is None else C
        if min(w) <= 0 or sum(w) + c >= 1 and C is None:
            raise ValueError(f"grid point {point} violates the case constraints")
        for lam in lambdas:
            n += 1
            top = float(np.linalg.eigvalsh(abstract_P(*w, c, lam, y).numeric())[-1])
            rec = {"point": list(map(float, point)), "lambda": float(lam), "C": float(c), "max_eig": top}
            if top > worst:
                worst, worst_pt = top, rec
            if not top < -tol:
                bad.append(rec)
    return GridReport(case, n, bad, float(worst), worst_pt)


def cone_grid(values: Sequence[float], dim: int = 3, strict: bool = True) -> list[tuple]:
    """Points of values^dim with sum < 1."""
    return [p for p in product(values, repeat=dim) if (sum(p) < 1 if strict else sum(p) <= 1)]


def kernel_definiteness(point: Sequence[float], lam: float, C=None, eta_fraction: float = 0.5,
                        weights: Sequence[float] | None = None) -> tuple[float, bool]:
    """combined_Q with eta_i = eta_fraction C / C_S on ker Z_(lam point)."""
    c = (1 - sum(point)) / 2 if C is None else C
    eta = [eta_fraction * eta_bound(c)] * 6
    w = list(point) if weights is None else list(weights)
    Q = combined_Q(*w, eta)
    K = kernel_basis(charge_row(*[lam * float(x) for x in point]))
    return restricted_definiteness(Q, K)


def support_grid(points: Iterable[Sequence[float]], lambdas: Sequence[float] | None = None,
                 eta_fraction: float = 0.5) -> GridReport:
    lambdas = lambda_grid() if lambdas is None else lambdas
    worst, worst_pt, bad, n = -np.inf, None, [], 0
    for point in points:
        c = (1 - sum(point)) / 2
        eta = [eta_fraction * eta_bound(c)] * 6
        G = combined_Q(*point, eta).numeric()
        for lam in lambdas:
            n += 1
            K = kernel_basis(charge_row(*[lam * float(x) for x in point]))
            top, neg = restricted_definiteness(G, K)
            rec = {"point": list(map(float, point)), "lambda": float(lam), "eta": eta[0], "max_eig": top}
            if top > worst:
                worst, worst_pt = top, rec
            if not neg:
                bad.append(rec)
    return GridReport(0, n, bad, float(worst), worst_pt)


@dataclass
class SupportCheck:
    verdict: str  # "negative-definite" or "violated"
    worst_margin: float
    grid: list
    weights: list
    C: float
    eta: list
    surface_constant: str

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "worst_margin": self.worst_margin, "weights": self.weights,
                "C": self.C, "eta": self.eta, "surface_constant": self.surface_constant, "grid": self.grid}


def support_check(alpha, beta_, gamma, lambda_steps: int = LAMBDA_STEPS, eta: Sequence[float] | None = None,
                  C: float | None = None) -> SupportCheck:
    """Definiteness of combined_Q on ker Z_(lam alpha, lam beta, lam gamma) and of abstract_P on ker Y.

    Zero parameters get primed weights; C defaults to (1 - weight sum) / 2 and
    eta to C / (2 C_S) in every slot.
    """
    y = [float(alpha), float(beta_), float(gamma)]
    if min(y) < 0 or sum(y) >= 1:
        raise ValueError("need alpha, beta, gamma >= 0 with alpha + beta + gamma < 1")
    w = primed_weights(y)
    c = (1 - sum(w)) / 2 if C is None else float(C)
    if eta is None:
        eta6 = [0.5 * eta_bound(c)] * 6
    else:
        eta6 = [float(e) for e in eta]
        eta6 = eta6 * 6 if len(eta6) == 1 else eta6
    G = combined_Q(*w, eta6).numeric()
    rows, worst = [], -np.inf
    for lam in lambda_grid(lambda_steps):
        K = kernel_basis(charge_row(*[lam * x for x in y]))
        top, _ = restricted_definiteness(G, K)
        ptop = float(np.linalg.eigvalsh(abstract_P(*w, c, lam, y).numeric())[-1])
        rows.append({"lambda": float(lam), "lattice_max_eig": top, "abstract_max_eig": ptop})
        worst = max(worst, top, ptop)
    verdict = "negative-definite" if worst < -DEFINITE_TOL else "violated"
    return SupportCheck(verdict, float(worst), rows, w, c, eta6, str(surface_support_constant().value))


# --- vanishing ------------------------------------------------------------------

def vanishing_check(vec: LatticeVec) -> bool:
    """True iff v1(Phi_i vec) = 0 for all six transforms (which forces vec = 0)."""
    from .lattice import transform_matrix
    zero = all(not project_v(transform_matrix(i) @ vec)[0] for i in range(1, 7))
    if zero:
        assert not vec, "six v1 projections vanish on a nonzero class"
    return zero

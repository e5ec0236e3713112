"""Sp(6, R) x GL+(2, R) acting on 3-forms, and symplectic generator words.

Symplectic matrices use block coordinates (x1, x2, x3, y1, y2, y3) with
J6 = [[0, I], [-I, 0]]. A unitary U = A + iB acting on z = x + iy is the
block matrix [[A, -B], [B, A]].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from .trilinear import MONOMIALS, ThreeForm

J6 = np.block([[np.zeros((3, 3)), np.eye(3)], [-np.eye(3), np.zeros((3, 3))]])
SYMPLECTIC_TOL = 1e-10


def symplectic_defect(g: np.ndarray) -> float:
    g = np.asarray(g, float)
    scale = max(1.0, float(np.linalg.norm(g)) ** 2)
    return float(np.linalg.norm(g.T @ J6 @ g - J6)) / scale


def is_symplectic(g: np.ndarray, tol: float = SYMPLECTIC_TOL) -> bool:
    return symplectic_defect(g) <= tol


@dataclass(frozen=True)
class GroupElement:
    sp: np.ndarray = field(default_factory=lambda: np.eye(6))
    gl2: np.ndarray = field(default_factory=lambda: np.eye(2))

    def __post_init__(self):
        sp = np.array(self.sp, float).reshape(6, 6)
        gl2 = np.array(self.gl2, float).reshape(2, 2)
        if not is_symplectic(sp):
            raise ValueError(f"sp factor is not symplectic (defect {symplectic_defect(sp):.2e})")
        if np.linalg.det(gl2) <= 0:
            raise ValueError("gl2 factor must have positive determinant")
        sp.setflags(write=False)
        gl2.setflags(write=False)
        object.__setattr__(self, "sp", sp)
        object.__setattr__(self, "gl2", gl2)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.sp @ other.sp, self.gl2 @ other.gl2)

    def inverse(self) -> "GroupElement":
        return GroupElement(-J6 @ self.sp.T @ J6, np.linalg.inv(self.gl2))

    def to_json(self) -> dict:
        return {"sp": self.sp.tolist(), "gl2": self.gl2.tolist()}

    @classmethod
    def from_json(cls, data) -> "GroupElement":
        return cls(np.array(data["sp"]), np.array(data["gl2"]))


IDENTITY = GroupElement()


def rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def unitary_to_sp(U: np.ndarray) -> np.ndarray:
    U = np.asarray(U, complex)
    A, B = U.real, U.imag
    return np.block([[A, -B], [B, A]])


def sp_to_unitary(g: np.ndarray) -> np.ndarray:
    return g[:3, :3] + 1j * g[3:, :3]


# --- the action on forms ---------------------------------------------------

@lru_cache(maxsize=None)
def _zeta_block() -> tuple[np.ndarray, np.ndarray]:
    """Rows are dz1..dz3, dzbar1..dzbar3 as covectors in block coordinates."""
    Z = np.zeros((6, 6), complex)
    for k in range(3):
        Z[k, k], Z[k, 3 + k] = 1, 1j
        Z[3 + k, k], Z[3 + k, 3 + k] = 1, -1j
    return Z, np.linalg.inv(Z)


_ROWS = np.array(MONOMIALS)


def lambda3(T: np.ndarray) -> np.ndarray:
    """Third exterior power: L[I, J] = det T[I, J]."""
    return np.linalg.det(T[_ROWS[:, None, :, None], _ROWS[None, :, None, :]])


def pullback_matrix(h: np.ndarray) -> np.ndarray:
    """20 x 20 matrix of the pullback along the linear map h."""
    Z, Zinv = _zeta_block()
    T = Z @ h @ Zinv
    return lambda3(T).T


def act_sp(g: np.ndarray, omega: ThreeForm) -> ThreeForm:
    ginv = -J6 @ np.asarray(g).T @ J6
    return ThreeForm(pullback_matrix(ginv) @ omega.coeffs)


def act_values(T: np.ndarray, omega: ThreeForm) -> ThreeForm:
    """Apply T in GL(2, R) to the values, with C = R^2 via u + iv <-> (u, v)."""
    conj = omega.conjugate()
    re = (omega + conj) * 0.5
    im = (omega - conj) * (-0.5j)
    return re * complex(T[0, 0], T[1, 0]) + im * complex(T[0, 1], T[1, 1])


def act(g: GroupElement, omega: ThreeForm) -> ThreeForm:
    """Left action (g . Omega)(v) = T . Omega(sp^{-1} v)."""
    out = act_sp(g.sp, omega)
    if not np.array_equal(g.gl2, np.eye(2)):
        out = act_values(g.gl2, out)
    return out


# --- Cartan data -----------------------------------------------------------

SYM_PAIRS = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))


def sym_unit(i: int, j: int) -> np.ndarray:
    E = np.zeros((3, 3))
    E[i, j] = E[j, i] = 1.0
    return E


@lru_cache(maxsize=None)
def p_basis() -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Fourteen (sp6, sl2) pairs: six diag(A, -A), six [[0, B], [B, 0]], then X and Y."""
    Z3 = np.zeros((3, 3))
    Z2 = np.zeros((2, 2))
    Z6 = np.zeros((6, 6))
    out = []
    for i, j in SYM_PAIRS:
        A = sym_unit(i, j)
        out.append((np.block([[A, Z3], [Z3, -A]]), Z2))
    for i, j in SYM_PAIRS:
        B = sym_unit(i, j)
        out.append((np.block([[Z3, B], [B, Z3]]), Z2))
    out.append((Z6, np.array([[1.0, 0.0], [0.0, -1.0]])))
    out.append((Z6, np.array([[0.0, 1.0], [1.0, 0.0]])))
    return tuple(out)


def exp_p(coeffs: Sequence[float]) -> GroupElement:
    """exp of sum_a coeffs[a] X_a, factor by factor."""
    basis = p_basis()
    A = sum(c * b[0] for c, b in zip(coeffs, basis))
    B = sum(c * b[1] for c, b in zip(coeffs, basis))
    return GroupElement(expm(A), expm(B))


def random_unitary(rng: np.random.Generator, n: int = 3) -> np.ndarray:
    """Haar unitary: QR of a complex Gaussian with the phase of R's diagonal removed."""
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_unitaries(rng: np.random.Generator, count: int, n: int = 3) -> np.ndarray:
    Z = (rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R, axis1=-2, axis2=-1)
    return Q * (d / np.abs(d))[:, None, :]


def random_group_element(rng: np.random.Generator, scale: float = 0.3) -> GroupElement:
    """Random unitary times exp of a Gaussian p-direction, with a random rotation and dilation of values."""
    P = exp_p(scale * rng.standard_normal(14))
    K = GroupElement(unitary_to_sp(random_unitary(rng)), rotation(rng.uniform(0, 2 * np.pi)))
    D = GroupElement(np.eye(6), np.exp(rng.uniform(-0.5, 0.5)) * np.eye(2))
    return D @ K @ P


# --- generator words -------------------------------------------------------

def N_mat(A) -> np.ndarray:
    A = np.asarray(A, float)
    return np.block([[np.eye(3), A], [np.zeros((3, 3)), np.eye(3)]])


def H_mat(A) -> np.ndarray:
    A = np.asarray(A, float)
    return np.block([[A, np.zeros((3, 3))], [np.zeros((3, 3)), np.linalg.inv(A).T]])


@dataclass(frozen=True)
class Factor:
    kind: str  # "N", "H" or "J"
    A: object = None  # 3x3 nested list (floats or Fractions)

    def matrix(self) -> np.ndarray:
        if self.kind == "J":
            return J6.copy()
        A = np.array([[float(x) for x in r] for r in self.A])
        return N_mat(A) if self.kind == "N" else H_mat(A)

    def exact(self) -> list[list[Fraction]]:
        if self.kind == "J":
            return [[Fraction(int(x)) for x in r] for r in J6]
        A = [[Fraction(x) for x in r] for r in self.A]
        Z = [[Fraction(0)] * 3 for _ in range(3)]
        I3 = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
        if self.kind == "N":
            return _block(I3, A, Z, I3)
        return _block(A, Z, Z, _transpose(_inv3(A)))

    def to_json(self) -> dict:
        if self.kind == "J":
            return {"kind": "J"}
        out = []
        for r in self.A:
            row = []
            for x in r:
                if isinstance(x, Fraction):
                    row.append(f"{x.numerator}/{x.denominator}")
                else:
                    row.append(float(x))
            out.append(row)
        return {"kind": self.kind, "A": out}

    @classmethod
    def from_json(cls, data) -> "Factor":
        if data["kind"] == "J":
            return cls("J")
        A = [[Fraction(x) if isinstance(x, str) else float(x) for x in r] for r in data["A"]]
        return cls(data["kind"], A)


def _block(A, B, C, D):
    return [a + b for a, b in zip(A, B)] + [c + d for c, d in zip(C, D)]


def _transpose(A):
    return [list(r) for r in zip(*A)]


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(r, c)) for c in zip(*B)] for r in A]


def _inv3(A):
    (a, b, c), (d, e, f), (g, h, i) = A
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if det == 0:
        raise ZeroDivisionError("singular 3x3 block")
    adj = [[e * i - f * h, c * h - b * i, b * f - c * e],
           [f * g - d * i, a * i - c * g, c * d - a * f],
           [d * h - e * g, b * g - a * h, a * e - b * d]]
    return [[x / det for x in r] for r in adj]


@dataclass(frozen=True)
class GeneratorWord:
    factors: tuple
    rational: bool = False

    def matrix(self) -> np.ndarray:
        out = np.eye(6)
        for f in self.factors:
            out = out @ f.matrix()
        return out

    def exact_matrix(self) -> list[list[Fraction]]:
        if not self.rational:
            raise ValueError("word is not rational-tagged")
        out = [[Fraction(int(i == j)) for j in range(6)] for i in range(6)]
        for f in self.factors:
            out = _matmul(out, f.exact())
        return out

    def __len__(self):
        return len(self.factors)

    def to_json(self) -> list:
        return [f.to_json() for f in self.factors]

    @classmethod
    def from_json(cls, data) -> "GeneratorWord":
        factors = tuple(Factor.from_json(d) for d in data)
        rational = all(f.kind == "J" or all(isinstance(x, Fraction) for r in f.A for x in r) for f in factors)
        return cls(factors, rational)


def exact_symplectic(g: Sequence[Sequence[Fraction]]) -> bool:
    J = [[Fraction(int(x)) for x in r] for r in J6]
    return _matmul(_matmul(_transpose(g), J), g) == J


def _simplify(factors: list[tuple[str, np.ndarray | None]]) -> list[tuple[str, np.ndarray | None]]:
    """Merge neighbours, drop trivial factors, turn J.J into a central sign."""
    sign = 1
    changed = True
    while changed:
        changed = False
        out: list = []
        for kind, A in factors:
            if kind == "N" and not np.any(A):
                changed = True
                continue
            if kind == "H" and np.array_equal(A, np.eye(3)):
                changed = True
                continue
            if out and out[-1][0] == kind:
                prev = out.pop()
                changed = True
                if kind == "J":
                    sign = -sign
                elif kind == "N":
                    out.append(("N", prev[1] + A))
                else:
                    out.append(("H", prev[1] @ A))
                continue
            out.append((kind, A))
        factors = out
    if sign < 0:
        for k, (kind, A) in enumerate(factors):
            if kind == "H":
                factors[k] = ("H", -A)
                break
        else:
            factors.insert(0, ("H", -np.eye(3)))
        # the sign may have turned an H factor into the identity
        return _simplify(factors)
    return factors


def _direct_word(g: np.ndarray) -> list:
    """g = J N(-C A^-1) J H(-A) N(A^-1 B) for invertible upper-left block A."""
    A, B, C = g[:3, :3], g[:3, 3:], g[3:, :3]
    Ainv = np.linalg.inv(A)
    M = C @ Ainv
    S = Ainv @ B
    M = (M + M.T) / 2
    S = (S + S.T) / 2
    return [("J", None), ("N", -M), ("J", None), ("H", -A), ("N", S)]


def _regularizers() -> list[tuple[str, np.ndarray | None]]:
    out: list = [None, ("J", None)]
    for S in (np.eye(3), -np.eye(3), np.diag([1.0, 2.0, 3.0]),
              np.array([[1, 1, 0], [1, 0, 1], [0, 1, 1.0]])):
        out.append(("N", S))
    return out


def nhj_decompose(g: np.ndarray, max_cond: float = 1e8) -> GeneratorWord:
    """Factor a symplectic matrix into N(A), H(A) and J generators."""
    g = np.asarray(g, float)
    if not is_symplectic(g):
        raise ValueError(f"matrix is not symplectic (defect {symplectic_defect(g):.2e})")
    best = None
    for reg in _regularizers():
        if reg is None:
            h, prefix = g, []
        elif reg[0] == "J":
            h, prefix = -J6 @ g, [("J", None)]
        else:
            h, prefix = N_mat(reg[1]) @ g, [("N", -reg[1])]
        c = np.linalg.cond(h[:3, :3])
        if best is None or c < best[0]:
            best = (c, h, prefix)
        if c < 20:
            break
    cond, h, prefix = best
    if not np.isfinite(cond) or cond > max_cond:
        raise ArithmeticError(f"decomposition failed: pivot block condition number {cond:.3e}")
    factors = _simplify(prefix + _direct_word(h))
    return GeneratorWord(tuple(Factor(k, None if A is None else A.tolist()) for k, A in factors))


def _exact_entries(M):
    return [[Fraction(x) for x in r] for r in M]


def nhj_decompose_exact(g: Sequence[Sequence]) -> GeneratorWord:
    """Exact decomposition for rational symplectic input (same word shape)."""
    g = _exact_entries(g)
    if not exact_symplectic(g):
        raise ValueError("matrix is not symplectic")
    A = [r[:3] for r in g[:3]]
    try:
        _inv3(A)
        prefix, h = [], g
    except ZeroDivisionError:
        prefix, h = None, None
        J = _exact_entries(J6)
        minusJ = [[-x for x in r] for r in J]
        for reg in _regularizers()[1:]:
            if reg[0] == "J":
                cand, pre = _matmul(minusJ, g), [Factor("J")]
            else:
                S = _exact_entries(reg[1])
                cand, pre = _matmul(Factor("N", S).exact(), g), [Factor("N", [[-x for x in r] for r in S])]
            try:
                _inv3([r[:3] for r in cand[:3]])
            except ZeroDivisionError:
                continue
            prefix, h = pre, cand
            break
        if h is None:
            raise ArithmeticError("no regularizer made the pivot block invertible")
    A = [r[:3] for r in h[:3]]
    B = [r[3:] for r in h[:3]]
    C = [r[:3] for r in h[3:]]
    Ainv = _inv3(A)
    M = _matmul(C, Ainv)
    S = _matmul(Ainv, B)
    neg = lambda X: [[-x for x in r] for r in X]
    factors = list(prefix) + [Factor("J"), Factor("N", neg(M)), Factor("J"), Factor("H", neg(A)), Factor("N", S)]
    return GeneratorWord(tuple(_simplify_exact(factors)), rational=True)


def _simplify_exact(factors: list[Factor]) -> list[Factor]:
    """The rational counterpart of _simplify."""
    I3 = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    neg = lambda X: [[-x for x in r] for r in X]
    sign, out = 1, []
    for f in factors:
        if f.kind == "N" and not any(x for r in f.A for x in r):
            continue
        if f.kind == "H" and f.A == I3:
            continue
        if out and out[-1].kind == f.kind:
            prev = out.pop()
            if f.kind == "J":
                sign = -sign
            elif f.kind == "N":
                out.append(Factor("N", [[a + b for a, b in zip(r, q)] for r, q in zip(prev.A, f.A)]))
            else:
                out.append(Factor("H", _matmul(prev.A, f.A)))
            continue
        out.append(f)
    if len(out) < len(factors) or sign < 0:
        if sign < 0:
            k = next((k for k, f in enumerate(out) if f.kind == "H"), None)
            if k is None:
                out.insert(0, Factor("H", neg(I3)))
            else:
                out[k] = Factor("H", neg(out[k].A))
        return _simplify_exact(out)
    return out


def _is_exactly_rational(g: np.ndarray, max_den: int = 1 << 20) -> list[list[Fraction]] | None:
    out = []
    for r in g:
        row = []
        for x in r:
            f = Fraction(float(x)).limit_denominator(max_den)
            if float(f) != float(x):
                return None
            row.append(f)
        out.append(row)
    return out if exact_symplectic(out) else None


def _rational_factor(f: Factor, den: int) -> Factor:
    if f.kind == "J":
        return f
    A = np.array(f.A, float)
    if f.kind == "N":
        A = (A + A.T) / 2
    R = [[Fraction(float(x)).limit_denominator(den) for x in r] for r in A]
    if f.kind == "N":
        R = [[R[min(i, j)][max(i, j)] for j in range(3)] for i in range(3)]
    return Factor(f.kind, R)


def rationalize(g: np.ndarray, eps: float, max_den: int = 10 ** 15) -> GeneratorWord:
    """Rational word whose exact product is symplectic and within eps of g (Frobenius)."""
    g = np.asarray(g, float)
    exact = _is_exactly_rational(g)
    if exact is not None:
        return nhj_decompose_exact(exact)
    word = nhj_decompose(g)
    den = 10
    while den <= max_den:
        factors = []
        for f in word.factors:
            rf = _rational_factor(f, den)
            if rf.kind == "H" and _det3(rf.A) == 0:
                break
            factors.append(rf)
        else:
            cand = GeneratorWord(tuple(factors), rational=True)
            prod = np.array([[float(x) for x in r] for r in cand.exact_matrix()])
            if np.linalg.norm(prod - g) <= eps:
                return cand
        den *= 10
    raise ArithmeticError(f"eps={eps} not reached with denominators up to {max_den}")


def _det3(A) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = A
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

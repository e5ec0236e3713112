"""The mirror isomorphism between N(E^3) (x) C and primitive 3-forms on C^3.

The isomorphism is defined by a 14-row correspondence table (seven rows
and their complex conjugates). The 3-forms are handled exactly as elements
of the exterior algebra on dx1, dy1, ..., dx3, dy3 (reusing the cohomology
engine as an abstract six-generator algebra), and converted to the float
dz/dzbar basis of the trilinear module on output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from sympy.polys.matrices import DomainMatrix

from . import exact as ex
from .cohomology import CohomClass, linear_substitution, monomials, wedge, wedge_all
from .exact import I, ONE, ZERO, cq
from .lattice import (
    LatticeMatrix, LatticeVec, autoeq_matrix, class_of, coords_of, divisor_class, euler_pairing,
    exp_class_of,
)
from .trilinear import INDEX, MONOMIALS, ThreeForm

REAL3 = monomials("E3", 3)  # the 20 real 3-monomials in dx/dy generators


# --- exact dz/dzbar forms --------------------------------------------------

def dz(k: int) -> CohomClass:
    return CohomClass("E3", {(2 * k - 1,): ONE, (2 * k,): I})


def dzbar(k: int) -> CohomClass:
    return CohomClass("E3", {(2 * k - 1,): ONE, (2 * k,): -I})


def _gen(name: str) -> CohomClass:
    return dzbar(int(name[4:])) if name.startswith("zbar") else dz(int(name[1:]))


def zeta_product(*names: str) -> CohomClass:
    return wedge_all((_gen(n) for n in names), "E3")


def real_vector(form: CohomClass) -> list:
    """Coefficients on the 20 real 3-monomials (exact)."""
    bad = form.degrees() - {3}
    if bad:
        raise ValueError("expected a 3-form")
    return [form.coeff(m) for m in REAL3]


@lru_cache(maxsize=None)
def _zeta_images() -> dict:
    """dx_k = (dz_k + dzbar_k)/2 and dy_k = (dz_k - dzbar_k)/(2i), written on zeta generators 1..6."""
    half = cq(1, 0) / cq(2)
    neg_half_i = cq(0, -1) / cq(2)
    M = [[ZERO] * 6 for _ in range(6)]
    for k in range(3):
        M[2 * k][k] = half
        M[2 * k][k + 3] = half
        M[2 * k + 1][k] = neg_half_i
        M[2 * k + 1][k + 3] = -neg_half_i
    return M


def to_three_form(form: CohomClass) -> ThreeForm:
    """Convert an exact real-basis 3-form to float dz/dzbar coefficients."""
    zeta = linear_substitution(form, _zeta_images())
    out = np.zeros(20, complex)
    for idx, c in zeta.items():
        out[INDEX[tuple(i - 1 for i in idx)]] = ex.to_complex(c)
    return ThreeForm(out)


# --- the correspondence table ---------------------------------------------

def _lattice(c: CohomClass) -> LatticeVec:
    return coords_of(c)


@dataclass(frozen=True)
class MirrorRow:
    label: str
    vec: LatticeVec
    form: CohomClass


# Orientation of the correspondence rows for the F_ij classes. "lexicographic"
# uses (dz_i dzbar_i + dzbar_j dz_j) dzbar_k for all i < j. "cyclic" orients
# each pair along 1 -> 2 -> 3 -> 1, which negates the (1, 3) row; only the
# cyclic choice is equivariant under permutations of the factors.
ORIENTATIONS = ("lexicographic", "cyclic")


def _check_orientation(orientation: str) -> str:
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}")
    return orientation


def _base_rows(orientation: str = "lexicographic") -> list[MirrorRow]:
    _check_orientation(orientation)
    rows = []
    for label, signs, gens in (
        ("exp(i(D1+D2+D3))", (1, 1, 1), ("z1", "z2", "z3")),
        ("exp(i(D1-D2-D3))", (1, -1, -1), ("z1", "zbar2", "zbar3")),
        ("exp(i(-D1+D2-D3))", (-1, 1, -1), ("zbar1", "z2", "zbar3")),
        ("exp(i(-D1-D2+D3))", (-1, -1, 1), ("zbar1", "zbar2", "z3")),
    ):
        D = divisor_class("D1").scale(signs[0]) + divisor_class("D2").scale(signs[1]) + divisor_class("D3").scale(signs[2])
        rows.append(MirrorRow(label, _lattice(exp_class_of(D)), zeta_product(*gens)))
    for i, j, k in ((1, 2, 3), (1, 3, 2), (2, 3, 1)):
        F = divisor_class(f"F{i}{j}")
        cls = F.scale(cq(0, 2)) + wedge(divisor_class(f"D{k}"), F).scale(2)
        form = wedge(
            zeta_product(f"z{i}", f"zbar{i}") + zeta_product(f"zbar{j}", f"z{j}"),
            _gen(f"zbar{k}"),
        )
        if orientation == "cyclic" and (i, j) == (1, 3):
            form = -form
        rows.append(MirrorRow(f"2iF{i}{j}+2D{k}F{i}{j}", _lattice(cls), form))
    return rows


@lru_cache(maxsize=None)
def mirror_table(orientation: str = "lexicographic") -> tuple[MirrorRow, ...]:
    rows = _base_rows(orientation)
    conj = [MirrorRow(f"conj({r.label})", r.vec.conjugate(), r.form.conjugate()) for r in rows]
    return tuple(rows + conj)


@lru_cache(maxsize=None)
def _table_matrices(orientation: str = "lexicographic") -> tuple[DomainMatrix, DomainMatrix]:
    rows = mirror_table(orientation)
    L = ex.from_columns([r.vec.coords for r in rows])
    R = ex.from_columns([real_vector(r.form) for r in rows])
    return L, R


@lru_cache(maxsize=None)
def transfer_matrix(orientation: str = "lexicographic") -> DomainMatrix:
    """20 x 14 exact matrix: lattice coordinates -> real-basis 3-form coefficients."""
    L, R = _table_matrices(orientation)
    return R * L.inv()


@lru_cache(maxsize=None)
def _transfer_pinv(orientation: str = "lexicographic") -> DomainMatrix:
    # left inverse through the primitive coordinates: rows of T pick a 14-minor of full rank
    T = transfer_matrix(orientation)
    rows = T.to_list()
    chosen: list[int] = []
    for r in range(len(rows)):
        trial = DomainMatrix([rows[k] for k in chosen + [r]], (len(chosen) + 1, 14), ex.QQ_I)
        if trial.rank() == len(chosen) + 1:
            chosen.append(r)
        if len(chosen) == 14:
            break
    S = DomainMatrix([rows[k] for k in chosen], (14, 14), ex.QQ_I).inv()
    sel = ex.zeros(14, 20).to_list()
    for a, r in enumerate(chosen):
        sel[a][r] = ONE
    return S * DomainMatrix(sel, (14, 20), ex.QQ_I)


def table_ranks(orientation: str = "lexicographic") -> tuple[int, int]:
    L, R = _table_matrices(orientation)
    return L.rank(), R.rank()


def beta_exact(v: LatticeVec, orientation: str = "lexicographic") -> CohomClass:
    col = DomainMatrix([[c] for c in v.coords], (14, 1), ex.QQ_I)
    out = (transfer_matrix(orientation) * col).to_list()
    return CohomClass("E3", {m: out[k][0] for k, m in enumerate(REAL3)})


def beta(v: LatticeVec, orientation: str = "lexicographic") -> ThreeForm:
    return to_three_form(beta_exact(v, orientation))


def beta_inv_exact(form: CohomClass, orientation: str = "lexicographic") -> LatticeVec:
    vec = real_vector(form)
    col = DomainMatrix([[c] for c in vec], (20, 1), ex.QQ_I)
    v = LatticeVec("E3", tuple(r[0] for r in (_transfer_pinv(orientation) * col).to_list()))
    if beta_exact(v, orientation) != form:
        raise ValueError("form is not primitive")
    return v


@lru_cache(maxsize=None)
def _beta_float(orientation: str = "lexicographic") -> np.ndarray:
    """20 x 14 complex matrix of beta into dz/dzbar coefficients."""
    cols = [beta(LatticeVec.basis(k), orientation).coeffs for k in range(14)]
    return np.array(cols).T


def beta_coords(omega: ThreeForm, tol: float = 1e-9, orientation: str = "lexicographic") -> np.ndarray:
    """Float lattice coordinates of a primitive form."""
    from .trilinear import primitivity_residual
    if primitivity_residual(omega) > tol:
        raise ValueError("form is not primitive")
    B = _beta_float(orientation)
    x, *_ = np.linalg.lstsq(B, omega.coeffs, rcond=None)
    return x


def beta_inv(omega: ThreeForm, tol: float = 1e-9, orientation: str = "lexicographic") -> LatticeVec:
    """Lattice vector of a primitive form; exact when the coordinates are small rationals."""
    x = beta_coords(omega, tol, orientation)
    coords = []
    for z in x:
        re = Fraction(float(z.real)).limit_denominator(10 ** 6)
        im = Fraction(float(z.imag)).limit_denominator(10 ** 6)
        coords.append(cq(re, im))
    v = LatticeVec("E3", tuple(coords))
    if not beta(v, orientation).allclose(omega, 1e-10):
        raise ValueError("coordinates are not rational with small denominators; use beta_coords")
    return v


# --- tensor-power construction (cross-check) -------------------------------

def _one_dim_image(k: int, piece: tuple[int, ...]) -> CohomClass:
    # tau = i: 1 -> dx, dx -> 1, dy -> dx dy, dx dy -> dy on factor k
    x, y = 2 * k - 1, 2 * k
    images = {(): (x,), (x,): (), (y,): (x, y), (x, y): (y,)}
    return CohomClass("E3", {images[piece]: ONE})


def beta_tensor_exact(c: CohomClass, koszul: bool = True) -> CohomClass:
    """Third tensor power of the one-dimensional correspondence at tau = i.

    With koszul=True the odd map picks up (-1)^(degree) each time it moves
    past an earlier tensor factor.
    """
    out = CohomClass.zero("E3")
    for idx, coef in c.items():
        pieces = [tuple(i for i in idx if (i + 1) // 2 == k) for k in (1, 2, 3)]
        img = wedge_all((_one_dim_image(k + 1, p) for k, p in enumerate(pieces)), "E3")
        if koszul and (2 * len(pieces[0]) + len(pieces[1])) % 2:
            img = -img
        out = out + img.scale(coef)
    return out


def tensor_row_signs(orientation: str = "lexicographic", koszul: bool = True) -> dict[str, object]:
    """For each base row, the scalar r with beta_tensor(class) = r * form (None if not proportional)."""
    out = {}
    for row in _base_rows(orientation):
        img = beta_tensor_exact(class_of(row.vec), koszul)
        ratios = set()
        for k in set(dict(img.items())) | set(dict(row.form.items())):
            f = row.form.coeff(k)
            ratios.add(img.coeff(k) / f if f else None)
        out[row.label] = ratios.pop() if len(ratios) == 1 else None
    return out


# --- Sp(6) acting through the mirror --------------------------------------

# Block coordinates (x1, x2, x3, y1, y2, y3) -> interleaved (x1, y1, x2, y2, x3, y3).
_BLOCK_TO_INTERLEAVED = [0, 2, 4, 1, 3, 5]
# y -> -y: identifies the symplectic coordinates with the mirror torus so
# that N(A) corresponds to tensoring by the line bundle with class A.
MIRROR_FLIP = [1, 1, 1, -1, -1, -1]


def _interleave(g):
    n = 6
    out = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            out[_BLOCK_TO_INTERLEAVED[a]][_BLOCK_TO_INTERLEAVED[b]] = g[a][b]
    return out


def exact_matrix(g) -> list[list[Fraction]]:
    return [[Fraction(x) for x in r] for r in g]


def check_exact_symplectic(g) -> bool:
    from .groups import exact_symplectic
    return exact_symplectic(exact_matrix(g))


def _exact_inverse_symplectic(g):
    # g^-1 = -J g^T J
    n = 3
    A = [r[:n] for r in g[:n]]
    B = [r[n:] for r in g[:n]]
    C = [r[:n] for r in g[n:]]
    D = [r[n:] for r in g[n:]]
    t = lambda M: [list(r) for r in zip(*M)]
    neg = lambda M: [[-x for x in r] for r in M]
    top = [a + b for a, b in zip(t(D), neg(t(B)))]
    bot = [c + d for c, d in zip(neg(t(C)), t(A))]
    return top + bot


def mirror_conjugate(g):
    """K g K with K = diag(1, 1, 1, -1, -1, -1)."""
    return [[g[a][b] * MIRROR_FLIP[a] * MIRROR_FLIP[b] for b in range(6)] for a in range(6)]


def form_action_exact(g, form: CohomClass) -> CohomClass:
    """Exact left action of a rational symplectic g (after the mirror identification) on a real-basis form."""
    h = _exact_inverse_symplectic(mirror_conjugate(exact_matrix(g)))
    hi = _interleave(h)
    M = [[cq(hi[a][b]) for b in range(6)] for a in range(6)]
    return linear_substitution(form, M)


def sp_action_matrix(g, orientation: str = "lexicographic") -> LatticeMatrix:
    """beta^-1 o (action of g on primitive 3-forms) o beta, exactly."""
    g = exact_matrix(g)
    if not check_exact_symplectic(g):
        raise ValueError("matrix is not exactly symplectic")
    cols = []
    for k in range(14):
        image = form_action_exact(g, beta_exact(LatticeVec.basis(k), orientation))
        cols.append(beta_inv_exact(image, orientation).coords)
    return LatticeMatrix("sp", ex.from_columns(cols))


def integer_block(kind: str, A=None) -> list[list[Fraction]]:
    from .groups import Factor
    if kind == "J":
        return Factor("J").exact()
    return Factor(kind, [[Fraction(x) for x in r] for r in A]).exact()


def permutation_matrix(perm: Sequence[int]) -> list[list[int]]:
    """P with P e_k = e_perm[k] (0-based)."""
    P = [[0] * 3 for _ in range(3)]
    for k, p in enumerate(perm):
        P[p][k] = 1
    return P


# factor shift k -> k+1 on the mirror side
SHIFT = permutation_matrix([1, 2, 0])


def _sym(i, j):
    A = [[0] * 3 for _ in range(3)]
    A[i][j] = A[j][i] = 1
    return A


def lattice_partner(kind: str) -> tuple[list[list[Fraction]], LatticeMatrix]:
    """Generator of Sp(6, Z) and its lattice counterpart.

    kinds: "J", "N11", "N22", "N33", "N12", "N13", "N23", "perm".
    """
    if kind == "J":
        return integer_block("J"), autoeq_matrix("Phi")
    if kind == "perm":
        return integer_block("H", SHIFT), autoeq_matrix("F")
    if kind.startswith("N") and len(kind) == 3 and set(kind[1:]) <= set("123"):
        i, j = int(kind[1]) - 1, int(kind[2]) - 1
        if i == j:
            return integer_block("N", _sym(i, i)), autoeq_matrix(f"TensorO(D{i + 1})")
        return integer_block("N", _sym(i, j)), autoeq_matrix(f"TensorO(-F{i + 1}{j + 1})")
    raise ValueError(f"no lattice counterpart for {kind!r}")


def equivariance_residual(g, M: LatticeMatrix, orientation: str = "lexicographic") -> int:
    """min over signs of the number of basis vectors where beta(M v) != +-g.beta(v); 0 means exact."""
    best = None
    for sign in (1, -1):
        bad = 0
        for k in range(14):
            lhs = beta_exact(M @ LatticeVec.basis(k), orientation)
            rhs = form_action_exact(g, beta_exact(LatticeVec.basis(k), orientation)).scale(sign)
            if lhs != rhs:
                bad += 1
        best = bad if best is None else min(best, bad)
    return best


def equivariance_norm(g, M: LatticeMatrix, orientation: str = "lexicographic") -> float:
    """Frobenius norm of beta M - (+-g) beta, minimized over the sign (float)."""
    lhs = np.array([beta(M @ LatticeVec.basis(k), orientation).coeffs for k in range(14)]).T
    rhs = np.array([to_three_form(form_action_exact(g, beta_exact(LatticeVec.basis(k), orientation))).coeffs
                    for k in range(14)]).T
    return float(min(np.linalg.norm(lhs - rhs), np.linalg.norm(lhs + rhs)))


# --- central charges --------------------------------------------------------

FUNDAMENTAL_SIGNS = ((1, 1, 1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1))


def _q(x):
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10 ** 12) if x != int(x) else Fraction(int(x))
    return Fraction(x)


def charge_vector(alpha, beta_, gamma) -> LatticeVec:
    from .lattice import exp_divisor
    W = exp_divisor((1, 1, 1))
    for c, signs in zip((alpha, beta_, gamma), FUNDAMENTAL_SIGNS[1:]):
        W = W + exp_divisor(signs).scale(cq(_q(c)))
    return W


def charge_from_params(alpha, beta_, gamma, check_cone: bool = True) -> tuple[LatticeVec, ThreeForm]:
    """W = exp(iL) + a exp(i(-D1-D2+D3)) + b exp(i(-D1+D2-D3)) + c exp(i(D1-D2-D3)) and its mirror form."""
    vals = [float(alpha), float(beta_), float(gamma)]
    if check_cone and (min(vals) < 0 or sum(vals) >= 1):
        raise ValueError("parameters must satisfy alpha, beta, gamma >= 0 and alpha + beta + gamma < 1")
    W = charge_vector(alpha, beta_, gamma)
    return W, beta(W)


def central_charge(W: LatticeVec, v: LatticeVec):
    """Z(v) = <W, v> (Mukai pairing)."""
    return euler_pairing(W, v)


def charge_functional(W: LatticeVec) -> list:
    """Values of Z = <W, .> on the 14 basis vectors."""
    return [euler_pairing(W, LatticeVec.basis(k)) for k in range(14)]


def charge_admissible(W: LatticeVec, n_samples: int = 4096, seed: int = 0, tol: float = 1e-9):
    """Run the U+ tests on the mirror form of W."""
    from .uplus import admissibility_verdict
    return admissibility_verdict(beta(W), n_samples=n_samples, seed=seed, tol=tol)


def pairing_transport() -> dict:
    """Compare <v, w> with the integral of beta(v) ^ beta(w) over all basis pairs."""
    ratios = set()
    mismatches = []
    vol = None
    for a in range(14):
        va = LatticeVec.basis(a)
        fa = beta_exact(va)
        for b in range(14):
            vb = LatticeVec.basis(b)
            m = euler_pairing(va, vb)
            w = wedge(fa, beta_exact(vb)).coeff((1, 2, 3, 4, 5, 6))
            if not m and not w:
                continue
            if not w or not m:
                mismatches.append((a, b))
                continue
            ratios.add(m / w)
    ok = not mismatches and len(ratios) == 1
    return {"constant": next(iter(ratios)) if ok else None, "ratios": sorted(map(str, ratios)),
            "mismatches": mismatches, "ok": ok}

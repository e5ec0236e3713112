"""Central charges of product stability conditions on X = S x C, S = E^2, C = E.

p projects to the first two factors, q to the third; H = D3 and D = D1 + D2
on S. The surface charge is g = <exp(i t D), .> on N(S), and the asymptotic
coefficients of a class are

    a + i c = <exp(i t D), v1>,    b + i d = <exp(i t D), v2>,

with v1 = p_*(H ch) and v2 = p_*(ch). Everything is exact for rational
parameters (floats are converted to the rationals they represent).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from sympy.polys.matrices import DomainMatrix

from . import exact as ex
from .cohomology import CohomClass, cycle_class, integrate, mukai_pairing, pushforward_p, wedge
from .exact import I, ZERO, cq
from .lattice import (
    LatticeVec, _chern_basis, class_of, coords_of, euler_pairing, exp_class_of, exp_divisor,
    transform_matrix,
)

N_DIM = 3


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class AsymCoeffs:
    a: object
    b: object
    c: object
    d: object

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def to_json(self) -> dict:
        return {k: ex.dump(v) for k, v in zip("abcd", self.as_tuple())}


def surface_divisor() -> CohomClass:
    return cycle_class("D1", "E2") + cycle_class("D2", "E2")


def fiber_divisor() -> CohomClass:
    return cycle_class("D3")


def project_v(vec: LatticeVec) -> tuple[LatticeVec, LatticeVec]:
    """(v1, v2) = (p_*(H ch), p_*(ch)) as vectors in N(E^2)."""
    ch = class_of(vec)
    v1 = pushforward_p(wedge(fiber_divisor(), ch))
    v2 = pushforward_p(ch)
    return coords_of(v1), coords_of(v2)


def project_v_finite_difference(vec: LatticeVec, k: int) -> tuple[LatticeVec, LatticeVec]:
    """v1 = v(k) - v(k-1), v2 = v(k) - k v1 with v(k) = p_*(ch (1 + k H))."""
    ch = class_of(vec)
    H = fiber_divisor()
    v = lambda m: coords_of(pushforward_p(ch + wedge(ch, H).scale(m)))
    v1 = v(k) - v(k - 1)
    return v1, v(k) - v1.scale(k)


@lru_cache(maxsize=None)
def _surface_charge(t: Fraction) -> CohomClass:
    return exp_class_of(surface_divisor(), cq(t))


@lru_cache(maxsize=None)
def _abcd_rows(i: int, t: Fraction) -> tuple[tuple, ...]:
    """Four rows of 14 exact reals: a, b, c, d of Phi_i applied to each basis vector."""
    M = transform_matrix(i)
    e = _surface_charge(t)
    cols = []
    for k in range(14):
        v1, v2 = project_v(M @ LatticeVec.basis(k))
        z1 = mukai_pairing(e, class_of(v1))
        z2 = mukai_pairing(e, class_of(v2))
        cols.append((cq(ex.re_part(z1)), cq(ex.re_part(z2)), cq(ex.im_part(z1)), cq(ex.im_part(z2))))
    return tuple(tuple(col[r] for col in cols) for r in range(4))


def abcd(vec: LatticeVec, i: int = 1, t=1) -> AsymCoeffs:
    """Asymptotic coefficients of Phi_i(vec) at parameter t (complex-linear in vec)."""
    rows = _abcd_rows(i, _q(t))
    vals = [sum((c * r for c, r in zip(vec.coords, row)), ZERO) for row in rows]
    return AsymCoeffs(*vals)


def product_charge(vec: LatticeVec, s=1, t=1, alpha=0, beta=None):
    """Z = c' s + b' + i(-a' t + d') for g = diag(1 + alpha, 1 - alpha) <exp(i beta D), .>.

    beta defaults to t. The scaling multiplies a, b by 1 + alpha and c, d by
    1 - alpha.
    """
    s, t, alpha = _q(s), _q(t), _q(alpha)
    if s <= 0 or t <= 0:
        raise ValueError("s and t must be positive")
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0, 1)")
    beta = t if beta is None else _q(beta)
    co = abcd(vec, 1, beta)
    up, down = cq(1 + alpha), cq(1 - alpha)
    a, b, c, d = co.a * up, co.b * up, co.c * down, co.d * down
    return c * cq(s) + b + I * (-a * cq(t) + d)


def gcharge_vector(alpha=0, t=1) -> LatticeVec:
    """exp(i t (D + H)) + alpha exp(i t (-D + H)) as a lattice vector."""
    return exp_divisor((1, 1, 1), t) + exp_divisor((-1, -1, 1), t).scale(cq(_q(alpha)))


def reduced_charge(vec: LatticeVec, alpha, beta, gamma):
    """The central charge of the fundamental domain written through a_i, ..., d_i (i = 1, 2, 3), t = 1."""
    al, be, ga = (cq(_q(x)) for x in (alpha, beta, gamma))
    co = [abcd(vec, i, 1) for i in (1, 2, 3)]
    real = (co[0].c + co[0].b) + al * (co[0].b - co[0].c) + be * (co[1].b - co[1].c) + ga * (co[2].b - co[2].c)
    imag = (co[0].d - co[0].a) + al * (-co[0].a - co[0].d) + be * (-co[1].a - co[1].d) + ga * (-co[2].a - co[2].d)
    return real + I * imag


def coefficient_relations(vec: LatticeVec) -> tuple[set, set]:
    """The sets {c_i + b_i} and {-a_i + d_i} over i = 1, 2, 3 (singletons when the relations hold)."""
    co = [abcd(vec, i, 1) for i in (1, 2, 3)]
    return {x.c + x.b for x in co}, {x.d - x.a for x in co}


def poincare_coeff_relations_check(vectors: Iterable[LatticeVec] | None = None):
    """Max |residual| of a(Phi E) = -b(E), b(Phi E) = a(E), c(Phi E) = -d(E), d(Phi E) = c(E)."""
    worst = Fraction(0)
    for v in vectors if vectors is not None else (LatticeVec.basis(k) for k in range(14)):
        e, f = abcd(v, 1), abcd(v, 4)
        for lhs, rhs in ((f.a, -e.b), (f.b, e.a), (f.c, -e.d), (f.d, e.c)):
            diff = lhs - rhs
            worst = max(worst, abs(ex.re_part(diff)) + abs(ex.im_part(diff)))
    return worst


def v1_stack(indices: Sequence[int] = (1, 2, 3, 4, 5, 6)) -> DomainMatrix:
    """(5 len(indices)) x 14 exact matrix of the maps v1 o Phi_i."""
    rows = []
    for i in indices:
        M = transform_matrix(i)
        cols = [project_v(M @ LatticeVec.basis(k))[0].coords for k in range(14)]
        rows.extend([list(r) for r in zip(*cols)])
    return DomainMatrix(rows, (len(rows), 14), ex.QQ_I)


def injectivity_rank(indices: Sequence[int] = (1, 2, 3, 4, 5, 6)) -> int:
    return v1_stack(indices).rank()


def exp_expansion(F: CohomClass, ch: CohomClass, t) -> object:
    """sum_j ((-i t)^j / j!) int F^j ch_{n-j}, the degree expansion of <exp(i t F), ch>."""
    t = cq(_q(t))
    total = ZERO
    power = CohomClass.one(F.ambient)
    coef = cq(1)
    n = 3 if F.ambient == "E3" else 2
    for j in range(n + 1):
        total = total + coef * integrate(wedge(power, ch.part(2 * (n - j))))
        power = wedge(power, F)
        coef = coef * (-I * t) / cq(j + 1)
    return total


def exp_pairing(F: CohomClass, ch: CohomClass, t):
    return mukai_pairing(exp_class_of(F, cq(_q(t))), ch)

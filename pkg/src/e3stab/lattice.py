"""The numerical lattices N(E^3) (rank 14) and N(E^2) (rank 5).

Basis order on E^3:
    O_X, O_D1, O_D2, O_D3, O_Delta12, O_Delta13, O_Delta23,
    O_C12, O_C13, O_C23, O_D12, O_D13, O_D23, O_0
and on E^2: O_S, O_D1, O_D2, O_Delta, O_0.
Chern characters of these structure sheaves equal the cycle classes of the
supporting subtori, so coordinates are read off in the cohomology engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from sympy.polys.matrices import DomainMatrix

from . import exact as ex
from .cohomology import (
    E2_CYCLES, E3_CYCLES, CohomClass, cycle_class, exp_class, linear_substitution,
    mukai_pairing, poincare_dual, wedge,
)
from .exact import CQ, ONE, ZERO, cq

BASIS_E3 = ("O_X", "O_D1", "O_D2", "O_D3", "O_Delta12", "O_Delta13", "O_Delta23",
            "O_C12", "O_C13", "O_C23", "O_D12", "O_D13", "O_D23", "O_0")
BASIS_E2 = ("O_S", "O_D1", "O_D2", "O_Delta", "O_0")
BASIS = {"E3": BASIS_E3, "E2": BASIS_E2}
RANK = {"E3": 14, "E2": 5}

# Euler pairing of the basis as tabulated in the literature (row-major).
REFERENCE_EULER = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, -1, -1, -1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, -1, 0, -1, 0, -1, 0],
    [0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, -1, -1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, -1, -1, 0, -1, -1, 0],
    [0, 0, 0, 0, 0, 0, 0, -1, 0, -1, -1, 0, -1, 0],
    [0, 0, 0, 0, 0, 0, 0, -1, -1, 0, -1, -1, 0, 0],
    [0, 0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
]


@dataclass(frozen=True)
class LatticeVec:
    ambient: str
    coords: tuple

    def __post_init__(self):
        if self.ambient not in RANK:
            raise ValueError(f"unknown ambient {self.ambient!r}")
        coords = tuple(cq(c) for c in self.coords)
        if len(coords) != RANK[self.ambient]:
            raise ValueError(f"{self.ambient} vectors have {RANK[self.ambient]} coordinates")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def basis(cls, k: int | str, ambient: str = "E3") -> "LatticeVec":
        names = BASIS[ambient]
        k = names.index(k) if isinstance(k, str) else k
        return cls(ambient, tuple(ONE if j == k else ZERO for j in range(len(names))))

    @classmethod
    def zero(cls, ambient: str = "E3") -> "LatticeVec":
        return cls(ambient, (ZERO,) * RANK[ambient])

    def __add__(self, other: "LatticeVec") -> "LatticeVec":
        self._same(other)
        return LatticeVec(self.ambient, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LatticeVec") -> "LatticeVec":
        return self + other.scale(-1)

    def __neg__(self) -> "LatticeVec":
        return self.scale(-1)

    def scale(self, c) -> "LatticeVec":
        c = cq(c)
        return LatticeVec(self.ambient, tuple(c * x for x in self.coords))

    __rmul__ = scale

    def _same(self, other):
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")

    def conjugate(self) -> "LatticeVec":
        return LatticeVec(self.ambient, tuple(ex.conj(x) for x in self.coords))

    def __bool__(self) -> bool:
        return any(self.coords)

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "coords": [ex.dump(c) for c in self.coords]}

    @classmethod
    def from_json(cls, data) -> "LatticeVec":
        return cls(data["ambient"], tuple(ex.load(p) for p in data["coords"]))

    def to_complex(self) -> list[complex]:
        return [ex.to_complex(c) for c in self.coords]


@dataclass(frozen=True)
class LatticeMatrix:
    """Exact matrix acting on column vectors of lattice coordinates."""

    name: str
    mat: DomainMatrix

    @property
    def shape(self):
        return self.mat.shape

    def __matmul__(self, other):
        if isinstance(other, LatticeMatrix):
            return LatticeMatrix(f"{self.name}*{other.name}", self.mat * other.mat)
        if isinstance(other, LatticeVec):
            col = DomainMatrix([[c] for c in other.coords], (len(other.coords), 1), self.mat.domain)
            out = (self.mat * col).to_list()
            n = self.mat.shape[0]
            ambient = "E3" if n == 14 else "E2"
            return LatticeVec(ambient, tuple(r[0] for r in out))
        return NotImplemented

    def __neg__(self) -> "LatticeMatrix":
        return LatticeMatrix(f"-{self.name}", -self.mat)

    def __eq__(self, other):
        return isinstance(other, LatticeMatrix) and ex.same(self.mat, other.mat)

    def __hash__(self):
        return hash(self.name)

    def entries(self) -> list[list]:
        return self.mat.to_list()

    def to_json(self) -> dict:
        return {"name": self.name, "rows": [[ex.dump(z) for z in r] for r in self.entries()]}


# --- Chern characters and the Euler pairing --------------------------------

_CHERN_NAME = {
    "E3": dict(zip(BASIS_E3, E3_CYCLES)),
    "E2": dict(zip(BASIS_E2, E2_CYCLES)),
}


def chern(b: str | int, ambient: str = "E3") -> CohomClass:
    names = BASIS[ambient]
    if isinstance(b, int):
        b = names[b]
    if b not in _CHERN_NAME[ambient]:
        raise ValueError(f"unknown basis element {b!r}")
    return cycle_class(_CHERN_NAME[ambient][b], ambient)


@lru_cache(maxsize=None)
def _chern_basis(ambient: str) -> tuple[CohomClass, ...]:
    return tuple(chern(b, ambient) for b in BASIS[ambient])


def class_of(v: LatticeVec) -> CohomClass:
    out = CohomClass.zero(v.ambient)
    for c, ch in zip(v.coords, _chern_basis(v.ambient)):
        if c:
            out = out + ch.scale(c)
    return out


@lru_cache(maxsize=None)
def _euler(ambient: str) -> DomainMatrix:
    chs = _chern_basis(ambient)
    return ex.matrix([[mukai_pairing(a, b) for b in chs] for a in chs])


def euler_matrix(ambient: str = "E3") -> list[list[int]]:
    return [[int(ex.frac(z.x)) for z in row] for row in _euler(ambient).to_list()]


@lru_cache(maxsize=None)
def _euler_inv(ambient: str) -> DomainMatrix:
    return _euler(ambient).inv()


def euler_pairing(v: LatticeVec, w: LatticeVec):
    return mukai_pairing(class_of(v), class_of(w))


def coords_of(c: CohomClass) -> LatticeVec:
    """Coordinates of a Hodge class in the basis; raises if it is not in the span."""
    chs = _chern_basis(c.ambient)
    pairings = DomainMatrix([[mukai_pairing(b, c)] for b in chs], (len(chs), 1), ex.QQ_I)
    sol = (_euler_inv(c.ambient) * pairings).to_list()
    v = LatticeVec(c.ambient, tuple(r[0] for r in sol))
    if class_of(v) != c:
        raise ValueError("class is not expressible in the lattice basis")
    return v


# --- exponential classes ---------------------------------------------------

def divisor_sum(signs: Sequence[int], ambient: str = "E3") -> CohomClass:
    out = CohomClass.zero(ambient)
    for k, s in enumerate(signs, start=1):
        out = out + cycle_class(f"D{k}", ambient).scale(s)
    return out


def exp_class_of(D: CohomClass, t=1) -> CohomClass:
    """exp(i t D) for a divisor class D."""
    return exp_class(D.scale(ex.I * cq(t)))


def exp_divisor(signs: Sequence[int], t=1, ambient: str = "E3") -> LatticeVec:
    """Lattice coordinates of exp(i t (e1 D1 + e2 D2 + e3 D3))."""
    if any(s not in (1, -1) for s in signs) or len(signs) != (3 if ambient == "E3" else 2):
        raise ValueError("signs must be a tuple of +-1")
    t = cq(t)
    if not t:
        return LatticeVec.basis(0, ambient)
    return coords_of(exp_class_of(divisor_sum(signs, ambient), t))


# --- autoequivalences ------------------------------------------------------

def matrix_from_action(name: str, action, ambient: str = "E3") -> LatticeMatrix:
    cols = [coords_of(action(ch)).coords for ch in _chern_basis(ambient)]
    return LatticeMatrix(name, ex.from_columns(cols))


def factor_shift(c: CohomClass) -> CohomClass:
    """Pushforward along (x1, x2, x3) -> (x3, x1, x2): the factor k goes to k+1."""
    n = 6
    M = [[ZERO] * n for _ in range(n)]
    for k in range(3):
        target = (k + 1) % 3
        M[2 * k][2 * target] = ONE
        M[2 * k + 1][2 * target + 1] = ONE
    return linear_substitution(c, M)


def poincare_action(c: CohomClass) -> CohomClass:
    """Signed duality (-1)^(k(k+1)/2 + 3) PD on each degree k."""
    out = CohomClass.zero(c.ambient)
    for k in range(7):
        part = c.part(k)
        if part:
            sign = -1 if (k * (k + 1) // 2 + 3) % 2 else 1
            out = out + poincare_dual(part).scale(sign)
    return out


def _tensor(D: CohomClass):
    e = exp_class(D)
    return lambda c: wedge(c, e)


def divisor_class(name: str) -> CohomClass:
    """D1..D3, Delta12.. or F12.. (F_ij = Delta_ij - D_i - D_j), optionally negated with '-'."""
    sign = 1
    if name.startswith("-"):
        sign, name = -1, name[1:]
    if name.startswith("F"):
        i, j = name[1], name[2]
        c = cycle_class(f"Delta{i}{j}") - cycle_class(f"D{i}") - cycle_class(f"D{j}")
    else:
        c = cycle_class(name)
    return c.scale(sign)


@lru_cache(maxsize=None)
def autoeq_matrix(kind: str) -> LatticeMatrix:
    """Matrix of F, F2, Phi or TensorO(<divisor>) in basis coordinates."""
    if kind == "Id":
        return LatticeMatrix("Id", ex.identity(14))
    if kind == "F":
        return matrix_from_action("F", factor_shift)
    if kind == "F2":
        F = autoeq_matrix("F")
        return LatticeMatrix("F2", F.mat * F.mat)
    if kind == "Phi":
        return matrix_from_action("Phi", poincare_action)
    if kind.startswith("TensorO(") and kind.endswith(")"):
        D = divisor_class(kind[len("TensorO("):-1])
        return matrix_from_action(kind, _tensor(D))
    raise ValueError(f"unknown autoequivalence {kind!r}")


# Phi_1..Phi_6 = Id, F, F^2, Phi, F Phi, F^2 Phi
TRANSFORMS = ("Id", "F", "F2", "Phi", "F*Phi", "F2*Phi")


@lru_cache(maxsize=None)
def transform_matrix(i: int) -> LatticeMatrix:
    if not 1 <= i <= 6:
        raise ValueError("transform index runs over 1..6")
    name = TRANSFORMS[i - 1]
    if "*" in name:
        left, right = name.split("*")
        return autoeq_matrix(left) @ autoeq_matrix(right)
    return autoeq_matrix(name)


def is_isometry(M: LatticeMatrix) -> bool:
    chi = _euler("E3")
    return ex.same(M.mat.transpose() * chi * M.mat, chi)


def involution_matrix() -> LatticeMatrix:
    """Pullback along x -> -x: (-1)^k on degree k (trivial on even classes)."""
    def act(c):
        return CohomClass(c.ambient, {k: (v if len(k) % 2 == 0 else -v) for k, v in c.items()})
    return matrix_from_action("inv", act)

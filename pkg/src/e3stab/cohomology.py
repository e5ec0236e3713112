"""Rational cohomology of E^3 and E^2 as an exterior algebra with exact coefficients.

Generators e1..e6 stand for dx1, dy1, dx2, dy2, dx3, dy3 (e1..e4 on E^2).
A monomial is an ascending tuple of generator indices; the Koszul sign of
reordering is folded into its coefficient. Orientation: the integral of
e1 ^ ... ^ e6 (resp. e1 ^ ... ^ e4) is +1.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exact import CQ, ONE, ZERO, cq, conj, dump, load

NGENS = {"E3": 6, "E2": 4}
DIM = {"E3": 3, "E2": 2}

E3_CYCLES = (
    "Fund", "D1", "D2", "D3", "Delta12", "Delta13", "Delta23",
    "C12", "C13", "C23", "Dd12", "Dd13", "Dd23", "Point",
)
E2_CYCLES = ("Fund", "D1", "D2", "Delta", "Point")


def merge_sign(a: Sequence[int], b: Sequence[int]) -> int:
    """Sign of sorting the concatenation a+b of two ascending index tuples."""
    inversions = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        inversions += j
    return -1 if inversions % 2 else 1


def _check_ambient(ambient: str) -> str:
    if ambient not in NGENS:
        raise ValueError(f"unknown ambient {ambient!r}")
    return ambient


class CohomClass:
    """Element of the exterior algebra on the ambient's generators."""

    __slots__ = ("ambient", "_coeffs")

    def __init__(self, ambient: str, coeffs: Mapping[Iterable[int], object] | None = None):
        self.ambient = _check_ambient(ambient)
        n = NGENS[ambient]
        clean: dict[tuple[int, ...], CQ] = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if list(idx) != sorted(set(idx)):
                raise ValueError(f"monomial {idx} is not strictly ascending")
            if idx and (idx[0] < 1 or idx[-1] > n):
                raise ValueError(f"monomial {idx} outside generators 1..{n}")
            c = cq(c)
            if c:
                clean[idx] = clean.get(idx, ZERO) + c
        self._coeffs = {k: v for k, v in clean.items() if v}

    # construction helpers
    @classmethod
    def zero(cls, ambient: str) -> "CohomClass":
        return cls(ambient)

    @classmethod
    def one(cls, ambient: str) -> "CohomClass":
        return cls(ambient, {(): ONE})

    @classmethod
    def gen(cls, ambient: str, k: int) -> "CohomClass":
        return cls(ambient, {(k,): ONE})

    @classmethod
    def top(cls, ambient: str) -> "CohomClass":
        return cls(ambient, {tuple(range(1, NGENS[ambient] + 1)): ONE})

    @property
    def coeffs(self) -> dict[tuple[int, ...], CQ]:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def coeff(self, idx: Iterable[int]):
        return self._coeffs.get(tuple(idx), ZERO)

    # algebra
    def _same(self, other: "CohomClass") -> None:
        if not isinstance(other, CohomClass):
            raise TypeError("expected a CohomClass")
        if other.ambient != self.ambient:
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")

    def __add__(self, other: "CohomClass") -> "CohomClass":
        self._same(other)
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return CohomClass(self.ambient, out)

    def __neg__(self) -> "CohomClass":
        return CohomClass(self.ambient, {k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other: "CohomClass") -> "CohomClass":
        return self + (-other)

    def scale(self, c) -> "CohomClass":
        c = cq(c)
        return CohomClass(self.ambient, {k: c * v for k, v in self._coeffs.items()})

    def __rmul__(self, c) -> "CohomClass":
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, CohomClass):
            return wedge(self, other)
        return self.scale(other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, CohomClass) and self.ambient == other.ambient
                and self._coeffs == other._coeffs)

    def __hash__(self):
        return hash((self.ambient, frozenset(self._coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __repr__(self) -> str:
        if not self._coeffs:
            return f"CohomClass({self.ambient}, 0)"
        terms = " + ".join(f"({v})e{''.join(map(str, k)) or '0'}" for k, v in sorted(self._coeffs.items()))
        return f"CohomClass({self.ambient}, {terms})"

    def part(self, degree: int) -> "CohomClass":
        return CohomClass(self.ambient, {k: v for k, v in self._coeffs.items() if len(k) == degree})

    def conjugate(self) -> "CohomClass":
        return CohomClass(self.ambient, {k: conj(v) for k, v in self._coeffs.items()})

    def degrees(self) -> set[int]:
        return {len(k) for k in self._coeffs}

    # serialization
    def to_json(self) -> dict:
        terms = []
        for idx, c in sorted(self._coeffs.items()):
            re, im = dump(c)
            terms.append({"idx": list(idx), "re": re, "im": im})
        return {"ambient": self.ambient, "terms": terms}

    @classmethod
    def from_json(cls, data: Mapping) -> "CohomClass":
        return cls(data["ambient"], {tuple(t["idx"]): load((t["re"], t["im"])) for t in data["terms"]})


def wedge(a: CohomClass, b: CohomClass) -> CohomClass:
    a._same(b)
    out: dict[tuple[int, ...], CQ] = {}
    for ia, ca in a.items():
        sa = set(ia)
        for ib, cb in b.items():
            if sa.intersection(ib):
                continue
            key = tuple(sorted(ia + ib))
            term = ca * cb
            if merge_sign(ia, ib) < 0:
                term = -term
            out[key] = out.get(key, ZERO) + term
    return CohomClass(a.ambient, out)


def wedge_all(classes: Iterable[CohomClass], ambient: str = "E3") -> CohomClass:
    out = CohomClass.one(ambient)
    for c in classes:
        out = wedge(out, c)
    return out


def integrate(a: CohomClass):
    return a.coeff(range(1, NGENS[a.ambient] + 1))


def exp_class(a: CohomClass) -> CohomClass:
    """exp of a nilpotent even class: sum of a^k / k!."""
    if a.part(0):
        raise ValueError("exp_class needs a class without degree-0 part")
    out = CohomClass.one(a.ambient)
    power = CohomClass.one(a.ambient)
    k = 0
    while True:
        k += 1
        power = wedge(power, a).scale(cq(1) / cq(k))
        if not power:
            return out
        out = out + power


def mukai_pairing(a: CohomClass, b: CohomClass):
    a._same(b)
    n = DIM[a.ambient]
    total = ZERO
    for i in range(n + 1):
        term = integrate(wedge(a.part(2 * i), b.part(2 * (n - i))))
        total = total - term if i % 2 else total + term
    return total


def pushforward_p(a: CohomClass) -> CohomClass:
    """Integrate over the third factor: E^3 -> E^2 along (x1, x2, x3) -> (x1, x2)."""
    if a.ambient != "E3":
        raise ValueError("pushforward_p expects a class on E3")
    out = {}
    for idx, c in a.items():
        if 5 in idx and 6 in idx:
            rest = tuple(k for k in idx if k < 5)
            out[rest] = c if merge_sign(rest, (5, 6)) > 0 else -c
    return CohomClass("E2", out)


def pullback_p(c: CohomClass) -> CohomClass:
    if c.ambient != "E2":
        raise ValueError("pullback_p expects a class on E2")
    return CohomClass("E3", dict(c.items()))


def substitute(a: CohomClass, images: Mapping[int, CohomClass]) -> CohomClass:
    """Algebra map sending generator e_k to the degree-1 class images[k]."""
    out = CohomClass.zero(a.ambient)
    for idx, c in a.items():
        term = CohomClass.one(a.ambient)
        for k in idx:
            term = wedge(term, images[k])
        out = out + term.scale(c)
    return out


def linear_substitution(a: CohomClass, M) -> CohomClass:
    """Substitute e_k -> sum_j M[k-1][j-1] e_j (M given as nested rows)."""
    n = NGENS[a.ambient]
    images = {
        k: CohomClass(a.ambient, {(j,): M[k - 1][j - 1] for j in range(1, n + 1) if M[k - 1][j - 1]})
        for k in range(1, n + 1)
    }
    return substitute(a, images)


def monomials(ambient: str, degree: int) -> list[tuple[int, ...]]:
    return list(combinations(range(1, NGENS[ambient] + 1), degree))


def poincare_dual(a: CohomClass) -> CohomClass:
    """Monomialwise duality m -> m* with integral(m ^ m*) = 1."""
    n = NGENS[a.ambient]
    full = tuple(range(1, n + 1))
    out = {}
    for idx, c in a.items():
        comp = tuple(k for k in full if k not in idx)
        out[comp] = c if merge_sign(idx, comp) > 0 else -c
    return CohomClass(a.ambient, out)


# --- cycle classes ---------------------------------------------------------

def _d(ambient: str, i: int) -> CohomClass:
    return wedge(CohomClass.gen(ambient, 2 * i - 1), CohomClass.gen(ambient, 2 * i))


def _delta(ambient: str, i: int, j: int) -> CohomClass:
    g = lambda k: CohomClass.gen(ambient, k)
    return wedge(g(2 * i - 1) - g(2 * j - 1), g(2 * i) - g(2 * j))


def cycle_class(name: str, ambient: str = "E3") -> CohomClass:
    """Poincare-dual class of a named subtorus."""
    if ambient == "E2":
        table = {
            "Fund": lambda: CohomClass.one("E2"),
            "D1": lambda: _d("E2", 1),
            "D2": lambda: _d("E2", 2),
            "Delta": lambda: _delta("E2", 1, 2),
            "Point": lambda: CohomClass.top("E2"),
        }
    elif ambient == "E3":
        table = {"Fund": lambda: CohomClass.one("E3"), "Point": lambda: CohomClass.top("E3")}
        for i in (1, 2, 3):
            table[f"D{i}"] = lambda i=i: _d("E3", i)
        for i, j in ((1, 2), (1, 3), (2, 3)):
            (k,) = {1, 2, 3} - {i, j}
            table[f"Delta{i}{j}"] = lambda i=i, j=j: _delta("E3", i, j)
            table[f"C{i}{j}"] = lambda i=i, j=j: wedge(_d("E3", i), _d("E3", j))
            table[f"Dd{i}{j}"] = lambda i=i, j=j, k=k: wedge(_delta("E3", i, j), _d("E3", k))
    else:
        raise ValueError(f"unknown ambient {ambient!r}")
    try:
        return table[name]()
    except KeyError:
        raise ValueError(f"unknown cycle {name!r} on {ambient}") from None


# The intersection identities on E^3 checked by the acceptance suite, as
# (left cycle, right cycle, expected: cycle name, or an integer for a number).
INTERSECTION_IDENTITIES = [
    ("D1", "D3", "C13"), ("D2", "D3", "C23"),
    ("D3", "D3", 0),
    ("Delta13", "D3", "C13"), ("Delta23", "D3", "C23"),
    ("Delta12", "D3", "Dd12"),
    ("C12", "D3", 1),
    ("C13", "D3", 0), ("C23", "D3", 0),
    ("Dd13", "D3", 1), ("Dd23", "D3", 1),
    ("Dd12", "D3", 0),
]


def check_intersection(left: str, right: str, expected) -> bool:
    prod = wedge(cycle_class(left), cycle_class(right))
    if isinstance(expected, str):
        return prod == cycle_class(expected)
    if expected == 0:
        return not prod
    return prod.degrees() <= {6} and integrate(prod) == cq(expected)

"""The acceptance checks A1-A16, shared by the test-suite and the verify-all command.

Each check returns a CheckResult; nothing here asserts, so a failing check
still reports its evidence.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from . import exact as ex
from .exact import I

SEED = 0


@dataclass
class CheckResult:
    name: str
    title: str
    passed: bool
    seconds: float
    bound: float
    details: dict = field(default_factory=dict)

    @property
    def in_time(self) -> bool:
        return self.seconds <= self.bound

    @property
    def ok(self) -> bool:
        return self.passed and self.in_time

    def line(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        extra = "" if self.in_time else f" (over the {self.bound:g}s bound)"
        return f"{self.name} {verdict} {self.title} [{self.seconds:.2f}s]{extra}"

    def to_json(self) -> dict:
        return {"name": self.name, "title": self.title, "passed": self.passed, "ok": self.ok,
                "seconds": round(self.seconds, 3), "bound": self.bound, "details": _jsonable(self.details)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return ex.fmt_q(x)
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, ex.CQ):
        return ex.dump(x)
    return x


def _timed(name: str, title: str, bound: float, fn: Callable[[], tuple[bool, dict]]) -> CheckResult:
    t0 = time.perf_counter()
    passed, details = fn()
    return CheckResult(name, title, bool(passed), time.perf_counter() - t0, bound, details)


# --- A1-A7: exact lattice checks ------------------------------------------------

def check_a1() -> CheckResult:
    from .lattice import REFERENCE_EULER, euler_matrix

    def run():
        M = euler_matrix()
        bad = [(i, j) for i in range(14) for j in range(14) if M[i][j] != REFERENCE_EULER[i][j]]
        return not bad, {"mismatches": bad}
    return _timed("A1", "Euler matrix", 1.0, run)


def check_a2() -> CheckResult:
    from .cohomology import INTERSECTION_IDENTITIES, check_intersection

    def run():
        res = {f"{a}.{b}={c}": check_intersection(a, b, c) for a, b, c in INTERSECTION_IDENTITIES}
        return all(res.values()), {"identities": res}
    return _timed("A2", "intersection identities", 1.0, run)


def check_a3() -> CheckResult:
    from .mirror import beta_exact, mirror_table, table_ranks, transfer_matrix

    def run():
        rows = mirror_table()
        bad = [r.label for r in rows if beta_exact(r.vec) != r.form]
        rank = transfer_matrix().rank()
        return not bad and rank == 14 and table_ranks() == (14, 14), \
            {"rows": len(rows), "mismatched_rows": bad, "transfer_rank": rank}
    return _timed("A3", "mirror table rows", 1.0, run)


def check_a4(orientation: str = "lexicographic") -> CheckResult:
    from .mirror import equivariance_residual, lattice_partner

    def run():
        res = {}
        for kind in ("J", "N11", "perm"):
            g, M = lattice_partner(kind)
            res[kind] = equivariance_residual(g, M, orientation)
        return all(v == 0 for v in res.values()), {"orientation": orientation, "mismatching_basis_vectors": res}
    return _timed("A4", "Sp-equivariance of the mirror", 5.0, run)


def check_a5() -> CheckResult:
    from .lattice import LatticeVec
    from .mirror import central_charge, charge_vector
    from .prodstab import coefficient_relations, gcharge_vector, product_charge, reduced_charge

    def run():
        basis = [LatticeVec.basis(k) for k in range(14)]
        gbad = 0
        for al in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            for t in (Fraction(1), Fraction(1, 2)):
                W = gcharge_vector(al, t)
                gbad += sum(product_charge(v, t, t, al) != central_charge(W, v) for v in basis)
        rel_bad = sum(len(s) != 1 or len(d) != 1 for s, d in map(coefficient_relations, basis))
        grid = [Fraction(k, 16) for k in (1, 2, 3, 4, 5)]
        rbad = npts = 0
        for al in grid:
            for be in grid:
                for ga in grid:
                    npts += 1
                    W = charge_vector(al, be, ga)
                    rbad += sum(reduced_charge(v, al, be, ga) != central_charge(W, v) for v in basis)
        return gbad == 0 and rel_bad == 0 and rbad == 0, \
            {"gcharge_mismatches": gbad, "relation_failures": rel_bad,
             "reduced_charge_mismatches": rbad, "grid_points": npts}
    return _timed("A5", "charge identities", 10.0, run)


def check_a6() -> CheckResult:
    from .lattice import autoeq_matrix, exp_divisor
    from .prodstab import poincare_coeff_relations_check

    def run():
        worst = poincare_coeff_relations_check()
        e = exp_divisor((1, 1, 1))
        fixed = autoeq_matrix("Phi") @ e == e.scale(-I)
        return worst == 0 and fixed, {"max_residual": worst, "phi_exp_iL_is_minus_i": fixed}
    return _timed("A6", "Poincare functor relations", 1.0, run)


def check_a7() -> CheckResult:
    from .prodstab import injectivity_rank

    def run():
        r = injectivity_rank()
        return r == 14, {"rank": r}
    return _timed("A7", "injectivity of the six projections", 1.0, run)


# --- A8-A12: numerical form checks -------------------------------------------------

def _random_cubics(rng: np.random.Generator, n: int, margin: float = 1e-6):
    # every other sample is built from its roots so that both verdicts are common
    out = []
    while len(out) < n:
        if len(out) % 2:
            r = rng.uniform(0, 1.3, 3) * np.exp(2j * np.pi * rng.uniform(size=3))
            c = np.poly(r) * (rng.standard_normal() + 1j * rng.standard_normal())
        else:
            c = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        if np.min(np.abs(np.abs(np.roots(c)) - 1)) >= margin:
            out.append(c)
    return out


def check_a8(n: int = 10_000, seed: int = SEED) -> CheckResult:
    from .uplus import polyunstable_hypothesis, roots_in_open_disk

    def run():
        rng = np.random.default_rng(seed)
        dis = inside = 0
        for c in _random_cubics(rng, n):
            want = bool(np.all(np.abs(np.roots(c)) < 1))
            inside += want
            dis += roots_in_open_disk(c) != want
        got = tried = hyp_bad = 0
        while got < n:
            tried += 1
            a, b, c = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            c = c * rng.uniform(0, 1) / abs(c)
            if not polyunstable_hypothesis(a, b, c):
                continue
            got += 1
            hyp_bad += not np.max(np.abs(np.roots([1, a, b, c]))) >= 1 - 1e-12
        return dis == 0 and hyp_bad == 0, {"disagreements": dis, "oracle_inside": inside,
                                             "hypothesis_violations": hyp_bad, "hypothesis_tried": tried}
    return _timed("A8", "Schur-Cohn root location", 30.0, run)


def _random_primitive(rng: np.random.Generator):
    from .trilinear import FORM14_NAMES, from_form14
    vals = rng.standard_normal(14) + 1j * rng.standard_normal(14)
    return from_form14(**dict(zip(FORM14_NAMES, vals)))


def check_a9(n: int = 100, h: float = 1e-5, seed: int = SEED) -> CheckResult:
    from .normalform import flow_element, moment_gradient
    from .groups import act

    def run():
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(n):
            om = _random_primitive(rng)
            om = om * (1 / om.norm())
            g = moment_gradient(om)
            fd = np.empty(14)
            for a in range(14):
                e = np.zeros(14)
                e[a] = h
                fd[a] = (act(flow_element(e), om).norm2() - act(flow_element(-e), om).norm2()) / (4 * h)
            worst = max(worst, float(np.max(np.abs(fd - g)) / max(np.max(np.abs(g)), 1e-300)))
        return worst < 1e-6, {"worst_relative_error": worst, "forms": n}
    return _timed("A9", "moment gradient vs finite differences", 30.0, run)


def _cone_sample(rng: np.random.Generator) -> tuple[float, float, float]:
    x = rng.dirichlet([1, 1, 1, 1])[:3]
    return tuple(sorted(float(v) for v in x))


@lru_cache(maxsize=4)
def round_trip_samples(n: int = 200, seed: int = SEED) -> tuple:
    """(true gammas, transported form, result) for seeded round trips."""
    from .groups import act, random_group_element
    from .normalform import orbit_invariants
    from .trilinear import normal_form
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        gam = _cone_sample(rng)
        om = act(random_group_element(rng, scale=0.5), normal_form(gam))
        out.append((gam, om, orbit_invariants(om)))
    return tuple(out)


def check_a10(n: int = 200, seed: int = SEED) -> CheckResult:
    def run():
        data = round_trip_samples(n, seed)
        err = max(float(np.max(np.abs(np.array(r.gammas) - gam))) for gam, _, r in data)
        off = max(r.residuals["off_type_norm"] for _, _, r in data)
        return err < 1e-6 and off < 1e-8, {"worst_gamma_error": err, "worst_off_type": off, "samples": len(data)}
    return _timed("A10", "normal-form round trip", 300.0, run)


def check_a11(n: int = 200, n_frames: int = 4096, seed: int = SEED) -> CheckResult:
    from .groups import random_unitaries
    from .trilinear import evaluate_frames, normal_form

    def run():
        data = round_trip_samples(n, seed)
        rng = np.random.default_rng(seed + 1)
        worst = np.inf
        for _, _, r in data:
            frames = random_unitaries(rng, n_frames)
            m = float(np.min(np.abs(evaluate_frames(normal_form(r.gammas), frames))))
            worst = min(worst, m - (1 - sum(r.gammas)))
        return worst >= -1e-6, {"worst_slack": worst, "samples": len(data), "frames": n_frames}
    return _timed("A11", "Hadamard lower bound", 120.0, run)


def check_a12(n: int = 100, seed: int = SEED) -> CheckResult:
    from .groups import act, random_group_element
    from .trilinear import normal_form
    from .uplus import winding_number

    def run():
        rng = np.random.default_rng(seed)
        plus = minus = 0
        for _ in range(n):
            om = act(random_group_element(rng, scale=0.5), normal_form(_cone_sample(rng)))
            plus += winding_number(om) == 3
            minus += winding_number(om.conjugate()) == -3
        return plus == n and minus == n, {"plus_three": plus, "minus_three_conjugates": minus, "samples": n}
    return _timed("A12", "winding numbers", 30.0, run)


# --- A13-A14: support property --------------------------------------------------

A13_VALUES = (0.05, 0.1, 0.15, 0.2, 0.25)


def check_a13(values=A13_VALUES, eta_fraction: float = 0.5) -> CheckResult:
    from .support import cone_grid, support_grid, surface_support_constant

    def run():
        rep = support_grid(cone_grid(values), eta_fraction=eta_fraction)
        return rep.ok, {"surface_constant": str(surface_support_constant().value), "eta_fraction": eta_fraction,
                        "checked": rep.points, "violations": len(rep.violations),
                        "worst_margin": rep.worst_margin, "worst_point": rep.worst_point}
    return _timed("A13", "definiteness on charge kernels", 120.0, run)


def _rel(a, b) -> float:
    return abs(float(a) - float(b)) / max(abs(float(b)), 1e-300)


def check_a14(n: int = 20, seed: int = SEED) -> CheckResult:
    from .support import (
        case1_difference_formula, case2_minors, case3_minors, computed_minors, difference_form,
    )

    def run():
        rng = np.random.default_rng(seed)
        worst = {1: 0.0, 2: 0.0, 3: 0.0}
        for _ in range(n):
            al, be, ga = rng.dirichlet([1, 1, 1, 1])[:3] * 0.9 + 0.01
            C = rng.uniform(0.01, 1 - (al + be + ga))
            lam = rng.uniform(0.05, 1)
            D = difference_form((al, be, ga), (0, 0, 0), C, lam)
            for block in range(2):
                x = rng.standard_normal(3)
                vec = np.r_[x, 0, 0, 0] if block == 0 else np.r_[0, 0, 0, x]
                worst[1] = max(worst[1], _rel(D(vec), case1_difference_formula(al, be, ga, C, lam, x)))
            gp = rng.uniform(0.01, 1 - al - be)
            C2 = rng.uniform(0.005, 1 - al - be - gp)
            for blk in ("a", "b"):
                got = computed_minors(2, (al, be, gp), C2, lam, blk)
                worst[2] = max([worst[2]] + [_rel(x, y) for x, y in zip(got, case2_minors(al, be, gp, C2, lam))])
            bp, gp3 = rng.uniform(0.01, (1 - al) / 2, 2)
            C3 = rng.uniform(0.005, 1 - al - bp - gp3)
            for blk in ("a", "b"):
                got = computed_minors(3, (al, bp, gp3), C3, lam, blk)
                worst[3] = max([worst[3]] + [_rel(x, y) for x, y in zip(got, case3_minors(al, bp, gp3, C3, lam))])
        return max(worst.values()) < 1e-9, {"worst_relative_error": worst, "points_per_case": n}
    return _timed("A14", "closed-form Sylvester minors", 10.0, run)


# --- A15-A16 ------------------------------------------------------------------------

def random_symplectic(rng: np.random.Generator, scale: float = 0.5) -> np.ndarray:
    from scipy.linalg import expm
    from .groups import J6
    S = rng.standard_normal((6, 6)) * scale
    g = expm(J6 @ (S + S.T) / 2)
    if rng.uniform() < 0.5:
        g = g @ J6
    return g


def check_a15(n: int = 1000, n_rational: int = 20, seed: int = SEED) -> CheckResult:
    from .groups import exact_symplectic, nhj_decompose, rationalize

    def run():
        rng = np.random.default_rng(seed)
        mats = [random_symplectic(rng) for _ in range(n)]
        worst = max(float(np.linalg.norm(nhj_decompose(g).matrix() - g) / np.linalg.norm(g)) for g in mats)
        rat_bad, dist = 0, {}
        for eps in (1e-3, 1e-6):
            far = 0.0
            for g in mats[:n_rational]:
                w = rationalize(g, eps)
                G = w.exact_matrix()
                d = float(np.linalg.norm(np.array(G, dtype=float) - g))
                far = max(far, d / eps)
                rat_bad += (not exact_symplectic(G)) or d > eps
            dist[str(eps)] = far
        return worst < 1e-12 and rat_bad == 0, {"worst_relative_recomposition": worst, "rationalize_failures": rat_bad,
                                                "worst_distance_over_eps": dist}
    return _timed("A15", "generator words and rationalization", 60.0, run)


def check_a16(n: int = 100, n_cone: int = 20, n_frames: int = 4096, seed: int = SEED) -> CheckResult:
    from .lattice import LatticeVec
    from .mirror import charge_admissible, charge_from_params

    def run():
        rng = np.random.default_rng(seed)
        real_missed = no_witness = 0
        for k in range(n):
            W = LatticeVec("E3", tuple(int(x) for x in rng.integers(-3, 4, 14)))
            if not W:
                W = LatticeVec.basis(0)
            v = charge_admissible(W, n_samples=n_frames, seed=seed + k)
            real_missed += v.status != "RejectedWitness"
            no_witness += v.witness is None
        cone_rejected = []
        for k in range(n_cone):
            al, be, ga = rng.dirichlet([1, 1, 1, 1])[:3]
            p = [Fraction(float(x)).limit_denominator(1000) for x in (al, be, ga)]
            v = charge_admissible(charge_from_params(*p)[0], n_samples=n_frames, seed=seed + k)
            if v.rejected:
                cone_rejected.append([str(x) for x in p])
        return real_missed == 0 and no_witness == 0 and not cone_rejected, \
            {"real_not_rejected": real_missed, "missing_witness": no_witness,
             "cone_rejected": cone_rejected, "real_samples": n, "cone_samples": n_cone}
    return _timed("A16", "admissibility of charges", 60.0, run)


CHECKS = {
    "A1": check_a1, "A2": check_a2, "A3": check_a3, "A4": check_a4, "A5": check_a5, "A6": check_a6,
    "A7": check_a7, "A8": check_a8, "A9": check_a9, "A10": check_a10, "A11": check_a11, "A12": check_a12,
    "A13": check_a13, "A14": check_a14, "A15": check_a15, "A16": check_a16,
}


def run_all(names=None) -> list[CheckResult]:
    names = list(CHECKS) if names is None else list(names)
    return [CHECKS[name]() for name in names]

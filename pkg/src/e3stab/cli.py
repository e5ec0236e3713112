"""Command-line front end: JSON on standard output, exit 0 pass / 1 verdict failure / 2 input error."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}") from exc


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2, sort_keys=True, default=_default)
    sys.stdout.write("\n")


def _default(x):
    from .verification import _jsonable
    out = _jsonable(x)
    if out is x:
        if isinstance(x, complex):
            return [x.real, x.imag]
        raise TypeError(f"cannot serialize {type(x).__name__}")
    return out


# --- subcommands ------------------------------------------------------------------

def cmd_euler(args) -> int:
    from .lattice import BASIS_E3, REFERENCE_EULER, euler_matrix
    M = euler_matrix()
    match = M == REFERENCE_EULER
    _emit({"provenance": "exact", "basis": list(BASIS_E3), "matrix": M, "matches_reference": match})
    return EXIT_OK if match else EXIT_FAIL


def _read_form(args):
    from .trilinear import ThreeForm
    if args.gammas is not None:
        from .trilinear import normal_form
        return normal_form(args.gammas)
    if args.input is None:
        raise InputError("give --in FILE or --gammas")
    try:
        return ThreeForm.from_json(_load_json(args.input))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed form JSON: {exc}") from exc


def cmd_normal_form(args) -> int:
    from .normalform import orbit_invariants
    from .trilinear import primitivity_residual
    om = _read_form(args)
    if primitivity_residual(om) > 1e-9:
        raise InputError("form is not primitive")
    try:
        res = orbit_invariants(om)
    except (RuntimeError, ValueError) as exc:
        _emit({"provenance": "float", "error": str(exc)})
        return EXIT_FAIL
    _emit({"provenance": "float", **res.to_json()})
    return EXIT_OK


def cmd_membership(args) -> int:
    from .uplus import admissibility_verdict
    om = _read_form(args)
    try:
        v = admissibility_verdict(om, n_samples=args.samples, seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit({"provenance": "float", "seed": args.seed, **v.to_json()})
    return EXIT_FAIL if v.rejected else EXIT_OK


def _read_vec(args):
    from .lattice import BASIS_E3, LatticeVec
    if args.basis is not None:
        try:
            return LatticeVec.basis(int(args.basis) if args.basis.isdigit() else args.basis)
        except (ValueError, IndexError) as exc:
            raise InputError(f"unknown basis vector {args.basis!r}; choose from {list(BASIS_E3)}") from exc
    if args.vec is not None:
        try:
            return LatticeVec.from_json(_load_json(args.vec))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed lattice vector JSON: {exc}") from exc
    return None


def cmd_mirror(args) -> int:
    from .mirror import beta, beta_inv, to_three_form
    from .trilinear import ThreeForm
    vec = _read_vec(args)
    if vec is not None:
        _emit({"provenance": "exact->float", "orientation": args.orientation, "vec": vec.to_json(),
               "form": beta(vec, args.orientation).to_json()})
        return EXIT_OK
    if args.form is None:
        raise InputError("give --basis, --vec or --form")
    try:
        om = ThreeForm.from_json(_load_json(args.form))
        v = beta_inv(om, orientation=args.orientation)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    _emit({"provenance": "float->exact", "orientation": args.orientation, "vec": v.to_json()})
    return EXIT_OK


def cmd_central_charge(args) -> int:
    from . import exact as ex
    from .lattice import BASIS_E3, LatticeVec
    from .mirror import central_charge, charge_admissible, charge_vector
    al, be, ga = (_rational(x) for x in (args.alpha, args.beta, args.gamma))
    W = charge_vector(al, be, ga)
    vec = _read_vec(args)
    targets = [(vec, "input")] if vec is not None else [(LatticeVec.basis(k), n) for k, n in enumerate(BASIS_E3)]
    values = {name: ex.dump(central_charge(W, v)) for v, name in targets}
    out = {"provenance": "exact", "params": [str(al), str(be), str(ga)], "W": W.to_json(), "Z": values}
    code = EXIT_OK
    if args.check:
        verdict = charge_admissible(W, n_samples=args.samples, seed=args.seed)
        out["admissibility"] = verdict.to_json()
        code = EXIT_FAIL if verdict.rejected else EXIT_OK
    _emit(out)
    return code


def cmd_support_check(args) -> int:
    from .support import support_check
    try:
        rep = support_check(args.alpha, args.beta, args.gamma, lambda_steps=args.lambda_steps,
                            eta=args.eta, C=args.C)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit({"provenance": "float", **rep.to_json()})
    return EXIT_OK if rep.verdict == "negative-definite" else EXIT_FAIL


def cmd_sp_decompose(args) -> int:
    from .groups import exact_symplectic, nhj_decompose, rationalize, symplectic_defect
    data = _load_json(args.input)
    try:
        g = np.array(data["matrix"] if isinstance(data, dict) else data, dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed matrix JSON: {exc}") from exc
    if g.shape != (6, 6):
        raise InputError("need a 6 x 6 matrix")
    try:
        word = nhj_decompose(g) if args.eps is None else rationalize(g, args.eps)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    except ArithmeticError as exc:
        _emit({"error": str(exc), "symplectic_defect": symplectic_defect(g)})
        return EXIT_FAIL
    out = {"provenance": "float" if args.eps is None else "exact", "word": word.to_json(),
           "recomposition_error": float(np.linalg.norm(word.matrix() - g))}
    if args.eps is not None:
        out["exact_symplectic"] = exact_symplectic(word.exact_matrix())
    _emit(out)
    return EXIT_OK


def cmd_verify_all(args) -> int:
    from .verification import CHECKS, run_all
    names = args.only.split(",") if args.only else list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise InputError(f"unknown checks {unknown}")
    results = run_all(names)
    for r in results:
        print(r.line(), file=sys.stderr)
    _emit({"scoreboard": [r.to_json() for r in results], "all_ok": all(r.ok for r in results)})
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


# --- parser ---------------------------------------------------------------------

def _form_inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--in", dest="input", help="form JSON ({'terms': [{gens, re, im}, ...]}) or - for stdin")
    p.add_argument("--gammas", type=float, nargs=3, help="use the normal form with these parameters")


def _vec_inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--basis", help="basis vector by index or name (e.g. O_D1)")
    p.add_argument("--vec", help="lattice vector JSON ({'ambient', 'coords'})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="e3stab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("euler", help="the 14 x 14 Euler matrix").set_defaults(fn=cmd_euler)

    p = sub.add_parser("normal-form", help="gamma invariants of a form in U+(3)")
    _form_inputs(p)
    p.set_defaults(fn=cmd_normal_form)

    p = sub.add_parser("membership", help="sampling test for U+(3)")
    _form_inputs(p)
    p.add_argument("--samples", type=int, default=4096)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_membership)

    p = sub.add_parser("mirror", help="beta of a lattice vector, or beta^-1 of a form")
    _vec_inputs(p)
    p.add_argument("--form", help="form JSON to map back to the lattice")
    p.add_argument("--orientation", choices=("lexicographic", "cyclic"), default="lexicographic")
    p.set_defaults(fn=cmd_mirror)

    p = sub.add_parser("central-charge", help="Z_(alpha, beta, gamma) on basis vectors or a given vector")
    for name in ("alpha", "beta", "gamma"):
        p.add_argument(f"--{name}", default="0", help="rational, e.g. 1/5")
    _vec_inputs(p)
    p.add_argument("--check", action="store_true", help="also run the admissibility test on W")
    p.add_argument("--samples", type=int, default=4096)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_central_charge)

    p = sub.add_parser("support-check", help="definiteness of the support forms on charge kernels")
    for name in ("alpha", "beta", "gamma"):
        p.add_argument(f"--{name}", type=float, default=0.0)
    p.add_argument("--lambda-steps", type=int, default=11)
    p.add_argument("--eta", type=float, nargs="+", help="one value or six")
    p.add_argument("--C", type=float, help="constant of the coefficient forms")
    p.set_defaults(fn=cmd_support_check)

    p = sub.add_parser("sp-decompose", help="N/H/J word of a symplectic matrix")
    p.add_argument("--in", dest="input", required=True, help="JSON 6 x 6 matrix (or {'matrix': ...})")
    p.add_argument("--eps", type=float, help="rationalize within this Frobenius distance")
    p.set_defaults(fn=cmd_sp_decompose)

    p = sub.add_parser("verify-all", help="run the acceptance checks and print a scoreboard")
    p.add_argument("--only", help="comma-separated subset, e.g. A1,A7")
    p.set_defaults(fn=cmd_verify_all)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

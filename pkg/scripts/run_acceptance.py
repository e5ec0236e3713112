"""Run the acceptance checks and print a scoreboard (optionally write JSON)."""

import argparse
import json

from e3stab.verification import CHECKS, run_all


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only", help="comma-separated subset, e.g. A1,A13")
    ap.add_argument("--json", help="write the full results here")
    args = ap.parse_args()
    names = args.only.split(",") if args.only else list(CHECKS)
    results = run_all(names)
    for r in results:
        print(r.line())
    print(f"{sum(r.ok for r in results)}/{len(results)} criteria pass")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_json() for r in results], fh, indent=2)


if __name__ == "__main__":
    main()

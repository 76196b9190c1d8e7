"""Run every property suite and print a timing table.

    python scripts/run_acceptance.py [--cases 100] [--seed 20240611]
"""

import argparse
import sys

from tenskit.checks import SUITES, SuiteConfig, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", type=int, default=100)
    ap.add_argument("--seed", type=int, default=20240611)
    args = ap.parse_args()
    cfg = SuiteConfig(cases=args.cases, seed=args.seed)

    print(f"{'#':>2}  {'suite':<9} {'property':<15} {'cases':>6} {'fail':>5} {'ms':>8}")
    ok = True
    for suite in sorted(SUITES.values(), key=lambda s: s.criterion):
        results = run_suite(suite.name, cfg)
        for r in results:
            print(f"{suite.criterion:>2}  {suite.name:<9} {r.name:<15} {r.cases:>6} {r.failures:>5} "
                  f"{1000 * r.seconds:>8.1f}")
            if r.first_failure:
                print(f"    first failure: {r.first_failure}")
        total = sum(r.seconds for r in results)
        passed = all(r.passed for r in results) and total < 10
        ok &= passed
        print(f"    -> {'PASS' if passed else 'FAIL'} criterion {suite.criterion} in {total:.2f}s")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

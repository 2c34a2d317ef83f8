#!/usr/bin/env python3
"""Survey the canonical symmetric pairs: Jacobi residuals, curvature-image
dimensions, Ricci degeneracy, and the Calabi-Yau flag.

Usage: python3 scripts/symspace_survey.py [--nmax 3]
"""
import argparse
import sys
import time

from lkholonomy.symspace import canonical_pair, symspace_report


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--nmax", type=int, default=3)
    args = ap.parse_args()

    cases = [("a", 0, 0), ("b", 0, 0), ("c", 0, 0), ("d", 1, 0), ("e", 1, 0)]
    for n in range(1, args.nmax + 1):
        cases += [("f", n, m) for m in range(n + 1)]

    t0 = time.time()
    print(f"{'family':7} {'n':>2} {'m':>2} {'dim_h':>5} {'jacobi':>9} "
          f"{'g=R(m,m)':>9} {'ric.deg':>8} {'CY':>4}")
    bad = 0
    for family, n, m in cases:
        rep = symspace_report(canonical_pair(family, n, m), family, m)
        ok = rep.jacobi and rep.g_equals_image
        bad += 0 if ok else 1
        print(f"{family:7} {n:>2} {m:>2} {rep.dim_h:>5} "
              f"{rep.jacobi_residual:>9.1e} {str(rep.g_equals_image):>9} "
              f"{str(rep.ricci_degenerate):>8} {str(rep.calabi_yau):>4}")
    print(f"\n{len(cases)} pairs in {time.time() - t0:.2f}s, {bad} failures")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())

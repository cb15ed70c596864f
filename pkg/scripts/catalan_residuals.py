"""Residual decay of the Catalan expansion for K = 0..4.

Writes a CSV (n, K, residual, scaled) where ``scaled`` is the residual times
n^(remainder exponent); it should settle to a constant for each K.  The
fitted log-log slopes are printed next to their targets.
"""

import argparse
import csv
import sys

import mpmath

from sqrtasym.corpus import catalan_value
from sqrtasym.oracle import default_grid, residual_slope
from sqrtasym.series import RationalFunction, to_mpf
from sqrtasym.tauber import sqrt_expansion


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--kmax", type=int, default=4)
    ap.add_argument("--out", default="catalan_residuals.csv")
    args = ap.parse_args()

    h = RationalFunction((2,), (1, 1))
    grid = default_grid()
    values = {n: catalan_value(n) for n in grid}
    rows = []
    for K in range(args.kmax + 1):
        exp = sqrt_expansion(h, K)
        sr = residual_slope(values, exp)
        rem = to_mpf(exp.remainder_exponent)
        for n, res in zip(grid, sr.residuals):
            rows.append((n, K, mpmath.nstr(res, 12), mpmath.nstr(res * mpmath.power(n, rem), 12)))
        print(f"K={K}: slope {mpmath.nstr(sr.slope, 6):>9}  target {-exp.remainder_exponent}  {'ok' if sr.verdict else 'FAIL'}")
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "K", "residual", "scaled"])
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

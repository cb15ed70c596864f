"""Run the acceptance checks and print one line per criterion.

    python3 scripts/run_acceptance.py            # all ten
    python3 scripts/run_acceptance.py 4 9        # a subset
"""

import argparse
import sys
import warnings

from sqrtasym.acceptance import CRITERIA, run_criterion
from sqrtasym.errors import DegenerateWarning


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("numbers", nargs="*", type=int, help="criterion numbers (default: all)")
    args = ap.parse_args()
    numbers = args.numbers or [k for k, _, _ in CRITERIA]
    warnings.simplefilter("ignore", DegenerateWarning)
    ok = True
    for k in numbers:
        r = run_criterion(k)
        print(r.line(), flush=True)
        ok &= r.passed
    print("all passed" if ok else "SOME CRITERIA FAILED")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

"""The claw difference is not the K of any five element labeled poset.

Prints the difference, then searches every poset on five elements and every
labeling pattern for one whose K equals it.
"""
import sys

from qsymcell.checks import claw, claw_difference, counterexample_search
from qsymcell.qsym import is_L_positive, render


def main():
    LP, Q, R = claw()
    d = claw_difference()
    print(f"Q = {sorted(Q.members)}, R = {sorted(R.members)}")
    print(f"difference = {render(d)}")
    print(f"L-positive: {is_L_positive(d)}")
    stats = counterexample_search()
    for k, v in stats.items():
        print(f"  {k}: {len(v) if isinstance(v, list) else v}")
    return 2 if stats["matches"] else 0


if __name__ == "__main__":
    sys.exit(main())

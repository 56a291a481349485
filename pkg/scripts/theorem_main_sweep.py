"""Positivity of the cell transfer difference over all small labeled posets.

Every poset up to isomorphism, every realizable descent pattern and every
pair of convex subsets with a nontrivial transfer.  The injection behind the
positivity is also run extension by extension on the smaller sizes.
"""
import argparse
import sys

from _common import report

from qsymcell.checks import injection_sweep, theorem_main_sweep
from qsymcell.config import TheoremMainConfig, add_arguments, as_kwargs, from_args


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    add_arguments(parser, TheoremMainConfig)
    parser.add_argument("--injection-max-n", type=int, default=4,
                        help="also run the injection on every extension up to this size")
    args = parser.parse_args()
    cfg = from_args(TheoremMainConfig, args)
    code = 0
    if args.injection_max_n:
        s = injection_sweep(args.injection_max_n)
        code |= report("injection", s, s["failures"])
    stats = theorem_main_sweep(**as_kwargs(cfg))
    for n, s in sorted(stats.pop("per_size").items()):
        print(f"  n={n}: " + ", ".join(f"{k}={v}" for k, v in s.items()))
    return code | report("theorem-main", stats, stats["violations"])


if __name__ == "__main__":
    sys.exit(main())

"""Cell transfer on compositions: positivity, chain agreement and two-row shapes."""
import argparse
import sys

from _common import report

from qsymcell.checks import chain_transfer_agreement, composition_transfer_sweep, two_row_sweep
from qsymcell.config import TransferConfig, TwoRowConfig


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-total", type=int, default=TransferConfig.max_total)
    parser.add_argument("--two-row-max-total", type=int, default=TwoRowConfig.max_total)
    args = parser.parse_args()
    code = 0
    s = composition_transfer_sweep(args.max_total)
    code |= report("positivity", s, s["violations"])
    s = chain_transfer_agreement(args.max_total)
    code |= report("chains", s, s["mismatches"])
    s = two_row_sweep(args.two_row_max_total)
    code |= report("two-row", s, s["mismatches"] + s["matrix_mismatches"])
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Jacobi-Trudi determinants against wave Schur functions on skew shapes.

The default run (all shapes up to 10 cells, 20 assignments each) takes about
ten minutes on one core.
"""
import argparse
import sys

from _common import report

from qsymcell.checks import jacobi_trudi_sweep, wave_oracle_sweep
from qsymcell.config import JacobiTrudiConfig, add_arguments, as_kwargs, from_args


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    add_arguments(parser, JacobiTrudiConfig)
    parser.add_argument("--oracle-cells", type=int, default=7,
                        help="also compare with brute-force tableaux up to this size")
    args = parser.parse_args()
    cfg = from_args(JacobiTrudiConfig, args)
    code = 0
    if args.oracle_cells:
        s = wave_oracle_sweep(max_cells=args.oracle_cells, seed=cfg.seed)
        code |= report("tableau oracle", s, s["mismatches"])
    s = jacobi_trudi_sweep(**as_kwargs(cfg))
    code |= report("jacobi-trudi", s, s["mismatches"])
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Maximal elements of PC_n against the pairs fixed by cell transfer.

``--max-n 10`` repeats the largest published check; 9 and 10 take a few
seconds each.
"""
import argparse
import json
import sys

from qsymcell.config import ConjectureConfig
from qsymcell.pcposet import verify_conjecture


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=ConjectureConfig.max_n)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()
    ok = True
    for n in range(1, args.max_n + 1):
        r = verify_conjecture(n)
        ok &= r["agree"]
        if args.json:
            print(json.dumps(r))
        else:
            print(f"n={n:2d}  pairs={r['nodes']:5d}  maximal={r['maximal']:4d}  "
                  f"fixed={r['fixed']:4d}  agree={r['agree']}  {r['seconds']:.2f}s")
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())

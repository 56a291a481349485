import json
import sys


def report(name: str, stats: dict, failures: list) -> int:
    """Print a summary, dump failures as JSON, return an exit code."""
    shown = {k: (len(v) if isinstance(v, list) else v) for k, v in stats.items()}
    print(f"{name}: " + ", ".join(f"{k}={v}" for k, v in shown.items()))
    if failures:
        print(json.dumps(failures[:20], default=str), file=sys.stderr)
        return 2
    return 0

import sys

from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def comps(min_size=0, max_size=5):
    """Compositions of total size between ``min_size`` and ``max_size``."""
    return st.integers(min_size, max_size).flatmap(
        lambda n: st.sets(st.integers(1, max(n - 1, 1)), max_size=max(n - 1, 0)).map(
            lambda D, n=n: _from_set(n, D)))


def _from_set(n, D):
    if n == 0:
        return ()
    cuts = [0] + sorted(d for d in D if 0 < d < n) + [n]
    return tuple(b - a for a, b in zip(cuts, cuts[1:]))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.line(k))

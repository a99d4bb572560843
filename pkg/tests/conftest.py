import sys
from functools import lru_cache
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from hypothesis import settings  # noqa: E402

from qsrg.graph import point_graph  # noqa: E402
from qsrg.quadric import standard_quadric  # noqa: E402
from qsrg.switching import switched_graph  # noqa: E402

settings.register_profile("exact", deadline=None, max_examples=60)
settings.load_profile("exact")

# (family, n, s) cases checked exactly; E_9 is covered by the acceptance suite
CASES = [("h", 3, 0), ("p", 4, 0), ("e", 5, 0), ("h", 5, 0), ("h", 5, 1), ("p", 6, 0), ("p", 6, 1),
         ("e", 7, 0), ("e", 7, 1), ("h", 7, 0), ("h", 7, 1), ("h", 7, 2)]


@lru_cache(maxsize=None)
def quadric(family, n):
    return standard_quadric(family, n)


@lru_cache(maxsize=None)
def gamma(family, n):
    return point_graph(quadric(family, n))


@lru_cache(maxsize=None)
def switched(family, n, s):
    """(TypedPartition, switched graph) for the default alpha_s."""
    return switched_graph(quadric(family, n), s)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])

import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from orchard import Color, ColoredDrawing, GraphSpec, random_generic  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# --- acceptance reporting ------------------------------------------------------

_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    _ACCEPTANCE[item.nodeid] = (marker.args[0], "PASS" if call.excinfo is None else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in sorted(_ACCEPTANCE.values()):
        terminalreporter.write_line(f"{outcome}  {label}")


# --- strategies ----------------------------------------------------------------


@st.composite
def knn_drawings(draw, min_n=1, max_n=4):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    span = draw(st.sampled_from([12, 40, 1000]))
    d = random_generic(n, n, span, seed)
    perm = random.Random(seed).sample(range(2 * n), 2 * n)
    colors = [d.colors[k] for k in perm]
    return ColoredDrawing.complete_bipartite(d.points, colors)


@st.composite
def any_drawings(draw, max_m=8):
    """Generic drawings with arbitrary colors and edge sets (non-bipartite allowed)."""
    m = draw(st.integers(0, max_m))
    seed = draw(st.integers(0, 2**32 - 1))
    d = random_generic(m, 0, 4 * m + 8, seed)
    colors = draw(st.lists(st.sampled_from(list(Color)), min_size=m, max_size=m))
    pairs = [(a, b) for a in range(m) for b in range(a + 1, m)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return ColoredDrawing(d.points, colors, GraphSpec(m, edges))


@pytest.fixture
def unit_square():
    return ColoredDrawing.complete_bipartite([(0, 0), (1, 0), (1, 1), (0, 1)], "bwbw")

from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from pcposet.order import from_index_covers, load_poset  # noqa: E402

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "pcposet" / "fixtures"
FIGS = ("fig1", "fig2", "fig3", "fig4a", "fig4b")


def fixture_path(name: str) -> Path:
    return FIXTURES / f"{name}.poset"


@pytest.fixture(params=FIGS)
def fig_name(request):
    return request.param


@pytest.fixture
def figs():
    return {name: load_poset(fixture_path(name)) for name in FIGS}


@st.composite
def posets(draw, min_n=1, max_n=7, bounded=False):
    """Random posets from upper-triangular relations, optionally with 0 and 1 added."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())]
    perm = draw(st.permutations(range(n)))
    pairs = [(perm[i], perm[j]) for i, j in pairs]
    if bounded:
        pairs = [(i + 1, j + 1) for i, j in pairs]
        pairs += [(0, i + 1) for i in range(n)] + [(i + 1, n + 1) for i in range(n)]
        n += 2
    return from_index_covers(n, pairs)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)

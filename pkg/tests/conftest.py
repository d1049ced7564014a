from pathlib import Path

import pytest
from hypothesis import strategies as st

from topograph import graphio
from topograph.core import EdgeGroup, Graph

ROOT = Path(__file__).resolve().parent.parent
GRAPHS = ROOT / "graphs"


def load_graph(name: str) -> Graph:
    return graphio.load(GRAPHS / name)


@pytest.fixture
def partial_edge():
    return load_graph("partial_edge.graph")


@pytest.fixture
def omega_undefined():
    return load_graph("omega_undefined.graph")


@pytest.fixture
def escaping():
    return load_graph("escaping.graph")


@pytest.fixture
def loop():
    return load_graph("loop.graph")


@pytest.fixture
def two_cycle():
    return load_graph("two_cycle.graph")


@pytest.fixture
def single_edge():
    return Graph.build(["u", "w"], {"e": ("u", "w")})


@st.composite
def total_graphs(draw, max_vertices=4, max_edges=6):
    nv = draw(st.integers(1, max_vertices))
    ne = draw(st.integers(0, max_edges))
    vs = [f"v{i}" for i in range(nv)]
    ends = draw(st.lists(st.tuples(st.integers(0, nv - 1), st.integers(0, nv - 1)), min_size=ne, max_size=ne))
    return Graph.build(vs, {f"e{i}": (vs[d], vs[r]) for i, (d, r) in enumerate(ends)})


@st.composite
def partial_graphs(draw, max_vertices=4, max_edges=6):
    g = draw(total_graphs(max_vertices, max_edges))
    if not g.groups:
        g = Graph(g.vertices, (EdgeGroup("e0", g.vertices[0], g.vertices[0]),))
    mask = draw(st.lists(st.booleans(), min_size=len(g.groups), max_size=len(g.groups)))
    mask[draw(st.integers(0, len(mask) - 1))] = True
    groups = tuple(EdgeGroup(grp.id, grp.dom, None) if m else grp for grp, m in zip(g.groups, mask))
    omega = draw(st.sampled_from([None, "undefined", "defined"]))
    if omega == "undefined":
        groups += (EdgeGroup("w", g.vertices[0], None, _omega()),)
    elif omega == "defined":
        groups += (EdgeGroup("w", g.vertices[0], g.vertices[-1], _omega()),)
    return Graph(g.vertices, groups, None, draw(st.booleans()))


def _omega():
    from topograph.core import OMEGA
    return OMEGA


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("tests.test_acceptance")
    results = getattr(module, "ACCEPTANCE_RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
    passed = sum(" PASS " in line for line in results.values())
    terminalreporter.write_line(f"{passed}/{len(results)} criteria passed")

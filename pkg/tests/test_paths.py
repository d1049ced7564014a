import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topograph.core import Graph, GraphError, tilde_completion
from topograph.dual import product_form
from topograph.paths import (Lasso, Path, boundary_finite, boundary_paths, enumerate_paths, format_path,
                             lassos, parse_path, primitive_root, shift, shift_power, truncate)

from . import oracles
from .conftest import total_graphs


def edge_dict(g):
    return {e: (g.d(e), g.r(e)) for e in g.edge_ids}


@pytest.fixture
def lasso_graph():
    # e:u->a enters the two-cycle f:a->b, g:b->a
    return Graph.build(["u", "a", "b"], {"e": ("a", "u"), "f": ("b", "a"), "g": ("a", "b")})


class TestEnumerate:
    def test_single_edge(self, single_edge):
        assert enumerate_paths(single_edge, 1) == [Path(("e",), "u")]
        assert enumerate_paths(single_edge, 2) == []

    def test_loop(self, loop):
        for n in range(1, 5):
            assert enumerate_paths(loop, n) == [Path(("e",) * n, "v")]

    def test_zero(self, two_cycle):
        assert [p.source for p in enumerate_paths(two_cycle, 0)] == ["a", "b"]

    @given(total_graphs(), st.integers(0, 3))
    def test_count_matches_matrix_power(self, g, n):
        assert len(enumerate_paths(g, n)) == oracles.path_count(g.vertices, edge_dict(g), n)

    @given(total_graphs(max_edges=5), st.integers(1, 3))
    def test_matches_filtered_product(self, g, n):
        assert {p.edges for p in enumerate_paths(g, n)} == set(oracles.composable_words(edge_dict(g), n))


class TestBoundaryFinite:
    def test_single_edge(self, single_edge):
        assert [format_path(p) for p in boundary_finite(single_edge, 2)] == ["@u", "e"]

    def test_loop_has_none(self, loop):
        assert boundary_finite(loop, 3) == []

    def test_completed_example(self, partial_edge):
        g, inf = tilde_completion(partial_edge)
        # v -> w -> ∞: the completion point receives f, so only v is singular
        got = {format_path(p) for p in boundary_finite(g, 3)}
        assert got == {"@v", "e", "f,e"}

    @given(total_graphs(max_edges=5), st.integers(0, 3))
    def test_matches_oracle(self, g, n):
        edges = edge_dict(g)
        sg = oracles.singular_set(g.vertices, edges)
        want = {(v,) for v in sg}
        for length in range(1, n + 1):
            want |= {w for w in oracles.composable_words(edges, length) if edges[w[-1]][0] in sg}
        got = {p.edges if p.edges else (p.source,) for p in boundary_finite(g, n)}
        assert got == want


class TestLassos:
    def test_loop(self, loop):
        assert lassos(loop, 3, 3) == [Lasso((), ("e",))]

    def test_acyclic(self, single_edge):
        assert lassos(single_edge, 3, 3) == []

    def test_two_cycle_rotations(self, two_cycle):
        got = lassos(two_cycle, 0, 2)
        assert {x.cycle for x in got} == {("e", "f"), ("f", "e")}

    def test_canonical_form(self):
        x = Lasso(("a", "b", "c", "b", "c"), ("b", "c", "b", "c"))
        assert x.prefix == ("a",) and x.cycle == ("b", "c")
        assert Lasso(x.prefix, x.cycle) == x

    def test_rotation_forced(self):
        assert Lasso(("c",), ("b", "c")) == Lasso((), ("c", "b"))

    @settings(max_examples=60, deadline=None)
    @given(total_graphs(max_vertices=3, max_edges=4), st.integers(0, 2), st.integers(1, 3))
    def test_matches_brute_force(self, g, a, p):
        horizon = a + 2 * p
        got = lassos(g, a, p)
        keys = [tuple(x.edge(i) for i in range(horizon)) for x in got]
        assert len(set(keys)) == len(keys)
        assert set(keys) == oracles.eventually_periodic(edge_dict(g), a, p)

    @given(st.lists(st.sampled_from("xyz"), max_size=4), st.lists(st.sampled_from("xyz"), min_size=1, max_size=4))
    def test_canonical_idempotent_and_sequence_preserving(self, pre, cyc):
        x = Lasso(tuple(pre), tuple(cyc))
        assert Lasso(x.prefix, x.cycle) == x
        naive = lambda i: pre[i] if i < len(pre) else cyc[(i - len(pre)) % len(cyc)]
        assert all(x.edge(i) == naive(i) for i in range(20))
        assert primitive_root(x.cycle) == x.cycle


class TestShift:
    def test_length_one(self, single_edge):
        assert shift(Path(("e",), "u")) == Path((), "u")

    def test_loop_fixed(self):
        z = Lasso((), ("e",))
        assert shift(z) == z

    def test_drops_prefix(self):
        assert shift(Lasso(("e",), ("f", "g"))) == Lasso((), ("f", "g"))

    def test_outside_domain(self):
        with pytest.raises(GraphError, match="not in dom"):
            shift(Path((), "u"))

    def test_power_undefined(self):
        assert shift_power(Path(("e",), "u"), 2) is None

    @settings(deadline=None)
    @given(st.lists(st.sampled_from("xy"), max_size=3), st.lists(st.sampled_from("xy"), min_size=1, max_size=3))
    def test_shift_closed(self, pre, cyc):
        x = Lasso(tuple(pre), tuple(cyc))
        y = shift(x)
        assert Lasso(y.prefix, y.cycle) == y
        assert all(y.edge(i) == x.edge(i + 1) for i in range(12))


class TestTruncate:
    def test_padding(self, single_edge):
        assert truncate(single_edge, Path((), "u"), 2) == ("u", None, None)
        assert truncate(single_edge, Path(("e",), "u"), 2) == ("w", "e", None)

    def test_loop_lasso(self, loop):
        assert truncate(loop, Lasso((), ("e",)), 3) == ("v", "e", "e", "e")

    @settings(max_examples=50, deadline=None)
    @given(total_graphs(max_vertices=3, max_edges=4), st.integers(0, 3))
    def test_shift_coherence(self, g, k):
        for x in boundary_paths(g, 2):
            if isinstance(x, Path) and not x.edges:
                continue
            first = x.edges[0] if isinstance(x, Path) else x.edge(0)
            assert truncate(g, shift(x), k) == (g.d(first),) + truncate(g, x, k + 1)[2:]

    @settings(max_examples=50, deadline=None)
    @given(total_graphs(max_vertices=3, max_edges=4), st.integers(1, 3))
    def test_bijection_with_product_vertices(self, g, k):
        from topograph.dual import tuple_id
        p, _ = product_form(g, k)
        images = [tuple_id(truncate(g, x, k)) for x in boundary_finite(g, k - 1)]
        images += [tuple_id((g.r(w.edges[0]),) + w.edges) for w in enumerate_paths(g, k)]
        assert len(images) == len(set(images))
        assert set(images) == set(p.vertices)


class TestText:
    def test_formats(self, lasso_graph):
        assert format_path(Path((), "u")) == "@u"
        assert format_path(Lasso(("e",), ("f", "g"))) == "e|(f,g)^ω"

    def test_parse_variants(self, lasso_graph):
        want = Lasso(("e",), ("f", "g"))
        for text in ("e|(f,g)^ω", "e|(f,g)^w", "e|(f,g)^omega", " e|(f,g,f,g)^ω "):
            assert parse_path(text, lasso_graph) == want

    def test_parse_rejects(self, lasso_graph):
        with pytest.raises(GraphError):
            parse_path("f,e", lasso_graph)
        with pytest.raises(GraphError):
            parse_path("|(e)^ω", lasso_graph)
        with pytest.raises(ValueError):
            parse_path("e|(f,g)", lasso_graph)

    @settings(deadline=None)
    @given(total_graphs(max_vertices=3, max_edges=4))
    def test_round_trip(self, g):
        for x in boundary_paths(g, 2) + enumerate_paths(g, 2):
            assert parse_path(format_path(x), g) == x

    def test_minted_ids(self, loop):
        from topograph.dual import dual
        h, _ = dual(dual(loop)[0])
        (e,) = h.edge_ids
        x = parse_path(f"{e},{e}", h)
        assert x.edges == (e, e)

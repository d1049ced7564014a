import pytest
from hypothesis import given, settings

from topograph.core import OMEGA, ZERO, Graph, GraphError, finite, tilde_completion
from topograph.ktheory import k_groups
from topograph.unital import Verdict, check_y_compactness, classify_infinity, is_unital

from .conftest import partial_graphs, total_graphs


def test_one_undefined_edge(partial_edge):
    r = classify_infinity(partial_edge)
    assert (r.undefined_edges, r.escaping, r.never_received) == (finite(1), ZERO, finite(1))
    assert r.verdict is Verdict.REGULAR_AT_INFINITY
    assert is_unital(partial_edge)[0] and check_y_compactness(partial_edge)


def test_omega_undefined_group(omega_undefined):
    r = classify_infinity(omega_undefined)
    assert r.undefined_edges == OMEGA
    assert r.verdict is Verdict.SINGULAR_AT_INFINITY
    assert str(r) == "non-unital (∞ singular: E1∖dom(r) infinite)"
    assert not is_unital(omega_undefined)[0] and not check_y_compactness(omega_undefined)


def test_escaping(escaping):
    r = classify_infinity(escaping)
    assert r.undefined_edges == finite(1) and r.escaping == OMEGA
    assert str(r) == "non-unital (∞ singular: ranges escape to infinity)"
    assert not check_y_compactness(escaping)


def test_escaping_has_finite_necessary_cardinals(escaping):
    # the necessary conditions hold, yet the algebra is not unital
    from topograph.core import classify
    assert classify(escaping).singular and len(classify(escaping).singular) < 10
    assert classify_infinity(escaping).undefined_edges.is_finite
    assert not is_unital(escaping)[0]


def test_total_graph(loop):
    ok, r = is_unital(loop)
    assert ok and r.verdict is Verdict.TOTAL_RANGE


def test_y_needs_partial_range(loop):
    with pytest.raises(GraphError):
        check_y_compactness(loop)


def test_omega_group_onto_singular_vertex_keeps_y_closed():
    # infinitely many edges into w: they accumulate at (w, ∞), which lies in Y
    g = Graph.build(["v", "w"], {"f": ("v", None)}, omega={"z": ("v", "w")})
    assert check_y_compactness(g)
    assert is_unital(g)[0]


def test_json(omega_undefined):
    assert classify_infinity(omega_undefined).to_json()["undefined_edges"] == "omega"


@settings(max_examples=200)
@given(partial_graphs())
def test_equivalence_chain(g):
    unital, report = is_unital(g)
    assert unital == check_y_compactness(g) == (report.verdict is Verdict.REGULAR_AT_INFINITY)
    if unital:
        assert report.undefined_edges.is_finite


@settings(max_examples=60)
@given(partial_graphs())
def test_finite_verdict_matches_completion(g):
    if not g.is_finite or g.escape:
        return
    t, inf = tilde_completion(g)
    assert (inf in t.regular) == is_unital(g)[0]


@settings(deadline=None)
@given(total_graphs())
def test_unitization_adds_one_free_generator(g):
    t, _ = tilde_completion(g)
    k0, k1 = k_groups(g)
    c0, c1 = k_groups(t, g.regular)
    assert c0.free_rank == k0.free_rank + 1 and c0.torsion == k0.torsion and c1 == k1


def test_unitization_partial(partial_edge):
    t, _ = tilde_completion(partial_edge)
    k0, _ = k_groups(partial_edge)
    assert k_groups(t, partial_edge.regular)[0].free_rank == k0.free_rank + 1

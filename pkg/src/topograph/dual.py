"""Dual graphs, iterated duals and factor maps.

The dual E1 of a graph E has

* vertices ``(r(e),e)`` for every edge e, plus ``(v,∞)`` for singular v;
* edges ``(e',e)`` with ``d(e') = r(e)``, plus ``(e',∞)`` for d(e') singular;

with ``d1(e',e) = (d(e'),e)`` and ``r1(e',e) = (r(e'),e')``.  The relative
dual E_U replaces "singular" by "outside U".  Minted ids nest, so the k-th
repeated dual carries nested parentheses while :func:`product_form` builds
the same graph with flat tuples ``(v,e1,...,ek)``.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import INFINITY, EdgeGroup, Graph, GraphError, Violation, require_total_finite


def pair(a: str, b: str) -> str:
    return f"({a},{b})"


def at_infinity(a: str) -> str:
    return f"({a},{INFINITY})"


def tuple_id(items: Iterable[str | None]) -> str:
    """Flat tuple id; ``None`` entries print as the point at infinity."""
    return "(" + ",".join(INFINITY if x is None else x for x in items) + ")"


@dataclass(frozen=True)
class FactorMap:
    """Vertex and edge maps from a source graph onto a target graph."""

    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str]

    def then(self, other: FactorMap) -> FactorMap:
        """``other ∘ self``: first apply this map, then ``other``."""
        return FactorMap(
            {x: other.vertex_map[y] for x, y in self.vertex_map.items()},
            {x: other.edge_map[y] for x, y in self.edge_map.items()},
        )

    @classmethod
    def identity(cls, g: Graph) -> FactorMap:
        return cls({v: v for v in g.vertices}, {e: e for e in g.edge_ids})


def _assemble(vertices: dict[str, object], edges: dict[str, tuple[str, str, str]]) -> Graph:
    # vertices: id -> image in E0; edges: id -> (dom id, range id, image in E1)
    return Graph(tuple(vertices), tuple(EdgeGroup(e, d, r) for e, (d, r, _) in edges.items()))


def _dual(g: Graph, keep: frozenset[str]) -> tuple[Graph, FactorMap]:
    # `keep` plays the role of U: vertices outside it get a point at infinity.
    vmap: dict[str, str] = {}
    for e in g.edge_ids:
        vmap[pair(g.r(e), e)] = g.r(e)
    for v in g.vertices:
        if v not in keep:
            vmap[at_infinity(v)] = v
    edges: dict[str, tuple[str, str, str]] = {}
    for e2 in g.edge_ids:
        head = pair(g.r(e2), e2)
        for e in g.edges_into[g.d(e2)]:
            edges[pair(e2, e)] = (pair(g.d(e2), e), head, e2)
        if g.d(e2) not in keep:
            edges[at_infinity(e2)] = (at_infinity(g.d(e2)), head, e2)
    n_vertices = len(g.edge_ids) + sum(v not in keep for v in g.vertices)
    if len(vmap) != n_vertices:
        raise GraphError("minted dual vertex ids collide; rename the input ids")
    out = _assemble(vmap, edges)
    if len(set(out.edge_ids)) != len(out.edge_ids):
        raise GraphError("minted dual edge ids collide; rename the input ids")
    return out, FactorMap(vmap, {e: img for e, (_, _, img) in edges.items()})


def dual(g: Graph) -> tuple[Graph, FactorMap]:
    """The dual graph E1 together with the forgetful factor map m1: E1 -> E."""
    require_total_finite(g, "dual")
    return _dual(g, g.regular)


def relative_dual(g: Graph, relative: Iterable[str]) -> tuple[Graph, FactorMap]:
    """The relative dual E_U.  ``relative_dual(g, g.regular) == dual(g)``."""
    require_total_finite(g, "relative dual")
    keep = frozenset(relative)
    if not keep <= g.regular:
        raise GraphError("U ⊄ E0_rg: " + ",".join(sorted(keep - g.regular)))
    return _dual(g, keep)


def tower(g: Graph, k: int, relative: Iterable[str] | None = None) -> tuple[list[Graph], list[FactorMap]]:
    """``[E0, E1, ..., Ek]`` and the one-step maps ``m_{j,j+1}: E_{j+1} -> E_j``.

    With ``relative`` the first step is the relative dual E_U and later steps
    are plain duals, giving E_{U,k}.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    require_total_finite(g, "iterate")
    graphs, maps = [g], []
    for j in range(k):
        if j == 0 and relative is not None:
            nxt, m = relative_dual(g, relative)
        else:
            nxt, m = dual(graphs[-1])
        graphs.append(nxt)
        maps.append(m)
    return graphs, maps


def iterate(g: Graph, k: int, relative: Iterable[str] | None = None) -> tuple[Graph, FactorMap]:
    """E_k by repeated duals, with the composite factor map m_k: E_k -> E."""
    graphs, maps = tower(g, k, relative)
    m = FactorMap.identity(graphs[-1])
    for step in reversed(maps):
        m = m.then(step)
    return graphs[-1], m


def composite_map(maps: list[FactorMap], lo: int, hi: int, top: Graph) -> FactorMap:
    """m_{lo,hi}: E_hi -> E_lo from the one-step maps of :func:`tower`."""
    m = FactorMap.identity(top)
    for step in reversed(maps[lo:hi]):
        m = m.then(step)
    return m


def product_form(g: Graph, k: int, relative: Iterable[str] | None = None) -> tuple[Graph, FactorMap]:
    """E_k built directly from tuples ``(v,e1,...,ek)`` padded with ∞.

    Vertex ``(v,e1,...,ek)`` requires ``(v,e1)`` to be a dual vertex and each
    ``(e_i,e_{i+1})`` a dual edge or ``(∞,∞)``.  Edge ``(e0,...,ek)`` has
    ``d = (d(e0),e1,...,ek)`` and ``r = (r(e0),e0,...,e_{k-1})``.
    """
    require_total_finite(g, "product form")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return g, FactorMap.identity(g)
    first = g.regular if relative is None else frozenset(relative)
    if not first <= g.regular:
        raise GraphError("U ⊄ E0_rg: " + ",".join(sorted(first - g.regular)))
    # every position uses the same rule: (e,∞) is allowed iff d(e) is not in U
    keep = first

    def successors(e: str | None) -> list[str | None]:
        # e_{i+1} such that (e_i, e_{i+1}) lies in the closure of the dual edge set;
        # None stands for the point at infinity
        if e is None:
            return [None]
        nxt: list[str | None] = list(g.edges_into[g.d(e)])
        if g.d(e) not in keep:
            nxt.append(None)
        return nxt

    def extend(prefixes: list[tuple[str, ...]], steps: int) -> list[tuple[str, ...]]:
        for _ in range(steps):
            prefixes = [p + (s,) for p in prefixes for s in successors(p[-1])]
        return prefixes

    starts = [(g.r(e), e) for e in g.edge_ids] + [(v, None) for v in g.vertices if v not in keep]
    vertex_tuples = extend(starts, k - 1)
    edge_starts = [(e0, e) for e0 in g.edge_ids for e in successors(e0)]
    edge_tuples = extend(edge_starts, k - 1)

    vmap = {tuple_id(t): t[0] for t in vertex_tuples}
    edges = {}
    for t in edge_tuples:
        e0 = t[0]
        edges[tuple_id(t)] = (tuple_id((g.d(e0),) + t[1:]), tuple_id((g.r(e0),) + t[:-1]), e0)
    if len(vmap) != len(vertex_tuples) or len(edges) != len(edge_tuples):
        raise GraphError("minted product-form ids collide; rename the input ids")
    out = _assemble(vmap, edges)
    return out, FactorMap(vmap, {e: img for e, (_, _, img) in edges.items()})


# -- factor-map verification ---------------------------------------------------


def check_factor_map(m: FactorMap, source: Graph, target: Graph,
                     regular_on: Iterable[str] | None = None) -> list[Violation]:
    """Verify the factor-map axioms of ``m: source -> target``.

    Checks commuting squares for d and r, unique lifting, surjectivity and
    regularity: the preimage of ``regular_on`` (default: regular vertices of
    the target) must consist of regular source vertices.  Relative duals are
    only regular over U, so pass ``regular_on=U`` for them.
    """
    out: list[Violation] = []
    vm, em = m.vertex_map, m.edge_map
    if set(vm) != set(source.vertices):
        out.append(Violation("domain", "vertex map is not defined exactly on the source vertices"))
        return out
    if set(em) != set(source.edge_ids):
        out.append(Violation("domain", "edge map is not defined exactly on the source edges"))
        return out
    bad_v = sorted(x for x, y in vm.items() if y not in set(target.vertices))
    bad_e = sorted(x for x, y in em.items() if y not in set(target.edge_ids))
    if bad_v or bad_e:
        out.append(Violation("codomain", "images outside the target: " + ",".join(bad_v + bad_e)))
        return out
    for y in source.edge_ids:
        e = em[y]
        if target.d(e) != vm[source.d(y)]:
            out.append(Violation("commuting square", f"d(m1({y})) != m0(d({y}))"))
        if target.r(e) != vm[source.r(y)]:
            out.append(Violation("commuting square", f"r(m1({y})) != m0(r({y}))"))
    lifts: dict[tuple[str, str], int] = Counter((em[y], source.d(y)) for y in source.edge_ids)
    by_image: dict[str, list[str]] = defaultdict(list)
    for x, v in vm.items():
        by_image[v].append(x)
    for e in target.edge_ids:
        for x in by_image.get(target.d(e), ()):
            n = lifts.get((e, x), 0)
            if n != 1:
                out.append(Violation("unique lifting", f"{n} lifts of edge {e} at vertex {x}"))
    missing = sorted(set(target.vertices) - set(vm.values()))
    if missing:
        out.append(Violation("surjectivity", "vertices not hit: " + ",".join(missing)))
    watch = target.regular if regular_on is None else frozenset(regular_on)
    src_rg = source.regular
    irregular = sorted(x for x, v in vm.items() if v in watch and x not in src_rg)
    if irregular:
        out.append(Violation("regularity", "singular preimages of regular vertices: " + ",".join(irregular)))
    return out


# -- isomorphism search --------------------------------------------------------


@dataclass(frozen=True)
class Isomorphism:
    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str]


def _adjacency(g: Graph) -> Counter:
    return Counter((grp.dom, grp.range, grp.multiplicity) for grp in g.groups)


def _refine(graphs: list[Graph]) -> list[dict[str, int]]:
    """Joint colour refinement on the disjoint union; returns comparable colours."""
    colours = []
    for g in graphs:
        colours.append({v: 0 for v in g.vertices})
    adj = [_adjacency(g) for g in graphs]
    n_classes = -1
    while True:
        sigs = []
        for g, col, a in zip(graphs, colours, adj):
            out_n: dict[str, list] = defaultdict(list)
            in_n: dict[str, list] = defaultdict(list)
            for (u, w, mult), c in a.items():
                wc = -1 if w is None else col[w]
                out_n[u].append((wc, str(mult), c))
                if w is not None:
                    in_n[w].append((col[u], str(mult), c))
            sigs.append({v: (col[v], tuple(sorted(out_n[v])), tuple(sorted(in_n[v]))) for v in g.vertices})
        palette = sorted({s for sg in sigs for s in sg.values()})
        index = {s: i for i, s in enumerate(palette)}
        colours = [{v: index[s] for v, s in sg.items()} for sg in sigs]
        if len(palette) == n_classes:
            return colours
        n_classes = len(palette)


def isomorphic(a: Graph, b: Graph) -> Isomorphism | None:
    """Find vertex and edge bijections commuting with d and r, or ``None``.

    Plain backtracking over vertices, pruned by colour refinement (which
    subsumes degree sequences).  Partial ranges are matched to partial ranges;
    omega groups only to omega groups.  Deterministic.
    """
    if len(a.vertices) != len(b.vertices) or len(a.groups) != len(b.groups):
        return None
    if a.escape != b.escape:
        return None
    ca, cb = _refine([a, b])
    if Counter(ca.values()) != Counter(cb.values()):
        return None
    adj_a, adj_b = _adjacency(a), _adjacency(b)
    pair_a: dict[tuple, Counter] = defaultdict(Counter)
    pair_b: dict[tuple, Counter] = defaultdict(Counter)
    for (u, w, m), c in adj_a.items():
        pair_a[(u, w)][m] += c
    for (u, w, m), c in adj_b.items():
        pair_b[(u, w)][m] += c

    class_size = Counter(ca.values())
    # Most constrained first, then follow adjacency so partial maps stay connected.
    neighbours: dict[str, set[str]] = defaultdict(set)
    for (u, w) in pair_a:
        if w is not None:
            neighbours[u].add(w)
            neighbours[w].add(u)
    order: list[str] = []
    placed: set[str] = set()
    remaining = sorted(a.vertices, key=lambda v: (class_size[ca[v]], v))
    while remaining:
        frontier = [v for v in remaining if neighbours[v] & placed]
        nxt = frontier[0] if frontier else remaining[0]
        order.append(nxt)
        placed.add(nxt)
        remaining.remove(nxt)

    candidates = {v: sorted(w for w in b.vertices if cb[w] == ca[v]) for v in a.vertices}
    phi: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v: str, w: str) -> bool:
        if pair_a.get((v, None), Counter()) != pair_b.get((w, None), Counter()):
            return False
        if pair_a.get((v, v), Counter()) != pair_b.get((w, w), Counter()):
            return False
        for x, y in phi.items():
            if pair_a.get((v, x), Counter()) != pair_b.get((w, y), Counter()):
                return False
            if pair_a.get((x, v), Counter()) != pair_b.get((y, w), Counter()):
                return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in candidates[v]:
            if w in used or not consistent(v, w):
                continue
            phi[v] = w
            used.add(w)
            if search(i + 1):
                return True
            del phi[v]
            used.discard(w)
        return False

    if not search(0):
        return None
    pool: dict[tuple, list[str]] = defaultdict(list)
    for grp in b.groups:
        pool[(grp.dom, grp.range, grp.multiplicity)].append(grp.id)
    emap = {}
    for grp in a.groups:
        key = (phi[grp.dom], None if grp.range is None else phi[grp.range], grp.multiplicity)
        emap[grp.id] = pool[key].pop(0)
    return Isomorphism(dict(phi), emap)


def is_isomorphism(iso: Isomorphism, a: Graph, b: Graph) -> bool:
    """Independent check that ``iso`` is a graph isomorphism ``a -> b``."""
    vm, em = iso.vertex_map, iso.edge_map
    if sorted(vm) != sorted(a.vertices) or sorted(vm.values()) != sorted(b.vertices):
        return False
    if sorted(em) != sorted(a.edge_ids) or sorted(em.values()) != sorted(b.edge_ids):
        return False
    for grp in a.groups:
        img = b.group(em[grp.id])
        if img.dom != vm[grp.dom] or img.multiplicity != grp.multiplicity:
            return False
        if (img.range is None) != (grp.range is None):
            return False
        if grp.range is not None and img.range != vm[grp.range]:
            return False
    return True

"""Finitely presented discrete topological graphs.

A graph is a quadruple (E0, E1, d, r) where every space is discrete.  Edges
are grouped: a plain edge is a group of multiplicity one, an ``omega`` group
stands for countably many edges sharing one domain and one (possibly
undefined) range.  The range map may be partial, and a graph may carry a
relative set ``U`` of regular vertices.

Edges point from ``d(e)`` to ``r(e)``.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Mapping

INFINITY = "∞"


class GraphError(ValueError):
    """A graph does not satisfy the precondition of an operation."""


@dataclass(frozen=True)
class Cardinal:
    """A cardinal that is either a nonnegative integer or countably infinite.

    ``n`` is ``None`` for omega.
    """

    n: int | None

    def __post_init__(self):
        if self.n is not None and self.n < 0:
            raise ValueError("negative cardinal")

    @property
    def is_finite(self) -> bool:
        return self.n is not None

    def __add__(self, other: Cardinal) -> Cardinal:
        if self.n is None or other.n is None:
            return OMEGA
        return Cardinal(self.n + other.n)

    def __mul__(self, other: Cardinal) -> Cardinal:
        if self.n == 0 or other.n == 0:
            return ZERO
        if self.n is None or other.n is None:
            return OMEGA
        return Cardinal(self.n * other.n)

    def __lt__(self, other: Cardinal) -> bool:
        if self.n is None:
            return False
        if other.n is None:
            return True
        return self.n < other.n

    def __le__(self, other: Cardinal) -> bool:
        return self == other or self < other

    def __gt__(self, other: Cardinal) -> bool:
        return other < self

    def __ge__(self, other: Cardinal) -> bool:
        return other <= self

    def __str__(self) -> str:
        return "ω" if self.n is None else str(self.n)

    def to_json(self) -> int | str:
        return "omega" if self.n is None else self.n


def finite(n: int) -> Cardinal:
    return Cardinal(n)


ZERO = Cardinal(0)
ONE = Cardinal(1)
OMEGA = Cardinal(None)


def cardinal_sum(values: Iterable[Cardinal]) -> Cardinal:
    total = ZERO
    for c in values:
        total = total + c
    return total


@dataclass(frozen=True)
class EdgeGroup:
    """Edges sharing a domain and a range.  ``range is None`` means the
    members lie outside dom(r)."""

    id: str
    dom: str
    range: str | None
    multiplicity: Cardinal = ONE

    @property
    def is_omega(self) -> bool:
        return not self.multiplicity.is_finite


@dataclass(frozen=True)
class Graph:
    """Immutable graph value.  Vertices and groups are kept sorted by id so
    that equal graphs compare and print identically.  Duplicates are kept so
    that :func:`validate` can report them."""

    vertices: tuple[str, ...]
    groups: tuple[EdgeGroup, ...] = ()
    relative: frozenset[str] | None = None
    escape: bool = False

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "groups", tuple(sorted(self.groups, key=lambda g: g.id)))
        if self.relative is not None:
            object.__setattr__(self, "relative", frozenset(self.relative))

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Mapping[str, tuple[str, str | None]] = (),
              omega: Mapping[str, tuple[str, str | None]] = (), relative=None,
              escape: bool = False) -> Graph:
        """Convenience constructor: ``edges`` maps edge id to ``(dom, range)``."""
        groups = [EdgeGroup(k, d, r) for k, (d, r) in dict(edges).items()]
        groups += [EdgeGroup(k, d, r, OMEGA) for k, (d, r) in dict(omega).items()]
        rel = None if relative is None else frozenset(relative)
        return cls(tuple(vertices), tuple(groups), rel, escape)

    # -- lookups -------------------------------------------------------------

    @cached_property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(g.id for g in self.groups)

    @cached_property
    def _groups_by_id(self) -> dict[str, EdgeGroup]:
        return {g.id: g for g in self.groups}

    def group(self, edge_id: str) -> EdgeGroup:
        return self._groups_by_id[edge_id]

    def d(self, edge_id: str) -> str:
        return self._groups_by_id[edge_id].dom

    def r(self, edge_id: str) -> str | None:
        return self._groups_by_id[edge_id].range

    @cached_property
    def is_total(self) -> bool:
        return all(g.range is not None for g in self.groups)

    @cached_property
    def is_finite(self) -> bool:
        return not any(g.is_omega for g in self.groups)

    @cached_property
    def edges_into(self) -> dict[str, tuple[str, ...]]:
        into: dict[str, list[str]] = defaultdict(list)
        for g in self.groups:
            if g.range is not None:
                into[g.range].append(g.id)
        return {v: tuple(into.get(v, ())) for v in self.vertices}

    @cached_property
    def edges_from(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = defaultdict(list)
        for g in self.groups:
            out[g.dom].append(g.id)
        return {v: tuple(out.get(v, ())) for v in self.vertices}

    @cached_property
    def classification(self) -> VertexClassification:
        return classify(self)

    @property
    def regular(self) -> frozenset[str]:
        return self.classification.regular

    @property
    def singular(self) -> frozenset[str]:
        return self.classification.singular

    def with_relative(self, relative: Iterable[str] | None) -> Graph:
        return replace(self, relative=None if relative is None else frozenset(relative))

    def __str__(self) -> str:
        from .graphio import dumps
        return dumps(self)


class VertexClass(enum.Enum):
    REGULAR = "regular"
    SINGULAR_SOURCE = "singular-source"
    SINGULAR_INFINITE_RECEIVER = "singular-infinite-receiver"


@dataclass(frozen=True)
class VertexClassification:
    receivers: Mapping[str, Cardinal]
    classes: Mapping[str, VertexClass]

    @cached_property
    def regular(self) -> frozenset[str]:
        return frozenset(v for v, c in self.classes.items() if c is VertexClass.REGULAR)

    @cached_property
    def singular(self) -> frozenset[str]:
        return frozenset(v for v, c in self.classes.items() if c is not VertexClass.REGULAR)

    @cached_property
    def sources(self) -> frozenset[str]:
        return frozenset(v for v, c in self.classes.items() if c is VertexClass.SINGULAR_SOURCE)

    def __getitem__(self, v: str) -> VertexClass:
        return self.classes[v]


def classify(g: Graph) -> VertexClassification:
    """Regular vertices receive finitely many and at least one edge.

    Closures are trivial on discrete spaces, so a vertex outside the closure
    of r(E1) is just a vertex receiving nothing, and E0_fin is the set of
    vertices with finite r-fiber.
    """
    receivers = {v: ZERO for v in g.vertices}
    for grp in g.groups:
        if grp.range is not None and grp.range in receivers:
            receivers[grp.range] = receivers[grp.range] + grp.multiplicity
    classes = {}
    for v, c in receivers.items():
        if c == ZERO:
            classes[v] = VertexClass.SINGULAR_SOURCE
        elif c.is_finite:
            classes[v] = VertexClass.REGULAR
        else:
            classes[v] = VertexClass.SINGULAR_INFINITE_RECEIVER
    return VertexClassification(receivers, classes)


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


def validate(g: Graph) -> list[Violation]:
    """Every violated invariant of ``g``; an empty list means valid."""
    out: list[Violation] = []
    seen: set[str] = set()
    for v in g.vertices:
        if not v:
            out.append(Violation("empty id", "vertex with empty id"))
        if v in seen:
            out.append(Violation("duplicate vertex", v))
        seen.add(v)
    vertex_set = set(g.vertices)
    seen_e: set[str] = set()
    for grp in g.groups:
        if not grp.id:
            out.append(Violation("empty id", "edge with empty id"))
        if grp.id in seen_e:
            out.append(Violation("duplicate edge", grp.id))
        seen_e.add(grp.id)
        if grp.multiplicity < ONE:
            out.append(Violation("empty group", f"edge group {grp.id} has multiplicity {grp.multiplicity}"))
        if grp.dom not in vertex_set:
            out.append(Violation("unknown vertex", f"edge {grp.id} has unknown domain {grp.dom}"))
        if grp.range is not None and grp.range not in vertex_set:
            out.append(Violation("unknown vertex", f"edge {grp.id} has unknown range {grp.range}"))
    if g.relative is not None:
        unknown = sorted(set(g.relative) - vertex_set)
        for v in unknown:
            out.append(Violation("unknown vertex", f"relative set names unknown vertex {v}"))
        if not out:
            bad = sorted(set(g.relative) - g.regular)
            if bad:
                out.append(Violation("U ⊄ E0_rg", "relative set contains non-regular vertices " + ",".join(bad)))
    if g.escape and g.is_total:
        out.append(Violation("illegal escape", "escape omega requires at least one edge with undefined range"))
    return out


def require_valid(g: Graph) -> None:
    problems = validate(g)
    if problems:
        raise GraphError("; ".join(map(str, problems)))


def require_total_finite(g: Graph, what: str) -> None:
    require_valid(g)
    if not g.is_total:
        raise GraphError(f"{what} requires a total range map (r is partial)")
    if not g.is_finite:
        raise GraphError(f"{what} requires a finite graph (omega groups present)")


def is_sgds(g: Graph) -> bool:
    """True iff r is injective, i.e. ``g`` comes from a singly generated
    dynamical system.  Requires total r."""
    require_valid(g)
    if not g.is_total:
        raise GraphError("isSGDS requires a total range map (r is partial)")
    return all(c <= ONE for c in g.classification.receivers.values())


def fresh_infinity_vertex(g: Graph) -> str:
    name = INFINITY
    taken = set(g.vertices)
    while name in taken:
        name += "'"
    return name


def tilde_completion(g: Graph) -> tuple[Graph, str]:
    """Send every undefined edge to a new point at infinity.

    Returns the completed graph and the id of the added vertex.  The relative
    set and escape flag are dropped: the result is a plain total graph.
    """
    require_valid(g)
    if not g.is_finite:
        raise GraphError("tilde completion of a graph with omega groups is not discrete")
    inf = fresh_infinity_vertex(g)
    groups = tuple(grp if grp.range is not None else replace(grp, range=inf) for grp in g.groups)
    return Graph(g.vertices + (inf,), groups), inf


def restrict(f: Graph, vertices: Iterable[str]) -> Graph:
    """Restrict a total graph to a vertex subset containing d(F1).  Ranges
    landing outside the subset become undefined."""
    require_valid(f)
    if not f.is_total:
        raise GraphError("restrict requires a total graph")
    keep = frozenset(vertices)
    missing = keep - set(f.vertices)
    if missing:
        raise GraphError("restriction set names unknown vertices " + ",".join(sorted(missing)))
    bad = sorted(grp.id for grp in f.groups if grp.dom not in keep)
    if bad:
        raise GraphError("edges with domain outside the restriction set: " + ",".join(bad))
    groups = tuple(grp if grp.range in keep else replace(grp, range=None) for grp in f.groups)
    return Graph(tuple(keep), groups)


def relabel(g: Graph, vmap: Mapping[str, str], emap: Mapping[str, str]) -> Graph:
    groups = tuple(
        replace(grp, id=emap[grp.id], dom=vmap[grp.dom],
                range=None if grp.range is None else vmap[grp.range])
        for grp in g.groups
    )
    rel = None if g.relative is None else frozenset(vmap[v] for v in g.relative)
    return Graph(tuple(vmap[v] for v in g.vertices), groups, rel, g.escape)

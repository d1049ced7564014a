"""Finite paths, boundary paths and the shift.

Paths compose right to left: ``(e1,...,en)`` is a path when
``d(e_k) = r(e_{k+1})``.  So ``r`` of a path is ``r(e1)``, ``d`` of a path is
``d(en)``, and the shift drops ``e1``.  A boundary path is a finite path
whose d-end is a singular vertex, or an infinite path.  Only eventually
periodic infinite paths are representable, as lassos
``prefix · cycle · cycle · ...``.

Text form: a finite path prints as its edges joined by commas, a length-0
path at ``v`` prints as ``@v``, and a lasso prints as ``prefix|(cycle)^ω``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .core import Graph, GraphError, require_valid
from .dual import tuple_id


@dataclass(frozen=True, order=True)
class Path:
    """A finite path.  ``source`` is d(path), which for length 0 is the vertex."""

    edges: tuple[str, ...]
    source: str

    def __len__(self) -> int:
        return len(self.edges)

    def __str__(self) -> str:
        return format_path(self)


def primitive_root(word: tuple[str, ...]) -> tuple[str, ...]:
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p]
    return word


@dataclass(frozen=True, order=True)
class Lasso:
    """The infinite path ``prefix + cycle + cycle + ...``.

    Always stored in canonical form: primitive cycle, shortest prefix.  With
    the shortest prefix the rotation of the cycle is forced, so equality of
    lassos is equality of the sequences they denote.
    """

    prefix: tuple[str, ...]
    cycle: tuple[str, ...]

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("lasso cycle must be nonempty")
        prefix, cycle = tuple(self.prefix), primitive_root(tuple(self.cycle))
        while prefix and prefix[-1] == cycle[-1]:
            cycle = (cycle[-1],) + cycle[:-1]
            prefix = prefix[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)

    def edge(self, i: int) -> str:
        """The (i+1)-th edge of the infinite sequence."""
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def __str__(self) -> str:
        return format_path(self)


BoundaryPath = Union[Path, Lasso]


# -- text form ------------------------------------------------------------------


def _split_top(text: str) -> list[str]:
    """Split on commas outside parentheses, so minted ids survive."""
    if not text:
        return []
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        depth += (ch == "(") - (ch == ")")
        cur.append(ch)
    parts.append("".join(cur))
    return parts


def format_path(x: BoundaryPath) -> str:
    if isinstance(x, Lasso):
        return ",".join(x.prefix) + "|(" + ",".join(x.cycle) + ")^ω"
    if not x.edges:
        return "@" + x.source
    return ",".join(x.edges)


def parse_path(text: str, g: Graph) -> BoundaryPath:
    """Parse a path literal against ``g``; composability is checked."""
    text = text.strip()
    if "|" in text:
        head, _, tail = text.partition("|")
        for suffix in (")^ω", ")^w", ")^omega"):
            if tail.startswith("(") and tail.endswith(suffix):
                body = tail[1:-len(suffix)]
                break
        else:
            raise ValueError(f"malformed lasso literal {text!r}")
        prefix, cycle = tuple(_split_top(head)), tuple(_split_top(body))
        if not cycle:
            raise ValueError("lasso cycle must be nonempty")
        _check_edges(g, prefix + cycle)
        seq = prefix + cycle + cycle[:1]
        if not is_composable(g, seq):
            raise GraphError(f"{text!r} is not a path of the graph")
        return Lasso(prefix, cycle)
    if text.startswith("@"):
        v = text[1:]
        if v not in set(g.vertices):
            raise GraphError(f"unknown vertex {v!r}")
        return Path((), v)
    edges = tuple(_split_top(text))
    if not edges:
        raise ValueError("empty path literal")
    _check_edges(g, edges)
    if not is_composable(g, edges):
        raise GraphError(f"{text!r} is not a path of the graph")
    return Path(edges, g.d(edges[-1]))


def _check_edges(g: Graph, edges) -> None:
    known = set(g.edge_ids)
    for e in edges:
        if e not in known:
            raise GraphError(f"unknown edge {e!r}")


def is_composable(g: Graph, edges) -> bool:
    return all(g.d(a) == g.r(b) for a, b in zip(edges, edges[1:]))


# -- enumeration -----------------------------------------------------------------


def _require(g: Graph) -> None:
    require_valid(g)
    if not g.is_finite:
        raise GraphError("path enumeration requires a graph without omega groups")


def path_range(g: Graph, x: BoundaryPath) -> str | None:
    """r(x): the vertex at the r-end."""
    if isinstance(x, Path) and not x.edges:
        return x.source
    first = x.edges[0] if isinstance(x, Path) else x.edge(0)
    return g.r(first)


def enumerate_paths(g: Graph, n: int) -> list[Path]:
    """All of E^n, sorted.  E^0 is the vertex set."""
    _require(g)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return [Path((), v) for v in g.vertices]
    words = [(e,) for e in g.edge_ids]
    for _ in range(n - 1):
        words = [w + (e,) for w in words for e in g.edges_into[g.d(w[-1])]]
    return sorted(Path(w, g.d(w[-1])) for w in words)


def boundary_finite(g: Graph, max_len: int) -> list[Path]:
    """Paths of length at most ``max_len`` whose d-end is singular."""
    _require(g)
    layer = [Path((), v) for v in sorted(g.singular)]
    out = list(layer)
    for _ in range(max_len):
        nxt = []
        for p in layer:
            head = p.source if not p.edges else g.r(p.edges[0])
            if head is None:
                continue
            for e in g.edges_from[head]:
                nxt.append(Path((e,) + p.edges, p.source))
        out.extend(nxt)
        layer = nxt
    return sorted(out, key=lambda p: (len(p), p))


def closed_words(g: Graph, length: int) -> list[tuple[str, ...]]:
    """Composable words ``c`` of the given length with ``d(c_last) = r(c_1)``."""
    words = [(e,) for e in g.edge_ids if g.r(e) is not None]
    for _ in range(length - 1):
        words = [w + (e,) for w in words for e in g.edges_into[g.d(w[-1])]]
    return [w for w in words if g.r(w[0]) == g.d(w[-1])]


def lassos(g: Graph, max_prefix: int, max_cycle: int) -> list[Lasso]:
    """Canonical lassos with prefix length <= max_prefix and primitive cycle
    length <= max_cycle.  Each eventually periodic path within the bounds
    appears exactly once."""
    _require(g)
    out = []
    for p in range(1, max_cycle + 1):
        for cyc in closed_words(g, p):
            if primitive_root(cyc) != cyc:
                continue
            out.append(Lasso((), cyc))
            # grow the prefix leftwards; its last edge must differ from cyc[-1]
            layer = [(e,) for e in g.edges_from[g.r(cyc[0])] if e != cyc[-1]]
            for _ in range(max_prefix):
                out.extend(Lasso(pre, cyc) for pre in layer)
                layer = [(e,) + pre for pre in layer if g.r(pre[0]) is not None
                         for e in g.edges_from[g.r(pre[0])]]
    return sorted(out, key=lambda x: (len(x.prefix), len(x.cycle), x))


def boundary_paths(g: Graph, bound: int) -> list[BoundaryPath]:
    return [*boundary_finite(g, bound), *lassos(g, bound, bound)]


# -- shift and truncation --------------------------------------------------------


def in_shift_domain(x: BoundaryPath) -> bool:
    return isinstance(x, Lasso) or bool(x.edges)


def shift(x: BoundaryPath) -> BoundaryPath:
    """Drop the first edge."""
    if isinstance(x, Lasso):
        if x.prefix:
            return Lasso(x.prefix[1:], x.cycle)
        return Lasso((), x.cycle[1:] + x.cycle[:1])
    if not x.edges:
        raise GraphError("not in dom(σ): length-0 boundary path")
    return Path(x.edges[1:], x.source)


def shift_power(x: BoundaryPath, m: int) -> BoundaryPath | None:
    """σ^m x, or ``None`` when undefined."""
    if isinstance(x, Path):
        return Path(x.edges[m:], x.source) if m <= len(x.edges) else None
    a = len(x.prefix)
    if m <= a:
        return Lasso(x.prefix[m:], x.cycle)
    j = (m - a) % len(x.cycle)
    return Lasso((), x.cycle[j:] + x.cycle[:j])


def truncate(g: Graph, x: BoundaryPath, k: int) -> tuple[str | None, ...]:
    """``(r(x), e1, ..., ek)`` with ``None`` padding once x is exhausted."""
    head = path_range(g, x)
    if head is None:
        raise GraphError("truncation needs r(x) to be defined")
    if isinstance(x, Lasso):
        return (head,) + tuple(x.edge(i) for i in range(k))
    body = x.edges[:k]
    return (head,) + body + (None,) * (k - len(body))


def truncate_id(g: Graph, x: BoundaryPath, k: int) -> str:
    """Truncation printed like a product-form vertex id."""
    return tuple_id(truncate(g, x, k))

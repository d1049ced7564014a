"""Seeded random graphs and the cross-construction property harness.

Each check takes a graph and returns a list of failure messages (empty on
success).  :func:`run_suite` draws ``n`` graphs from a :class:`GenConfig`
and runs every check that applies, collecting a deterministic report.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import graphio
from .core import OMEGA, EdgeGroup, Graph, GraphError, is_sgds, restrict, tilde_completion, validate
from .dual import (FactorMap, check_factor_map, composite_map, dual, is_isomorphism, isomorphic,
                   product_form, relative_dual, tower, tuple_id)
from .groupoid import (GroupoidElement, GroupoidError, compose, element, enumerate_elements, inverse, isotropy,
                       tail_equivalent, tail_key, unit)
from .ktheory import k_groups
from .paths import Lasso, boundary_finite, boundary_paths, enumerate_paths, lassos, path_range, truncate_id
from .unital import Verdict, check_y_compactness, is_unital


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_vertices: int = 6
    max_edges: int = 10
    allow_partial: bool = False
    allow_omega: bool = False
    allow_relative: bool = False

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_edges < 0:
            raise ValueError("need max_vertices >= 1 and max_edges >= 0")


def _rng(cfg: GenConfig, index: int, stream: int = 0) -> np.random.Generator:
    return np.random.default_rng([cfg.seed & (2**64 - 1), index, stream])


def random_graph(cfg: GenConfig, index: int) -> Graph:
    """The ``index``-th graph of the configured family; same inputs, same graph.

    About 30% of draws are forced to have a source and another 30% to
    contain a cycle.  With ``allow_partial`` at least one range is undefined
    (when any edge is allowed at all).
    """
    rng = _rng(cfg, index)
    nv = int(rng.integers(1, cfg.max_vertices + 1))
    ne = int(rng.integers(0, cfg.max_edges + 1))
    if cfg.allow_partial and cfg.max_edges >= 1:
        ne = max(ne, 1)
    vs = [f"v{i}" for i in range(nv)]
    ends = [[int(rng.integers(nv)), int(rng.integers(nv))] for _ in range(ne)]
    bias = rng.random()
    all_undefined = False
    if bias < 0.3 and ends:
        s = int(rng.integers(nv))
        for pair_ in ends:
            if pair_[1] == s:
                pair_[1] = (s + 1 + int(rng.integers(nv - 1))) % nv if nv > 1 else s
        if nv == 1:
            # the only vertex is a source once nothing lands on it
            if cfg.allow_partial:
                all_undefined = True
            else:
                ends = []
    elif bias < 0.6 and cfg.max_edges >= 1:
        a, b = int(rng.integers(nv)), int(rng.integers(nv))
        cyc = [[a, a]] if a == b or cfg.max_edges == 1 else [[a, b], [b, a]]
        ends = (ends + cyc)[-max(ne, len(cyc)):] if ne >= len(cyc) else cyc
    groups: list[EdgeGroup] = []
    for i, (d, r) in enumerate(ends):
        groups.append(EdgeGroup(f"e{i}", vs[d], vs[r]))
    if cfg.allow_partial and groups:
        undefined = [all_undefined or bool(rng.random() < 0.3) for _ in groups]
        if not any(undefined):
            undefined[int(rng.integers(len(groups)))] = True
        groups = [EdgeGroup(grp.id, grp.dom, None) if u else grp for grp, u in zip(groups, undefined)]
    escape = False
    if cfg.allow_omega and rng.random() < 0.5:
        target = vs[int(rng.integers(nv))] if rng.random() < 0.5 else None
        groups.append(EdgeGroup("w0", vs[int(rng.integers(nv))], target, OMEGA))
        if cfg.allow_partial and any(grp.range is None for grp in groups) and rng.random() < 0.3:
            escape = True
    g = Graph(tuple(vs), tuple(groups), None, escape)
    if cfg.allow_relative:
        regular = sorted(g.regular)
        g = g.with_relative([v for v in regular if rng.random() < 0.5])
    return g


def random_relative_set(g: Graph, cfg: GenConfig, index: int) -> frozenset[str]:
    rng = _rng(cfg, index, 1)
    return frozenset(v for v in sorted(g.regular) if rng.random() < 0.5)


# -- checks -----------------------------------------------------------------------


def check_dual_k_invariance(g: Graph, depth: int = 2) -> list[str]:
    graphs, _ = tower(g, depth)
    base = k_groups(g)
    out = []
    for j, h in enumerate(graphs[1:], start=1):
        kk = k_groups(h)
        if kk != base:
            out.append(f"K(E_{j}) = ({kk[0]}, {kk[1]}) but K(E) = ({base[0]}, {base[1]})")
    return out


def check_relative_k_invariance(g: Graph, relative) -> list[str]:
    u = frozenset(relative)
    base = k_groups(g, u)
    out = []
    graphs, _ = tower(g, 2, u)
    for j, h in enumerate(graphs[1:], start=1):
        kk = k_groups(h)
        if kk != base:
            out.append(f"K(E_U,{j}) = ({kk[0]}, {kk[1]}) but K(E;U) = ({base[0]}, {base[1]}) for U={sorted(u)}")
    return out


def path_counts(g: Graph, k_max: int) -> tuple[list[int], list[int]]:
    """``|E^n|`` for n <= k_max + 1 and ``|E^n_sg|`` for n <= k_max."""
    full = [len(enumerate_paths(g, n)) for n in range(k_max + 2)]
    sing = [0] * (k_max + 1)
    for p in boundary_finite(g, k_max):
        sing[len(p)] += 1
    return full, sing


def check_counting(g: Graph, k_max: int = 3, dual_fn: Callable = dual) -> list[str]:
    full, sing = path_counts(g, k_max)
    out = []
    h = g
    for k in range(1, k_max + 1):
        h, _ = dual_fn(h)
        want_v = full[k] + sum(sing[:k])
        want_e = full[k + 1] + sum(sing[1:k + 1])
        if len(h.vertices) != want_v:
            out.append(f"|E_{k}^0| = {len(h.vertices)}, expected {want_v}")
        if len(h.edge_ids) != want_e:
            out.append(f"|E_{k}^1| = {len(h.edge_ids)}, expected {want_e}")
    return out


def check_factor_maps(g: Graph, depth: int = 2, relative=None) -> list[str]:
    out = []
    graphs, maps = tower(g, depth)
    for lo in range(depth + 1):
        for hi in range(lo + 1, depth + 1):
            m = composite_map(maps, lo, hi, graphs[hi])
            out += [f"m_{lo},{hi}: {v}" for v in check_factor_map(m, graphs[hi], graphs[lo])]
    if relative is not None:
        eu, mu = relative_dual(g, relative)
        out += [f"m_U: {v}" for v in check_factor_map(mu, eu, g, regular_on=relative)]
        # m_U is regular only over U; elsewhere the preimage is exactly E0 \ U at infinity
        sg_images = sorted(mu.vertex_map[x] for x in eu.singular)
        if sg_images != sorted(set(g.vertices) - set(relative)):
            out.append("m_U does not map the singular dual vertices onto E0 \\ U")
    return out


def check_sgds_fixed_point(g: Graph) -> list[str]:
    if not is_sgds(g):
        return []
    e1, m1 = dual(g)
    out = [f"m_1: {v}" for v in check_factor_map(m1, e1, g)]
    if len(set(m1.vertex_map.values())) != len(m1.vertex_map) or len(set(m1.edge_map.values())) != len(m1.edge_map):
        out.append("m_1 is not injective on an SGDS")
    iso = isomorphic(g, e1)
    if iso is None or not is_isomorphism(iso, g, e1):
        out.append("SGDS graph is not isomorphic to its dual")
    return out


def check_product_form(g: Graph, k_max: int = 3, size_limit: int = 12, relative=None) -> list[str]:
    out = []
    graphs, _ = tower(g, k_max, relative)
    for k in range(1, k_max + 1):
        prod, _ = product_form(g, k, relative)
        if len(prod.vertices) != len(graphs[k].vertices) or len(prod.edge_ids) != len(graphs[k].edge_ids):
            out.append(f"E_{k}: product form and repeated dual differ in size")
            continue
        if len(prod.vertices) > size_limit:
            continue
        iso = isomorphic(graphs[k], prod)
        if iso is None or not is_isomorphism(iso, graphs[k], prod):
            out.append(f"E_{k}: repeated dual not isomorphic to product form")
    return out


def check_boundary_bijection(g: Graph, k_max: int = 3) -> list[str]:
    out = []
    for k in range(1, k_max + 1):
        prod, _ = product_form(g, k)
        short = [truncate_id(g, p, k) for p in boundary_finite(g, k - 1)]
        full = [tuple_id((path_range(g, p),) + p.edges) for p in enumerate_paths(g, k)]
        images = short + full
        if len(set(images)) != len(images):
            out.append(f"k={k}: truncation map is not injective")
        if set(images) != set(prod.vertices):
            out.append(f"k={k}: truncations do not match the product-form vertices")
    return out


def check_groupoid(g: Graph, bound: int = 3, k_max: int | None = None) -> list[str]:
    """Groupoid axioms over every element with paths within ``bound`` and
    ``|k| <= k_max``.  Associativity is checked on every composable triple;
    each distinct product is computed once by :func:`compose` and then
    looked up by interned id, which keeps large triple counts tractable."""
    out: list[str] = []
    elems = enumerate_elements(g, bound, k_max)
    ids: dict[GroupoidElement, int] = {}
    table: list[GroupoidElement] = []

    def intern(a: GroupoidElement) -> int:
        i = ids.get(a)
        if i is None:
            i = ids[a] = len(table)
            table.append(a)
        return i

    products: dict[tuple[int, int], int] = {}

    def mul(i: int, j: int) -> int:
        key = (i, j)
        r = products.get(key)
        if r is None:
            r = products[key] = intern(compose(table[i], table[j]))
        return r

    starting: dict = {}
    for a in elems:
        starting.setdefault(a.x, []).append(intern(a))
    for a in elems:
        if compose(unit(a.x), a) != a or compose(a, unit(a.y)) != a:
            out.append(f"unit law fails at {a}")
        inv = inverse(a)
        if inverse(inv) != a:
            out.append(f"inverse is not involutive at {a}")
        if compose(a, inv) != unit(a.x) or compose(inv, a) != unit(a.y):
            out.append(f"inverse law fails at {a}")
    for a in elems:
        ia = ids[a]
        for ib in starting.get(a.y, ()):
            b = table[ib]
            iab = mul(ia, ib)
            if table[iab].k != a.k + b.k:
                out.append(f"cocycle not additive at {a}, {b}")
            for ic in starting.get(b.y, ()):
                if mul(iab, ic) != mul(ia, mul(ib, ic)):
                    out.append(f"associativity fails at {a}, {b}, {table[ic]}")
        if len(out) > 20:
            return out
    for x in starting:
        te = tail_equivalent(x, x)
        if te != (0, 0):
            out.append(f"tail equivalence not reflexive at {x}")
        scanned = set()
        for k in range(-6, 7):
            try:
                element(x, k, x)
                scanned.add(k)
            except GroupoidError:
                pass
        if scanned != {k for k in range(-6, 7) if k in isotropy(x)}:
            out.append(f"isotropy of {x} is {isotropy(x)} but scan gave {sorted(scanned)}")
        if isinstance(x, Lasso) and isotropy(x).period != len(x.cycle):
            out.append(f"lasso {x} has isotropy {isotropy(x)}")
    keys = {}
    for x in starting:
        keys.setdefault(tail_key(x), []).append(x)
    reps = [members[0] for members in keys.values()]
    for i, a in enumerate(reps):
        for b in reps[i + 1:]:
            if tail_equivalent(a, b) is not None:
                out.append(f"distinct orbit keys but tail equivalent: {a}, {b}")
    return out


def check_unitality(g: Graph) -> list[str]:
    if g.is_total:
        ok, report = is_unital(g)
        return [] if ok and report.verdict is Verdict.TOTAL_RANGE else ["total finite graph reported non-unital"]
    unital, report = is_unital(g)
    y = check_y_compactness(g)
    regular = report.verdict is Verdict.REGULAR_AT_INFINITY
    out = []
    if not (unital == y == regular):
        out.append(f"equivalence chain broken: unital={unital} Y compact={y} ∞ regular={regular}")
    if unital and not report.undefined_edges.is_finite:
        out.append("unital although E1 \\ dom(r) is infinite")
    if g.is_finite:
        completed, inf = tilde_completion(g)
        if (inf in completed.regular) != regular:
            out.append("verdict disagrees with classifying ∞ in the finite completion")
    return out


def check_unitization(g: Graph) -> list[str]:
    if not g.is_finite:
        return []
    completed, _ = tilde_completion(g)
    k0, k1 = k_groups(g)
    c0, c1 = k_groups(completed, g.regular)
    if c0.free_rank != k0.free_rank + 1 or c0.torsion != k0.torsion or c1 != k1:
        return [f"unitization K-groups ({c0}, {c1}) vs ({k0}, {k1})"]
    return []


def check_restriction(g: Graph) -> list[str]:
    """Drop regular vertices that emit nothing; K-groups must not change."""
    droppable = {v for v in g.regular if not g.edges_from[v]}
    if not droppable:
        return []
    keep = [v for v in g.vertices if v not in droppable]
    if not keep:
        return []
    e = restrict(g, keep)
    if k_groups(e) != k_groups(g):
        return [f"restriction to {keep} changed K-groups"]
    return []


def groupoid_family(cfg: GenConfig, n: int, bound: int = 4, max_paths: int = 60) -> list[tuple[int, Graph]]:
    """The first ``n`` total graphs of the configured family whose boundary
    space at ``bound`` has at most ``max_paths`` members.  Branching graphs
    have thousands of boundary paths at bound 4 and millions of composable
    triples, so the exhaustive axiom check is run on the graphs below the cap."""
    out = []
    index = 0
    while len(out) < n:
        g = random_graph(cfg, index)
        if g.is_total and g.is_finite and len(boundary_paths(g, 2)) <= max_paths \
                and len(boundary_paths(g, bound)) <= max_paths:
            out.append((index, g))
        index += 1
    return out


# -- suite --------------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: list[str] = field(default_factory=list)
    skipped: bool = False


@dataclass
class CaseResult:
    index: int
    graph: str
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


@dataclass
class Report:
    config: GenConfig
    cases: list[CaseResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def failures(self) -> list[tuple[CaseResult, CheckResult]]:
        return [(c, chk) for c in self.cases for chk in c.checks if not chk.passed]

    def render(self) -> str:
        lines = [f"seed={self.config.seed} cases={len(self.cases)}"]
        for case in self.cases:
            for chk in case.checks:
                status = "SKIP" if chk.skipped else ("PASS" if chk.passed else "FAIL")
                lines.append(f"case {case.index:4d} {chk.name:22s} {status}")
                for d in chk.detail:
                    lines.append(f"    {d}")
            if not case.passed:
                lines.append("    graph:")
                lines += ["      " + ln for ln in case.graph.splitlines()]
        n_fail = len({c.index for c, _ in self.failures()})
        lines.append(f"{len(self.cases) - n_fail}/{len(self.cases)} cases passed")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "config": asdict(self.config),
            "passed": self.passed,
            "cases": [
                {"index": c.index, "passed": c.passed, "graph": c.graph,
                 "checks": [asdict(chk) for chk in c.checks]}
                for c in self.cases
            ],
        }


def _run(name: str, fn: Callable[[], list[str]]) -> CheckResult:
    try:
        detail = fn()
    except (GraphError, GroupoidError, ValueError) as exc:
        detail = [f"raised {type(exc).__name__}: {exc}"]
    return CheckResult(name, not detail, detail)


def run_case(cfg: GenConfig, index: int, groupoid_bound: int = 2, iso_limit: int = 12,
             path_cap: int = 30) -> CaseResult:
    g = random_graph(cfg, index)
    problems = validate(g)
    if problems:
        return CaseResult(index, graphio.dumps(g), [CheckResult("validate", False, [str(p) for p in problems])])
    checks: list[CheckResult] = []
    if g.is_total and g.is_finite:
        u = random_relative_set(g, cfg, index)
        checks += [
            _run("k-invariance", lambda: check_dual_k_invariance(g)),
            _run("relative-k-invariance", lambda: check_relative_k_invariance(g, u)),
            _run("counting", lambda: check_counting(g)),
            _run("factor-maps", lambda: check_factor_maps(g, relative=u)),
            _run("sgds-fixed-point", lambda: check_sgds_fixed_point(g)),
            _run("product-form", lambda: check_product_form(g, size_limit=iso_limit)),
            _run("boundary-bijection", lambda: check_boundary_bijection(g)),
            _run("restriction", lambda: check_restriction(g)),
        ]
        if groupoid_bound > 0:
            size = len(boundary_paths(g, groupoid_bound))
            if size <= path_cap:
                checks.append(_run("groupoid", lambda: check_groupoid(g, groupoid_bound)))
            else:
                checks.append(CheckResult("groupoid", True, [f"{size} boundary paths > {path_cap}"], True))
    checks.append(_run("unitality", lambda: check_unitality(g)))
    if g.is_finite:
        checks.append(_run("unitization", lambda: check_unitization(g)))
    return CaseResult(index, graphio.dumps(g), checks)


def _run_case_star(args):
    return run_case(*args)


def run_suite(cfg: GenConfig, n: int, jobs: int = 1, groupoid_bound: int = 2,
              iso_limit: int = 12, path_cap: int = 30) -> Report:
    """Run every applicable check on ``n`` generated graphs.  Case order is
    preserved whatever ``jobs`` is, so the report is deterministic."""
    tasks = [(cfg, i, groupoid_bound, iso_limit, path_cap) for i in range(n)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cases = list(pool.map(_run_case_star, tasks, chunksize=8))
    else:
        cases = [run_case(*t) for t in tasks]
    return Report(cfg, cases)


def report_json(report: Report) -> str:
    return json.dumps(report.to_json(), indent=2, sort_keys=True, ensure_ascii=False)

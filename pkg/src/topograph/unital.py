"""Unitality of O(E) for partially defined graphs.

Complete E by sending every edge outside dom(r) to a new point ∞.  For a
partial range map, O(E) is unital exactly when ∞ is regular in the
completion.  On discrete data that reduces to three cardinal tests:

* ∞ has a neighbourhood with compact preimage: the edges outside dom(r) are
  finitely many, and only finitely many ranges escape every finite vertex
  set (a neighbourhood of ∞ is ∞ plus a cofinite vertex set);
* ∞ receives an edge, so it is not a source;
* ∞ is not a limit of sources: only finitely many vertices are never hit
  by r.

When r is total, O(E) is unital iff E0 is compact, which always holds for a
finite vertex list.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import OMEGA, ZERO, Cardinal, Graph, GraphError, cardinal_sum, finite, require_valid


class Verdict(enum.Enum):
    REGULAR_AT_INFINITY = "regular-at-infinity"
    SINGULAR_AT_INFINITY = "singular-at-infinity"
    TOTAL_RANGE = "total-range"


@dataclass(frozen=True)
class InfinityReport:
    undefined_edges: Cardinal
    escaping: Cardinal
    never_received: Cardinal
    verdict: Verdict
    unital: bool
    reason: str

    def to_json(self) -> dict:
        return {
            "undefined_edges": self.undefined_edges.to_json(),
            "escaping": self.escaping.to_json(),
            "never_received": self.never_received.to_json(),
            "verdict": self.verdict.value,
            "unital": self.unital,
            "reason": self.reason,
        }

    def __str__(self) -> str:
        head = "unital" if self.unital else "non-unital"
        return f"{head} ({self.reason})"


def classify_infinity(g: Graph) -> InfinityReport:
    require_valid(g)
    undefined = cardinal_sum(grp.multiplicity for grp in g.groups if grp.range is None)
    escaping = OMEGA if g.escape else ZERO
    received = {grp.range for grp in g.groups if grp.range is not None}
    never = finite(sum(v not in received for v in g.vertices))
    if undefined == ZERO:
        return InfinityReport(undefined, escaping, never, Verdict.TOTAL_RANGE, True,
                              "r total and E0 finite")
    if not undefined.is_finite:
        reason = "∞ singular: E1∖dom(r) infinite"
    elif not escaping.is_finite:
        reason = "∞ singular: ranges escape to infinity"
    elif not never.is_finite:
        reason = "∞ singular: infinitely many vertices never received"
    else:
        return InfinityReport(undefined, escaping, never, Verdict.REGULAR_AT_INFINITY, True,
                              "∞ regular in the completion")
    return InfinityReport(undefined, escaping, never, Verdict.SINGULAR_AT_INFINITY, False, reason)


def is_unital(g: Graph) -> tuple[bool, InfinityReport]:
    report = classify_infinity(g)
    if report.verdict is Verdict.TOTAL_RANGE:
        # E0 is a finite list in this presentation, hence compact
        return True, report
    return report.verdict is Verdict.REGULAR_AT_INFINITY, report


def check_y_compactness(g: Graph) -> bool:
    """Decide compactness of Y = {(r~(e), e)} ∪ {(v, ∞) : v singular}.

    Y sits inside the compact space (E0 ∪ ∞) × (E1 ∪ ∞), so it is compact iff
    it is closed.  An infinite family of edges accumulates at (x, ∞) where x
    is the limit of its ranges; that point belongs to Y only when x is a
    singular vertex.  A singular set that is infinite accumulates at (∞, ∞),
    which never belongs to Y.  This walks the accumulation points directly
    and does not consult :func:`classify_infinity`.
    """
    require_valid(g)
    if g.is_total:
        raise GraphError("Y compactness needs dom(r) != E1")
    singular = g.singular  # a finite list, so it contributes no limit point
    limits: list[str | None] = []
    for grp in g.groups:
        if not grp.multiplicity.is_finite:
            limits.append(grp.range)  # None: the family runs off to ∞
    if g.escape:
        limits.append(None)
    return all(x is not None and x in singular for x in limits)

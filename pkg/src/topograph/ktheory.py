"""K-groups of graph algebras from one integer matrix.

For a discrete vertex space, K1 of the coefficient algebras vanishes and
K0(C0(V)) = Z^V.  The six-term sequence then collapses to

    0 -> K1(O(E;U)) -> Z^U --(ι* - [π_r])--> Z^E0 -> K0(O(E;U)) -> 0

so K0 is the cokernel and K1 the kernel of the matrix whose column for
``v in U`` is ``δ_v - Σ_{e in r^-1(v)} δ_{d(e)}``.  Only edges with a
defined range contribute.  U defaults to the regular vertices (Cuntz-Krieger
algebra); ``U = ∅`` gives the Toeplitz algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import Graph, GraphError, require_valid
from .snf import diagonal, smith_normal_form


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[str, ...]
    cols: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def column(self, v: str) -> dict[str, int]:
        j = self.cols.index(v)
        return {u: self.entries[i][j] for i, u in enumerate(self.rows) if self.entries[i][j]}


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk`` with ``d1 | d2 | ...`` and every ``di >= 2``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(self.torsion)
        if any(x < 2 for x in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"not an invariant-factor list: {t}")
        object.__setattr__(self, "torsion", t)

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{x}" for x in self.torsion]
        return " (+) ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def groups_equal(a: AbelianGroup, b: AbelianGroup) -> bool:
    return a == b


def build_map(g: Graph, relative: Iterable[str] | None = None) -> IntMatrix:
    """The matrix of ι* - [π_r] from Z^U to Z^E0."""
    require_valid(g)
    u = g.regular if relative is None else frozenset(relative)
    if not u <= g.regular:
        raise GraphError("U ⊄ E0_rg: " + ",".join(sorted(u - g.regular)))
    rows = g.vertices
    cols = tuple(sorted(u))
    index = {v: i for i, v in enumerate(rows)}
    m = [[0] * len(cols) for _ in rows]
    for j, v in enumerate(cols):
        m[index[v]][j] += 1
        # regular vertices never receive omega groups, so every count is finite
        for e in g.edges_into[v]:
            m[index[g.d(e)]][j] -= 1
    return IntMatrix(rows, cols, tuple(tuple(r) for r in m))


def cokernel_kernel(m: IntMatrix) -> tuple[AbelianGroup, AbelianGroup]:
    """``(coker, ker)`` of the matrix as a map Z^cols -> Z^rows."""
    _, d, _ = smith_normal_form(m.as_lists(), len(m.cols))
    diag = [x for x in diagonal(d) if x]
    rank = len(diag)
    coker = AbelianGroup(len(m.rows) - rank, tuple(x for x in diag if x > 1))
    ker = AbelianGroup(len(m.cols) - rank)
    return coker, ker


def k_groups(g: Graph, relative: Iterable[str] | None = None) -> tuple[AbelianGroup, AbelianGroup]:
    """``(K0, K1)`` of O(E;U); U defaults to the regular vertices."""
    return cokernel_kernel(build_map(g, relative))


def toeplitz_k_groups(g: Graph) -> tuple[AbelianGroup, AbelianGroup]:
    return k_groups(g, ())

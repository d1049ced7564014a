"""Brute-force references that share no code with the library."""

from __future__ import annotations

import itertools
from math import gcd

import numpy as np


def receivers(vertices, edges):
    count = {v: 0 for v in vertices}
    for d, r in edges.values():
        count[r] += 1
    return count


def singular_set(vertices, edges):
    return {v for v, c in receivers(vertices, edges).items() if c == 0}


def composable_words(edges, n):
    """All words (e1..en) with d(e_i) = r(e_{i+1}), by filtering the full product."""
    ids = sorted(edges)
    return [w for w in itertools.product(ids, repeat=n)
            if all(edges[a][0] == edges[b][1] for a, b in zip(w, w[1:]))]


def path_count(vertices, edges, n):
    """|E^n| as the entry sum of the n-th power of the r-by-d edge-count matrix."""
    idx = {v: i for i, v in enumerate(vertices)}
    m = np.zeros((len(vertices), len(vertices)), dtype=object)
    for d, r in edges.values():
        m[idx[r], idx[d]] += 1
    if n == 0:
        return len(vertices)
    p = m.copy()
    for _ in range(n - 1):
        p = p.dot(m)
    return int(p.sum())


def eventually_periodic(edges, max_prefix, max_cycle):
    """Distinct infinite paths with preperiod <= max_prefix and period <=
    max_cycle, keyed by their first max_prefix + 2*max_cycle edges (two such
    sequences agreeing that far are equal by Fine and Wilf)."""
    horizon = max_prefix + 2 * max_cycle
    keys = set()
    for a in range(max_prefix + 1):
        for p in range(1, max_cycle + 1):
            for w in composable_words(edges, a + p):
                cyc = w[a:]
                if edges[cyc[-1]][0] != edges[cyc[0]][1]:
                    continue
                seq = list(w)
                while len(seq) < horizon:
                    seq.append(cyc[(len(seq) - a) % p])
                keys.add(tuple(seq[:horizon]))
    return keys


def _rank(m: list[list[int]]) -> int:
    from fractions import Fraction
    a = [[Fraction(x) for x in row] for row in m]
    rank, rows = 0, len(a)
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rows):
            if i != rank and a[i][c] != 0:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def _minor_det(m, rows, cols):
    sub = [[m[i][j] for j in cols] for i in rows]
    return int(round(np.linalg.det(np.array(sub, dtype=float)))) if sub else 1


def _image_size_mod(m: list[list[int]], q: int) -> int:
    """|im(M mod q)| by enumerating every x in (Z/q)^cols."""
    rows = len(m)
    cols = len(m[0]) if m else 0
    if cols == 0:
        return 1
    mat = np.array(m, dtype=np.int64) % q
    grid = np.array(list(itertools.product(range(q), repeat=cols)), dtype=np.int64)
    images = (grid @ mat.T) % q
    codes = np.zeros(len(images), dtype=np.int64)
    for i in range(rows):
        codes = codes * q + images[:, i]
    return len(np.unique(codes))


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def cokernel_by_counting(m: list[list[int]]) -> tuple[int, tuple[int, ...]]:
    """Free rank and invariant factors of Z^rows / im(M) from quotient sizes.

    For a prime power q, |coker / q coker| = q^rows / |im(M mod q)|.  With
    r = rank, the number of invariant factors divisible by p^j equals
    log_p |coker / p^j coker| - j * (rows - r) ... evaluated for every j up to
    the p-adic valuation of a nonzero r x r minor, which bounds the torsion.
    """
    rows = len(m)
    cols = len(m[0]) if m else 0
    r = _rank(m) if rows and cols else 0
    free = rows - r
    bound = 0
    if r:
        for rs in itertools.combinations(range(rows), r):
            for cs in itertools.combinations(range(cols), r):
                d = abs(_minor_det(m, rs, cs))
                if d:
                    bound = d if not bound else gcd(bound, d)
    exps: dict[int, list[int]] = {}
    for p in _prime_factors(bound) if bound > 1 else []:
        j, counts = 1, []
        while bound % p ** j == 0:
            q = p ** j
            size = q ** rows // _image_size_mod(m, q)
            # size = q^free * prod_i gcd(d_i, q)
            tors = size // q ** free
            e = 0
            while tors > 1:
                tors //= p
                e += 1
            counts.append(e)  # sum_i min(v_p(d_i), j)
            j += 1
        # number of factors with v_p >= j is counts[j-1] - counts[j-2]
        at_least = [counts[0]] + [counts[i] - counts[i - 1] for i in range(1, len(counts))]
        exps[p] = at_least
    n_factors = max((v[0] for v in exps.values()), default=0)
    factors = [1] * n_factors
    for p, at_least in exps.items():
        for j, cnt in enumerate(at_least, start=1):
            for i in range(cnt):
                factors[n_factors - 1 - i] *= p
    return free, tuple(f for f in factors if f > 1)

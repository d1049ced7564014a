"""Smith normal form over the integers with unimodular transforms.

Matrices are lists of lists of Python ints, so coefficient growth during
pivoting can never overflow.
"""

from __future__ import annotations

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    """Product of an (r x s) and an (s x t) matrix.  ``inner`` gives s when
    either factor has no rows or no columns to infer it from."""
    rows = len(a)
    s = inner if inner is not None else (len(a[0]) if a else len(b))
    cols = len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(s)) for j in range(cols)] for i in range(rows)]


def det(a: Matrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(a: Matrix, n_cols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(P, D, Q)`` with ``P @ a @ Q == D``.

    P and Q are unimodular, D is diagonal and its nonzero diagonal entries
    are positive with each dividing the next.  ``n_cols`` is needed for
    matrices with zero rows.
    """
    rows = len(a)
    cols = n_cols if n_cols is not None else (len(a[0]) if a else 0)
    d = [row[:] for row in a]
    p, q = identity(rows), identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        p[i], p[j] = p[j], p[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in q:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row dst += c * row src
        d[dst] = [x + c * y for x, y in zip(d[dst], d[src])]
        p[dst] = [x + c * y for x, y in zip(p[dst], p[src])]

    def add_col(src, dst, c):  # col dst += c * col src
        for row in d:
            row[dst] += c * row[src]
        for row in q:
            row[dst] += c * row[src]

    for t in range(min(rows, cols)):
        nonzero = [(abs(d[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if d[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // d[t][t]))
                    if d[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // d[t][t]))
                    if d[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if d[i][j] % d[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            p[t] = [-x for x in p[t]]
    return p, d, q


def diagonal(d: Matrix) -> list[int]:
    n = min(len(d), len(d[0]) if d else 0)
    return [d[i][i] for i in range(n)]


def is_smith_form(d: Matrix) -> bool:
    rows = len(d)
    cols = len(d[0]) if d else 0
    for i in range(rows):
        for j in range(cols):
            if i != j and d[i][j]:
                return False
    diag = diagonal(d)
    seen_zero = False
    for i, x in enumerate(diag):
        if x < 0:
            return False
        if x == 0:
            seen_zero = True
        elif seen_zero:
            return False
        if i and x and diag[i - 1] and x % diag[i - 1]:
            return False
    return True

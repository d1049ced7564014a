import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topograph.ktheory import IntMatrix, cokernel_kernel
from topograph.snf import det, diagonal, identity, is_smith_form, matmul, smith_normal_form

from . import oracles


def certify(a, n_cols=None):
    rows = len(a)
    cols = n_cols if n_cols is not None else (len(a[0]) if a else 0)
    p, d, q = smith_normal_form(a, cols)
    assert matmul(matmul(p, a, rows), q, cols) == d
    assert abs(det(p)) == 1 and abs(det(q)) == 1
    assert is_smith_form(d)
    return d


matrices = st.integers(0, 4).flatmap(
    lambda r: st.integers(0, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
        .map(lambda m: (m, c))))


def test_diagonal_example():
    assert diagonal(certify([[2, 0], [0, 3]])) == [1, 6]


def test_zero_and_identity():
    assert diagonal(certify([[0, 0], [0, 0]])) == [0, 0]
    assert certify(identity(3)) == identity(3)


def test_empty_shapes():
    assert certify([], 2) == []
    assert certify([[], []], 0) == [[], []]


def test_large_entries_stay_exact():
    a = [[10**30 + 1, 7], [3, 10**25]]
    d = certify(a)
    assert d[0][0] * d[1][1] == abs(det(a))


def test_det_matches_numpy():
    rng = np.random.default_rng(3)
    for _ in range(50):
        a = rng.integers(-5, 6, size=(4, 4))
        assert det(a.tolist()) == round(np.linalg.det(a))


@given(matrices)
def test_certificate(mc):
    m, c = mc
    certify(m, c)


def test_smith_form_checker_rejects():
    assert not is_smith_form([[2, 0], [0, 3]])
    assert not is_smith_form([[0, 0], [0, 1]])
    assert not is_smith_form([[1, 1], [0, 1]])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_cokernel_matches_counting_oracle(m):
    coker, ker = cokernel_kernel(IntMatrix(("a", "b", "c"), ("x", "y", "z"), tuple(map(tuple, m))))
    free, torsion = oracles.cokernel_by_counting(m)
    assert (coker.free_rank, coker.torsion) == (free, torsion)
    assert ker.free_rank == 3 - (3 - free)

"""Linear algebra substrate: ranks, kernels, quotients, and the dense oracle."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hst

from thhforge import fplin


def dense_rank_oracle(rows: list[list[int]], p: int) -> int:
    """Textbook elimination on a numpy copy; independent of the Span path."""
    a = np.array(rows, dtype=np.int64) % p
    if a.size == 0:
        return 0
    nr, nc = a.shape
    rank = 0
    row = 0
    for col in range(nc):
        piv = None
        for rr in range(row, nr):
            if a[rr, col] % p:
                piv = rr
                break
        if piv is None:
            continue
        a[[row, piv]] = a[[piv, row]]
        inv = pow(int(a[row, col]), p - 2, p)
        a[row] = (a[row] * inv) % p
        for rr in range(nr):
            if rr != row and a[rr, col]:
                a[rr] = (a[rr] - a[rr, col] * a[row]) % p
        rank += 1
        row += 1
    return rank


def test_identity_and_zero():
    eye = fplin.SparseMat.from_dense([[1, 0], [0, 1]], p=2)
    assert fplin.rank(eye) == 2
    zero = fplin.SparseMat(3, 4, (), p=2)
    assert fplin.rank(zero) == 0
    assert len(fplin.kernel_basis(zero)) == 4
    assert fplin.kernel_basis(eye) == []


def test_kernel_of_sum_row():
    m = fplin.SparseMat.from_dense([[1, 1]], p=2)
    (v,) = fplin.kernel_basis(m)
    assert v.to_dict() == {0: 1, 1: 1}


def test_quotient_basis_examples():
    reps = fplin.quotient_basis(3, [{0: 1}], p=2)
    assert [v.to_dict() for v in reps] == [{1: 1}, {2: 1}]
    reps = fplin.quotient_basis(2, [{0: 1}, {1: 1}], p=2)
    assert reps == []
    # coinvariants of the swap on a 4-dim tensor square: quotient by x(x)y - y(x)x
    reps = fplin.quotient_basis(4, [{1: 1, 2: 1}], p=2)
    assert len(reps) == 3


@pytest.mark.parametrize("p", [2, 3, 5])
def test_solve_in_span(p):
    vectors = [{0: 1, 1: 2 % p}, {1: 1, 2: 1}]
    target = {0: 1, 1: (2 + 2) % p, 2: 2 % p}
    sol = fplin.solve_in_span(vectors, target, 3, p)
    assert sol == [1, 2 % p]
    assert fplin.solve_in_span([{0: 1}, {1: 1}], {2: 1}, 3, p) is None


@settings(max_examples=60, deadline=None)
@given(
    hst.integers(min_value=1, max_value=8),
    hst.integers(min_value=1, max_value=8),
    hst.sampled_from([2, 3, 5]),
    hst.randoms(use_true_random=False),
)
def test_rank_plus_kernel_is_cols(nr, nc, p, rng):
    rows = [[rng.randrange(p) for _ in range(nc)] for _ in range(nr)]
    m = fplin.SparseMat.from_dense(rows, p=p)
    assert fplin.rank(m) + len(fplin.kernel_basis(m)) == nc
    for vec in fplin.kernel_basis(m):
        vd = vec.to_dict()
        for row in rows:
            assert sum(row[j] * c for j, c in vd.items()) % p == 0


def test_agreement_with_dense_oracle_gf2():
    rng = np.random.default_rng(2026)
    for _ in range(25):
        nr, nc = rng.integers(1, 64, size=2)
        rows = rng.integers(0, 2, size=(int(nr), int(nc))).tolist()
        m = fplin.SparseMat.from_dense(rows, p=2)
        assert fplin.rank(m) == dense_rank_oracle(rows, 2)


def test_agreement_with_dense_oracle_odd():
    rng = np.random.default_rng(7)
    for p in (3, 5):
        for _ in range(15):
            nr, nc = rng.integers(1, 24, size=2)
            rows = rng.integers(0, p, size=(int(nr), int(nc))).tolist()
            m = fplin.SparseMat.from_dense(rows, p=p)
            assert fplin.rank(m) == dense_rank_oracle(rows, p)


def test_row_reduction_idempotent():
    rng = np.random.default_rng(11)
    for p in (2, 3):
        rows = rng.integers(0, p, size=(6, 9)).tolist()
        sp = fplin.Span(9, p)
        for r in rows:
            sp.add({j: v for j, v in enumerate(r)})
        reduced = sp.basis()
        sp2 = fplin.Span(9, p)
        for r in reduced:
            sp2.add(r)
        assert sp2.basis() == reduced


def test_span_membership():
    sp = fplin.Span(4, 3)
    sp.add({0: 1, 1: 2})
    sp.add({2: 1})
    assert sp.contains({0: 2, 1: 4 % 3, 2: 1})
    assert not sp.contains({3: 1})


def test_primefield_validates():
    with pytest.raises(ValueError):
        fplin.PrimeField(4)
    f = fplin.PrimeField(7)
    assert f.inv(3) * 3 % 7 == 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_sparse_mat_invariants():
    with pytest.raises(ValueError):
        fplin.SparseMat(1, 1, ((0, 0, 2),), p=2)  # stored zero
    with pytest.raises(ValueError):
        fplin.SparseMat(1, 1, ((0, 0, 1), (0, 0, 1)), p=2)  # duplicate

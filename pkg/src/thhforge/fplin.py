"""Exact sparse linear algebra over prime fields F_p.

Every homology, rank and kernel computation in this package reduces to
row reduction over F_p.  Two storage lanes: bit-packed rows (Python
ints) over F_2, and numpy integer rows at odd primes.  All public
values are immutable after construction and all operations are pure, so
concurrent read-only use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "PrimeField",
    "SparseVec",
    "SparseMat",
    "Span",
    "rank",
    "kernel_basis",
    "quotient_basis",
    "solve_in_span",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """Arithmetic mod a prime p; every nonzero element is invertible."""

    p: int

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise ValueError(f"not a prime: {self.p}")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return pow(a, self.p - 2, self.p)

    def neg(self, a: int) -> int:
        return (-a) % self.p


@dataclass(frozen=True)
class SparseVec:
    """Vector with nonzero entries only, indexed into a declared ordered basis."""

    entries: tuple[tuple[int, int], ...]  # sorted (index, scalar), scalar != 0

    @staticmethod
    def from_dict(d: Mapping[int, int], p: int) -> "SparseVec":
        items = sorted((i, v % p) for i, v in d.items() if v % p)
        return SparseVec(tuple(items))

    def to_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def to_dense(self, n: int) -> list[int]:
        out = [0] * n
        for i, v in self.entries:
            out[i] = v
        return out

    def is_zero(self) -> bool:
        return not self.entries


@dataclass(frozen=True)
class SparseMat:
    """Sparse matrix over F_p; (row, col) pairs distinct, scalars nonzero."""

    nrows: int
    ncols: int
    entries: tuple[tuple[int, int, int], ...]
    p: int = 2

    def __post_init__(self) -> None:
        PrimeField(self.p)
        seen = set()
        for r, c, v in self.entries:
            if not (0 <= r < self.nrows and 0 <= c < self.ncols):
                raise ValueError(f"entry ({r},{c}) out of range")
            if v % self.p == 0:
                raise ValueError("stored zero scalar")
            if (r, c) in seen:
                raise ValueError(f"duplicate entry at ({r},{c})")
            seen.add((r, c))

    @staticmethod
    def from_rows(rows: Sequence[Mapping[int, int]], ncols: int, p: int = 2) -> "SparseMat":
        ents = []
        for r, row in enumerate(rows):
            for c, v in row.items():
                if v % p:
                    ents.append((r, c, v % p))
        return SparseMat(len(rows), ncols, tuple(ents), p)

    @staticmethod
    def from_dense(rows: Sequence[Sequence[int]], p: int = 2) -> "SparseMat":
        ncols = len(rows[0]) if rows else 0
        ents = []
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                if v % p:
                    ents.append((r, c, v % p))
        return SparseMat(len(rows), ncols, tuple(ents), p)

    def row_dicts(self) -> list[dict[int, int]]:
        rows: list[dict[int, int]] = [dict() for _ in range(self.nrows)]
        for r, c, v in self.entries:
            rows[r][c] = v
        return rows

    def rank(self) -> int:
        return rank(self)


class _Gf2Span:
    """Reduced row space over F_2, rows as bit masks (bit i = column i)."""

    def __init__(self, ncols: int) -> None:
        self.ncols = ncols
        self.rows: list[int] = []     # kept in RREF, sorted by pivot
        self.pivots: list[int] = []   # pivot column of each row

    def reduce(self, mask: int) -> int:
        for piv, row in zip(self.pivots, self.rows):
            if (mask >> piv) & 1:
                mask ^= row
        return mask

    def add(self, mask: int) -> bool:
        mask = self.reduce(mask)
        if mask == 0:
            return False
        piv = (mask & -mask).bit_length() - 1
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < piv:
            pos += 1
        self.pivots.insert(pos, piv)
        self.rows.insert(pos, mask)
        for i in range(len(self.rows)):
            if i != pos and (self.rows[i] >> piv) & 1:
                self.rows[i] ^= mask
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


class _ModpSpan:
    """Reduced row space over F_p (p odd), rows as numpy int64 vectors."""

    def __init__(self, ncols: int, p: int) -> None:
        self.ncols = ncols
        self.p = p
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def reduce(self, vec: np.ndarray) -> np.ndarray:
        vec = vec % self.p
        for piv, row in zip(self.pivots, self.rows):
            c = int(vec[piv])
            if c:
                vec = (vec - c * row) % self.p
        return vec

    def add(self, vec: np.ndarray) -> bool:
        vec = self.reduce(vec)
        nz = np.nonzero(vec)[0]
        if nz.size == 0:
            return False
        piv = int(nz[0])
        vec = (vec * pow(int(vec[piv]), self.p - 2, self.p)) % self.p
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < piv:
            pos += 1
        self.pivots.insert(pos, piv)
        self.rows.insert(pos, vec)
        for i in range(len(self.rows)):
            if i != pos:
                c = int(self.rows[i][piv])
                if c:
                    self.rows[i] = (self.rows[i] - c * vec) % self.p
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


class Span:
    """Incremental RREF row space over F_p with membership queries.

    Vectors go in and come out as {index: scalar} dicts.  Pivot choice is
    the least index, so reduced forms are reproducible for a fixed basis
    order.
    """

    def __init__(self, ncols: int, p: int) -> None:
        PrimeField(p)
        self.ncols = ncols
        self.p = p
        self._impl = _Gf2Span(ncols) if p == 2 else _ModpSpan(ncols, p)

    def _pack(self, vec: Mapping[int, int]):
        if self.p == 2:
            mask = 0
            for i, v in vec.items():
                if v % 2:
                    mask |= 1 << i
            return mask
        arr = np.zeros(self.ncols, dtype=np.int64)
        for i, v in vec.items():
            arr[i] = v % self.p
        return arr

    def _unpack(self, packed) -> dict[int, int]:
        if self.p == 2:
            out = {}
            i = 0
            while packed:
                if packed & 1:
                    out[i] = 1
                packed >>= 1
                i += 1
            return out
        return {int(i): int(packed[i]) for i in np.nonzero(packed)[0]}

    def add(self, vec: Mapping[int, int]) -> bool:
        """Add a vector; True if it enlarged the span."""
        return self._impl.add(self._pack(vec))

    def reduce(self, vec: Mapping[int, int]) -> dict[int, int]:
        """Residue of vec after reduction against the span (RREF rows)."""
        return self._unpack(self._impl.reduce(self._pack(vec)))

    def contains(self, vec: Mapping[int, int]) -> bool:
        return not self.reduce(vec)

    @property
    def rank(self) -> int:
        return self._impl.rank

    @property
    def pivots(self) -> list[int]:
        return list(self._impl.pivots)

    def basis(self) -> list[dict[int, int]]:
        return [self._unpack(r) for r in self._impl.rows]


def _span_of(vectors: Iterable[Mapping[int, int]], ncols: int, p: int) -> Span:
    sp = Span(ncols, p)
    for v in vectors:
        sp.add(v)
    return sp


def rank(m: SparseMat) -> int:
    """Rank of m over F_p; always <= min(nrows, ncols)."""
    return _span_of(m.row_dicts(), m.ncols, m.p).rank


def kernel_basis(m: SparseMat) -> list[SparseVec]:
    """Basis of the null space {v : m v = 0}; size = ncols - rank(m).

    Representatives are the standard ones read off the RREF: one vector
    per free column, in increasing column order.
    """
    sp = _span_of(m.row_dicts(), m.ncols, m.p)
    pivots = sp.pivots
    rows = sp.basis()
    pivot_set = set(pivots)
    out = []
    for j in range(m.ncols):
        if j in pivot_set:
            continue
        vec = {j: 1}
        for piv, row in zip(pivots, rows):
            c = row.get(j, 0)
            if c:
                vec[piv] = (-c) % m.p
        out.append(SparseVec.from_dict(vec, m.p))
    return out


def quotient_basis(space_dim: int, subspace: Sequence[Mapping[int, int] | SparseVec], p: int = 2) -> list[SparseVec]:
    """Representatives of a basis of F_p^n / span(subspace).

    Returns the standard basis vectors e_j for the non-pivot columns j of
    the subspace RREF; count = n - rank(subspace).
    """
    vecs = [v.to_dict() if isinstance(v, SparseVec) else v for v in subspace]
    sp = _span_of(vecs, space_dim, p)
    pivot_set = set(sp.pivots)
    return [SparseVec.from_dict({j: 1}, p) for j in range(space_dim) if j not in pivot_set]


def solve_in_span(
    vectors: Sequence[Mapping[int, int]],
    target: Mapping[int, int],
    ncols: int,
    p: int,
) -> list[int] | None:
    """Coefficients c with sum(c_i * vectors_i) = target, or None.

    Dense elimination on the augmented system; used for coordinate
    extraction on small spaces (module actions, homology classes).
    """
    k = len(vectors)
    a = np.zeros((ncols, k + 1), dtype=np.int64)
    for j, vec in enumerate(vectors):
        for i, v in vec.items():
            a[i, j] = v % p
    for i, v in target.items():
        a[i, k] = v % p
    row = 0
    pivcols: list[int] = []
    for col in range(k):
        pr = None
        for r in range(row, ncols):
            if a[r, col] % p:
                pr = r
                break
        if pr is None:
            continue
        a[[row, pr]] = a[[pr, row]]
        a[row] = (a[row] * pow(int(a[row, col]), p - 2, p)) % p
        for r in range(ncols):
            if r != row and a[r, col] % p:
                a[r] = (a[r] - a[r, col] * a[row]) % p
        pivcols.append(col)
        row += 1
    # inconsistent if any leftover row is (0...0 | nonzero)
    for r in range(row, ncols):
        if a[r, k] % p:
            return None
    coeffs = [0] * k
    for r, col in enumerate(pivcols):
        coeffs[col] = int(a[r, k]) % p
    return coeffs

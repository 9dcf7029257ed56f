"""Exact sparse linear algebra over cyclotomic scalars.

Rows and matrices are dictionaries keyed by hashable column labels; all
arithmetic is exact field arithmetic in Q(zeta_N).  The rank routine keeps
the pivot rows in reduced echelon form, which guarantees termination and
keeps fill-in local when the input has block structure.

For full-rank certificates there is also a modular route: mapping zeta_N to
an order-N element of a prime field F_q (q = 1 mod N) is a ring map on the
cyclotomic integers, so a nonvanishing minor mod q is nonvanishing in
characteristic zero and full rank mod q proves full rank over the field.
The converse direction is not used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

import numpy as np

from .cyclo import Cyclotomic


@dataclass
class SparseMatrix:
    """A sparse matrix with exact entries; zero entries are never stored."""

    nrows: int
    ncols: int
    entries: dict = field(default_factory=dict)  # (row, col) -> Cyclotomic

    def add(self, row: int, col: int, value: Cyclotomic) -> None:
        key = (row, col)
        cur = self.entries.get(key)
        total = value if cur is None else cur + value
        if total.is_zero():
            self.entries.pop(key, None)
        else:
            self.entries[key] = total

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        if self.entries.keys() != other.entries.keys():
            return False
        return all(v == other.entries[k] for k, v in self.entries.items())

    def rows(self) -> list[dict]:
        out = [dict() for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def columns(self) -> list[dict]:
        out = [dict() for _ in range(self.ncols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def to_dense(self) -> list[list[Cyclotomic]]:
        zero = Cyclotomic.zero()
        return [
            [self.entries.get((r, c), zero) for c in range(self.ncols)]
            for r in range(self.nrows)
        ]


def _reduce_row(row: dict, pivots: dict) -> dict:
    """Fully reduce a row against reduced-echelon pivot rows."""
    while True:
        hit = None
        for col in row:
            if col in pivots:
                hit = col
                break
        if hit is None:
            return row
        factor = row[hit]
        prow = pivots[hit]
        for col, value in prow.items():
            cur = row.get(col)
            total = -factor * value if cur is None else cur - factor * value
            if total.is_zero():
                row.pop(col, None)
            else:
                row[col] = total


def sparse_rank(rows) -> int:
    """Rank of a list of sparse rows (dicts col -> Cyclotomic), exactly."""
    pivots: dict = {}
    # identical-support rows are reduced together first; this collapses the
    # large same-shape blocks produced by group operators before they meet
    # the global elimination
    buckets: dict = {}
    for row in rows:
        live = {c: v for c, v in row.items() if not v.is_zero()}
        if live:
            buckets.setdefault(frozenset(live), []).append(live)
    ordered = []
    for _, bucket in sorted(buckets.items(), key=lambda kv: (len(kv[0]), sorted(map(repr, kv[0])))):
        if len(bucket) == 1:
            ordered.extend(bucket)
            continue
        local: dict = {}
        for row in bucket:
            row = _reduce_row(row, local)
            if row:
                pivot_col = min(row, key=repr)
                inv = row[pivot_col].inverse()
                local[pivot_col] = {c: v * inv for c, v in row.items()}
        ordered.extend(local.values())
    for row in sorted(ordered, key=len):
        row = _reduce_row(dict(row), pivots)
        if not row:
            continue
        pivot_col = min(row, key=repr)
        inv = row[pivot_col].inverse()
        normalized = {c: v * inv for c, v in row.items()}
        # keep reduced echelon form: clear the new pivot column everywhere
        for pcol, prow in list(pivots.items()):
            if pivot_col in prow:
                factor = prow[pivot_col]
                for col, value in normalized.items():
                    cur = prow.get(col)
                    total = -factor * value if cur is None else cur - factor * value
                    if total.is_zero():
                        prow.pop(col, None)
                    else:
                        prow[col] = total
        pivots[pivot_col] = normalized
    return len(pivots)


def _certificate_prime(N: int, floor: int = 1_000_003) -> tuple[int, int]:
    """A prime q = 1 mod N above the floor, with an element of exact
    multiplicative order N in F_q."""
    q = floor + ((1 - floor) % N)
    while True:
        q += N
        if q % 2 and all(q % d for d in range(3, int(q**0.5) + 1, 2)):
            break
    exponent = (q - 1) // N
    prime_parts = _prime_factors(N)
    for g in range(2, q):
        z = pow(g, exponent, q)
        if z == 1:
            continue
        if all(pow(z, N // r, q) != 1 for r in prime_parts):
            return q, z
    raise RuntimeError("no order-N element found (unreachable for prime q = 1 mod N)")


def _prime_factors(value: int) -> list[int]:
    out = []
    d = 2
    while d * d <= value:
        if value % d == 0:
            out.append(d)
            while value % d == 0:
                value //= d
        d += 1
    if value > 1:
        out.append(value)
    return out


def modular_full_rank_certificate(rows, target: int) -> bool:
    """True only if the rows are certainly linearly independent over the
    cyclotomic field (and there are exactly target of them).

    Entries are sent through the reduction map Z[zeta_N] -> F_q; full rank of
    the image matrix proves full rank of the original.  A False answer is
    inconclusive and should fall back to the exact elimination.
    """
    rows = list(rows)
    if len(rows) != target:
        return False
    N = 1
    for row in rows:
        for v in row.values():
            N = lcm(N, v.order)
    q, z = _certificate_prime(N)
    zpow = [1] * N
    for j in range(1, N):
        zpow[j] = zpow[j - 1] * z % q
    columns: dict = {}
    data = []
    for row in rows:
        img = {}
        for col, v in row.items():
            idx = columns.setdefault(col, len(columns))
            acc = 0
            lifted = v.lift(N)
            for j, coeff in enumerate(lifted.coeffs):
                if coeff:
                    num = coeff.numerator % q
                    den = coeff.denominator % q
                    if den == 0:
                        return False  # prime collides with a denominator
                    acc = (acc + num * pow(den, q - 2, q) * zpow[j]) % q
            if acc:
                img[idx] = acc
        data.append(img)
    if len(columns) < target:
        return False
    A = np.zeros((len(rows), len(columns)), dtype=np.int64)
    for i, img in enumerate(data):
        for j, value in img.items():
            A[i, j] = value
    return _modq_rank(A, q) == target


def _modq_rank(A: "np.ndarray", q: int) -> int:
    nrows, ncols = A.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), q - 2, q)
        A[r] = A[r] * inv % q
        below = A[r + 1 :, c]
        hit = np.nonzero(below)[0]
        if len(hit):
            block = A[r + 1 :][hit]
            A[r + 1 :][hit] = (block - np.outer(below[hit], A[r])) % q
        r += 1
    return r

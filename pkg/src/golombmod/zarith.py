"""Exact integer kernels: gcd, ideals of Z, Hermite and Smith normal forms.

Everything here works on Python ints, so there is no overflow to guard
against.  Lattices are always spanned by the *columns* of a matrix; the
Hermite form is the lower-echelon column form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

__all__ = [
    "IdealOfZ",
    "IntMatrix",
    "gcd_ideal",
    "xgcd",
    "hnf",
    "hnf_with_transform",
    "hnf_solve",
    "snf",
    "smith_form",
    "divisors",
    "factorize",
    "is_prime",
    "primes",
]


@dataclass(frozen=True)
class IdealOfZ:
    """The ideal ``generator * Z`` (0 is the zero ideal, 1 the whole ring)."""

    generator: int

    def __post_init__(self):
        if self.generator < 0:
            raise ValueError(f"ideal generator must be >= 0, got {self.generator}")

    def __contains__(self, x: int) -> bool:
        if self.generator == 0:
            return x == 0
        return x % self.generator == 0

    def __add__(self, other: "IdealOfZ") -> "IdealOfZ":
        return IdealOfZ(math.gcd(self.generator, other.generator))

    def __and__(self, other: "IdealOfZ") -> "IdealOfZ":
        return IdealOfZ(math.lcm(self.generator, other.generator))

    def __mul__(self, other: "IdealOfZ") -> "IdealOfZ":
        return IdealOfZ(self.generator * other.generator)

    def is_prime(self) -> bool:
        """Prime ideal of Z: (0) or (p)."""
        return self.generator == 0 or is_prime(self.generator)

    def __str__(self):
        return f"{self.generator}Z"


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 0:
            raise ValueError(f"bad shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(map(int, r)) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int | None = None) -> "IntMatrix":
        columns = [list(map(int, c)) for c in columns]
        if nrows is None:
            if not columns:
                raise ValueError("nrows required for an empty column list")
            nrows = len(columns[0])
        if any(len(c) != nrows for c in columns):
            raise ValueError("ragged columns")
        return cls(nrows, len(columns), tuple(columns[j][i] for i in range(nrows) for j in range(len(columns))))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row_list(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(self.entries[i * self.cols + j] for i in range(self.rows)) for j in range(self.cols)]


def gcd_ideal(xs: Iterable[int]) -> IdealOfZ:
    return IdealOfZ(reduce(math.gcd, (abs(x) for x in xs), 0))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


# ---------------------------------------------------------------- Hermite form

def _axpy(dst: list[int], q: int, src: list[int]) -> None:
    # dst -= q * src
    if q:
        for i, s in enumerate(src):
            if s:
                dst[i] -= q * s


def _hnf_columns(cols: list[list[int]], nrows: int, track: bool):
    """Column HNF in place.  Returns (hnf_cols, transform_cols, pivot_rows).

    ``transform_cols`` (when tracked) are the columns of a unimodular U with
    A U = [H | 0]; its trailing columns span the integer kernel of A.
    """
    m = len(cols)
    cols = [list(c) for c in cols]
    U = [[int(i == j) for i in range(m)] for j in range(m)] if track else None
    pivots: list[int] = []
    k = 0
    for i in range(nrows):
        if k >= m:
            break
        while True:
            nz = [j for j in range(k, m) if cols[j][i]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(cols[j][i]))
            if j0 != k:
                cols[k], cols[j0] = cols[j0], cols[k]
                if track:
                    U[k], U[j0] = U[j0], U[k]
            done = True
            for j in range(k + 1, m):
                if cols[j][i]:
                    q = cols[j][i] // cols[k][i]
                    _axpy(cols[j], q, cols[k])
                    if track:
                        _axpy(U[j], q, U[k])
                    if cols[j][i]:
                        done = False
            if done:
                break
        if k < m and cols[k][i]:
            if cols[k][i] < 0:
                cols[k] = [-x for x in cols[k]]
                if track:
                    U[k] = [-x for x in U[k]]
            p = cols[k][i]
            for j in range(k):
                q = cols[j][i] // p
                _axpy(cols[j], q, cols[k])
                if track:
                    _axpy(U[j], q, U[k])
            pivots.append(i)
            k += 1
    return cols, U, pivots


def hnf(m: IntMatrix) -> IntMatrix:
    """Canonical column Hermite normal form; zero columns are dropped."""
    cols, _, pivots = _hnf_columns([list(c) for c in m.columns()], m.rows, track=False)
    return IntMatrix.from_columns(cols[:len(pivots)], nrows=m.rows)


def hnf_with_transform(m: IntMatrix) -> tuple[IntMatrix, list[tuple[int, ...]], list[int]]:
    """HNF with a unimodular transform U such that ``m @ U = [H | 0]``.

    Returns ``(H, U_columns, pivot_rows)``; the columns of U past ``H.cols``
    span the integer kernel of ``m``.
    """
    cols, U, pivots = _hnf_columns([list(c) for c in m.columns()], m.rows, track=True)
    return IntMatrix.from_columns(cols[:len(pivots)], nrows=m.rows), [tuple(u) for u in U], pivots


def hnf_solve(h_cols: Sequence[Sequence[int]], pivots: Sequence[int], v: Sequence[int]) -> list[int] | None:
    """Integer coefficients c with sum c_j * h_j = v, or None.

    ``h_cols`` must be an HNF basis with the given pivot rows.
    """
    v = list(v)
    coeffs = []
    row = 0
    for j, p in enumerate(pivots):
        for i in range(row, p):
            if v[i]:
                return None
        q, r = divmod(v[p], h_cols[j][p])
        if r:
            return None
        _axpy(v, q, list(h_cols[j]))
        coeffs.append(q)
        row = p + 1
    if any(v):
        return None
    return coeffs


# ----------------------------------------------------------------- Smith form

def smith_form(m: IntMatrix) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Smith form with transforms: ``P @ A @ Q = diag(d)``.

    Returns ``(d, P, Q)`` with ``len(d) == min(rows, cols)``; nonzero entries
    form a divisibility chain and come first.  P and Q are row-lists.
    """
    r, c = m.rows, m.cols
    A = m.row_list()
    P = [[int(i == j) for j in range(r)] for i in range(r)]
    Q = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    def row_sub(dst, q, src):
        _axpy(A[dst], q, A[src])
        _axpy(P[dst], q, P[src])

    def col_sub(dst, q, src):
        for row in A:
            row[dst] -= q * row[src]
        for row in Q:
            row[dst] -= q * row[src]

    for t in range(min(r, c)):
        nz = [(abs(A[i][j]), i, j) for i in range(t, r) for j in range(t, c) if A[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            dirty = False
            for i in range(t + 1, r):
                if A[i][t]:
                    row_sub(i, A[i][t] // A[t][t], t)
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, c):
                if A[t][j]:
                    col_sub(j, A[t][j] // A[t][t], t)
                    dirty = dirty or A[t][j] != 0
            if dirty:
                nz = [(abs(A[i][t]), i, t) for i in range(t, r) if A[i][t]]
                nz += [(abs(A[t][j]), t, j) for j in range(t, c) if A[t][j]]
                _, i0, j0 = min(nz)
                swap_rows(t, i0)
                swap_cols(t, j0)
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            # fold the offending row in; the next pass shrinks the pivot
            row_sub(t, -1, bad[0])
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            P[t] = [-x for x in P[t]]
    d = [A[i][i] for i in range(min(r, c))]
    return d, P, Q


def snf(m: IntMatrix) -> tuple[int, ...]:
    """Nonzero Smith invariants d1 | d2 | ... (zeros are dropped)."""
    d, _, _ = smith_form(m)
    return tuple(x for x in d if x)


# ------------------------------------------------------------ number theory

def divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation of |n| >= 1 by trial division."""
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def primes():
    """Infinite generator of primes."""
    p = 2
    while True:
        if is_prime(p):
            yield p
        p += 1

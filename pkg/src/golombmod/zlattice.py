"""Submodules of Z^n as integer lattices in column Hermite normal form."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ParseError, RankMismatch, ZeroSubmodule
from .zarith import IdealOfZ, IntMatrix, hnf, hnf_solve, hnf_with_transform, snf

__all__ = [
    "IntegerLattice",
    "LatticeCoset",
    "CosetIntersection",
    "lat_from_generators",
    "lat_sum",
    "lat_intersect",
    "lat_contains",
    "lat_residual",
    "coset_intersect",
    "is_coprime_coset_lat",
    "parse_lattice",
    "parse_lattice_coset",
    "format_vector",
]

Vector = tuple[int, ...]


def _pivot_rows(cols: Sequence[Vector]) -> list[int]:
    return [next(i for i, x in enumerate(c) if x) for c in cols]


@dataclass(frozen=True)
class IntegerLattice:
    """A sublattice of Z^n; ``basis`` holds canonical HNF columns."""

    ambient_rank: int
    basis: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_full(self) -> bool:
        return lat_residual(self).generator == 1

    def __contains__(self, v) -> bool:
        v = tuple(v)
        if len(v) != self.ambient_rank:
            raise RankMismatch(f"vector of length {len(v)} in Z^{self.ambient_rank}")
        return hnf_solve(self.basis, _pivot_rows(self.basis), v) is not None

    def coordinates(self, v) -> list[int] | None:
        return hnf_solve(self.basis, _pivot_rows(self.basis), tuple(v))

    def reduce(self, v) -> Vector:
        """Canonical representative of v + L (pivot entries brought into [0, pivot))."""
        v = list(v)
        for c, p in zip(self.basis, _pivot_rows(self.basis)):
            q = v[p] // c[p]
            if q:
                v = [a - q * b for a, b in zip(v, c)]
        return tuple(v)

    def __add__(self, other):
        return lat_sum(self, other)

    def __and__(self, other):
        return lat_intersect(self, other)

    def __le__(self, other):
        return lat_contains(other, self)

    def __str__(self):
        return "[" + ",".join(format_vector(c) for c in self.basis) + "]"


@dataclass(frozen=True)
class LatticeCoset:
    rep: Vector
    lat: IntegerLattice

    def __post_init__(self):
        if len(self.rep) != self.lat.ambient_rank:
            raise RankMismatch("coset representative has the wrong length")

    def __contains__(self, v) -> bool:
        return tuple(a - b for a, b in zip(v, self.rep)) in self.lat

    def __str__(self):
        return f"{format_vector(self.rep)}+{self.lat}"


@dataclass(frozen=True)
class CosetIntersection:
    """Outcome of intersecting two lattice cosets.

    ``kind`` is ``"disjoint"``, ``"coset"`` (witness + lattice, infinite) or
    ``"singleton"`` (the intersection lattice is zero; ``points`` lists it).
    """

    kind: str
    witness: Vector | None = None
    lattice: IntegerLattice | None = None
    points: tuple[Vector, ...] = field(default=())

    @property
    def disjoint(self) -> bool:
        return self.kind == "disjoint"


def lat_from_generators(n: int, vectors: Sequence[Sequence[int]]) -> IntegerLattice:
    vectors = [tuple(int(x) for x in v) for v in vectors]
    for v in vectors:
        if len(v) != n:
            raise RankMismatch(f"generator {v} does not lie in Z^{n}")
    H = hnf(IntMatrix.from_columns(vectors, nrows=n))
    return IntegerLattice(n, tuple(H.columns()))


def _check_rank(A: IntegerLattice, B: IntegerLattice):
    if A.ambient_rank != B.ambient_rank:
        raise RankMismatch(f"Z^{A.ambient_rank} vs Z^{B.ambient_rank}")


def lat_sum(A: IntegerLattice, B: IntegerLattice) -> IntegerLattice:
    _check_rank(A, B)
    return lat_from_generators(A.ambient_rank, A.basis + B.basis)


def lat_intersect(A: IntegerLattice, B: IntegerLattice) -> IntegerLattice:
    """A & B from the integer kernel of [A | -B]: (u, v) in ker gives A u."""
    _check_rank(A, B)
    n = A.ambient_rank
    if A.is_zero or B.is_zero:
        return IntegerLattice(n, ())
    cols = list(A.basis) + [tuple(-x for x in c) for c in B.basis]
    H, U, _ = hnf_with_transform(IntMatrix.from_columns(cols, nrows=n))
    kernel = U[H.cols:]
    k = A.rank
    gens = [tuple(sum(u[j] * A.basis[j][i] for j in range(k)) for i in range(n)) for u in kernel]
    return lat_from_generators(n, gens)


def lat_contains(A: IntegerLattice, B: IntegerLattice) -> bool:
    """True iff B is a sublattice of A."""
    _check_rank(A, B)
    return all(c in A for c in B.basis)


def lat_residual(N: IntegerLattice) -> IdealOfZ:
    """Generator of (N : Z^n): the least d >= 0 with d e_i in N for all i."""
    n = N.ambient_rank
    if N.rank < n:
        return IdealOfZ(0)
    d = 1
    for i in range(n):
        axis = lat_from_generators(n, [tuple(int(j == i) for j in range(n))])
        (c,) = lat_intersect(N, axis).basis
        d = math.lcm(d, abs(c[i]))
    return IdealOfZ(d)


def quotient_invariants(N: IntegerLattice) -> tuple[tuple[int, ...], int]:
    """(torsion invariant factors > 1, free rank) of Z^n / N."""
    torsion = tuple(d for d in snf(IntMatrix.from_columns(N.basis, nrows=N.ambient_rank)) if d > 1) \
        if N.basis else ()
    return torsion, N.ambient_rank - N.rank


def coset_intersect(c1: LatticeCoset, c2: LatticeCoset, max_points: int = 1) -> CosetIntersection:
    """Classify (r1 + L1) & (r2 + L2).

    Solves L1 u - L2 v = r2 - r1 through the HNF of the stacked generators.
    A solution set is a coset of L1 & L2, so when that lattice is zero the
    intersection has exactly one point; ``max_points`` caps what may be
    listed explicitly.
    """
    L1, L2 = c1.lat, c2.lat
    _check_rank(L1, L2)
    n = L1.ambient_rank
    rhs = tuple(b - a for a, b in zip(c1.rep, c2.rep))
    cols = list(L1.basis) + [tuple(-x for x in c) for c in L2.basis]
    if not cols:
        if any(rhs):
            return CosetIntersection("disjoint")
        return CosetIntersection("singleton", c1.rep, IntegerLattice(n, ()), (c1.rep,))
    # Column HNF with transform: A U = [H | 0], so A (U[:, :r] w) = H w.
    H, U, pivots = hnf_with_transform(IntMatrix.from_columns(cols, nrows=n))
    w = hnf_solve(H.columns(), pivots, rhs)
    if w is None:
        return CosetIntersection("disjoint")
    u = [sum(U[j][i] * w[j] for j in range(len(w))) for i in range(len(cols))]
    point = tuple(c1.rep[i] + sum(u[j] * L1.basis[j][i] for j in range(L1.rank)) for i in range(n))
    meet = lat_intersect(L1, L2)
    point = meet.reduce(point)
    if meet.is_zero:
        if max_points < 1:
            raise ValueError("max_points must allow at least one point")
        return CosetIntersection("singleton", point, meet, (point,))
    return CosetIntersection("coset", point, meet)


def is_coprime_coset_lat(rep: Sequence[int], N: IntegerLattice) -> bool:
    """True iff N + Z*rep = Z^n (rep + N is a coprime coset)."""
    if N.is_zero:
        raise ZeroSubmodule("coprime cosets need a nonzero submodule")
    rep = tuple(int(x) for x in rep)
    return lat_residual(lat_sum(N, lat_from_generators(N.ambient_rank, [rep]))).generator == 1


# ------------------------------------------------------------------ text I/O

_VEC_RE = re.compile(r"\(\s*(-?\d+(?:\s*,\s*-?\d+)*)?\s*,?\s*\)")


def format_vector(v: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _parse_vectors(text: str) -> list[Vector]:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError(f"lattice literal must look like [(2,0),(0,2)], got {text!r}")
    inner = body[1:-1].strip()
    vecs = []
    pos = 0
    while pos < len(inner):
        m = _VEC_RE.match(inner, pos)
        if not m:
            raise ParseError(f"bad vector near {inner[pos:]!r}")
        vecs.append(tuple(int(t) for t in (m.group(1) or "").split(",") if t.strip()))
        pos = m.end()
        while pos < len(inner) and inner[pos] in ", ":
            pos += 1
    return vecs


def parse_lattice(text: str, n: int | None = None) -> IntegerLattice:
    vecs = _parse_vectors(text)
    if n is None:
        if not vecs:
            raise ParseError("cannot infer the ambient rank of an empty lattice literal")
        n = len(vecs[0])
    return lat_from_generators(n, vecs)


def parse_lattice_coset(text: str) -> LatticeCoset:
    """Parse ``"(1,1)+[(1,0)]"`` (or ``"1+[(3)]"`` in rank one)."""
    m = re.match(r"^\s*(\(.*?\)|-?\d+)\s*\+\s*(\[.*\])\s*$", text)
    if not m:
        raise ParseError(f"coset literal must look like (1,1)+[(1,0)], got {text!r}")
    rep_txt = m.group(1)
    rep = tuple(int(t) for t in rep_txt.strip("()").split(",") if t.strip())
    return LatticeCoset(rep, parse_lattice(m.group(2), n=len(rep)))

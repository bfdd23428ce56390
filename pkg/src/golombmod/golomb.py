"""Golomb topology of a finite module, and T2 witnesses on Z.

The coprime cosets ``m + N`` (N nonzero, N + Zm = M) are collected into a
basis, checked against the basis axioms, and expanded into an explicit
finite topology.  Topological queries use minimal open neighbourhoods: on a
finite space U_x (the meet of all opens around x) decides closure,
indiscreteness, separation and continuity.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Iterator

import numpy as np

from .errors import NotABasis, OpenSetCap
from .finmod import Coset, FiniteModule, cyclic, enumerate_submodules, format_element
from .modpred import Check, coprime
from .zarith import primes
from .zlattice import LatticeCoset, coset_intersect, is_coprime_coset_lat, lat_from_generators

__all__ = [
    "CoprimeBasis",
    "BasisCounterexample",
    "FiniteTopology",
    "SeparationReport",
    "coprime_basis",
    "check_basis_axioms",
    "basis_failures",
    "generate_topology",
    "golomb_topology",
    "subspace",
    "closure",
    "indiscrete_points",
    "separation",
    "separating_opens",
    "addition_preimage",
    "product_open_witness",
    "is_topological_group",
    "t2_witness_integers",
    "default_max_opens",
]

DEFAULT_MAX_OPENS = 4096


def default_max_opens() -> int:
    return int(os.environ.get("GOLOMBMOD_MAX_OPENS", DEFAULT_MAX_OPENS))


# ------------------------------------------------------------------- basis

@dataclass(frozen=True)
class CoprimeBasis:
    module: FiniteModule
    cosets: tuple[Coset, ...]

    @property
    def masks(self) -> list[int]:
        return [c.mask for c in self.cosets]

    def point_sets(self) -> list[frozenset]:
        return [frozenset(c.points) for c in self.cosets]


@dataclass(frozen=True)
class BasisCounterexample:
    """A point of c1 & c2 with no basis set through it inside c1 & c2."""

    point: tuple
    coset1: Coset
    coset2: Coset


def coprime_basis(M: FiniteModule) -> CoprimeBasis:
    """All coprime cosets m + N, one per point set.

    Listed by submodule from largest to smallest, then by representative.
    """
    cosets = []
    for N in reversed(enumerate_submodules(M)):
        if N.is_zero:
            continue
        seen = 0
        for i, m in enumerate(M.elements):
            if seen >> i & 1:
                continue
            c = Coset.of(m, N)
            seen |= c.mask
            if coprime(cyclic(M, m), N):
                cosets.append(c)
    return CoprimeBasis(M, tuple(cosets))


def basis_failures(B: CoprimeBasis) -> Iterator[BasisCounterexample]:
    """Every (point, coset pair) violating the intersection axiom.

    Pairs are scanned finest cosets first (reverse listing order).
    """
    M = B.module
    masks = B.masks
    for i in reversed(range(len(masks))):
        a = masks[i]
        for j in reversed(range(i)):
            meet = a & masks[j]
            if not meet:
                continue
            covered = 0
            for c in masks:
                if c & ~meet == 0:
                    covered |= c
            bad = meet & ~covered
            while bad:
                p = (bad & -bad).bit_length() - 1
                bad &= bad - 1
                yield BasisCounterexample(M.elements[p], B.cosets[i], B.cosets[j])


def check_basis_axioms(B: CoprimeBasis) -> Check:
    """Holds iff the cosets cover M and satisfy the intersection axiom.

    On failure the witness is a :class:`BasisCounterexample` (or, if the
    cover fails, a point with coset fields set to None).
    """
    M = B.module
    union = 0
    for c in B.masks:
        union |= c
    if union != M.full_mask:
        missing = M.full_mask & ~union
        p = (missing & -missing).bit_length() - 1
        return Check(False, BasisCounterexample(M.elements[p], None, None))
    bad = next(basis_failures(B), None)
    return Check(True) if bad is None else Check(False, bad)


# ---------------------------------------------------------------- topology

@dataclass(frozen=True)
class FiniteTopology:
    """A finite space; opens and the optional basis are bitsets over ``ground``."""

    ground: tuple[Hashable, ...]
    opens: tuple[int, ...]
    basis: tuple[int, ...] | None = None
    _nbhd: list = field(default_factory=list, compare=False, repr=False, hash=False)

    @property
    def full(self) -> int:
        return (1 << len(self.ground)) - 1

    def position(self, x) -> int:
        return self.ground.index(x)

    def mask_of(self, points: Iterable) -> int:
        pos = {p: i for i, p in enumerate(self.ground)}
        mask = 0
        for p in points:
            mask |= 1 << pos[p]
        return mask

    def points_of(self, mask: int) -> list:
        return [p for i, p in enumerate(self.ground) if mask >> i & 1]

    def open_sets(self) -> list[frozenset]:
        return [frozenset(self.points_of(o)) for o in self.opens]

    def is_open(self, points: Iterable) -> bool:
        return self.mask_of(points) in set(self.opens)

    def neighborhoods(self) -> list[int]:
        """Minimal open neighbourhood of each ground point, as bitsets."""
        if not self._nbhd:
            family = self.basis if self.basis is not None else self.opens
            out = []
            for i in range(len(self.ground)):
                u = self.full
                for o in family:
                    if o >> i & 1:
                        u &= o
                out.append(u)
            self._nbhd.extend(out)
        return self._nbhd

    def check_axioms(self) -> bool:
        """Contains empty set and ground; closed under union and intersection."""
        opens = set(self.opens)
        if 0 not in opens or self.full not in opens:
            return False
        ops = list(opens)
        return all((a | b) in opens and (a & b) in opens for a in ops for b in ops)

    def to_json(self) -> dict:
        def fmt(p):
            return format_element(p) if isinstance(p, tuple) else str(p)

        return {
            "ground": [fmt(p) for p in self.ground],
            "opens": [[fmt(p) for p in self.points_of(o)] for o in self.opens],
        }

    def to_dot(self, name: str = "specialization") -> str:
        """Specialization preorder: edge x -> y iff x lies in the closure of {y}."""

        def fmt(p):
            return format_element(p) if isinstance(p, tuple) else str(p)

        nb = self.neighborhoods()
        indiscrete = set(indiscrete_points(self))
        lines = [f"digraph {json.dumps(name)} {{"]
        for p in self.ground:
            style = ' style=filled fillcolor="#f4a261"' if p in indiscrete else ""
            lines.append(f"  {json.dumps(fmt(p))} [shape=circle{style}];")
        for i, x in enumerate(self.ground):
            for j, y in enumerate(self.ground):
                if i != j and nb[i] >> j & 1:
                    lines.append(f"  {json.dumps(fmt(x))} -> {json.dumps(fmt(y))};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def generate_topology(B: CoprimeBasis, max_opens: int | None = None) -> FiniteTopology:
    """All unions of basis sets (plus the empty set)."""
    cap = default_max_opens() if max_opens is None else max_opens
    check = check_basis_axioms(B)
    if not check:
        raise NotABasis(f"coprime cosets of {B.module} do not form a basis", check.witness)
    opens = {0}
    for b in sorted(set(B.masks)):
        opens |= {o | b for o in opens}
        if len(opens) > cap:
            raise OpenSetCap(f"topology on {B.module} has more than {cap} open sets")
    return FiniteTopology(B.module.elements, tuple(sorted(opens, key=lambda o: (-o.bit_count(), o))),
                          basis=tuple(B.masks))


def golomb_topology(M: FiniteModule, punctured: bool = False, max_opens: int | None = None) -> FiniteTopology:
    """The topology generated by coprime cosets, or its restriction to M - {0}."""
    T = generate_topology(coprime_basis(M), max_opens=max_opens)
    if punctured:
        T = subspace(T, M.elements[1:])
    return T


def subspace(T: FiniteTopology, S: Iterable) -> FiniteTopology:
    S = set(S)
    keep = [i for i, p in enumerate(T.ground) if p in S]

    def remap(mask: int) -> int:
        if keep and keep[-1] - keep[0] + 1 == len(keep):
            return (mask >> keep[0]) & ((1 << len(keep)) - 1)
        out = 0
        for new, old in enumerate(keep):
            if mask >> old & 1:
                out |= 1 << new
        return out

    opens = sorted({remap(o) for o in T.opens}, key=lambda o: (-o.bit_count(), o))
    basis = None if T.basis is None else tuple(b for b in (remap(o) for o in T.basis) if b)
    return FiniteTopology(tuple(T.ground[i] for i in keep), tuple(opens), basis)


def closure(T: FiniteTopology, S: Iterable) -> list:
    """Points whose every open neighbourhood meets S."""
    s = T.mask_of(S)
    return [p for p, u in zip(T.ground, T.neighborhoods()) if u & s]


def indiscrete_points(T: FiniteTopology) -> list:
    return [p for p, u in zip(T.ground, T.neighborhoods()) if u == T.full]


@dataclass(frozen=True)
class SeparationReport:
    t0: bool
    t1: bool
    t2: bool
    witnesses: dict[str, Any]

    def to_json(self) -> dict:
        return {"t0": self.t0, "t1": self.t1, "t2": self.t2,
                "witnesses": {k: None if v is None else [str(x) for x in v]
                              for k, v in self.witnesses.items()}}


def separation(T: FiniteTopology) -> SeparationReport:
    """T0/T1/T2 by pairwise scan; each failing axiom gets an inseparable pair."""
    nb = T.neighborhoods()
    g = T.ground
    w: dict[str, Any] = {"t0": None, "t1": None, "t2": None}
    for i in range(len(g)):
        for j in range(len(g)):
            if i == j:
                continue
            x_near_y = nb[j] >> i & 1  # every open around y contains x
            y_near_x = nb[i] >> j & 1
            if i < j and w["t0"] is None and x_near_y and y_near_x:
                w["t0"] = (g[i], g[j])
            if w["t1"] is None and y_near_x:
                w["t1"] = (g[i], g[j])
            if i < j and w["t2"] is None and nb[i] & nb[j]:
                w["t2"] = (g[i], g[j])
    return SeparationReport(w["t0"] is None, w["t1"] is None, w["t2"] is None, w)


def separating_opens(T: FiniteTopology, x, y) -> tuple[list, list] | None:
    """Disjoint opens around x and y, when they exist."""
    nb = T.neighborhoods()
    ux, uy = nb[T.position(x)], nb[T.position(y)]
    if ux & uy:
        return None
    return T.points_of(ux), T.points_of(uy)


# ------------------------------------------------------------- continuity

def addition_preimage(M: FiniteModule, points: Iterable) -> set[tuple]:
    """{(a, b) : a + b in points}."""
    target = {M.coerce(p) for p in points}
    return {(a, b) for a in M.elements for b in M.elements if M.add(a, b) in target}


def product_open_witness(T: FiniteTopology, pairs: Iterable[tuple]) -> tuple | None:
    """A pair in ``pairs`` with no basic rectangle U x V inside ``pairs``.

    None means the set is open in T x T.  Rectangles U_a x U_b of minimal
    neighbourhoods are the smallest candidates, so only they are tried.
    """
    pairs = set(pairs)
    nb = T.neighborhoods()
    pos = {p: i for i, p in enumerate(T.ground)}
    for a, b in sorted(pairs, key=lambda ab: (pos[ab[0]], pos[ab[1]])):
        ua, ub = T.points_of(nb[pos[a]]), T.points_of(nb[pos[b]])
        if any((x, y) not in pairs for x in ua for y in ub):
            return (a, b)
    return None


def is_topological_group(M: FiniteModule, T: FiniteTopology) -> Check:
    """Continuity of addition (against T x T) and of negation.

    Only basis opens are tested when a basis is known; preimages commute
    with unions.  Witness: ``(op, open_points, point)``.
    """
    if tuple(T.ground) != M.elements:
        raise ValueError("topology ground set must be the module's elements")
    nb = T.neighborhoods()
    add = M.add_table
    family = T.basis if T.basis is not None else T.opens
    for o in family:
        if o in (0, T.full):
            continue
        inside = np.array([bool(o >> i & 1) for i in range(M.order)])
        for a in range(M.order):
            ua = M.indices_of(nb[a])
            for b in range(M.order):
                if not inside[add[a, b]]:
                    continue
                ub = M.indices_of(nb[b])
                if not inside[add[np.ix_(ua, ub)]].all():
                    return Check(False, ("add", T.points_of(o), (M.elements[a], M.elements[b])))
        neg = M.neg_table
        for a in range(M.order):
            if inside[neg[a]] and not inside[neg[M.indices_of(nb[a])]].all():
                return Check(False, ("neg", T.points_of(o), M.elements[a]))
    return Check(True)


# ---------------------------------------------------------------- Z witnesses

def t2_witness_integers(m: int, n: int) -> tuple[LatticeCoset, LatticeCoset]:
    """Disjoint coprime cosets m + pZ, n + pZ for distinct nonzero m, n.

    p is the least prime dividing none of m, n, m - n.
    """
    if m == 0 or n == 0 or m == n:
        raise ValueError("need distinct nonzero integers")
    p = next(q for q in primes() if m % q and n % q and (m - n) % q)
    L = lat_from_generators(1, [(p,)])
    c1, c2 = LatticeCoset((m,), L), LatticeCoset((n,), L)
    assert is_coprime_coset_lat((m,), L) and is_coprime_coset_lat((n,), L)
    if not coset_intersect(c1, c2).disjoint:
        raise AssertionError(f"cosets {c1} and {c2} meet")
    return c1, c2

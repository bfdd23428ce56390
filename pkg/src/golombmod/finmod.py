"""Finite abelian groups as Z-modules.

Elements are coordinate tuples against the invariant factors and are
enumerated lexicographically; internally each element is identified by its
enumeration index.  A submodule is stored as a bitset (Python int) over
those indices, so submodule algebra is integer bit arithmetic.
"""

from __future__ import annotations

import itertools
import math
import os
import re
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    EmptyFactorList,
    NoSolution,
    NonDividingChain,
    NotCoprime,
    ParentMismatch,
    ParseError,
    SizeCap,
)
from .zarith import IdealOfZ, IntMatrix, divisors, smith_form, snf, xgcd

__all__ = [
    "FiniteModule",
    "Submodule",
    "Coset",
    "CrtSolution",
    "make_module",
    "parse_module",
    "parse_element",
    "format_element",
    "enumerate_submodules",
    "sum_submodules",
    "intersect",
    "cyclic",
    "residual",
    "quotient",
    "crt_solve",
    "default_max_order",
]

Element = tuple[int, ...]

DEFAULT_MAX_ORDER = 256
DEFAULT_MAX_SUBMODULES = 50_000


def default_max_order() -> int:
    return int(os.environ.get("GOLOMBMOD_MAX_ORDER", DEFAULT_MAX_ORDER))


class FiniteModule:
    """Z_{d1} + ... + Z_{dk} with d1 | d2 | ... | dk.

    Use :func:`make_module` to build one; the constructor only accepts an
    empty factor list through :meth:`trivial` (the order-1 quotient marker).
    """

    def __init__(self, invariant_factors: Sequence[int], *, _trivial_ok: bool = False):
        factors = tuple(int(d) for d in invariant_factors)
        if not factors and not _trivial_ok:
            raise EmptyFactorList("the zero module is excluded; give at least one factor")
        for d in factors:
            if d < 2:
                raise NonDividingChain(f"invariant factors must be >= 2, got {d}")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise NonDividingChain(f"{a} does not divide {b}")
        self.invariant_factors = factors
        self.order = math.prod(factors)
        self.exponent = factors[-1] if factors else 1
        self.rank = len(factors)
        self.elements: tuple[Element, ...] = tuple(itertools.product(*(range(d) for d in factors)))
        strides = []
        s = 1
        for d in reversed(factors):
            strides.append(s)
            s *= d
        self._strides = tuple(reversed(strides))
        self._cache: dict = {}

    @classmethod
    def trivial(cls) -> "FiniteModule":
        return cls((), _trivial_ok=True)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def annihilator(self) -> IdealOfZ:
        return IdealOfZ(self.exponent)

    def __eq__(self, other):
        return isinstance(other, FiniteModule) and self.invariant_factors == other.invariant_factors

    def __hash__(self):
        return hash(("FiniteModule", self.invariant_factors))

    def __repr__(self):
        return f"FiniteModule({list(self.invariant_factors)})"

    def __str__(self):
        if self.is_trivial:
            return "0"
        return " + ".join(f"Z{d}" for d in self.invariant_factors)

    @property
    def label(self) -> str:
        return "x".join(map(str, self.invariant_factors)) or "1"

    # ------------------------------------------------------------ elements

    def coerce(self, x) -> Element:
        """Accept a coordinate tuple (or a bare int for cyclic modules)."""
        if isinstance(x, (int, np.integer)):
            if self.rank != 1:
                raise ValueError(f"bare integer element needs a cyclic module, not {self}")
            x = (int(x),)
        x = tuple(int(a) for a in x)
        if len(x) != self.rank:
            raise ValueError(f"element {x} has wrong length for {self}")
        return tuple(a % d for a, d in zip(x, self.invariant_factors))

    def index(self, x) -> int:
        x = self.coerce(x)
        return sum(a * s for a, s in zip(x, self._strides))

    def element(self, i: int) -> Element:
        return self.elements[i]

    def add(self, x, y) -> Element:
        return self.coerce(tuple(a + b for a, b in zip(self.coerce(x), self.coerce(y))))

    def neg(self, x) -> Element:
        return self.coerce(tuple(-a for a in self.coerce(x)))

    def scale(self, k: int, x) -> Element:
        return self.coerce(tuple(k * a for a in self.coerce(x)))

    @property
    def add_table(self) -> np.ndarray:
        if "add" not in self._cache:
            coords = np.array(self.elements, dtype=np.int64).reshape(self.order, self.rank)
            mods = np.array(self.invariant_factors, dtype=np.int64)
            strides = np.array(self._strides, dtype=np.int64)
            s = (coords[:, None, :] + coords[None, :, :]) % mods
            self._cache["add"] = (s * strides).sum(axis=-1)
        return self._cache["add"]

    @property
    def neg_table(self) -> np.ndarray:
        if "neg" not in self._cache:
            coords = np.array(self.elements, dtype=np.int64).reshape(self.order, self.rank)
            mods = np.array(self.invariant_factors, dtype=np.int64)
            strides = np.array(self._strides, dtype=np.int64)
            self._cache["neg"] = (((-coords) % mods) * strides).sum(axis=-1)
        return self._cache["neg"]

    # ----------------------------------------------------------- bitsets

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def mask_of(self, indices) -> int:
        flags = np.zeros(self.order, dtype=bool)
        flags[np.asarray(indices, dtype=np.int64)] = True
        return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")

    def indices_of(self, mask: int) -> np.ndarray:
        raw = np.frombuffer(mask.to_bytes((self.order + 7) // 8, "little"), dtype=np.uint8)
        return np.flatnonzero(np.unpackbits(raw, bitorder="little")[:self.order])

    def translate_mask(self, mask: int, x) -> int:
        """Bitset of x + S."""
        return self.mask_of(self.add_table[self.index(x), self.indices_of(mask)])

    def _sum_mask(self, a: int, b: int) -> int:
        ia, ib = self.indices_of(a), self.indices_of(b)
        return self.mask_of(self.add_table[np.ix_(ia, ib)].ravel())

    def _scaled_mask(self, e: int) -> int:
        """Bitset of e*M."""
        key = ("scaled", e)
        if key not in self._cache:
            self._cache[key] = self.mask_of([self.index(self.scale(e, x)) for x in self.elements])
        return self._cache[key]

    def _cyclic_mask(self, i: int) -> int:
        cache = self._cache.setdefault("cyclic", {})
        if i not in cache:
            seen = [0]
            j = self.add_table[0, i]
            while j != 0:
                seen.append(int(j))
                j = self.add_table[j, i]
            cache[i] = self.mask_of(seen)
        return cache[i]

    # -------------------------------------------------------- submodules

    def zero(self) -> "Submodule":
        return Submodule(self, 1)

    def whole(self) -> "Submodule":
        return Submodule(self, self.full_mask)

    def submodule(self, members) -> "Submodule":
        """Submodule from an explicit member list (checked for closure)."""
        mask = self.mask_of([self.index(x) for x in members])
        if not _is_subgroup_mask(self, mask):
            raise ValueError("members are not closed under addition")
        return Submodule(self, mask)

    def span(self, *gens) -> "Submodule":
        mask = 1
        for g in gens:
            mask = self._sum_mask(mask, self._cyclic_mask(self.index(g)))
        return Submodule(self, mask)

    def submodules(self, max_order: int | None = None,
                   max_count: int = DEFAULT_MAX_SUBMODULES) -> list["Submodule"]:
        return enumerate_submodules(self, max_order=max_order, max_count=max_count)


def _is_subgroup_mask(M: FiniteModule, mask: int) -> bool:
    if not mask & 1:
        return False
    idx = M.indices_of(mask)
    sums = M.add_table[np.ix_(idx, idx)].ravel()
    return M.mask_of(sums) | mask == mask


class Submodule:
    """A subgroup of a finite module, stored as a bitset of element indices."""

    __slots__ = ("parent", "mask")

    def __init__(self, parent: FiniteModule, mask: int):
        self.parent = parent
        self.mask = mask

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def __len__(self):
        return self.order

    @property
    def indices(self) -> list[int]:
        return [int(i) for i in self.parent.indices_of(self.mask)]

    @property
    def members(self) -> list[Element]:
        return [self.parent.elements[i] for i in self.indices]

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x) -> bool:
        return bool(self.mask >> self.parent.index(x) & 1)

    def _same_parent(self, other: "Submodule"):
        if self.parent != other.parent:
            raise ParentMismatch(f"{self.parent} vs {other.parent}")

    def __le__(self, other: "Submodule") -> bool:
        self._same_parent(other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Submodule") -> bool:
        return self <= other and self.mask != other.mask

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def __eq__(self, other):
        return (isinstance(other, Submodule) and self.parent == other.parent
                and self.mask == other.mask)

    def __hash__(self):
        return hash((self.parent, self.mask))

    def __add__(self, other: "Submodule") -> "Submodule":
        return sum_submodules(self, other)

    def __and__(self, other: "Submodule") -> "Submodule":
        return intersect(self, other)

    @property
    def is_zero(self) -> bool:
        return self.mask == 1

    @property
    def is_whole(self) -> bool:
        return self.mask == self.parent.full_mask

    def __repr__(self):
        body = ", ".join(format_element(x) for x in self.members[:8])
        more = ", ..." if self.order > 8 else ""
        return f"Submodule({self.parent.label}: {{{body}{more}}})"


@dataclass(frozen=True)
class Coset:
    """rep + sub, with rep the enumeration-least member."""

    rep: Element
    sub: Submodule

    @classmethod
    def of(cls, x, sub: Submodule) -> "Coset":
        M = sub.parent
        mask = M.translate_mask(sub.mask, x)
        low = (mask & -mask).bit_length() - 1
        return cls(M.elements[low], sub)

    @property
    def mask(self) -> int:
        return self.sub.parent.translate_mask(self.sub.mask, self.rep)

    @property
    def points(self) -> list[Element]:
        M = self.sub.parent
        return [M.elements[i] for i in M.indices_of(self.mask)]

    def __contains__(self, x) -> bool:
        M = self.sub.parent
        return bool(self.mask >> M.index(x) & 1)

    def __str__(self):
        return f"{format_element(self.rep)}+<{self.sub.order}>"


# ------------------------------------------------------------- construction

def make_module(invariant_factors: Sequence[int]) -> FiniteModule:
    """Build Z_{d1} + ... + Z_{dk}; requires d_i >= 2 and d_i | d_{i+1}."""
    return FiniteModule(list(invariant_factors))


_MODULE_RE = re.compile(r"^\s*\d+(\s*[xX]\s*\d+)*\s*$")


def parse_module(text: str) -> FiniteModule:
    """Parse a literal such as ``"8"`` or ``"4x2"``; normalised through SNF."""
    if not _MODULE_RE.match(text):
        raise ParseError(f"bad module literal {text!r}; expected factors joined by 'x'")
    raw = [int(t) for t in re.split(r"[xX]", text)]
    if any(d == 0 for d in raw):
        raise ParseError("factor 0 names an infinite cyclic group; not a finite module")
    factors = [d for d in snf(IntMatrix.from_rows([[d if i == j else 0 for j in range(len(raw))]
                                                    for i, d in enumerate(raw)])) if d > 1]
    if not factors:
        raise EmptyFactorList(f"{text!r} is the zero module")
    return make_module(factors)


def format_element(x: Element) -> str:
    return "(" + ",".join(str(a) for a in x) + ")"


def parse_element(text: str, M: FiniteModule | None = None) -> Element:
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    try:
        x = tuple(int(t) for t in body.split(",") if t.strip())
    except ValueError as exc:
        raise ParseError(f"bad element literal {text!r}") from exc
    return M.coerce(x) if M is not None else x


# --------------------------------------------------------------- lattices

def enumerate_submodules(M: FiniteModule, max_order: int | None = None,
                         max_count: int = DEFAULT_MAX_SUBMODULES) -> list[Submodule]:
    """Every subgroup of M once, ordered by (size, bitset).

    Breadth-first joins S + <g>.  The join only depends on the coset g + S,
    so one representative per coset is tried.
    """
    bound = default_max_order() if max_order is None else max_order
    if M.order > bound:
        raise SizeCap(f"|M| = {M.order} exceeds the enumeration bound {bound}")
    if "subs" in M._cache:
        return M._cache["subs"]
    found = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for s in frontier:
            idx = M.indices_of(s)
            remaining = M.full_mask & ~s
            while remaining:
                g = (remaining & -remaining).bit_length() - 1
                remaining &= ~M.mask_of(M.add_table[g, idx])
                t = M._sum_mask(s, M._cyclic_mask(g))
                if t not in found:
                    found.add(t)
                    nxt.append(t)
                    if len(found) > max_count:
                        raise SizeCap(f"{M} has more than {max_count} submodules")
        frontier = nxt
    subs = [Submodule(M, m) for m in sorted(found, key=lambda m: (m.bit_count(), m))]
    M._cache["subs"] = subs
    M._cache["sub_index"] = {s.mask: i for i, s in enumerate(subs)}
    return subs


def sum_submodules(N: Submodule, K: Submodule) -> Submodule:
    N._same_parent(K)
    M = N.parent
    if N.mask & ~K.mask == 0:
        return K
    if K.mask & ~N.mask == 0:
        return N
    key = (N.mask, K.mask) if N.mask < K.mask else (K.mask, N.mask)
    cache = M._cache.setdefault("sums", {})
    if key not in cache:
        cache[key] = M._sum_mask(N.mask, K.mask)
    return Submodule(M, cache[key])


def intersect(N: Submodule, K: Submodule) -> Submodule:
    N._same_parent(K)
    return Submodule(N.parent, N.mask & K.mask)


def cyclic(M: FiniteModule, m) -> Submodule:
    return Submodule(M, M._cyclic_mask(M.index(m)))


def residual(N: Submodule, M: FiniteModule | None = None) -> IdealOfZ:
    """Generator of (N:M) = {r : rM in N}; always a positive divisor of exp(M)."""
    M = N.parent if M is None else M
    if M != N.parent:
        raise ParentMismatch("N is not a submodule of M")
    cache = M._cache.setdefault("residual", {})
    if N.mask not in cache:
        cache[N.mask] = next(e for e in divisors(M.exponent) if M._scaled_mask(e) & ~N.mask == 0)
    return IdealOfZ(cache[N.mask])


def _generators(N: Submodule) -> list[Element]:
    M = N.parent
    gens, cur = [], 1
    for i in N.indices:
        if not cur >> i & 1:
            gens.append(M.elements[i])
            cur = M._sum_mask(cur, M._cyclic_mask(i))
    return gens


def quotient(M: FiniteModule, N: Submodule) -> tuple[FiniteModule, Callable[[Element], Element]]:
    """M/N with an explicit projection onto its invariant-factor form.

    The relation matrix has columns d_i e_i plus generators of N; its Smith
    transform P sends x to the coordinates (P x)_i mod d'_i.
    """
    if N.parent != M:
        raise ParentMismatch("N is not a submodule of M")
    k = M.rank
    rel = [[d if i == j else 0 for i in range(k)] for j, d in enumerate(M.invariant_factors)]
    rel += [list(g) for g in _generators(N)]
    d, P, _ = smith_form(IntMatrix.from_columns(rel, nrows=k))
    keep = [i for i, x in enumerate(d) if x > 1]
    factors = [d[i] for i in keep]
    Q = make_module(factors) if factors else FiniteModule.trivial()
    rows = [P[i] for i in keep]

    def proj(x) -> Element:
        x = M.coerce(x)
        return tuple(sum(p * a for p, a in zip(row, x)) % d[i] for row, i in zip(rows, keep))

    return Q, proj


@dataclass(frozen=True)
class CrtSolution:
    """z with z = x mod N and z = y mod K; ``path`` says how it was found."""

    z: Element
    path: str  # "residual" or "exhaustive"


def crt_solve(x, y, N: Submodule, K: Submodule) -> CrtSolution:
    """Solve z = x (mod N), z = y (mod K) given N + K = M.

    With coprime residuals a in (K:M), b in (N:M), a + b = 1, the point
    z = a*x + b*y works: z - x = b(y - x) lies in N and z - y = a(x - y)
    lies in K.  When the residuals are not coprime the solution is searched
    for exhaustively.
    """
    N._same_parent(K)
    M = N.parent
    x, y = M.coerce(x), M.coerce(y)
    if not (N + K).is_whole:
        raise NotCoprime("N + K != M")
    g, s, t = xgcd(residual(K).generator, residual(N).generator)
    if g == 1:
        a = s * residual(K).generator
        b = t * residual(N).generator
        z = M.add(M.scale(a, x), M.scale(b, y))
        return CrtSolution(z, "residual")
    target = M.translate_mask(N.mask, x) & M.translate_mask(K.mask, y)
    if not target:
        raise NoSolution(f"(x+N) and (y+K) are disjoint for x={x}, y={y}")
    low = (target & -target).bit_length() - 1
    return CrtSolution(M.elements[low], "exhaustive")

"""Submodule predicates, exhaustive on finite modules.

Every predicate returns a :class:`Check`, which is truthy when the property
holds and otherwise carries a witness that refutes it.  The lattice backend
only gets certificate checkers, since Z^n has infinitely many submodules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .errors import NotARefutation, NotProper, RankMismatch
from .finmod import FiniteModule, Submodule, enumerate_submodules, format_element, residual
from .zarith import is_prime as _is_prime_int
from .zlattice import IntegerLattice, lat_contains, lat_intersect, quotient_invariants

__all__ = [
    "Check",
    "PredicateProfile",
    "RefutationCertificate",
    "is_maximal",
    "maximal_submodules",
    "is_prime",
    "is_strongly_irreducible",
    "check_strongly_irreducible_witness_lat",
    "lat_is_prime",
    "is_meet_irreducible",
    "is_multiplication",
    "is_mu_module",
    "has_finite_coprime_condition",
    "all_maximal_strongly_irreducible",
    "is_simple",
    "jacobson",
    "coprime",
    "profile",
]


@dataclass(frozen=True)
class Check:
    holds: bool
    witness: Any = None

    def __bool__(self):
        return self.holds


def coprime(N: Submodule, K: Submodule) -> bool:
    """N + K = M, via |N||K| = |M||N & K|."""
    M = N.parent
    return N.order * K.order == M.order * (N.mask & K.mask).bit_count()


def _subs(M: FiniteModule) -> list[Submodule]:
    return enumerate_submodules(M)


def is_maximal(N: Submodule, M: FiniteModule | None = None) -> bool:
    M = N.parent if M is None else M
    if N.is_whole:
        return False
    return not any(N < K and not K.is_whole for K in _subs(M))


def maximal_submodules(M: FiniteModule) -> list[Submodule]:
    # a subgroup of a finite abelian group is maximal iff its index is prime
    key = "maximal"
    if key not in M._cache:
        M._cache[key] = [N for N in _subs(M) if _is_prime_int(M.order // N.order)]
    return M._cache[key]


def is_simple(M: FiniteModule) -> bool:
    return len(_subs(M)) == 2


def is_prime(N: Submodule, M: FiniteModule | None = None) -> Check:
    """am in N implies a in (N:M) or m in N; witness (a, m) on failure."""
    M = N.parent if M is None else M
    if N.is_whole:
        raise NotProper("prime submodules are proper")
    res = residual(N, M)
    for a in range(M.exponent):
        if a in res:
            continue
        for m in M.elements:
            if M.scale(a, m) in N and m not in N:
                return Check(False, (a, m))
    return Check(True)


def is_strongly_irreducible(N: Submodule, M: FiniteModule | None = None) -> Check:
    """K & L <= N implies K <= N or L <= N; witness (K, L) on failure."""
    M = N.parent if M is None else M
    outside = [K for K in _subs(M) if K.mask & ~N.mask]
    n = N.mask
    for i, K in enumerate(outside):
        km = K.mask
        for L in outside[i + 1:]:
            if km & L.mask & ~n == 0:
                return Check(False, (K, L))
    return Check(True)


def is_meet_irreducible(M: FiniteModule) -> Check:
    return is_strongly_irreducible(M.zero(), M)


def is_multiplication(M: FiniteModule) -> Check:
    """N = (N:M)M for every N; witness N on failure."""
    for N in _subs(M):
        if M._scaled_mask(residual(N, M).generator) != N.mask:
            return Check(False, N)
    return Check(True)


def is_mu_module(M: FiniteModule) -> Check:
    """(N+K : M) = (N:M) + (K:M) for all N, K; witness (N, K) on failure."""
    subs = _subs(M)
    for i, N in enumerate(subs):
        rn = residual(N, M)
        for K in subs[i + 1:]:
            if residual(N + K, M) != rn + residual(K, M):
                return Check(False, (N, K))
    return Check(True)


def has_finite_coprime_condition(M: FiniteModule) -> Check:
    """Pairwise form: N+K1 = M = N+K2 implies N + (K1 & K2) = M.

    Witness (N, K1, K2) on failure.
    """
    subs = _subs(M)
    for N in subs:
        partners = [K for K in subs if coprime(N, K)]
        for i, K1 in enumerate(partners):
            for K2 in partners[i + 1:]:
                if not coprime(N, K1 & K2):
                    return Check(False, (N, K1, K2))
    return Check(True)


def all_maximal_strongly_irreducible(M: FiniteModule) -> Check:
    """Witness (P, K, L) for a maximal P that is not strongly irreducible."""
    for P in maximal_submodules(M):
        c = is_strongly_irreducible(P, M)
        if not c:
            return Check(False, (P,) + c.witness)
    return Check(True)


def jacobson(N: Submodule, M: FiniteModule | None = None) -> Submodule:
    """Intersection of the maximal submodules containing N (M if there are none)."""
    M = N.parent if M is None else M
    mask = M.full_mask
    for P in maximal_submodules(M):
        if N <= P:
            mask &= P.mask
    return Submodule(M, mask)


# ----------------------------------------------------------------- profile

@dataclass
class PredicateProfile:
    module: FiniteModule
    simple: bool
    meet_irreducible: Check
    multiplication: Check
    mu_module: Check
    finite_coprime_condition: Check
    all_maximal_strongly_irreducible: Check
    ann_prime: bool
    jacobson_radical: Submodule
    maximal_submodules: list[Submodule] = field(default_factory=list)

    @property
    def basis_fg_hypotheses(self) -> bool:
        return bool(self.meet_irreducible and self.all_maximal_strongly_irreducible)

    @property
    def basis_mult_hypotheses(self) -> bool:
        return bool(self.multiplication and self.meet_irreducible)

    @property
    def in_hypothesis(self) -> bool:
        return self.basis_fg_hypotheses or self.basis_mult_hypotheses

    def to_json(self) -> dict:
        """Flat JSON object; key names are stable."""

        def sub(N):
            return [format_element(x) for x in N.members]

        def wit(c: Check):
            if c.holds:
                return None
            w = c.witness if isinstance(c.witness, tuple) else (c.witness,)
            return [sub(x) if isinstance(x, Submodule) else x for x in w]

        return {
            "module": self.module.label,
            "order": self.module.order,
            "invariant_factors": list(self.module.invariant_factors),
            "simple": self.simple,
            "meet_irreducible": self.meet_irreducible.holds,
            "meet_irreducible_witness": wit(self.meet_irreducible),
            "multiplication": self.multiplication.holds,
            "multiplication_witness": wit(self.multiplication),
            "mu_module": self.mu_module.holds,
            "mu_module_witness": wit(self.mu_module),
            "finite_coprime_condition": self.finite_coprime_condition.holds,
            "finite_coprime_condition_witness": wit(self.finite_coprime_condition),
            "all_maximal_strongly_irreducible": self.all_maximal_strongly_irreducible.holds,
            "all_maximal_strongly_irreducible_witness": wit(self.all_maximal_strongly_irreducible),
            "ann_prime": self.ann_prime,
            "annihilator": self.module.exponent,
            "jacobson_radical": sub(self.jacobson_radical),
            "maximal_submodules": [sub(P) for P in self.maximal_submodules],
        }


def profile(M: FiniteModule) -> PredicateProfile:
    return PredicateProfile(
        module=M,
        simple=is_simple(M),
        meet_irreducible=is_meet_irreducible(M),
        multiplication=is_multiplication(M),
        mu_module=is_mu_module(M),
        finite_coprime_condition=has_finite_coprime_condition(M),
        all_maximal_strongly_irreducible=all_maximal_strongly_irreducible(M),
        ann_prime=M.annihilator.is_prime(),
        jacobson_radical=jacobson(M.zero(), M),
        maximal_submodules=list(maximal_submodules(M)),
    )


# ------------------------------------------------------- lattice certificates

@dataclass(frozen=True)
class RefutationCertificate:
    """K & L <= N while K, L are not inside N (explicit non-members given)."""

    N: IntegerLattice
    K: IntegerLattice
    L: IntegerLattice
    meet: IntegerLattice
    k_outside: tuple[int, ...]
    l_outside: tuple[int, ...]

    def recheck(self) -> bool:
        return (lat_contains(self.N, self.meet) and self.k_outside in self.K
                and self.k_outside not in self.N and self.l_outside in self.L
                and self.l_outside not in self.N)


def check_strongly_irreducible_witness_lat(N: IntegerLattice, K: IntegerLattice,
                                           L: IntegerLattice) -> RefutationCertificate:
    """Certify that (K, L) shows N is not strongly irreducible in Z^n."""
    if not N.ambient_rank == K.ambient_rank == L.ambient_rank:
        raise RankMismatch("lattices live in different Z^n")
    meet = lat_intersect(K, L)
    if not lat_contains(N, meet):
        raise NotARefutation("K & L is not contained in N", failed="meet")
    k_out = next((c for c in K.basis if c not in N), None)
    if k_out is None:
        raise NotARefutation("K is contained in N", failed="K")
    l_out = next((c for c in L.basis if c not in N), None)
    if l_out is None:
        raise NotARefutation("L is contained in N", failed="L")
    return RefutationCertificate(N, K, L, meet, k_out, l_out)


def lat_is_prime(N: IntegerLattice) -> bool:
    """Primeness of N in Z^n.

    Z^n/N must be nonzero and either torsion free, or killed by one prime p
    (an F_p vector space).  Mixed torsion/free quotients fail: a torsion
    element t with a t = 0 in N needs a in (N:M) = 0.
    """
    torsion, free = quotient_invariants(N)
    if not torsion and free == 0:
        return False
    if not torsion:
        return True
    return free == 0 and len(set(torsion)) == 1 and _is_prime_int(torsion[0])


"""Theorem-verification campaigns over finite abelian groups.

Each theorem is evaluated as an implication: hypotheses and conclusion are
computed separately, and an instance whose hypotheses fail is VACUOUS
rather than PASS.  FAIL verdicts carry a raw witness that
:func:`recheck_failure` re-validates from scratch.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Iterable, Sequence

from .errors import NotABasis, NotARefutation, ResourceCap, SizeCap
from .finmod import (
    FiniteModule,
    Submodule,
    crt_solve,
    default_max_order,
    enumerate_submodules,
    format_element,
    make_module,
    parse_module,
    quotient,
)
from .golomb import (
    FiniteTopology,
    addition_preimage,
    check_basis_axioms,
    closure,
    coprime_basis,
    generate_topology,
    indiscrete_points,
    is_topological_group,
    product_open_witness,
    separation,
    subspace,
)
from .modpred import (
    PredicateProfile,
    check_strongly_irreducible_witness_lat,
    coprime,
    jacobson,
    lat_is_prime,
    profile,
)
from .zarith import factorize
from .zlattice import (
    LatticeCoset,
    coset_intersect,
    is_coprime_coset_lat,
    lat_from_generators,
    lat_intersect,
    lat_residual,
    lat_sum,
)

__all__ = [
    "THEOREM_IDS",
    "TheoremCase",
    "CampaignReport",
    "isomorphism_classes",
    "evaluate_module",
    "run_campaign",
    "verify_worked_examples",
    "recheck_failure",
    "REFERENCE_Z8_PREIMAGE",
]

SCHEMA = "golombmod.campaign/1"

THEOREM_IDS = (
    "FINITE_COPRIME_EQUIV",
    "BASIS_FG",
    "BASIS_MULT",
    "INDISCRETE_IFF_SIMPLE",
    "INDISCRETE_POINTS_EQ_J",
    "NOT_T1",
    "CLOSURE_EQ_JACOBSON",
    "ZERO_CLOSURE_EQ_JM",
    "CRT_MU",
    "COSET_INTERSECT_MU",
    "TSEP_EQUIV",
)

# Campaign topologies are materialised with a cap well above the interactive
# default: G~(Z_64) alone has 2^16 + 1 open sets.
CAMPAIGN_MAX_OPENS = 1 << 18

PASS, FAIL, VACUOUS = "PASS", "FAIL", "VACUOUS"


@dataclass
class TheoremCase:
    id: str
    module: str
    hypotheses_held: bool
    verdict: str
    evidence: dict = field(default_factory=dict)
    witness: Any = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        return {"id": self.id, "module": self.module, "hypotheses_held": self.hypotheses_held,
                "verdict": self.verdict, "evidence": self.evidence}


@dataclass
class CampaignReport:
    family: str
    cases: list[TheoremCase]
    duration: float = 0.0

    @property
    def summary(self) -> dict[str, int]:
        counts = {PASS: 0, FAIL: 0, VACUOUS: 0}
        for c in self.cases:
            counts[c.verdict] += 1
        return counts

    @property
    def failures(self) -> list[TheoremCase]:
        return [c for c in self.cases if c.verdict == FAIL]

    @property
    def exit_code(self) -> int:
        return 2 if self.failures else 0

    def by_theorem(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for c in self.cases:
            out.setdefault(c.id, {PASS: 0, FAIL: 0, VACUOUS: 0})[c.verdict] += 1
        return out

    def to_json(self, timing: bool = False) -> dict:
        doc = {"schema": SCHEMA, "family": self.family, "summary": self.summary,
               "by_theorem": self.by_theorem(), "cases": [c.to_json() for c in self.cases]}
        if timing:
            doc["duration_seconds"] = round(self.duration, 3)
        return doc

    def dumps(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=True) + "\n"


# ------------------------------------------------------------ module family

def _partitions(n: int, largest: int | None = None):
    """Partitions of n into non-increasing parts, [n] first."""
    largest = n if largest is None else largest
    if n == 0:
        yield []
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield [k] + rest


def isomorphism_classes(max_order: int) -> list[FiniteModule]:
    """One module per abelian group of each order 2..max_order."""
    if max_order < 2:
        raise ValueError("max_order must be at least 2")
    out = []
    for n in range(2, max_order + 1):
        fac = sorted(factorize(n).items())
        for combo in product(*(list(_partitions(e)) for _, e in fac)):
            width = max(len(part) for part in combo)
            factors = [1] * width
            for (p, _), part in zip(fac, combo):
                for i, k in enumerate(sorted(part)):
                    factors[width - len(part) + i] *= p ** k
            out.append(make_module(factors))
    return out


# --------------------------------------------------------------- evaluation

def _pts(mask_points: Iterable) -> list[str]:
    return [format_element(p) for p in mask_points]


def _sub(N: Submodule) -> list[str]:
    return _pts(N.members)


class _Context:
    """Lazily computed profile and topologies for one module."""

    def __init__(self, M: FiniteModule, max_opens: int):
        self.M = M
        self.max_opens = max_opens
        self.prof: PredicateProfile = profile(M)
        self._basis = None
        self._full = None
        self._punct = None

    @property
    def basis(self):
        if self._basis is None:
            self._basis = coprime_basis(self.M)
        return self._basis

    @property
    def full(self) -> FiniteTopology:
        if self._full is None:
            self._full = generate_topology(self.basis, max_opens=self.max_opens)
        return self._full

    @property
    def punctured(self) -> FiniteTopology:
        if self._punct is None:
            self._punct = subspace(self.full, self.M.elements[1:])
        return self._punct


def _conclusion(tid: str, ctx: _Context) -> tuple[bool, dict, Any]:
    """Evaluate the conclusion of ``tid``: (holds, evidence, raw witness)."""
    M, prof = ctx.M, ctx.prof
    if tid == "FINITE_COPRIME_EQUIV":
        a, b = prof.finite_coprime_condition, prof.all_maximal_strongly_irreducible
        ev = {"finite_coprime_condition": a.holds, "all_maximal_strongly_irreducible": b.holds}
        if a.holds == b.holds:
            return True, ev, None
        return False, ev, ("fcc", a.witness) if not a.holds else ("msi", b.witness)

    if tid in ("BASIS_FG", "BASIS_MULT"):
        c = check_basis_axioms(ctx.basis)
        ev = {"basis_size": len(ctx.basis.cosets)}
        if c.holds:
            return True, ev, None
        w = c.witness
        ev["counterexample"] = format_element(w.point)
        return False, ev, w

    if tid == "INDISCRETE_IFF_SIMPLE":
        t_ind = len(indiscrete_points(ctx.full)) == M.order
        g_ind = len(indiscrete_points(ctx.punctured)) == M.order - 1
        ev = {"full_indiscrete": t_ind, "punctured_indiscrete": g_ind, "simple": prof.simple}
        ok = t_ind == g_ind == prof.simple
        return ok, ev, None if ok else ("iff", t_ind, g_ind, prof.simple)

    if tid == "INDISCRETE_POINTS_EQ_J":
        J = prof.jacobson_radical
        got_full = set(indiscrete_points(ctx.full))
        got_punct = set(indiscrete_points(ctx.punctured))
        want_full = set(J.members)
        want_punct = want_full - {M.elements[0]}
        ev = {"jacobson_radical": _sub(J), "indiscrete_full": _pts(sorted(got_full))}
        diff = sorted(got_full ^ want_full) + sorted(got_punct ^ want_punct)
        if not diff:
            return True, ev, None
        return False, ev, ("points", diff[0])

    if tid == "NOT_T1":
        rep = separation(ctx.full)
        zero = M.elements[0]
        bad = [m for m in M.elements[1:] if zero not in closure(ctx.full, [m])]
        ev = {"t1": rep.t1, "t1_witness": _pts(rep.witnesses["t1"] or ())}
        if not rep.t1 and not bad:
            return True, ev, None
        return False, ev, ("t1", bad[0] if bad else None)

    if tid == "CLOSURE_EQ_JACOBSON":
        T, G = ctx.full, ctx.punctured
        zero = M.elements[0]
        checked = 0
        for N in enumerate_submodules(M):
            J = set(jacobson(N, M).members)
            cl = set(closure(T, N.members))
            if cl != J:
                return False, {"part": "ii"}, ("ii", N, sorted(cl ^ J)[0])
            for m in M.elements:
                coset = [M.add(m, n) for n in N.members]
                if not J <= set(closure(T, coset)):
                    return False, {"part": "i"}, ("i", N, m)
                if m not in N:
                    if not J - {zero} <= set(closure(G, coset)):
                        return False, {"part": "iii"}, ("iii", N, m)
                checked += 1
        return True, {"submodule_coset_pairs": checked}, None

    if tid == "ZERO_CLOSURE_EQ_JM":
        cl = set(closure(ctx.full, [M.elements[0]]))
        J = set(prof.jacobson_radical.members)
        ev = {"closure_of_zero": _pts(sorted(cl))}
        if cl == J:
            return True, ev, None
        return False, ev, ("points", sorted(cl ^ J)[0])

    if tid == "CRT_MU":
        return _crt_conclusion(M)

    if tid == "COSET_INTERSECT_MU":
        subs = enumerate_submodules(M)
        pairs = 0
        for N in subs:
            n_cosets = _coset_masks(M, N)
            for K in subs:
                if not coprime(N, K):
                    continue
                for a in n_cosets:
                    for b in _coset_masks(M, K):
                        if not a & b:
                            return False, {}, ("disjoint", N, K, a, b)
                pairs += 1
        return True, {"coprime_pairs": pairs}, None

    if tid == "TSEP_EQUIV":
        T, G = ctx.full, ctx.punctured
        sT, sG = separation(T), separation(G)
        J_zero = prof.jacobson_radical.is_zero
        zero_closed = closure(T, [M.elements[0]]) == [M.elements[0]]
        vals = {"jacobson_semisimple": J_zero, "G_t2": sG.t2, "G_t1": sG.t1, "G_t0": sG.t0,
                "Gfull_t0": sT.t0, "zero_closed": zero_closed}
        ok = len(set(vals.values())) == 1
        return ok, vals, None if ok else ("tsep", vals)

    raise ValueError(f"unknown theorem id {tid!r}")


def _coset_masks(M: FiniteModule, N: Submodule) -> list[int]:
    out, seen = [], 0
    for i in range(M.order):
        if not seen >> i & 1:
            c = M.translate_mask(N.mask, M.elements[i])
            seen |= c
            out.append(c)
    return out


def _crt_conclusion(M: FiniteModule) -> tuple[bool, dict, Any]:
    subs = enumerate_submodules(M)
    pairs = solves = fallback = 0
    for N in subs:
        QN, pN = quotient(M, N)
        for K in subs:
            if not coprime(N, K):
                continue
            QK, pK = quotient(M, K)
            QI, _ = quotient(M, N & K)
            if QI.order != QK.order * QN.order:
                return False, {"part": "sizes"}, ("sizes", N, K)
            images = {(pK(z), pN(z)) for z in M.elements}
            if len(images) != QK.order * QN.order:
                return False, {"part": "surjective"}, ("surjective", N, K)
            for x in M.elements:
                for y in M.elements:
                    sol = crt_solve(x, y, N, K)
                    if M.add(sol.z, M.neg(x)) not in N or M.add(sol.z, M.neg(y)) not in K:
                        return False, {"part": "solve"}, ("solve", N, K, x, y, sol)
                    solves += 1
                    fallback += sol.path != "residual"
            pairs += 1
    return True, {"coprime_pairs": pairs, "solves": solves, "exhaustive_fallbacks": fallback}, None


def _hypotheses(tid: str, prof: PredicateProfile) -> bool:
    if tid == "FINITE_COPRIME_EQUIV":
        return True  # finite modules are finitely generated
    if tid == "BASIS_FG":
        return prof.basis_fg_hypotheses
    if tid == "BASIS_MULT":
        return prof.basis_mult_hypotheses
    if tid == "INDISCRETE_IFF_SIMPLE":
        return prof.in_hypothesis
    if tid in ("INDISCRETE_POINTS_EQ_J", "NOT_T1", "ZERO_CLOSURE_EQ_JM"):
        return prof.in_hypothesis and not prof.simple
    if tid == "CLOSURE_EQ_JACOBSON":
        return prof.in_hypothesis and not prof.simple and prof.mu_module.holds
    if tid in ("CRT_MU", "COSET_INTERSECT_MU"):
        return prof.mu_module.holds
    if tid == "TSEP_EQUIV":
        return prof.multiplication.holds and prof.ann_prime and not prof.simple
    raise ValueError(f"unknown theorem id {tid!r}")


def evaluate_module(M: FiniteModule, theorem_ids: Sequence[str] = THEOREM_IDS, converse: bool = False,
                    max_opens: int = CAMPAIGN_MAX_OPENS) -> list[TheoremCase]:
    """All requested theorem cases for one module."""
    ctx = _Context(M, max_opens)
    cases = []
    for tid in theorem_ids:
        hyp = _hypotheses(tid, ctx.prof)
        if not hyp:
            ev: dict = {}
            if converse:
                try:
                    ev["converse_conclusion"] = _conclusion(tid, ctx)[0]
                except (NotABasis, ResourceCap) as exc:
                    ev["converse_conclusion"] = f"not evaluated: {type(exc).__name__}"
            cases.append(TheoremCase(tid, M.label, False, VACUOUS, ev))
            continue
        holds, ev, wit = _conclusion(tid, ctx)
        cases.append(TheoremCase(tid, M.label, True, PASS if holds else FAIL, ev, wit))
    return cases


def _evaluate_job(args):
    factors, ids, converse, max_opens = args
    return evaluate_module(make_module(factors), ids, converse, max_opens)


def run_campaign(max_order: int, theorem_ids: Sequence[str] = THEOREM_IDS, jobs: int = 1,
                 converse: bool = False, max_opens: int = CAMPAIGN_MAX_OPENS) -> CampaignReport:
    """Evaluate the theorems on every abelian group of order 2..max_order."""
    bound = default_max_order()
    if max_order > bound:
        raise SizeCap(f"max_order {max_order} exceeds the enumeration bound {bound}")
    unknown = set(theorem_ids) - set(THEOREM_IDS)
    if unknown:
        raise ValueError(f"unknown theorem ids: {sorted(unknown)}")
    ids = [t for t in THEOREM_IDS if t in theorem_ids]
    start = time.perf_counter()
    modules = isomorphism_classes(max_order)
    jobs_args = [(M.invariant_factors, ids, converse, max_opens) for M in modules]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate_job, jobs_args))
    else:
        results = [_evaluate_job(a) for a in jobs_args]
    cases = [c for r in results for c in r]
    family = f"abelian groups of order 2..{max_order} ({len(modules)} classes)"
    return CampaignReport(family, cases, time.perf_counter() - start)


# ------------------------------------------------------------ re-validation

def recheck_failure(case: TheoremCase) -> bool:
    """Re-derive a FAIL witness independently of the code that produced it."""
    w = case.witness
    if case.id == "Z8_PREIMAGE_LISTING":
        M = make_module([8])
        listed = {(M.coerce(a), M.coerce(b)) for a, b in REFERENCE_Z8_PREIMAGE}
        a, b = w
        return (a, b) not in listed and (a[0] + b[0]) % 8 in (1, 5)
    if case.module.replace("x", "").isdigit():
        M = parse_module(case.module)
    else:
        return False
    if case.id == "FINITE_COPRIME_EQUIV":
        kind, wit = w
        if kind == "fcc":
            N, K1, K2 = wit
            return coprime(N, K1) and coprime(N, K2) and not coprime(N, K1 & K2)
        P, K, L = wit
        return (K & L) <= P and not K <= P and not L <= P
    if case.id in ("BASIS_FG", "BASIS_MULT"):
        p = w.point
        meet = set(w.coset1.points) & set(w.coset2.points)
        through = [c for c in coprime_basis(M).point_sets() if p in c]
        return p in meet and not any(c <= meet for c in through)
    if w and w[0] == "points":
        # brute force over opens, not neighbourhoods
        T = generate_topology(coprime_basis(M), max_opens=CAMPAIGN_MAX_OPENS)
        x = w[1]
        indiscrete = all(o == frozenset(T.ground) for o in T.open_sets() if x in o)
        J = jacobson(M.zero(), M)
        return indiscrete != (x in J)
    return False


# --------------------------------------------------------- worked examples

# Reference listing of the preimage of {1, 5} under addition on Z_8 (15 pairs).
REFERENCE_Z8_PREIMAGE = (
    (0, 1), (1, 0), (2, 7), (3, 6), (4, 5), (6, 3), (7, 2), (0, 5),
    (1, 4), (2, 3), (3, 2), (4, 1), (5, 0), (6, 7), (7, 6),
)

Z8_BASIS = [set(range(8)), {1, 3, 5, 7}, {1, 5}, {3, 7}]
Z8_FULL = [set(), set(range(8)), {1, 3, 5, 7}, {1, 5}, {3, 7}]
Z8_PUNCTURED = [set(), set(range(1, 8)), {1, 3, 5, 7}, {1, 5}, {3, 7}]


def _as_int_sets(family: Iterable[Iterable[tuple]]) -> list[frozenset]:
    return sorted((frozenset(p[0] for p in s) for s in family), key=sorted)


def _same_family(got, want) -> bool:
    return set(_as_int_sets(got)) == {frozenset(s) for s in want} and len(set(map(frozenset, got))) == len(want)


def _case(cid, label, ok, ev, witness=None) -> TheoremCase:
    return TheoremCase(cid, label, True, PASS if ok else FAIL, ev, witness)


def verify_worked_examples() -> CampaignReport:
    """The worked examples: three Z+Z refutations, Z_8 goldens and the addition map on Z_8."""
    start = time.perf_counter()
    Z2 = lambda *v: lat_from_generators(2, v)  # noqa: E731
    cases = []

    # prime but not strongly irreducible
    N, K, L = Z2((2, 0), (0, 2)), Z2((1, 0), (0, 2)), Z2((2, 0), (0, 1))
    try:
        cert = check_strongly_irreducible_witness_lat(N, K, L)
        ok = lat_is_prime(N) and cert.recheck() and lat_intersect(K, L) == N
        cases.append(_case("EX_PRIME_NOT_SI", "Z+Z", ok, {
            "prime": lat_is_prime(N), "meet": str(cert.meet),
            "k_outside": list(cert.k_outside), "l_outside": list(cert.l_outside)}))
    except NotARefutation as exc:
        cases.append(_case("EX_PRIME_NOT_SI", "Z+Z", False, {"error": str(exc)}))

    # coprime condition fails
    N, K, L = Z2((1, 1)), Z2((1, 0)), Z2((0, 1))
    full = Z2((1, 0), (0, 1))
    nk, nl = lat_sum(N, K), lat_sum(N, L)
    n_meet = lat_sum(N, lat_intersect(K, L))
    ok = nk == full and nl == full and n_meet == N and n_meet != full
    cases.append(_case("EX_COPRIME_FAILURE", "Z+Z", ok, {
        "N+K": str(nk), "N+L": str(nl), "N+(K&L)": str(n_meet)}))

    # coprime cosets that meet in a single point
    c1 = LatticeCoset((1, 1), Z2((1, 0)))
    c2 = LatticeCoset((1, 1), Z2((0, 1)))
    meet = coset_intersect(c1, c2)
    ok = (is_coprime_coset_lat(c1.rep, c1.lat) and is_coprime_coset_lat(c2.rep, c2.lat)
          and meet.kind == "singleton" and meet.points == ((1, 1),))
    cases.append(_case("EX_BASIS_FAILURE", "Z+Z", ok, {
        "intersection": meet.kind, "points": [list(p) for p in meet.points]}))

    # residuals are not additive on Z+Z
    N, K = Z2((0, 1)), Z2((1, 0))
    rN, rK, rNK = lat_residual(N), lat_residual(K), lat_residual(lat_sum(N, K))
    ok = rN.generator == rK.generator == 0 and rNK.generator == 1
    cases.append(_case("EX_RESIDUAL_NOT_ADDITIVE", "Z+Z", ok, {
        "(N:M)": rN.generator, "(K:M)": rK.generator, "(N+K:M)": rNK.generator}))

    # Z_8 basis, both topologies and the two closures
    M = make_module([8])
    B = coprime_basis(M)
    T = generate_topology(B)
    G = subspace(T, M.elements[1:])
    cl2 = {p[0] for p in closure(T, [(2,)])}
    cl0 = {p[0] for p in closure(T, [(0,)])}
    J = {p[0] for p in jacobson(M.zero(), M).members}
    ok = (_same_family(B.point_sets(), Z8_BASIS) and _same_family(T.open_sets(), Z8_FULL)
          and _same_family(G.open_sets(), Z8_PUNCTURED) and cl2 == {0, 2, 4, 6} and cl0 == J == {0, 2, 4, 6})
    cases.append(_case("Z8_GOLDENS", "8", ok, {
        "basis": [sorted(s) for s in _as_int_sets(B.point_sets())],
        "opens_full": [sorted(s) for s in _as_int_sets(T.open_sets())],
        "opens_punctured": [sorted(s) for s in _as_int_sets(G.open_sets())],
        "closure_2": sorted(cl2), "closure_0": sorted(cl0)}))

    # addition is not continuous: the preimage of {1,5} is not open
    pre = addition_preimage(M, [1, 5])
    bad = product_open_witness(T, pre)
    group = is_topological_group(M, T)
    ok = bad is not None and not group.holds
    cases.append(_case("Z8_ADDITION_NOT_CONTINUOUS", "8", ok, {
        "preimage_size": len(pre), "point_without_rectangle": _pts(bad or ())}))

    # the printed preimage against the computed one
    listed = {(M.coerce(a), M.coerce(b)) for a, b in REFERENCE_Z8_PREIMAGE}
    missing = sorted(pre - listed)
    extra = sorted(listed - pre)
    ok = not missing and not extra
    cases.append(_case("Z8_PREIMAGE_LISTING", "8", ok, {
        "listed": len(listed), "computed": len(pre),
        "missing_from_listing": [_pts(p) for p in missing],
        "listed_but_wrong": [_pts(p) for p in extra]},
        witness=(missing or extra or [None])[0]))

    return CampaignReport("worked examples", cases, time.perf_counter() - start)

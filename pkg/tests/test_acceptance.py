"""Acceptance suite: one test, and one printed PASS/FAIL line, per criterion."""

import itertools
import random
import time

import numpy as np

from golombmod.finmod import crt_solve, enumerate_submodules, make_module, quotient
from golombmod.golomb import (
    addition_preimage,
    closure,
    coprime_basis,
    generate_topology,
    golomb_topology,
    is_topological_group,
    product_open_witness,
    separation,
    subspace,
    t2_witness_integers,
)
from golombmod.modpred import (
    check_strongly_irreducible_witness_lat,
    coprime,
    is_meet_irreducible,
    jacobson,
    lat_is_prime,
)
from golombmod.verify import REFERENCE_Z8_PREIMAGE, isomorphism_classes, run_campaign
from golombmod.zlattice import (
    LatticeCoset,
    coset_intersect,
    is_coprime_coset_lat,
    lat_from_generators,
    lat_intersect,
    lat_sum,
)

from oracles import box_members, in_lattice, is_cyclic_prime_power, rank


def verdict(n, ok, detail, elapsed):
    print(f"\nAC{n} {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {detail}")
    return ok


def ints(family):
    return {frozenset(p[0] for p in s) for s in family}


Z8_BASIS = {frozenset(range(8)), frozenset({1, 3, 5, 7}), frozenset({1, 5}), frozenset({3, 7})}
Z8_FULL = Z8_BASIS | {frozenset()}
Z8_PUNCTURED = {frozenset(), frozenset(range(1, 8)), frozenset({1, 3, 5, 7}), frozenset({1, 5}), frozenset({3, 7})}


def test_ac1_z8_golden():
    t = time.perf_counter()
    M = make_module([8])
    B = coprime_basis(M)
    T = generate_topology(B)
    G = subspace(T, M.elements[1:])
    ok = (ints(B.point_sets()) == Z8_BASIS and len(B.cosets) == 4
          and ints(T.open_sets()) == Z8_FULL and len(T.opens) == 5
          and ints(G.open_sets()) == Z8_PUNCTURED and len(G.opens) == 5)
    dt = time.perf_counter() - t
    assert verdict(1, ok and dt < 1, "Z8 basis, full and punctured topologies", dt)


def test_ac2_z8_closure():
    t = time.perf_counter()
    M = make_module([8])
    T = golomb_topology(M)
    c2 = {p[0] for p in closure(T, [(2,)])}
    c0 = {p[0] for p in closure(T, [(0,)])}
    J = {p[0] for p in jacobson(M.zero(), M).members}
    ok = c2 == {0, 2, 4, 6} and c0 == J == {0, 2, 4, 6}
    dt = time.perf_counter() - t
    assert verdict(2, ok and dt < 1, f"closure(2)={sorted(c2)} closure(0)={sorted(c0)} J={sorted(J)}", dt)


def test_ac3_z8_not_topological_group():
    t = time.perf_counter()
    M = make_module([8])
    T = golomb_topology(M)
    pre = addition_preimage(M, [1, 5])
    listed = {(M.coerce(a), M.coerce(b)) for a, b in REFERENCE_Z8_PREIMAGE}
    not_open = product_open_witness(T, pre) is not None and not is_topological_group(M, T)
    missing = sorted((a[0], b[0]) for a, b in pre - listed)
    extra = sorted((a[0], b[0]) for a, b in listed - pre)
    dt = time.perf_counter() - t
    detail = (f"preimage has {len(pre)} pairs vs {len(listed)} listed; missing {missing}, "
              f"spurious {extra}; not open: {not_open}")
    ok = pre == listed and not_open and dt < 1
    assert verdict(3, ok, detail, dt), detail


def test_ac4_zxz_counterexamples():
    t = time.perf_counter()

    def L(*vs):
        return lat_from_generators(2, vs)

    N, K, Lt = L((2, 0), (0, 2)), L((1, 0), (0, 2)), L((2, 0), (0, 1))
    cert = check_strongly_irreducible_witness_lat(N, K, Lt)
    ex1 = lat_is_prime(N) and cert.recheck() and cert.k_outside == (1, 0)

    N, K1, K2 = L((1, 1)), L((1, 0)), L((0, 1))
    full = L((1, 0), (0, 1))
    ex2 = (lat_sum(N, K1) == full and lat_sum(N, K2) == full
           and lat_sum(N, lat_intersect(K1, K2)) == N != full)

    c1, c2 = LatticeCoset((1, 1), L((1, 0))), LatticeCoset((1, 1), L((0, 1)))
    meet = coset_intersect(c1, c2)
    ex4 = (is_coprime_coset_lat(c1.rep, c1.lat) and is_coprime_coset_lat(c2.rep, c2.lat)
           and meet.kind == "singleton" and meet.points == ((1, 1),))
    dt = time.perf_counter() - t
    assert verdict(4, ex1 and ex2 and ex4 and dt < 1, f"ex1={ex1} ex2={ex2} ex4={ex4}", dt)


def test_ac5_campaign_order_64():
    t = time.perf_counter()
    report = run_campaign(64)
    dt = time.perf_counter() - t
    by = report.by_theorem()
    fails = {tid: c["FAIL"] for tid, c in by.items() if c["FAIL"]}
    tsep_vacuous = by["TSEP_EQUIV"]["VACUOUS"] == len(isomorphism_classes(64))
    ok = not fails and tsep_vacuous and dt < 300
    s = report.summary
    detail = (f"{len(isomorphism_classes(64))} classes: PASS {s['PASS']} FAIL {s['FAIL']} "
              f"VACUOUS {s['VACUOUS']}; TSEP all vacuous: {tsep_vacuous}")
    assert verdict(5, ok, detail, dt), fails


def test_ac6_t2_witnesses_on_z():
    t = time.perf_counter()
    vals = [v for v in range(-50, 51) if v]
    bad = []
    count = 0
    for m, n in itertools.permutations(vals, 2):
        c1, c2 = t2_witness_integers(m, n)
        if not (coset_intersect(c1, c2).disjoint and (m,) in c1 and (n,) in c2):
            bad.append((m, n))
        count += 1
    dt = time.perf_counter() - t
    assert verdict(6, not bad and dt < 5, f"{count} ordered pairs, {len(bad)} bad", dt), bad[:5]


def _random_coset(rng, n):
    if n == 1:
        gens = [(rng.randint(-12, 12),) for _ in range(rng.randint(0, 2))]
        rep = (rng.randint(-6, 6),)
    else:
        gens = [(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(rng.choice([0, 1, 1, 2, 2, 2, 3]))]
        rep = (rng.randint(-4, 4), rng.randint(-4, 4))
    return rep, gens


def _unimodular_rewrite(rng, cols):
    cols = [list(c) for c in cols]
    for _ in range(rng.randint(1, 8)):
        i, j = rng.randrange(len(cols)), rng.randrange(len(cols))
        op = rng.random()
        if op < 0.6 and i != j:
            q = rng.randint(-3, 3)
            cols[i] = [a + q * b for a, b in zip(cols[i], cols[j])]
        elif op < 0.8:
            cols[i], cols[j] = cols[j], cols[i]
        else:
            cols[i] = [-a for a in cols[i]]
    if rng.random() < 0.5:
        cols.append([sum(rng.randint(-2, 2) * c[k] for c in cols) for k in range(len(cols[0]))])
    return [tuple(c) for c in cols]


def test_ac7_oracle_equivalences():
    t = time.perf_counter()
    rng = random.Random(20240607)

    # (a) coset intersection against a brute-force box scan; the parameter
    # ranges keep every nonempty intersection inside the box
    radius = 80
    a_bad = []
    for trial in range(1000):
        n = 1 if trial % 4 == 0 else 2
        (r1, g1), (r2, g2) = _random_coset(rng, n), _random_coset(rng, n)
        res = coset_intersect(LatticeCoset(r1, lat_from_generators(n, g1)),
                              LatticeCoset(r2, lat_from_generators(n, g2)))
        pts, m1 = box_members(r1, g1, n, radius)
        _, m2 = box_members(r2, g2, n, radius)
        hits = pts[m1 & m2]
        if res.disjoint:
            agree = len(hits) == 0
        else:
            w = res.witness
            agree = (len(hits) > 0
                     and in_lattice([a - b for a, b in zip(w, r1)], g1, n)
                     and in_lattice([a - b for a, b in zip(w, r2)], g2, n))
            # rank(L1 & L2) = rank L1 + rank L2 - rank(L1 + L2)
            meet_rank = rank(g1, n) + rank(g2, n) - rank(g1 + g2, n)
            if res.kind == "singleton":
                agree = agree and meet_rank == 0 and len(hits) == 1 and tuple(hits[0]) == w
            else:
                agree = agree and meet_rank > 0
        if not agree:
            a_bad.append((r1, g1, r2, g2, res.kind))

    # (b) meet-irreducible exactly on cyclic prime powers
    b_bad = [M.label for M in isomorphism_classes(64)
             if bool(is_meet_irreducible(M)) != is_cyclic_prime_power(M.invariant_factors)]

    # (c) HNF equality against mutual membership under unimodular rewrites
    c_bad = []
    for trial in range(600):
        n = rng.choice([2, 3])
        cols = [tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(rng.randint(1, n + 1))]
        other = _unimodular_rewrite(rng, cols)
        if trial % 3 == 2:
            k = rng.randrange(len(other))
            other[k] = tuple(x + (i == 0) for i, x in enumerate(other[k]))
        hnf_equal = lat_from_generators(n, cols) == lat_from_generators(n, other)
        mutual = all(in_lattice(c, other, n) for c in cols) and all(in_lattice(c, cols, n) for c in other)
        if hnf_equal != mutual:
            c_bad.append((cols, other))
    dt = time.perf_counter() - t
    detail = f"(a) {len(a_bad)}/1000 (b) {len(b_bad)}/116 (c) {len(c_bad)}/600 disagreements"
    assert verdict(7, not (a_bad or b_bad or c_bad), detail, dt), (a_bad[:3], b_bad, c_bad[:3])


def test_ac8_property_suite():
    t = time.perf_counter()
    violations = []
    for M in isomorphism_classes(32):
        subs = enumerate_submodules(M)
        J = {N.mask: jacobson(N, M) for N in subs}
        quotients = {N.mask: quotient(M, N) for N in subs}
        for N in subs:
            Q, proj = quotients[N.mask]
            kernel = {x for x in M.elements if not any(proj(x))}
            if kernel != set(N.members) or len({proj(x) for x in M.elements}) != Q.order:
                violations.append(("quotient", M.label, N.mask))
            if Q.order * N.order != M.order:
                violations.append(("quotient order", M.label, N.mask))
        for N, K in itertools.product(subs, repeat=2):
            S, I = N + K, N & K
            if N.order * K.order != S.order * I.order:
                violations.append(("product formula", M.label, N.mask, K.mask))
            if N <= K and not J[N.mask] <= J[K.mask]:
                violations.append(("jacobson monotone", M.label, N.mask, K.mask))
            if coprime(N, K):
                _, pK = quotients[K.mask]
                _, pN = quotients[N.mask]
                fibres = {}
                for z in M.elements:
                    key = (pK(z), pN(z))
                    fibres[key] = fibres.get(key, 0) + 1
                QK, QN = quotients[K.mask][0], quotients[N.mask][0]
                if len(fibres) != QK.order * QN.order or set(fibres.values()) != {I.order}:
                    violations.append(("crt bijection", M.label, N.mask, K.mask))
        basis = coprime_basis(M)
        try:
            T = generate_topology(basis, max_opens=1 << 18)
        except Exception:
            continue
        for space in (T, subspace(T, M.elements[1:])):
            r = separation(space)
            if (r.t2 and not r.t1) or (r.t1 and not r.t0):
                violations.append(("separation chain", M.label))
    # the CRT solver itself on the same family (one coprime pair sample per module)
    for M in isomorphism_classes(32):
        subs = enumerate_submodules(M)
        pair = next(((N, K) for N in subs for K in subs
                     if coprime(N, K) and not N.is_whole and not K.is_whole), None)
        if pair:
            N, K = pair
            for x, y in itertools.product(M.elements[:8], repeat=2):
                z = crt_solve(x, y, N, K).z
                if M.add(z, M.neg(x)) not in N or M.add(z, M.neg(y)) not in K:
                    violations.append(("crt solve", M.label))
    dt = time.perf_counter() - t
    assert verdict(8, not violations, f"{len(violations)} violations over order <= 32", dt), violations[:5]


def test_box_oracle_sanity():
    # guards the oracle used in AC7(a)
    pts, mask = box_members((0, 0), [(2, 0), (0, 2)], 2, 3)
    assert {tuple(p) for p in pts[mask]} == {(x, y) for x in (-2, 0, 2) for y in (-2, 0, 2)}
    pts, mask = box_members((1, 1), [(1, 1)], 2, 2)
    assert {tuple(p) for p in pts[mask]} == {(k, k) for k in range(-2, 3)}
    assert np.count_nonzero(box_members((1,), [(3,)], 1, 4)[1]) == 3

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from golombmod.errors import EmptyFactorList, NonDividingChain, NotCoprime, ParseError, SizeCap
from golombmod.finmod import (
    Coset,
    FiniteModule,
    crt_solve,
    cyclic,
    enumerate_submodules,
    format_element,
    intersect,
    make_module,
    parse_element,
    parse_module,
    quotient,
    residual,
    sum_submodules,
)

from oracles import closed_subsets, gaussian_binomial

Z8 = make_module([8])
Z2x2 = make_module([2, 2])


def members(N):
    return {x[0] for x in N.members} if N.parent.rank == 1 else set(N.members)


def test_make_module():
    assert (Z8.order, Z8.exponent) == (8, 8)
    assert make_module([2, 4]).order == 8
    assert len(enumerate_submodules(make_module([2]))) == 2
    with pytest.raises(EmptyFactorList):
        make_module([])
    with pytest.raises(NonDividingChain):
        make_module([4, 2])
    with pytest.raises(NonDividingChain):
        make_module([1, 3])


def test_parse_module_normalises():
    assert parse_module("4x2").invariant_factors == (2, 4)
    assert parse_module("2x3").invariant_factors == (6,)
    assert parse_module("1x8").invariant_factors == (8,)
    for bad in ("", "x2", "2x", "8a", "0"):
        with pytest.raises((ParseError, EmptyFactorList)):
            parse_module(bad)
    with pytest.raises(EmptyFactorList):
        parse_module("1")


def test_element_io():
    M = make_module([2, 4])
    assert format_element((1, 3)) == "(1,3)"
    assert parse_element("(1, 7)", M) == (1, 3)
    assert parse_element("(5)") == (5,)
    with pytest.raises(ParseError):
        parse_element("(a,b)")


def test_submodules_of_z8():
    subs = enumerate_submodules(Z8)
    assert [members(N) for N in subs] == [{0}, {0, 4}, {0, 2, 4, 6}, set(range(8))]


@pytest.mark.parametrize("factors", [[2], [2, 2], [4], [2, 4], [2, 2, 2], [6], [3, 3], [2, 6], [12]])
def test_submodules_match_brute_force(factors):
    M = make_module(factors)
    got = {frozenset(N.members) for N in enumerate_submodules(M)}
    assert got == set(closed_subsets(factors))


@pytest.mark.parametrize("p,n", [(2, 4), (2, 5), (3, 3), (5, 2), (2, 6)])
def test_elementary_abelian_counts(p, n):
    # subgroups of (Z_p)^n are subspaces: sum of Gaussian binomials
    M = make_module([p] * n)
    assert len(enumerate_submodules(M)) == sum(gaussian_binomial(n, k, p) for k in range(n + 1))


def test_frozen_subgroup_counts():
    # counts fixed by the brute-force closure oracle (tests/oracles.py) run once
    assert len(enumerate_submodules(make_module([4, 4]))) == 15
    assert len(enumerate_submodules(make_module([2, 8]))) == 11
    assert len(enumerate_submodules(make_module([2, 2, 4]))) == 27


def test_enumeration_caps(monkeypatch):
    with pytest.raises(SizeCap):
        enumerate_submodules(make_module([16]), max_order=8)
    with pytest.raises(SizeCap):
        enumerate_submodules(make_module([2] * 5), max_count=10)
    monkeypatch.setenv("GOLOMBMOD_MAX_ORDER", "4")
    with pytest.raises(SizeCap):
        enumerate_submodules(make_module([3, 3]))


def test_sum_and_intersect():
    s4, s2 = Z8.submodule([0, 4]), Z8.submodule([0, 2, 4, 6])
    assert members(s4 + s2) == {0, 2, 4, 6}
    assert (s4 + cyclic(Z8, 1)).is_whole
    a, b = cyclic(Z2x2, (1, 0)), cyclic(Z2x2, (0, 1))
    assert sum_submodules(a, b).is_whole
    assert members(intersect(s2, s4)) == {0, 4}
    assert intersect(a, b).is_zero
    assert intersect(s2, s2) == s2


def test_cyclic():
    assert members(cyclic(Z8, 2)) == {0, 2, 4, 6}
    assert members(cyclic(Z8, 0)) == {0}
    M = make_module([2, 4])
    assert members(cyclic(M, (1, 1))) == {(0, 0), (1, 1), (0, 2), (1, 3)}


def test_submodule_rejects_non_subgroup():
    with pytest.raises(ValueError):
        Z8.submodule([0, 3])


def test_residual():
    assert residual(Z8.submodule([0, 2, 4, 6]), Z8).generator == 2
    assert residual(Z8.zero(), Z8).generator == 8 == Z8.annihilator.generator
    assert residual(Z8.whole(), Z8).generator == 1


def test_residual_matches_definition():
    for factors in ([2, 4], [12], [2, 2, 2], [3, 9]):
        M = make_module(factors)
        for N in enumerate_submodules(M):
            r = residual(N).generator
            assert M.exponent % r == 0
            kills = [e for e in range(1, M.exponent + 1)
                     if all(M.scale(e, x) in N for x in M.elements)]
            assert r == kills[0]


def test_quotient_examples():
    Q, proj = quotient(Z8, Z8.submodule([0, 4]))
    assert Q.invariant_factors == (4,)
    assert {x for x in Z8.elements if not any(proj(x))} == {(0,), (4,)}
    Q, _ = quotient(Z8, Z8.whole())
    assert Q.is_trivial and Q.order == 1
    Q, _ = quotient(Z2x2, cyclic(Z2x2, (1, 0)))
    assert Q.invariant_factors == (2,)


def test_coset_canonical_rep():
    N = Z8.submodule([0, 4])
    c = Coset.of(5, N)
    assert c.rep == (1,) and {p[0] for p in c.points} == {1, 5}
    assert Coset.of(1, N) == c and 5 in c


def test_crt_examples():
    N = Z8.submodule([0, 2, 4, 6])
    sol = crt_solve(1, 3, N, Z8.whole())
    assert sol.z[0] % 2 == 1
    Z6 = make_module([6])
    sol = crt_solve(1, 2, cyclic(Z6, 2), cyclic(Z6, 3))
    assert sol.z == (5,) and sol.path == "residual"
    N, K = cyclic(Z2x2, (1, 0)), cyclic(Z2x2, (0, 1))
    sol = crt_solve((0, 0), (1, 1), N, K)
    assert sol.z == (1, 0)
    with pytest.raises(NotCoprime):
        crt_solve(0, 1, Z8.submodule([0, 4]), Z8.submodule([0, 2, 4, 6]))


def test_crt_solution_congruences_everywhere():
    for factors in ([12], [2, 6], [2, 2], [3, 3]):
        M = make_module(factors)
        subs = enumerate_submodules(M)
        for N, K in itertools.product(subs, repeat=2):
            if not (N + K).is_whole:
                continue
            for x, y in itertools.product(M.elements, repeat=2):
                z = crt_solve(x, y, N, K).z
                assert M.add(z, M.neg(x)) in N and M.add(z, M.neg(y)) in K


def test_trivial_marker():
    T = FiniteModule.trivial()
    assert T.order == 1 and T.label == "1" and str(T) == "0"


factor_chains = st.sampled_from([[2], [3], [4], [6], [8], [9], [2, 2], [2, 4], [2, 6], [3, 3], [12], [2, 2, 2]])


@settings(max_examples=40, deadline=None)
@given(factor_chains, st.data())
def test_submodule_lattice_laws(factors, data):
    M = make_module(factors)
    subs = enumerate_submodules(M)
    N = data.draw(st.sampled_from(subs))
    K = data.draw(st.sampled_from(subs))
    S, I = N + K, N & K
    assert N <= S and K <= S and I <= N and I <= K
    assert S.order * I.order == N.order * K.order
    assert residual(S) == residual(S, M)
    assert set(S.members) == {M.add(a, b) for a in N.members for b in K.members}

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from golombmod.errors import NotABasis, OpenSetCap
from golombmod.finmod import make_module
from golombmod.golomb import (
    FiniteTopology,
    addition_preimage,
    check_basis_axioms,
    closure,
    coprime_basis,
    generate_topology,
    golomb_topology,
    indiscrete_points,
    is_topological_group,
    product_open_witness,
    separating_opens,
    separation,
    subspace,
    t2_witness_integers,
)
from golombmod.modpred import jacobson
from golombmod.zlattice import coset_intersect

from oracles import closure_by_definition, unions_of

Z8 = make_module([8])
V4 = make_module([2, 2])


def ints(points):
    return {p[0] for p in points}


def int_family(sets):
    return {frozenset(ints(s)) for s in sets}


def test_coprime_basis_z8():
    B = coprime_basis(Z8)
    assert [ints(s) for s in B.point_sets()] == [set(range(8)), {1, 3, 5, 7}, {1, 5}, {3, 7}]
    assert check_basis_axioms(B)


def test_coprime_basis_small():
    assert [set(s) for s in coprime_basis(make_module([2])).point_sets()] == [{(0,), (1,)}]
    sets = coprime_basis(V4).point_sets()
    assert frozenset({(1, 1), (0, 1)}) in sets
    assert len(sets) == len(set(sets))


def test_basis_counterexample_v4():
    c = check_basis_axioms(coprime_basis(V4))
    assert not c
    w = c.witness
    assert w.point == (1, 1)
    assert set(w.coset1.points) == {(1, 0), (1, 1)} and set(w.coset2.points) == {(0, 1), (1, 1)}
    with pytest.raises(NotABasis) as e:
        generate_topology(coprime_basis(V4))
    assert e.value.counterexample.point == (1, 1)


def test_topologies_z8():
    T = generate_topology(coprime_basis(Z8))
    assert int_family(T.open_sets()) == {frozenset(), frozenset(range(8)), frozenset({1, 3, 5, 7}),
                                         frozenset({1, 5}), frozenset({3, 7})}
    G = golomb_topology(Z8, punctured=True)
    assert int_family(G.open_sets()) == {frozenset(), frozenset(range(1, 8)), frozenset({1, 3, 5, 7}),
                                         frozenset({1, 5}), frozenset({3, 7})}
    assert T.check_axioms() and G.check_axioms()


def test_small_topologies():
    assert int_family(golomb_topology(make_module([2])).open_sets()) == {frozenset(), frozenset({0, 1})}
    assert int_family(golomb_topology(make_module([4])).open_sets()) == {frozenset(), frozenset(range(4)),
                                                                         frozenset({1, 3})}


@pytest.mark.parametrize("n", [2, 3, 4, 8, 9, 16, 25, 27])
def test_topology_matches_union_oracle(n):
    M = make_module([n])
    B = coprime_basis(M)
    T = generate_topology(B)
    want = unions_of(B.point_sets(), M.elements)
    assert set(T.open_sets()) == want
    for x in M.elements:
        assert set(closure(T, [x])) == closure_by_definition(want, M.elements, [x])


def test_open_cap():
    with pytest.raises(OpenSetCap):
        generate_topology(coprime_basis(make_module([64])), max_opens=1000)
    T = generate_topology(coprime_basis(make_module([64])), max_opens=1 << 17)
    assert len(T.opens) == 2 ** 16 + 1


def test_subspace():
    T = golomb_topology(Z8)
    assert set(subspace(T, Z8.elements).open_sets()) == set(T.open_sets())
    assert subspace(T, []).open_sets() == [frozenset()]
    odd = subspace(T, [(1,), (3,), (5,), (7,)])
    assert int_family(odd.open_sets()) == {frozenset(), frozenset({1, 3, 5, 7}), frozenset({1, 5}),
                                           frozenset({3, 7})}


def test_closures_z8():
    T = golomb_topology(Z8)
    assert ints(closure(T, [(2,)])) == {0, 2, 4, 6}
    assert ints(closure(T, [(0,)])) == {0, 2, 4, 6} == ints(jacobson(Z8.zero()).members)
    assert closure(T, Z8.elements) == list(Z8.elements)


def test_indiscrete_points():
    assert ints(indiscrete_points(golomb_topology(Z8))) == {0, 2, 4, 6}
    assert ints(indiscrete_points(golomb_topology(Z8, punctured=True))) == {2, 4, 6}
    T = FiniteTopology(("a", "b", "c"), (7, 0))
    assert indiscrete_points(T) == ["a", "b", "c"]


def test_separation():
    r = separation(golomb_topology(Z8))
    assert (r.t0, r.t1, r.t2) == (False, False, False)
    assert set(r.witnesses["t0"]) <= {(0,), (2,), (4,), (6,)}
    discrete = FiniteTopology((0, 1, 2), tuple(range(8)))
    assert separation(discrete).t2
    indiscrete = FiniteTopology((0, 1), (3, 0))
    r = separation(indiscrete)
    assert not (r.t0 or r.t1 or r.t2)
    G = golomb_topology(Z8, punctured=True)
    assert separating_opens(G, (1,), (3,)) is not None
    assert separating_opens(G, (2,), (4,)) is None


def test_addition_not_continuous_z8():
    T = golomb_topology(Z8)
    pre = addition_preimage(Z8, [1, 5])
    assert len(pre) == 16  # 8 choices of a, two targets each
    assert product_open_witness(T, pre) is not None
    c = is_topological_group(Z8, T)
    assert not c and c.witness[0] == "add"


def test_topological_group_trivial_cases():
    Z2 = make_module([2])
    assert is_topological_group(Z2, golomb_topology(Z2))
    M = make_module([3])
    indiscrete = FiniteTopology(M.elements, (7, 0))
    assert is_topological_group(M, indiscrete)


def test_to_json_and_dot():
    T = golomb_topology(Z8)
    doc = T.to_json()
    assert doc["ground"][0] == "(0)" and [] in doc["opens"]
    dot = T.to_dot()
    assert dot.startswith("digraph") and "fillcolor" in dot


def test_t2_witnesses():
    for (m, n), p in {(1, 2): 3, (2, 4): 3, (3, 6): 5}.items():
        c1, c2 = t2_witness_integers(m, n)
        assert c1.lat.basis == ((p,),) and c1.rep == (m,) and c2.rep == (n,)
        assert coset_intersect(c1, c2).disjoint
    with pytest.raises(ValueError):
        t2_witness_integers(0, 3)
    with pytest.raises(ValueError):
        t2_witness_integers(3, 3)


@st.composite
def finite_topologies(draw):
    n = draw(st.integers(1, 5))
    full = (1 << n) - 1
    gens = draw(st.lists(st.integers(0, full), max_size=6))
    opens = {0, full}
    for g in gens:
        opens |= {o | g for o in opens}
        opens |= {o & g for o in opens}
    # close under both operations
    changed = True
    while changed:
        new = {a | b for a in opens for b in opens} | {a & b for a in opens for b in opens}
        changed = not new <= opens
        opens |= new
    return FiniteTopology(tuple(range(n)), tuple(sorted(opens)))


@settings(max_examples=150, deadline=None)
@given(finite_topologies())
def test_separation_chain_and_closure(T):
    r = separation(T)
    assert (not r.t2 or r.t1) and (not r.t1 or r.t0)
    opens = set(T.open_sets())
    for k in range(len(T.ground) + 1):
        for S in itertools.combinations(T.ground, k):
            assert set(closure(T, S)) == closure_by_definition(opens, T.ground, S)

"""
The coprime-coset topology on Z_8
=================================

Builds the basis of coprime cosets for Z_8, expands it into a topology and
looks at closures, indiscrete points and the failure of continuity of
addition.
"""

from golombmod import closure, coprime_basis, generate_topology, indiscrete_points, make_module
from golombmod.golomb import addition_preimage, product_open_witness, subspace

M = make_module([8])

# coprime cosets m + N with N nonzero and N + Zm = M
B = coprime_basis(M)
for c in B.cosets:
    print(c, sorted(p[0] for p in c.points))

# every union of basis sets is open; on M - {0} we get the subspace
T = generate_topology(B)
G = subspace(T, M.elements[1:])
print("full:", [sorted(p[0] for p in o) for o in T.open_sets()])
print("punctured:", [sorted(p[0] for p in o) for o in G.open_sets()])

# even residues cannot be told apart from 0
print("closure of {2}:", [p[0] for p in closure(T, [(2,)])])
print("indiscrete points:", [p[0] for p in indiscrete_points(T)])

# a + b in {1, 5} has 16 solutions; the set is not open in T x T
pre = addition_preimage(M, [1, 5])
print(len(pre), "pairs; no open rectangle around", product_open_witness(T, pre))

# specialization preorder, ready for graphviz
print(T.to_dot("z8"))

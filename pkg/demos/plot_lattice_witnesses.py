"""
Counterexamples in Z + Z
========================

Submodules of Z^2 are lattices kept in Hermite normal form.  Three small
certificates show what breaks outside the finite cyclic world.
"""

from golombmod.modpred import check_strongly_irreducible_witness_lat, lat_is_prime
from golombmod.zlattice import coset_intersect, lat_intersect, lat_sum, parse_lattice, parse_lattice_coset

# 2Z + 2Z is prime, but K & L sits inside it while neither K nor L does
N = parse_lattice("[(2,0),(0,2)]")
K = parse_lattice("[(1,0),(0,2)]")
L = parse_lattice("[(2,0),(0,1)]")
cert = check_strongly_irreducible_witness_lat(N, K, L)
print("prime:", lat_is_prime(N), "meet:", cert.meet, "outside:", cert.k_outside, cert.l_outside)

# N is coprime to both axes, but not to their intersection
N = parse_lattice("[(1,1)]")
x, y = parse_lattice("[(1,0)]"), parse_lattice("[(0,1)]")
print(lat_sum(N, x), lat_sum(N, y), lat_sum(N, lat_intersect(x, y)))

# two coprime cosets through (1,1) meet in a single point
c1 = parse_lattice_coset("(1,1)+[(1,0)]")
c2 = parse_lattice_coset("(1,1)+[(0,1)]")
print(coset_intersect(c1, c2))

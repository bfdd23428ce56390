"""
Separating integers with arithmetic progressions
================================================

For distinct nonzero m, n the least prime p dividing none of m, n, m - n
gives disjoint coprime cosets m + pZ and n + pZ.
"""

import numpy as np

from golombmod import t2_witness_integers

vals = [v for v in range(-20, 21) if v]
moduli = np.zeros((len(vals), len(vals)), dtype=int)
for i, m in enumerate(vals):
    for j, n in enumerate(vals):
        if m != n:
            moduli[i, j] = t2_witness_integers(m, n)[0].lat.basis[0][0]

# which primes are needed, and how often
primes, counts = np.unique(moduli[moduli > 0], return_counts=True)
for p, c in zip(primes, counts):
    print(f"p = {p:2d}: {c} pairs")

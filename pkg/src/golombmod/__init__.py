"""Coprime-coset (Golomb-style) topologies on Z-modules.

Finite abelian groups are handled exhaustively (``finmod``, ``modpred``,
``golomb``); submodules of Z^n are integer lattices in Hermite normal form
(``zlattice``).  ``verify`` runs theorem campaigns over every abelian group
up to a given order.
"""

__version__ = "0.1.0"

from .errors import (
    GolombError,
    NoSolution,
    NotABasis,
    NotARefutation,
    NotCoprime,
    OpenSetCap,
    ParseError,
    ResourceCap,
    SizeCap,
)
from .finmod import (
    Coset,
    FiniteModule,
    Submodule,
    crt_solve,
    cyclic,
    enumerate_submodules,
    intersect,
    make_module,
    parse_module,
    quotient,
    residual,
    sum_submodules,
)
from .golomb import (
    CoprimeBasis,
    FiniteTopology,
    check_basis_axioms,
    closure,
    coprime_basis,
    generate_topology,
    golomb_topology,
    indiscrete_points,
    is_topological_group,
    separation,
    t2_witness_integers,
)
from .modpred import (
    is_meet_irreducible,
    is_mu_module,
    is_multiplication,
    is_prime,
    is_strongly_irreducible,
    jacobson,
    profile,
)
from .verify import isomorphism_classes, run_campaign, verify_worked_examples
from .zarith import IdealOfZ, IntMatrix, hnf, snf
from .zlattice import IntegerLattice, LatticeCoset, coset_intersect, lat_from_generators

__all__ = [
    "GolombError",
    "NoSolution",
    "NotABasis",
    "NotARefutation",
    "NotCoprime",
    "OpenSetCap",
    "ParseError",
    "ResourceCap",
    "SizeCap",
    "Coset",
    "FiniteModule",
    "Submodule",
    "crt_solve",
    "cyclic",
    "enumerate_submodules",
    "intersect",
    "make_module",
    "parse_module",
    "quotient",
    "residual",
    "sum_submodules",
    "CoprimeBasis",
    "FiniteTopology",
    "check_basis_axioms",
    "closure",
    "coprime_basis",
    "generate_topology",
    "golomb_topology",
    "indiscrete_points",
    "is_topological_group",
    "separation",
    "t2_witness_integers",
    "is_meet_irreducible",
    "is_mu_module",
    "is_multiplication",
    "is_prime",
    "is_strongly_irreducible",
    "jacobson",
    "profile",
    "isomorphism_classes",
    "run_campaign",
    "verify_worked_examples",
    "IdealOfZ",
    "IntMatrix",
    "hnf",
    "snf",
    "IntegerLattice",
    "LatticeCoset",
    "coset_intersect",
    "lat_from_generators",
]

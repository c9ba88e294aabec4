"""Exact verification of isogeny degrees in the dihedral tower of covers
of a hyperelliptic curve.

The engine rebuilds each cover from combinatorial monodromy data,
computes the integral homology of the total space with its dihedral deck
action, realizes the relevant abelian subvarieties as saturated lattices,
and compares every genus and isogeny degree against its closed form as
an exact integer.
"""

from .dihedral import (
    DihedralElement,
    MonodromyDatum,
    PermutationAction,
    SubgroupSpec,
    branch_parity_counts,
    coset_action,
    deck_fixed_point_count,
    dn_class,
    dn_mul,
    fixed_point_count,
    is_valid,
    quotient_genus,
    sample_datum,
    validate_datum,
)
from .formulas import (
    addition_map_degree,
    degree_closed_form,
    genus_closed_forms,
    prym_dimension,
    two_adic_split,
)
from .homology import EquivariantLattice, deck_matrix, homology_lattice
from .lattice import (
    Sublattice,
    fixed_two_torsion_count,
    hnf,
    intersect,
    kernel_lattice,
    lattice_index,
    lattice_sum,
    apply_matrix,
    saturate,
    snf,
    sublattice,
)
from .prym import (
    AbelianSubvariety,
    ClaimRecord,
    CLAIM_IDS,
    PrymOracle,
    addition_degree,
    applicable_claims,
    operator_isogeny_degree,
    run_claims,
    subvariety,
    verify_claim,
)
from .report import VERSION

__version__ = VERSION

__all__ = [
    "AbelianSubvariety",
    "CLAIM_IDS",
    "ClaimRecord",
    "DihedralElement",
    "EquivariantLattice",
    "MonodromyDatum",
    "PermutationAction",
    "PrymOracle",
    "SubgroupSpec",
    "Sublattice",
    "addition_degree",
    "addition_map_degree",
    "applicable_claims",
    "apply_matrix",
    "branch_parity_counts",
    "coset_action",
    "deck_fixed_point_count",
    "deck_matrix",
    "degree_closed_form",
    "dn_class",
    "dn_mul",
    "fixed_point_count",
    "fixed_two_torsion_count",
    "genus_closed_forms",
    "hnf",
    "homology_lattice",
    "intersect",
    "is_valid",
    "kernel_lattice",
    "lattice_index",
    "lattice_sum",
    "operator_isogeny_degree",
    "prym_dimension",
    "quotient_genus",
    "run_claims",
    "sample_datum",
    "saturate",
    "snf",
    "sublattice",
    "subvariety",
    "two_adic_split",
    "validate_datum",
    "verify_claim",
    "__version__",
]

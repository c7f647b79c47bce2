"""Spectral radii, isolated toughness and {K_1,j : m <= j <= 2m}-factors.

Constructs the extremal graph families of the spectral star-factor
theorems and checks their identities and bounds numerically and exactly.
"""

from .errors import (
    CapExceeded,
    DisconnectedGraphError,
    GraphError,
    InvalidPartitionError,
    NoSignChangeError,
    NonConvergenceError,
    NotApplicableError,
    SearchTimeout,
)
from .factors import (
    StarFactor,
    ToughnessWitness,
    find_star_factor,
    is_isolated_tough,
    isolated_toughness,
    kano_saito_max_deficiency,
    verify_star_factor,
)
from .graph import (
    BlockLabeling,
    ExtremalParams,
    Graph,
    build_basic,
    disjoint_union,
    extremal_g1,
    extremal_g2,
    extremal_g_star,
    join,
)
from .polynomials import IntPolynomial, charpoly, largest_real_root, phi_b1, phi_b2, phi_b_star
from .spectral import (
    adjacency_matrix,
    distance_matrix,
    quotient_matrix,
    signless_laplacian,
    spectral_radius,
    wiener_index,
)

__version__ = "0.1.0"

__all__ = [
    "adjacency_matrix",
    "BlockLabeling",
    "build_basic",
    "charpoly",
    "CapExceeded",
    "DisconnectedGraphError",
    "disjoint_union",
    "distance_matrix",
    "extremal_g1",
    "extremal_g2",
    "extremal_g_star",
    "ExtremalParams",
    "find_star_factor",
    "Graph",
    "GraphError",
    "IntPolynomial",
    "InvalidPartitionError",
    "is_isolated_tough",
    "isolated_toughness",
    "join",
    "kano_saito_max_deficiency",
    "largest_real_root",
    "NonConvergenceError",
    "NoSignChangeError",
    "NotApplicableError",
    "phi_b1",
    "phi_b2",
    "phi_b_star",
    "quotient_matrix",
    "SearchTimeout",
    "signless_laplacian",
    "spectral_radius",
    "StarFactor",
    "ToughnessWitness",
    "verify_star_factor",
    "wiener_index",
]

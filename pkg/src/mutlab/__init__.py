"""Cluster combinatorics of once-punctured closed surfaces.

Quiver and seed mutation with exact Laurent arithmetic, triangulation flips
and angle invariants, potentials, index vectors, and a decision procedure
for the class P of quivers.
"""

from .errors import *  # noqa: F401,F403
from .quiver import (  # noqa: F401
    Quiver,
    mutate,
    canonical_key,
    is_isomorphic,
    enumerate_mutation_class,
    degree_profile,
    triangular_extension,
    condensation_cuts,
    iter_mutation_class,
    strongly_connected_components,
    markov_quiver,
    path_quiver,
    cycle_quiver,
)
from .laurent import (  # noqa: F401
    MultiPoly,
    LaurentForm,
    RatFunc,
    ratfunc_eq,
    laurent_normal_form,
    homogeneous_degree,
    specialize,
    parse_ratfunc,
)
from .seed import Seed, initial_seed, mutate_seed, check_exchange_homogeneity  # noqa: F401
from .surface import (  # noqa: F401
    Triangulation,
    flip,
    adjacency_quiver,
    extended_adjacency_quiver,
    build_genus,
    phi_psi,
    eulerian_cycle,
    angle,
    angle_sum,
    mu_element,
    flip_seed,
    triangulation_seed,
)
from .potential import Potential, build_W0, build_W1, cyclic_derivative, restrict  # noqa: F401
from .index import IndexVector, mutate_index, sigma_obstruction  # noqa: F401
from .class_p import PSolver, PVerdict, is_in_P, is_in_P_prime, replay_witness  # noqa: F401

__version__ = "0.1.0"

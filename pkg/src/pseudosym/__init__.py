"""Decorated Dynkin diagrams, restricted root systems and pseudo-involutions.

The package is organised bottom-up:

    cartan, catalogue   generalized Cartan matrices and named types
    weyl                Weyl group actions, roots, longest elements
    decoration          compatible (X, tau) pairs and their invariants
    restricted          restricted root systems and the three Weyl groups
    lie, theta, checks  a height-bounded Kac-Moody algebra and theta(X, tau, chi)
    notation, cli       text syntax and the command-line front end
"""
from .cartan import CartanMatrix, validate_gcm
from .catalogue import classify_type, named
from .checks import (iwasawa_check, k_check, kprime_split, onsager_coeffs, serre_deviation)
from .decoration import (Decoration, EnrichedDecoration, decoration, enumerate_decorations,
                         is_compatible, is_enriched_gsat, is_generalized_satake, is_satake,
                         odd_nodes, orbit_classes, special_orbits)
from .errors import PseudosymError
from .lie import TruncatedAlgebra, build
from .notation import parse, parse_decoration, render
from .restricted import gsat_battery, restricted_system, restricted_type, three_groups
from .table import diff_typeA, table_typeA
from .theta import ThetaMap, b_generator, theta

__all__ = [
    "CartanMatrix", "validate_gcm", "classify_type", "named",
    "iwasawa_check", "k_check", "kprime_split", "onsager_coeffs", "serre_deviation",
    "Decoration", "EnrichedDecoration", "decoration", "enumerate_decorations",
    "is_compatible", "is_enriched_gsat", "is_generalized_satake", "is_satake",
    "odd_nodes", "orbit_classes", "special_orbits", "PseudosymError",
    "TruncatedAlgebra", "build", "parse", "parse_decoration", "render",
    "gsat_battery", "restricted_system", "restricted_type", "three_groups",
    "diff_typeA", "table_typeA", "ThetaMap", "b_generator", "theta",
]

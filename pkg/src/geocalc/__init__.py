"""Symbolic geometric calculus on Riemann-Cartan manifolds.

Modules, bottom-up:

symexpr      small expression trees, differentiation, sampled comparison
multivector  Clifford algebra of a flat signature
manifold     charts, cotetrads, frame data, d
connection   connections, torsion, curvature, contorsion
calculus     Hodge and Dirac operators, exterior covariant derivative,
             Bianchi identities, dual torsion
scenarios    fixtures and named checks
cli          spec files and reports
"""

__version__ = "0.1.0"

from .symexpr import Domain, parse_expr, num_equal, render
from .multivector import Multivector, Signature, clifford_mul, wedge, left_contract, right_contract, hodge_star
from .manifold import Geometry, build_geometry
from .connection import Connection, RicciSlot, levi_civita, from_coefficients, from_contorsion, ricci_data
from . import calculus, scenarios

__all__ = [
    "__version__",
    "Domain",
    "parse_expr",
    "num_equal",
    "render",
    "Multivector",
    "Signature",
    "clifford_mul",
    "wedge",
    "left_contract",
    "right_contract",
    "hodge_star",
    "Geometry",
    "build_geometry",
    "Connection",
    "RicciSlot",
    "levi_civita",
    "from_coefficients",
    "from_contorsion",
    "ricci_data",
    "calculus",
    "scenarios",
]

"""Coarse geometry of plane graphs on finite windows.

Planar maps as rotation systems, geodesics and thin triangles, geodetic hulls
of faces, exact vertex isoperimetry, decoration elimination, and checks
linking non-amenability, bounded codegree and hyperbolicity.
"""

from .errors import BudgetExceeded, CoarsePlaneError, ValidationError
from .generators import GeneratorSpec, generate
from .hull import HullTrace, closest_geodesic, geodetic_hull, meet
from .isoperimetry import boundary_walk, cheeger_lower, iso_profile, vertex_boundary
from .lii import eliminate_decorations, find_decorations, hyperbolicity_certificate
from .metric import distance, enumerate_geodesics, is_geodetic_cycle, thin_triangle_delta
from .pipeline import Caps, analyze
from .planar import PlanarMap, build_map, cycle_interior, load, loads, save

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "CoarsePlaneError", "ValidationError", "GeneratorSpec", "generate",
    "HullTrace", "closest_geodesic", "geodetic_hull", "meet", "boundary_walk", "cheeger_lower",
    "iso_profile", "vertex_boundary", "eliminate_decorations", "find_decorations",
    "hyperbolicity_certificate", "distance", "enumerate_geodesics", "is_geodetic_cycle",
    "thin_triangle_delta", "Caps", "analyze", "PlanarMap", "build_map", "cycle_interior",
    "load", "loads", "save",
]

"""
Exact Projective Geometry Package

This package provides the exact-arithmetic core:
- Homogeneous points, lines, triangles and projective maps (kernel)
- Signed ratios, Menelaus products and the bihomology criterion (ratios)
- Perspective centers, axes and tri-homology detection (perspectivity)
- Partner triangles, cross-meet triangles and triplets (constructions)
- Brocard points and the first Brocard triangle (brocard)
"""

from .brocard import (
    AffineTriangle,
    Barycentrics,
    NeubergReport,
    brocard_points,
    first_brocard_triangle,
    from_barycentric,
    isogonal_conjugate,
    isotomic_conjugate,
    neuberg_check,
    squared_sides,
    symmedian_point,
    to_barycentric,
)
from .constructions import (
    TripletReport,
    iterate_triplet,
    partner_from_modes,
    theorem8_triangles,
    third_perspector,
    trihomological_triplet,
    veronese,
)
from .errors import (
    DegeneracyError,
    GeometryError,
    InputError,
    TheoremViolation,
)
from .kernel import (
    LINE_AT_INFINITY,
    ProjLine,
    ProjMap,
    ProjPoint,
    Rational,
    Triangle,
    apply_map,
    canonicalize,
    collinear,
    concurrent,
    incident,
    join,
    meet,
)
from .perspectivity import (
    Correspondence,
    HomologyEntry,
    HomologyReport,
    Mode,
    homology_report,
    is_trihomological,
    perspective_axis,
    perspector,
    theorem1_check,
    theorem2_check,
    theorem3_check,
)
from .ratios import (
    NineIntersections,
    affine_ratio,
    bihomology_criterion,
    grand_product,
    menelaus_product,
    mode_product,
    nine_intersections,
)

__all__ = [
    "LINE_AT_INFINITY",
    "AffineTriangle",
    "Barycentrics",
    "Correspondence",
    "DegeneracyError",
    "GeometryError",
    "HomologyEntry",
    "HomologyReport",
    "InputError",
    "Mode",
    "NeubergReport",
    "NineIntersections",
    "ProjLine",
    "ProjMap",
    "ProjPoint",
    "Rational",
    "TheoremViolation",
    "Triangle",
    "TripletReport",
    "affine_ratio",
    "apply_map",
    "bihomology_criterion",
    "brocard_points",
    "canonicalize",
    "collinear",
    "concurrent",
    "first_brocard_triangle",
    "from_barycentric",
    "grand_product",
    "homology_report",
    "incident",
    "is_trihomological",
    "isogonal_conjugate",
    "isotomic_conjugate",
    "iterate_triplet",
    "join",
    "meet",
    "menelaus_product",
    "mode_product",
    "neuberg_check",
    "nine_intersections",
    "partner_from_modes",
    "perspective_axis",
    "perspector",
    "squared_sides",
    "symmedian_point",
    "theorem1_check",
    "theorem2_check",
    "theorem3_check",
    "theorem8_triangles",
    "third_perspector",
    "to_barycentric",
    "trihomological_triplet",
    "veronese",
]

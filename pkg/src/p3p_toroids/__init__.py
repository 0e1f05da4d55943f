"""Three-point pose from subtended angles, and the toroid geometry behind its
solution count.

The package solves for the three vertex distances via the depth-ratio quartic,
classifies every real root as a solution / supplementary-angle solution /
degenerate-zero triplet, locates the optical center against the six
inscribed-angle toroids of the control triangle, and ships verification
campaigns plus an independent grid-search oracle.
"""
from .errors import (
    BackSubSingular,
    DegenerateTriangle,
    DegreeDrop,
    DomainError,
    NoIntersection,
    NoRealRoots,
    NoRealTriplet,
    OnChordLine,
    OnToroidPair,
    P3PError,
    PathDegenerate,
    PlanarCenter,
    SamplingStarved,
    SceneError,
    VertexCoincidence,
)
from .geom import (
    INSIDE,
    ON_BOUNDARY,
    OUTSIDE,
    TOROID_LABELS,
    CircumsphereSpec,
    ControlTriangle,
    RegionReport,
    ToroidSpec,
    ViewAngles,
    circumsphere,
    classify_region,
    cones_intersect,
    subtended_angles,
    triangle_from_sides,
    triangle_toroids,
    toroid_signed_excess,
)
from .quartic import GrunertQuartic, RootSet, grunert_coefficients, real_roots
from .solver import (
    DEGENERATE_ZERO,
    S_SOLUTION,
    SOLUTION,
    DepthTriplet,
    SolveReport,
    back_substitute,
    canonicalize_triplet,
    classify_triplet,
    positions_from_triplet,
    solve_p3p,
    supplementary_angles,
)
from .oracle import (
    OracleComparison,
    OracleResult,
    brute_force_solve,
    compare,
    toroid_point,
)
from .experiments import (
    CrossingEvent,
    SweepConfig,
    TheoremReport,
    random_triangle,
    sample_outside_union,
    sweep_path,
    synthesize_pose,
    verify_crossing_theorems,
    verify_lemma_suite,
    verify_outside_theorems,
)

__version__ = "0.1.0"

__all__ = [
    "BackSubSingular", "DegenerateTriangle", "DegreeDrop", "DomainError",
    "NoIntersection", "NoRealRoots", "NoRealTriplet", "OnChordLine",
    "OnToroidPair", "P3PError", "PathDegenerate", "PlanarCenter",
    "SamplingStarved", "SceneError", "VertexCoincidence",
    "INSIDE", "ON_BOUNDARY", "OUTSIDE", "TOROID_LABELS",
    "CircumsphereSpec", "ControlTriangle", "RegionReport", "ToroidSpec",
    "ViewAngles", "circumsphere", "classify_region", "cones_intersect",
    "subtended_angles", "triangle_from_sides", "triangle_toroids",
    "toroid_signed_excess",
    "GrunertQuartic", "RootSet", "grunert_coefficients", "real_roots",
    "DEGENERATE_ZERO", "S_SOLUTION", "SOLUTION", "DepthTriplet",
    "SolveReport", "back_substitute", "canonicalize_triplet",
    "classify_triplet", "positions_from_triplet", "solve_p3p",
    "supplementary_angles",
    "OracleComparison", "OracleResult", "brute_force_solve", "compare",
    "toroid_point",
    "CrossingEvent", "SweepConfig", "TheoremReport", "random_triangle",
    "sample_outside_union", "sweep_path", "synthesize_pose",
    "verify_crossing_theorems", "verify_lemma_suite",
    "verify_outside_theorems",
]

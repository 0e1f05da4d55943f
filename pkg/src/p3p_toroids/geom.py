"""Control-triangle geometry: subtended angles, inscribed-angle toroids, region classification.

Everything here is plain Euclidean geometry.  A control triangle is held in a
canonical embedding (A at the origin, B on +x, C in the z=0 plane with y>0) so
that positions are reproducible; all membership tests go through the
inscribed-angle characterization of the toroids rather than an implicit
surface equation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateTriangle,
    DomainError,
    OnChordLine,
    VertexCoincidence,
)

# Labels for the six toroids, in the fixed order used by every report and CSV.
TOROID_LABELS = ("TA", "TpiA", "TB", "TpiB", "TC", "TpiC")

INSIDE = "Inside"
OUTSIDE = "Outside"
ON_BOUNDARY = "OnBoundary"


@dataclass(frozen=True, eq=False)
class ControlTriangle:
    """Triangle of control points with side lengths, interior angles and canonical vertices.

    Sides follow the opposite-vertex convention: a = |BC|, b = |AC|, c = |AB|.
    """

    a: float
    b: float
    c: float
    angle_a: float
    angle_b: float
    angle_c: float
    vertex_a: np.ndarray
    vertex_b: np.ndarray
    vertex_c: np.ndarray

    @property
    def diameter(self) -> float:
        return max(self.a, self.b, self.c)

    @property
    def sides(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    @property
    def angles(self) -> tuple[float, float, float]:
        return (self.angle_a, self.angle_b, self.angle_c)

    def vertices(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.vertex_a, self.vertex_b, self.vertex_c)

    def is_acute(self, margin: float = 0.0) -> bool:
        return max(self.angle_a, self.angle_b, self.angle_c) < math.pi / 2 - margin


@dataclass(frozen=True)
class ViewAngles:
    """Angles subtended at the optical center: alpha over BC, beta over AC, gamma over AB."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name, value in (("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma)):
            if not (0.0 < value < math.pi) or not math.isfinite(value):
                raise DomainError(f"{name} must lie strictly in (0, pi), got {value!r}")

    @property
    def cosines(self) -> tuple[float, float, float]:
        return (math.cos(self.alpha), math.cos(self.beta), math.cos(self.gamma))

    def is_realizable(self) -> bool:
        """True when some off-plane point can subtend these three angles (trihedral inequalities)."""
        al, be, ga = self.alpha, self.beta, self.gamma
        return (
            al < be + ga
            and be < al + ga
            and ga < al + be
            and al + be + ga < 2.0 * math.pi
        )


@dataclass(frozen=True, eq=False)
class ToroidSpec:
    """A spindle-torus locus: points subtending `inscribed_angle` over the chord.

    `half_plane_ref` fixes which half-plane through the chord carries psi=0 in
    the parameterization (for triangle toroids: the opposite vertex).
    """

    chord_start: np.ndarray
    chord_end: np.ndarray
    inscribed_angle: float
    label: str = "T_custom"
    half_plane_ref: np.ndarray | None = None

    @property
    def chord_length(self) -> float:
        return float(np.linalg.norm(self.chord_end - self.chord_start))


@dataclass(frozen=True, eq=False)
class CircumsphereSpec:
    center: np.ndarray
    radius: float


@dataclass(frozen=True)
class RegionReport:
    """Per-toroid membership of a point plus the aggregate flags the theorems condition on."""

    statuses: dict  # label -> status string
    excesses: dict  # label -> signed excess in radians
    outside_union: bool
    on_outer_surface: bool
    inside_intersection_of_ac: bool

    def status(self, label: str) -> str:
        return self.statuses[label]


def triangle_from_sides(a: float, b: float, c: float) -> ControlTriangle:
    """Build the canonical triangle from side lengths.

    Raises DegenerateTriangle unless all sides are positive and the strict
    triangle inequality holds.
    """
    for s in (a, b, c):
        if not (isinstance(s, (int, float)) and math.isfinite(s)) or s <= 0.0:
            raise DegenerateTriangle(f"sides must be positive finite numbers, got {(a, b, c)}")
    if a + b <= c or b + c <= a or a + c <= b:
        raise DegenerateTriangle(f"triangle inequality fails for {(a, b, c)}")
    cos_a = (b * b + c * c - a * a) / (2.0 * b * c)
    cos_b = (a * a + c * c - b * b) / (2.0 * a * c)
    cos_c = (a * a + b * b - c * c) / (2.0 * a * b)
    angle_a = math.acos(cos_a)
    angle_b = math.acos(cos_b)
    angle_c = math.acos(cos_c)
    vertex_a = np.zeros(3)
    vertex_b = np.array([c, 0.0, 0.0])
    vertex_c = np.array([b * cos_a, b * math.sin(angle_a), 0.0])
    return ControlTriangle(
        a=float(a), b=float(b), c=float(c),
        angle_a=angle_a, angle_b=angle_b, angle_c=angle_c,
        vertex_a=vertex_a, vertex_b=vertex_b, vertex_c=vertex_c,
    )


def _ray_angle(u: np.ndarray, v: np.ndarray) -> float:
    # atan2 form: stable near 0 and pi, unlike acos of a normalized dot.
    cross = np.cross(u, v)
    return math.atan2(float(np.linalg.norm(cross)), float(np.dot(u, v)))


def subtended_angles(O, tri: ControlTriangle) -> ViewAngles:
    """Angles subtended at O by the three triangle sides."""
    O = np.asarray(O, dtype=float)
    A, B, C = tri.vertices()
    tol = 1e-12 * tri.diameter
    for name, V in (("A", A), ("B", B), ("C", C)):
        if np.linalg.norm(O - V) < tol:
            raise VertexCoincidence(f"point coincides with vertex {name}")
    return ViewAngles(
        alpha=_ray_angle(B - O, C - O),
        beta=_ray_angle(A - O, C - O),
        gamma=_ray_angle(A - O, B - O),
    )


def triangle_toroids(tri: ControlTriangle) -> dict:
    """The six inscribed-angle toroids of the triangle, keyed by TOROID_LABELS."""
    A, B, C = tri.vertices()
    pi = math.pi
    return {
        "TA": ToroidSpec(B, C, tri.angle_a, "TA", A),
        "TpiA": ToroidSpec(B, C, pi - tri.angle_a, "TpiA", A),
        "TB": ToroidSpec(A, C, tri.angle_b, "TB", B),
        "TpiB": ToroidSpec(A, C, pi - tri.angle_b, "TpiB", B),
        "TC": ToroidSpec(A, B, tri.angle_c, "TC", C),
        "TpiC": ToroidSpec(A, B, pi - tri.angle_c, "TpiC", C),
    }


def toroid_signed_excess(P, spec: ToroidSpec) -> float:
    """Subtended angle over the chord minus the inscribed angle.

    Positive inside the toroid solid, negative outside, ~0 on the surface.
    """
    P = np.asarray(P, dtype=float)
    s, e = spec.chord_start, spec.chord_end
    axis = e - s
    L = spec.chord_length
    # distance from P to the chord line
    w = P - s
    perp = w - (np.dot(w, axis) / (L * L)) * axis
    if np.linalg.norm(perp) < 1e-12 * L:
        raise OnChordLine("point lies on the chord line; subtended angle undefined")
    return _ray_angle(s - P, e - P) - spec.inscribed_angle


def classify_region(O, tri: ControlTriangle, eps_angle: float = 1e-9) -> RegionReport:
    """Classify a point against all six toroids of the triangle."""
    if eps_angle <= 0.0:
        raise DomainError("eps_angle must be positive")
    ang = subtended_angles(O, tri)
    pi = math.pi
    ex = {
        "TA": ang.alpha - tri.angle_a,
        "TpiA": ang.alpha - (pi - tri.angle_a),
        "TB": ang.beta - tri.angle_b,
        "TpiB": ang.beta - (pi - tri.angle_b),
        "TC": ang.gamma - tri.angle_c,
        "TpiC": ang.gamma - (pi - tri.angle_c),
    }
    statuses = {}
    for label, e in ex.items():
        if e > eps_angle:
            statuses[label] = INSIDE
        elif e < -eps_angle:
            statuses[label] = OUTSIDE
        else:
            statuses[label] = ON_BOUNDARY
    outside_union = all(s == OUTSIDE for s in statuses.values())
    any_inside = any(s == INSIDE for s in statuses.values())
    on_outer = (not any_inside) and any(s == ON_BOUNDARY for s in statuses.values())
    in_a = statuses["TA"] == INSIDE or statuses["TpiA"] == INSIDE
    in_c = statuses["TC"] == INSIDE or statuses["TpiC"] == INSIDE
    return RegionReport(
        statuses=statuses,
        excesses=ex,
        outside_union=outside_union,
        on_outer_surface=on_outer,
        inside_intersection_of_ac=in_a and in_c,
    )


def circumsphere(tri: ControlTriangle) -> CircumsphereSpec:
    """Circumsphere: centered at the circumcenter in the control plane, radius abc/(4K)."""
    a, b, c = tri.sides
    # area from Heron (sides already validated)
    s = 0.5 * (a + b + c)
    area = math.sqrt(max(s * (s - a) * (s - b) * (s - c), 0.0))
    radius = a * b * c / (4.0 * area)
    # circumcenter in the canonical plane: equidistant from the three vertices
    A, B, C = tri.vertices()
    bx, cx, cy = B[0], C[0], C[1]
    ux = bx / 2.0
    uy = (cx * cx + cy * cy - cx * bx) / (2.0 * cy)
    center = np.array([ux, uy, 0.0])
    return CircumsphereSpec(center=center, radius=radius)


def cones_intersect(beta0: float, gamma0: float, angle_a: float) -> bool:
    """Whether two circular cones with half-angles beta0, gamma0 around rays separated
    by angle_a share a common ray: cos(beta0+gamma0) <= cos(angle_a) <= cos(beta0-gamma0).

    Equality counts as intersecting (tangency).
    """
    for name, v in (("beta0", beta0), ("gamma0", gamma0), ("angle_a", angle_a)):
        if not (0.0 < v < math.pi):
            raise DomainError(f"{name} must lie strictly in (0, pi), got {v!r}")
    ca = math.cos(angle_a)
    return math.cos(beta0 + gamma0) <= ca <= math.cos(beta0 - gamma0)

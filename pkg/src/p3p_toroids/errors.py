"""Exception hierarchy shared across the library."""


class P3PError(RuntimeError):
    """Base class for every error this package raises on purpose."""


class DegenerateTriangle(P3PError):
    """Side lengths violate the strict triangle inequality (or are non-positive)."""


class VertexCoincidence(P3PError):
    """A query point coincides with a triangle vertex."""


class OnChordLine(P3PError):
    """A query point lies on a toroid's rotation axis, where the subtended angle is undefined."""


class DomainError(P3PError):
    """An argument is outside its documented domain."""


class DegreeDrop(P3PError):
    """The quartic's leading coefficient vanished; the polynomial is not degree 4."""


class OnToroidPair(P3PError):
    """The viewing angles place the optical center on a toroid pair (quartic degenerates).

    Attributes:
        pair: which vertex pair degenerated ("A").
    """

    def __init__(self, pair: str, message: str | None = None):
        self.pair = pair
        super().__init__(message or f"optical center lies on toroid pair {pair}")


class BackSubSingular(P3PError):
    """The linear relation for u is singular at this root (fallback path applies)."""


class NoRealTriplet(P3PError):
    """No real depth triplet exists for this root."""


class NoRealRoots(P3PError):
    """The quartic has no real roots: the angle triple is not geometrically realizable."""


class NoIntersection(P3PError):
    """The three distance spheres have no common point."""


class SamplingStarved(P3PError):
    """Rejection sampling acceptance rate collapsed; the triangle is malformed for this region."""


class PathDegenerate(P3PError):
    """A sweep path is unusable (passes through a vertex neighborhood)."""


class SceneError(P3PError):
    """A scene file failed validation."""


class PlanarCenter(SceneError):
    """The optical center lies in the control plane (degenerate configuration)."""

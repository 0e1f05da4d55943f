"""Grunert's quartic: coefficient construction and real-root extraction.

The root finder is deliberately dependency-free: recursive isolation on the
derivative chain (the critical points of p bracket its monotone runs), then
safeguarded bisection/Newton per bracket.  Multiplicities come from contact
order at the root plus relative clustering, never from symbolic discriminants.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegreeDrop
from .geom import ControlTriangle, ViewAngles

# Below ~1e-12 the monic normalization amplifies coefficient noise past what
# the isolation can survive (spurious empty root sets); treat it as degenerate.
DEGREE_DROP_REL = 1e-12
TOUCH_REL = 1e-14
CONTACT_REL = 1e-7
DEFAULT_TOL_CLUSTER = 1e-6


@dataclass(frozen=True)
class GrunertQuartic:
    """Coefficients a4 v^4 + a3 v^3 + a2 v^2 + a1 v + a0 for the depth ratio v = s3/s1."""

    a4: float
    a3: float
    a2: float
    a1: float
    a0: float
    source_triangle: ControlTriangle
    source_angles: ViewAngles

    @property
    def coefficients(self) -> tuple[float, float, float, float, float]:
        return (self.a4, self.a3, self.a2, self.a1, self.a0)

    @property
    def max_coefficient(self) -> float:
        return max(abs(x) for x in self.coefficients)

    def __call__(self, v: float) -> float:
        return _poly_eval(self.coefficients, v)


@dataclass(frozen=True)
class RootSet:
    """Distinct real roots with multiplicities; the remaining degree is complex pairs."""

    roots: tuple  # ((value, multiplicity), ...) sorted ascending
    complex_pair_count: int

    @property
    def real_count_with_multiplicity(self) -> int:
        return sum(m for _, m in self.roots)


def grunert_coefficients(tri: ControlTriangle, ang: ViewAngles) -> GrunertQuartic:
    """Eliminate s1 and u = s2/s1 from the three law-of-cosines constraints.

    The a4/a0 ends collapse to 4c²/b²(cos²∠A − cos²α) and 4a²/b²(cos²∠C − cos²γ);
    the middle coefficients come from the full elimination.
    """
    a, b, c = tri.sides
    ca, cb, cg = ang.cosines
    a2, b2, c2 = a * a, b * b, c * c
    amc = (a2 - c2) / b2
    apc = (a2 + c2) / b2
    bmc = (b2 - c2) / b2
    bma = (b2 - a2) / b2
    A4 = (amc - 1.0) ** 2 - 4.0 * c2 / b2 * ca * ca
    A3 = 4.0 * (amc * (1.0 - amc) * cb - (1.0 - apc) * ca * cg + 2.0 * c2 / b2 * ca * ca * cb)
    A2 = 2.0 * (
        amc * amc - 1.0
        + 2.0 * amc * amc * cb * cb
        + 2.0 * bmc * ca * ca
        - 4.0 * apc * ca * cb * cg
        + 2.0 * bma * cg * cg
    )
    A1 = 4.0 * (-amc * (1.0 + amc) * cb + 2.0 * a2 / b2 * cg * cg * cb - (1.0 - apc) * ca * cg)
    A0 = (1.0 + amc) ** 2 - 4.0 * a2 / b2 * cg * cg
    return GrunertQuartic(A4, A3, A2, A1, A0, tri, ang)


# ---------------------------------------------------------------------------
# polynomial helpers (coefficients highest-first)

def _poly_eval(c, x: float) -> float:
    r = 0.0
    for ci in c:
        r = r * x + ci
    return r


def _poly_local_scale(c, x: float) -> float:
    """Horner on |coefficients|: the natural magnitude of p near x."""
    s = 0.0
    ax = abs(x)
    for ci in c:
        s = s * ax + abs(ci)
    return max(s, 1e-300)


def _poly_deriv(c):
    n = len(c) - 1
    return [c[i] * (n - i) for i in range(n)]


def _refine_bracket(c, dc, lo: float, hi: float, flo: float, fhi: float) -> float:
    """Bisection with Newton acceleration inside a sign-change bracket."""
    x = 0.5 * (lo + hi)
    for _ in range(140):
        fx = _poly_eval(c, x)
        if fx == 0.0:
            return x
        if (fx > 0.0) == (fhi > 0.0):
            hi, fhi = x, fx
        else:
            lo, flo = x, fx
        dfx = _poly_eval(dc, x)
        moved = False
        if dfx != 0.0:
            xn = x - fx / dfx
            if lo < xn < hi:
                x, moved = xn, True
        if not moved:
            x = 0.5 * (lo + hi)
        if hi - lo <= 1e-17 * max(1.0, abs(x)):
            break
    return x


def _real_roots_monic(c, touch_tol: float = TOUCH_REL):
    """Distinct real roots of a monic polynomial, with contact parity.

    Returns [(root, is_touch)] ascending.  Touch roots (even contact) are
    found at critical points where |p| sits at evaluation-noise level.
    """
    n = len(c) - 1
    if n == 1:
        return [(-c[1], False)]
    if n == 2:
        _, p, q = c
        disc = p * p - 4.0 * q
        scale = max(p * p, abs(4.0 * q), 1.0)
        if abs(disc) <= 1e-14 * scale:
            return [(-0.5 * p, True)]
        if disc < 0.0:
            return []
        sq = math.sqrt(disc)
        # numerically stable quadratic branches
        if p >= 0.0:
            r1 = (-p - sq) / 2.0
        else:
            r1 = (-p + sq) / 2.0
        r2 = q / r1 if r1 != 0.0 else -p
        lo, hi = min(r1, r2), max(r1, r2)
        return [(lo, False), (hi, False)]

    dc = _poly_deriv(c)
    dmonic = [x / dc[0] for x in dc]
    crits = [r for (r, _) in _real_roots_monic(dmonic, touch_tol)]
    bound = 1.0 + max(abs(x) for x in c[1:]) if n >= 1 else 1.0
    pts = [-bound] + [x for x in crits if -bound < x < bound] + [bound]
    roots = []
    vals = [_poly_eval(c, x) for x in pts]
    for i, x in enumerate(pts[1:-1], start=1):
        if abs(vals[i]) <= touch_tol * _poly_local_scale(c, x):
            roots.append((x, True))
    for i in range(len(pts) - 1):
        flo, fhi = vals[i], vals[i + 1]
        near_lo = abs(flo) <= touch_tol * _poly_local_scale(c, pts[i])
        near_hi = abs(fhi) <= touch_tol * _poly_local_scale(c, pts[i + 1])
        if near_lo or near_hi:
            continue
        if (flo > 0.0) != (fhi > 0.0):
            roots.append((_refine_bracket(c, dc, pts[i], pts[i + 1], flo, fhi), False))
    roots.sort(key=lambda t: t[0])
    return roots


def _contact_multiplicity(c, root: float, is_touch: bool) -> int:
    """Contact order at the root: 1 or 2 from parity, escalated when the next
    derivatives also vanish at evaluation-noise level."""
    d1 = _poly_deriv(c)
    d2 = _poly_deriv(d1)
    d3 = _poly_deriv(d2)
    s1 = _poly_local_scale(d1, root)
    s2 = _poly_local_scale(d2, root)
    s3 = _poly_local_scale(d3, root)
    if not is_touch:
        if (abs(_poly_eval(d1, root)) <= CONTACT_REL * s1
                and abs(_poly_eval(d2, root)) <= CONTACT_REL * s2):
            return 3
        return 1
    if (abs(_poly_eval(d2, root)) <= CONTACT_REL * s2
            and abs(_poly_eval(d3, root)) <= CONTACT_REL * s3):
        return 4
    return 2


def real_roots(q: GrunertQuartic, tol_cluster: float = DEFAULT_TOL_CLUSTER) -> RootSet:
    """All real roots of the quartic with multiplicities.

    Raises DegreeDrop when |a4| is at noise level relative to the other
    coefficients (the caller is sitting on the A toroid pair).
    """
    return RootSet(*_root_clusters(q.coefficients, tol_cluster))


def _root_clusters(coeffs, tol_cluster: float):
    a4 = coeffs[0]
    max_coeff = max(abs(x) for x in coeffs)
    if max_coeff == 0.0 or abs(a4) <= DEGREE_DROP_REL * max_coeff:
        raise DegreeDrop("leading coefficient at noise level; quartic degenerates")
    monic = [x / a4 for x in coeffs]
    raw = _real_roots_monic(monic)
    entries = [(r, _contact_multiplicity(monic, r, t)) for (r, t) in raw]

    # cluster nearby roots (relative tolerance), summing multiplicities
    clusters = []
    for r, m in entries:
        if clusters and abs(r - clusters[-1][0]) <= tol_cluster * max(1.0, abs(r)):
            pr, pm = clusters[-1]
            total = pm + m
            clusters[-1] = ((pr * pm + r * m) / total, total)
        else:
            clusters.append((r, m))

    total = sum(m for _, m in clusters)
    # Over-assignment can only come from escalation misfires; shave the largest.
    while total > 4:
        j = max(range(len(clusters)), key=lambda i: clusters[i][1])
        clusters[j] = (clusters[j][0], clusters[j][1] - 1)
        total -= 1
    if total % 2 == 1:
        # Real-root mass of a real quartic is even.  The root whose derivative
        # magnitude is smallest relative to scale is the likeliest camouflaged touch.
        d1 = _poly_deriv(monic)
        j = min(
            range(len(clusters)),
            key=lambda i: abs(_poly_eval(d1, clusters[i][0])) / _poly_local_scale(d1, clusters[i][0]),
        )
        clusters[j] = (clusters[j][0], clusters[j][1] + 1)
        total += 1
        while total > 4:
            j = max(range(len(clusters)), key=lambda i: clusters[i][1])
            clusters[j] = (clusters[j][0], clusters[j][1] - 1)
            total -= 1
    clusters = [(r, m) for (r, m) in clusters if m > 0]
    clusters.sort(key=lambda t: t[0])
    return tuple(clusters), (4 - sum(m for _, m in clusters)) // 2

"""Depth recovery: quartic roots -> polished depth triplets -> classification.

The quartic supplies candidate ratios; the three law-of-cosines constraints
are the authority on what is actually a solution.  Every candidate triplet is
polished by Newton on the constraint system, and accepted only under the
residual gate.  Near-degenerate root clusters (merged twins at long range,
contact-order misreads) are resolved by over-generating candidates — both
algebraic branches of u, a fan of nudged v values, plus probes along the
constraint Jacobian's near-null direction — and letting the realized,
deduplicated triplets refine the real-root mass.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BackSubSingular,
    DegreeDrop,
    NoIntersection,
    NoRealRoots,
    NoRealTriplet,
    OnToroidPair,
)
from .geom import ControlTriangle, RegionReport, ViewAngles, classify_region
from .quartic import GrunertQuartic, RootSet, grunert_coefficients, real_roots

SOLUTION = "Solution"
S_SOLUTION = "SSolution"
DEGENERATE_ZERO = "DegenerateZero"

# which angle pair is supplemented, by index of the negative element
SUPPLEMENT_PAIR_BY_NEGATIVE = {0: "beta_gamma", 1: "alpha_gamma", 2: "alpha_beta"}

DEFAULT_RESIDUAL_TOL = 1e-8
DEFAULT_ZERO_TOL = 1e-9
DEFAULT_DEDUP_TOL = 1e-8
_SINGULAR_U_TOL = 1e-10
_JAC_SINGULAR_REL = 1e-7


@dataclass(frozen=True)
class DepthTriplet:
    """A signed depth triplet (s1,s2,s3) = (|OA|,|OB|,|OC|) with its provenance.

    `v` is the originating quartic root s3/s1, `u` the derived ratio s2/s1.
    `residual` is the worst normalized law-of-cosines defect.
    """

    s1: float
    s2: float
    s3: float
    v: float
    u: float
    class_tag: str
    residual: float
    root_multiplicity: int = 1
    supplement_pair: str | None = None
    zero_index: int | None = None

    @property
    def values(self) -> tuple[float, float, float]:
        return (self.s1, self.s2, self.s3)


@dataclass(frozen=True)
class SolveReport:
    quartic: GrunertQuartic
    root_set: RootSet
    triplets: tuple
    solutions: tuple
    s_solutions: tuple
    degenerate_zeros: tuple
    positive_root_count: int
    complex_pair_count: int
    non_realizable: bool
    region: RegionReport | None = None

    @property
    def solution_count(self) -> int:
        return len(self.solutions)

    @property
    def s_solution_count(self) -> int:
        return len(self.s_solutions)

    def min_abs_element(self) -> float:
        """Smallest |s_i| over every reported triplet (inf when there are none)."""
        best = math.inf
        for t in self.triplets:
            best = min(best, min(abs(x) for x in t.values))
        return best


def constraint_residuals(s1, s2, s3, a, b, c, ca, cb, cg):
    """The three law-of-cosines defects (unnormalized)."""
    f1 = s1 * s1 + s2 * s2 - 2.0 * cg * s1 * s2 - c * c
    f2 = s1 * s1 + s3 * s3 - 2.0 * cb * s1 * s3 - b * b
    f3 = s2 * s2 + s3 * s3 - 2.0 * ca * s2 * s3 - a * a
    return f1, f2, f3


def normalized_residual(s1, s2, s3, a, b, c, ca, cb, cg) -> float:
    f1, f2, f3 = constraint_residuals(s1, s2, s3, a, b, c, ca, cb, cg)
    return max(abs(f1) / (1.0 + c * c), abs(f2) / (1.0 + b * b), abs(f3) / (1.0 + a * a))


def _polish(s1, s2, s3, a, b, c, ca, cb, cg, iters: int = 25):
    """Newton on the constraint system (3x3 by Cramer); returns best-seen iterate."""
    best = (s1, s2, s3, normalized_residual(s1, s2, s3, a, b, c, ca, cb, cg))
    stop = 1e-15 * (1.0 + a * a + b * b + c * c)
    x1, x2, x3 = s1, s2, s3
    for _ in range(iters):
        f1, f2, f3 = constraint_residuals(x1, x2, x3, a, b, c, ca, cb, cg)
        j11 = 2.0 * x1 - 2.0 * cg * x2
        j12 = 2.0 * x2 - 2.0 * cg * x1
        j21 = 2.0 * x1 - 2.0 * cb * x3
        j23 = 2.0 * x3 - 2.0 * cb * x1
        j32 = 2.0 * x2 - 2.0 * ca * x3
        j33 = 2.0 * x3 - 2.0 * ca * x2
        det = -j11 * j23 * j32 - j12 * j21 * j33
        if det == 0.0:
            break
        det1 = -f1 * j23 * j32 - j12 * (f2 * j33 - j23 * f3)
        det2 = j11 * (f2 * j33 - j23 * f3) - f1 * j21 * j33
        det3 = -j11 * f2 * j32 - j12 * j21 * f3 + f1 * j21 * j32
        x1 -= det1 / det
        x2 -= det2 / det
        x3 -= det3 / det
        r = normalized_residual(x1, x2, x3, a, b, c, ca, cb, cg)
        if r < best[3]:
            best = (x1, x2, x3, r)
        if r <= stop:
            break
    return best


def _null_direction(s1, s2, s3, ca, cb, cg):
    """Unit vector closest to the constraint Jacobian's kernel at the triplet."""
    J = np.array([
        [2.0 * s1 - 2.0 * cg * s2, 2.0 * s2 - 2.0 * cg * s1, 0.0],
        [2.0 * s1 - 2.0 * cb * s3, 0.0, 2.0 * s3 - 2.0 * cb * s1],
        [0.0, 2.0 * s2 - 2.0 * ca * s3, 2.0 * s3 - 2.0 * ca * s2],
    ])
    _, _, vt = np.linalg.svd(J)
    return vt[-1]


def _jacobian_det_ratio(s1, s2, s3, ca, cb, cg) -> float:
    j11 = 2.0 * s1 - 2.0 * cg * s2
    j12 = 2.0 * s2 - 2.0 * cg * s1
    j21 = 2.0 * s1 - 2.0 * cb * s3
    j23 = 2.0 * s3 - 2.0 * cb * s1
    j32 = 2.0 * s2 - 2.0 * ca * s3
    j33 = 2.0 * s3 - 2.0 * ca * s2
    det = -j11 * j23 * j32 - j12 * j21 * j33
    nrm = max(abs(j11) + abs(j12), abs(j21) + abs(j23), abs(j32) + abs(j33), 1e-300)
    return abs(det) / nrm**3


def canonicalize_triplet(s1: float, s2: float, s3: float):
    """Collapse the global (s, -s) gauge: flip all three signs when two or more are negative."""
    if (s1 < 0.0) + (s2 < 0.0) + (s3 < 0.0) >= 2:
        return (-s1, -s2, -s3)
    return (s1, s2, s3)


def classify_triplet(s1: float, s2: float, s3: float, zero_tol: float, scale: float):
    """(class_tag, supplement_pair, zero_index) of a canonicalized triplet."""
    abs_vals = (abs(s1), abs(s2), abs(s3))
    zi = min(range(3), key=lambda i: abs_vals[i])
    if abs_vals[zi] <= zero_tol * scale:
        return DEGENERATE_ZERO, None, zi + 1
    negatives = [i for i, x in enumerate((s1, s2, s3)) if x < 0.0]
    if not negatives:
        return SOLUTION, None, None
    return S_SOLUTION, SUPPLEMENT_PAIR_BY_NEGATIVE[negatives[0]], None


def supplementary_angles(ang: ViewAngles, pair: str) -> ViewAngles:
    """Replace the named two angles by their supplements (an involution)."""
    pi = math.pi
    if pair == "alpha_beta":
        return ViewAngles(pi - ang.alpha, pi - ang.beta, ang.gamma)
    if pair == "alpha_gamma":
        return ViewAngles(pi - ang.alpha, ang.beta, pi - ang.gamma)
    if pair == "beta_gamma":
        return ViewAngles(ang.alpha, pi - ang.beta, pi - ang.gamma)
    raise ValueError(f"unknown supplement pair {pair!r}")


def _backsub_candidates(v, a, b, c, ca, cb, cg):
    """All algebraically admissible raw triplets for a given ratio v.

    Positive-s1 convention; the linear route for u plus both branches of the
    first-constraint quadratic (they matter when the linear relation is
    singular or the quartic could not separate twin roots).
    """
    den = 1.0 - 2.0 * v * cb + v * v
    if den <= 0.0:
        return []
    s1 = b / math.sqrt(den)
    s3 = v * s1
    us = []
    d = v * ca - cg
    if abs(d) > _SINGULAR_U_TOL:
        us.append((c * c - a * a - s1 * s1 * (1.0 - v * v)) / (2.0 * s1 * s1 * d))
    disc = cg * cg - (1.0 - c * c / (s1 * s1))
    if disc >= 0.0:
        sq = math.sqrt(disc)
        us.extend((cg + sq, cg - sq))
    out = []
    for u in us:
        if any(abs(u - seen) <= 1e-9 * max(1.0, abs(u)) for _, seen in out):
            continue
        out.append(((s1, u * s1, s3), u))
    return [t for t, _ in out]


def back_substitute(v: float, tri: ControlTriangle, ang: ViewAngles,
                    zero_tol: float = DEFAULT_ZERO_TOL,
                    root_multiplicity: int = 1) -> DepthTriplet:
    """Recover one depth triplet from a quartic root.

    s1 = b/sqrt(1 - 2 v cos(beta) + v^2), s3 = v s1, and u from the linear
    relation between the first and third constraints.  When that relation is
    singular (|v cos(alpha) - cos(gamma)| at noise level) the quadratic in u
    from the first constraint takes over, choosing the branch with the smaller
    third-constraint residual.
    """
    a, b, c = tri.sides
    ca, cb, cg = ang.cosines
    den = 1.0 - 2.0 * v * cb + v * v
    if den <= 0.0:
        raise NoRealTriplet(f"no real depth for v={v!r} (denominator {den!r})")
    s1 = b / math.sqrt(den)
    s3 = v * s1
    d = v * ca - cg
    if abs(d) > _SINGULAR_U_TOL:
        u = (c * c - a * a - s1 * s1 * (1.0 - v * v)) / (2.0 * s1 * s1 * d)
    else:
        # singular linear relation: fall back to the quadratic from constraint 1
        disc = cg * cg - (1.0 - c * c / (s1 * s1))
        if disc < 0.0:
            raise NoRealTriplet(f"singular back-substitution has no real u at v={v!r}")
        sq = math.sqrt(disc)
        best_u, best_r = None, math.inf
        for cand in (cg + sq, cg - sq):
            s2c = cand * s1
            r3 = abs(s2c * s2c + s3 * s3 - 2.0 * ca * s2c * s3 - a * a)
            if r3 < best_r:
                best_u, best_r = cand, r3
        u = best_u
    s2 = u * s1
    p1, p2, p3, res = _polish(s1, s2, s3, a, b, c, ca, cb, cg)
    p1, p2, p3 = canonicalize_triplet(p1, p2, p3)
    scale = (a + b + c) / 3.0
    tag, pair, zi = classify_triplet(p1, p2, p3, zero_tol, scale)
    return DepthTriplet(
        s1=p1, s2=p2, s3=p3,
        v=(p3 / p1 if p1 != 0.0 else v), u=(p2 / p1 if p1 != 0.0 else u),
        class_tag=tag, residual=res, root_multiplicity=root_multiplicity,
        supplement_pair=pair, zero_index=zi,
    )


_V_FAN = (1e-5, -1e-5, 3e-5, -3e-5, 1e-4, -1e-4, 3e-4, -3e-4, 1e-3, -1e-3, 3e-3, -3e-3)
_NULL_ETAS = (1e-6, 3e-6, 1e-5, 3e-5, 1e-4, 3e-4, 1e-3, 3e-3, 1e-2)


def solve_p3p(tri: ControlTriangle, ang: ViewAngles, *,
              center=None,
              residual_tol: float = DEFAULT_RESIDUAL_TOL,
              tol_cluster: float = 1e-6,
              zero_tol: float = DEFAULT_ZERO_TOL,
              dedup_tol: float = DEFAULT_DEDUP_TOL) -> SolveReport:
    """Full pipeline: coefficients -> real roots -> candidate triplets -> classification.

    Raises OnToroidPair when the quartic degree-drops (alpha on the A pair) and
    NoRealRoots when the quartic has no real roots at all.  When `center` is
    given, the report carries the region classification of that point.
    """
    a, b, c = tri.sides
    ca, cb, cg = ang.cosines
    quartic = grunert_coefficients(tri, ang)
    try:
        root_set = real_roots(quartic, tol_cluster)
    except DegreeDrop as exc:
        raise OnToroidPair("A") from exc
    clusters = list(root_set.roots)
    if not clusters:
        raise NoRealRoots("quartic has no real roots; angle triple not realizable")
    scale = (a + b + c) / 3.0

    # --- over-generate candidates per root, polish, gate, canonicalize, dedup
    realized = []  # [ [triplet(3), residual, cluster_index] ]

    def try_candidate(t0, idx):
        p1, p2, p3, res = _polish(t0[0], t0[1], t0[2], a, b, c, ca, cb, cg)
        if res > residual_tol:
            return False
        p1, p2, p3 = canonicalize_triplet(p1, p2, p3)
        for q in realized:
            if max(abs(p1 - q[0][0]), abs(p2 - q[0][1]), abs(p3 - q[0][2])) <= dedup_tol * scale:
                return False
        realized.append([(p1, p2, p3), res, idx])
        return True

    for idx, (v, _m) in enumerate(clusters):
        for cand in _backsub_candidates(v, a, b, c, ca, cb, cg):
            try_candidate(cand, idx)

    # --- twin completion for clusters the quartic could not resolve
    expected = sum(m for _, m in clusters)
    if realized and (len(realized) < expected or len(realized) % 2 == 1):
        for idx, (v0, _m) in enumerate(clusters):
            for dv in _V_FAN:
                v = v0 * (1.0 + dv) if v0 != 0.0 else dv
                for cand in _backsub_candidates(v, a, b, c, ca, cb, cg):
                    try_candidate(cand, idx)
        scale_t = max([1.0] + [max(abs(x) for x in q[0]) for q in realized])
        work = list(range(len(realized)))
        attempts = 0
        while work and len(realized) < 4 and attempts < 12:
            qi = work.pop(0)
            s1r, s2r, s3r = realized[qi][0]
            nd = _null_direction(s1r, s2r, s3r, ca, cb, cg)
            for eta in _NULL_ETAS:
                added = False
                for sgn in (1.0, -1.0):
                    h = eta * sgn * scale_t
                    if try_candidate((s1r + h * nd[0], s2r + h * nd[1], s3r + h * nd[2]),
                                     realized[qi][2]):
                        work.append(len(realized) - 1)
                        added = True
                if added and len(realized) >= expected:
                    break
            attempts += 1

    # --- reassign each realized triplet to the nearest cluster in v
    for q in realized:
        v = q[0][2] / q[0][0] if q[0][0] != 0.0 else math.inf
        best, bi = None, -1
        for i, (cv, _m) in enumerate(clusters):
            dv = abs(v - cv)
            if best is None or dv < best:
                best, bi = dv, i
        q[2] = bi if (best is not None and best <= 10.0 * tol_cluster * max(1.0, abs(v))) else -1

    # --- refine real-root mass from what was realized
    def jac_weight(t):
        return 2 if _jacobian_det_ratio(*t, ca, cb, cg) <= _JAC_SINGULAR_REL else 1

    refined = []  # [cluster_v, [realized entries], [weights]]
    for i, (cv, _m) in enumerate(clusters):
        mine = [q for q in realized if q[2] == i]
        if not mine:
            continue  # realness refuted (the cluster was a camouflaged complex pair)
        refined.append([cv, mine, [jac_weight(q[0]) for q in mine]])
    for q in (q for q in realized if q[2] == -1):
        v = q[0][2] / q[0][0] if q[0][0] != 0.0 else math.inf
        refined.append([v, [q], [jac_weight(q[0])]])

    used = sum(sum(w) for _, _, w in refined)
    while used > 4 and any(max(w) > 1 for _, _, w in refined):
        j = max(range(len(refined)), key=lambda i: max(refined[i][2]))
        mx = max(refined[j][2])
        refined[j][2][refined[j][2].index(mx)] -= 1
        used -= 1
    while used > 4:
        j = max(range(len(refined)), key=lambda i: max(q[1] for q in refined[i][1]))
        qs, ws = refined[j][1], refined[j][2]
        w = max(range(len(qs)), key=lambda i: qs[i][1])
        del qs[w], ws[w]
        used -= 1
        refined = [r for r in refined if r[1]]
    if used > 0 and (4 - used) % 2 == 1:
        # Odd realized mass is impossible.  Either a stalled near-miss slipped
        # the residual gate (drop it) or a coincident pair went undetected (bump).
        flat = [(ri, qi) for ri, r in enumerate(refined) for qi in range(len(r[1]))]
        res_sorted = sorted(refined[ri][1][qi][1] for ri, qi in flat)
        med = res_sorted[len(res_sorted) // 2]
        worst = max(flat, key=lambda p: refined[p[0]][1][p[1]][1])
        if refined[worst[0]][1][worst[1]][1] > max(100.0 * med, 1e-12) and used > 1:
            del refined[worst[0]][1][worst[1]], refined[worst[0]][2][worst[1]]
            used -= 1
            refined = [r for r in refined if r[1]]
        else:
            bump = min(flat, key=lambda p: _jacobian_det_ratio(*refined[p[0]][1][p[1]][0], ca, cb, cg))
            refined[bump[0]][2][bump[1]] += 1
            used += 1

    complex_pairs = (4 - used) // 2

    # --- classify
    triplets = []
    positive_root_count = 0
    for cv, mine, weights in refined:
        if cv > 0.0:
            positive_root_count += sum(weights)
        for q, w in zip(mine, weights):
            p1, p2, p3 = q[0]
            tag, pair, zi = classify_triplet(p1, p2, p3, zero_tol, scale)
            triplets.append(DepthTriplet(
                s1=p1, s2=p2, s3=p3,
                v=(p3 / p1 if p1 != 0.0 else cv),
                u=(p2 / p1 if p1 != 0.0 else math.inf),
                class_tag=tag, residual=q[1], root_multiplicity=w,
                supplement_pair=pair, zero_index=zi,
            ))
    triplets.sort(key=lambda t: (t.v, t.u))
    solutions = tuple(t for t in triplets if t.class_tag == SOLUTION)
    s_solutions = tuple(t for t in triplets if t.class_tag == S_SOLUTION)
    zeros = tuple(t for t in triplets if t.class_tag == DEGENERATE_ZERO)
    region = classify_region(center, tri) if center is not None else None
    return SolveReport(
        quartic=quartic,
        root_set=root_set,
        triplets=tuple(triplets),
        solutions=solutions,
        s_solutions=s_solutions,
        degenerate_zeros=zeros,
        positive_root_count=positive_root_count,
        complex_pair_count=complex_pairs,
        non_realizable=not ang.is_realizable(),
        region=region,
    )


def positions_from_triplet(t: DepthTriplet, tri: ControlTriangle):
    """Trilaterate the optical center(s) from the three distances.

    Returns the 0, 1, or 2 canonical-frame points at distances (s1,s2,s3)
    from (A,B,C); mirror pairs across the control plane are both returned.
    """
    if t.class_tag != SOLUTION:
        raise NoIntersection("positions are defined for Solution triplets only")
    a, b, c = tri.sides
    s1, s2, s3 = t.values
    C = tri.vertex_c
    x = (s1 * s1 - s2 * s2 + c * c) / (2.0 * c)
    y = (s1 * s1 - s3 * s3 + C[0] * C[0] + C[1] * C[1] - 2.0 * x * C[0]) / (2.0 * C[1])
    h2 = s1 * s1 - x * x - y * y
    tol = 1e-9 * max(s1 * s1, tri.diameter**2)
    if h2 < -tol:
        raise NoIntersection(f"spheres do not meet (h^2 = {h2!r})")
    if h2 <= tol:
        return [np.array([x, y, 0.0])]
    h = math.sqrt(h2)
    return [np.array([x, y, h]), np.array([x, y, -h])]

"""Independent brute-force solver: grid search on one subtended-angle toroid.

The set of points seeing side b under angle beta is a spindle/apple toroid
around chord AC.  Every admissible optical center lies on it, so a 2D grid
over its (phi, psi) parameterization plus sign-change detection on the two
remaining angle residuals finds all solutions without touching the quartic.
This is deliberately dumb and shares no code path with the algebraic solver.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geom import ControlTriangle, ToroidSpec, ViewAngles, _ray_angle

_MIN_GRID = 64
_NEWTON_ITERS = 50
_DEDUP_REL = 1e-4


def toroid_point(spec: ToroidSpec, phi: float, psi: float) -> np.ndarray:
    """Point on the toroid at meridian angle phi in (0, pi) and azimuth psi.

    phi sweeps the inscribed-angle circular arc from one chord endpoint to the
    other; psi rotates that arc around the chord.  With `half_plane_ref` set,
    psi = 0 is the half-plane containing the reference point.
    """
    if not (0.0 < phi < math.pi):
        raise DomainError(f"phi must lie strictly inside (0, pi); got {phi!r}")
    theta = spec.inscribed_angle
    p, q = np.asarray(spec.chord_start, float), np.asarray(spec.chord_end, float)
    chord = q - p
    L = float(np.linalg.norm(chord))
    if L <= 0.0:
        raise DomainError("degenerate chord")
    ex = chord / L
    R = L / (2.0 * math.sin(theta))
    if spec.half_plane_ref is not None:
        ref = np.asarray(spec.half_plane_ref, float) - p
        ey = ref - np.dot(ref, ex) * ex
        n = float(np.linalg.norm(ey))
        if n <= 1e-12 * L:
            raise DomainError("half-plane reference lies on the chord line")
        ey /= n
    else:
        trial = np.array([0.0, 0.0, 1.0]) if abs(ex[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
        ey = trial - np.dot(trial, ex) * ex
        ey /= float(np.linalg.norm(ey))
    ez = np.cross(ex, ey)
    mid = 0.5 * (p + q)
    omega = (phi / math.pi - 0.5) * 2.0 * (math.pi - theta)
    radial = R * math.cos(theta) + R * math.cos(omega)
    e_out = math.cos(psi) * ey + math.sin(psi) * ez
    return mid + R * math.sin(omega) * ex + radial * e_out


@dataclass(frozen=True)
class OracleResult:
    centers: tuple
    triplets: tuple
    grid_resolution: tuple
    grid_too_coarse: bool

    @property
    def center_count(self) -> int:
        return len(self.centers)

    @property
    def distinct_triplet_count(self) -> int:
        return len(self.triplets)


def brute_force_solve(tri: ControlTriangle, ang: ViewAngles,
                      grid: int = 512) -> OracleResult:
    """All optical centers by grid search + local Newton on one toroid.

    `grid` is the resolution per axis (n_phi = n_psi = grid, minimum 64).
    Raises GridTooCoarse when two refined centers sit within three grid cells
    of each other, i.e. the grid cannot certify it separated them.
    """
    if grid < _MIN_GRID:
        raise DomainError(f"grid resolution must be at least {_MIN_GRID}; got {grid}")
    # search on the toroid of the largest subtended angle: fattest arcs,
    # best-conditioned residuals
    angles = (ang.alpha, ang.beta, ang.gamma)
    k = int(np.argmax(angles))
    verts = tri.vertices()
    chords = ((verts[1], verts[2]), (verts[0], verts[2]), (verts[0], verts[1]))
    others = ((verts[0],), (verts[1],), (verts[2],))
    p, q = chords[k]
    theta = angles[k]
    # residual angles: the two NOT subtending the search chord
    rem = [(i, angles[i]) for i in range(3) if i != k]
    rem_chords = [chords[i] for i, _ in rem]

    chord = q - p
    L = float(np.linalg.norm(chord))
    ex = chord / L
    ref = others[k][0] - p
    ey = ref - np.dot(ref, ex) * ex
    n = float(np.linalg.norm(ey))
    if n <= 1e-12 * L:
        trial = np.array([0.0, 0.0, 1.0]) if abs(ex[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
        ey = trial - np.dot(trial, ex) * ex
        n = float(np.linalg.norm(ey))
    ey /= n
    ez = np.cross(ex, ey)
    mid = 0.5 * (p + q)
    R = L / (2.0 * math.sin(theta))

    phis = (np.arange(grid) + 0.5) * (math.pi / grid)
    psis = (np.arange(grid) + 0.5) * (2.0 * math.pi / grid)
    omegas = (phis / math.pi - 0.5) * 2.0 * (math.pi - theta)
    axial = R * np.sin(omegas)
    radial = R * math.cos(theta) + R * np.cos(omegas)
    e_out = np.cos(psis)[:, None] * ey[None, :] + np.sin(psis)[:, None] * ez[None, :]
    # pts[i_psi, j_phi, 3]
    pts = (mid[None, None, :]
           + axial[None, :, None] * ex[None, None, :]
           + radial[None, :, None] * e_out[:, None, :])

    def residual_grids(points):
        out = []
        for (cp, cq), (_, th) in zip(rem_chords, rem):
            u = cp[None, None, :] - points
            w = cq[None, None, :] - points
            cr = np.cross(u, w)
            ang_val = np.arctan2(np.linalg.norm(cr, axis=-1), np.einsum("...k,...k", u, w))
            out.append(ang_val - th)
        return out

    r1, r2 = residual_grids(pts)
    s1 = np.signbit(r1)
    s2 = np.signbit(r2)
    # cells whose 2x2 corner stencil changes sign in BOTH residuals
    c1 = ((s1[:-1, :-1] != s1[:-1, 1:]) | (s1[:-1, :-1] != s1[1:, :-1])
          | (s1[:-1, :-1] != s1[1:, 1:]))
    c2 = ((s2[:-1, :-1] != s2[:-1, 1:]) | (s2[:-1, :-1] != s2[1:, :-1])
          | (s2[:-1, :-1] != s2[1:, 1:]))
    seeds = np.argwhere(c1 & c2)

    dphi = math.pi / grid
    dpsi = 2.0 * math.pi / grid

    def point_at(phi, psi):
        om = (phi / math.pi - 0.5) * 2.0 * (math.pi - theta)
        rad = R * math.cos(theta) + R * math.cos(om)
        eo = math.cos(psi) * ey + math.sin(psi) * ez
        return mid + R * math.sin(om) * ex + rad * eo

    def residuals_at(phi, psi):
        pt = point_at(phi, psi)
        out = []
        for (cp, cq), (_, th) in zip(rem_chords, rem):
            out.append(_ray_angle(cp - pt, cq - pt) - th)
        return np.array(out)

    def refine(phi, psi):
        x = np.array([phi, psi])
        fx = residuals_at(*x)
        for _ in range(_NEWTON_ITERS):
            h = 1e-7
            j0 = (residuals_at(x[0] + h, x[1]) - residuals_at(x[0] - h, x[1])) / (2 * h)
            j1 = (residuals_at(x[0], x[1] + h) - residuals_at(x[0], x[1] - h)) / (2 * h)
            J = np.column_stack([j0, j1])
            det = J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
            if abs(det) < 1e-300:
                return None
            step = np.linalg.solve(J, fx)
            lam = 1.0
            for _ in range(30):
                xn = x - lam * step
                if not (1e-12 < xn[0] < math.pi - 1e-12):
                    lam *= 0.5
                    continue
                fn = residuals_at(*xn)
                if np.max(np.abs(fn)) < np.max(np.abs(fx)):
                    x, fx = xn, fn
                    break
                lam *= 0.5
            else:
                break
            if np.max(np.abs(fx)) < 1e-13:
                return x
        return x if np.max(np.abs(fx)) < 1e-10 else None

    centers = []
    cells = []
    tol = _DEDUP_REL * tri.diameter
    for i_psi, j_phi in seeds:
        sol = refine(phis[j_phi] + 0.5 * dphi, psis[i_psi] + 0.5 * dpsi)
        if sol is None:
            continue
        pt = point_at(sol[0], sol[1])
        if any(np.linalg.norm(pt - cc) <= tol for cc, _ in centers):
            continue
        centers.append((pt, (int(j_phi), int(i_psi))))
        cells.append((int(j_phi), int(i_psi)))

    too_coarse = False
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            if (abs(cells[i][0] - cells[j][0]) <= 3
                    and min(abs(cells[i][1] - cells[j][1]),
                            grid - abs(cells[i][1] - cells[j][1])) <= 3):
                too_coarse = True

    triplets = []
    pts_only = []
    for pt, _ in centers:
        pts_only.append(pt)
        d = tuple(float(np.linalg.norm(pt - vv)) for vv in verts)
        if not any(max(abs(d[0] - e[0]), abs(d[1] - e[1]), abs(d[2] - e[2]))
                   <= tol for e in triplets):
            triplets.append(d)
    return OracleResult(
        centers=tuple(pts_only),
        triplets=tuple(sorted(triplets)),
        grid_resolution=(grid, grid),
        grid_too_coarse=too_coarse,
    )


@dataclass(frozen=True)
class OracleComparison:
    count_match: bool
    position_match: bool
    max_center_distance: float
    unmatched_solver: tuple
    unmatched_oracle: tuple

    @property
    def ok(self) -> bool:
        return self.count_match and self.position_match


def compare(solver_centers, oracle_result: OracleResult,
            tol: float) -> OracleComparison:
    """Greedy bijection between solver-predicted centers and oracle centers."""
    sc = [np.asarray(p, float) for p in solver_centers]
    oc = [np.asarray(p, float) for p in oracle_result.centers]
    used = [False] * len(oc)
    max_d = 0.0
    unmatched_s = []
    for p in sc:
        best, bi = math.inf, -1
        for i, q in enumerate(oc):
            if used[i]:
                continue
            d = float(np.linalg.norm(p - q))
            if d < best:
                best, bi = d, i
        if bi >= 0 and best <= tol:
            used[bi] = True
            max_d = max(max_d, best)
        else:
            unmatched_s.append(p)
    unmatched_o = [oc[i] for i in range(len(oc)) if not used[i]]
    return OracleComparison(
        count_match=len(sc) == len(oc),
        position_match=not unmatched_s and not unmatched_o,
        max_center_distance=max_d,
        unmatched_solver=tuple(unmatched_s),
        unmatched_oracle=tuple(unmatched_o),
    )

"""Command-line frontend: scene ingestion and solve/region/sweep/verify/oracle.

Exit codes: 0 success, 2 validation error, 3 optical center on a toroid pair,
4 degenerate sweep path, 5 theorem violation found.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from ._fmt import csv_line, to_json
from .errors import (
    DegenerateTriangle,
    DomainError,
    NoRealRoots,
    OnChordLine,
    OnToroidPair,
    P3PError,
    PathDegenerate,
    PlanarCenter,
    SamplingStarved,
    SceneError,
    VertexCoincidence,
)
from .experiments import (
    SweepConfig,
    sweep_path,
    verify_crossing_theorems,
    verify_lemma_suite,
    verify_outside_theorems,
)
from .geom import (
    TOROID_LABELS,
    ControlTriangle,
    ViewAngles,
    classify_region,
    subtended_angles,
    triangle_from_sides,
)
from .oracle import brute_force_solve, compare
from .quartic import grunert_coefficients
from .solver import SOLUTION, positions_from_triplet, solve_p3p

_PLANAR_REL = 1e-9

SWEEP_COLUMNS = ("t", "alpha_rad", "beta_rad", "gamma_rad",
                 "status_TA", "status_TpiA", "status_TB", "status_TpiB",
                 "status_TC", "status_TpiC",
                 "n_solutions", "n_ssolutions", "min_abs_element")
EVENT_COLUMNS = ("toroid", "t_cross", "direction", "count_before",
                 "count_after", "verdict")


# ---------------------------------------------------------------------------
# scene ingestion


def _require(cond: bool, msg: str):
    if not cond:
        raise SceneError(msg)


def _finite_number(scene_part: dict, field: str) -> float:
    _require(field in scene_part, f"missing field {field!r}")
    v = scene_part[field]
    _require(isinstance(v, (int, float)) and not isinstance(v, bool),
             f"field {field!r} must be a number")
    _require(math.isfinite(v), f"field {field!r} must be finite")
    return float(v)


def _finite_point(scene_part: dict, field: str) -> np.ndarray:
    _require(field in scene_part, f"missing field {field!r}")
    v = scene_part[field]
    _require(isinstance(v, (list, tuple)) and len(v) == 3,
             f"field {field!r} must be a 3-element array")
    out = []
    for i, x in enumerate(v):
        _require(isinstance(x, (int, float)) and not isinstance(x, bool)
                 and math.isfinite(x), f"field {field!r}[{i}] must be a finite number")
        out.append(float(x))
    return np.array(out)


def load_scene(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            scene = json.load(fh)
    except OSError as exc:
        raise SceneError(f"cannot read scene file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SceneError(
            f"malformed JSON in {path!r} at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    _require(isinstance(scene, dict), "scene root must be a JSON object")
    return scene


def _scene_triangle(scene: dict):
    """(triangle, to_canonical) where to_canonical maps input-frame points into
    the canonical frame the triangle lives in (identity for sides mode)."""
    _require("triangle" in scene, "missing field 'triangle'")
    t = scene["triangle"]
    _require(isinstance(t, dict), "field 'triangle' must be an object")
    mode = t.get("mode")
    if mode == "sides":
        a = _finite_number(t, "a")
        b = _finite_number(t, "b")
        c = _finite_number(t, "c")
        return triangle_from_sides(a, b, c), lambda p: np.asarray(p, float)
    if mode == "vertices":
        A = _finite_point(t, "A")
        B = _finite_point(t, "B")
        C = _finite_point(t, "C")
        a = float(np.linalg.norm(B - C))
        b = float(np.linalg.norm(A - C))
        c = float(np.linalg.norm(A - B))
        tri = triangle_from_sides(a, b, c)
        ex = (B - A) / c
        w = C - A
        ey = w - np.dot(w, ex) * ex
        ey /= np.linalg.norm(ey)
        ez = np.cross(ex, ey)

        def to_canonical(p):
            d = np.asarray(p, float) - A
            return np.array([np.dot(d, ex), np.dot(d, ey), np.dot(d, ez)])

        return tri, to_canonical
    raise SceneError("triangle.mode must be 'sides' or 'vertices'")


def _scene_view(scene: dict, tri: ControlTriangle, to_canonical):
    """("center", point) or ("angles", ViewAngles), with planar centers rejected."""
    _require("view" in scene, "missing field 'view'")
    v = scene["view"]
    _require(isinstance(v, dict), "field 'view' must be an object")
    mode = v.get("mode")
    if mode == "center":
        O = to_canonical(_finite_point(v, "O"))
        if abs(O[2]) <= _PLANAR_REL * tri.diameter:
            raise PlanarCenter(
                "optical center lies on the control plane within tolerance; "
                "the coplanar case is not classified")
        return "center", O
    if mode == "angles":
        rad = [k in v for k in ("alpha_rad", "beta_rad", "gamma_rad")]
        deg = [k in v for k in ("alpha_deg", "beta_deg", "gamma_deg")]
        if any(rad):
            _require(all(rad), "angle fields must be a complete set "
                     "(alpha_rad, beta_rad, gamma_rad)")
            _require(not any(deg), "mixed angle units: use only _rad or only _deg fields")
            ang = ViewAngles(_finite_number(v, "alpha_rad"),
                             _finite_number(v, "beta_rad"),
                             _finite_number(v, "gamma_rad"))
        elif any(deg):
            _require(all(deg), "angle fields must be a complete set "
                     "(alpha_deg, beta_deg, gamma_deg)")
            ang = ViewAngles(math.radians(_finite_number(v, "alpha_deg")),
                             math.radians(_finite_number(v, "beta_deg")),
                             math.radians(_finite_number(v, "gamma_deg")))
        else:
            raise SceneError("view mode 'angles' needs alpha/beta/gamma fields "
                             "in _rad or _deg")
        return "angles", ang
    raise SceneError("view.mode must be 'center' or 'angles'")


def _scene_path(scene: dict, to_canonical):
    _require("path" in scene, "sweep needs a 'path' object with 'start' and 'end'")
    p = scene["path"]
    _require(isinstance(p, dict), "field 'path' must be an object")
    return to_canonical(_finite_point(p, "start")), to_canonical(_finite_point(p, "end"))


# ---------------------------------------------------------------------------
# output plumbing


def _flatten(obj, prefix=""):
    rows = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            rows.extend(_flatten(v, f"{prefix}{k}." if not prefix else f"{prefix}{k}."))
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            rows.extend(_flatten(v, f"{prefix}{i}."))
    else:
        rows.append((prefix[:-1], obj))
    return rows


def _emit(payload: dict, args) -> None:
    if args.format == "csv":
        lines = ["key,value"]
        lines += [csv_line((k, v if v is not None else "")) for k, v in _flatten(payload)]
        text = "\n".join(lines) + "\n"
    else:
        text = to_json(payload) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _region_dict(region) -> dict:
    return {
        "statuses": {k: region.statuses[k] for k in TOROID_LABELS},
        "excesses_rad": {k: region.excesses[k] for k in TOROID_LABELS},
        "outside_union": region.outside_union,
        "on_outer_surface": region.on_outer_surface,
        "inside_intersection_of_ac": region.inside_intersection_of_ac,
    }


def _triangle_dict(tri: ControlTriangle) -> dict:
    return {"a": tri.a, "b": tri.b, "c": tri.c,
            "angle_a_rad": tri.angle_a, "angle_b_rad": tri.angle_b,
            "angle_c_rad": tri.angle_c}


def _triplet_dict(t, tri: ControlTriangle) -> dict:
    d = {"s1": t.s1, "s2": t.s2, "s3": t.s3, "u": t.u, "v": t.v,
         "class": t.class_tag, "residual": t.residual,
         "root_multiplicity": t.root_multiplicity}
    if t.supplement_pair is not None:
        d["supplement_pair"] = t.supplement_pair
    if t.zero_index is not None:
        d["zero_index"] = t.zero_index
    if t.class_tag == SOLUTION:
        d["positions"] = [[float(x) for x in p]
                          for p in positions_from_triplet(t, tri)]
    return d


# ---------------------------------------------------------------------------
# commands


def cmd_solve(args) -> int:
    scene = load_scene(args.scene)
    tri, to_canonical = _scene_triangle(scene)
    mode, view = _scene_view(scene, tri, to_canonical)
    if mode == "center":
        center = view
        ang = subtended_angles(center, tri)
    else:
        center = None
        ang = view
    payload = {"triangle": _triangle_dict(tri),
               "view": {"alpha_rad": ang.alpha, "beta_rad": ang.beta,
                        "gamma_rad": ang.gamma}}
    try:
        rep = solve_p3p(tri, ang, center=center, residual_tol=args.tol)
    except NoRealRoots:
        q = grunert_coefficients(tri, ang)
        payload.update({
            "quartic": {"a4": q.a4, "a3": q.a3, "a2": q.a2, "a1": q.a1, "a0": q.a0},
            "roots": [],
            "triplets": [],
            "counts": {"solutions": 0, "weighted_solutions": 0, "s_solutions": 0,
                       "degenerate_zeros": 0, "positive_roots": 0, "complex_pairs": 2},
        })
        if center is not None:
            payload["region"] = _region_dict(classify_region(center, tri))
        _emit(payload, args)
        return 0
    q = rep.quartic
    payload.update({
        "quartic": {"a4": q.a4, "a3": q.a3, "a2": q.a2, "a1": q.a1, "a0": q.a0},
        "roots": [{"value": v, "multiplicity": m} for v, m in rep.root_set.roots],
        "triplets": [_triplet_dict(t, tri) for t in rep.triplets],
        "counts": {
            "solutions": rep.solution_count,
            "weighted_solutions": sum(t.root_multiplicity for t in rep.solutions),
            "s_solutions": rep.s_solution_count,
            "degenerate_zeros": len(rep.degenerate_zeros),
            "positive_roots": rep.positive_root_count,
            "complex_pairs": rep.complex_pair_count,
        },
    })
    if rep.region is not None:
        payload["region"] = _region_dict(rep.region)
    _emit(payload, args)
    return 0


def cmd_region(args) -> int:
    scene = load_scene(args.scene)
    tri, to_canonical = _scene_triangle(scene)
    mode, view = _scene_view(scene, tri, to_canonical)
    if mode != "center":
        raise SceneError("region classification needs view mode 'center' "
                         "(angles carry no position)")
    region = classify_region(view, tri)
    payload = {"triangle": _triangle_dict(tri),
               "center": [float(x) for x in view]}
    payload.update(_region_dict(region))
    _emit(payload, args)
    return 0


def cmd_sweep(args) -> int:
    if not args.out:
        raise SceneError("sweep writes CSV files and needs --out")
    scene = load_scene(args.scene)
    tri, to_canonical = _scene_triangle(scene)
    _scene_view(scene, tri, to_canonical)  # schema completeness
    start, end = _scene_path(scene, to_canonical)
    cfg = SweepConfig(tri, tuple(float(x) for x in start),
                      tuple(float(x) for x in end),
                      steps=args.steps, delta=args.delta, seed=args.seed)
    events = sweep_path(cfg)

    seg = end - start
    rows = []
    for i in range(args.steps + 1):
        t = i / args.steps
        pt = start + t * seg
        ang = subtended_angles(pt, tri)
        region = classify_region(pt, tri)
        shift = 0.0
        while True:
            try:
                rep = solve_p3p(tri, subtended_angles(start + (t + shift) * seg, tri),
                                residual_tol=args.tol)
                n_sol, n_ssol = rep.solution_count, rep.s_solution_count
                minabs = rep.min_abs_element()
                break
            except OnToroidPair:
                # the step landed exactly on the degenerate pair: nudge along t
                shift = 1e-9 if shift == 0.0 else -1e-9
                if shift < 0.0 and i == 0:
                    shift = 2e-9
            except NoRealRoots:
                n_sol, n_ssol, minabs = 0, 0, math.inf
                break
        rows.append((t, ang.alpha, ang.beta, ang.gamma,
                     *(region.statuses[k] for k in TOROID_LABELS),
                     n_sol, n_ssol, minabs))

    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(csv_line(SWEEP_COLUMNS) + "\n")
        for row in rows:
            fh.write(csv_line(row) + "\n")
    events_path = args.out + ".events.csv"
    with open(events_path, "w", encoding="utf-8") as fh:
        fh.write(csv_line(EVENT_COLUMNS) + "\n")
        for e in events:
            fh.write(csv_line((e.toroid_label, e.t_cross, e.direction,
                               e.count_before, e.count_after, e.verdict)) + "\n")
    sys.stdout.write(to_json({"rows": len(rows), "events": len(events),
                              "out": args.out, "events_out": events_path}) + "\n")
    return 0


def cmd_verify(args) -> int:
    if args.triangle is not None:
        tri = triangle_from_sides(*args.triangle)
    else:
        tri = triangle_from_sides(1.0, 1.0, 1.0)
    if args.theorem in ("1", "2"):
        rep = verify_outside_theorems(tri, args.trials, args.seed)
        rep.theorem_id = args.theorem
    elif args.theorem in ("3", "4", "5"):
        rep = verify_crossing_theorems(tri, args.trials, args.seed)[args.theorem]
    else:
        rep = verify_lemma_suite(tri, args.trials, args.seed)
    payload = rep.to_dict()
    _emit(payload, args)
    return 5 if rep.violations > 0 else 0


def cmd_oracle(args) -> int:
    if args.grid < 64:
        raise SceneError(f"--grid must be at least 64; got {args.grid}")
    scene = load_scene(args.scene)
    tri, to_canonical = _scene_triangle(scene)
    mode, view = _scene_view(scene, tri, to_canonical)
    ang = subtended_angles(view, tri) if mode == "center" else view
    try:
        rep = solve_p3p(tri, ang, residual_tol=args.tol)
        solver_positions = []
        for t in rep.solutions:
            solver_positions.extend(positions_from_triplet(t, tri))
        n_solutions = rep.solution_count
    except NoRealRoots:
        solver_positions = []
        n_solutions = 0
    ores = brute_force_solve(tri, ang, grid=args.grid)
    comp = compare(solver_positions, ores, tol=1e-4 * tri.diameter)
    payload = {
        "solver_solution_count": n_solutions,
        "solver_center_count": len(solver_positions),
        "oracle_center_count": ores.center_count,
        "oracle_distinct_triplet_count": ores.distinct_triplet_count,
        "count_match": comp.count_match,
        "position_match": comp.position_match,
        "max_center_distance": comp.max_center_distance,
        "grid_too_coarse": ores.grid_too_coarse,
        "grid": list(ores.grid_resolution),
        "unmatched_solver": [[float(x) for x in p] for p in comp.unmatched_solver],
        "unmatched_oracle": [[float(x) for x in p] for p in comp.unmatched_oracle],
    }
    _emit(payload, args)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scene", help="scene JSON file")
    common.add_argument("--tol", type=float, default=1e-8,
                        help="residual tolerance for accepting a depth triplet")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write primary output to this file")

    ap = argparse.ArgumentParser(
        prog="p3p-toroids",
        description="Three-point pose: depth solving, toroid region "
                    "classification, crossing sweeps, theorem campaigns.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common],
                       help="solve the scene and classify every depth triplet")
    p.set_defaults(func=cmd_solve, needs_scene=True)
    p = sub.add_parser("region", parents=[common],
                       help="classify the optical center against the six toroids")
    p.set_defaults(func=cmd_region, needs_scene=True)
    p = sub.add_parser("sweep", parents=[common],
                       help="walk a segment; emit per-step CSV and crossing events")
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--delta", type=float, default=1e-4)
    p.set_defaults(func=cmd_sweep, needs_scene=True)
    p = sub.add_parser("verify", parents=[common],
                       help="run a verification campaign")
    p.add_argument("--theorem", required=True,
                   choices=("1", "2", "3", "4", "5", "lemmas"))
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--triangle", type=float, nargs=3, metavar=("A", "B", "C"),
                   help="triangle side lengths (default equilateral 1 1 1)")
    p.set_defaults(func=cmd_verify, needs_scene=False)
    p = sub.add_parser("oracle", parents=[common],
                       help="cross-check the solver against the grid oracle")
    p.add_argument("--grid", type=int, default=512)
    p.set_defaults(func=cmd_oracle, needs_scene=True)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.needs_scene and not args.scene:
        print("error: this command needs --scene", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except OnToroidPair as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PathDegenerate as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (SceneError, DomainError, DegenerateTriangle, VertexCoincidence,
            OnChordLine, SamplingStarved) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except P3PError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Verification campaigns: sampling, path sweeps, theorem and lemma checks.

Campaign sizes here are kept small; the full-size runs live in the acceptance
suite.
"""

import json
import math

import numpy as np
import pytest

from p3p_toroids import (
    DomainError,
    SweepConfig,
    TheoremReport,
    classify_region,
    random_triangle,
    sample_outside_union,
    subtended_angles,
    solve_p3p,
    sweep_path,
    synthesize_pose,
    triangle_from_sides,
    triangle_toroids,
    verify_crossing_theorems,
    verify_lemma_suite,
    verify_outside_theorems,
)

EQUILATERAL = triangle_from_sides(1.0, 1.0, 1.0)
OBTUSE = triangle_from_sides(2.0, 2.9, 1.4)


def test_sweep_config_validation():
    kw = dict(tri=EQUILATERAL, start=(3.0, 0.0, 1.0), end=(0.5, 0.3, 0.2))
    SweepConfig(steps=100, delta=1e-4, **kw)
    with pytest.raises(DomainError):
        SweepConfig(steps=50, **kw)
    with pytest.raises(DomainError):
        SweepConfig(steps=200, delta=0.0, **kw)
    with pytest.raises(DomainError):
        SweepConfig(steps=200, delta=0.01, **kw)


def test_sample_outside_union_is_outside_and_deterministic():
    pts = sample_outside_union(EQUILATERAL, 50, seed=9)
    assert len(pts) == 50
    for p in pts:
        assert classify_region(p, EQUILATERAL).outside_union
        assert abs(p[2]) > 1e-6 * EQUILATERAL.diameter
    again = sample_outside_union(EQUILATERAL, 50, seed=9)
    assert all(np.array_equal(a, b) for a, b in zip(pts, again))


def test_no_crossing_path_emits_no_events():
    # both endpoints far outside the union, segment well clear of it
    cfg = SweepConfig(
        tri=EQUILATERAL,
        start=(4.0, 4.0, 3.0),
        end=(4.0, -4.0, 3.0),
        steps=150,
        delta=1e-4,
    )
    assert sweep_path(cfg) == []


def test_element_crossing_adjudicated():
    # entering TA from far outside along the symmetry axis region: the first
    # crossing must change the count by one
    tri = EQUILATERAL
    cfg = SweepConfig(
        tri=tri,
        start=(0.47, 0.31, 2.5),
        end=(0.47, 0.31, 0.35),
        steps=400,
        delta=1e-4,
    )
    events = sweep_path(cfg)
    assert events
    first = events[0]
    assert abs(first.count_after - first.count_before) == 1
    assert first.verdict in ("ConsistentThm3", "ConsistentThm4")


def test_outside_theorems_small_run():
    rep = verify_outside_theorems(EQUILATERAL, trials=200, seed=11)
    assert isinstance(rep, TheoremReport)
    assert rep.trials == 200
    assert rep.violations == 0
    assert rep.exceptional == 0
    counts = rep.tallies
    assert set(counts) <= {"count_2", "count_4"}
    assert sum(counts.values()) == 200


def test_crossing_theorems_small_run_clean():
    reports = verify_crossing_theorems(EQUILATERAL, n_paths=6, seed=11)
    assert set(reports) == {"3", "4", "5"}
    for rep in reports.values():
        assert rep.violations == 0
        assert rep.wall_time > 0.0
    assert reports["3"].trials == 18  # one transversal per element toroid per path
    assert reports["5"].trials == 18


def test_supplementary_crossing_has_vanishing_element():
    # every consistent supplementary-surface crossing pins a triplet element
    # at zero on the surface itself
    reports = verify_crossing_theorems(EQUILATERAL, n_paths=4, seed=3)
    events = reports["5"].samples.get("consistent", [])
    assert events
    for ev in events:
        assert ev["count_after"] == ev["count_before"]
        assert ev["s_count_after"] == ev["s_count_before"]
        assert ev["min_abs_element_at_cross"] < 1e-6 * EQUILATERAL.diameter


def test_obtuse_triangle_downgrades_rather_than_violates():
    reports = verify_crossing_theorems(OBTUSE, n_paths=4, seed=11)
    for rep in reports.values():
        assert rep.violations == 0


def test_lemma_suite_equilateral_and_right():
    for tri in (EQUILATERAL, triangle_from_sides(3.0, 4.0, 5.0)):
        rep = verify_lemma_suite(tri, trials=300, seed=7)
        assert rep.violations == 0
        # one circumsphere draw plus one toroid-surface draw per trial
        assert rep.trials == 600
        assert rep.tallies == {"circumsphere_points": 300, "toroid_points": 300}


def test_synthesized_pose_recovers_depths():
    rng = np.random.default_rng(13)
    for _ in range(50):
        tri = random_triangle(rng, kind="acute" if rng.random() < 0.5 else "obtuse")
        O, depths, ang = synthesize_pose(tri, rng)
        rep = solve_p3p(tri, ang)
        best = min(
            max(abs(t.s1 - depths[0]), abs(t.s2 - depths[1]), abs(t.s3 - depths[2]))
            for t in rep.solutions
        )
        assert best <= 1e-6 * max(depths)


def test_report_serialization_is_stable():
    a = verify_outside_theorems(OBTUSE, trials=100, seed=21)
    b = verify_outside_theorems(OBTUSE, trials=100, seed=21)
    ja = json.dumps(a.to_dict(), sort_keys=True)
    jb = json.dumps(b.to_dict(), sort_keys=True)
    assert ja == jb
    assert "wall_time" not in ja
    c = verify_outside_theorems(OBTUSE, trials=100, seed=22)
    assert json.dumps(c.to_dict(), sort_keys=True) != ja


def test_random_triangle_kinds():
    rng = np.random.default_rng(2)
    for _ in range(40):
        acute = random_triangle(rng, kind="acute")
        assert max(acute.angles) < 0.5 * math.pi
        obtuse = random_triangle(rng, kind="obtuse")
        assert max(obtuse.angles) > 0.5 * math.pi

"""Command-line entry points, exercised in-process through main(argv)."""

import json
import math

import pytest

from p3p_toroids import cli

SQRT3 = math.sqrt(3.0)


def _write_scene(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture
def axis_scene(tmp_path):
    return _write_scene(tmp_path, "axis.json", {
        "triangle": {"mode": "sides", "a": 1.0, "b": 1.0, "c": 1.0},
        "view": {"mode": "center", "O": [0.5, 1.0 / (2.0 * SQRT3), 1.0]},
    })


@pytest.fixture
def sweep_scene(tmp_path):
    return _write_scene(tmp_path, "sweep.json", {
        "triangle": {"mode": "sides", "a": 1.0, "b": 1.0, "c": 1.0},
        "view": {"mode": "center", "O": [0.47, 0.31, 2.5]},
        "path": {"start": [0.47, 0.31, 2.5], "end": [0.47, 0.31, 0.35]},
    })


def test_solve_axis_scene(axis_scene, tmp_path, capsys):
    out = tmp_path / "solve.json"
    assert cli.main(["solve", "--scene", axis_scene, "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["counts"]["solutions"] == 4
    assert payload["counts"]["s_solutions"] == 0
    assert payload["counts"]["complex_pairs"] == 0
    roots = [(r["value"], r["multiplicity"]) for r in payload["roots"]]
    assert roots == [(0.25, 1), (1.0, 2), (4.0, 1)]
    q = payload["quartic"]
    assert (q["a4"], q["a3"], q["a2"], q["a1"], q["a0"]) == (
        -0.5625, 3.515625, -5.90625, 3.515625, -0.5625)
    # at height 1 each side is seen at ~51 deg < 60 deg: outside every toroid
    assert payload["region"]["outside_union"] is True


def test_solve_angles_scene_in_degrees(tmp_path, capsys):
    deg = math.degrees(math.acos(0.625))
    scene = _write_scene(tmp_path, "deg.json", {
        "triangle": {"mode": "sides", "a": 1.0, "b": 1.0, "c": 1.0},
        "view": {"mode": "angles", "alpha_deg": deg, "beta_deg": deg,
                 "gamma_deg": deg},
    })
    assert cli.main(["solve", "--scene", scene]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["counts"]["solutions"] == 4
    assert "region" not in payload  # no position given, none inferable


def test_solve_vertices_triangle(tmp_path, capsys):
    scene = _write_scene(tmp_path, "verts.json", {
        "triangle": {"mode": "vertices",
                     "A": [0.0, 0.0, 0.0], "B": [3.0, 0.0, 0.0],
                     "C": [3.0, 4.0, 0.0]},
        "view": {"mode": "center", "O": [1.0, 1.0, 2.0]},
    })
    assert cli.main(["solve", "--scene", scene]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["counts"]["solutions"] >= 1


def test_region_subcommand(axis_scene, tmp_path, capsys):
    assert cli.main(["region", "--scene", axis_scene]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert all(v == "Outside" for v in payload["statuses"].values())
    assert payload["outside_union"] is True
    # hovering just off the plane over the circumcenter: inside the three
    # element toroids, outside the supplementary ones
    near = _write_scene(tmp_path, "near.json", {
        "triangle": {"mode": "sides", "a": 1.0, "b": 1.0, "c": 1.0},
        "view": {"mode": "center", "O": [0.5, 1.0 / (2.0 * SQRT3), 1e-3]},
    })
    assert cli.main(["region", "--scene", near]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["statuses"]["TA"] == "Inside"
    assert payload["statuses"]["TB"] == "Inside"
    assert payload["statuses"]["TC"] == "Inside"
    assert payload["statuses"]["TpiA"] == "Outside"
    assert payload["outside_union"] is False


def test_degenerate_triangle_rejected(tmp_path, capsys):
    scene = _write_scene(tmp_path, "flat.json", {
        "triangle": {"mode": "sides", "a": 1.0, "b": 1.0, "c": 2.0},
        "view": {"mode": "center", "O": [0.0, 0.0, 1.0]},
    })
    assert cli.main(["solve", "--scene", scene]) == 2


def test_vertex_angle_view_exits_three(tmp_path):
    # alpha equal to the vertex angle of A puts the view on a toroid pair,
    # where the quartic degenerates
    scene = _write_scene(tmp_path, "pair.json", {
        "triangle": {"mode": "sides", "a": 3.0, "b": 4.0, "c": 5.0},
        "view": {"mode": "angles",
                 "alpha_rad": math.acos(0.8), "beta_rad": 0.7,
                 "gamma_rad": 0.8},
    })
    assert cli.main(["solve", "--scene", scene]) == 3


def test_planar_center_rejected(tmp_path):
    scene = _write_scene(tmp_path, "planar.json", {
        "triangle": {"mode": "sides", "a": 1.0, "b": 1.0, "c": 1.0},
        "view": {"mode": "center", "O": [2.0, 3.0, 0.0]},
    })
    assert cli.main(["solve", "--scene", scene]) == 2


def test_missing_scene_is_usage_error(capsys):
    assert cli.main(["solve"]) == 2
    assert "needs --scene" in capsys.readouterr().err


def test_sweep_requires_out(sweep_scene):
    assert cli.main(["sweep", "--scene", sweep_scene]) == 2


def test_sweep_rejects_small_step_count(sweep_scene, tmp_path):
    out = tmp_path / "s.csv"
    assert cli.main(["sweep", "--scene", sweep_scene, "--out", str(out),
                     "--steps", "50"]) == 2


def test_sweep_writes_both_csvs(sweep_scene, tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    rc = cli.main(["sweep", "--scene", sweep_scene, "--out", str(out),
                   "--steps", "150"])
    assert rc == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["rows"] == 151
    assert summary["out"] == str(out)
    lines = out.read_text().splitlines()
    assert lines[0] == ("t,alpha_rad,beta_rad,gamma_rad,"
                        "status_TA,status_TpiA,status_TB,status_TpiB,"
                        "status_TC,status_TpiC,"
                        "n_solutions,n_ssolutions,min_abs_element")
    assert len(lines) == 152
    ev_lines = (tmp_path / "sweep.csv.events.csv").read_text().splitlines()
    assert ev_lines[0] == "toroid,t_cross,direction,count_before,count_after,verdict"
    assert summary["events"] == len(ev_lines) - 1
    assert summary["events"] >= 1


def test_sweep_output_is_byte_stable(sweep_scene, tmp_path, capsys):
    outs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        assert cli.main(["sweep", "--scene", sweep_scene, "--out", str(out),
                         "--steps", "150"]) == 0
        capsys.readouterr()
        outs.append((out.read_bytes(),
                     (tmp_path / (name + ".events.csv")).read_bytes()))
    assert outs[0] == outs[1]


def test_path_through_vertex_exits_four(tmp_path):
    scene = _write_scene(tmp_path, "vert_path.json", {
        "triangle": {"mode": "sides", "a": 1.0, "b": 1.0, "c": 1.0},
        "view": {"mode": "center", "O": [0.0, 0.0, 1.0]},
        "path": {"start": [0.0, 0.0, 1.0], "end": [0.0, 0.0, -1.0]},
    })
    assert cli.main(["sweep", "--scene", scene, "--out", "/tmp/x.csv"]) == 4


def test_verify_exit_codes_and_payload(capsys):
    rc = cli.main(["verify", "--theorem", "1", "--trials", "150", "--seed", "11"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["theorem_id"] == "1"
    assert payload["trials"] == 150
    assert payload["violations"] == 0
    assert payload["seed"] == 11


def test_verify_byte_identical_across_runs(capsys):
    texts = []
    for _ in range(2):
        assert cli.main(["verify", "--theorem", "lemmas", "--trials", "200",
                         "--seed", "4", "--triangle", "3", "4", "5"]) == 0
        texts.append(capsys.readouterr().out)
    assert texts[0] == texts[1]


def test_oracle_subcommand(axis_scene, capsys):
    rc = cli.main(["oracle", "--scene", axis_scene, "--grid", "128"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["solver_solution_count"] == 4
    assert payload["solver_center_count"] == 8
    assert payload["oracle_center_count"] == 8
    assert payload["oracle_distinct_triplet_count"] == 4
    assert payload["count_match"] is True
    assert payload["position_match"] is True


def test_oracle_rejects_tiny_grid(axis_scene):
    assert cli.main(["oracle", "--scene", axis_scene, "--grid", "32"]) == 2

import json
import math

import pytest

from mdpkit.cli import main
from mdpkit.formats import dump_domain, dump_scenario, load_scenario, Scenario
from mdpkit.geom import Domain, Point2

SQUARE = Domain([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def square_file(tmp_path):
    f = tmp_path / "square.mdp.json"
    f.write_text(dump_domain(SQUARE, name="square"))
    return f


@pytest.fixture
def center_scenario_file(tmp_path):
    sc = Scenario(domain=SQUARE, s=0.5, centers=(Point2(0.5, 0.5),))
    f = tmp_path / "center.scenario.mdp.json"
    f.write_text(dump_scenario(sc))
    return f


def test_check_uncovered_exit_1_with_witness(square_file, center_scenario_file, capsys):
    rc = main(["check", str(square_file), str(center_scenario_file), "--s", "0.5"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "status: uncovered" in out
    assert "witness:" in out


def test_check_covered_exit_0(square_file, center_scenario_file, capsys):
    rc = main(["check", str(square_file), str(center_scenario_file), "--s", "0.8"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "status: covered" in out
    assert "margin:" in out


def test_check_malformed_file_exit_2(square_file, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    rc = main(["check", str(square_file), str(bad), "--s", "0.5"])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_mst_square_corners(tmp_path, capsys):
    sc = Scenario(domain=SQUARE, s=1.0,
                  centers=tuple(Point2(*p) for p in [(0, 0), (1, 0), (1, 1), (0, 1)]))
    f = tmp_path / "sq.scenario.mdp.json"
    f.write_text(dump_scenario(sc))
    rc = main(["mst", str(f)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "length: 3.000000" in out


def test_mst_equilateral(tmp_path, capsys):
    pts = [(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)]
    sc = Scenario(domain=SQUARE, s=1.0, centers=tuple(Point2(*p) for p in pts))
    f = tmp_path / "eq.scenario.mdp.json"
    f.write_text(dump_scenario(sc))
    rc = main(["mst", str(f)])
    assert rc == 0
    assert "length: 2.000000" in capsys.readouterr().out


def test_mst_duplicate_centers_exit_2(tmp_path, capsys):
    obj = {
        "format": "mdp.scenario/1", "s": 1.0,
        "centers": [[0, 0], [0, 0]],
        "domain": {"boundary": [[0, 0], [1, 0], [1, 1], [0, 1]], "holes": []},
    }
    f = tmp_path / "dup.scenario.mdp.json"
    f.write_text(json.dumps(obj))
    rc = main(["mst", str(f)])
    assert rc == 2
    assert "degenerate" in capsys.readouterr().err


def test_prongs_segment_writes_files(tmp_path, capsys):
    prefix = tmp_path / "out" / "seg"
    rc = main(["prongs", "--segment", "1.0", "--s", "0.25", "--n", "10",
               "--out-prefix", str(prefix)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "excess: 0.240000" in out
    assert "centers: 24" in out
    assert "certified: covered" in out
    assert (tmp_path / "out" / "seg.scenario.mdp.json").exists()
    assert (tmp_path / "out" / "seg.tree.mdp.json").exists()
    assert (tmp_path / "out" / "seg.svg").exists()


def test_prongs_n_too_small_exit_2(capsys):
    rc = main(["prongs", "--segment", "1.0", "--s", "0.25", "--n", "2"])
    assert rc == 2
    err = capsys.readouterr().err
    assert "minimum n = 3" in err


def test_prongs_n100_excess(tmp_path, capsys):
    rc = main(["prongs", "--segment", "1.0", "--s", "0.25", "--n", "100",
               "--out-prefix", str(tmp_path / "p100")])
    assert rc == 0
    assert "excess: 0.020400" in capsys.readouterr().out


def test_optimize_tiny_domain_objective_zero(tmp_path, capsys):
    from mdpkit.geom import disk_polygon

    dom = disk_polygon(Point2(0, 0), 0.2, 48)
    f = tmp_path / "tiny.mdp.json"
    f.write_text(dump_domain(dom))
    out_f = tmp_path / "best.scenario.mdp.json"
    rc = main(["optimize", str(f), "--s", "0.4", "--n-max", "5",
               "--iters", "200", "--seed", "1", "--out", str(out_f)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "objective: 0.000000" in out
    saved = load_scenario(out_f.read_text())
    assert len(saved.centers) == 1


def test_optimize_seed_reproducible(square_file, tmp_path, capsys):
    outs = []
    for k in range(2):
        out_f = tmp_path / f"best{k}.json"
        rc = main(["optimize", str(square_file), "--s", "0.35", "--n-max", "8",
                   "--iters", "150", "--seed", "7", "--out", str(out_f)])
        assert rc == 0
        outs.append(out_f.read_text())
    assert outs[0] == outs[1]


def test_unreadable_file_exit_2(capsys):
    rc = main(["mst", "/nonexistent/path.json"])
    assert rc == 2


def test_check_bundled_two_hole_demo_flips(tmp_path, capsys):
    from importlib import resources

    data = resources.files("mdpkit.data")
    dom_f = tmp_path / "two_holes.mdp.json"
    dom_f.write_text(data.joinpath("two_holes.mdp.json").read_text())
    sc_f = tmp_path / "demo.scenario.mdp.json"
    sc_f.write_text(data.joinpath("two_holes_demo.scenario.mdp.json").read_text())

    rc_lo = main(["check", str(dom_f), str(sc_f), "--s", "0.28", "--tol", "1e-5"])
    out_lo = capsys.readouterr().out
    assert rc_lo == 1
    assert "witness:" in out_lo

    rc_hi = main(["check", str(dom_f), str(sc_f), "--s", "0.36", "--tol", "1e-5"])
    assert rc_hi == 0
    assert "status: covered" in capsys.readouterr().out

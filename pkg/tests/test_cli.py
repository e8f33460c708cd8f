"""End-to-end runs of the command-line entry point on tiny settings."""

import csv

import pytest
import yaml

from main import run

SMALL = (
    "n_side = 4\n"
    "realizations = 2\n"
    "samples = 200\n"
    "workers = 1\n"
    "grid_points = 11\n"
    "seed = 3\n"
)


@pytest.fixture
def small_cfg(tmp_path):
    path = tmp_path / "small.cfg"
    path.write_text(SMALL, encoding="utf-8")
    return path


def read_table(path):
    with open(path, encoding="utf-8") as f:
        lines = f.read().splitlines()
    body = [line for line in lines if not line.startswith("#")]
    comments = [line for line in lines if line.startswith("#")]
    rows = list(csv.reader(body))
    return rows[0], rows[1:], comments


def test_no_command_prints_help(capsys):
    assert run([]) == 0
    assert "poissonize" in capsys.readouterr().out


def test_show_config(capsys):
    assert run(["show-config", "--seed", "7"]) == 0
    shown = yaml.safe_load(capsys.readouterr().out)
    assert shown["seed"] == 7
    assert shown["beta"] == 3.52


def test_show_config_to_file(tmp_path, small_cfg):
    out = tmp_path / "effective.yaml"
    assert run(["show-config", "-c", str(small_cfg), "-o", str(out)]) == 0
    assert yaml.safe_load(out.read_text())["n_side"] == 4


def test_bad_config_exits_with_argument_code(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("beta = 4\nwhatever = 1\n", encoding="utf-8")
    assert run(["fig-sir", "-c", str(bad), "-o", str(tmp_path / "x.csv")]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error:")
    assert "bad.cfg:2:" in err


def test_bad_sigma_list_exits_with_argument_code(tmp_path, capsys):
    assert run(["converge", "--sigma-db", "12,0", "-o", str(tmp_path / "c.csv")]) == 2
    assert "ascending" in capsys.readouterr().err


def test_unwritable_output_exits_with_io_code(tmp_path, small_cfg, capsys):
    target = tmp_path / "missing" / "sir.csv"
    assert run(["fig-sir", "-c", str(small_cfg), "-o", str(target)]) == 4
    assert "error:" in capsys.readouterr().err


def test_out_is_required(small_cfg):
    with pytest.raises(SystemExit) as info:
        run(["fig-sir", "-c", str(small_cfg)])
    assert info.value.code == 2


def test_fig_sir_table(tmp_path, small_cfg):
    out = tmp_path / "sir.csv"
    assert run(["fig-sir", "-c", str(small_cfg), "-o", str(out)]) == 0
    header, rows, _ = read_table(out)
    assert header == ["sir_db", "cdf_hex_sim", "cdf_poisson_analytic", "cdf_explicit_eq13"]
    assert len(rows) == 11
    for row in rows:
        sir_db = float(row[0])
        assert 0.0 <= float(row[1]) <= 1.0
        assert 0.0 <= float(row[2]) <= 1.0
        if sir_db < 0:
            assert row[3] == ""
        else:
            assert float(row[3]) == pytest.approx(float(row[2]), abs=1e-4)


def test_fig_sir_is_reproducible(tmp_path, small_cfg):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(["fig-sir", "-c", str(small_cfg), "-o", str(first)]) == 0
    assert run(["fig-sir", "-c", str(small_cfg), "-o", str(second), "-j", "2"]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_seed_changes_the_simulation(tmp_path, small_cfg):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    run(["fig-sir", "-c", str(small_cfg), "-o", str(first)])
    run(["fig-sir", "-c", str(small_cfg), "-o", str(second), "--seed", "4"])
    assert first.read_bytes() != second.read_bytes()


def test_fig_sinr_table(tmp_path, small_cfg):
    out = tmp_path / "sinr.csv"
    assert run(["fig-sinr", "-c", str(small_cfg), "-o", str(out)]) == 0
    header, rows, _ = read_table(out)
    assert header == [
        "sinr_db", "cdf_hex_shadow", "cdf_hex_noshadow",
        "cdf_poisson_finite", "cdf_poisson_infinite", "cdf_explicit_eq18",
    ]
    assert len(rows) == 11
    infinite = [float(row[4]) for row in rows]
    assert infinite == sorted(infinite)
    assert all(row[5] == "" for row in rows if float(row[0]) < 0)


def test_converge_table(tmp_path, small_cfg, capsys):
    out = tmp_path / "converge.csv"
    assert run(["converge", "-c", str(small_cfg), "-o", str(out), "--sigma-db", "0,12"]) == 0
    header, rows, _ = read_table(out)
    assert header == ["sigma_db", "pass_fraction", "median_ks_d", "realizations"]
    assert [float(row[0]) for row in rows] == [0.0, 12.0]
    assert all(row[3] == "2" for row in rows)


@pytest.mark.slow
def test_fig_energy_table(tmp_path, small_cfg, capsys):
    out = tmp_path / "energy.csv"
    argv = ["fig-energy", "-c", str(small_cfg), "-o", str(out), "--p-grid-dbm", "0,20,40,60"]
    assert run(argv) == 0
    header, rows, comments = read_table(out)
    assert header == ["P_dbm", "ee_hex_shadow_sim", "ee_hex_noshadow_sim", "ee_poisson_analytic"]
    assert [float(row[0]) for row in rows] == [0.0, 20.0, 40.0, 60.0]
    assert all(float(v) > 0 for row in rows for v in row[1:])
    assert any(c.startswith("# argmax ee_poisson_analytic") for c in comments)
    assert any(c.startswith("# optimum ee_poisson_analytic") for c in comments)
    assert "argmax" in capsys.readouterr().out

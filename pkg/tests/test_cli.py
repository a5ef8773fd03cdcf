"""Command-line interface: exit codes, report schema, determinism."""

import json

import pytest

from periodmaps.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list_enumerates_the_catalog(capsys):
    code, out, _ = _run(capsys, "list")
    assert code == EXIT_OK
    data = json.loads(out)
    names = [e["map"] for e in data["maps"]]
    assert "lv3" in names and "qrt" in names
    lv3 = next(e for e in data["maps"] if e["map"] == "lv3")
    assert lv3["periods"] == [2, 3, 4, 5]


def test_verify_on_variety_passes(capsys):
    code, out, _ = _run(capsys, "verify", "--map", "lv3", "--period", "3",
                        "--seeds", "4")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["residual_summary"]["count"] == 4
    assert rep["residual_summary"]["passed"] == 4
    assert rep["residual_summary"]["max_residual"] <= 1e-9
    assert "wall_time_ms" in rep


def test_verify_lyness_needs_no_variety(capsys):
    code, out, _ = _run(capsys, "verify", "--map", "lyness5", "--period", "5",
                        "--seeds", "5")
    assert code == EXIT_OK
    assert json.loads(out)["residual_summary"]["passed"] == 5


def test_verify_off_variety_finds_no_returns(capsys):
    code, out, _ = _run(capsys, "verify", "--map", "lv3", "--off-variety",
                        "--seeds", "5", "--tol", "1e-7")
    assert code == EXIT_OK
    rep = json.loads(out)
    for v in rep["verdicts"]:
        assert v["pass"] and v["returns"] == []


def test_reports_are_deterministic_up_to_wall_time(capsys):
    argv = ("sample", "--map", "lv3", "--period", "2", "--seeds", "3")
    _, out1, _ = _run(capsys, *argv)
    _, out2, _ = _run(capsys, *argv)
    r1, r2 = json.loads(out1), json.loads(out2)
    r1.pop("wall_time_ms")
    r2.pop("wall_time_ms")
    assert r1 == r2


def test_eliminate_matches_fixture(capsys):
    code, out, _ = _run(capsys, "eliminate", "--map", "lv3", "--period", "2")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert all(v["fixture_match"] is not None for v in rep["verdicts"])


def test_orbit_csv_output(capsys):
    code, out, _ = _run(capsys, "orbit", "--map", "lyness8",
                        "--init", "1,1,1", "--steps", "8", "--format", "csv")
    assert code == EXIT_OK
    lines = out.strip().split("\n")
    assert lines[0].startswith("step,re_x")
    assert len(lines) == 10
    first_coords = [float(l.split(",")[1]) for l in lines[1:]]
    assert first_coords == pytest.approx([1, 3, 5, 9, 5, 3, 1, 1, 1])


def test_fixtures_command_reports_verdicts(capsys):
    code, out, _ = _run(capsys, "fixtures", "--map", "lv4", "--period", "2")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert len(rep["verdicts"]) == 3
    assert all(v["behavioral"] and v["symbolic"] for v in rep["verdicts"])


def test_unknown_variety_is_a_usage_error(capsys):
    code, _, err = _run(capsys, "sample", "--map", "lv3", "--period", "9")
    assert code == EXIT_USAGE
    assert "available periods" in err


def test_missing_parameter_is_a_usage_error(capsys):
    code, _, err = _run(capsys, "verify", "--map", "moebius2d",
                        "--period", "3")
    assert code == EXIT_USAGE
    assert "usage error" in err


def test_text_format_renders_flat_lines(capsys):
    code, out, _ = _run(capsys, "list", "--map", "lv3", "--format", "text")
    assert code == EXIT_OK
    assert "map: lv3" in out


def test_out_flag_writes_a_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["sample", "--map", "lv3", "--period", "2", "--seeds", "2",
                 "--out", str(target)])
    capsys.readouterr()
    assert code == EXIT_OK
    rep = json.loads(target.read_text())
    assert rep["residual_summary"]["passed"] == 2

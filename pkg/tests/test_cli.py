import json
import subprocess
import sys
from pathlib import Path

import pytest

from pvgauge.cli import main

FIX = Path(__file__).parent / "fixtures"
GOLD = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, cmd, name, *extra):
    code, out, _ = run(capsys, cmd, "--input", FIX / name, "--json", *extra)
    return code, json.loads(out)


@pytest.mark.parametrize(
    "cmd, name, golden",
    [
        ("trivial", "trivial_log.pv", "trivial_log.json"),
        ("trivial", "trivial_unipotent.pv", "trivial_unipotent.json"),
        ("rep", "rep_fixtures.pv", "rep_fixtures.json"),
    ],
)
def test_golden_json(capsys, cmd, name, golden):
    _, out, _ = run(capsys, cmd, "--input", FIX / name, "--json")
    assert out == (GOLD / golden).read_text()


def test_golden_text(capsys):
    _, out, _ = run(capsys, "trivial", "--input", FIX / "trivial_log.pv")
    assert out == (GOLD / "trivial_log.txt").read_text()


def test_decision_examples(capsys):
    code, rep = run_json(capsys, "trivial", "trivial_log.pv")
    assert (code, rep["result"], rep["witness"]) == (0, "trivial", "[[x]]")
    code, rep = run_json(capsys, "trivial", "trivial_unipotent.pv")
    assert (code, rep["result"], rep["witness"]) == (1, "none-found", None)
    assert rep["certificate"]["statement"] == "rational solution space dimension 1"
    code, rep = run_json(capsys, "equivalent", "equivalent_half.pv")
    assert (code, rep["result"]) == (1, "none-found")
    assert "over Q(x)" in rep["certificate"]["scope"]
    code, rep = run_json(capsys, "equivalent", "equivalent_x.pv")
    assert (code, rep["witness"]) == (0, "[[x]]")


def test_constructions(capsys):
    assert run_json(capsys, "compose", "compose.pv")[1]["result"] == {"NM": "[[x^2]]"}
    assert run_json(capsys, "gauge", "gauge.pv")[1]["result"] == {"B": "[[1/x, (x - 1)/x], [0, 0]]"}
    assert run_json(capsys, "hmul", "hmul.pv")[1]["result"] == {"A": "[[(x + 1)/x]]", "F": "[[x^3 + x]]"}
    code, rep = run_json(capsys, "intertwine", "intertwine.pv")
    assert code == 0 and rep["result"]["dimension"] == 2
    code, rep = run_json(capsys, "check", "check.pv")
    assert code == 0 and rep["certificate"]["all_zero"] is True


def test_bounds_file(capsys):
    code, rep = run_json(capsys, "trivial", "pole2.pv")
    assert code == 3 and rep["certificate"]["error"] == "NeedsUserBound"
    code, rep = run_json(capsys, "trivial", "pole2.pv", "--bounds", FIX / "bounds_x.json")
    assert code == 1 and rep["bounds"]["provenance"] == "user_supplied"
    assert "user-supplied bounds" in rep["certificate"]["scope"]


def test_seed_is_echoed(capsys):
    code, rep = run_json(capsys, "trivial", "trivial_log.pv", "--seed", 18446744073709551615)
    assert code == 0 and rep["seed"] == 18446744073709551615


@pytest.mark.parametrize(
    "doc, cmd, code",
    [
        ("A = [[1.5]]\n", "trivial", 2),
        ("B = [[1]]\n", "trivial", 2),
        ("A1 = [[0]]\nA2 = [[1/x]]\nA3 = [[2/x]]\nM = [[1]]\nN = [[x]]\n", "compose", 5),
        ("U = [[x, 1], [x, 1]]\nA = [[0, 0], [0, 0]]\n", "gauge", 7),
        ("A = [[0]]\nB = [[0, 0], [0, 0]]\n", "equivalent", 7),
        ("A = [[1/x]]\nF = [[x]]\nB = [[1]]\nG = [[0]]\n", "hmul", 7),
        ("A = [[1/x]]\ntower F = [[1]]\n", "check", 1),
    ],
)
def test_error_exit_codes(capsys, tmp_path, doc, cmd, code):
    p = tmp_path / "in.pv"
    p.write_text(doc)
    got, _, _ = run(capsys, cmd, "--input", p, "--json")
    assert got == code


def test_usage_errors(capsys, tmp_path):
    with pytest.raises(SystemExit) as ex:
        main(["trivial"])
    assert ex.value.code == 2
    with pytest.raises(SystemExit) as ex:
        main(["trivial", "--input", str(FIX / "trivial_log.pv"), "--seed", "-1"])
    assert ex.value.code == 2
    code, _, err = run(capsys, "trivial", "--input", tmp_path / "missing.pv")
    assert code == 2 and "pvgauge:" in err
    bad = tmp_path / "b.json"
    bad.write_text('{"pole_orders": {"x": -1}, "numerator_degree": 1}')
    code, _, _ = run(capsys, "trivial", "--input", FIX / "pole2.pv", "--bounds", bad)
    assert code == 2


def test_exit_zero_iff_witness(capsys):
    for cmd, name in [("trivial", "trivial_log.pv"), ("trivial", "trivial_unipotent.pv"),
                      ("equivalent", "equivalent_half.pv"), ("equivalent", "equivalent_x.pv")]:
        code, rep = run_json(capsys, cmd, name)
        assert (code == 0) == (rep["witness"] is not None)


def test_module_entry_point_matches_in_process(capsys):
    _, expected, _ = run(capsys, "trivial", "--input", FIX / "trivial_log.pv", "--json")
    proc = subprocess.run([sys.executable, "-m", "pvgauge", "trivial", "--input", str(FIX / "trivial_log.pv"), "--json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == expected

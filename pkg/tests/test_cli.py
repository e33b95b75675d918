import io
import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

import pytest

from ndsys.cli import main, parse_system
from ndsys.laurent import parse_vector

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_RUNS = [
    (["coarsest", "hexagonal.system", "--oracle"], "hexagonal_coarsest.json"),
    (["contract", "hexagonal.system", "--lattice", "hex", "--oracle"],
     "hexagonal_contract.json"),
    (["analyze", "pair.system", "--check-transfer", "two"], "pair_analyze.json"),
    (["extend", "fibonacci.system"], "fibonacci_extend.json"),
    (["smith", "skew.system", "--lattice", "skew"], "skew_smith.json"),
    (["galois", "hexagonal.system", "--lattice", "hex", "--moduli", "2,2"],
     "hexagonal_galois.json"),
]


def run_cli(argv, capsys):
    code = main([a if i != 1 else str(GOLDEN / a) for i, a in enumerate(argv)])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv,expected", GOLDEN_RUNS, ids=[e for _, e in GOLDEN_RUNS])
def test_golden_reports(argv, expected, capsys):
    code, out, _ = run_cli(argv, capsys)
    assert code == 0
    assert out == (GOLDEN / expected).read_text()


def test_reports_validate_against_schema(capsys):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(resources.files("ndsys").joinpath(
        "schema/report.schema.json").read_text())
    for argv, _ in GOLDEN_RUNS:
        code, out, _ = run_cli(argv, capsys)
        assert code == 0
        jsonschema.validate(json.loads(out), schema)


def test_repeat_runs_byte_identical(capsys):
    argv = ["coarsest", "hexagonal.system", "--oracle", "--json"]
    _, first, _ = run_cli(argv, capsys)
    _, second, _ = run_cli(argv, capsys)
    assert first == second
    assert first.count("\n") == 1


def test_exit_code_two_on_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.system"
    bad.write_text("n = 1\nk = 1\nP = [[s1^]]\n")
    assert main([ "gb", str(bad)]) == 2
    err = capsys.readouterr().err
    assert json.loads(err)["error"] == "input"

    assert main(["gb", str(tmp_path / "missing.system")]) == 2
    capsys.readouterr()

    # two lattice blocks and no --lattice selection
    assert main(["contract", str(GOLDEN / "hexagonal.system")]) == 2
    capsys.readouterr()

    assert main(["member", str(GOLDEN / "hexagonal.system")]) == 2
    capsys.readouterr()

    assert main(["simulate", str(GOLDEN / "pair.system"),
                 "--window", "5..1"]) == 2
    capsys.readouterr()


def test_exit_code_three_on_precondition(tmp_path, capsys):
    f = tmp_path / "line.system"
    f.write_text("n = 2\nk = 1\nP = [[1 + s1*s2]]\nlattice line = [[1, 1]]\n")
    assert main(["galois", str(f), "--lattice", "line"]) == 3
    err = capsys.readouterr().err
    assert json.loads(err)["error"] == "precondition"


def test_stdin_dash(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin",
                        io.StringIO("n = 1\nk = 1\nP = [[s1^2 - 1]]\n"))
    assert main(["gb", "-"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["result"]["basis"] == ["[s1^2 - 1]"]


def test_member_oracle_consistency(capsys):
    code, out, _ = run_cli(["member", "hexagonal.system",
                            "--vector", "[s2^2 + s1*s2^3 + s2^4]",
                            "--oracle"], capsys)
    assert code == 0
    r = json.loads(out)["result"]
    assert r["member"] and r["oracle"]["span_certified"] and r["oracle"]["consistent"]

    code, out, _ = run_cli(["member", "hexagonal.system",
                            "--vector", "[s1]", "--oracle"], capsys)
    r = json.loads(out)["result"]
    assert not r["member"] and not r["oracle"]["span_certified"]
    assert r["oracle"]["consistent"]


def test_simulate_basis_dump(capsys):
    code, out, _ = run_cli(["simulate", "fibonacci.system", "--basis"], capsys)
    assert code == 0
    r = json.loads(out)["result"]
    assert r["window"] == [[0, 7]] and r["points"] == 8 and r["dimension"] == 2
    assert len(r["basis"]) == 2
    for sol in r["basis"]:
        f = {t: Fraction(0) for t in range(8)}
        for e in sol:
            f[e["point"][0]] = Fraction(e["value"])
        for t in range(6):
            assert f[t + 2] == f[t + 1] + f[t]


def test_gb_order_flag(capsys):
    code, out, _ = run_cli(["gb", "hexagonal.system", "--order", "lex"], capsys)
    assert code == 0
    r = json.loads(out)["result"]
    assert r["order"] == "lex" and r["basis"]


def test_canonical_text_roundtrip():
    for name in ("hexagonal.system", "pair.system", "fibonacci.system", "skew.system"):
        sf = parse_system((GOLDEN / name).read_text())
        again = parse_system(sf.canonical_text())
        assert (again.n, again.k) == (sf.n, sf.k)
        assert again.rows == sf.rows
        assert again.lattices == sf.lattices
        assert again.windows == sf.windows


def test_analyze_image_rep_annihilates_rows(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin",
                        io.StringIO("n = 2\nk = 2\nP = [[s1, s2]]\n"))
    assert main(["analyze", "-"]) == 0
    rep = json.loads(capsys.readouterr().out)
    r = rep["result"]
    assert r["controllable"] and r["image_rep"]
    row = parse_vector("[s1, s2]", 2, 2)
    for text in r["image_rep"]:
        col = parse_vector(text, 2, 2)
        assert not col.is_zero()
        assert row.dot(col).is_zero()

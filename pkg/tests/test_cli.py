import json
import os

import pytest

from qcanon import cli


def _run(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(autouse=True)
def no_cache(monkeypatch):
    monkeypatch.delenv("QCANON_CACHE_DIR", raising=False)


def test_canon_example(capsys):
    code, out, _ = _run(capsys, "canon", "--cartan", "C", "--n", "2", "--lambda", "1/2,-1/2",
                        "--cutoff", "6", "--kind", "t")
    assert code == 0
    rows = {e["mu"]: e["poly"]["coeffs"] for e in json.loads(out)["entries"]}
    assert rows == {"1/2,-1/2": [[0, 1]], "-1/2,1/2": [[2, 1]]}


def test_canon_negative_lambda(capsys):
    code, out, _ = _run(capsys, "canon", "--n", "2", "--lambda", "-1/2,1/2", "--cutoff", "4")
    assert code == 0
    assert "-3/2,3/2" in out


def test_compare_example(capsys):
    code, out, _ = _run(capsys, "compare", "--route", "a-vs-b", "--n", "2", "--cutoff", "6")
    assert code == 0
    assert json.loads(out)["verdict"] == "EQUAL"


def test_char_example(capsys):
    code, out, _ = _run(capsys, "char", "--n", "1", "--lambda", "1/2")
    assert code == 0
    assert json.loads(out)["monomials"] == [{"exp": [1], "coeff": 2}]


def test_char_irreducible(capsys):
    code, out, _ = _run(capsys, "char", "--kind", "irreducible", "--lambda", "3/2,-3/2")
    assert code == 0
    doc = json.loads(out)
    assert sum(m["coeff"] for m in doc["monomials"]) == 8
    assert doc["l_row"] == [{"mu": "1/2,-1/2", "value": -1}, {"mu": "3/2,-3/2", "value": 1}]


def test_wedge_type_B(capsys):
    code, out, _ = _run(capsys, "wedge", "--cartan", "B", "--lambda", "1,-1", "--cutoff", "5")
    assert code == 0
    rows = {r["mu"]: r["text"] for r in json.loads(out)["entries"]}
    assert rows["2,-2"] == "t^2"


def test_kgroup_tilting(capsys):
    code, out, _ = _run(capsys, "kgroup", "--action", "tilting", "--lambda", "1/2,-1/2", "--cutoff", "5")
    assert code == 0
    doc = json.loads(out)
    assert doc["conjectural"] and doc["known_to_need_correction"]
    assert {e["weight"]: e["mult"] for e in doc["entries"]} == {"1/2,-1/2": 1, "-1/2,1/2": 1}


def test_kgroup_translate(capsys):
    code, out, _ = _run(capsys, "kgroup", "--lambda", "1/2", "--i", "0", "--direction", "E")
    assert code == 0
    assert json.loads(out)["entries"] == [{"weight": "-1/2", "mult": 2}]


def test_bar_example(capsys):
    code, out, _ = _run(capsys, "bar", "--lambda", "1/2,-1/2", "--cutoff", "3")
    assert code == 0
    rows = {r["mu"]: r["text"] for r in json.loads(out)["image"]}
    assert rows["-1/2,1/2"] == "q^2 - q^-2"


@pytest.mark.parametrize("argv", [
    ["canon", "--n", "2", "--lambda", "1/3,1/2"],
    ["canon", "--n", "3", "--lambda", "1/2,1/2"],
    ["bar", "--lambda", "9/2,1/2", "--cutoff", "2"],
    ["wedge", "--lambda", "1/2,3/2"],
    ["char", "--lambda", "1/2,3/2"],
    ["nonsense"],
])
def test_invalid_input_exit_code(capsys, argv):
    code, _, _ = _run(capsys, *argv)
    assert code == cli.EXIT_INVALID


def test_uncertified_exit_code(capsys, monkeypatch):
    # intervals never leave the window at these sizes, so force the uncertified path
    monkeypatch.setattr(cli.CanonicalSolver, "certified", lambda self, mu, lam: mu == lam)
    code, _, err = _run(capsys, "canon", "--n", "2", "--lambda", "3/2,-3/2", "--cutoff", "2")
    assert code == cli.EXIT_UNCERTIFIED
    assert "cutoff" in err
    code, out, _ = _run(capsys, "canon", "--n", "2", "--lambda", "3/2,-3/2", "--cutoff", "2",
                        "--allow-provisional")
    assert code == 0


def test_warm_cache_is_byte_identical(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("QCANON_CACHE_DIR", str(tmp_path / "cache"))
    argv = ["canon", "--cartan", "B", "--n", "2", "--cutoff", "3", "--kind", "l"]
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    assert cli.run(["--out", str(first)] + argv) == 0
    assert len(os.listdir(tmp_path / "cache")) == 1
    assert cli.run(["--out", str(second)] + argv) == 0
    assert first.read_bytes() == second.read_bytes()


def test_fixtures_written(tmp_path):
    written = cli.write_fixtures(str(tmp_path))
    assert len(written) == len(cli.FIXTURE_JOBS)
    for path in written:
        assert "v" + cli.__version__ in path
        json.load(open(path))


def test_canon_csv(capsys):
    code, out, _ = _run(capsys, "canon", "--n", "2", "--lambda", "1/2,-1/2", "--cutoff", "3", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["la,mu,coeffs", '"1/2,-1/2","-1/2,1/2",2:1', '"1/2,-1/2","1/2,-1/2",0:1']

import json
import subprocess
import sys

import pytest

from zinbiel.cli import main
from zinbiel.fileformat import parse_algebra

Z2_1 = "dim 2\nmul e1 e1 = 1 e2\n"
Z3_6 = "dim 3\nparam lambda\nassume lambda != 0\nmul e1 e1 = e3\nmul e1 e2 = e3\nmul e2 e2 = lambda e3\nmul e2 e1 = -e3\n"
BAD = "dim 1\nmul e1 e1 = e1\n"


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in (("z2_1", Z2_1), ("z3_6", Z3_6), ("bad", BAD)):
        p = tmp_path / f"{name}.alg"
        p.write_text(text)
        out[name] = str(p)
    broken = tmp_path / "broken.alg"
    broken.write_text("dim 2\nmul e1 e1 = e7\n")
    out["broken"] = str(broken)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_check_exit_codes(capsys, files):
    assert run(capsys, "check", "--kind", "zinbiel", files["z2_1"])[0] == 0
    assert run(capsys, "check", "--kind", "associative", files["z2_1"])[0] == 0
    code, out, _ = run(capsys, "check", "--kind", "zinbiel", files["bad"])
    assert code == 1 and "(1, 1, 1)" in out
    assert run(capsys, "check", files["broken"])[0] == 2
    assert run(capsys, "check", "no/such/file.alg")[0] == 2


def test_check_json(capsys, files):
    code, out, _ = run(capsys, "check", files["bad"], "--format", "json")
    data = json.loads(out)
    assert code == 1 and data["schema"] == 1 and data["witnesses"][0]["indices"] == [1, 1, 1]


def test_invariants_z2_1(capsys, files):
    code, out, _ = run(capsys, "invariants", files["z2_1"], "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["central_derivations"]["dim"] == 1
    assert data["central_derivations"]["matrix"] == [["0", "0"], ["a21", "0"]]
    assert data["central_derivations"]["agreement"]
    assert data["power_chain"] == [2, 1, 0]
    code, out, _ = run(capsys, "invariants", files["z2_1"], "--format", "json", "--convention", "row")
    assert json.loads(out)["central_derivations"]["matrix"] == [["0", "a12"], ["0", "0"]]


def test_invariants_text_sections(capsys, files):
    code, out, _ = run(capsys, "invariants", files["z3_6"])
    assert code == 0
    for needle in ("Der: dim 4", "Gamma: dim 3", "CD: dim 2", "agree", "power chain", "center: dim 1"):
        assert needle in out


def test_invariants_parameter_binding(capsys, files):
    code, out, _ = run(capsys, "invariants", files["z3_6"], "--param", "lambda=2", "--format", "json")
    assert code == 0 and json.loads(out)["param"] is None
    assert run(capsys, "invariants", files["z3_6"], "--param", "lambda=0")[0] == 3
    assert run(capsys, "invariants", files["z3_6"], "--param", "mu=1")[0] == 3
    assert run(capsys, "invariants", files["z3_6"], "--param", "lambda=x")[0] == 3
    assert run(capsys, "invariants", files["z3_6"], "--param", "lambda=1", "--param", "lambda=2")[0] == 3


def test_table_rows(capsys, tmp_path):
    code, out, _ = run(capsys, "table", "2", "--format", "json")
    rows = json.loads(out)["rows"]
    assert code == 0 and len(rows) == 1 and rows[0]["match"]
    certs = tmp_path / "certs"
    code, out, _ = run(capsys, "table", "3", "--format", "json", "--cert-dir", str(certs))
    rows = json.loads(out)["rows"]
    assert len(rows) == 7
    assert {r["entry"] for r in rows if r["match"]} == {"Z3_1", "Z3_2"}
    for r in rows:
        if not r["match"]:
            path = r["certificate_path"]
            assert json.loads(open(path).read())["entry"] == r["entry"]


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "all", "--format", "csv", "--no-structural")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("entry,") and len(lines) == 27


def test_sum_transport_derive(capsys, files, tmp_path):
    code, out, _ = run(capsys, "sum", files["z2_1"], files["z2_1"])
    assert code == 0 and "2 + 2 + 1 + 1 = 6 = dim Gamma = 6" in out
    code, out, _ = run(capsys, "transport", files["z2_1"], "--count", "50")
    assert code == 0 and "50/50" in out
    code, out, _ = run(capsys, "derive", files["z2_1"], "--kind", "symmetrize")
    assert code == 0 and "mul e1 e1 = 2 e2" in out


def test_opposite_round_trip(capsys, files, tmp_path):
    once = tmp_path / "op.alg"
    twice = tmp_path / "opop.alg"
    assert run(capsys, "derive", files["z3_6"], "--kind", "opposite", "--out", str(once))[0] == 0
    assert run(capsys, "derive", str(once), "--kind", "opposite", "--out", str(twice))[0] == 0
    original = parse_algebra(Z3_6)
    back = parse_algebra(twice.read_text())
    assert back.table == original.table and back.assumptions == original.assumptions


def test_catalog_commands(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and len(out.strip().splitlines()) == 24 and "UNRELIABLE-SOURCE" in out
    code, out, _ = run(capsys, "catalog", "show", "Z3_6")
    assert code == 0 and parse_algebra(out).param == "lambda"
    assert run(capsys, "catalog", "show", "Z9_9")[0] == 2


def test_catalog_ids_accepted_as_inputs(capsys):
    code, out, _ = run(capsys, "invariants", "Z3_1", "--format", "json")
    assert code == 0 and json.loads(out)["central_derivations"]["dim"] == 9


def test_deterministic_output(capsys, files):
    first = run(capsys, "transport", files["z3_6"], "--count", "5", "--seed", "7", "--format", "json")
    second = run(capsys, "transport", files["z3_6"], "--count", "5", "--seed", "7", "--format", "json")
    assert first == second


def test_console_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "zinbiel.cli", "check", files["bad"]], capture_output=True, text=True
    )
    assert proc.returncode == 1

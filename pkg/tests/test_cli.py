import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from grpcompress.cli import main
from grpcompress.verify import REPORT_SCHEMA

CIRCUITS = Path(__file__).parent / "circuits"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decide_a5(capsys):
    code, out, _ = run(capsys, "decide", "--group", "A5")
    assert code == 0
    assert "exists\tminimal size 4" in out and out.rstrip().endswith("verdict\texists")


def test_decide_json(capsys):
    code, out, _ = run(capsys, "decide", "--group", "S4", "--json")
    doc = json.loads(out)
    assert code == 0 and doc[0]["verdict"] == "no_solution" and doc[0]["order"] == 24


def test_decide_with_sigma(capsys):
    code, out, _ = run(capsys, "decide", "--group", "S5", "--sigma", "(1 2 3)", "--json")
    doc = json.loads(out)
    assert doc[0]["minimal_size"] == 4 and len(doc[0]["classes"]) == 1


def test_decide_ambiguous_expression_lists_each_type(capsys):
    code, out, _ = run(capsys, "decide", "--group", "C24 : C2", "--json")
    assert code == 0 and len(json.loads(out)) > 1


@pytest.mark.parametrize("argv", [
    ["decide", "--group", "X9"],
    ["decide", "--group", "S5", "--sigma", "(1 2)"],
    ["decide", "--group", "S5", "--sigma", "(1 7)"],
    ["decide", "--group", "C3 : C3"],
    ["decide"],
    ["frobnicate"],
    ["verify", "--max-order", "90"],
    ["search", "--group", "A5", "--max-size", "9"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_search_agrees(capsys):
    code, out, _ = run(capsys, "search", "--group", "A5", "--max-size", "4")
    assert code == 0 and "agree" in out
    code, out, _ = run(capsys, "search", "--group", "SL(2,3)", "--max-size", "3")
    assert code == 0 and "enumeration none" in out


def test_catalog_counts(capsys):
    code, out, _ = run(capsys, "catalog", "--order", "48", "--counts")
    assert code == 0 and "48\t47\t47\t5\tyes" in out


def test_catalog_list_and_manifest(capsys, tmp_path):
    path = tmp_path / "m.tsv"
    code, out, _ = run(capsys, "catalog", "--order", "12", "--list", "--dump", str(path))
    assert code == 0 and "12\tA4\torder-12 case list\t1 type(s)" in out
    code, out, _ = run(capsys, "catalog", "--manifest", str(path), "--counts")
    assert code == 0 and "12\t3\t3\t2\tyes" in out


def test_catalog_count_mismatch_fails(capsys, tmp_path):
    path = tmp_path / "m.tsv"
    path.write_text("12\tA4\tmanual\n")
    code, out, _ = run(capsys, "catalog", "--manifest", str(path), "--counts")
    assert code == 1 and "NO" in out


def test_verify_small(capsys, tmp_path):
    report = tmp_path / "r.json"
    table = tmp_path / "r.tsv"
    code, out, _ = run(capsys, "verify", "--max-order", "24", "--report", str(report), "--table", str(table),
                       "--no-timing", "--skip-symmetric")
    assert code == 0 and "exists\tnone" in out
    doc = json.loads(report.read_text())
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert all(c["millis"] == 0 for o in doc["orders"] for c in o["classes"])
    assert table.read_text().startswith("order\texpression")
    first = report.read_text()
    run(capsys, "verify", "--max-order", "24", "--report", str(report), "--no-timing", "--skip-symmetric")
    assert report.read_text() == first


def test_verify_full_with_figures(capsys, tmp_path):
    figs = tmp_path / "figs"
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--report", str(report), "--figures", str(figs), "--jobs", "2")
    assert code == 0
    assert "exists\tA5" in out and "classification\tpass" in out
    assert sorted(p.name for p in figs.iterdir()) == ["class_counts.png", "reachable_states.png"]
    assert all(p.read_bytes()[:4] == b"\x89PNG" for p in figs.iterdir())
    doc = json.loads(report.read_text())
    assert doc["summary"]["classification"] == "pass" and doc["summary"]["symmetric_groups"] == "pass"


def test_gates_command(capsys):
    code, out, _ = run(capsys, "gates", "--circuit", str(CIRCUITS / "nand.txt"), "--inputs", "11", "--trace")
    assert code == 0
    assert out.splitlines()[-1] == "output\ty\t0"
    assert "a\t(1 2 3)" in out
    code, out, _ = run(capsys, "gates", "--circuit", str(CIRCUITS / "full_adder.txt"), "--inputs", "101",
                       "--encoding", "s5")
    assert code == 0 and out.strip() == "output\tc\t1"


def test_gates_errors(capsys, tmp_path):
    assert run(capsys, "gates", "--circuit", str(tmp_path / "missing"), "--inputs", "1")[0] == 2
    assert run(capsys, "gates", "--circuit", str(CIRCUITS / "nand.txt"), "--inputs", "1")[0] == 2


@pytest.mark.parametrize("flag, size", [("--eq1", "6"), ("--a5-function", "4")])
def test_demo(capsys, flag, size):
    code, out, _ = run(capsys, "demo", flag)
    assert code == 0 and f"size\t{size}" in out and "condition\tholds" in out
    assert "F(sigma^2)\t(1 2 3)" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "grpcompress", "demo", "--eq1"], capture_output=True, text=True)
    assert r.returncode == 0 and "condition\tholds" in r.stdout

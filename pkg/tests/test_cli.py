import json
import shutil
from importlib import resources

import pytest

from reference_tables import GLOBAL
from weylkit import report
from weylkit.cli import main
from weylkit.rep import Decomposition
from weylkit.report import render_mults, render_table

FILE_ALGEBRA = str(resources.files("weylkit") / "golden" / "algebras" / "h2_mod3.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_render_examples():
    assert render_mults({6: 2, 4: 3, 2: 6, 0: 3}) == "2L(6)⊕3L(4)⊕6L(2)⊕3L(0)"
    assert render_mults({}) == "0"
    assert render_mults({4: 1, 2: 2, 0: 2}) == "L(4)⊕2L(2)⊕2L(0)"
    assert render_table(Decomposition({0: {1: 1}, 1: {}, 2: {3: 1}})) == "L(1)\n0\nL(3)"


def test_global_table(capsys):
    code, out, _ = run(capsys, "weyl", "global", "--algebra", "h2", "--lambda", "4", "--format", "table")
    assert code == 0
    lines = out.splitlines()
    assert lines[:-1] == GLOBAL[4]
    assert lines[-1] == "dim = 31"


def test_json_round_trip(capsys):
    code, out, _ = run(capsys, "weyl", "local", "--lambda", "5", "--format", "json")
    assert code == 0
    data = json.loads(out)
    _, table, _ = run(capsys, "weyl", "local", "--lambda", "5")
    assert report.render_with_footer(Decomposition.from_json(data)) == table


def test_socle_reports_literal_common_kernel(capsys):
    code, out, _ = run(capsys, "weyl", "socle", "--algebra", "h2", "--lambda", "2", "--kind", "local")
    assert code == 0
    assert out.splitlines()[0] == "socle: L(1)"
    code, out, _ = run(capsys, "weyl", "socle", "--lambda", "3", "--kind", "local")
    assert out.splitlines()[-1] == "top degree 2: L(1)"


def test_sweep(capsys, tmp_path):
    code, out, _ = run(capsys, "weyl", "global", "--lambda", "0..3", "--out", str(tmp_path),
                       "--jobs", "2")
    assert code == 0
    index = json.loads((tmp_path / "index.json").read_text())
    assert [r["total_dim"] for r in index["runs"]] == [1, 2, 5, 14]
    golden = report.golden_dir() / "tables"
    for la in range(4):
        assert (tmp_path / f"global_h2_{la}.txt").read_text() == (golden / f"global_h2_{la}.txt").read_text()


@pytest.mark.parametrize("argv,code", [
    (["weyl", "global", "--algebra", "h2", "--lambda", "-1"], 3),
    (["weyl", "local", "--lambda", "-2"], 3),
    (["weyl", "global", "--lambda=-1..2"], 3),
    (["weyl", "global", "--lambda", "x"], 2),
    (["weyl", "global", "--algebra", "nope", "--lambda", "1"], 2),
    (["weyl", "global", "--algebra", "l0w2", "--lambda", "1"], 2),
    (["weyl", "global", "--lambda", "3", "--max-degree", "300"], 2),
    (["weyl", "global", "--lambda", "3", "--max-degree", "1"], 4),
    (["weyl", "global", "--algebra", FILE_ALGEBRA, "--lambda", "3"], 0),
    (["weyl", "bind", "--omega", "0,1,2", "--module", "2"], 0),
    (["weyl", "bind", "--omega", "0,1,2", "--module", "-2"], 3),
    (["weyl", "bind", "--module", "2"], 2),
    (["weyl", "bind", "--omega", "0,1,2", "--max-degree", "0"], 4),
    (["weyl", "endo", "--lambda", "4"], 0),
    (["weyl", "endo", "--lambda", "-4"], 3),
    (["weyl", "functor", "--lambda", "3", "--module", "trivial"], 0),
    (["weyl", "functor", "--lambda", "3", "--module", "bogus"], 2),
    (["weyl", "socle", "--lambda", "2"], 0),
    (["weyl", "socle", "--lambda", "-1"], 3),
    (["weyl", "filtered", "--algebra", "sl_lambda:1/2", "--lambda", "2"], 0),
    (["weyl", "filtered", "--algebra", "sl_lambda:1/2", "--lambda", "2", "--max-iterations", "1"], 4),
    (["weyl", "filtered", "--algebra", "sl_lambda:1/0", "--lambda", "2"], 2),
    (["weyl", "filtered", "--algebra", "sl_lambda:3", "--lambda", "-1"], 3),
    (["induced", "--lambda", "0"], 0),
    (["induced", "--lambda", "-1"], 3),
    (["induced", "--algebra", "sl_lambda:3", "--lambda", "0"], 2),
    (["symalg", "--module", "2", "--omega", "0,1,2"], 0),
    (["symalg", "--module", "2", "--omega", "0,1,2,3,4", "--max-degree", "2"], 4),
    (["symalg", "--module", "2"], 2),
    (["symalg", "--module", "-2", "--omega", "0"], 3),
    (["order", "leq", "--mu", "1,0", "--lambda", "3,-1"], 0),
    (["order", "leq", "--mu", "1", "--lambda", "3,-1"], 2),
    (["order", "leq", "--mu", "1,0,0", "--lambda", "3,-1,0"], 2),
    (["order", "leq", "--mu", "1,0", "--lambda", "1,0", "--cartan", "2,-1;-1"], 2),
    (["algebra", "validate", "--algebra", "h2"], 0),
    (["algebra", "validate", "--algebra", "/nonexistent.json"], 2),
    (["algebra", "thin-check", "--algebra", "l0w2", "--max-degree", "2"], 0),
    (["algebra", "thin-check", "--algebra", "sl_lambda:3"], 2),
    (["frobnicate"], 2),
    ([], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_order_output(capsys):
    assert run(capsys, "order", "leq", "--mu", "1,0", "--lambda", "3,-1")[1] == "true\n"
    assert run(capsys, "order", "leq", "--mu", "3,-1", "--lambda", "1,0")[1] == "false\n"
    assert run(capsys, "order", "leq", "--mu", "0", "--lambda", "1")[1] == "true\n"


def test_bad_algebra_file(capsys, tmp_path):
    p = tmp_path / "alg.json"
    p.write_text(json.dumps({"rank": 1, "components": []}))
    assert run(capsys, "algebra", "validate", "--algebra", str(p))[0] == 2


def test_out_file(capsys, tmp_path):
    out = tmp_path / "sub" / "w3.json"
    assert run(capsys, "weyl", "global", "--lambda", "3", "--format", "json", "--out", str(out))[0] == 0
    assert json.loads(out.read_text())["total_dim"] == 14


def test_golden_diff_detects_changes(tmp_path, monkeypatch):
    gold = tmp_path / "gold"
    shutil.copytree(report.golden_dir(), gold)
    monkeypatch.setenv("WEYLKIT_GOLDEN_DIR", str(gold))
    assert report.golden_dir() == gold
    arts = {"tables/global_h2_2.txt": (gold / "tables/global_h2_2.txt").read_text()}
    assert report.diff_against(arts, gold) == []
    (gold / "tables/global_h2_2.txt").write_text("L(2)\n")
    assert report.diff_against(arts, gold) == ["tables/global_h2_2.txt"]
    assert report.diff_against({"tables/missing.txt": "x"}, gold) == ["tables/missing.txt"]

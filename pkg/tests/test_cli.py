import json

import pytest

from legdga import fixtures
from legdga.cli import main
from legdga.dga import deserialize


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys, tmp_path):
    assert run(capsys, "validate", "fixtures/unknot-fig4")[0] == 0
    bad = tmp_path / "sq.json"
    bad.write_text(json.dumps({"name": "sq", "vertices": [["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]]}))
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 2 and "signed area = 1" in out
    assert run(capsys, "validate", str(tmp_path / "nope.json"))[0] == 64


def test_info(capsys):
    code, out, _ = run(capsys, "info", "fixtures/unknot-fig4")
    assert code == 0 and out.splitlines()[0] == "tb=-2 r=1 |a|=1 |b|=-1"
    out = run(capsys, "info", "fig8-fig5")[1]
    assert out.splitlines()[0] == "tb=-3 r=0 |a1|=0 |a2|=1 |a3|=0 |a4|=1 |a5|=1 |a6|=-1 |a7|=1"
    out = run(capsys, "info", "trefoil-fig5", "--reverse")[1]
    assert out.splitlines()[0].startswith("tb=-6 r=-1 |a1|=1")
    assert run(capsys, "info", "trefoil-fig5:reversed")[1] == out
    doc = json.loads(run(capsys, "info", "unknot-fig4", "--format", "json")[1])
    assert doc["tb"] == -2 and doc["crossings"][0]["label"] == "a"


def test_dga_latex_matches_table(capsys):
    code, out, _ = run(capsys, "dga", "fixtures/trefoil-fig5", "--format", "latex")
    assert code == 0
    lines = out.splitlines()
    assert lines[:3] == [
        r"\partial a_1 = t^{-1} + a_5 a_4",
        r"\partial a_2 = t^{-1} + a_6 a_5",
        r"\partial a_3 = t^{-1} + a_4 a_6",
    ]


def test_dga_text_and_json(capsys):
    out = run(capsys, "dga", "fig8-fig5")[1]
    assert out.splitlines()[0] == "d(a1) = -a6 + a6 a3 + t a6 a3 a5 a6"
    text = run(capsys, "dga", "unknot-fig4", "--format", "json")[1]
    assert deserialize(text).differential("a").to_text() == "1 + t b b"
    assert run(capsys, "dga", "unknot-fig4", "--format", "json", "--jobs", "2")[1] == text


def test_check(capsys):
    code, out, _ = run(capsys, "check", "fig8-fig5", "--witness")
    assert code == 0 and "FAIL" not in out and "witness: none found" in out
    code, out, _ = run(capsys, "check", "unknot-fig4", "--skip-oracle", "--witness")
    assert "PASS oracle agreement: skipped" in out and "witness: d(t b) = 1" in out
    code, out, _ = run(capsys, "check", "fig8-fig5", "--corrupt-signs")
    assert code == 1 and "FAIL d^2 = 0" in out


def test_check_serialized(capsys, tmp_path):
    p = tmp_path / "u.json"
    p.write_text(run(capsys, "dga", "unknot-fig4", "--format", "json")[1])
    code, out, _ = run(capsys, "check", str(p))
    assert code == 0 and "PASS d^2 = 0" in out
    doc = json.loads(p.read_text())
    doc["generators"][0]["degree"] = 4
    p.write_text(json.dumps(doc))
    assert run(capsys, "check", str(p))[0] == 2


def test_abelianize(capsys):
    out = run(capsys, "abelianize", "fixtures/trefoil-fig5")[1]
    assert out.splitlines()[0] == "d(a1) = t^-1 - a4 a5"


def test_stabilize(capsys):
    code, out, _ = run(capsys, "stabilize", "--degree", "2", "fixtures/unknot-fig4")
    assert code == 0 and "d(e1) = e2" in out and "PASS chain homotopy S_2" in out
    code, out, _ = run(capsys, "stabilize", "--degree", "1", "--abelian", "trefoil-fig5")
    assert code == 0 and "PASS abelian chain homotopy S_1 (odd)" in out
    code, out, err = run(capsys, "stabilize", "--degree", "0", "unknot-fig4", "--format", "json")
    assert json.loads(out)["generators"][-1]["id"] == "e2" and "PASS" in err


@pytest.mark.parametrize("move", ["I", "II", "III"])
def test_verify_move(capsys, move):
    code, out, _ = run(capsys, "verify-move", "--cert", f"fixtures/move{move}-pair.cert")
    assert code == 0 and "FAIL" not in out


def test_usage_errors(capsys):
    assert run(capsys, "dga", "unknot-fig4", "--bogus")[0] == 64
    assert run(capsys, "frobnicate")[0] == 64
    assert run(capsys, "verify-move", "--cert", "nothing-here")[0] == 64
    assert run(capsys, "dga", "unknot-fig4", "--jobs", "0")[0] == 64


def test_examples(capsys, tmp_path):
    out = run(capsys, "examples")[1]
    assert "fig8-fig5.json" in out and "moveI-pair.cert" in out
    assert run(capsys, "examples", "--out", str(tmp_path / "ex"))[0] == 0
    assert sorted(p.name for p in (tmp_path / "ex").iterdir()) == fixtures.names()
    # exported certificates still resolve their diagrams
    code, _out, _ = run(capsys, "verify-move", "--cert", str(tmp_path / "ex" / "moveIII-pair.cert"))
    assert code == 0

import json
from pathlib import Path

import pytest

from toricdiff.cli import main
from toricdiff.cohomology import CohomologyTable

ROOT = Path(__file__).resolve().parent.parent
F1_FILE = str(ROOT / "problems" / "f1.json")
BLOWUP_FILE = str(ROOT / "problems" / "blowup_a2.json")


def write(tmp_path, doc, name="p.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def f1_doc():
    return json.loads(Path(F1_FILE).read_text())


def test_validate_clean(capsys):
    assert main(["validate", F1_FILE]) == 0
    assert "clean" in capsys.readouterr().out
    assert main(["validate", BLOWUP_FILE]) == 0


def test_validate_non_pointed(tmp_path, capsys):
    doc = {"fan": {"rays": [[1, 0], [-1, 0], [0, 1]], "max_cones": [[0, 1, 2]]}, "bundles": {}}
    assert main(["validate", write(tmp_path, doc)]) == 1
    assert "[pointed]" in capsys.readouterr().out


def test_validate_tail_mismatch(tmp_path, capsys):
    doc = f1_doc()
    doc["bundles"]["bad"] = {"plus": [[0, 0]], "minus": [[0, 0]], "plus_tail": [[1, 0]]}
    assert main(["validate", write(tmp_path, doc)]) == 1
    assert "[compatibility] bundles.bad.plus" in capsys.readouterr().out


def test_validate_incompatible_polytope(tmp_path, capsys):
    doc = f1_doc()
    doc["bundles"]["seg"] = {"plus": [[0, 0], [0, 1]], "minus": [[0, 0]]}
    assert main(["validate", write(tmp_path, doc)]) == 1
    assert "bundles.seg.plus" in capsys.readouterr().out


def test_bad_input_is_structured(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["validate", str(path)]) == 1
    doc = f1_doc()
    doc["bundles"]["A"]["plus"] = [[0, 0, 0]]
    assert main(["validate", write(tmp_path, doc)]) == 1
    assert "bundles.A.plus[0]" in capsys.readouterr().err


def test_cohomology_tsv(capsys):
    assert main(["cohomology", F1_FILE, "2B-A"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["m_1\tm_2\th0\th1\th2", "0\t1\t1\t0\t0", "0\t2\t1\t0\t0", "1\t2\t1\t0\t0"]
    assert main(["cohomology", F1_FILE, "A-2B"]) == 0
    assert capsys.readouterr().out.splitlines()[1:] == ["0\t-1\t0\t1\t0"]


def test_cohomology_with_oracles(capsys):
    assert main(["cohomology", F1_FILE, "A-4B", "--oracle", "all", "--cover", "all", "--field", "fp:3"]) == 0
    assert "agrees" in capsys.readouterr().err


def test_cohomology_unbounded(capsys):
    assert main(["cohomology", BLOWUP_FILE, "2E"]) == 3
    assert main(["cohomology", BLOWUP_FILE, "2E", "--box=-3,-3:3,3", "--oracle", "h0"]) == 0
    rows = [l.split("\t") for l in capsys.readouterr().out.splitlines()[1:]]
    h1 = [r for r in rows if r[3] != "0"]
    assert h1 == [["-1", "-1", "0", "1", "0"]]
    h0 = {(int(r[0]), int(r[1])) for r in rows if r[2] != "0"}
    assert h0 == {(x, y) for x in range(4) for y in range(4)}


def test_json_round_trip(tmp_path):
    out = tmp_path / "t.json"
    assert main(["cohomology", F1_FILE, "2B-A", "--format", "json", "--out", str(out)]) == 0
    table = CohomologyTable.from_json(out.read_text())
    assert CohomologyTable.from_json(table.to_json()) == table
    assert list(table.entries) == [(0, 1), (0, 2), (1, 2)]


def test_oracle_mismatch_exit_code(tmp_path, monkeypatch):
    import toricdiff.cli as cli

    monkeypatch.setattr(cli, "h0_containment", lambda bundle, m: 7)
    assert main(["cohomology", F1_FILE, "A", "--oracle", "h0"]) == 2


def test_exceptional_cli(capsys):
    assert main(["exceptional", F1_FILE, "0", "A", "B", "A+B"]) == 0
    assert main(["exceptional", F1_FILE, "0", "B", "A+B", "2B"]) == 0
    assert main(["exceptional", F1_FILE, "0", "A", "2B"]) == 1
    assert "Ext^1(L_2, L_1) has dimension 1 in degree (0, -1)" in capsys.readouterr().out
    assert main(["exceptional", F1_FILE, "0", "A", "B", "A+B", "--direction", "forward"]) == 1
    assert main(["exceptional", F1_FILE, "0", "A-2B"]) == 1


def test_nef_decompose_cli(capsys):
    assert main(["nef-decompose", F1_FILE, "A-2B"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["multiplier"] == 2 and doc["divisor"] == [0, 0, -2, 1]
    assert main(["nef-decompose", F1_FILE, "--divisor", "1,1,1,1"]) == 0
    assert main(["nef-decompose", F1_FILE]) == 1


def test_render_deterministic(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert main(["render", F1_FILE, "2B-A", "--degree", "0,1", "--out", str(a)]) == 0
    assert main(["render", F1_FILE, "2B-A", "--degree", "0,1", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    svg = a.read_text()
    assert svg.startswith("<svg") and "difference empty: H0 contribution" in svg
    # the segment A + m sits inside the triangle 2B, so no lattice point is highlighted
    assert 'class="inside"' not in svg


def test_render_blowup(tmp_path):
    out = tmp_path / "e.svg"
    assert main(["render", BLOWUP_FILE, "2E", "--degree=-1,-1", "--out", str(out)]) == 0
    svg = out.read_text()
    assert "h = [0, 1, 0]" in svg and 'class="inside"' in svg
    assert "H0 contribution" not in svg


def test_render_rejects_rank_three(tmp_path):
    doc = {
        "fan": {
            "rays": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]],
            "max_cones": [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
        },
        "bundles": {"O": {"plus": [[0, 0, 0]], "minus": [[0, 0, 0]]}},
    }
    assert main(["render", write(tmp_path, doc), "O", "--degree", "0,0,0"]) == 1


def test_all_commands_on_valid_file_never_crash(tmp_path):
    names = list(f1_doc()["bundles"])
    for name in names:
        # names such as "-2A" go after "--"
        assert main(["cohomology", F1_FILE, "--", name]) == 0
        assert main(["render", "--degree", "0,0", "--out", str(tmp_path / "x.svg"), F1_FILE, "--", name]) == 0
        assert main(["nef-decompose", "--out", str(tmp_path / "x.json"), F1_FILE, "--", name]) == 0

import json
import re
import subprocess
import sys

import pytest

from deficiency.cli import main
from deficiency.presentation import parse_presentation


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ext2_human(capsys):
    code, out, _ = run(capsys, "ext2", "--module", "cyc(3,t+1)")
    assert code == 0
    assert out.splitlines() == ["cyc(3, t+1)", "as abelian group: Z_3"]


def test_alexander_winding(capsys):
    code, out, _ = run(capsys, "alexander", "--preset", "twist-spun-trefoil", "--winding", "2")
    assert code == 0
    assert out.strip().splitlines()[-1] == "cyc(3, t^2+1)"


def test_alexander_direct_matches_winding(capsys):
    _, a, _ = run(capsys, "alexander", "--preset", "twist-spun-trefoil", "--phi", "3,0",
                  "--direct", "--json")
    _, b, _ = run(capsys, "alexander", "--preset", "twist-spun-trefoil", "--winding", "3",
                  "--json")
    assert json.loads(a)["module"] == json.loads(b)["module"] == "cyc(3, t^3+1)"


def test_repro_paper(capsys):
    code, out, _ = run(capsys, "repro-paper", "--k", "1000", "--N", "360")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "all match"
    stage, quantity, expected, computed, ok, _ = re.split(r"\s{2,}", lines[-2])
    assert "k=1000" in quantity and expected == computed == "-5" and ok == "yes"
    code2, out2, _ = run(capsys, "repro-paper", "--k", "1000", "--N", "360")
    assert out2 == out


def test_repro_paper_json(capsys):
    code, out, _ = run(capsys, "repro-paper", "--json")
    data = json.loads(out)
    assert code == 0 and data["all_match"]
    assert [r["stage"] for r in data["rows"]][0] == "module deficiency"
    assert data["rows"][-1]["computed"] == (360 + 120 - 10000) // 120


@pytest.mark.parametrize("argv", [
    ["parse", "--preset", "DxD"],
    ["abelianize", "--preset", "binary-icosahedral"],
    ["cosets", "--preset", "binary-icosahedral"],
    ["subgroup", "--preset", "DxD", "--kernel", "--full"],
    ["alexander", "--preset", "twist-spun-trefoil"],
    ["ext2", "--module", "cyc(3,t+1)^2"],
    ["def-bound", "--module", "cyc(3,t+1)^4 + cyc(3) + free(2)", "--points", "3:-1,2:1"],
    ["assemble", "--base", "free(1)", "--windings", "1,2,0"],
    ["certify", "--k", "481", "--N", "360"],
    ["hw-check", "--beta1", "0", "--beta2", "10", "--index", "2"],
    ["hw-check", "--beta1-coeffs", "0,1", "--beta2-coeffs", "0,0,1", "--index", "5"],
])
def test_json_outputs(capsys, argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    data = json.loads(out)
    assert isinstance(data, dict)
    if "presentation" in data:
        P = parse_presentation(data["presentation"])
        assert P.ngens == len(P.generators)


def test_parse_file_round_trip(capsys, tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("< a, b | a^2 = b^3 = (a*b)^2 >\n")
    code, out, _ = run(capsys, "parse", str(f), "--json")
    data = json.loads(out)
    again = tmp_path / "h.txt"
    again.write_text(data["presentation"])
    _, out2, _ = run(capsys, "parse", str(again), "--json")
    assert json.loads(out2) == data


def test_cosets_json_schema(capsys):
    _, out, _ = run(capsys, "cosets", "--preset", "binary-icosahedral", "--json")
    data = json.loads(out)
    assert data["index"] == 120 and len(data["table"]) == 120
    assert all(len(row) == 4 for row in data["table"])


def test_certify_value(capsys):
    _, out, _ = run(capsys, "certify", "--k", "1000", "--N", "360", "--json")
    assert json.loads(out)["conclusion"]["value"] == -5


def test_def_bound_human(capsys):
    _, out, _ = run(capsys, "def-bound", "--module", "cyc(3,t+1)")
    assert out.strip() == "-1 <= def(cyc(3, t+1)) <= -1"


@pytest.mark.parametrize("argv,error", [
    (["parse"], "UsageError"),
    (["alexander", "--preset", "binary-icosahedral", "--phi", "1,0"], "RelatorPhiNonzero"),
    (["cosets", "--preset", "binary-icosahedral", "--max-cosets", "10"], "CapacityExceeded"),
    (["ext2", "--module", "cyc(t+1,t+2)"], "NotRegularSequence"),
    (["subgroup", "--preset", "binary-icosahedral", "--kernel"], "UsageError"),
])
def test_error_records(capsys, argv, error):
    code, out, err = run(capsys, *argv)
    assert code != 0
    record = json.loads(err.strip().splitlines()[-1])
    assert record["error"] == error and record["message"]


def test_error_file_missing(capsys, tmp_path):
    code, _, err = run(capsys, "parse", str(tmp_path / "nope.txt"))
    assert code != 0 and json.loads(err)["error"] == "FileNotFoundError"


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "deficiency", "ext2", "--module", "cyc(3,t+1)"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.startswith("cyc(3, t+1)")

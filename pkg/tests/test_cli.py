import io
import json
import shutil
import subprocess
from pathlib import Path

import pytest

import parascope
from parascope.cli import main

FIX = Path(parascope.__file__).parent / "fixtures"


def run(*argv):
    buf = io.StringIO()
    code = main([str(a) for a in argv], out=buf)
    return code, buf.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json")
    return code, json.loads(text)


def test_fixed_a2_flip():
    code, doc = run_json("fixed", FIX / "a2flip.json")
    assert code == 0
    assert doc["results"]["cartan_type"] == "A1"
    assert doc["results"]["weyl_order"] == 2


def test_json_document_keys():
    code, doc = run_json("validate", FIX / "a2flip.json")
    assert code == 0
    assert set(doc) == {"command", "input_digest", "results", "warnings"}
    assert doc["command"] == "validate"
    assert len(doc["input_digest"]) == 64


def test_validate_bad_j_fails_p1():
    code, doc = run_json("validate", FIX / "bad_j.json")
    assert code == 1
    text = json.dumps(doc["results"])
    assert "P1" in text


def test_lift_base_change():
    code, doc = run_json("lift", FIX / "bc_sl2.json", "--q", 3, "--all")
    assert code == 0
    res = doc["results"]
    assert res["source_classes"] == 4
    assert res["target_classes"] == 10
    assert len(res["rows"]) == 4


def test_lift_single_class():
    code, doc = run_json("lift", FIX / "bc_sl2.json", "--q", 3, "--class", 2)
    assert code == 0
    assert [r["class"]["index"] for r in doc["results"]["rows"]] == [2]
    code, _ = run("lift", FIX / "bc_sl2.json", "--q", 3, "--class", 9)
    assert code == 2


def test_threads_deterministic():
    _, a = run("lift", FIX / "a2flip.json", "--q", 5, "--json", "--threads", 1)
    _, b = run("lift", FIX / "a2flip.json", "--q", 5, "--json", "--threads", 4)
    assert a == b


def test_parse_errors(tmp_path):
    assert run("nonsense", FIX / "a2flip.json")[0] == 2
    assert run("fixed", tmp_path / "missing.json")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"gtilde": "A2 sc", "gamma": ["flip"], "colour": 1}')
    assert run("fixed", bad)[0] == 2
    bad.write_text("{not json")
    assert run("fixed", bad)[0] == 2
    assert run("tori", FIX / "a2flip.json", "--q", 6)[0] == 2


def test_char2_warning():
    code, doc = run_json("classes", FIX / "a2flip.json", "--q", 2)
    assert code == 0
    assert doc["warnings"]


def test_tori_and_classes():
    code, doc = run_json("tori", FIX / "a2flip.json", "--q", 3)
    assert code == 0
    code, doc = run_json("classes", FIX / "bc_sl2.json", "--q", 3)
    assert code == 0


def test_check_and_oracle():
    assert run("check", FIX / "a2flip.json", "--q", 3)[0] == 0
    code, doc = run_json("oracle", FIX / "bc_sl2.json", "--q", 3)
    assert code == 0
    assert doc["results"]["G~*"]["ok"]


def test_human_output():
    code, text = run("weyl-embed", FIX / "a2flip.json")
    assert code == 0 and text.strip()


@pytest.mark.skipif(shutil.which("parascope") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["parascope", "fixed", str(FIX / "a2flip.json"), "--json"],
                       capture_output=True, text=True)
    assert p.returncode == 0
    assert json.loads(p.stdout)["results"]["cartan_type"] == "A1"

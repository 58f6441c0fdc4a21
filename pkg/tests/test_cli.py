import json
import subprocess
import sys

import pytest

from pretopgroups.cli import parse_orders, run
from pretopgroups.errors import InvalidInput
from pretopgroups.io import validate


def cli(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def cli_json(capsys, *argv):
    code, out, err = cli(capsys, *argv, "--format", "json")
    data = json.loads(out)
    validate(data, f"report_{data['command']}")
    return code, data


def test_parse_orders():
    assert parse_orders("2..6") == (2, 6)
    assert parse_orders("4") == (4, 4)
    for bad in ("x", "3..2", "0..1"):
        with pytest.raises(InvalidInput):
            parse_orders(bad)


def test_classify_p6(capsys):
    code, data = cli_json(capsys, "classify", "--fixture", "P6")
    assert code == 0
    f = data["flags"]
    assert f["pretopological"] and f["strongly"] and f["symmetrically"] and f["almost"]
    assert not f["topological"]
    assert {"U": ["1", "4"], "V": ["0", "2", "4"], "intersection": ["4"]} in \
        data["witnesses"]["intersection_closed"]["records"]


def test_classify_text_table(capsys):
    code, out, _ = cli(capsys, "classify", "--fixture", "P4")
    assert code == 0
    assert "quasi" in out and "para" in out and "W" in out


def test_separation_and_query(capsys):
    code, data = cli_json(capsys, "separation", "--fixture", "P6", "--subset", "1,4", "--point", "0")
    assert code == 0 and data["t2"]
    assert data["query"]["function"]["levels"] == [["0", "3"], ["2", "5"], ["1", "4"]]


def test_closure(capsys):
    code, data = cli_json(capsys, "closure", "--fixture", "P6", "--subset", "0,3,4")
    assert data["interior"] == ["0", "3"] and not data["open"]


def test_quotient(capsys):
    code, data = cli_json(capsys, "quotient", "--fixture", "P6", "--subgroup", "0,3")
    assert code == 0
    assert len(data["cosets"]) == 3 and data["flags"]["discrete"]
    assert data["quotient_group"]["flags"]["pretopological"]


def test_prenorm_listing(capsys):
    code, out, _ = cli(capsys, "prenorm", "--fixture", "P6", "--subset", "0,3")
    assert code == 0
    assert "0:0/2^0" in out and "1:2/2^0" in out


def test_prenorm_json(capsys):
    code, data = cli_json(capsys, "prenorm", "--fixture", "P6", "--subset", "0,3")
    assert data["chains"][0]["values"]["1"] == "2/2^0"
    assert data["chains"][0]["pseudometric"]["right"][1][4] == "0/2^0"


def test_prenorm_failure_exits_1(capsys):
    # the path construction breaks the sandwich on one S3 chain
    code, data = cli_json(capsys, "prenorm", "--group", "S3", "--family", _s3_family())
    assert code == 1 and not data["ok"]


def _s3_family():
    import tempfile
    from pretopgroups.group import catalog_group
    from pretopgroups.io import family_json
    from pretopgroups.ptg import NbhdSystem, construct_from_nbhd_system
    g = catalog_group("S3")
    refl = [g.universe.mask(["r0", x]) for x in ("s0", "s1", "s2")]
    p = construct_from_nbhd_system(NbhdSystem(g, tuple(refl)))
    f = tempfile.NamedTemporaryFile("w", suffix=".json", delete=False)
    json.dump(family_json(p.topology), f)
    f.close()
    return f.name


def test_enumerate(capsys):
    code, data = cli_json(capsys, "enumerate", "--orders", "1..3")
    assert [e["count"] for e in data["pretopologies"]] == [1, 4, 45]
    assert {e["name"]: e["count"] for e in data["groups"]}["Z2"] == 2


def test_search(capsys):
    code, data = cli_json(capsys, "search", "--question", "Q-SYM-STR", "--orders", "1..4")
    assert code == 0 and data["result"] == "exhausted"


def test_check_family_only(capsys, tmp_path):
    p = tmp_path / "f.json"
    p.write_text(json.dumps({"universe": ["0", "1"], "sets": [["0"], ["1"]]}))
    code, data = cli_json(capsys, "check", "--family", str(p))
    assert code == 1 and data["pretopology"]["witness"] == {"missing": "empty"}


def test_bad_group_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"elements": ["e", "a", "b"], "table": [["e", "a", "b"], ["a", "e", "a"], ["b", "b", "e"]]}))
    code, out, err = cli(capsys, "classify", "--group", str(p))
    assert code == 2 and "NotAssociative" in err and "(a,a,b)" in err


def test_other_input_errors_exit_2(capsys):
    assert cli(capsys, "classify")[0] == 2
    assert cli(capsys, "classify", "--fixture", "P7")[0] == 2
    assert cli(capsys, "quotient", "--fixture", "P6", "--subgroup", "0,1")[0] == 2
    assert cli(capsys, "search", "--question", "Q-NOPE")[0] == 2


def test_builtin_fixtures(capsys):
    code, data = cli_json(capsys, "classify", "--fixture", "indiscrete:cyclic:3")
    assert data["opens"] == 2 and all(data["flags"].values())
    code, data = cli_json(capsys, "classify", "--fixture", "discrete:Z2xZ2")
    assert data["opens"] == 16


def test_out_file(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, stdout, _ = cli(capsys, "classify", "--fixture", "P6", "--format", "json", "--out", str(out))
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["group"] == "Z6"


def test_suite_deterministic_across_jobs(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path, jobs in ((a, "1"), (b, "3")):
        r = subprocess.run([sys.executable, "-m", "pretopgroups.cli", "suite", "--orders", "1..4",
                            "--format", "json", "--jobs", jobs, "--out", str(path)])
        assert r.returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_cap_override(capsys, monkeypatch):
    monkeypatch.setenv("PRETOP_CAP_OVERRIDE", "enumerate_n=2")
    code, data = cli_json(capsys, "enumerate", "--orders", "1..3")
    assert [e["n"] for e in data["pretopologies"]] == [1, 2]
    monkeypatch.setenv("PRETOP_CAP_OVERRIDE", "bogus=1")
    assert cli(capsys, "enumerate", "--orders", "1..2")[0] == 2

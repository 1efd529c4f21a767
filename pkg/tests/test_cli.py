import io
import json
import subprocess
import sys

import pytest

from rfca.cellular import enumerate_ca, map_to_json
from rfca.cli import build_parser, main
from rfca.monoid_core import CATALOG


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_monoid_check(capsys, tmp_path):
    code, out, _ = run(["monoid", "check", "--catalog", "z6"], capsys)
    assert code == 0 and out.startswith("valid, size 6, 1 generator")
    code, out, _ = run(["monoid", "check", "--catalog", "trivial"], capsys)
    assert code == 0 and out.startswith("valid, size 1")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"size": 3, "identity": 0, "table": [[0, 1, 2], [1, 2, 1], [2, 1, 1]]}))
    code, out, _ = run(["monoid", "check", str(bad)], capsys)
    assert code != 0 and "witness triple" in out
    code, out, _ = run(["monoid", "check", "--catalog", "z2"], capsys)
    assert "congruences: 2" in out


def test_ca_enumerate(capsys):
    code, out, _ = run(["ca", "enumerate", "--catalog", "trivial", "--alphabet", "2"], capsys)
    assert code == 0 and out.startswith("4 cellular automata")
    code, out, _ = run(["ca", "enumerate", "--catalog", "z2"], capsys)
    assert out.startswith("16 cellular automata")
    assert "identity present: yes" in out and "closed under composition: yes" in out
    code, out, err = run(["ca", "enumerate", "--catalog", "z6", "--cap", "1000"], capsys)
    assert code == 1 and out == "" and "exceeds cap" in err


def test_separate_wolfram(capsys):
    code, out, _ = run(["separate", "--wolfram", "110", "90", "--verify"], capsys)
    assert code == 0
    cert = json.loads(out)
    assert cert["witness"] == [0, 1] and cert["modulus"] == 2
    code, _, err = run(["separate", "--wolfram", "110", "110"], capsys)
    assert code == 2 and "rules define the same map" in err


def test_separate_maps(capsys, tmp_path):
    cas = enumerate_ca(CATALOG["z2"], 2)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(json.dumps(map_to_json(cas[2])))
    b.write_text(json.dumps(map_to_json(cas[9])))
    out_path = tmp_path / "c.json"
    code, _, _ = run(["separate", "--monoid", "z2", "--alphabet", "2", "--map", str(a), str(b),
                      "-o", str(out_path)], capsys)
    assert code == 0
    assert json.loads(out_path.read_text())["kind"] == "ca-finite"
    code, out, _ = run(["verify", str(out_path)], capsys)
    assert code == 0 and "valid" in out


def test_separate_rule_json(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(json.dumps({"wolfram": 30}))
    b.write_text(json.dumps({"radius": 0, "alphabet": 2, "table": [0, 1]}))
    code, out, _ = run(["separate", "--rule", str(a), str(b)], capsys)
    assert code == 0 and json.loads(out)["kind"] == "ca-integer"


def test_verify_exit_codes(capsys, tmp_path):
    code, out, _ = run(["separate", "--wolfram", "110", "90"], capsys)
    good = tmp_path / "good.json"
    good.write_text(out)
    assert run(["verify", str(good)], capsys)[0] == 0
    data = json.loads(out)
    data["image1"] = data["image2"]
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(data))
    code, out, _ = run(["verify", str(tampered)], capsys)
    assert code == 3 and "images coincide" in out
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(["verify", str(broken)], capsys)[0] == 1
    del data["kind"]
    nokind = tmp_path / "nokind.json"
    nokind.write_text(json.dumps(data))
    assert run(["verify", str(nokind)], capsys)[0] == 1


def test_malcev(capsys, tmp_path):
    js = tmp_path / "m.json"
    code, out, _ = run(["malcev", "--catalog", "z6", "--endo", "0,5,4,3,2,1", "--pair", "1", "2",
                        "--json", str(js)], capsys)
    assert code == 0
    assert "Phi injective: True" in out and "psi(1) = 5 != 4 = psi(2)" in out
    assert json.loads(js.read_text())["conclusion"] is True
    code, _, err = run(["malcev", "--catalog", "z6", "--endo", "0,2,1,3,4,5", "--pair", "1", "2"], capsys)
    assert code == 1 and "morphism equation fails" in err


def test_end_separate(capsys):
    code, out, err = run(["end-separate", "--catalog", "z2", "--endo1", "identity", "--endo2", "constant"], capsys)
    assert code == 0 and "differ" in err
    cert = json.loads(out)
    assert cert["induced1"] != cert["induced2"]
    code, _, _ = run(["end-separate", "--catalog", "z2", "--endo1", "identity", "--endo2", "identity"], capsys)
    assert code == 2


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["separate", "--wolfram", "1"])
    assert exc.value.code == 1


def test_deterministic_output(capsys):
    outs = {run(["separate", "--wolfram", "30", "45"], capsys)[1] for _ in range(3)}
    assert len(outs) == 1
    cas = enumerate_ca(CATALOG["z2"], 2)
    assert cas == enumerate_ca(CATALOG["z2"], 2)


def test_full_elementary_round_trip(capsys, monkeypatch):
    """Every pair through ``separate`` then ``verify`` on stdin."""
    parser = build_parser()
    failures = []
    for a in range(256):
        for b in range(a + 1, 256):
            args = parser.parse_args(["separate", "--wolfram", str(a), str(b)])
            assert args.func(args) == 0
            text, _ = capsys.readouterr()
            monkeypatch.setattr(sys, "stdin", io.StringIO(text))
            args = parser.parse_args(["verify", "-"])
            if args.func(args) != 0:
                failures.append((a, b))
            capsys.readouterr()
    assert failures == []


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "rfca", "separate", "--wolfram", "0", "255"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["modulus"] == 1

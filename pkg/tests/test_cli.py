import json

import pytest

from arithsurf.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_surface_normal_form(capsys):
    code, doc = run_cli(capsys, "surface", "normal-form", "-n", "1", "-f", "0")
    assert code == 0
    assert doc["equation"] == "x0*y0 + x1*y1 = 0"
    assert doc["smooth"] is True
    assert doc["profile"]["generic"] == [0, 1]
    assert doc["meta"]["tool"] == "arithsurf"


def test_surface_normal_form_profile(capsys):
    code, doc = run_cli(capsys, "surface", "normal-form", "-n", "2", "-f", "5*x0*x1")
    assert code == 0
    assert doc["equation"] == "x0^2*y0 + x1^2*y1 + 5*x0*x1*y2 = 0"
    assert doc["profile"]["jumps"] == {"5": [0, 2]}


def test_bundle_build_prescribed(capsys):
    code, doc = run_cli(
        capsys, "bundle", "build", "--generic-type", "0", "--jump", "2:1", "--jump", "3:2"
    )
    assert code == 0
    assert doc["profile"] == {
        "generic": [-1, -1],
        "jumps": {"2": [-2, 0], "3": [-3, 1]},
    }


def test_bundle_check_reports_identities(capsys):
    code, doc = run_cli(capsys, "bundle", "check", "--generic-type", "1", "--jump", "5:3")
    assert code == 0
    assert doc["parity_deltas"] == {"5": 6}
    assert doc["type_h0"] == {"5": {"delta": 6, "fiber_h0": 3}}


def test_bundle_profile_audit_mode(capsys):
    code, doc = run_cli(
        capsys,
        "bundle",
        "profile",
        "-n",
        "2",
        "-f",
        "6*x0*x1",
        "--primes-up-to",
        "13",
    )
    assert code == 0
    audit = doc["audit"]
    assert audit["2"] == [0, 2] and audit["3"] == [0, 2]
    for p in ("5", "7", "11", "13"):
        assert audit[p] == [1, 1]


def test_bundle_round_trip_through_file(tmp_path, capsys):
    out = tmp_path / "bundle.json"
    code, doc = run_cli(
        capsys, "bundle", "build", "--generic-type", "0", "--jump", "2:1",
        "--output", str(out),
    )
    assert code == 0
    code, doc2 = run_cli(capsys, "bundle", "profile", "--bundle", str(out))
    assert code == 0
    assert doc2["profile"] == doc["profile"]


def test_transform_apply_and_errors(capsys):
    code, doc = run_cli(
        capsys,
        "transform",
        "apply",
        "--generic-type",
        "0",
        "--prime",
        "2",
        "--twist",
        "0",
        "--g",
        "x0",
        "--h",
        "x1",
    )
    assert code == 0
    assert doc["profile"]["jumps"] == {"2": [-2, 0]}
    # non-coprime pair: domain error, exit 2, error name in the document
    code, doc = run_cli(
        capsys,
        "transform",
        "apply",
        "--generic-type",
        "0",
        "--prime",
        "3",
        "--twist",
        "1",
        "--g",
        "x0^2",
        "--h",
        "x0*x1",
    )
    assert code == 2
    assert doc["error"] == "NotSurjective"


def test_transform_factorize(capsys):
    code, doc = run_cli(
        capsys,
        "transform",
        "factorize",
        "--generic-type",
        "1",
        "--prime",
        "3",
        "--twist",
        "0",
        "--g",
        "x0",
        "--h",
        "x1^2",
    )
    assert code == 0
    rec = doc["factorization"]
    assert rec["p"] == "3"
    assert rec["center_V"]["degree"] == 1


def test_delpezzo_classify(capsys):
    code, doc = run_cli(
        capsys, "delpezzo", "classify", "--points", "1:0:0,0:1:0,0:0:1,1:1:1"
    )
    assert code == 0
    assert doc["model"] == "blowup_P2_4pts" and doc["K2"] == 5


def test_delpezzo_domain_error(capsys):
    code, doc = run_cli(
        capsys, "delpezzo", "classify", "--points", "1:0:0,0:1:0,0:0:1,2:3:5"
    )
    assert code == 2
    assert doc["error"] == "NotGeneralPosition"
    assert doc["witness"]["kind"] == "triple"


def test_delpezzo_five_points_mod2(capsys):
    code, doc = run_cli(
        capsys, "delpezzo", "classify", "--points",
        "1:0:0,0:1:0,0:0:1,1:1:1,3:5:7",
    )
    assert code == 2
    assert doc["error"] == "TooManyPoints"
    assert doc["witness"]["primes"] in ([], ["2"])


def test_usage_error_exit_code(capsys):
    # malformed flag payload: reported as usage, exit 1
    code = main(["bundle", "build", "--generic-type", "0", "--jump", "nonsense"])
    assert code == 1
    capsys.readouterr()
    # argparse-level failure: unknown option, also exit 1
    with pytest.raises(SystemExit) as exc:
        main(["bundle", "build", "--no-such-flag"])
    assert exc.value.code == 1


def test_determinism(capsys):
    code1 = main(["surface", "normal-form", "-n", "2", "-f", "3*x0*x1"])
    out1 = capsys.readouterr().out
    code2 = main(["surface", "normal-form", "-n", "2", "-f", "3*x0*x1"])
    out2 = capsys.readouterr().out
    assert code1 == code2 == 0
    assert out1 == out2


def test_selftest_subset(capsys):
    code = main(["selftest", "--only", "3", "--only", "7"])
    captured = capsys.readouterr()
    doc = json.loads(captured.out)
    assert code == 0
    assert doc["passed"] is True
    assert [c["number"] for c in doc["criteria"]] == [3, 7]
    assert "criterion 3" in captured.err

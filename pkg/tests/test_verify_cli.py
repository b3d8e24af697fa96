import json

import pytest

from teichgap import cli
from teichgap import origami as O
from teichgap import verify as V


def _check_schema(doc):
    assert set(doc) == {"suite", "claims", "overall"}
    assert doc["overall"] in ("pass", "fail")
    ids = [c["id"] for c in doc["claims"]]
    assert len(ids) == len(set(ids))
    for c in doc["claims"]:
        assert set(c) == {"id", "anchor", "status", "witness"}
        assert c["status"] in ("pass", "fail", "skipped-budget")


@pytest.mark.parametrize("suite", ["group", "origami-x", "origami-y", "origami-z", "spectral"])
def test_suites_pass(suite):
    rep = V.run_suite(suite, [3])
    assert rep.overall, rep.to_text()
    _check_schema(json.loads(rep.to_json()))


def test_run_suite_rejects_bad_input():
    with pytest.raises(ValueError):
        V.run_suite("group", [])
    with pytest.raises(ValueError):
        V.run_suite("nope", [3])


def test_orbit_budget_marks_skipped(monkeypatch):
    rep = V.VerificationReport("t")
    V._orbit_claim(rep, "c", "a", C_L3, 3, budget=1e-9)
    assert rep.claims[0].status == V.SKIP and "budget" in rep.claims[0].witness
    assert rep.overall


C_L3 = O.Origami((1, 0, 2), (2, 1, 0))


def test_theorem_a_k3_and_k2():
    assert V.certificate_theorem_A(3, budget=5, max_orbit=200).overall
    rep2 = V.certificate_theorem_A(2, budget=5, max_orbit=100)
    status = {c.id: c.status for c in rep2.claims}
    assert status["theoremA.complementary-series"] == V.FAIL
    assert status["theoremA.containment"] == V.PASS


def test_cli_build_inspect_round_trip(tmp_path, capsys):
    out = tmp_path / "z3.orig"
    assert cli.main(["build", "z", "--k", "3", "-o", str(out), "--labels", str(tmp_path / "z3.lab")]) == 0
    assert cli.main(["inspect", str(out)]) == 0
    text = capsys.readouterr().out
    assert "genus: 147" in text and "horizontal cylinders: 95" in text and "vertical cylinders: 94" in text
    from teichgap import constructions as C
    assert O.canonical_form(O.loads(out.read_text())) == O.canonical_form(C.build_Z(3).origami)
    assert (tmp_path / "z3.lab").read_text().startswith("labels n=576")


def test_cli_member(capsys):
    assert cli.main(["member", "--matrix", "29 12 12 5", "--k", "3"]) == 0
    out = capsys.readouterr().out
    assert "in +-Gamma_6(6): yes" in out and "word: x y x y" in out


def test_cli_appendix_and_spectral(capsys):
    assert cli.main(["appendix-min-n"]) == 0
    assert capsys.readouterr().out.strip() == "170"
    assert cli.main(["spectral", "--k", "2", "3"]) == 0
    assert "0.163557" in capsys.readouterr().out


def test_cli_iso_and_veech(tmp_path, capsys):
    x = tmp_path / "x.orig"
    e = tmp_path / "e.orig"
    cli.main(["build", "x", "-o", str(x)])
    cli.main(["build", "e2", "-o", str(e)])
    assert cli.main(["iso", str(x), str(x)]) == 0
    assert cli.main(["iso", str(x), str(e)]) == 1
    assert cli.main(["veech", str(x)]) == 0
    assert "orbit size: 1" in capsys.readouterr().out


def test_cli_verify_json(capsys):
    assert cli.main(["verify", "spectral", "--k", "3", "4", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    _check_schema(doc)
    assert doc["overall"] == "pass"


def test_cli_verify_failure_exit_code(capsys):
    assert cli.main(["verify", "theorem-a", "--k", "2", "--budget", "2"]) == 1


def test_cli_parse_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["build", "w"])
    assert exc.value.code == 2
    assert cli.main(["member", "--matrix", "1 2 3"]) == 2
    assert cli.main(["member", "--matrix", "2 0 0 2"]) == 2
    bad = tmp_path / "bad.orig"
    bad.write_text("origami n=2\na 1 1\nb 1 2\n")
    assert cli.main(["inspect", str(bad)]) == 2

import copy
import json

import pytest

from quasihopf.catalog import catalog_names, catalog_entry
from quasihopf.cli import main
from quasihopf.io import (parse_algebra_dict, algebra_to_dict, load_algebra,
                          emit_algebra, ParseError, AxiomError,
                          UnsupportedField)


def _emit_path(tmp_path, name):
    path = tmp_path / ("%s.json" % name)
    assert main(["examples", "emit", name, str(path)]) == 0
    return path


# ------------------------------------------------------------ files

def test_round_trip_catalog(tmp_path):
    for name in catalog_names():
        A = catalog_entry(name)
        doc = algebra_to_dict(A)
        B, rep = parse_algebra_dict(doc, name=name)
        assert rep.all_pass
        assert algebra_to_dict(B) == doc  # parse o emit = identity


def test_phi_inv_solved_when_missing(tmp_path):
    A = catalog_entry("kz2_twisted")
    doc = algebra_to_dict(A)
    del doc["phi_inv"]
    B, rep = parse_algebra_dict(doc)
    assert rep.all_pass
    assert B.phi_inv == A.phi_inv  # Phi is its own inverse here


def test_axiom_error_names_failing_axiom():
    A = catalog_entry("kz2_group")
    doc = copy.deepcopy(algebra_to_dict(A))
    doc["mult"][1][1][1] = "5"  # g*g = 1 + 5g breaks the counit axiom
    with pytest.raises(AxiomError) as exc:
        parse_algebra_dict(doc)
    assert exc.value.failing
    B, rep = parse_algebra_dict(doc, verify=False)
    assert not rep.all_pass

    # a genuinely non-associative corruption: flip the sign of x g in
    # sweedler4 so that (x g) g = -x while x (g g) = x
    doc = copy.deepcopy(algebra_to_dict(catalog_entry("sweedler4")))
    doc["mult"][2][1][3] = "1"
    with pytest.raises(AxiomError) as exc:
        parse_algebra_dict(doc)
    assert "associativity" in exc.value.failing


def test_parse_rejects_degenerate_and_malformed():
    with pytest.raises(ParseError):
        parse_algebra_dict({"field": "Q", "n": 0, "mult": [], "comul": [],
                            "unit": [], "counit": [], "phi": []})
    with pytest.raises(ParseError):
        parse_algebra_dict({"field": "Q", "n": 1})
    with pytest.raises(UnsupportedField):
        parse_algebra_dict({"field": {"Fp": 6}, "n": 1, "mult": [[[1]]],
                            "comul": [[[1]]], "unit": [1], "counit": [1],
                            "phi": [1]})


def test_prime_field_scalars():
    doc = {"field": {"Fp": 3}, "n": 1, "mult": [[["4"]]], "comul": [[["1"]]],
           "unit": ["1"], "counit": ["1/1"], "phi": ["7"]}
    A, rep = parse_algebra_dict(doc)
    assert rep.all_pass
    assert A.mult[0][0][0] == 1 and A.phi[0] == 1


# ------------------------------------------------------------ commands

def test_cli_report_exit_codes(tmp_path, capsys):
    path = _emit_path(tmp_path, "kz2_twisted")
    assert main(["report", str(path)]) == 0
    path = _emit_path(tmp_path, "idempotent_monoid")
    capsys.readouterr()
    assert main(["report", str(path)]) == 1


def test_cli_report_payload(tmp_path, capsys):
    path = _emit_path(tmp_path, "kz2_twisted")
    capsys.readouterr()
    assert main(["report", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["preantipode_exists"] is True
    assert doc["consistent"] is True
    assert doc["witnesses"]["preantipode"] == [["0", "1"], ["1", "0"]]
    assert doc["predicates"]["fusion_operators"] is True
    assert set(doc["unconditional"].values()) == {"pass"}


def test_cli_report_deterministic(tmp_path, capsys):
    path = _emit_path(tmp_path, "kz2_group")
    capsys.readouterr()
    assert main(["report", str(path)]) == 0
    first = capsys.readouterr().out
    assert main(["report", str(path)]) == 0
    second = capsys.readouterr().out
    assert first == second and first


def test_cli_verify_failing_axiom(tmp_path, capsys):
    path = _emit_path(tmp_path, "kz2_group")
    doc = json.loads(path.read_text())
    doc["mult"][1][1][1] = "5"
    path.write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(["verify", str(path)]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out["all_pass"] is False
    assert "fail" in out["checks"].values()


def test_cli_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["verify", str(bad)]) == 2
    assert main(["report", str(tmp_path / "missing.json")]) == 2
    assert main(["examples", "emit", "nope", str(tmp_path / "x.json")]) == 2


def test_cli_preantipode(tmp_path, capsys):
    path = _emit_path(tmp_path, "sweedler4")
    capsys.readouterr()
    assert main(["preantipode", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["agreement"] is True
    assert doc["solver"]["solution_set_dim"] == 0

    path = _emit_path(tmp_path, "kz4_monoid")
    capsys.readouterr()
    assert main(["preantipode", str(path)]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["solver"]["found"] is False
    assert doc["extraction"]["status"] == "partial"
    assert doc["agreement"] is True


def test_cli_integrals(tmp_path, capsys):
    path = _emit_path(tmp_path, "sweedler4")
    capsys.readouterr()
    assert main(["integrals", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["left_dim"] == 1 and doc["right_dim"] == 1
    assert doc["unimodular"] is False


def test_cli_no_verify_flag(tmp_path, capsys):
    path = _emit_path(tmp_path, "kz2_group")
    doc = json.loads(path.read_text())
    doc["mult"][1][1][1] = "5"
    path.write_text(json.dumps(doc))
    capsys.readouterr()
    # integrals on a non-algebra still computes with --no-verify
    assert main(["--no-verify", "integrals", str(path)]) == 0
    # without the flag, parsing fails with an error exit
    assert main(["integrals", str(path)]) == 2


def test_cli_tight_witness_cap_keeps_predicates_consistent(tmp_path, capsys):
    # a small cap prunes witness pairs but must never manufacture predicate
    # disagreement: the distinguished components stay evaluated
    path = _emit_path(tmp_path, "kz4_monoid")
    capsys.readouterr()
    assert main(["--witness-cap", "64", "report", str(path)]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["consistent"] is True
    assert doc["predicates"]["psi_witness_pairs"] is False
    assert doc["predicates"]["fusion_operators"] is False


def test_digest_stable(tmp_path):
    path = _emit_path(tmp_path, "kz2_group")
    _, _, d1 = load_algebra(str(path))
    _, _, d2 = load_algebra(str(path))
    assert d1 == d2 and len(d1) == 64

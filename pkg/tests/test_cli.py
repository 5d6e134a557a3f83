"""CLI behavior: sources, budgets, reports, schemas, exit codes."""

import json
import subprocess
import sys

import pytest

jsonschema = pytest.importorskip("jsonschema")

from heckebialg.cli import (
    CLIError,
    builtin_operator,
    load_operator,
    main,
    operator_from_document,
    operator_to_document,
    save_operator,
)
from heckebialg.rmatrix import dj_r_matrix, super_flip

SCHEMA_DIR = __file__.rsplit("/", 2)[0] + "/docs"


def report_schema():
    with open(SCHEMA_DIR + "/verification-report.schema.json") as fh:
        return json.load(fh)


def file_schema():
    with open(SCHEMA_DIR + "/rmatrix-file.schema.json") as fh:
        return json.load(fh)


def run(args):
    return main(args)


def read_report(path):
    with open(path) as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# sources


def test_builtin_parsing():
    assert builtin_operator("dj:2").d == 2
    assert builtin_operator("flip:3").d == 3
    assert builtin_operator("superflip:1|1").d == 2
    for bad in ("dj", "dj:x", "superflip:1", "gauss:2"):
        with pytest.raises(CLIError):
            builtin_operator(bad)


def test_operator_document_roundtrip():
    op = dj_r_matrix(2)
    doc = operator_to_document(op)
    jsonschema.validate(doc, file_schema())
    back = operator_from_document(doc)
    assert back.d == op.d and back.q == op.q
    assert back.R == op.R
    # canonical-form stability: a second serialization is identical
    assert operator_to_document(back)["entries"] == doc["entries"]


def test_operator_file_roundtrip(tmp_path):
    op = super_flip(1, 1)
    path = str(tmp_path / "op.json")
    save_operator(op, path)
    back = load_operator(path)
    assert back.R == op.R and back.q == op.q


def test_corrupted_entry_rejected(tmp_path):
    doc = operator_to_document(dj_r_matrix(2))
    doc["entries"][0][0] = "5"  # breaks the quadratic relation
    with pytest.raises(CLIError, match="rejected"):
        operator_from_document(doc)


def test_bad_scalar_rejected():
    doc = operator_to_document(dj_r_matrix(2))
    doc["entries"][1][2] = "p +* 3"
    with pytest.raises(CLIError, match=r"\(1, 2\)"):
        operator_from_document(doc)


def test_wrong_shape_rejected():
    doc = operator_to_document(dj_r_matrix(2))
    doc["entries"] = doc["entries"][:3]
    with pytest.raises(CLIError, match="4x4"):
        operator_from_document(doc)


def test_missing_file():
    with pytest.raises(CLIError, match="cannot read"):
        load_operator("/nonexistent/op.json")


def test_specialized_document_roundtrip(tmp_path):
    from fractions import Fraction

    op = dj_r_matrix(2).specialize(Fraction(3, 2))
    doc = operator_to_document(op)
    assert doc["parameter"] == "3/2"
    jsonschema.validate(doc, file_schema())
    back = operator_from_document(doc)
    assert back.specialized_at == Fraction(3, 2)


# ---------------------------------------------------------------------------
# subcommands and exit codes


def test_axioms_pass():
    assert run(["axioms", "--builtin", "dj:2"]) == 0
    assert run(["axioms", "--builtin", "superflip:1|1"]) == 0


def test_requires_exactly_one_source(capsys):
    assert run(["axioms"]) == 2
    assert "exactly one" in capsys.readouterr().err
    assert run(["axioms", "--builtin", "dj:2", "--file", "x.json"]) == 2


def test_dims_s(tmp_path):
    out = str(tmp_path / "r.json")
    assert run(["dims", "--builtin", "dj:2", "-a", "S", "-N", "5", "-o", out]) == 0
    doc = read_report(out)
    vals = [c["computed"]["direct-rank"] for c in doc["checks"]]
    assert vals == [1, 2, 3, 4, 5, 6]
    jsonschema.validate(doc, report_schema())


def test_dims_edual(tmp_path):
    out = str(tmp_path / "r.json")
    assert run(["dims", "--builtin", "dj:2", "-a", "Edual", "-N", "5", "-o", out]) == 0
    vals = [c["computed"]["direct-rank"] for c in read_report(out)["checks"]]
    assert vals == [1, 4, 6, 4, 1, 0]


def test_dims_e_has_centralizer_route(tmp_path):
    out = str(tmp_path / "r.json")
    assert run(["dims", "--builtin", "dj:2", "-a", "E", "-N", "3", "-o", out]) == 0
    doc = read_report(out)
    n2 = doc["checks"][2]
    assert n2["computed"] == {"direct-rank": 10, "centralizer": 10}
    assert n2["expected"] == 10
    assert set(n2["routes"]) == {"direct-rank", "centralizer"}


def test_dims_trivial_flip1(tmp_path):
    out = str(tmp_path / "r.json")
    assert run(["dims", "--builtin", "flip:1", "-a", "E", "-N", "6", "-o", out]) == 0
    vals = [c["computed"]["direct-rank"] for c in read_report(out)["checks"]]
    assert vals == [1] * 7


def test_poincare_dj2(tmp_path):
    out = str(tmp_path / "r.json")
    assert run(["poincare", "--builtin", "dj:2", "-N", "4", "-o", out]) == 0
    doc = read_report(out)
    e_vals = [
        c["expected"] for c in doc["checks"] if c["name"] == "poincare/e-dimension"
    ]
    assert e_vals == [1, 4, 10, 20, 35]
    jsonschema.validate(doc, report_schema())


def test_poincare_dj3(tmp_path):
    out = str(tmp_path / "r.json")
    assert run(["poincare", "--builtin", "dj:3", "-N", "3", "-o", out]) == 0
    e_vals = [
        c["expected"]
        for c in read_report(out)["checks"]
        if c["name"] == "poincare/e-dimension"
    ]
    assert e_vals == [1, 9, 45, 165]


def test_poincare_superflip(tmp_path):
    out = str(tmp_path / "r.json")
    assert run(["poincare", "--builtin", "superflip:1|1", "-N", "3", "-o", out]) == 0
    doc = read_report(out)
    e_vals = [
        c["expected"] for c in doc["checks"] if c["name"] == "poincare/e-dimension"
    ]
    assert e_vals == [1, 4, 8, 12]
    rec = [c for c in doc["checks"] if c["name"] == "poincare/character-recursion"]
    assert rec and rec[0]["ok"]


def test_koszul_s_distributive():
    assert run(["koszul", "--builtin", "dj:2", "-a", "S", "-n", "4"]) == 0


def test_koszul_inconclusive_exits_nonzero(tmp_path):
    out = str(tmp_path / "r.json")
    code = run(["koszul", "--builtin", "dj:2", "-a", "E", "-n", "3", "--cap", "1", "-o", out])
    assert code == 1
    doc = read_report(out)
    dist = [c for c in doc["checks"] if "distributivity" in c["name"]][0]
    assert dist["computed"]["status"] == "inconclusive"
    assert not doc["ok"]


def test_schur_dj2(tmp_path):
    out = str(tmp_path / "r.json")
    assert run(["schur", "--builtin", "dj:2", "-n", "3", "-o", out]) == 0
    doc = read_report(out)
    three = [c for c in doc["checks"] if c["name"] == "schur/dimension-three-routes"][0]
    assert three["computed"]["sum_of_squares"] == 20
    assert three["computed"]["centralizer"] == 20
    assert three["computed"]["e_dimension"] == 20


def test_schur_specialized_runs_two_routes(tmp_path):
    out = str(tmp_path / "r.json")
    code = run(
        ["schur", "--builtin", "dj:2", "--specialize", "p=3/2", "-n", "2", "-o", out]
    )
    assert code == 0
    doc = read_report(out)
    names = [c["name"] for c in doc["checks"]]
    assert "schur/dimension-two-routes" in names
    assert "schur/dimension-three-routes" not in names
    assert "@p=3/2" in doc["operator"]


def test_poincare_specialized(tmp_path):
    out = str(tmp_path / "r.json")
    assert run(["poincare", "--builtin", "dj:2", "--specialize", "p=5/3", "-N", "3", "-o", out]) == 0
    doc = read_report(out)
    p_rec = [c for c in doc["checks"] if c["name"] == "poincare/p-sequence"][0]
    assert p_rec["routes"] == ["formula"]


def test_bad_specialization(capsys):
    assert run(["dims", "--builtin", "dj:2", "--specialize", "3/2"]) == 2
    assert "p=<rational>" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# budgets


def test_budget_refusal(capsys):
    code = run(["dims", "--builtin", "dj:2", "-a", "E", "-N", "8", "--max-dim", "100"])
    assert code == 2
    err = capsys.readouterr().err
    assert "budget" in err and "HBL_MAX_AMBIENT" in err


def test_budget_env(monkeypatch, capsys):
    monkeypatch.setenv("HBL_MAX_AMBIENT", "10")
    assert run(["dims", "--builtin", "dj:2", "-a", "E", "-N", "3"]) == 2
    # an explicit flag wins over the environment
    assert run(["dims", "--builtin", "dj:2", "-a", "E", "-N", "3", "--max-dim", "4096"]) == 0


def test_budget_skips_optional_direct_route(tmp_path):
    # over-budget direct ranks are skipped inside poincare (the formula
    # route carries on), while the mandatory S-series stays within budget
    out = str(tmp_path / "r.json")
    assert run(["poincare", "--builtin", "dj:2", "-N", "4", "--max-dim", "64", "-o", out]) == 0
    doc = read_report(out)
    e4 = [c for c in doc["checks"] if c["name"] == "poincare/e-dimension"][4]
    assert e4["routes"] == ["formula"]


# ---------------------------------------------------------------------------
# the aggregate report


def test_report_small(tmp_path):
    out = str(tmp_path / "r.json")
    assert run(["report", "--builtin", "dj:2", "-N", "2", "-o", out]) == 0
    doc = read_report(out)
    assert doc["ok"] is True
    assert doc["command"] == "report"
    jsonschema.validate(doc, report_schema())
    names = {c["name"] for c in doc["checks"]}
    assert "axioms/hecke-quadratic" in names
    assert "poincare/character-recursion" in names
    assert any(n.startswith("koszul/distributivity") for n in names)
    assert any(n.startswith("schur/") for n in names)


def test_report_deterministic(tmp_path):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    assert run(["report", "--builtin", "superflip:1|1", "-N", "2", "-o", a]) == 0
    assert run(["report", "--builtin", "superflip:1|1", "-N", "2", "-o", b]) == 0

    def strip(doc):
        for c in doc["checks"]:
            c["elapsed"] = 0.0
        return doc

    assert strip(read_report(a)) == strip(read_report(b))


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "heckebialg.cli", "axioms", "--builtin", "dj:2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "all checks passed" in proc.stdout


def test_file_source_through_cli(tmp_path):
    path = str(tmp_path / "op.json")
    save_operator(dj_r_matrix(2), path)
    assert run(["axioms", "--file", path]) == 0

import json
from pathlib import Path

import jsonschema
import pytest

from wzverify import cli
from wzverify.registry import IDENTITIES

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "report_schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def validate(doc):
    jsonschema.validate(doc, SCHEMA, format_checker=jsonschema.FormatChecker())


def strip_volatile(doc):
    doc = dict(doc, config=dict(doc["config"]))
    doc.pop("timestamp")
    doc["config"].pop("json_path")
    return doc


def test_list(capsys):
    code, out = run(capsys, "list")
    assert code == 0
    lines = out.splitlines()
    assert sum(line.startswith("Identity ") for line in lines) == 10
    assert any(line.startswith("Identity 8: variants series, via_g, expanded; f(1/2)=7·ζ(3)") for line in lines)
    assert "18 certificates:" in lines
    assert sum(line.strip().startswith("id") for line in lines) == 18


def test_list_json(capsys):
    code, out = run(capsys, "list", "--json", "-")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["identities"]) == 10 and len(doc["certificates"]) == 18


def test_wz_first_identity(capsys, tmp_path):
    errata = tmp_path / "ERRATA.md"
    code, out = run(capsys, "wz", "--id", "1", "--errata", str(errata))
    assert code == 0
    assert out.count("VALID ") == 2 and "INVALID" not in out
    assert not errata.exists()


def test_wz_mutation_smoke(capsys, tmp_path):
    code, out = run(capsys, "wz", "--id", "1", "--mutate-smoke", "--errata", str(tmp_path / "E.md"))
    assert code == 0
    assert out.count("(injected perturbation)") == 2
    assert all(line.startswith("INVALID") for line in out.splitlines() if "injected" in line)
    assert not (tmp_path / "E.md").exists()


def test_wz_all_writes_append_only_errata(capsys, tmp_path):
    errata = tmp_path / "ERRATA.md"
    path = tmp_path / "wz.json"
    code, out = run(capsys, "wz", "--all", "--errata", str(errata), "--json", str(path))
    assert code == 0
    assert "12 of 18 certificates valid" in out
    text = errata.read_text()
    assert text.count("\n## ") == 6
    for name in ("id3B", "id4A", "id4B", "id5B", "id7", "id10A"):
        assert f"## {name} " in text
    doc = json.loads(path.read_text())
    validate(doc)
    assert doc["summary"]["certificates_invalid"] == 6
    run(capsys, "wz", "--all", "--errata", str(errata))
    assert errata.read_text() == text


def test_append_errata_keeps_existing_entries(tmp_path):
    from wzverify.certificates import BY_NAME
    from wzverify.hyperterm import check_wz

    errata = tmp_path / "E.md"
    errata.write_text("# hand-written notes\n")
    assert cli.append_errata(errata, [check_wz(BY_NAME["id7"])]) == 1
    assert cli.append_errata(errata, [check_wz(BY_NAME["id7"])]) == 0
    assert errata.read_text().startswith("# hand-written notes\n## id7 ")


def test_verify_default_point(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out = run(capsys, "verify", "--id", "1", "--grid", "0.3", "--prec", "256", "--tol", "1e-20",
                    "--json", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    validate(doc)
    variants = {c["variant"]: c["verdict"] for c in doc["checks"]}
    assert variants == {"series": "pass", "closed": "pass"}
    assert doc["config"]["grid"] == ["0.3"]
    assert "2 passed, 0 failed" in out


def test_verify_singular_point_is_skipped(capsys):
    code, out = run(capsys, "verify", "--id", "2", "--variant", "closed", "--grid", "1/2")
    assert code == 0
    assert "[SKIPPED]" in out and "vanishes at a = 1/2" in out


def test_verify_special(capsys):
    code, out = run(capsys, "verify", "--id", "9", "--special", "--grid", "1/5")
    assert code == 0
    assert "256·ζ(3)" in out


def test_verify_limits(capsys, tmp_path):
    path = tmp_path / "lim.json"
    code, _ = run(capsys, "verify", "--id", "8", "--limits", "--grid", "0.3", "--json", str(path))
    doc = json.loads(path.read_text())
    validate(doc)
    assert code == 0
    kinds = [c["kind"] for c in doc["checks"]]
    assert kinds.count("limit") == 2 and "auxiliary" in kinds


def test_failing_check_sets_exit_code(capsys):
    code, out = run(capsys, "verify", "--id", "4", "--grid", "0.3", "--telescope", "2")
    assert code == 1
    assert "[FAIL   ] telescoping id4   id4A K=2" in out


def test_telescoping_pole_is_skipped(capsys):
    code, out = run(capsys, "verify", "--id", "1", "--variant", "series", "--grid", "1/2", "--telescope", "1")
    assert code == 0
    assert "SingularParameter" in out


def test_reports_reproducible(capsys, tmp_path):
    docs = []
    for i in range(2):
        path = tmp_path / f"{i}.json"
        run(capsys, "verify", "--id", "6", "--grid", "1/5", "--derivatives", "--json", str(path))
        docs.append(strip_volatile(json.loads(path.read_text())))
    assert docs[0] == docs[1]


def test_parallel_matches_serial(capsys, tmp_path):
    out = []
    for jobs in ("1", "2"):
        path = tmp_path / f"{jobs}.json"
        run(capsys, "verify", "--id", "3,7", "--grid", "1/10", "--jobs", jobs, "--json", str(path))
        doc = strip_volatile(json.loads(path.read_text()))
        doc["config"].pop("jobs")
        out.append(doc)
    assert out[0] == out[1]


def test_export_round_trip(capsys, tmp_path):
    from wzverify.registry import import_document

    path = tmp_path / "reg.json"
    assert run(capsys, "export", "--json", str(path))[0] == 0
    assert import_document(json.loads(path.read_text())) == IDENTITIES
    code, out = run(capsys, "export")
    assert json.loads(out)["identities"][4]["lhs"]["z"] == "-27/512"


def test_constants(capsys):
    code, out = run(capsys, "constants", "--digits", "30")
    assert code == 0
    rows = dict(line.split() for line in out.splitlines())
    assert rows["pi"] == "3.14159265358979323846264338328"
    assert rows["catalan"].startswith("0.91596559417721901505")
    code, out2 = run(capsys, "constants", "--digits", "30", "--route", "1")
    assert out2 == out


def test_env_overrides(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv(cli.ENV_PREC, "128")
    path = tmp_path / "e.json"
    run(capsys, "verify", "--id", "1", "--variant", "closed", "--grid", "1/5", "--json", str(path))
    assert json.loads(path.read_text())["config"]["prec"] == 128


def test_invalid_config(capsys):
    assert cli.main(["verify", "--id", "1", "--prec", "32"]) == 2
    assert cli.main(["verify", "--id", "1", "--tol", "0"]) == 2
    with pytest.raises(SystemExit):
        cli.main(["verify", "--id", "11"])


def test_all_flag_enables_every_suite():
    ns = cli.build_parser().parse_args(["verify", "--all"])
    cfg = cli.config_from_args(ns)
    assert cfg.ids == list(range(1, 11))
    assert cfg.special and cfg.derivatives and cfg.limits and cfg.boundary and cfg.telescope == 5


def test_task_errors_become_reports():
    (rep,) = cli._run_task(("check_boundary_limit", ("id2B", "1/4", 128)))
    assert rep.verdict == "error" and rep.identity == 2 and "KeyError" in rep.note
    (rep,) = cli._run_task(("check_telescoping", ("id1B", "1/2", 1, 128)))
    assert rep.verdict == "skipped" and rep.a == "1/2"

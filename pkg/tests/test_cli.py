import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest
import yaml

from geocalc.cli import SpecError, build_case, load_schema, main, validate_spec

ROOT = Path(__file__).resolve().parents[1]
SPECS = ROOT / "demos" / "specs"

SPHERE = {
    "version": 1,
    "name": "sphere",
    "signature": [2, 0],
    "coordinates": ["t", "p"],
    "domain": {"t": [0.2, 2.9], "p": [0.2, 6.0]},
    "cotetrad": [["1", "0"], ["0", "sin(t)"]],
    "connection": "levi-civita",
}


def write_spec(tmp_path, doc, name="spec.yaml"):
    p = tmp_path / name
    p.write_text(yaml.safe_dump(doc), encoding="utf-8")
    return str(p)


def spec_with(**changes):
    doc = json.loads(json.dumps(SPHERE))
    doc.update(changes)
    return doc


def test_sphere_spec_passes(capsys):
    assert main(["run", str(SPECS / "sphere.yaml")]) == 0
    out = capsys.readouterr().out
    assert "ω²₁ = cot(t)·θ²" in out


def test_teleparallel_spec_fails_on_evans(capsys):
    assert main(["run", str(SPECS / "sphere-teleparallel.yaml"), "-q"]) == 1


def test_torsion_spec_passes():
    assert main(["run", str(SPECS / "minkowski-torsion.yaml"), "-q"]) == 0


def test_grammar_error_reports_position(capsys):
    assert main(["run", str(SPECS / "bad-grammar.yaml")]) == 2
    err = capsys.readouterr().err
    assert "position 5" in err
    assert "sin(t" in err and "^" in err


def test_singular_cotetrad(capsys):
    assert main(["run", str(SPECS / "singular.yaml")]) == 2
    assert "singular" in capsys.readouterr().err


def test_literal_division_by_zero(tmp_path, capsys):
    path = write_spec(tmp_path, spec_with(cotetrad=[["1", "0"], ["0", "1/(t - t)"]]))
    assert main(["run", path]) == 2


@pytest.mark.parametrize(
    "changes, fragment",
    [
        ({"signature": [3, 0]}, "signature"),
        ({"cotetrad": [["1", "0"]]}, "cotetrad"),
        ({"domain": {"t": [0.2, 2.9]}}, "domain"),
        ({"domain": {"t": [2.9, 0.2], "p": [0.2, 6.0]}}, "interval"),
        ({"checks": ["nope"]}, "unknown check"),
        ({"version": 7}, ""),
        ({"connection": "affine"}, ""),
    ],
)
def test_invalid_specs_exit_2(tmp_path, capsys, changes, fragment):
    path = write_spec(tmp_path, spec_with(**changes))
    assert main(["run", path]) == 2
    assert fragment in capsys.readouterr().err


def test_validate_spec_raises_spec_error():
    with pytest.raises(SpecError):
        validate_spec(spec_with(coordinates=["t"]))


def test_missing_file(capsys):
    assert main(["run", "/nonexistent/spec.yaml"]) == 2


def test_nothing_to_run(capsys):
    assert main(["run"]) == 2


def test_unknown_builtin(capsys):
    assert main(["check", "nope"]) == 2


def test_unknown_check_flag(capsys):
    assert main(["check", "s2-levi-civita", "--check", "nope"]) == 2


def test_bad_samples_and_tol(capsys):
    assert main(["check", "s2-levi-civita", "--samples", "0"]) == 2
    assert main(["check", "s2-levi-civita", "--tol", "-1"]) == 2


def test_json_spec_accepted(tmp_path):
    p = tmp_path / "sphere.json"
    p.write_text(json.dumps(SPHERE), encoding="utf-8")
    assert main(["run", str(p), "-q"]) == 0


def test_explicit_connection_coefficients(tmp_path):
    # the Levi-Civita connection of the sphere written out by hand
    doc = spec_with(connection={"omega": {"2,2,1": "cot(t)", "1,2,2": "-cot(t)"}})
    case = build_case(doc)
    assert case.connection.is_metric_compatible()
    assert case.connection.torsion.is_zero()


def test_exit_codes_of_builtins():
    assert main(["check", "s2-levi-civita", "-q"]) == 0
    assert main(["check", "evans", "-q"]) == 1
    assert main(["run", "--builtin", "maxwell-flat", "-q"]) == 0


def test_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "s2-nunes" in out and "bianchi" in out


def test_json_report_validates_and_is_stable(capsys):
    main(["check", "s2-nunes", "--json", "-"])
    first = capsys.readouterr().out
    main(["check", "s2-nunes", "--json", "-", "--samples", "16"])
    second = capsys.readouterr().out
    assert first == second
    doc = json.loads(first)
    jsonschema.validate(doc, load_schema("report-schema.json"))
    assert doc["status"] == "pass"
    golden = {c["name"]: c for c in doc["checks"]}["golden"]
    assert golden["status"] == "discrepancy-noted"


def test_json_to_file(tmp_path):
    out = tmp_path / "r.json"
    assert main(["run", str(SPECS / "sphere.yaml"), "--json", str(out), "-q"]) == 0
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["source"] != "builtin"
    jsonschema.validate(doc, load_schema("report-schema.json"))


def test_samples_and_tol_are_recorded(capsys):
    main(["check", "flat-polar", "--json", "-", "--samples", "8", "--tol", "1e-7"])
    doc = json.loads(capsys.readouterr().out)
    assert doc["samples"] == 8 and doc["tol"] == 1e-7


def test_docs_schemas_match_package_data():
    for name in ("spec-schema.json", "report-schema.json"):
        packaged = resources.files("geocalc").joinpath("data", name).read_text(encoding="utf-8")
        assert (ROOT / "docs" / name).read_text(encoding="utf-8") == packaged


def test_demo_specs_validate_against_schema():
    schema = load_schema()
    for p in SPECS.glob("*.yaml"):
        if p.stem in ("bad-grammar", "singular"):
            continue
        jsonschema.validate(yaml.safe_load(p.read_text(encoding="utf-8")), schema)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "geocalc", "check", "flat-polar", "-q"], capture_output=True, text=True, timeout=120
    )
    assert proc.returncode == 0, proc.stderr

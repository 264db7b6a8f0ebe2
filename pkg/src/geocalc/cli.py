"""Command line front end.

    geocalc run SPEC.yaml [--check NAME ...] [--samples N] [--tol T] [--json PATH]
    geocalc run --builtin s2-levi-civita
    geocalc check evans
    geocalc list

Exit status: 0 when no check fails, 1 when one does, 2 for a bad spec file
(schema violation, expression syntax, singular cotetrad, unknown check).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import jsonschema
import yaml

from . import __version__
from . import symexpr as se
from .connection import from_coefficients, from_contorsion, levi_civita, zeros
from .manifold import Geometry, SingularCotetradError, build_geometry
from .multivector import Multivector
from .scenarios import (
    DEFAULT_CHECKS,
    FAIL,
    GENERIC_CHECKS,
    SCENARIOS,
    Case,
    CheckResult,
    Scenario,
    get_scenario,
    nunes_connection,
)

REPORT_VERSION = 1


class SpecError(Exception):
    """Anything wrong with the input; maps to exit status 2."""


def load_schema(name: str = "spec-schema.json") -> dict:
    return json.loads(resources.files("geocalc").joinpath("data", name).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# spec files


def read_spec(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SpecError(f"{path}: not valid YAML/JSON: {exc}") from None
    validate_spec(doc)
    return doc


def validate_spec(doc) -> None:
    try:
        jsonschema.validate(doc, load_schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SpecError(f"spec does not match schema at {where}: {exc.message}") from None
    n = len(doc["coordinates"])
    p, q = doc["signature"]
    if p + q != n:
        raise SpecError(f"signature ({p}, {q}) does not match {n} coordinates")
    if doc.get("dimension", n) != n:
        raise SpecError(f"dimension {doc['dimension']} does not match {n} coordinates")
    if len(doc["cotetrad"]) != n or any(len(row) != n for row in doc["cotetrad"]):
        raise SpecError(f"cotetrad must be a {n}×{n} array")
    missing = set(doc["coordinates"]) - set(doc["domain"])
    if missing:
        raise SpecError(f"no domain interval for {sorted(missing)}")
    for key, (lo, hi) in {**doc["domain"], **doc.get("parameters", {})}.items():
        if not lo < hi:
            raise SpecError(f"empty interval for {key}: [{lo}, {hi}]")
    for name in doc.get("checks", []):
        if name not in GENERIC_CHECKS:
            raise SpecError(f"unknown check {name!r}; available: {', '.join(GENERIC_CHECKS)}")


def _components(G: Geometry, table: dict, what: str, names: set):
    n, base = G.n, G.index_base
    out = zeros(n, 3)
    for key, val in table.items():
        idx = tuple(int(k) - base for k in key.split(","))
        if any(not 0 <= i < n for i in idx):
            raise SpecError(f"{what} index {key!r} out of range for base {base}")
        expr = se.parse_expr(str(val), names)
        out[idx] = expr
        if what == "torsion":
            a, b, c = idx
            if b == c:
                raise SpecError(f"torsion component {key!r} has equal lower indices")
            out[a, c, b] = -expr
    return out


def build_case(doc: dict, samples: int | None = None, tol: float | None = None) -> Case:
    bounds = {k: tuple(v) for k, v in doc["domain"].items()}
    bounds.update({k: tuple(v) for k, v in doc.get("parameters", {}).items()})
    fixed = doc.get("fixed") or None
    cot = [[str(v) for v in row] for row in doc["cotetrad"]]
    G = build_geometry(
        doc["coordinates"],
        bounds,
        tuple(doc["signature"]),
        cot,
        orientation=doc.get("orientation", 1),
        fixed=fixed,
        name=doc["name"],
        index_base=doc.get("index_base", 1),
    )
    names = set(G.domain.names) | {k for k, _ in G.domain.fixed}
    conn = doc["connection"]
    if conn == "levi-civita":
        C = levi_civita(G)
    elif conn == "teleparallel":
        C = nunes_connection(G)
    elif "omega" in conn:
        C = from_coefficients(G, _components(G, conn["omega"], "omega", names), name=conn.get("name", "custom"))
    else:
        try:
            C = from_contorsion(G, _components(G, conn["torsion"], "torsion", names), name=conn.get("name", "custom"))
        except ValueError as exc:
            raise SpecError(str(exc)) from None
    return Case(
        doc["name"],
        G,
        C,
        samples if samples is not None else doc.get("samples", se.DEFAULT_SAMPLES),
        tol if tol is not None else doc.get("tol", se.DEFAULT_TOL),
    )


def spec_scenario(doc: dict, case: Case) -> Scenario:
    names = doc.get("checks") or DEFAULT_CHECKS
    checks = [(k, "spec", GENERIC_CHECKS[k]) for k in names]
    return Scenario(doc["name"], "spec file", {"spec": (case.geometry, case.connection)}, checks)


# ---------------------------------------------------------------------------
# reports


@dataclass
class Report:
    scenario: str
    source: str
    samples: int
    tol: float
    checks: list  # of CheckResult, sorted by name
    geometries: dict  # case label -> Geometry, for rendering

    @property
    def status(self) -> str:
        return FAIL if any(c.status == FAIL for c in self.checks) else "pass"

    @property
    def exit_code(self) -> int:
        return 1 if self.status == FAIL else 0


def _num(x: float) -> float:
    """Six significant digits, so that reports do not depend on the last
    bits of floating point round-off."""
    x = float(x)
    if x != x or x in (float("inf"), float("-inf")):
        return x
    return float(f"{x:.6g}") + 0.0


def _plain(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, (int,)):
        return v
    if isinstance(v, float):
        return _num(v)
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    try:
        return _num(v)
    except (TypeError, ValueError):
        return str(v)


def _render(G: Geometry, v) -> tuple[str, str]:
    if v is None:
        return "", ""
    if isinstance(v, Multivector):
        return G.render_frame(v), G.render_coordinate(v)
    s = se.render(se.as_expr(v))
    return s, s


def _geometry_for(report: Report, check: CheckResult) -> Geometry:
    if len(report.geometries) == 1:
        return next(iter(report.geometries.values()))
    label = check.name.partition("[")[2].rstrip("]")
    return report.geometries.get(label) or next(iter(report.geometries.values()))


def report_dict(report: Report) -> dict:
    checks = []
    for c in report.checks:
        G = _geometry_for(report, c)
        arts = []
        for a in c.artifacts:
            frame, coord = _render(G, a.value)
            item = {"name": a.name, "frame": frame, "coordinate": coord, "provenance": a.provenance}
            if a.expected is not None:
                item["expected"] = _render(G, a.expected)[0]
            if a.status:
                item["status"] = a.status
            if a.note:
                item["note"] = a.note
            arts.append(item)
        checks.append(
            {
                "name": c.name,
                "status": c.status,
                "max_residual": _num(c.max_residual),
                "artifacts": arts,
                "notes": list(c.notes),
                "values": _plain(c.values),
            }
        )
    return {
        "format": "geocalc-report",
        "version": REPORT_VERSION,
        "generator": f"geocalc {__version__}",
        "scenario": report.scenario,
        "source": report.source,
        "status": report.status,
        "samples": report.samples,
        "tol": report.tol,
        "checks": checks,
    }


def report_json(report: Report) -> str:
    return json.dumps(report_dict(report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def report_text(report: Report) -> str:
    d = report_dict(report)
    lines = [f"scenario {d['scenario']} ({d['source']}), samples={d['samples']} tol={d['tol']:g}"]
    for c in d["checks"]:
        lines.append(f"[{c['status']}] {c['name']}  max residual {c['max_residual']:.3e}")
        for a in c["artifacts"]:
            lines.append(f"    {a['name']} = {a['frame']}")
            if a["coordinate"] != a["frame"]:
                lines.append(f"        in coordinates: {a['coordinate']}")
            if "expected" in a:
                lines.append(f"        expected ({a['provenance']}): {a['expected']}  -> {a.get('status', '')}")
            if a.get("note"):
                lines.append(f"        note: {a['note']}")
        for n in c["notes"]:
            lines.append(f"    - {n}")
        for k, v in c["values"].items():
            if isinstance(v, float):
                v = f"{v:.3e}"
            lines.append(f"    {k}: {v}")
    lines.append(f"overall: {d['status']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


def _select(checks: list, only: list | None) -> set | None:
    if not only:
        return None
    names = {n for n, _, _ in checks} | {n.split("[")[0] for n, _, _ in checks}
    bad = [o for o in only if o not in names]
    if bad:
        raise SpecError(f"unknown check {bad[0]!r}; available: {', '.join(sorted(names))}")
    return set(only)


def run_builtin(name: str, samples: int | None = None, tol: float | None = None, only=None) -> Report:
    try:
        sc = get_scenario(name)
    except KeyError as exc:
        raise SpecError(exc.args[0]) from None
    samples = samples or se.DEFAULT_SAMPLES
    tol = tol or se.DEFAULT_TOL
    results = sc.run(samples, tol, _select(sc.checks, only))
    return Report(name, "builtin", samples, tol, results, {k: g for k, (g, _) in sc.cases.items()})


def run_spec(path: str, samples: int | None = None, tol: float | None = None, only=None) -> Report:
    doc = read_spec(path)
    try:
        case = build_case(doc, samples, tol)
    except se.ParseError as exc:
        raise SpecError(f"expression error: {exc}") from None
    except SingularCotetradError as exc:
        raise SpecError(f"singular cotetrad: {exc}") from None
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    sc = spec_scenario(doc, case)
    results = sc.run(case.samples, case.tol, _select(sc.checks, only))
    return Report(doc["name"], str(path), case.samples, case.tol, results, {"spec": case.geometry})


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="geocalc", description="Verify identities of Riemann-Cartan geometries.")
    ap.add_argument("--version", action="version", version=f"geocalc {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--check", action="append", metavar="NAME", help="run only this check (repeatable)")
        p.add_argument("--samples", type=int, help="sample points per comparison")
        p.add_argument("--tol", type=float, help="relative tolerance")
        p.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
        p.add_argument("-q", "--quiet", action="store_true", help="no text report")

    r = sub.add_parser("run", help="run a spec file or a built-in scenario")
    r.add_argument("spec", nargs="?", help="YAML or JSON spec file")
    r.add_argument("--builtin", metavar="SCENARIO", help="run a built-in scenario instead of a spec file")
    common(r)
    c = sub.add_parser("check", help="run a built-in scenario")
    c.add_argument("scenario", help=", ".join(SCENARIOS))
    common(c)
    sub.add_parser("list", help="list built-in scenarios and checks")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "list":
        print("scenarios:")
        for name, fn in SCENARIOS.items():
            print(f"  {name:16s} {fn().description}")
        print("checks for spec files:")
        for name in GENERIC_CHECKS:
            print(f"  {name}")
        return 0
    if args.samples is not None and args.samples < 1:
        print("error: --samples must be positive", file=sys.stderr)
        return 2
    if args.tol is not None and not args.tol > 0:
        print("error: --tol must be positive", file=sys.stderr)
        return 2
    try:
        if args.command == "check":
            report = run_builtin(args.scenario, args.samples, args.tol, args.check)
        elif args.builtin:
            if args.spec:
                raise SpecError("give either a spec file or --builtin, not both")
            report = run_builtin(args.builtin, args.samples, args.tol, args.check)
        elif args.spec:
            report = run_spec(args.spec, args.samples, args.tol, args.check)
        else:
            raise SpecError("nothing to run: give a spec file or --builtin NAME")
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except se.EvaluationError as exc:
        print(f"error: evaluation failed: {exc}", file=sys.stderr)
        return 2
    if args.json:
        text = report_json(report)
        if args.json == "-":
            sys.stdout.write(text)
        else:
            Path(args.json).write_text(text, encoding="utf-8")
    if not args.quiet and args.json != "-":
        sys.stdout.write(report_text(report))
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Batch command-line interface.

Each invocation reads one JSON job file::

    {"field": {"kind": "Q"},
     "matrices": {"E": [["0", "1"], ["-1", "0"]], "F": [["0", "1"], ["-1", "1"]]},
     "paths": {"P": [["0", "1"], ["-1", "t"]]},
     "q": "1"}

and writes a JSON report (schema 1).  Exit status is 0 whenever a verdict was
computed, including Unknown, and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from . import galois, homotopy, ncalg
from .errors import AlgebraError, BudgetExhausted, CheckFailed, ParseError
from .exact import Field, field_from_json
from .forms import trace_invariant
from .homotopy import PathMatrix
from .linalg import Mat
from .parsing import parse_path_entry, parse_scalar
from .report import SCHEMA_VERSION, certificate_to_json, dumps, mat_to_json, path_to_json, to_jsonable

COMMANDS = ("classify", "iso", "homotopy", "path", "algebra", "cotensor", "demo-cleft")

REQUIRED = {
    "classify": ("E", "F"),
    "iso": ("E", "F1", "F2"),
    "homotopy": ("F0", "F1"),
    "path": (),
    "algebra": ("E",),
    "cotensor": ("E", "F"),
    "demo-cleft": (),
}


@dataclass
class JobSpec:
    command: str
    field: Field
    matrices: dict = dc_field(default_factory=dict)
    paths: dict = dc_field(default_factory=dict)
    q: object = None
    degree_bound: int = ncalg.DEFAULT_DEGREE_BOUND
    budget: int = ncalg.DEFAULT_BUDGET
    closed_field: bool = False


def _rows(name: str, raw) -> list:
    if not isinstance(raw, list) or not raw or not all(isinstance(r, list) for r in raw):
        raise ParseError(f"matrix {name!r} must be a non-empty array of arrays")
    width = len(raw[0])
    if any(len(r) != width for r in raw):
        raise ParseError(f"matrix {name!r} has rows of different lengths")
    if width != len(raw):
        raise ParseError(f"matrix {name!r} is {len(raw)}x{width}, expected square")
    return raw


def parse_job(doc: dict, command: str, **options) -> JobSpec:
    if not isinstance(doc, dict):
        raise ParseError("job must be a JSON object")
    if command not in COMMANDS:
        raise ParseError(f"unknown command {command!r}")
    declared = doc.get("command")
    if declared is not None and declared != command:
        raise ParseError(f"job declares command {declared!r} but {command!r} was requested")
    if "field" not in doc:
        raise ParseError("job has no 'field'")
    try:
        fld = field_from_json(doc["field"])
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad field descriptor: {exc}") from None
    job = JobSpec(command, fld, **options)
    for name, raw in (doc.get("matrices") or {}).items():
        job.matrices[name] = Mat(fld, [[parse_scalar(x, fld) for x in r] for r in _rows(name, raw)])
    for name, raw in (doc.get("paths") or {}).items():
        job.paths[name] = PathMatrix(fld, [[parse_path_entry(x, fld) for x in r] for r in _rows(name, raw)])
    if "q" in doc:
        job.q = parse_scalar(doc["q"], fld)
    missing = [n for n in REQUIRED[command] if n not in job.matrices]
    if missing:
        raise ParseError(f"command {command!r} needs matrices {', '.join(missing)}")
    if command == "path" and "F" not in job.matrices and not job.paths:
        raise ParseError("command 'path' needs a matrix F or a path under 'paths'")
    if command == "demo-cleft" and job.q is None:
        raise ParseError("command 'demo-cleft' needs a scalar 'q'")
    return job


# command handlers --------------------------------------------------------------------


def _classify(job: JobSpec) -> dict:
    rep = galois.classify(job.matrices["E"], job.matrices["F"], degree=max(0, job.degree_bound - 2),
                          degree_bound=job.degree_bound, budget=job.budget)
    return to_jsonable(rep)


def _iso(job: JobSpec) -> dict:
    e, f1, f2 = job.matrices["E"], job.matrices["F1"], job.matrices["F2"]
    v = galois.iso_decide(e, f1, f2, closed_field_semantics=job.closed_field)
    out = to_jsonable(v)
    out["verdict"] = str(v)
    if v.witness is not None:
        out["witness_verified"] = v.witness * f2 * v.witness.T == f1
    return out


def _homotopy(job: JobSpec) -> dict:
    f0, f1 = job.matrices["F0"], job.matrices["F1"]
    if "E" in job.matrices:
        v = galois.homotopy_decide_galois(job.matrices["E"], f0, f1, job.budget)
    else:
        v = homotopy.homotopy_decide(f0, f1, job.budget)
    return to_jsonable(v)


def _path(job: JobSpec) -> dict:
    if job.paths:
        name = sorted(job.paths)[0]
        path = job.paths[name]
        f0 = job.matrices.get("F0", path.at(0))
        f1 = job.matrices.get("F1", path.at(1))
        try:
            cert = homotopy.validate_path(path, f0, f1)
        except CheckFailed as exc:
            return {"valid": False, "failed_condition": exc.condition, "path": path_to_json(path),
                    "checks": to_jsonable(exc.checks, var="t")}
        return {"valid": True, "certificate": certificate_to_json(cert)}
    f = job.matrices["F"]
    p, path, red = homotopy.path_for_form(f, job.budget)
    out = {"congruence": mat_to_json(p),
           "blocks": [{"kind": b.kind, "gram": mat_to_json(b.gram),
                       "case": None if b.case is None else b.case.label()} for b in red.blocks]}
    try:
        cert = homotopy.validate_path(path, path.at(0), path.at(1))
    except CheckFailed as exc:
        out.update(valid=False, failed_condition=exc.condition, path=path_to_json(path),
                   checks=to_jsonable(exc.checks, var="t"))
        return out
    out.update(valid=True, certificate=certificate_to_json(cert))
    return out


def _verification(v) -> dict:
    return {"ok": v.ok, "checks": to_jsonable(v.checks), "failures": list(v.failures)}


def _algebra(job: JobSpec) -> dict:
    e = job.matrices["E"]
    f = job.matrices.get("F")
    pres = ncalg.presentation_BEF(e, f) if f is not None else ncalg.presentation_BE(e)
    out: dict = {
        "generators": list(pres.generators),
        "relations": {nm: pres.format_relation(i) for i, nm in enumerate(pres.relation_names)},
    }
    try:
        system = ncalg.complete(pres, job.degree_bound, job.budget)
        status = "complete"
    except BudgetExhausted as exc:
        system = exc.partial
        status = "budget-exhausted"
    out["completion"] = {
        "status": status,
        "degree_bound": system.degree_bound,
        "confluent_up_to": system.confluent_up_to,
        "rules": len(system.rules),
        "steps_used": system.steps_used,
    }
    out["dims"] = list(ncalg.dims_by_rewriting(system, system.confluent_up_to))
    d = min(system.confluent_up_to, job.degree_bound) - 2
    if status == "complete" and d >= 0:
        oracle = ncalg.dims_by_truncated_ideal(pres, d)
        rewriting = out["dims"][:d + 1]
        out["cross_check"] = {"degree": d, "rewriting": rewriting, "oracle": list(oracle),
                              "agree": tuple(rewriting) == oracle}
    if status == "complete":
        kw = dict(degree_bound=job.degree_bound, budget=job.budget)
        out["hopf_structure_BE"] = _verification(ncalg.hopf_structure_BE(e, **kw))
        if f is not None:
            out["comodule_algebra"] = _verification(ncalg.verify_comodule_algebra(e, f, **kw))
            out["right_comodule_algebra"] = _verification(ncalg.verify_right_comodule_algebra(e, f, **kw))
            out["gram_identities"] = _verification(ncalg.gram_identities(e, f, **kw))
            out["canonical_preimage"] = _verification(ncalg.canonical_preimage(e, f, **kw))
    return out


def _cotensor(job: JobSpec) -> dict:
    e, f = job.matrices["E"], job.matrices["F"]
    kw = dict(degree_bound=job.degree_bound, budget=job.budget)
    return {
        "trace_match": trace_invariant(e) == trace_invariant(f),
        "degree0": to_jsonable(ncalg.cotensor_degree1(e, f, 0, **kw)),
        "degree1": to_jsonable(ncalg.cotensor_degree1(e, f, 1, **kw)),
    }


def _demo(job: JobSpec) -> dict:
    return to_jsonable(galois.cleft_triviality_demo(job.q))


HANDLERS = {
    "classify": _classify,
    "iso": _iso,
    "homotopy": _homotopy,
    "path": _path,
    "algebra": _algebra,
    "cotensor": _cotensor,
    "demo-cleft": _demo,
}


def run(job: JobSpec) -> dict:
    """Run one job and return the full report document."""
    return {
        "schema": SCHEMA_VERSION,
        "command": job.command,
        "field": job.field.to_json(),
        "inputs": {
            "matrices": {k: mat_to_json(v) for k, v in job.matrices.items()},
            "paths": {k: path_to_json(v) for k, v in job.paths.items()},
            "q": None if job.q is None else str(job.q),
        },
        "options": {"degree_bound": job.degree_bound, "budget": job.budget, "closed_field": job.closed_field},
        "result": HANDLERS[job.command](job),
    }


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bgalois", description="Classify Galois objects B(E, F) exactly.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("job", help="JSON job file ('-' for stdin)")
        sp.add_argument("--degree-bound", type=int, default=ncalg.DEFAULT_DEGREE_BOUND)
        sp.add_argument("--budget", type=int, default=ncalg.DEFAULT_BUDGET)
        sp.add_argument("--closed-field", action="store_true")
        sp.add_argument("--out", metavar="FILE")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = sys.stdin.read() if args.job == "-" else Path(args.job).read_text()
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"job is not valid JSON: {exc}") from None
        if args.degree_bound < 2:
            raise ParseError("--degree-bound must be at least 2")
        job = parse_job(doc, args.command, degree_bound=args.degree_bound, budget=args.budget,
                        closed_field=args.closed_field)
        report = run(job)
    except (AlgebraError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

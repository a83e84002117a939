"""Command-line batch interface: ``gwa-lab <subcommand> ...``.

Every invocation writes one JSON report to standard output.  Exit codes:
0 success, 2 invalid input (bad JSON, schema violation, not an automorphism,
unknown subcommand), 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import jsonschema

from . import __version__
from .growth import growth_sequence
from .gwa import GWAElement, GWASpec, power_subalgebra_defelt, verify_power_lemma
from .intmat import matrix_order
from .laurent import LaurentAuto, classify_gk_laurent
from .plane import NotAnAutomorphism, PlaneEndo, classify_gk_plane
from .poly import LAURENT, POLYNOMIAL, PolySyntaxError, Ring, poly_from_json
from .smc import verify_smc_instance

SCHEMA = "gwa-lab/1"
log = logging.getLogger("gwalab")


class UsageError(Exception):
    """Invalid invocation or payload; maps to exit code 2."""

    def __init__(self, message: str, kind: str = "usage"):
        super().__init__(message)
        self.kind = kind


_INT_MATRIX = {"type": "array", "minItems": 1,
               "items": {"type": "array", "minItems": 1, "items": {"type": "integer"}}}
_SCALAR = {"type": ["string", "integer"]}
_POLY = {"type": ["string", "integer"]}
_LAURENT_AUTO = {"type": "object", "required": ["matrix"],
                 "properties": {"n": {"type": "integer", "minimum": 1},
                                "matrix": _INT_MATRIX,
                                "alpha": {"type": "array", "items": _SCALAR}}}
_PLANE = {"type": "object", "required": ["f"],
          "properties": {"f": {"type": "array", "minItems": 2, "maxItems": 2, "items": _POLY}}}
_GWA_SPEC = {"type": "object", "required": ["base", "sigma"],
             "properties": {
                 "base": {"type": "object", "required": ["kind", "n"],
                          "properties": {"kind": {"enum": [POLYNOMIAL, LAURENT]},
                                         "n": {"type": "integer", "minimum": 1}}},
                 "sigma": {"type": "object"},
                 "a": _POLY,
                 "gens": {"type": "array", "items": {"type": "string"}},
                 "max_degree": {"type": "integer", "minimum": 0},
                 "m": {"type": "integer", "minimum": 1}}}

SCHEMAS = {
    "classify-laurent": {"anyOf": [_LAURENT_AUTO,
                                   {"type": "object", "required": ["sigma"],
                                    "properties": {"sigma": _LAURENT_AUTO}}]},
    "classify-plane": {"anyOf": [_PLANE,
                                 {"type": "object", "required": ["sigma"],
                                  "properties": {"sigma": _PLANE}}]},
    "matrix-order": {"type": "object", "required": ["matrix"],
                     "properties": {"matrix": _INT_MATRIX}},
    "growth": _GWA_SPEC,
    "verify-power-lemma": _GWA_SPEC,
    "verify-smc": {"type": "object", "required": ["n", "a"],
                   "properties": {"n": {"type": "integer", "minimum": 1},
                                  "a": _POLY,
                                  "extra": {"type": "array", "items": _POLY},
                                  "m_max": {"type": "integer", "minimum": 2}}},
}


# ---- subcommand handlers: payload -> (result, decision path) -------------------

def _classify_laurent(payload: dict) -> Tuple[dict, List[str]]:
    sigma = LaurentAuto.from_json(payload.get("sigma", payload))
    verdict = classify_gk_laurent(sigma)
    result = verdict.to_json()
    result["certificate"] = {"matrix": sigma.to_json()["matrix"],
                             "order_check": "M^order = I" if verdict.basis_verdict.finite
                             else verdict.basis_verdict.witness}
    return result, list(verdict.decision_path())


def _classify_plane(payload: dict) -> Tuple[dict, List[str]]:
    sigma = PlaneEndo.from_json(payload.get("sigma", payload))
    verdict = classify_gk_plane(sigma)
    if not verdict.certificate.verify(sigma):
        raise AssertionError("certificate failed to recompose")
    return verdict.to_json(), list(verdict.decision_path())


def _matrix_order(payload: dict) -> Tuple[dict, List[str]]:
    try:
        verdict = matrix_order(payload["matrix"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return verdict.to_json(), list(verdict.decision_path)


_GEN_PRODUCT = re.compile(r"^\s*(?:\((?P<coef>.*)\)\s*\*|(?P<bare>[^()]*?)\s*\*)?\s*"
                          r"(?P<letter>[xy])\s*(?:\^\s*(?P<exp>\d+))?\s*$")


def parse_generator(text: str, spec: GWASpec) -> GWAElement:
    """A base polynomial, or d*x^k / d*y^k with d a base polynomial."""
    m = _GEN_PRODUCT.match(text)
    if m:
        coef = m.group("coef") or m.group("bare") or "1"
        k = int(m.group("exp") or 1)
        deg = k if m.group("letter") == "x" else -k
        return spec.element({deg: spec.ring.parse(coef)})
    return spec.base(spec.ring.parse(text))


def default_generators(spec: GWASpec) -> List[str]:
    gens = [f"z{i + 1}" for i in range(spec.ring.n)]
    if spec.ring.kind == LAURENT:
        gens += [f"z{i + 1}^-1" for i in range(spec.ring.n)]
    return gens + ["x", "y"]


def _growth(payload: dict) -> Tuple[dict, List[str]]:
    spec = GWASpec.from_json(payload)
    texts = payload.get("gens") or default_generators(spec)
    gens = [spec.one] + [parse_generator(t, spec) for t in texts]
    max_degree = payload.get("max_degree", 10)
    report = growth_sequence(spec, gens, max_degree)
    result = report.to_json()
    result["gens"] = ["1"] + list(texts)
    result["verdict"] = (f"polynomial growth, exponent ~ {result['fit']['exponent']}"
                         if result["fit"] and result["fit"]["kind"] == "polynomial"
                         else "exponential growth" if result["fit"] else "too few degrees to fit")
    path = ["growth function d(m) = dim V^m computed exactly",
            "exponent fitted by least squares of log d(m) on log m over m in [M/2, M]"]
    return result, path


def _power_lemma(payload: dict) -> Tuple[dict, List[str]]:
    spec = GWASpec.from_json(payload)
    m = payload.get("m", 1)
    ok = verify_power_lemma(spec, m)
    b = power_subalgebra_defelt(spec, m)
    result = {"verdict": "pass" if ok else "fail", "m": m, "b": str(b),
              "sigma_m_b": str(spec.twist(b, m))}
    path = ["b = sigma^-(m-1)(a) ... sigma^-1(a) a",
            "checked y^m x^m = b and x^m y^m = sigma^m(b) by letter-by-letter multiplication"]
    return result, path


def _verify_smc(payload: dict) -> Tuple[dict, List[str]]:
    n = payload["n"]
    ring = Ring(POLYNOMIAL, n)
    a = poly_from_json(payload["a"], ring)
    extra = [poly_from_json(e, ring) for e in payload.get("extra", [])]
    report = verify_smc_instance(n, a, extra, payload.get("m_max", 6))
    result = report.to_json()
    path = [f"W = V_{n} a + span(extra), c_{n} = {report.constant}",
            "dim(W^m) compared with c_n dim(W) m^n exactly"]
    return result, path


HANDLERS: Dict[str, Callable[[dict], Tuple[dict, List[str]]]] = {
    "classify-laurent": _classify_laurent,
    "classify-plane": _classify_plane,
    "matrix-order": _matrix_order,
    "growth": _growth,
    "verify-power-lemma": _power_lemma,
    "verify-smc": _verify_smc,
}


def run_job(command: str, payload: dict) -> Tuple[int, dict]:
    """Validate and dispatch one job; returns (exit code, report)."""
    start = time.perf_counter()
    report = {"schema": SCHEMA, "command": command, "version": __version__}
    try:
        if command not in HANDLERS:
            raise UsageError(f"unknown subcommand {command!r}", "unknown-subcommand")
        try:
            jsonschema.validate(payload, SCHEMAS[command])
        except jsonschema.ValidationError as exc:
            raise UsageError(f"schema violation: {exc.message}", "schema-violation") from None
        result, path = HANDLERS[command](payload)
        report.update(result)
        report["decision_path"] = path
        code = 0
    except NotAnAutomorphism as exc:
        report["error"] = {"kind": "not-an-automorphism", "message": str(exc),
                           "obstruction": exc.obstruction}
        code = 2
    except UsageError as exc:
        report["error"] = {"kind": exc.kind, "message": str(exc)}
        code = 2
    except (PolySyntaxError, ValueError, KeyError, TypeError) as exc:
        report["error"] = {"kind": "validation", "message": f"{type(exc).__name__}: {exc}"}
        code = 2
    except Exception as exc:  # anything else is a bug
        report["error"] = {"kind": "internal", "message": f"{type(exc).__name__}: {exc}"}
        code = 1
    report["timing_s"] = round(time.perf_counter() - start, 6)
    return code, report


# ---- argument parsing -------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        kind = "unknown-subcommand" if "invalid choice" in message else "usage"
        raise UsageError(message, kind)


def _load_json_file(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc.msg} (line {exc.lineno})",
                         "malformed-json") from None


def _load_json_arg(text: str, flag: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON for {flag}: {exc.msg}", "malformed-json") from None


def _merge(file_payload: Optional[dict], inline: dict, command: str) -> dict:
    payload = dict(inline)
    if file_payload is not None:
        if "command" in file_payload:
            if file_payload["command"] != command:
                raise UsageError(f"job file is for {file_payload['command']!r}, not {command!r}")
            file_payload = file_payload.get("payload", {})
        for k, v in file_payload.items():
            if k in payload and payload[k] != v:
                log.warning("input file overrides inline value for %r", k)
            payload[k] = v
    return payload


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gwa-lab", description="Exact GK-dimension classification and growth "
                                            "computations for generalized Weyl algebras.")
    p.add_argument("--pretty", action="store_true",
                   help="indent the JSON report and print a readable summary to stderr")
    p.add_argument("--jobs", metavar="DIR", help="run every *.json job file in DIR")
    p.add_argument("--workers", type=int, default=1, help="worker processes for --jobs")
    p.add_argument("--version", action="version", version=f"gwa-lab {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("classify-laurent", help="GK dimension of L_n(sigma, a)")
    s.add_argument("--in", dest="infile")
    s.add_argument("--matrix", help="integer matrix as JSON")
    s.add_argument("--alpha", help="JSON list of scalars")

    s = sub.add_parser("classify-plane", help="GK dimension of P_2(sigma, a)")
    s.add_argument("--in", dest="infile")
    s.add_argument("--f", action="append", help="coordinate polynomial (give twice)")

    s = sub.add_parser("matrix-order", help="finite or infinite order of an integer matrix")
    s.add_argument("--in", dest="infile")
    s.add_argument("--matrix", help="integer matrix as JSON")

    s = sub.add_parser("growth", help="growth function of a subframe")
    s.add_argument("--spec", "--in", dest="infile")
    s.add_argument("--max-degree", type=int)
    s.add_argument("--gens", help="JSON list of generator expressions (1 is always included)")

    s = sub.add_parser("verify-power-lemma", help="check y^m x^m = b and x^m y^m = sigma^m(b)")
    s.add_argument("--spec", "--in", dest="infile")
    s.add_argument("--m", type=int)

    s = sub.add_parser("verify-smc", help="check the multiplicity bound for P_n on one instance")
    s.add_argument("--in", dest="infile")
    s.add_argument("--n", type=int)
    s.add_argument("--a")
    s.add_argument("--extra", action="append")
    s.add_argument("--m-max", type=int)
    return p


def _inline_payload(args) -> dict:
    cmd = args.command
    out: dict = {}
    if cmd in ("classify-laurent", "matrix-order") and args.matrix:
        out["matrix"] = _load_json_arg(args.matrix, "--matrix")
        out["n"] = len(out["matrix"]) if isinstance(out["matrix"], list) else 0
        if cmd == "matrix-order":
            out.pop("n")
    if cmd == "classify-laurent" and args.alpha:
        out["alpha"] = _load_json_arg(args.alpha, "--alpha")
    if cmd == "classify-plane" and args.f:
        out["f"] = args.f
    if cmd == "growth":
        if args.max_degree is not None:
            out["max_degree"] = args.max_degree
        if args.gens:
            out["gens"] = _load_json_arg(args.gens, "--gens")
    if cmd == "verify-power-lemma" and args.m is not None:
        out["m"] = args.m
    if cmd == "verify-smc":
        for k in ("n", "a", "extra", "m_max"):
            v = getattr(args, k)
            if v is not None:
                out[k] = v
    return out


def render_text(report: dict) -> str:
    lines = [f"{report.get('command')}: {report.get('verdict', report.get('error', {}).get('message'))}"]
    for k in ("order", "lane_degrees", "dims", "fit", "witness"):
        if k in report:
            lines.append(f"  {k}: {report[k]}")
    for step in report.get("decision_path", []):
        lines.append(f"  - {step}")
    return "\n".join(lines)


def _job_worker(path: str) -> Tuple[str, int, dict]:
    try:
        job = _load_json_file(path)
        if not isinstance(job, dict) or "command" not in job:
            raise UsageError(f"{path}: job files need a 'command' key")
        code, report = run_job(job["command"], job.get("payload", {}))
    except UsageError as exc:
        code, report = 2, {"schema": SCHEMA, "error": {"kind": exc.kind, "message": str(exc)}}
    return path, code, report


def run_jobs(directory: str, workers: int = 1) -> Tuple[int, dict]:
    if not Path(directory).is_dir():
        raise UsageError(f"not a directory: {directory}")
    files = sorted(str(p) for p in Path(directory).glob("*.json"))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_job_worker, files))
    else:
        results = [_job_worker(f) for f in files]
    code = max((c for _, c, _ in results), default=0)
    report = {"schema": SCHEMA, "command": "jobs", "version": __version__,
              "jobs": [{"file": Path(f).name, "exit_code": c, "report": r} for f, c, r in results]}
    return code, report


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    """Entry point; returns the exit code and writes the report to stdout."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    logging.basicConfig(level=logging.WARNING, format="warning: %(message)s", stream=stderr)
    parser = build_parser()
    pretty = "--pretty" in (argv if argv is not None else sys.argv[1:])
    command = None
    try:
        args = parser.parse_args(argv)
        pretty = args.pretty
        if args.jobs:
            code, report = run_jobs(args.jobs, args.workers)
        else:
            command = args.command
            if command is None:
                raise UsageError("missing subcommand")
            file_payload = _load_json_file(args.infile) if args.infile else None
            payload = _merge(file_payload, _inline_payload(args), command)
            code, report = run_job(command, payload)
    except UsageError as exc:
        code = 2
        report = {"schema": SCHEMA, "command": command, "version": __version__,
                  "error": {"kind": exc.kind, "message": str(exc)}}
    stdout.write(json.dumps(report, indent=2 if pretty else None) + "\n")
    if pretty:
        stderr.write(render_text(report) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

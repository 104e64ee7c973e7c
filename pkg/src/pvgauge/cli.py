"""Batch command-line interface.

Usage::

    pvgauge <command> --input FILE [--json] [--bounds FILE] [--seed N] [--jobs N]

Commands read conventionally named declarations from the input document:

=========== ==============================================================
gauge       ``U``, ``A``; prints ``gauge_act(U, A)``
hmul        ``A``, ``F``, ``B``, ``G``; prints ``(A, F)(B, G)``
equivalent  ``A``, ``B``; searches U with ``gauge_act(U, A) = B``
trivial     ``A``; searches a rational fundamental matrix
intertwine  ``A1``, ``A2``; basis of rational intertwiners
compose     ``A1``, ``A2``, ``A3``, ``M``, ``N``; the arrow ``N M``
rep         every ``tower`` against every ``galois`` generator
check       residuals of whatever of ``(U, A, B)``, ``(A1, A2, M)`` and
            ``(tower F, A)`` are declared
=========== ==============================================================

Exit codes: 0 success or witness found, 1 none-found or failed check,
2 usage or input error, 3 degree bound needed, 4 inconclusive search,
5 not an intertwiner, 6 leaves the rational or constant field,
7 singular or mismatched matrices, 8 other errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from .algebra import MatRF
from .category import arrow_compose, arrow_new
from .closedform import (
    FundamentalMatrix,
    _grid_str,
    cf_matderive,
    cf_matmul,
    pm_str,
    rep_matrix,
    system_from_fundamental,
)
from .errors import (
    DimensionMismatch,
    DivisionByZero,
    ExprSyntaxError,
    InconsistentRowLength,
    Inconclusive,
    IntertwiningFails,
    NeedsUserBound,
    NonRationalResidueOrPole,
    NotAnIntertwiner,
    NotConstant,
    NotRational,
    PoleAtEvaluationPoint,
    PVGaugeError,
    SingularMatrix,
    SourceTargetMismatch,
    UnmappedGenerator,
)
from .gauge import HPair, gauge_act, h_mul
from .parser import InputDocument, parse_document, parse_poly
from .ratsol import (
    DEFAULT_SEED,
    DegreeBounds,
    SylvesterSystem,
    decide_equivalence,
    rational_solutions,
    sylvester_residual,
    vector_rational_solutions,
)

__all__ = ["COMMANDS", "Report", "run_command", "load_bounds", "main"]

EXIT_OK = 0
EXIT_NONE_FOUND = 1
EXIT_USAGE = 2
EXIT_NEEDS_BOUND = 3
EXIT_INCONCLUSIVE = 4
EXIT_NOT_INTERTWINER = 5
EXIT_NOT_CLOSED = 6
EXIT_SINGULAR = 7
EXIT_OTHER = 8

_ERROR_CODES = (
    ((ExprSyntaxError, InconsistentRowLength), EXIT_USAGE),
    ((NeedsUserBound,), EXIT_NEEDS_BOUND),
    ((Inconclusive,), EXIT_INCONCLUSIVE),
    ((NotAnIntertwiner, SourceTargetMismatch, IntertwiningFails), EXIT_NOT_INTERTWINER),
    ((NotRational, NotConstant, UnmappedGenerator, NonRationalResidueOrPole), EXIT_NOT_CLOSED),
    ((SingularMatrix, DimensionMismatch, DivisionByZero, PoleAtEvaluationPoint), EXIT_SINGULAR),
)

SCOPE = "constants Q; none-found means no solution over Q(x)"
SCOPE_USER = "constants Q; none-found means no solution within the user-supplied bounds"


def _scope(bounds) -> str:
    return SCOPE_USER if bounds is not None and bounds.provenance == "user_supplied" else SCOPE

COMMANDS = ("gauge", "hmul", "equivalent", "trivial", "intertwine", "compose", "rep", "check")


class UsageError(PVGaugeError):
    pass


def exit_code_for(exc: BaseException) -> int:
    for classes, code in _ERROR_CODES:
        if isinstance(exc, classes):
            return code
    if isinstance(exc, (UsageError, KeyError, ValueError)):
        return EXIT_USAGE
    return EXIT_OTHER


@dataclass
class Report:
    command: str
    inputs: dict
    result: object = None
    witness: object = None
    certificate: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    bounds: Optional[dict] = None
    exit_code: int = EXIT_OK

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "witness": self.witness,
            "certificate": self.certificate,
            "seed": self.seed,
            "bounds": self.bounds,
            "exit_code": self.exit_code,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, ensure_ascii=True) + "\n"

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for name, src in self.inputs.items():
            lines.append(f"input {name} = {src}")
        lines.append("result:" + _text(self.result, 1))
        if self.witness is not None:
            lines.append("witness:" + _text(self.witness, 1))
        if self.certificate:
            lines.append("certificate:" + _text(self.certificate, 1))
        lines.append(f"seed: {self.seed}")
        lines.append("bounds:" + _text(self.bounds, 1))
        lines.append(f"exit code: {self.exit_code}")
        return "\n".join(lines) + "\n"


def _text(v, depth) -> str:
    """Indented rendering; scalars come back with a leading space."""
    pad = "  " * depth
    if isinstance(v, dict) and v:
        return "".join(f"\n{pad}{k}:{_text(v[k], depth + 1)}" for k in v)
    if isinstance(v, list) and v:
        return "".join(f"\n{pad}-{_text(e, depth + 1)}" for e in v)
    if isinstance(v, bool):
        return " " + str(v).lower()
    return " " + ("none" if v is None else str(v) if v != [] and v != {} else repr(v))


# ---------------------------------------------------------------------------
# Bounds files
# ---------------------------------------------------------------------------


def load_bounds(text: str) -> DegreeBounds:
    """Parse ``{"pole_orders": {"x": 2, "x - 1": 1}, "numerator_degree": 4}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"bounds file is not valid JSON: {exc}") from None
    if not isinstance(data, dict) or set(data) - {"pole_orders", "numerator_degree"}:
        raise UsageError("bounds file must be an object with keys pole_orders and numerator_degree")
    orders = data.get("pole_orders", {})
    deg = data.get("numerator_degree")
    if not isinstance(orders, dict) or not isinstance(deg, int) or isinstance(deg, bool):
        raise UsageError("pole_orders must be an object and numerator_degree an integer")
    po = {}
    for key, k in orders.items():
        if not isinstance(k, int) or isinstance(k, bool):
            raise UsageError(f"pole order for {key!r} must be an integer")
        po[parse_poly(key)] = k
    try:
        return DegreeBounds(po, deg, "user_supplied")
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _need(doc: InputDocument, *names) -> list:
    missing = [n for n in names if n not in doc.matrices]
    if missing:
        raise UsageError("input document does not declare " + ", ".join(missing))
    return [doc.matrices[n] for n in names]


def _inputs(doc: InputDocument, names) -> dict:
    return {n: str(doc.matrices[n]) for n in names}


def _decision(report: Report, a: MatRF, b: MatRF, bounds, seed, jobs, trivial: bool):
    res = decide_equivalence(a, b, bounds, seed, jobs=jobs)
    cert = {"method": res.method, "scope": _scope(res.bounds)}
    if res.solution_dimension is not None:
        cert["intertwiner_space_dimension"] = res.solution_dimension
        cert["invertible_search"] = "basis, seeded Q-combinations, generic determinant; scoped to Q"
    if trivial and res.method != "identical":
        vec = vector_rational_solutions(b, bounds)
        cert["statement"] = f"rational solution space dimension {len(vec)}"
        cert["rational_solutions"] = ["[" + ", ".join(str(e) for e in v) + "]" for v in vec]
    if res.method == "generic-zero":
        cert["generic_determinant"] = "0"
    report.bounds = None if res.bounds is None else res.bounds.to_json()
    if res.found:
        u = res.witness
        check = gauge_act(u, a)
        assert check == b
        report.result = "trivial" if trivial else "equivalent"
        report.witness = str(u)
        cert["check"] = "U' = A U" if trivial else "gauge_act(U, A) = B"
        report.exit_code = EXIT_OK
    else:
        report.result = "none-found"
        report.exit_code = EXIT_NONE_FOUND
    report.certificate = cert


def run_command(cmd: str, doc: InputDocument, bounds: Optional[DegreeBounds] = None,
                seed: int = DEFAULT_SEED, jobs: int = 1) -> Report:
    if cmd not in COMMANDS:
        raise UsageError(f"unknown command {cmd!r}")
    report = Report(cmd, {}, seed=seed)
    if cmd == "gauge":
        u, a = _need(doc, "U", "A")
        report.inputs = _inputs(doc, ("U", "A"))
        report.result = {"B": str(gauge_act(u, a))}
    elif cmd == "hmul":
        a, f, b, g = _need(doc, "A", "F", "B", "G")
        report.inputs = _inputs(doc, ("A", "F", "B", "G"))
        p = h_mul(HPair(a, f), HPair(b, g))
        report.result = {"A": str(p.a), "F": str(p.f)}
    elif cmd in ("equivalent", "trivial"):
        if cmd == "equivalent":
            a, b = _need(doc, "A", "B")
            report.inputs = _inputs(doc, ("A", "B"))
        else:
            (b,) = _need(doc, "A")
            a = MatRF.zero(b.n)
            report.inputs = _inputs(doc, ("A",))
        _decision(report, a, b, bounds, seed, jobs, cmd == "trivial")
    elif cmd == "intertwine":
        a1, a2 = _need(doc, "A1", "A2")
        report.inputs = _inputs(doc, ("A1", "A2"))
        sol = rational_solutions(SylvesterSystem(a1, a2), bounds)
        report.result = {"dimension": sol.dimension, "basis": [str(m) for m in sol.basis]}
        report.certificate = {"equation": "M' = A2 M - M A1", "scope": _scope(sol.bounds_used)}
        report.bounds = sol.bounds_used.to_json()
    elif cmd == "compose":
        a1, a2, a3, m, n = _need(doc, "A1", "A2", "A3", "M", "N")
        report.inputs = _inputs(doc, ("A1", "A2", "A3", "M", "N"))
        f = arrow_new(a1, a2, m)
        g = arrow_new(a2, a3, n)
        h = arrow_compose(g, f)
        report.result = {"NM": str(h.m)}
        report.certificate = {"check": "(NM)' = A3 NM - NM A1"}
    elif cmd == "rep":
        _rep(report, doc)
    else:
        _check(report, doc)
    return report


def _rep(report: Report, doc: InputDocument):
    if not doc.towers or not doc.galois:
        raise UsageError("rep needs at least one tower and one galois declaration")
    report.inputs = {n: doc.sources[n] for n in list(doc.towers) + list(doc.galois)}
    out = {}
    for name, grid in doc.towers.items():
        fm = FundamentalMatrix.from_entries(grid)
        images = {}
        for gname, g in doc.galois.items():
            try:
                images[gname] = pm_str(rep_matrix(fm, g))
            except UnmappedGenerator as exc:
                images[gname] = f"unmapped: {exc}"
        out[name] = {"system": str(fm.system), "representation": images}
    report.result = out
    report.certificate = {"definition": "g(F) = F c(g)"}


def _check(report: Report, doc: InputDocument):
    m = doc.matrices
    checks, zero = {}, {}

    def record(label, value, is_zero):
        checks[label] = value
        zero[label] = is_zero

    if all(k in m for k in ("U", "A", "B")):
        d = gauge_act(m["U"], m["A"]) - m["B"]
        record("gauge_act(U, A) - B", str(d), d.is_zero())
    if all(k in m for k in ("A1", "A2", "M")):
        d = sylvester_residual(m["M"], SylvesterSystem(m["A1"], m["A2"]))
        record("M' - A2 M + M A1", str(d), d.is_zero())
    for name, grid in doc.towers.items():
        if "A" in m:
            lhs = cf_matderive(grid)
            rhs = cf_matmul(m["A"], grid)
            diff = tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(lhs, rhs))
            record(f"{name}' - A {name}", _grid_str(diff), all(e.is_zero() for r in diff for e in r))
        else:
            checks[f"{name}' {name}^-1"] = str(system_from_fundamental(grid))
    if not checks:
        raise UsageError("check found nothing to verify in the input document")
    report.inputs = {n: doc.sources[n] for n in doc.sources}
    report.result = checks
    ok = all(zero.values())
    report.certificate = {"all_zero": ok}
    report.exit_code = EXIT_OK if ok else EXIT_NONE_FOUND


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _u64(text: str) -> int:
    try:
        v = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive(text: str) -> int:
    v = _u64(text)
    if v < 1:
        raise argparse.ArgumentTypeError("jobs must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pvgauge", description="Exact gauge equivalence and intertwiners over Q(x).")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", required=True, help="input document")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--bounds", help="JSON file with user degree bounds")
    p.add_argument("--seed", type=_u64, default=DEFAULT_SEED, help="seed for the invertibility search")
    p.add_argument("--jobs", type=_positive, default=1, help="worker threads for the invertibility search")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.input, encoding="utf-8") as fh:
            doc = parse_document(fh.read())
        bounds = None
        if args.bounds:
            with open(args.bounds, encoding="utf-8") as fh:
                bounds = load_bounds(fh.read())
    except OSError as exc:
        print(f"pvgauge: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PVGaugeError as exc:
        print(f"pvgauge: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exit_code_for(exc)

    try:
        report = run_command(args.command, doc, bounds, args.seed, args.jobs)
    except (PVGaugeError, ValueError, KeyError) as exc:
        report = Report(args.command, {n: doc.sources[n] for n in doc.sources}, seed=args.seed)
        report.result = "error"
        report.certificate = {"error": type(exc).__name__, "message": str(exc)}
        report.exit_code = exit_code_for(exc)
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

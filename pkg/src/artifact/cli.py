"""Command-line front end.

Every subcommand produces a :class:`CommandResult`, printed either as text
or as one JSON object with the keys ``subcommand``, ``inputs``, ``results``,
``timings``, ``status`` (and ``methods``).  Integers and rationals are
rendered as decimal strings in JSON since they can exceed native widths.

Exit status: 0 on success, 1 when a cross-check or validation failed,
2 on bad usage, 3 when a computation raised.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import genfun, groebner, modspace, singularity
from .kernel import BACKEND
from .parsing import PolySyntaxError, parse_poly_source, parse_stable_map_document
from .polyalg import Polynomial

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_ERROR = 3


@dataclass
class CommandResult:
    subcommand: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    status: str = "ok"
    methods: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return {"ok": EXIT_OK, "failed": EXIT_FAILED, "usage": EXIT_USAGE}.get(self.status, EXIT_ERROR)

    def to_json(self) -> str:
        payload = {
            "subcommand": self.subcommand,
            "inputs": _jsonable(self.inputs),
            "results": _jsonable(self.results),
            "timings": {k: f"{v:.6f}" for k, v in self.timings.items()},
            "status": self.status,
            "methods": list(self.methods),
        }
        return json.dumps(payload, indent=2, sort_keys=False)

    def to_text(self) -> str:
        lines = [f"{self.subcommand}: {self.status}"]
        for k, v in self.inputs.items():
            lines.append(f"  input  {k} = {_text(v)}")
        for k, v in self.results.items():
            if isinstance(v, list) and v and isinstance(v[0], dict):
                continue  # structured detail is for the machine format
            if isinstance(v, str) and "\n" in v:
                lines.append(f"  {k}:")
                lines.extend("    " + row for row in v.splitlines())
            else:
                lines.append(f"  {k} = {_text(v)}")
        for k, v in self.timings.items():
            lines.append(f"  time   {k} = {v:.3f}s")
        return "\n".join(lines)


def _jsonable(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, (int, Fraction)):
        return str(v)
    if isinstance(v, float):
        return "infinite" if math.isinf(v) else repr(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def _text(v) -> str:
    if isinstance(v, float) and math.isinf(v):
        return "infinite"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_text(x) for x in v) + "]"
    return str(v)


class _Timer:
    def __init__(self, result: CommandResult, name: str):
        self.result = result
        self.name = name

    def __enter__(self):
        self.t0 = time.perf_counter()

    def __exit__(self, *exc):
        self.result.timings[self.name] = time.perf_counter() - self.t0


def _cmd_torus_mult(args, res: CommandResult):
    p, q = args.p, args.q
    res.inputs.update(p=p, q=q, method=args.method)
    singularity.TorusKnotSingularity(p, q)
    methods = ["closed", "groebner", "bezout"] if args.method == "all" else [args.method]
    values = {}
    if "closed" in methods:
        with _Timer(res, "closed_form"):
            values["closed_form"] = singularity.multiplicity_closed_form((p, q))
    if "groebner" in methods:
        with _Timer(res, "groebner"):
            values["groebner"] = modspace.multiplicity_via_groebner(p, q, step_limit=args.step_limit)
        if args.modular_check:
            with _Timer(res, "groebner_mod"):
                values["groebner_mod"] = modspace.multiplicity_via_groebner(
                    p, q, step_limit=args.step_limit, modulus=args.prime
                )
    if "bezout" in methods:
        with _Timer(res, "bezout"):
            system = modspace.build_torus_knot_system(p, q)
            values["bezout"] = modspace.weighted_bezout_length(system.equation_degrees, system.weights)
    res.results.update(values)
    res.results["agree"] = len(set(values.values())) == 1
    res.methods.extend(methods)
    if not res.results["agree"]:
        res.status = "failed"


def _cmd_delta(args, res: CommandResult):
    s = singularity.TorusKnotSingularity(args.p, args.q)
    res.inputs.update(p=args.p, q=args.q)
    with _Timer(res, "total"):
        gaps = singularity.semigroup_gaps(s)
        delta = singularity.delta_invariant(s)
        conductor = singularity.conductor_exponent(s)
    res.results.update(
        delta=delta,
        semigroup_gaps=gaps,
        gap_count=len(gaps),
        conductor=conductor,
        multiplicity=singularity.multiplicity_closed_form(s),
        agree=len(gaps) == delta and conductor == 2 * delta,
    )
    res.methods.extend(["formula", "semigroup-enumeration"])
    if not res.results["agree"]:
        res.status = "failed"


def _cmd_counts(args, res: CommandResult):
    G = args.gmax
    if G < 0:
        raise ValueError("--gmax must be nonnegative")
    res.inputs.update(gmax=G)
    with _Timer(res, "counts"):
        counts = genfun.rational_curve_counts(G)
    with _Timer(res, "cross_check"):
        agree = genfun.counts_cross_check(G)
    positive = all(n > 0 for n in counts)
    res.results.update(counts=counts, cross_check=agree, positive=positive)
    res.methods.extend(["pentagonal-inverse-binary-power", "product-power-inverse"])
    if not (agree and positive):
        res.status = "failed"


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _cmd_length(args, res: CommandResult):
    ring, order, polys = parse_poly_source(_read(args.input))
    res.inputs.update(input=args.input, ring=list(ring), order=str(order), local=args.local,
                      generators=[p.to_string(order) for p in polys])
    ideal = groebner.Ideal.of(polys, order)
    if args.local:
        res.inputs["cap"] = args.cap
        with _Timer(res, "local_length"):
            res.results["local_length"] = groebner.local_length_at_origin(
                ideal, cap=args.cap, step_limit=args.step_limit
            )
        res.methods.append("m-adic-stabilisation")
        return
    with _Timer(res, "groebner"):
        G = groebner.buchberger(ideal, step_limit=args.step_limit)
        dim = groebner.quotient_dimension(G)
    res.results.update(
        dimension=dim,
        zero_dimensional=groebner.is_zero_dimensional(G),
        basis=[g.to_string(order) for g in G],
    )
    res.methods.append("buchberger")
    if args.modular_check:
        with _Timer(res, "groebner_mod"):
            Gm = groebner.buchberger(ideal, step_limit=args.step_limit, modulus=args.prime)
            dim_mod = groebner.quotient_dimension(Gm)
        res.results["dimension_mod"] = dim_mod
        res.results["modular_agree"] = dim_mod == dim
        res.methods.append(f"buchberger-mod-{args.prime}")
        if dim_mod != dim:
            res.status = "failed"


def _load_problem(args, res: CommandResult) -> modspace.StableMapProblem:
    fields = parse_stable_map_document(_read(args.input))
    res.inputs.update(
        input=args.input,
        degree=fields["degree"],
        parametrization=[str(c) for c in fields["parametrization"]],
        implicit=str(fields["implicit"]),
        seed=args.seed,
    )
    prob = modspace.StableMapProblem.create(
        fields["degree"],
        fields["parametrization"],
        fields["implicit"],
        marked_points=fields["marked_points"],
        marked_lines=fields["marked_lines"],
        seed=args.seed,
    )
    res.results["marked_points"] = [f"{t} {s}" for t, s in prob.marked_points]
    res.results["marked_lines"] = [_line_text(ln) for ln in prob.marked_lines]
    return prob


def _line_text(ln) -> str:
    exps = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    form = Polynomial(modspace.PLANE_RING, {e: c for e, c in zip(exps, ln) if c})
    return str(form)


def _cmd_validate(args, res: CommandResult):
    prob = _load_problem(args, res)
    report = modspace.validate_stable_map_input(prob)
    res.results["valid"] = report.ok
    res.results["report"] = str(report)
    res.results["checks"] = [
        {"name": c.name, "passed": c.passed, "witness": c.witness} for c in report.checks
    ]
    res.methods.append("validation")
    if not report.ok:
        res.status = "failed"


def _cmd_stable_map(args, res: CommandResult):
    prob = _load_problem(args, res)
    report = modspace.validate_stable_map_input(prob)
    if not report.ok:
        res.results["valid"] = False
        res.results["report"] = str(report)
        res.status = "failed"
        return
    with _Timer(res, "build"):
        system = modspace.build_stable_map_system(prob)
    res.results.update(variables=len(system.ring), equations=len(system.equations))
    with _Timer(res, "local_length"):
        res.results["length"] = groebner.local_length_at_origin(
            system.ideal(), cap=args.cap, step_limit=args.step_limit
        )
    res.methods.append("stable-map-scheme-local-length")


_COMMANDS = {
    "torus-mult": _cmd_torus_mult,
    "delta": _cmd_delta,
    "counts": _cmd_counts,
    "length": _cmd_length,
    "stable-map": _cmd_stable_map,
    "validate": _cmd_validate,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _global_options(parser: argparse.ArgumentParser, suppress: bool):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("text", "json"), default=default("text"))
    parser.add_argument("--modular-check", action="store_true", default=default(False),
                        help="repeat Groebner computations modulo a prime and compare")
    parser.add_argument("--prime", type=int, default=default(groebner.DEFAULT_PRIME),
                        help="prime for --modular-check (default 32003)")
    parser.add_argument("--step-limit", type=int, default=default(groebner.DEFAULT_STEP_LIMIT))
    parser.add_argument("--seed", type=int, default=default(modspace.DEFAULT_SEED),
                        help="seed for automatic marked-data selection")
    parser.add_argument("-v", "--verbose", action="store_true", default=default(False))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="artifact", description="Multiplicities of delta-constant strata.")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)

    p = sub.add_parser("torus-mult", help="multiplicity of x^q = y^p by three methods")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--method", choices=("closed", "groebner", "bezout", "all"), default="all")
    _global_options(p, suppress=True)

    p = sub.add_parser("delta", help="delta invariant and conductor of x^q = y^p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    _global_options(p, suppress=True)

    p = sub.add_parser("counts", help="rational curve counts n(0..G)")
    p.add_argument("--gmax", type=int, default=100)
    _global_options(p, suppress=True)

    p = sub.add_parser("length", help="length of the quotient by a polynomial ideal")
    p.add_argument("--input", required=True)
    p.add_argument("--local", action="store_true", help="length at the origin only")
    p.add_argument("--cap", type=int, default=groebner.DEFAULT_LOCAL_CAP)
    _global_options(p, suppress=True)

    for name, text in (("stable-map", "length of the stable-map scheme of a rational curve"),
                       ("validate", "validate a stable-map input document")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--input", required=True)
        p.add_argument("--cap", type=int, default=groebner.DEFAULT_LOCAL_CAP)
        _global_options(p, suppress=True)
    return parser


def run(argv: list[str]) -> CommandResult:
    """Parse ``argv`` and execute one subcommand; never raises on bad input."""
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        return CommandResult("usage", {"argv": list(argv)}, {"error": str(exc)}, status="usage")
    if not args.subcommand:
        return CommandResult("usage", {"argv": list(argv)}, {"error": "missing subcommand"}, status="usage")
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    res = CommandResult(args.subcommand)
    res.methods.append(f"kernel-{BACKEND}")
    res.format = args.format
    t0 = time.perf_counter()
    try:
        _COMMANDS[args.subcommand](args, res)
    except (PolySyntaxError, ValueError, TypeError, ArithmeticError, OSError, groebner.GroebnerError) as exc:
        res.status = "error"
        res.results["error"] = f"{type(exc).__name__}: {exc}"
    res.timings["total"] = time.perf_counter() - t0
    return res


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    res = run(argv)
    fmt = getattr(res, "format", None)
    if fmt is None:
        fmt = "json" if "json" in argv else "text"
    out = res.to_json() if fmt == "json" else res.to_text()
    stream = sys.stdout if res.status in ("ok", "failed") else sys.stderr
    print(out, file=stream)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: construct, eval, classify, solve, reduce, verify. Every run
produces a machine-readable trace (JSON, sorted keys) echoing the command
line, a digest of each input file, and the outcome; the trace is printed
to stdout and optionally written with --trace. Timing is the only
non-deterministic field.

Exit codes: 0 success, 1 validation failure, 2 solver budget or search
space exhausted, 3 internal contradiction.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import serialization as ser
from . import solvers
from .bitsupport import FiniteNatSet
from .config import default_log_bound
from .errors import (
    BudgetExceededError,
    InternalContradictionError,
    SchemaError,
    ValidationError,
)
from .reductions import PRINCIPLES, REGISTRY, Solution, verify_reduction
from .solvers import SearchBudget, SearchConstraints

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_BUDGET = 2
EXIT_CONTRADICTION = 3


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _CliError(message)


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise _CliError(f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON: {e}")


def _load_instance(path: str, expect: tuple[str, ...] | None = None):
    doc = _load_json(path)
    instance = ser.instance_from_file(doc)
    if expect is not None and instance.principle not in expect:
        raise ValidationError(
            f"{path} holds a {instance.principle!r} instance; expected one of {expect}"
        )
    return instance


def _budget(args, default_ground=None) -> SearchBudget:
    return SearchBudget(
        element_bound=1 << args.bound,
        set_size=getattr(args, "size", None) or 1,
        node_limit=args.node_limit,
        ground_set=default_ground,
    )


def _outcome_dict(outcome: solvers.SolverOutcome) -> dict:
    return {
        "status": outcome.status,
        "nodes_explored": outcome.nodes_explored,
        "solution": None if outcome.solution is None else list(outcome.solution.elements),
    }


def _solution_dict(solution: Solution | None) -> dict | None:
    if solution is None:
        return None
    return ser.solution_file(solution)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_construct(args) -> tuple[int, dict]:
    params = json.loads(args.params) if args.params else {}
    payload = {
        "kind": args.target_kind,
        "domain_bound": args.domain_bound,
        "builtin": {"name": args.builtin, "params": params},
    }
    if args.target_kind == "unary_coloring":
        coloring = ser.unary_coloring_from_payload(payload)
        doc = {
            "format_version": ser.FORMAT_VERSION,
            "principle": "unary_coloring",
            "payload": ser.unary_coloring_payload(coloring),
        }
    else:
        coloring = ser.tuple_coloring_from_payload(payload)
        doc = {
            "format_version": ser.FORMAT_VERSION,
            "principle": "tuple_coloring",
            "payload": ser.tuple_coloring_payload(coloring),
        }
    text = ser.canonical_dumps(doc)
    Path(args.out).write_text(text)
    return EXIT_OK, {"written": args.out, "digest": ser.digest(text.encode())}


def _cmd_eval(args) -> tuple[int, dict]:
    instance = _load_instance(args.coloring, ("unary_coloring", "tuple_coloring"))
    if (args.point is None) == (args.tuple is None):
        raise _CliError("eval needs exactly one of --point or --tuple")
    if args.point is not None:
        if instance.principle != "unary_coloring":
            raise _CliError("--point applies to unary colorings; use --tuple")
        value = instance.payload(args.point)
    else:
        if instance.principle != "tuple_coloring":
            raise _CliError("--tuple applies to tuple colorings; use --point")
        point = tuple(int(x) for x in args.tuple.split(","))
        value = instance.payload(point)
    return EXIT_OK, {"value": value}


def _cmd_classify(args) -> tuple[int, dict]:
    from . import colorings

    instance = _load_instance(args.coloring, ("unary_coloring", "tuple_coloring"))
    target = FiniteNatSet(tuple(int(x) for x in args.set.split(",")))
    if instance.principle == "unary_coloring":
        cases = colorings.classify_canonical_fs(instance.payload, target, cap=args.cap)
    else:
        cases = colorings.classify_canonical_tuples(instance.payload, target)
    return EXIT_OK, {"cases": sorted(cases)}


def _cmd_solve(args) -> tuple[int, dict]:
    instance = _load_instance(args.instance, ("rt1", "rt", "reg", "ht", "reght"))
    principle = instance.principle
    if principle == "rt1":
        domain = FiniteNatSet(tuple(range(args.domain_bound or instance.payload.domain_bound)))
        outcome = solvers.solve_rt1(instance.payload, instance.param("k"), domain, args.size)
    elif principle in ("rt", "reg"):
        domain = FiniteNatSet(tuple(range(args.domain_bound or instance.payload.domain_bound)))
        if principle == "rt":
            outcome = solvers.solve_rt(
                instance.payload, instance.param("k"), domain, args.size,
                node_limit=args.node_limit,
            )
        else:
            ground = instance.param("ground_set")
            outcome = solvers.solve_reg(
                instance.payload, ground if ground is not None else domain, args.size,
                node_limit=args.node_limit,
            )
    elif principle == "ht":
        outcome = solvers.solve_ht(
            instance.payload,
            instance.param("mode"),
            args.size,
            _budget(args),
            require_apart=instance.param("apart", True),
        )
    else:
        constraints = SearchConstraints(
            min_lambda_h0=args.min_lambda_h0,
            last_mu_at_least=args.last_mu_at_least,
        )
        outcome = solvers.solve_lambda_reg_ht(
            instance.payload,
            instance.param("mode"),
            args.size,
            _budget(args),
            constraints=constraints,
            support_shape=args.support_shape,
        )
    code = EXIT_OK if outcome.status == solvers.FOUND else EXIT_BUDGET
    return code, {"solver": _outcome_dict(outcome)}


def _cmd_reduce(args) -> tuple[int, dict]:
    if args.reduction not in REGISTRY:
        raise ValidationError(f"unknown reduction {args.reduction!r}")
    red = REGISTRY[args.reduction]
    instance = _load_instance(args.instance, (red.source,))
    provided = ser.solution_from_file(_load_json(args.solution))
    budget = _budget(args)
    target = red.phi(instance, budget)
    PRINCIPLES[red.target].validate_instance(target)
    PRINCIPLES[red.target].validate_solution(target, provided)
    h = provided.payload
    result = red.psi(None if red.kind == "sW" else instance, target, h)
    PRINCIPLES[red.source].validate_solution(instance, result)
    return EXIT_OK, {
        "reduction": args.reduction,
        "kind": red.kind,
        "psi_output": _solution_dict(result),
    }


def _cmd_verify(args) -> tuple[int, dict]:
    if args.reduction not in REGISTRY:
        raise ValidationError(f"unknown reduction {args.reduction!r}")
    red = REGISTRY[args.reduction]
    instance = _load_instance(args.instance, (red.source,))
    sizes = (args.size,) if args.size is not None else None
    report = verify_reduction(args.reduction, instance, _budget(args), sizes=sizes)
    outcome = {
        "report": {
            "reduction": report.reduction,
            "kind": report.kind,
            "status": report.status,
            "verdicts": report.verdicts,
            "solve_attempts": [list(a) for a in report.solve_attempts],
            "solver": None if report.solver_outcome is None else _outcome_dict(report.solver_outcome),
            "psi_output": _solution_dict(report.psi_output),
            "phi": report.phi_summary,
            "failure": report.failure,
        }
    }
    if report.status == "ok":
        return EXIT_OK, outcome
    if report.status in ("unsolved", "uncertified"):
        return EXIT_BUDGET, outcome
    return EXIT_VALIDATION, outcome


def build_parser() -> _Parser:
    parser = _Parser(prog="redbench", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common_solver_flags(p):
        p.add_argument("--bound", type=int, default=default_log_bound(),
                       help="log2 of the solver element bound")
        p.add_argument("--node-limit", type=int, default=1_000_000)

    p = sub.add_parser("construct", help="build and serialize a coloring")
    p.add_argument("--builtin", required=True)
    p.add_argument("--params", help="JSON object of builder parameters")
    p.add_argument("--domain-bound", type=int, required=True)
    p.add_argument("--target-kind", default="unary_coloring",
                   choices=["unary_coloring", "tuple_coloring"])
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_construct)

    p = sub.add_parser("eval", help="evaluate a coloring at a point")
    p.add_argument("--coloring", required=True)
    p.add_argument("--point", type=int)
    p.add_argument("--tuple", help="comma-separated tuple entries")
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("classify", help="canonical pattern classification")
    p.add_argument("--coloring", required=True)
    p.add_argument("--set", required=True, help="comma-separated target set")
    p.add_argument("--cap", type=int, default=3)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("solve", help="run a brute-force solver on an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--domain-bound", type=int)
    p.add_argument("--min-lambda-h0", type=int, default=0)
    p.add_argument("--last-mu-at-least", type=int)
    p.add_argument("--support-shape", action="store_true")
    common_solver_flags(p)
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("reduce", help="apply phi and psi with a supplied solution")
    p.add_argument("--reduction", required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--solution", required=True)
    common_solver_flags(p)
    p.set_defaults(handler=_cmd_reduce)

    p = sub.add_parser("verify", help="full round trip through the solver")
    p.add_argument("--reduction", required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--size", type=int)
    common_solver_flags(p)
    p.set_defaults(handler=_cmd_verify)

    return parser


def run_command(argv: list[str]) -> tuple[int, dict]:
    """Run one subcommand; returns (exit code, trace document)."""
    start = time.perf_counter()
    outcome: dict
    code = EXIT_OK
    try:
        args = build_parser().parse_args(argv)
        inputs = {}
        for attr in ("instance", "coloring", "solution"):
            path = getattr(args, attr, None)
            if path and Path(path).exists():
                inputs[path] = ser.digest(Path(path).read_bytes())
        code, outcome = args.handler(args)
    except _CliError as e:
        inputs = {}
        code, outcome = EXIT_VALIDATION, {"error": {"type": "usage", "message": str(e)}}
    except SchemaError as e:
        inputs = {}
        code, outcome = EXIT_VALIDATION, {
            "error": {"type": "schema", "message": str(e), "field": e.field}
        }
    except ValidationError as e:
        inputs = {}
        code, outcome = EXIT_VALIDATION, {
            "error": {
                "type": "validation",
                "message": str(e),
                "witness": _jsonable(e.witness),
            }
        }
    except ValueError as e:
        # constructor-level rejections (malformed sets, orders, modes)
        inputs = {}
        code, outcome = EXIT_VALIDATION, {
            "error": {"type": "validation", "message": str(e), "witness": None}
        }
    except BudgetExceededError as e:
        inputs = {}
        code, outcome = EXIT_BUDGET, {"error": {"type": "budget", "message": str(e)}}
    except InternalContradictionError as e:
        inputs = {}
        code, outcome = EXIT_CONTRADICTION, {
            "error": {"type": "internal_contradiction", "message": str(e)}
        }
    trace = {
        "format_version": ser.FORMAT_VERSION,
        "command": list(argv),
        "inputs_digest": inputs,
        "outcome": outcome,
        "wall_clock_s": round(time.perf_counter() - start, 6),
    }
    return code, trace


def _jsonable(value):
    if isinstance(value, (int, str, bool, type(None))):
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return repr(value)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    trace_path = None
    if "--trace" in argv:
        i = argv.index("--trace")
        trace_path = argv[i + 1]
        del argv[i : i + 2]
    code, trace = run_command(argv)
    text = ser.canonical_dumps(trace)
    if trace_path:
        Path(trace_path).write_text(text)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

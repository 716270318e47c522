#!/usr/bin/env python3
"""
superbethe command line.

Every subcommand writes one JSON document (top-level "schema": 1) to stdout or
--out; progress and diagnostics go to stderr.

Exit codes:
    0: success, every certificate passed
    1: at least one certificate or check failed
    2: usage or input error
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import yaml

import console
from bethe import (
    BAESystem,
    RootCapError,
    SolverConfig,
    bethe_data_from_solution,
    cancellation_pairs,
    pair_residue_check,
    pole_freeness_check,
    solve_with_report,
    strap_dot,
)
from certify import CANONICAL, FLOAT_SPOT, METHODS, Certificate, summarize
from diagrams import SkewShape, TableauError, all_skew_shapes
from duality import DualityError, grading_path_transform
from dvf import (
    BetheData,
    character_jacobi_trudi,
    character_limit,
    random_bethe_data,
    transfer_terms,
    transfer_tableau_sum,
    verify_determinants,
    verify_series,
)
from dynkin_image import render_dynkin_png
from ratfun import EXACT, FLOAT, PoleError
from run_config import finite_json, init_debug_session, load_config, save_debug_artifact
from superalgebra import Grading, GradingError, dynkin_graph, enumerate_gradings, reflection_graph_dot
from tsystem import GridBoundsError, TGrid, restricted_relations, run_tsystem_suite, vanishing_check
from validate_config import run_validation

SCHEMA_VERSION = 1

VERIFY_KINDS = ["jt", "dual", "series", "tsystem", "vanishing", "restricted", "character", "all"]

# (r, s) of the default verification suite: sl(1|1), sl(2|1), sl(1|2), sl(2|2)
DEFAULT_SUITE = [(0, 0), (1, 0), (0, 1), (1, 1)]

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(ValueError):
    """Bad combination of command-line arguments or malformed input."""


# ---------------------------------------------------------------------------
# Input / output
# ---------------------------------------------------------------------------

def load_input(path: str) -> Dict[str, Any]:
    """YAML or JSON document from a file, or stdin for '-'."""
    try:
        if path == "-":
            data = yaml.safe_load(sys.stdin)
        else:
            with open(path) as f:
                data = yaml.safe_load(f)
    except FileNotFoundError:
        raise UsageError(f"input file not found: {path}")
    except yaml.YAMLError as e:
        raise UsageError(f"cannot parse input {path}: {e}")
    if not isinstance(data, dict):
        raise UsageError(f"input {path} must contain a mapping")
    return data


def write_json(payload: Dict[str, Any], out: Optional[str]) -> None:
    document = finite_json({"schema": SCHEMA_VERSION, **payload})
    text = json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + "\n"
    if out:
        Path(out).write_text(text)
        console.info(f"Output written to {out}")
    else:
        sys.stdout.write(text)


def write_text(text: str, path: str) -> None:
    Path(path).write_text(text)
    console.info(f"Wrote {path}")


def resolve_grading(args: argparse.Namespace, config: Dict[str, Any]) -> Grading:
    selector = args.grading if getattr(args, "grading", None) is not None else config.get("grading")
    r = args.r if getattr(args, "r", None) is not None else config.get("r", 0)
    s = args.s if getattr(args, "s", None) is not None else config.get("s", 1)
    if isinstance(selector, list):
        return Grading.from_signs(selector)
    if isinstance(selector, int) or (isinstance(selector, str) and selector.strip().isdigit()):
        gradings = enumerate_gradings(r, s)
        index = int(selector)
        if not 0 <= index < len(gradings):
            raise UsageError(f"grading index {index} outside 0..{len(gradings) - 1}")
        return gradings[index]
    if isinstance(selector, str):
        return Grading.parse(selector)
    return enumerate_gradings(r, s)[0]


def resolve_shape(args: argparse.Namespace, config: Dict[str, Any]) -> SkewShape:
    text = args.shape if getattr(args, "shape", None) else config.get("shape")
    if not text:
        raise UsageError("a shape is required (--shape '3,2/1')")
    return SkewShape.parse(str(text))


def _report(certs: Sequence[Certificate]) -> None:
    for cert in certs:
        console.status(cert.identity, cert.passed)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_gradings(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    r = args.r if args.r is not None else config["r"]
    s = args.s if args.s is not None else config["s"]
    gradings = enumerate_gradings(r, s)
    records = []
    for g in gradings:
        diagram = dynkin_graph(g)
        records.append({
            "grading": g.to_json(),
            "label": g.label(),
            "distinguished": g.is_distinguished(),
            "dynkin": diagram.to_json(),
        })
    if args.dot:
        write_text(reflection_graph_dot(r, s), args.dot)
    console.status(f"sl({r + 1}|{s + 1}): {len(records)} gradings")
    write_json({"command": "gradings", "r": r, "s": s, "count": len(records), "gradings": records}, args.out)
    return EXIT_OK


def cmd_dynkin(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    g = resolve_grading(args, config)
    diagram = dynkin_graph(g)
    if args.dot:
        write_text(diagram.to_dot(), args.dot)
    rendered = False
    if args.png:
        rendered = render_dynkin_png(diagram, Path(args.png))
    write_json({"command": "dynkin", "dynkin": diagram.to_json(), "png": bool(rendered)}, args.out)
    return EXIT_OK


def cmd_tableaux(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    g = resolve_grading(args, config)
    sh = resolve_shape(args, config)
    records = []
    for t, term in transfer_terms(g, sh, 0, args.max_cells):
        records.append({"tableau": t.to_json(), "text": str(t), "sign": term.sign, "term": term.to_json()})
    console.status(f"{len(records)} admissible tableaux of shape {sh} in grading {g.label()}")
    write_json({"command": "tableaux", "grading": g.to_json(), "shape": sh.to_json(),
                "count": len(records), "tableaux": records}, args.out)
    return EXIT_OK


def _bethe_data(data: Dict[str, Any], backend: Optional[str]) -> BetheData:
    d = BetheData.from_json(data)
    if backend == FLOAT:
        d = d.to_backend(FLOAT)
    elif backend == EXACT and d.backend != EXACT:
        raise UsageError("input contains floating values; the exact backend needs rationals such as '1/3'")
    return d


def cmd_transfer(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    if not args.input:
        raise UsageError("transfer needs --input with Bethe data (grading, roots, inhomogeneities)")
    d = _bethe_data(load_input(args.input), args.backend)
    sh = resolve_shape(args, config)
    f = transfer_tableau_sum(d, sh, args.max_cells)
    write_json({"command": "transfer", "grading": d.grading.to_json(), "shape": sh.to_json(),
                "transfer": f.to_json()}, args.out)
    return EXIT_OK


def _suite_gradings(args: argparse.Namespace, config: Dict[str, Any]) -> List[Grading]:
    if args.grading is not None:
        return [resolve_grading(args, config)]
    if args.r is not None or args.s is not None:
        r = args.r if args.r is not None else config["r"]
        s = args.s if args.s is not None else config["s"]
        return enumerate_gradings(r, s)
    return [g for r, s in DEFAULT_SUITE for g in enumerate_gradings(r, s)]


def _character_check(g: Grading, sh: SkewShape, rng: np.random.Generator) -> Certificate:
    x = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 6))) for _ in range(g.n)]
    lhs, rhs = character_limit(g, sh, x), character_jacobi_trudi(g, sh, x)
    return Certificate(f"character limit = super Jacobi-Trudi {g.label()} shape {sh}", lhs == rhs, CANONICAL,
                       1, None, {"lhs": str(lhs), "rhs": str(rhs)})


def _verify_case(kind: str, d: BetheData, shapes: Sequence[SkewShape], method: str,
                 verify: Dict[str, Any], rng: np.random.Generator, flip: Optional[int]) -> List[Certificate]:
    g = d.grading
    certs: List[Certificate] = []
    if kind in ("jt", "dual", "all"):
        for sh in shapes:
            pair = verify_determinants(d, sh, method, flip)
            if kind == "jt":
                certs.append(pair[0])
            elif kind == "dual":
                certs.append(pair[1])
            else:
                certs.extend(pair)
    if kind in ("series", "all"):
        certs.extend(verify_series(d, verify["rectangle_bound"]))
    if kind in ("character", "all"):
        certs.extend(_character_check(g, sh, rng) for sh in shapes)
    bound = verify["rectangle_bound"]
    if kind in ("tsystem", "all"):
        certs.extend(run_tsystem_suite(d, bound, bound, method))
    elif kind in ("vanishing", "restricted"):
        grid = TGrid(d, max(bound + 1, g.r + 3), max(bound + 1, g.s + 3, 1))
        if kind == "vanishing":
            certs.append(vanishing_check(grid, g.r, g.s, method))
        else:
            certs.append(restricted_relations(grid, g.r, g.s, method))
    return certs


def cmd_verify(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    verify = config["verify"]
    method = args.method or verify["method"]
    if args.backend == FLOAT:
        method = FLOAT_SPOT
    seed = config["seed"]
    rng = np.random.default_rng(seed)
    gradings = _suite_gradings(args, config)
    if args.shape:
        shapes = [SkewShape.parse(args.shape)]
    else:
        shapes = all_skew_shapes(args.max_side or verify["max_shape_side"])
    if args.mutate_sign is not None and args.kind not in ("jt", "dual", "all"):
        raise UsageError("--mutate-sign only applies to jt, dual and all")

    init_debug_session(config, f"verify_{args.kind}")
    cases = []
    all_certs: List[Certificate] = []
    for g in gradings:
        for sample in range(verify["samples"]):
            if args.input:
                d = _bethe_data(load_input(args.input), EXACT)
                if d.grading != g:
                    raise UsageError(f"input grading {d.grading.label()} differs from requested {g.label()}")
            else:
                d = random_bethe_data(g, rng, verify["max_roots_per_color"], verify["max_sites"],
                                      verify["root_denominator"])
            certs = _verify_case(args.kind, d, shapes, method, verify, rng, args.mutate_sign)
            _report(certs)
            all_certs.extend(certs)
            cases.append({"data": d.to_json(), "certificates": [c.to_json() for c in certs]})
            if args.input:
                break
    summary = summarize(all_certs)
    passed = not summary["failed"]
    save_debug_artifact(f"verify_{args.kind}", {"summary": summary, "cases": cases})
    console.banner(f"{summary['passed']}/{summary['total']} certificates passed", passed)
    write_json({"command": "verify", "kind": args.kind, "method": method, "seed": seed,
                "summary": summary, "cases": cases}, args.out)
    return EXIT_OK if passed else EXIT_FAILED


def cmd_solve(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    if not args.input:
        raise UsageError("solve-bae needs --input with a Bethe system (grading, n_roots, inhomogeneities)")
    data = load_input(args.input)
    try:
        sys_ = BAESystem.from_json(data)
    except (KeyError, TypeError) as e:
        raise UsageError(f"malformed Bethe system: {e}")
    tol = config["tolerances"]
    solver = SolverConfig.from_dict({**config["solver"], "seed": config["seed"],
                                     "tol": tol["bae"], "dedup_tol": tol["dedup"]})
    init_debug_session(config, "solve")
    solutions, reports = solve_with_report(sys_, solver)
    if not solutions:
        console.warn("no seed converged; no solutions found")

    records = []
    passed = True
    for index, sol in enumerate(solutions):
        if any(sol.collided):
            # coinciding roots give higher-order poles; residue checks do not apply
            console.status(f"solution {index}: coinciding roots, residue checks skipped", True)
            records.append({"solution": sol.to_json(), "skipped": "coinciding roots", "passed": True})
            continue
        d = bethe_data_from_solution(sys_, sol)
        pair = {str(b): pair_residue_check(d, b) for b in range(1, sys_.grading.rank + 1)}
        poles = {str(a): pole_freeness_check(d, a).to_json() for a in range(1, args.pole_columns + 1)}
        ok = (sol.residual < tol["bae"]
              and all(v < tol["residue"] for v in pair.values())
              and all(p["max_residue"] < tol["pole"] for p in poles.values()))
        passed = passed and ok
        console.status(f"solution {index}: residual {sol.residual:.2e}", ok)
        records.append({"solution": sol.to_json(), "pair_residues": pair, "pole_freeness": poles, "passed": ok})
        if args.dot and args.shape:
            report = cancellation_pairs(d, SkewShape.parse(args.shape))
            write_text(strap_dot(report), f"{args.dot.rsplit('.', 1)[0]}_{index}.dot")

    save_debug_artifact("seed_reports", [r.to_json() for r in reports], kind="seed_reports")
    write_json({"command": "solve-bae", "system": sys_.to_json(), "solutions": records,
                "seeds": [r.to_json() for r in reports], "passed": passed}, args.out)
    return EXIT_OK if passed else EXIT_FAILED


def cmd_particle_hole(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    if not args.input:
        raise UsageError("particle-hole needs --input with Bethe data or solve-bae output")
    data = load_input(args.input)
    if "solutions" in data:
        solutions = data["solutions"]
        if not 0 <= args.solution < len(solutions):
            raise UsageError(f"solution index {args.solution} outside 0..{len(solutions) - 1}")
        system = data["system"]
        entry = solutions[args.solution]
        roots = entry.get("solution", entry)["roots"]
        d = BetheData.from_json({"grading": system["grading"], "roots": roots,
                                 "inhomogeneities": system.get("inhomogeneities", []), "backend": FLOAT})
    else:
        d = _bethe_data(data, FLOAT)
    path = [int(b) for b in args.path.split(",") if b.strip()] if args.path else []
    result = grading_path_transform(d, None, path, config["tolerances"]["dedup"])
    for step in result.steps:
        console.status(f"b={step.b}: {step.old_grading.label()} -> {step.new_grading.label()}, "
                       f"{step.n_dual} dual roots, defect {step.verification['max_defect']:.2e}",
                       step.verification["passed"])
    write_json({"command": "particle-hole", "path": path, **result.to_json()}, args.out)
    return EXIT_OK if result.passed else EXIT_FAILED


def cmd_validate_config(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    inputs = [Path(p) for p in (args.input or [])]
    return run_validation(Path(args.config or "config.yml"), inputs, strict=args.strict)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_algebra(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--r", type=int, default=None, help="sl(r+1|s+1): r >= 0")
    parser.add_argument("--s", type=int, default=None, help="sl(r+1|s+1): s >= -1")
    parser.add_argument("--grading", default=None, help="signs such as '+-+' or an index into the gradings of (r, s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superbethe",
        description="Analytic Bethe ansatz checks for sl(r+1|s+1) in any grading",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Exit codes:
  0: success, every certificate passed
  1: a certificate or check failed
  2: usage or input error

Examples:
  python main.py gradings --r 1 --s 1 --dot gradings.dot
  python main.py verify jt --grading '+-+' --shape 2,1
  python main.py solve-bae --input templates/sl12_system.yml
  python main.py particle-hole --input solutions.json --path 1,2
        """,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="run configuration (default: config.yml)")
    common.add_argument("--seed", type=int, default=None, help="seed for every random choice")
    common.add_argument("--tol", type=float, default=None, help="override every tolerance")
    common.add_argument("--backend", choices=[EXACT, FLOAT], default=None)
    common.add_argument("--out", default=None, help="write JSON here instead of stdout")
    common.add_argument("--quiet", action="store_true", help="suppress progress lines")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gradings", parents=[common], help="list gradings with their Dynkin diagrams")
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--dot", default=None, help="write the odd-reflection graph as DOT")
    p.set_defaults(handler=cmd_gradings)

    p = sub.add_parser("dynkin", parents=[common], help="Dynkin diagram of one grading")
    _add_algebra(p)
    p.add_argument("--dot", default=None)
    p.add_argument("--png", default=None, help="render the diagram with Pillow")
    p.set_defaults(handler=cmd_dynkin)

    p = sub.add_parser("tableaux", parents=[common], help="admissible tableaux of a skew shape")
    _add_algebra(p)
    p.add_argument("--shape", default=None, help="'mu' or 'mu/lambda', e.g. '3,2/1'")
    p.add_argument("--max-cells", type=int, default=24)
    p.set_defaults(handler=cmd_tableaux)

    p = sub.add_parser("transfer", parents=[common], help="tableau sum as a canonical rational function")
    p.add_argument("--shape", default=None)
    p.add_argument("--input", default=None, help="Bethe data file or '-'")
    p.add_argument("--max-cells", type=int, default=24)
    p.set_defaults(handler=cmd_transfer)

    p = sub.add_parser("verify", parents=[common], help="certify determinant, series and T-system identities")
    p.add_argument("kind", choices=VERIFY_KINDS)
    _add_algebra(p)
    p.add_argument("--shape", default=None, help="single shape instead of all shapes up to --max-side")
    p.add_argument("--max-side", type=int, default=None)
    p.add_argument("--method", choices=list(METHODS), default=None)
    p.add_argument("--input", default=None, help="exact Bethe data instead of random roots")
    p.add_argument("--mutate-sign", type=int, default=None, metavar="K",
                   help="negate the K-th tableau term (the certificates must then fail)")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("solve-bae", parents=[common], help="solve Bethe equations and check pole-freeness")
    p.add_argument("--input", default=None, help="Bethe system file or '-'")
    p.add_argument("--pole-columns", type=int, default=2, help="check T^a for a = 1..N")
    p.add_argument("--shape", default=None, help="shape of the Bethe-strap graph written with --dot")
    p.add_argument("--dot", default=None)
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("particle-hole", parents=[common], help="particle-hole transforms along a path of odd roots")
    p.add_argument("--input", default=None, help="Bethe data or solve-bae output")
    p.add_argument("--solution", type=int, default=0, help="index into solve-bae solutions")
    p.add_argument("--path", default="", help="comma-separated colors, e.g. '1,2'")
    p.set_defaults(handler=cmd_particle_hole)

    p = sub.add_parser("validate-config", help="validate config.yml and input files")
    p.add_argument("--config", default=None)
    p.add_argument("--input", action="append", default=None, help="input file to validate (repeatable)")
    p.add_argument("--strict", action="store_true", help="treat warnings as errors")
    p.set_defaults(handler=cmd_validate_config)
    return parser


def _apply_overrides(args: argparse.Namespace, config: Dict[str, Any]) -> Dict[str, Any]:
    if getattr(args, "seed", None) is not None:
        config["seed"] = args.seed
    if getattr(args, "tol", None) is not None:
        if args.tol <= 0:
            raise UsageError("--tol must be positive")
        config["tolerances"] = {name: args.tol for name in config["tolerances"]}
    return config


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    console.set_quiet(getattr(args, "quiet", False))
    try:
        if args.command == "validate-config":
            return args.handler(args, {})
        config = _apply_overrides(args, load_config(Path(args.config) if args.config else None))
        return args.handler(args, config)
    except (UsageError, GradingError, TableauError, GridBoundsError, RootCapError,
            DualityError, PoleError, ValueError) as e:
        console.error(str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands:
  expand  print the free-model Magnus or Fer expansion per degree
  verify  run named exact-verification suites (exit 1 on any hard failure)
  solve   integrate a matrix ODE from a JSON coefficient file, emit CSV
  trees   list the planar-binary-tree basis of a given degree

Exit codes: 0 success, 1 verification failure, 2 usage or input errors.
All output is deterministic given the flags and the seed; DENDRIMAG_SEED
overrides the built-in default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .instances import DEFAULT_SEED
from .lincomb import LinComb
from .magnus_fer import fer, magnus
from .ode import (
    DegenerateFit,
    FloatMatrixPoly,
    convergence_rows,
    integrate,
    METHODS,
    reference_solution,
    rows_to_csv,
)
from .pbt import ascii_render, trees_of_degree
from .prelie_expr import eval_planar, eval_rooted, formal_ops
from .suites import SUITES, run_suite

__all__ = ["main", "build_parser"]

USAGE_ERROR = 2
VERIFY_FAILURE = 1


def _default_seed() -> int:
    env = os.environ.get("DENDRIMAG_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise SystemExit(f"DENDRIMAG_SEED must be an integer, got {env!r}") from exc
    return DEFAULT_SEED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dendrimag",
        description="Exact Magnus/Fer expansions in dendriform algebras, "
        "Rota-Baxter identity suites, and a float Magnus/Fer ODE integrator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="print the free-model expansion per degree")
    p.add_argument("kind", choices=("magnus", "fer"))
    p.add_argument("--order", type=int, default=4, help="highest degree, 1..8")
    p.add_argument("--basis", choices=("prelie", "rooted", "planar"), default="prelie")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("verify", help="run exact verification suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--order", type=int, default=5, help="truncation order for the suites")
    p.add_argument("--seed", type=int, default=None, help="sample seed (default: fixed constant)")

    p = sub.add_parser("solve", help="integrate x' = A(t) x and emit a convergence CSV")
    p.add_argument("--matrix", required=True, help="JSON file with n, degree, coeffs")
    p.add_argument("--t-final", type=float, default=1.0, dest="t_final")
    p.add_argument("--steps", default="8,16,32,64,128", help="comma-separated step counts")
    p.add_argument("--method", choices=sorted(METHODS), default="magnus4")
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")

    p = sub.add_parser("trees", help="list the planar binary trees of one degree")
    p.add_argument("--order", type=int, required=True, help="tree degree, 0..8")
    p.add_argument("--render", choices=("strings", "ascii"), default="strings")
    return parser


def _combo_str(c: LinComb) -> str:
    return str(c)


def _expansion_components(kind: str, order: int, basis: str) -> list[tuple[str, dict[int, LinComb]]]:
    ops = formal_ops()
    convert = {"prelie": lambda c: c, "rooted": eval_rooted, "planar": eval_planar}[basis]
    blocks: list[tuple[str, dict[int, LinComb]]] = []
    if kind == "magnus":
        series = magnus(ops, ops.generator(), order)
        blocks.append(("magnus", {n: convert(series.coeff(n)) for n in range(1, order + 1)}))
    else:
        for idx, factor in enumerate(fer(ops, ops.generator(), order)):
            comps = {
                n: convert(factor.coeff(n))
                for n in range(1, order + 1)
                if not factor.coeff(n).is_zero()
            }
            blocks.append((f"U_{idx}", comps))
    return blocks


def cmd_expand(args) -> int:
    if not 1 <= args.order <= 8:
        print(f"expand: --order must be in 1..8, got {args.order}", file=sys.stderr)
        return USAGE_ERROR
    blocks = _expansion_components(args.kind, args.order, args.basis)
    if args.format == "json":
        payload = {
            "kind": args.kind,
            "order": args.order,
            "basis": args.basis,
            "blocks": [
                {"name": name, "components": {str(n): c.to_json() for n, c in comps.items()}}
                for name, comps in blocks
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0
    for name, comps in blocks:
        print(f"{name} (basis: {args.basis}, through degree {args.order})")
        if not comps:
            print("  (zero through this order)")
        for n in sorted(comps):
            print(f"  deg {n}: {_combo_str(comps[n])}")
    return 0


def cmd_verify(args) -> int:
    if args.order < 1:
        print(f"verify: --order must be >= 1, got {args.order}", file=sys.stderr)
        return USAGE_ERROR
    seed = args.seed if args.seed is not None else _default_seed()
    reports = run_suite(args.suite, args.order, seed)
    hard = informational = failures = 0
    for rep in reports:
        print(rep.summary())
        for check in rep.checks:
            if check.informational:
                informational += 1
            else:
                hard += 1
                if not check.ok:
                    failures += 1
    print(
        f"suite '{args.suite}' at order {args.order}, seed {seed}: "
        f"{hard - failures}/{hard} hard checks passed, {informational} informational"
    )
    return 0 if failures == 0 else VERIFY_FAILURE


def _load_matrix_poly(path: str) -> FloatMatrixPoly:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read matrix file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"matrix file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValueError("matrix file: top level must be an object")
    for field in ("n", "degree", "coeffs"):
        if field not in data:
            raise ValueError(f"matrix file: missing field '{field}'")
    n, degree, coeffs = data["n"], data["degree"], data["coeffs"]
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"matrix file: field 'n' must be a positive integer, got {n!r}")
    if not isinstance(degree, int) or degree < 0:
        raise ValueError(f"matrix file: field 'degree' must be a nonnegative integer, got {degree!r}")
    if not isinstance(coeffs, list) or len(coeffs) != degree + 1:
        raise ValueError(
            f"matrix file: field 'coeffs' must list degree+1 = {degree + 1} matrices"
        )
    mats = []
    for j, flat in enumerate(coeffs):
        if not isinstance(flat, list) or len(flat) != n * n:
            raise ValueError(
                f"matrix file: coeffs[{j}] must be a flat row-major list of {n * n} numbers"
            )
        try:
            vals = [float(x) for x in flat]
        except (TypeError, ValueError) as exc:
            raise ValueError(f"matrix file: coeffs[{j}] contains a non-numeric entry") from exc
        mats.append([vals[i * n : (i + 1) * n] for i in range(n)])
    import numpy as np

    return FloatMatrixPoly([np.array(m) for m in mats])


def cmd_solve(args) -> int:
    try:
        a = _load_matrix_poly(args.matrix)
    except ValueError as exc:
        print(f"solve: {exc}", file=sys.stderr)
        return USAGE_ERROR
    try:
        counts = sorted({int(s) for s in args.steps.split(",") if s.strip()})
        if not counts or any(c < 1 for c in counts):
            raise ValueError
    except ValueError:
        print(f"solve: --steps must be positive integers, got {args.steps!r}", file=sys.stderr)
        return USAGE_ERROR
    if args.t_final <= 0:
        print(f"solve: --t-final must be positive, got {args.t_final}", file=sys.stderr)
        return USAGE_ERROR

    reference = reference_solution(a, args.t_final, counts[-1])
    rows = convergence_rows(a, args.t_final, args.method, counts, reference)
    csv_text = rows_to_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)

    final = integrate(a, args.t_final, counts[-1], args.method).final
    slope = None
    if len(counts) >= 4:
        errors = [r[2] for r in rows]
        if all(e > 1e-13 for e in errors):
            import numpy as np

            hs = [r[1] for r in rows]
            slope = float(np.polyfit(np.log(hs), np.log(errors), 1)[0])
    summary = {
        "method": args.method,
        "t_final": args.t_final,
        "steps": counts[-1],
        "final": [[float(x) for x in row] for row in final],
        "slope": slope,
    }
    print(json.dumps(summary, sort_keys=True))
    return 0


def cmd_trees(args) -> int:
    if not 0 <= args.order <= 8:
        print(f"trees: --order must be in 0..8, got {args.order}", file=sys.stderr)
        return USAGE_ERROR
    basis = trees_of_degree(args.order)
    print(f"{len(basis)} planar binary trees of degree {args.order}")
    for t in sorted(basis, key=str):
        print(str(t))
        if args.render == "ascii":
            print(ascii_render(t))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad flags, 0 on --help
        return int(exc.code or 0)
    handlers = {
        "expand": cmd_expand,
        "verify": cmd_verify,
        "solve": cmd_solve,
        "trees": cmd_trees,
    }
    try:
        return handlers[args.command](args)
    except DegenerateFit as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())

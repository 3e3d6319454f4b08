"""Command-line surface.

Subcommands:
    algebra show PATH
    cong PATH [--lattice | --factor-pairs | --compactness SPEC]
    freealg dump CTX [--rank N]
    positivize CTX FORMULA [--all-witnesses]
    dfc verify CTX FORMULA
    central list CTX [--algebra PATH]
    correspondence CTX FORMULA [--algebra PATH]
    pipeline CTX FORMULA

Exit codes: 0 ok, 2 validation error, 3 resource bound exceeded,
4 no witness, 5 first-coordinate verification failed.  Machine output
(--format machine) is a single JSON line with sorted keys and no timestamps,
so identical invocations are byte-identical.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import fileio
from .congruences import (
    all_congruences,
    compactness_report,
    congruence_from_partition,
    factor_pairs,
    partition_text,
    principal_congruence,
)
from .core import FiniteAlgebra
from .dfc import central_elements, correspondence_check, verify_dfc
from .errors import (
    FactorLabError,
    NoWitnessError,
    ResourceBoundError,
    ValidationError,
)
from .freealg import DEFAULT_BUDGET, free_algebra
from .terms import term_text
from .positivize import enumerate_witnesses, positivize
from .variety import VarietyContext, verify_zero_one_condition

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RESOURCE = 3
EXIT_NO_WITNESS = 4
EXIT_DFC_FAIL = 5


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    fmt: str
    pool_depth: int
    max_size: int
    budget: int

    def __post_init__(self):
        if self.pool_depth < 0 or self.max_size < 1 or self.budget < 1:
            raise ValidationError("caps must be positive")


def _resolve_budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("FACTORLAB_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValidationError(
                f"FACTORLAB_BUDGET must be an integer, got {env!r}"
            ) from None
    return DEFAULT_BUDGET


def _config(args) -> RunConfig:
    return RunConfig(
        subcommand=args.command,
        fmt=args.format,
        pool_depth=args.pool_depth,
        max_size=args.max_size,
        budget=_resolve_budget(args),
    )


def _emit(cfg: RunConfig, machine: dict, text_lines: list[str]) -> None:
    if cfg.fmt == "machine":
        print(json.dumps(machine, sort_keys=True, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def _load_populated_context(path: str, cfg: RunConfig) -> VarietyContext:
    ctx = fileio.load_context(path)
    return ctx.populated(max_size=cfg.max_size, depth=cfg.pool_depth)


# -- subcommands -----------------------------------------------------------------


def cmd_algebra_show(args) -> int:
    cfg = _config(args)
    algebra = fileio.load_algebra(args.path)
    lines = [
        f"{algebra.name}: size {algebra.size}, "
        f"ops {','.join(s for s, _ in algebra.signature.symbols)}"
    ]
    for (sym, arity), table in zip(algebra.signature.symbols, algebra.tables):
        if arity == 0:
            lines.append(f"  {sym} = {table[0]}")
        elif arity == 1:
            lines.append(f"  {sym}: {list(table)}")
        else:
            n = algebra.size
            shown = min(n, 8)
            lines.append(f"  {sym} (first {shown} rows):")
            for r in range(shown):
                row = table[r * n ** (arity - 1): (r + 1) * n ** (arity - 1)]
                lines.append(f"    {r}: {list(row)}")
    _emit(cfg, {"command": "algebra-show", "status": "ok",
                "algebra": fileio.algebra_to_dict(algebra)}, lines)
    return EXIT_OK


def _parse_theta_spec(algebra: FiniteAlgebra, spec: str):
    if "|" in spec:
        classes = [
            [int(x) for x in part.split(",") if x != ""]
            for part in spec.strip("{}").split("|")
        ]
        return congruence_from_partition(algebra, classes)
    parts = [p for p in spec.split(",") if p != ""]
    if len(parts) != 2:
        raise ValidationError(
            f"congruence spec must be 'a,b' or a partition '0,3|1,4|2,5', "
            f"got {spec!r}"
        )
    return principal_congruence(algebra, int(parts[0]), int(parts[1]))


def cmd_cong(args) -> int:
    cfg = _config(args)
    algebra = fileio.load_algebra(args.path)
    bound = cfg.max_size
    if args.compactness is not None:
        theta = _parse_theta_spec(algebra, args.compactness)
        rep = compactness_report(algebra, theta)
        lines = [
            f"{algebra.name}: theta = {partition_text(theta)}",
            f"generated by {rep.m} principal congruence(s): "
            f"{list(rep.generating_pairs)}"
            + ("" if rep.exhaustive else " (greedy upper bound)"),
        ]
        machine = {
            "command": "cong-compactness", "status": "ok",
            "algebra": algebra.name, "theta": partition_text(theta),
            "m": rep.m, "pairs": [list(p) for p in rep.generating_pairs],
            "exhaustive": rep.exhaustive,
        }
        _emit(cfg, machine, lines)
        return EXIT_OK
    if args.factor_pairs:
        pairs = factor_pairs(algebra, bound)
        lines = [f"{algebra.name}: {len(pairs)} ordered factor pair(s)"]
        rows = []
        for p in pairs:
            gen = compactness_report(algebra, p.theta)
            sizes = f"{p.theta.n_classes}x{p.theta_c.n_classes}"
            lines.append(
                f"  theta={partition_text(p.theta)} "
                f"theta_c={partition_text(p.theta_c)} sizes={sizes} "
                f"generators={list(gen.generating_pairs)}"
            )
            rows.append({
                "theta": partition_text(p.theta),
                "theta_c": partition_text(p.theta_c),
                "sizes": sizes,
                "generators": [list(g) for g in gen.generating_pairs],
            })
        _emit(cfg, {"command": "cong-factor-pairs", "status": "ok",
                    "algebra": algebra.name, "count": len(pairs),
                    "pairs": rows}, lines)
        return EXIT_OK
    cons = all_congruences(algebra, bound)
    lines = [f"{algebra.name}: {len(cons)} congruence(s)"]
    lines += [f"  {partition_text(c)} ({c.n_classes} classes)" for c in cons]
    _emit(cfg, {"command": "cong-lattice", "status": "ok",
                "algebra": algebra.name, "count": len(cons),
                "congruences": [partition_text(c) for c in cons]}, lines)
    return EXIT_OK


def cmd_freealg_dump(args) -> int:
    cfg = _config(args)
    ctx = fileio.load_context(args.ctx)
    fa = free_algebra(ctx.generator, args.rank, budget=cfg.budget)
    lines = [
        f"free algebra of rank {fa.rank} over {fa.base.name}: "
        f"{fa.size} element(s)",
        f"generators: "
        + ", ".join(f"{v} -> element {g}" for v, g in zip(fa.var_names, fa.generators)),
    ]
    shown = min(fa.size, 16)
    lines.append(f"first {shown} element terms:")
    for e in range(shown):
        lines.append(f"  {e}: {term_text(fa.witnesses[e])}")
    machine = {
        "command": "freealg-dump", "status": "ok",
        "base": fa.base.name, "rank": fa.rank, "size": fa.size,
        "generators": list(fa.generators),
        "terms": [term_text(t) for t in fa.witnesses],
    }
    _emit(cfg, machine, lines)
    return EXIT_OK


def _positivize_payload(result) -> dict:
    return {
        "k": result.k,
        "phi_prime": result.phi_prime.text(),
        "witnesses": [
            {"left": term_text(u), "right": term_text(v)}
            for u, v in result.witnesses
        ],
        "substitution_check": "ok",
        "warnings": list(result.warnings),
    }


def cmd_positivize(args) -> int:
    cfg = _config(args)
    ctx = _load_populated_context(args.ctx, cfg)
    phi = fileio.load_formula(args.formula, ctx.signature, ctx.l)
    result = positivize(phi, ctx, budget=cfg.budget)
    lam = phi.positive_indices(result.k)
    lines = [
        f"chosen disjunct k = {result.k}",
        f"positive literal indices: {list(lam)}",
        f"positive formula: {result.phi_prime.text()}",
    ]
    for (u, v), w in zip(result.witnesses, phi.bound_vars):
        lines.append(f"witness {w}: ({term_text(u)}, {term_text(v)})")
    lines.append("substitution re-verification: ok")
    for warning in result.warnings:
        lines.append(f"warning: {warning}")
    machine = {"command": "positivize", "status": "ok",
               "lambda_k": list(lam), **_positivize_payload(result)}
    if args.all_witnesses:
        allw = enumerate_witnesses(phi, ctx, budget=cfg.budget)
        lines.append(f"all valid (disjunct, witness) pairs: {len(allw)}")
        for k, w in allw:
            lines.append(f"  k={k} w={list(w)}")
        machine["all_witnesses"] = [
            {"k": k, "w": list(w)} for k, w in allw
        ]
    _emit(cfg, machine, lines)
    return EXIT_OK


def _dfc_payload(report) -> dict:
    return {
        "status": report.status,
        "formula": report.formula_text,
        "pairs_tested": [list(p) for p in report.pairs_tested],
        "skipped": [list(p) for p in report.skipped],
        "counterexample_count": len(report.counterexamples),
        "first_counterexample": (
            list(report.counterexamples[0].as_tuple())
            if report.counterexamples else None
        ),
    }


def cmd_dfc_verify(args) -> int:
    cfg = _config(args)
    ctx = _load_populated_context(args.ctx, cfg)
    phi = fileio.load_formula(args.formula, ctx.signature, ctx.l)
    report = verify_dfc(phi, ctx)
    lines = [
        f"formula: {report.formula_text}",
        f"pool pairs tested: {len(report.pairs_tested)}"
        + (f" (skipped over cap: {len(report.skipped)})" if report.skipped else ""),
        f"status: {report.status}",
    ]
    if report.counterexamples:
        first = report.counterexamples[0]
        lines.append(
            f"first counterexample: A={first.left} B={first.right} "
            f"a={first.a} b={first.b} c={first.c} d={first.d} "
            f"direction {first.direction}"
        )
        for ce in report.counterexamples[1:6]:
            lines.append(f"  also: {ce.as_tuple()}")
    machine = {"command": "dfc-verify", **_dfc_payload(report)}
    _emit(cfg, machine, lines)
    return EXIT_OK if report.ok else EXIT_DFC_FAIL


def cmd_central_list(args) -> int:
    cfg = _config(args)
    ctx = fileio.load_context(args.ctx)
    algebra = fileio.load_algebra(args.algebra, l=ctx.l) if args.algebra else ctx.generator
    ces = central_elements(algebra, ctx, bound=max(cfg.max_size, algebra.size))
    lines = [f"{algebra.name}: {len(ces)} central element(s)"]
    rows = []
    for ce in ces:
        e = ce.e[0] if ctx.l == 1 else list(ce.e)
        lines.append(
            f"  e={e} theta={partition_text(ce.pair.theta)} "
            f"theta_c={partition_text(ce.pair.theta_c)} "
            f"factors {ce.decomposition.left.size}x{ce.decomposition.right.size}"
        )
        rows.append({
            "e": list(ce.e),
            "theta": partition_text(ce.pair.theta),
            "theta_c": partition_text(ce.pair.theta_c),
            "factor_sizes": [ce.decomposition.left.size,
                             ce.decomposition.right.size],
        })
    _emit(cfg, {"command": "central-list", "status": "ok",
                "algebra": algebra.name, "count": len(ces),
                "central": rows}, lines)
    return EXIT_OK


def _correspondence_payload(report) -> dict:
    return {
        "algebra": report.algebra_name,
        "n_central": report.n_central,
        "n_pairs": report.n_pairs,
        "bijection_ok": report.bijection_ok,
        "elements_ok": all(r.ok for r in report.element_reports),
        "idempotent_check": report.idempotent_check,
        "status": "pass" if report.ok else "fail",
    }


def cmd_correspondence(args) -> int:
    cfg = _config(args)
    ctx = _load_populated_context(args.ctx, cfg)
    phi = fileio.load_formula(args.formula, ctx.signature, ctx.l)
    algebra = fileio.load_algebra(args.algebra, l=ctx.l) if args.algebra else ctx.generator
    report = correspondence_check(
        algebra, phi, ctx, bound=max(cfg.max_size, algebra.size)
    )
    lines = [
        f"{report.algebra_name}: {report.n_central} central element(s) for "
        f"{report.n_pairs} ordered factor pair(s)",
        f"bijection onto zero-side kernels: "
        f"{'ok' if report.bijection_ok else 'FAILED'}",
    ]
    for r in report.element_reports:
        lines.append(
            f"  e={list(r.element)} -> "
            f"{partition_text(r.expected)}: {'ok' if r.ok else 'MISMATCH'}"
        )
    if report.idempotent_check is not None:
        lines.append(f"ring idempotent cross-check: {report.idempotent_check}")
    lines.append(f"status: {'pass' if report.ok else 'fail'}")
    _emit(cfg, {"command": "correspondence",
                **_correspondence_payload(report)}, lines)
    return EXIT_OK if report.ok else EXIT_DFC_FAIL


def cmd_pipeline(args) -> int:
    cfg = _config(args)
    ctx = _load_populated_context(args.ctx, cfg)
    phi = fileio.load_formula(args.formula, ctx.signature, ctx.l)
    stages = []
    lines = []

    zero_one = verify_zero_one_condition(ctx)
    report_in = verify_dfc(phi, ctx)
    stages.append({"name": "verify-input", "status": report_in.status,
                   **_dfc_payload(report_in)})
    lines.append(f"stage 1 verify-input: {report_in.status}")
    if not report_in.ok:
        _emit(cfg, {"command": "pipeline", "status": "fail",
                    "failed_stage": "verify-input", "stages": stages,
                    "zero_one_ok": zero_one.ok}, lines)
        return EXIT_DFC_FAIL

    result = positivize(phi, ctx, budget=cfg.budget)
    stages.append({"name": "positivize", "status": "ok",
                   **_positivize_payload(result)})
    lines.append(
        f"stage 2 positivize: ok (k={result.k}, "
        f"phi' = {result.phi_prime.text()})"
    )

    report_out = verify_dfc(result.phi_prime, ctx)
    stages.append({"name": "verify-positive", "status": report_out.status,
                   **_dfc_payload(report_out)})
    lines.append(f"stage 3 verify-positive: {report_out.status}")
    if not report_out.ok:
        _emit(cfg, {"command": "pipeline", "status": "fail",
                    "failed_stage": "verify-positive", "stages": stages,
                    "zero_one_ok": zero_one.ok}, lines)
        return EXIT_DFC_FAIL

    member_reports = []
    all_ok = True
    for entry in ctx.pool:
        rep = correspondence_check(
            entry.algebra, result.phi_prime, ctx,
            bound=max(cfg.max_size, entry.algebra.size),
        )
        member_reports.append(_correspondence_payload(rep))
        all_ok = all_ok and rep.ok
        lines.append(
            f"stage 4 correspondence [{entry.algebra.name}]: "
            f"{'pass' if rep.ok else 'fail'}"
        )
    stages.append({"name": "correspondence",
                   "status": "pass" if all_ok else "fail",
                   "members": member_reports})
    status = "pass" if all_ok else "fail"
    lines.append(f"pipeline: {status}")
    _emit(cfg, {"command": "pipeline", "status": status,
                "failed_stage": None if all_ok else "correspondence",
                "stages": stages, "zero_one_ok": zero_one.ok}, lines)
    return EXIT_OK if all_ok else EXIT_DFC_FAIL


# -- argument parsing --------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--pool-depth", type=int, default=2, metavar="N")
    common.add_argument("--max-size", type=int, default=8, metavar="N")
    common.add_argument("--budget", type=int, default=None, metavar="N",
                        help="free-algebra closure budget "
                             "(default from FACTORLAB_BUDGET or 100000)")

    parser = argparse.ArgumentParser(
        prog="factorlab",
        description="factor congruences, central elements and "
                    "first-coordinate definability in finite algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_algebra = sub.add_parser("algebra", help="algebra file operations")
    algebra_sub = p_algebra.add_subparsers(dest="algebra_command", required=True)
    p_show = algebra_sub.add_parser("show", parents=[common])
    p_show.add_argument("path")
    p_show.set_defaults(func=cmd_algebra_show, command="algebra show")

    p_cong = sub.add_parser("cong", parents=[common],
                            help="congruence lattice and factor pairs")
    p_cong.add_argument("path")
    group = p_cong.add_mutually_exclusive_group()
    group.add_argument("--lattice", action="store_true")
    group.add_argument("--factor-pairs", action="store_true")
    group.add_argument("--compactness", metavar="SPEC",
                       help="'a,b' for a principal congruence or a "
                            "partition like '0,3|1,4|2,5'")
    p_cong.set_defaults(func=cmd_cong, command="cong")

    p_free = sub.add_parser("freealg", help="free algebra operations")
    free_sub = p_free.add_subparsers(dest="freealg_command", required=True)
    p_dump = free_sub.add_parser("dump", parents=[common])
    p_dump.add_argument("ctx")
    p_dump.add_argument("--rank", type=int, default=1)
    p_dump.set_defaults(func=cmd_freealg_dump, command="freealg dump")

    p_pos = sub.add_parser("positivize", parents=[common],
                           help="replace a verified formula by a positive one")
    p_pos.add_argument("ctx")
    p_pos.add_argument("formula")
    p_pos.add_argument("--all-witnesses", action="store_true")
    p_pos.set_defaults(func=cmd_positivize, command="positivize")

    p_dfc = sub.add_parser("dfc", help="first-coordinate definability checks")
    dfc_sub = p_dfc.add_subparsers(dest="dfc_command", required=True)
    p_verify = dfc_sub.add_parser("verify", parents=[common])
    p_verify.add_argument("ctx")
    p_verify.add_argument("formula")
    p_verify.set_defaults(func=cmd_dfc_verify, command="dfc verify")

    p_central = sub.add_parser("central", help="central element operations")
    central_sub = p_central.add_subparsers(dest="central_command", required=True)
    p_list = central_sub.add_parser("list", parents=[common])
    p_list.add_argument("ctx")
    p_list.add_argument("--algebra", default=None)
    p_list.set_defaults(func=cmd_central_list, command="central list")

    p_corr = sub.add_parser("correspondence", parents=[common],
                            help="central elements vs factor congruences")
    p_corr.add_argument("ctx")
    p_corr.add_argument("formula")
    p_corr.add_argument("--algebra", default=None)
    p_corr.set_defaults(func=cmd_correspondence, command="correspondence")

    p_pipe = sub.add_parser("pipeline", parents=[common],
                            help="verify, positivize, re-verify, correspondence")
    p_pipe.add_argument("ctx")
    p_pipe.add_argument("formula")
    p_pipe.set_defaults(func=cmd_pipeline, command="pipeline")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoWitnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.diagnostics:
            print(f"distinguished assignment: "
                  f"{json.dumps(exc.diagnostics, sort_keys=True)}",
                  file=sys.stderr)
        return EXIT_NO_WITNESS
    except ResourceBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FactorLabError as exc:  # internal check failures and the like
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

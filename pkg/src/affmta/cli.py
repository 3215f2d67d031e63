"""Command-line front end.

Exit codes: 0 all verified (or inconclusive), 2 flagged cases present,
3 failed cases present, 1 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import mta, replay as replay_mod
from .l10 import reduce_paper
from .l10_exact import audit_relations, exact_ideal
from .modes import commutator, format_expr, parse_expr, pbw_normal
from .pbw import parse_pbw, zhu_closure, zhu_project
from .report import FAILED, FLAGGED, VERIFIED, Case, Step, VerifyReport, exit_code, worst
from .scalars import K, PoleError
from .vacuum_unit import nonexistence_certificate


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _level(text: str):
    if text.strip() == "k":
        return K
    try:
        return Fraction(text)
    except ValueError as exc:
        raise UsageError(f"--level: expected a rational or 'k', got {text!r}") from exc


def _regime(text: str) -> str:
    table = {"literal": mta.LITERAL, "exact": mta.EXACT}
    if text.lower() not in table:
        raise UsageError(f"--regime: expected literal or exact, got {text!r}")
    return table[text.lower()]


def _degrees(text: str) -> list:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"--d: expected N, N..M or N,M,..., got {text!r}") from exc
    if not out or min(out) < 1:
        raise UsageError("--d: degrees must be >= 1")
    return out


def _bindings(items) -> dict | None:
    if not items:
        return None
    env = {}
    for item in items:
        for part in item.split(","):
            name, sep, val = part.partition("=")
            if not sep:
                raise UsageError(f"--bind: expected name=value, got {part!r}")
            try:
                env[name.strip()] = int(val)
            except ValueError as exc:
                raise UsageError(f"--bind: {name.strip()} must be an integer") from exc
    return env


def format_unit(x: mta.MtaElt) -> str:
    parts = []
    for left, z, right in x.triples:
        coeffs = z.as_dict()
        if set(coeffs) == {"1"}:
            parts.append(f"{coeffs['1']} {format_expr(left)} (x) 1 (x) {format_expr(right)}")
        else:
            parts.append(f"{format_expr(left)} (x) ({z}) (x) {format_expr(right)}")
    return " + ".join(parts) or "0"


# --------------------------------------------------------------------------
# commands returning (text, payload, status)


def cmd_reduce(args):
    regime = _regime(args.regime)
    x = parse_expr(args.expr, 1)
    if regime == mta.LITERAL:
        out = str(reduce_paper(x))
    else:
        out = format_expr(exact_ideal(args.window).reduce(pbw_normal(x, 1)))
    return out, {"input": args.expr, "regime": regime, "result": out}, VERIFIED


def cmd_bracket(args):
    level = _level(args.level)
    a, b = parse_expr(args.a, level), parse_expr(args.b, level)
    out = format_expr(pbw_normal(commutator(a, b, level), level))
    return out, {"a": args.a, "b": args.b, "level": args.level, "result": out}, VERIFIED


def cmd_zhu(args):
    if args.expr is None:
        basis = zhu_closure()
        text = f"dimension {len(basis)}: {', '.join(basis)}"
        return text, {"basis": basis, "dimension": len(basis)}, VERIFIED
    z = zhu_project(parse_pbw(args.expr), 1)
    return str(z), {"input": args.expr, "result": str(z)}, VERIFIED


def cmd_unit(args):
    units = {d: mta.build_strong_unit(d, args.pairs) for d in _degrees(args.d)}
    text = "\n".join(f"I_{d} = {format_unit(u)}" if len(units) > 1 else format_unit(u) for d, u in units.items())
    return text, {str(d): format_unit(u) for d, u in units.items()}, VERIFIED


def _verify_task(task):
    d, regime, pairs = task
    return mta.verify_strong_unit(d, regime, pairs)


def _run(tasks, fn, jobs):
    if jobs > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, tasks))
    return [fn(t) for t in tasks]


def cmd_verify_unit(args):
    window_needed = 2 * max(_degrees(args.d))
    if args.window is not None and args.window < window_needed:
        raise UsageError(f"--window must be >= 2d = {window_needed}")
    pair_modes = mta.PAIR_MODES if args.pairs == "both" else (args.pairs,)
    tasks = [(d, _regime(args.regime), p) for d in _degrees(args.d) for p in pair_modes]
    return _reports(_run(tasks, _verify_task, args.jobs))


def cmd_verify_nonexistence(args):
    level = _level(args.level)
    try:
        report = nonexistence_certificate(level, samples=args.samples, seed=args.seed)
    except PoleError as exc:
        report = VerifyReport("no-strong-unit-degree-1", "Exact")
        report.add(Case(f"level={args.level}")).add(Step("certificate", FAILED, note=f"pole: {exc}"))
    return _reports([report])


def cmd_audit(args):
    rep = audit_relations(args.window, jobs=args.jobs)
    status = FLAGGED if rep.entries else VERIFIED
    text = f"{len(rep.entries)} discrepancies at window {args.window}"
    if args.restrict_replay:
        rep = rep.restrict(replay_mod.rule_tuples_used(args.scripts))
        status = FLAGGED if rep.entries else VERIFIED
        text = f"{len(rep.entries)} discrepancies at window {args.window} on non-degenerate replay tuples"
    lines = [text] + [f"  {d.rule}({', '.join(f'{k}={v}' for k, v in d.indices)}): {d.difference}" for d in rep.entries]
    return "\n".join(lines), json.loads(rep.canonical_json()), status


def cmd_replay(args):
    names = args.names or list(replay_mod.BUILTIN)
    env = _bindings(args.bind)
    if env is not None:
        reports = [replay_mod.replay(replay_mod.load_script(n, args.scripts), env) for n in names]
    else:
        reports = replay_mod.replay_suite(names, args.scripts, jobs=args.jobs)
    return _reports(reports)


def cmd_selftest(args):
    report = VerifyReport("selftest", "mixed")

    def check(name, ok, note=""):
        report.add(Case(name)).add(Step(name, VERIFIED if ok else FAILED, note=note))

    check("zhu closure has dimension 5", len(zhu_closure()) == 5)
    unit = mta.verify_strong_unit(1, mta.LITERAL)
    check("strong unit d=1 literal", unit.status == VERIFIED, unit.summary())
    check("unit idempotent d=1", mta.unit_idempotent(1))
    cert = nonexistence_certificate(K, samples=50)
    check("nonexistence at formal k", cert.status == VERIFIED, cert.summary())
    base = replay_mod.replay(replay_mod.load_script("BASECASE", args.scripts))
    check("replay BASECASE", base.status == VERIFIED, base.summary())
    check("golden scripts", not replay_mod.golden_check(args.scripts))
    return _reports([report])


def _reports(reports):
    text = "\n".join(r.summary() for r in reports)
    payload = [r.to_dict(with_metadata=True) for r in reports]
    return text, payload if len(payload) > 1 else payload[0], worst(r.status for r in reports)


# --------------------------------------------------------------------------


def _common(p, defaults: bool) -> None:
    def d(v):
        return v if defaults else argparse.SUPPRESS

    p.add_argument("--format", choices=("text", "json"), default=d("text"))
    p.add_argument("--output", default=d(None), help="write the result to this path instead of stdout")
    p.add_argument("--jobs", type=int, default=d(os.cpu_count() or 1))
    p.add_argument("--scripts", default=d(None), help="directory holding replay scripts")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="affmta", description="Mode transition algebras of affine sl2 VOAs.")
    _common(p, defaults=True)
    # the same flags are accepted after the subcommand
    common = _Parser(add_help=False)
    _common(common, defaults=False)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    s = sub.add_parser("reduce", help="canonical form in L(1,0)")
    s.add_argument("expr")
    s.add_argument("--regime", default="literal")
    s.add_argument("--window", type=int, default=3)
    s.set_defaults(fn=cmd_reduce)

    s = sub.add_parser("bracket", help="[A, B] in U(sl2^, level), PBW ordered")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--level", default="1")
    s.set_defaults(fn=cmd_bracket)

    s = sub.add_parser("zhu", help="Zhu algebra basis, or the projection of a U(sl2) element")
    s.add_argument("expr", nargs="?")
    s.set_defaults(fn=cmd_zhu)

    s = sub.add_parser("unit", help="print the strong-unit candidate I_d")
    s.add_argument("--d", default="1")
    s.add_argument("--pairs", choices=mta.PAIR_MODES, default="ordered")
    s.set_defaults(fn=cmd_unit)

    s = sub.add_parser("verify-unit", help="check the strong-unit candidate on spanning elements")
    s.add_argument("--d", default="1")
    s.add_argument("--regime", default="literal")
    s.add_argument("--pairs", choices=mta.PAIR_MODES + ("both",), default="ordered")
    s.add_argument("--window", type=int)
    s.set_defaults(fn=cmd_verify_unit)

    s = sub.add_parser("verify-nonexistence", help="certificate that V(k,0) has no strong unit in degree 1")
    s.add_argument("--level", default="k")
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=cmd_verify_nonexistence)

    s = sub.add_parser("audit-relations", help="compare the literal rules with exact arithmetic")
    s.add_argument("--window", type=int, default=5)
    s.add_argument("--restrict-replay", action="store_true", help="keep only tuples cited by the replay scripts")
    s.set_defaults(fn=cmd_audit)

    s = sub.add_parser("replay", help="replay derivation scripts step by step")
    s.add_argument("names", nargs="*", help=f"script names or paths (default: all of {', '.join(replay_mod.BUILTIN)})")
    s.add_argument("--bind", action="append", help="index bindings, e.g. r=2,k=1 (default: the script's own)")
    s.set_defaults(fn=cmd_replay)

    s = sub.add_parser("selftest", help="quick end-to-end check")
    s.set_defaults(fn=cmd_selftest)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        text, payload, status = args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n" if args.format == "json" else text + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return exit_code(status)


if __name__ == "__main__":
    sys.exit(main())

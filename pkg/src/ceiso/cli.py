"""Command-line front end.  Logic lives in the library modules; this file only
parses arguments, dispatches and formats output."""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import harness
from .algebra import (ParseError, parse_presentation, parse_trace, render_presentation,
                      render_trace)
from .benchmarks import eval_shift
from .invariants import (NO_INVARIANT, abelian_invariant, gamma_of_presentation, index_period,
                         uf1_invariant)
from .isochecker import decide_iso, set_size
from .ordinals import OMEGA, OMEGA_OMEGA, code_of, parse_ordinal, rank_of
from .reductions import REGISTRY, build, check_reduction, ConstantTransformer, run

EXIT_PASS, EXIT_DISAGREE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _bound(text: str | None):
    if text is None:
        return OMEGA
    return OMEGA_OMEGA if text.strip() in ("w^w", "ω^ω") else parse_ordinal(text)


# ---------------------------------------------------------------- subcommands

def invariant_text(p, box: int) -> str:
    v = p.variety
    if v.kind in ("cs", "cm") and p.n == 1:
        ip = index_period(p)
        return "index/period: free\n" if ip.is_free else f"index={ip.index} period={ip.period}\n"
    if v.kind == "ag":
        t = abelian_invariant(p)
        return f"rank={t.free_rank} factors={list(t.factors)}\n"
    if v.kind == "uf" and v.arity == 1:
        t = uf1_invariant(p)
        return f"m={t.infinite_components} icode={t.icode}\n"
    if v.kind == "sets":
        return f"size={set_size(p)}\n"
    if v.kind == "cm":
        g = gamma_of_presentation(p, box)
        if g is NO_INVARIANT:
            return "gamma: undefined (free)\n"
        steady = gamma_of_presentation(p, box + 2) == g
        return f"gamma: {g} (box {box}, {'stable' if steady else 'not stable'} at box {box + 2})\n"
    raise UsageError(f"no invariant implemented for {v.name} with {p.n} generators")


def cmd_invariant(args) -> int:
    _emit(invariant_text(parse_presentation(_read(args.file)), args.box), args.out)
    return EXIT_PASS


def cmd_reduce(args) -> int:
    try:
        red = build(args.name, args.n)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    trace = parse_trace(_read(args.trace))
    try:
        out = run(red, trace, args.horizon)
    except ValueError as exc:
        raise UsageError(f"invalid input for {args.name}: {exc}") from None
    _emit(render_trace(out), args.out)
    return EXIT_PASS


def cmd_iso(args) -> int:
    p, q = parse_presentation(_read(args.first)), parse_presentation(_read(args.second))
    if p.variety != q.variety:
        raise UsageError("both presentations must use the same variety")
    v = decide_iso(p, q, args.degree, args.derivation, args.box)
    text = f"{v.kind}\nreason: {v.reason}\n"
    if v.witness is not None:
        text += f"witness: {v.witness}\n"
    _emit(text, args.out)
    return EXIT_PASS


def cmd_ordinal(args) -> int:
    bound = _bound(args.bound)
    if args.decode is not None:
        o = rank_of(args.decode, bound)
    else:
        if not args.expr:
            raise UsageError("give an ordinal expression or --decode CODE")
        o = parse_ordinal(" ".join(args.expr))
    lines = [f"cnf: {o}"]
    if args.bound is not None or args.decode is None:
        lines.append(f"code below {bound}: {code_of(o, bound)}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_PASS


CONFIG_KEYS = {"seed", "horizon", "box", "degree", "derivation", "shift_bound", "pairs",
               "criteria", "reductions", "controls"}


def load_config(text: str, args) -> tuple[harness.SuiteConfig, dict]:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"config is not valid JSON: {exc}") from None
    if not isinstance(raw, dict) or set(raw) - CONFIG_KEYS:
        raise UsageError(f"config keys must be among {sorted(CONFIG_KEYS)}")
    fields = {k: raw[k] for k in ("seed", "horizon", "box", "degree", "derivation", "shift_bound", "pairs")
              if k in raw}
    for flag in ("seed", "horizon", "box", "degree", "derivation", "shift_bound"):
        value = getattr(args, flag, None)
        if value is not None:
            fields[flag] = value
    try:
        cfg = harness.SuiteConfig(**fields)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad config: {exc}") from None
    plan = {"criteria": raw.get("criteria", []), "reductions": raw.get("reductions", []),
            "controls": raw.get("controls", [])}
    unknown = [k for k in plan["criteria"] if k not in harness.CRITERIA]
    unknown += [r for r in plan["reductions"] if r not in harness.reduction_suites(cfg)]
    unknown += [r for r in plan["controls"] if r not in harness.reduction_suites(cfg)]
    if unknown:
        raise UsageError(f"unknown suites in config: {unknown}")
    return cfg, plan


def verify(cfg: harness.SuiteConfig, plan: dict, workers: int = 1) -> tuple[list[str], bool]:
    """Run a plan; returns report lines and overall pass flag."""
    lines, ok = [], True
    for res in harness.run_criteria(plan["criteria"], cfg, workers):
        ok &= res.passed
        lines.append(res.status_line())
        lines += [f"  {ln}" for ln in res.lines]
    for name in plan["reductions"]:
        report, _ = harness.run_reduction_suite(name, cfg)
        ok &= report.disagree == 0
        lines += report.lines()
    for name in plan["controls"]:
        # the named suite's relations with a transformer that ignores its input
        _, src, tgt, make = harness.reduction_suites(cfg)[name]
        pairs = make(random.Random(f"{cfg.seed}:control:{name}"), cfg.count(50))
        report = check_reduction(ConstantTransformer(), src, tgt, pairs, cfg.horizon)
        report.name = f"control {name}"
        ok &= report.disagree == 0
        lines += report.lines()
    lines.append("PASS" if ok else "FAIL")
    return lines, ok


def cmd_verify(args) -> int:
    cfg, plan = load_config(_read(args.config), args)
    lines, ok = verify(cfg, plan, args.workers)
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_PASS if ok else EXIT_DISAGREE


# ---------------------------------------------------------------- generators

def _emin_traces(alpha):
    def gen(rng):
        return {"a.trace": render_trace(harness.emin_trace(rng, [harness.emin_rank(rng, alpha)
                                                                for _ in range(rng.randint(1, 4))], alpha))}
    return gen


def _presentation(make):
    return lambda rng: {"pres": render_presentation(make(rng))}


def _inclusion(kind):
    def gen(rng):
        small, big = harness.inclusion_chain(rng, kind)
        if not small.elements() <= big.elements():
            raise RuntimeError("inclusion chain generator broke the subset guarantee")
        return {"small.trace": render_trace(small), "big.trace": render_trace(big)}
    return gen


def _shift_pair(rng):
    a, b = harness.shift_pair(rng)
    ta, tb = harness.int_trace(rng, a), harness.int_trace(rng, b)
    label = eval_shift(ta, tb, max(ta.last_stage, tb.last_stage, 0)).kind
    return {"a.trace": render_trace(ta), "b.trace": render_trace(tb), "label": label + "\n"}


def generators(n: int) -> dict:
    from .algebra import CM, CS
    from .ordinals import omega_power
    return {
        "emin-omega": _emin_traces(OMEGA),
        "emin-omega-n": _emin_traces(omega_power(1, n)),
        "emin-omega2": _emin_traces(omega_power(2)),
        "cs1": _presentation(lambda r: harness.random_monogenic(r, CS)),
        "cm1": _presentation(lambda r: harness.random_monogenic(r, CM)),
        "csn": _presentation(lambda r: harness.random_cs(r, CS, n)),
        "cmn": _presentation(lambda r: harness.random_cs(r, CM, n)),
        "agn": _presentation(lambda r: harness.random_ag(r, n)),
        "uf1n": _presentation(lambda r: harness.random_uf1(r, n)),
        "inclusion-chain": _inclusion("cs1"),
        "shift-pairs": _shift_pair,
    }


def cmd_gen(args) -> int:
    gens = generators(args.n)
    if args.generator not in gens:
        raise UsageError(f"unknown generator {args.generator!r}; known: {', '.join(sorted(gens))}")
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(f"{args.seed}:{args.generator}")
    for i in range(args.count):
        for suffix, text in gens[args.generator](rng).items():
            (out / f"{args.generator}-{i:03d}.{suffix}").write_text(text)
    return EXIT_PASS


# ---------------------------------------------------------------- parser

def _positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ceiso", description="Invariants, isomorphism checks and "
                                 "reductions for c.e. presentations of algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, *flags):
        p.add_argument("--out", help="write output here instead of stdout")
        if "box" in flags:
            p.add_argument("--box", type=_positive, default=None if "verify" in flags else 8)
        if "iso" in flags:
            p.add_argument("--degree", type=_positive, default=None if "verify" in flags else 3)
            p.add_argument("--derivation", type=_positive, default=None if "verify" in flags else 6)

    p = sub.add_parser("invariant", help="print the class invariant of a presentation file")
    p.add_argument("file")
    common(p, "box")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("reduce", help="run a registered reduction on a trace file")
    p.add_argument("name", help=f"one of: {', '.join(sorted(REGISTRY))}")
    p.add_argument("trace")
    p.add_argument("--horizon", type=_positive, default=64)
    p.add_argument("--n", type=_positive, default=2, help="generator count for parametrized reductions")
    common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("iso", help="isomorphism verdict for two presentation files")
    p.add_argument("first")
    p.add_argument("second")
    common(p, "box", "iso")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("verify", help="run a JSON suite config and write a report")
    p.add_argument("config")
    p.add_argument("--seed", type=int)
    p.add_argument("--horizon", type=_positive)
    p.add_argument("--shift-bound", dest="shift_bound", type=int)
    p.add_argument("--workers", type=_positive, default=1)
    common(p, "box", "iso", "verify")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write seeded random instances")
    p.add_argument("generator")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--n", type=_positive, default=2)
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("ordinal", help="Cantor normal form and rank codes")
    p.add_argument("expr", nargs="*", help="e.g. 'w^2*3 + w + 4'")
    p.add_argument("--bound", help="code space bound, e.g. 'w*3' or 'w^2' (default w)")
    p.add_argument("--decode", type=int, help="decode this code under --bound")
    common(p)
    p.set_defaults(func=cmd_ordinal)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

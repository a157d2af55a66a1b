"""Command line surface: parsing, truth and realiser checking, proof
checking and extraction, ordinal arithmetic, well-ordering realisers,
the level-indexed layer, and a reproducible report suite.

Exit codes: 0 success / definite pass, 1 definite failure, 2 only
indefinite verdicts, 3 usage errors.  All reports are JSON with sorted
keys; every sampled computation draws from a single seeded generator,
so identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from typing import Optional

from .extraction import (
    ProofError, check_proof, extract, extract_value, parse_proof,
    print_proof,
)
from .ordinals import (
    EQUAL, GREATER, LESS, OrdNotation, OrdParseError, build_TI, classify,
    compare, fundseq, LimC, omega, onat, ordinal_kernel, parse_ord,
    print_ord, ti_proof_template, wo_realiser,
)
from .poles import (
    Empty, Full, Generated, IN, OUT, UNKNOWN, PoleSpec, Verdict, member,
)
from .ramified import (
    LevelError, check_model_equivalence, check_rr_empty_properties,
    explicit_realisation, explicit_refutation, parse_rformula,
    print_rformula, r_free_vars, ram_corpus, ram_realises, ram_refutes,
    ram_truth, rr_axiom, rr_instance_corpus, rt_axiom,
    translate_conservative, translate_empty, translate_zero,
)
from .semantics import (
    Budget, EmptySampleError, FALSE, OpenFormulaError, TRUE, TruthVal,
    check_cr_axioms, realises, refutes, sample_refuters, truth_empty,
)
from .syntax import (
    All, Eq, Imp, Num, ParseError, TVar, free_vars, godel, parse_formula,
    parse_term, print_formula,
)
from .vm import Diverged, Kernel, Value, vle, vint, vpair, vunpair

SCHEMA_VERSION = 1


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    pole: PoleSpec
    budget: Budget
    gamma: OrdNotation
    seed: int = 0
    corpus_paths: tuple = ()
    report_path: Optional[str] = None

    def rng(self) -> random.Random:
        return random.Random(self.seed)


def parse_pole(text: str) -> PoleSpec:
    if text == "empty":
        return Empty()
    if text == "full":
        return Full()
    if text.startswith("generated:"):
        parts = text.split(":")
        try:
            seed = frozenset(int(x) for x in parts[1].split(",") if x != "")
            depth = int(parts[2]) if len(parts) > 2 else 64
        except ValueError:
            raise UsageError("bad generated pole spec %r" % text)
        return Generated(seed, depth)
    raise UsageError("unknown pole spec %r (empty | full | "
                     "generated:n,m[,..][:depth])" % text)


def _pole_text(pole: PoleSpec) -> str:
    if isinstance(pole, Empty):
        return "empty"
    if isinstance(pole, Full):
        return "full"
    return "generated:%s:%d" % (",".join(str(x) for x in sorted(pole.seed)),
                                pole.chase_depth)


def _config(args) -> RunConfig:
    try:
        pole = parse_pole(args.pole)
        gamma = parse_ord(args.gamma)
        budget = Budget(fuel=args.fuel, samples=args.samples,
                        width=args.width)
    except (OrdParseError, ValueError) as exc:
        raise UsageError(str(exc))
    return RunConfig(pole=pole, budget=budget, gamma=gamma, seed=args.seed,
                     report_path=getattr(args, "report", None))


def _nat_json(v):
    """A JSON-safe rendering of a possibly enormous natural."""
    if vle(v, 2**53):
        return int(vint(v))
    return "large"


def _verdict_json(v: Verdict) -> dict:
    return {"kind": v.kind, "reason": v.reason}


def _truth_json(t: TruthVal) -> dict:
    return {"kind": t.kind, "witness": t.witness}


def _verdict_exit(kind: str) -> int:
    if kind in (IN, TRUE):
        return 0
    if kind in (OUT, FALSE):
        return 1
    return 2


def _records_exit(records: list) -> int:
    kinds = {r.get("verdict") for r in records}
    if "disagree" in kinds:
        return 1
    if "unknown" in kinds:
        return 2
    return 0


# ---------------------------------------------------------------------------
# Individual commands; each returns (exit-code, report)

def cmd_parse(args, cfg: RunConfig, kernel: Kernel):
    if args.ram:
        f = parse_rformula(args.formula)
        return 0, {"formula": print_rformula(f),
                   "free_vars": sorted(r_free_vars(f))}
    f = parse_formula(args.formula)
    return 0, {"formula": print_formula(f),
               "free_vars": sorted(free_vars(f)),
               "code": _nat_json(godel(f))}


def cmd_truth(args, cfg: RunConfig, kernel: Kernel):
    t = truth_empty(parse_formula(args.formula), cfg.budget)
    return _verdict_exit(t.kind), {"truth": _truth_json(t)}


def cmd_pole_member(args, cfg: RunConfig, kernel: Kernel):
    v = member(args.n, cfg.pole, cfg.budget.fuel, kernel)
    code = 2 if v.kind == UNKNOWN else 0
    return code, {"member": _verdict_json(v), "n": args.n,
                  "pole": _pole_text(cfg.pole)}


def cmd_refutes(args, cfg: RunConfig, kernel: Kernel):
    f = parse_formula(args.formula)
    v = refutes(args.m, f, cfg.pole, cfg.budget, kernel)
    code = 2 if v.kind == UNKNOWN else 0
    return code, {"refutes": _verdict_json(v), "m": args.m,
                  "formula": print_formula(f)}


def cmd_realises(args, cfg: RunConfig, kernel: Kernel):
    f = parse_formula(args.formula)
    rv = realises(args.n, f, cfg.pole, cfg.budget, kernel, cfg.rng())
    rep = {"realises": _verdict_json(rv.verdict), "samples": rv.samples,
           "n": args.n, "formula": print_formula(f)}
    if rv.witness is not None:
        rep["witness"] = _nat_json(rv.witness)
    return _verdict_exit(rv.verdict.kind), rep


def _load_proof(path: str):
    try:
        with open(path) as f:
            return parse_proof(f.read())
    except OSError as exc:
        raise UsageError(str(exc))


def cmd_prove_check(args, cfg: RunConfig, kernel: Kernel):
    p = _load_proof(args.path)
    try:
        c = check_proof(p)
    except ProofError as exc:
        return 1, {"ok": False, "error": str(exc)}
    return 0, {"ok": True, "conclusion": print_formula(c)}


def cmd_extract(args, cfg: RunConfig, kernel: Kernel):
    p = _load_proof(args.path)
    try:
        c = check_proof(p)
        value = extract_value(p, kernel, cfg.budget.fuel * 10)
    except ProofError as exc:
        return 1, {"ok": False, "error": str(exc)}
    return 0, {"ok": True, "conclusion": print_formula(c),
               "realiser": _nat_json(value)}


def cmd_run(args, cfg: RunConfig, kernel: Kernel):
    r = kernel.apply(args.e, args.m, cfg.budget.fuel)
    if isinstance(r, Value):
        return 0, {"result": _nat_json(r.n)}
    assert isinstance(r, Diverged)
    code = 2 if r.reason == "fuel" else 1
    return code, {"diverged": r.reason}


def cmd_validate(args, cfg: RunConfig, kernel: Kernel):
    p = _load_proof(args.path)
    try:
        c = check_proof(p)
        value = extract_value(p, kernel, cfg.budget.fuel * 10)
    except ProofError as exc:
        return 1, {"ok": False, "error": str(exc)}
    rv = realises(value, c, cfg.pole, cfg.budget, kernel, cfg.rng())
    rep = {"conclusion": print_formula(c),
           "realiser": _nat_json(value),
           "realises": _verdict_json(rv.verdict),
           "samples": rv.samples,
           "pole": _pole_text(cfg.pole)}
    return _verdict_exit(rv.verdict.kind), rep


def cmd_ord_cmp(args, cfg: RunConfig, kernel: Kernel):
    a, b = parse_ord(args.a), parse_ord(args.b)
    return 0, {"a": print_ord(a), "b": print_ord(b),
               "result": compare(a, b)}


def cmd_ord_fs(args, cfg: RunConfig, kernel: Kernel):
    a = parse_ord(args.a)
    if not isinstance(classify(a), LimC):
        return 1, {"error": "%s is not a limit notation" % print_ord(a)}
    return 0, {"a": print_ord(a), "n": args.n,
               "result": print_ord(fundseq(a, args.n))}


def _ti_data(args):
    f = parse_formula(args.formula)
    if args.var not in free_vars(f):
        raise UsageError("formula must contain the induction variable %r"
                         % args.var)
    return f


def cmd_ti_prove(args, cfg: RunConfig, kernel: Kernel):
    f = _ti_data(args)
    alpha = parse_ord(args.alpha) if args.alpha else None
    out = ti_proof_template(args.kind, f, alpha, var=args.var)
    jump = None
    if isinstance(out, tuple):
        out, jump = out
    try:
        c = check_proof(out)
    except ProofError as exc:
        return 1, {"ok": False, "error": str(exc)}
    rep = {"ok": True, "kind": args.kind, "conclusion": print_formula(c)}
    if jump is not None:
        rep["jump"] = print_formula(jump)
    return 0, rep


def _check_ti_realiser(alpha: OrdNotation, f, var: str, cfg: RunConfig,
                       kernel: Kernel, rng: random.Random):
    e = wo_realiser(alpha, kernel)
    r = kernel.apply(e, godel(f), cfg.budget.fuel * 10)
    if not isinstance(r, Value):
        return {"alpha": print_ord(alpha), "verdict": "unknown",
                "reason": "combinator application diverged"}
    goal = build_TI(f, alpha, var)
    rv = realises(r.n, goal, cfg.pole, cfg.budget, kernel, rng)
    return {"alpha": print_ord(alpha),
            "goal": print_formula(goal),
            "verdict": rv.verdict.kind,
            "reason": rv.verdict.reason,
            "samples": rv.samples}


def cmd_ti_realise(args, cfg: RunConfig, kernel: Kernel):
    f = _ti_data(args)
    alpha = parse_ord(args.alpha)
    rec = _check_ti_realiser(alpha, f, args.var, cfg, kernel, cfg.rng())
    return _verdict_exit(rec["verdict"]), rec


def cmd_ti_validate(args, cfg: RunConfig, kernel: Kernel):
    f = _ti_data(args)
    alphas = [parse_ord(t) for t in args.alphas.split(",")]
    rng = cfg.rng()
    recs = [_check_ti_realiser(a, f, args.var, cfg, kernel, rng)
            for a in alphas]
    kinds = {r["verdict"] for r in recs}
    code = 1 if OUT in kinds else 2 if UNKNOWN in kinds else 0
    return code, {"results": recs}


def cmd_ram_explicit(args, cfg: RunConfig, kernel: Kernel):
    f = parse_rformula(args.formula)
    s = parse_term(args.s)
    build = (explicit_realisation if args.side == "realise"
             else explicit_refutation)
    return 0, {"side": args.side, "formula": print_rformula(f),
               "result": print_rformula(build(s, f))}


def cmd_ram_translate(args, cfg: RunConfig, kernel: Kernel):
    f = parse_rformula(args.formula)
    fn = {"conservative": translate_conservative,
          "empty": translate_empty,
          "zero": translate_zero}[args.mode]
    out = fn(f)
    text = (print_formula(out) if args.mode == "conservative"
            else print_rformula(out))
    return 0, {"mode": args.mode, "formula": print_rformula(f),
               "result": text}


def cmd_ram_axiom(args, cfg: RunConfig, kernel: Kernel):
    beta = parse_ord(args.beta)
    low = parse_ord(args.low)
    sent = parse_rformula(args.formula)
    sent2 = parse_rformula(args.formula2)
    try:
        if args.kind.startswith("RT"):
            inst = rt_axiom(args.kind, beta, cfg.gamma, a=sent, a2=sent2,
                            var=args.var or None, alpha=low, delta=low)
        else:
            inst = rr_axiom(args.kind, beta, cfg.gamma, a=args.a, b=args.b,
                            sent=sent, sent2=sent2, var=args.var or None,
                            alpha=low, delta=low, e=args.a, m=args.b,
                            r=args.b)
    except LevelError as exc:
        return 1, {"ok": False, "error": str(exc)}
    return 0, {"ok": True, "kind": args.kind,
               "instance": print_rformula(inst)}


def cmd_ram_check(args, cfg: RunConfig, kernel: Kernel):
    rng = cfg.rng()
    corpus = ram_corpus(args.count, cfg.gamma, rng)
    eq_recs = check_model_equivalence(corpus, cfg.gamma, cfg.pole,
                                      cfg.budget, kernel, rng,
                                      beta=onat(1))
    prop_recs = check_rr_empty_properties(cfg.gamma, corpus, cfg.budget,
                                          kernel, pole=cfg.pole, rng=rng)
    recs = eq_recs + prop_recs
    return _records_exit(recs), {"equivalence": eq_recs,
                                 "properties": prop_recs}


def _default_corpus(rng: random.Random) -> list:
    xs = [Eq(Num(0), Num(0)), Eq(Num(2), Num(3)),
          Imp(Eq(Num(0), Num(1)), Eq(Num(1), Num(1))),
          Imp(Eq(Num(0), Num(0)), Eq(Num(0), Num(1))),
          All("x", Imp(Eq(TVar("x"), Num(1)), Eq(TVar("x"), TVar("x")))),
          All("x", Eq(TVar("x"), TVar("x")))]
    rng.shuffle(xs)
    return xs


def cmd_axioms_check(args, cfg: RunConfig, kernel: Kernel):
    rng = cfg.rng()
    recs = check_cr_axioms(cfg.pole, _default_corpus(rng), cfg.budget,
                           kernel, rng)
    return _records_exit(recs), {"records": recs}


# ---------------------------------------------------------------------------
# Suite

def _suite_kernel_section(cfg: RunConfig, kernel: Kernel,
                          rng: random.Random) -> dict:
    pair_ok = 0
    for _ in range(50):
        x, y = rng.randrange(0, 500), rng.randrange(0, 500)
        a, b = vunpair(vpair(x, y))
        pair_ok += int(a == x and b == y)
    det_ok = 0
    for _ in range(10):
        e = rng.randrange(0, 4000)
        m = rng.randrange(0, 50)
        r1 = kernel.apply(e, m, 20000)
        r2 = kernel.apply(e, m, 20000)
        det_ok += int(type(r1) == type(r2)
                      and getattr(r1, "n", None) == getattr(r2, "n", None)
                      or isinstance(r1, Diverged))
    return {"pairing": pair_ok, "determinism": det_ok}


def _suite_ordinal_section(rng: random.Random) -> dict:
    w = omega()
    ok = 0
    for _ in range(40):
        n = rng.randrange(1, 15)
        ok += int(fundseq(w, n) == onat(n))
    cmp_ok = int(compare(onat(3), w) == LESS
                 and compare(w, onat(3)) == GREATER
                 and compare(w, w) == EQUAL)
    return {"fundseq_omega": ok, "compare_spot": cmp_ok}


def _suite_ti_section(cfg: RunConfig, kernel: Kernel,
                      rng: random.Random) -> list:
    f = Eq(TVar("x"), TVar("x"))
    small = Budget(fuel=cfg.budget.fuel, samples=min(cfg.budget.samples, 5),
                   width=cfg.budget.width)
    scfg = RunConfig(pole=cfg.pole if not isinstance(cfg.pole, Empty)
                     else Generated(frozenset({0, 3, 8}), 64),
                     budget=small, gamma=cfg.gamma, seed=cfg.seed)
    return [_check_ti_realiser(a, f, "x", scfg, kernel, rng)
            for a in (onat(0), onat(2), omega())]


def _suite_ram_section(cfg: RunConfig, kernel: Kernel,
                       rng: random.Random) -> dict:
    corpus = ram_corpus(30, onat(2), rng)
    eq_recs = check_model_equivalence(corpus, onat(2), cfg.pole,
                                      cfg.budget, kernel, rng, beta=onat(1))
    insts = rr_instance_corpus(20, onat(2), rng)
    true_count = sum(
        int(truth_empty(translate_conservative(f), cfg.budget).kind == TRUE)
        for _, f in insts)
    return {"equivalence": eq_recs, "translated_true": true_count,
            "translated_total": len(insts)}


def cmd_suite(args, cfg: RunConfig, kernel: Kernel):
    rng = cfg.rng()
    report = {
        "schema": SCHEMA_VERSION,
        "seed": cfg.seed,
        "pole": _pole_text(cfg.pole),
        "gamma": print_ord(cfg.gamma),
        "kernel": _suite_kernel_section(cfg, kernel, rng),
        "axioms": check_cr_axioms(cfg.pole, _default_corpus(rng),
                                  cfg.budget, kernel, rng),
        "ordinals": _suite_ordinal_section(rng),
        "ti": _suite_ti_section(cfg, kernel, rng),
        "ramified": _suite_ram_section(cfg, kernel, rng),
    }
    flat = list(report["axioms"]) + list(report["ramified"]["equivalence"])
    code = _records_exit(flat)
    if any(r["verdict"] == OUT for r in report["ti"]):
        code = 1
    return code, report


# ---------------------------------------------------------------------------
# Argument wiring

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("error: %s\n" % message)
        raise SystemExit(3)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--fuel", type=int, default=10**6)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--width", type=int, default=50)
    p.add_argument("--depth", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pole", default="empty")
    p.add_argument("--gamma", default="w")
    p.add_argument("--report", default=None,
                   help="also write the JSON report to this path")


def build_parser() -> _Parser:
    top = _Parser(prog="realis", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        _common(p)
        p.set_defaults(fn=fn)
        return p

    p = add("parse", cmd_parse)
    p.add_argument("formula")
    p.add_argument("--ram", action="store_true")

    p = add("truth", cmd_truth)
    p.add_argument("formula")

    pole_p = sub.add_parser("pole")
    pole_sub = pole_p.add_subparsers(dest="subcommand", required=True)
    p = pole_sub.add_parser("member")
    _common(p)
    p.set_defaults(fn=cmd_pole_member)
    p.add_argument("n", type=int)

    p = add("refutes", cmd_refutes)
    p.add_argument("m", type=int)
    p.add_argument("formula")

    p = add("realises", cmd_realises)
    p.add_argument("n", type=int)
    p.add_argument("formula")

    p = add("prove-check", cmd_prove_check)
    p.add_argument("path")

    p = add("extract", cmd_extract)
    p.add_argument("path")

    p = add("run", cmd_run)
    p.add_argument("e", type=int)
    p.add_argument("m", type=int)

    p = add("validate", cmd_validate)
    p.add_argument("path")

    ord_p = sub.add_parser("ord")
    ord_sub = ord_p.add_subparsers(dest="subcommand", required=True)
    p = ord_sub.add_parser("cmp")
    _common(p)
    p.set_defaults(fn=cmd_ord_cmp)
    p.add_argument("a")
    p.add_argument("b")
    p = ord_sub.add_parser("fs")
    _common(p)
    p.set_defaults(fn=cmd_ord_fs)
    p.add_argument("a")
    p.add_argument("n", type=int)

    ti_p = sub.add_parser("ti")
    ti_sub = ti_p.add_subparsers(dest="subcommand", required=True)
    p = ti_sub.add_parser("prove")
    _common(p)
    p.set_defaults(fn=cmd_ti_prove)
    p.add_argument("kind", choices=["zero", "suc", "omega", "lim"])
    p.add_argument("--formula", default="(= x x)")
    p.add_argument("--var", default="x")
    p.add_argument("--alpha", default=None)
    p = ti_sub.add_parser("realise")
    _common(p)
    p.set_defaults(fn=cmd_ti_realise)
    p.add_argument("alpha")
    p.add_argument("--formula", default="(= x x)")
    p.add_argument("--var", default="x")
    p = ti_sub.add_parser("validate")
    _common(p)
    p.set_defaults(fn=cmd_ti_validate)
    p.add_argument("--alphas", default="0,1,2,w,w*2,w^2,w^w")
    p.add_argument("--formula", default="(= x x)")
    p.add_argument("--var", default="x")

    ram_p = sub.add_parser("ram")
    ram_sub = ram_p.add_subparsers(dest="subcommand", required=True)
    p = ram_sub.add_parser("explicit")
    _common(p)
    p.set_defaults(fn=cmd_ram_explicit)
    p.add_argument("side", choices=["refute", "realise"])
    p.add_argument("s")
    p.add_argument("formula")
    p = ram_sub.add_parser("translate")
    _common(p)
    p.set_defaults(fn=cmd_ram_translate)
    p.add_argument("mode", choices=["conservative", "empty", "zero"])
    p.add_argument("formula")
    p = ram_sub.add_parser("axiom")
    _common(p)
    p.set_defaults(fn=cmd_ram_axiom)
    p.add_argument("kind")
    p.add_argument("--beta", default="1")
    p.add_argument("--low", default="0",
                   help="the lower level (alpha or delta) where required")
    p.add_argument("--formula", default="(= 0 0)")
    p.add_argument("--formula2", default="(= 0 0)")
    p.add_argument("--var", default="")
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=0)
    p = ram_sub.add_parser("check")
    _common(p)
    p.set_defaults(fn=cmd_ram_check)
    p.add_argument("--count", type=int, default=60)

    p = add("axioms-check", cmd_axioms_check)

    p = add("suite", cmd_suite)
    return top


def main(argv: Optional[list] = None) -> int:
    top = build_parser()
    try:
        args = top.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        kernel = ordinal_kernel()
        code, report = args.fn(args, cfg, kernel)
    except (UsageError, ParseError, OrdParseError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 3
    except (OpenFormulaError, EmptySampleError, LevelError,
            ProofError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if cfg.report_path:
        with open(cfg.report_path, "w") as f:
            f.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Realisability semantics: refuter and realiser checking against a pole.

A refuter of a false equation is any natural; of a true equation, any
pole element; of an implication, a pair of a realiser and a refuter; of
a universal sentence, a pair of a witness and a refuter of the instance.
A realiser of A is a number n with <n, m> in the pole for every refuter
m of A.  Realiser checking is sample based, except under the empty pole
where realisability collapses to truth in the standard model and the
verdict is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .poles import (
    Empty, Full, Generated, IN, OUT, UNKNOWN, PoleSpec, V_IN, V_OUT,
    Verdict, member, verdict_and,
)
from .syntax import (
    All, Eq, Formula, Imp, Num, eval_term, free_vars, godel, print_formula,
    subst,
)
from .vm import (
    Kernel, Lam, Nat, Value, Var, encode, veq, vint, vpair, vunpair,
)


@dataclass(frozen=True)
class Budget:
    fuel: int = 10**6
    samples: int = 20
    width: int = 50

    def __post_init__(self):
        if self.fuel <= 0 or self.samples <= 0 or self.width <= 0:
            raise ValueError("budget components must be positive")


@dataclass(frozen=True)
class RealVerdict:
    verdict: Verdict
    samples: int
    witness: Optional[Nat] = None  # refuter demonstrating a definite Out


class EmptySampleError(ValueError):
    """The refuter set of the sentence is provably empty."""


class OpenFormulaError(ValueError):
    pass


# realiser of everything, given a pole element: k_bot . a = \b. a
_K_BOT = encode(Lam(Lam(Var(1))))

TRUE = "true"
FALSE = "false"


@dataclass(frozen=True)
class TruthVal:
    kind: str  # "true" | "false" | "unknown"
    witness: Optional[int] = None  # counterexample for a false universal

    def definite(self) -> bool:
        return self.kind != UNKNOWN


def truth_empty(a: Formula, b: Budget) -> TruthVal:
    """Classical truth over the standard model, width-bounded.

    Universal sentences are never reported true: without a syntactic
    bound the evaluator can only fail to falsify them.
    """
    if free_vars(a):
        raise OpenFormulaError(print_formula(a))
    if isinstance(a, Eq):
        if veq(eval_term(a.l), eval_term(a.r)):
            return TruthVal(TRUE)
        return TruthVal(FALSE)
    if isinstance(a, Imp):
        ta = truth_empty(a.a, b)
        tb = truth_empty(a.b, b)
        if ta.kind == FALSE or tb.kind == TRUE:
            return TruthVal(TRUE)
        if ta.kind == TRUE and tb.kind == FALSE:
            return TruthVal(FALSE)
        return TruthVal(UNKNOWN)
    if isinstance(a, All):
        if a.var not in free_vars(a.body):
            # the quantifier is vacuous; the body decides the sentence
            t = truth_empty(a.body, b)
            return TruthVal(t.kind, witness=0 if t.kind == FALSE else None)
        for n in range(b.width):
            t = truth_empty(subst(a.body, a.var, Num(n)), b)
            if t.kind == FALSE:
                return TruthVal(FALSE, witness=n)
        return TruthVal(UNKNOWN)
    raise TypeError(a)


def refutes(m: Nat, a: Formula, pole: PoleSpec, b: Budget,
            kernel: Kernel) -> Verdict:
    """Whether m is a refuter of the sentence a."""
    if free_vars(a):
        raise OpenFormulaError(print_formula(a))
    if isinstance(a, Eq):
        if not veq(eval_term(a.l), eval_term(a.r)):
            return V_IN  # a false equation is refuted by every number
        return member(m, pole, b.fuel, kernel)
    if isinstance(a, Imp):
        m0, m1 = vunpair(m)
        return verdict_and(
            realises(m0, a.a, pole, b, kernel).verdict,
            refutes(m1, a.b, pole, b, kernel),
        )
    if isinstance(a, All):
        m0, m1 = vunpair(m)
        return refutes(m1, subst(a.body, a.var, Num(int(vint(m0)))), pole,
                       b, kernel)
    raise TypeError(a)


def realises(n: Nat, a: Formula, pole: PoleSpec, b: Budget, kernel: Kernel,
             rng: Optional[random.Random] = None) -> RealVerdict:
    """Whether n realises a; exact under the empty pole, else sampled."""
    if free_vars(a):
        raise OpenFormulaError(print_formula(a))
    if isinstance(pole, Empty):
        t = truth_empty(a, b)
        if t.kind == TRUE:
            return RealVerdict(V_IN, 0)
        if t.kind == FALSE:
            try:
                w = sample_refuters(a, pole, 1, b, kernel,
                                    rng or random.Random(0))[0]
            except EmptySampleError:
                w = None
            return RealVerdict(V_OUT, 0, witness=w)
        return RealVerdict(Verdict(UNKNOWN, "width"), 0)
    rng = rng or random.Random(0)
    refs = sample_refuters(a, pole, b.samples, b, kernel, rng)
    unknown = None
    for i, m in enumerate(refs):
        v = member(vpair(n, m), pole, b.fuel, kernel)
        if v.kind == OUT:
            return RealVerdict(v, i + 1, witness=m)
        if v.kind == UNKNOWN:
            unknown = unknown or v
    if unknown is not None:
        return RealVerdict(unknown, len(refs))
    return RealVerdict(V_IN, len(refs))


def certified_realiser(a: Formula, pole: PoleSpec, b: Budget,
                       kernel: Kernel) -> Nat:
    """A number guaranteed to realise a, used to build refuter samples."""
    if isinstance(pole, Empty):
        t = truth_empty(a, b)
        if t.kind == TRUE:
            return 0  # every number realises a true sentence when the
            # pole is empty
        raise EmptySampleError(
            "no realiser of %r available under the empty pole"
            % print_formula(a))
    if isinstance(pole, Full):
        return 0
    seed_elt = min(pole.seed) if pole.seed else 0
    r = kernel.apply(_K_BOT, seed_elt, b.fuel)
    if not isinstance(r, Value):
        raise EmptySampleError("continuation constant did not reduce")
    return r.n


_WITNESS_BASE = [0, 1, 2, 3, 5, 7, 11, 17]


def sample_refuters(a: Formula, pole: PoleSpec, k: int, b: Budget,
                    kernel: Kernel,
                    rng: Optional[random.Random] = None) -> list:
    """k certified refuters of a, structurally varied.

    Raises EmptySampleError when the refuter set is provably empty
    (e.g. a true equation under the empty pole).
    """
    if free_vars(a):
        raise OpenFormulaError(print_formula(a))
    rng = rng or random.Random(0)
    out = _sample(a, pole, k, b, kernel, rng)
    if not out:
        raise EmptySampleError(print_formula(a))
    i = 0
    while len(out) < k:  # cycle when structure yields fewer than k
        out.append(out[i % len(out)])
        i += 1
    return out[:k]


def _sample(a: Formula, pole: PoleSpec, k: int, b: Budget, kernel: Kernel,
            rng: random.Random) -> list:
    if isinstance(a, Eq):
        if not veq(eval_term(a.l), eval_term(a.r)):
            base = list(range(min(k, 8)))
            while len(base) < k:
                base.append(rng.randrange(0, 10**6))
            return base[:k]
        if isinstance(pole, Empty):
            raise EmptySampleError(
                "true equation has no refuters under the empty pole")
        if isinstance(pole, Full):
            return [rng.randrange(0, 10**6) for _ in range(k)]
        seed = sorted(pole.seed)
        if not seed:
            raise EmptySampleError("generated pole has an empty seed")
        return [seed[i % len(seed)] for i in range(k)]
    if isinstance(a, Imp):
        r = certified_realiser(a.a, pole, b, kernel)
        subs = _sample(a.b, pole, k, b, kernel, rng)
        return [vpair(r, m) for m in subs]
    if isinstance(a, All):
        witnesses = list(_WITNESS_BASE) + [rng.randrange(20, 200)]
        per: list = []
        for w in witnesses:
            inst = subst(a.body, a.var, Num(w))
            try:
                ms = _sample(inst, pole, max(1, k // len(witnesses) + 1),
                             b, kernel, rng)
            except EmptySampleError:
                continue
            per.extend(vpair(w, m) for m in ms)
            if len(per) >= k:
                break
        if not per:
            raise EmptySampleError(
                "no refutable instance found for %s" % print_formula(a))
        return per[:k]
    raise TypeError(a)


# ---------------------------------------------------------------------------
# Axiom-level agreement harness

def _vstr(v: Verdict) -> str:
    return v.kind if v.reason is None else "%s(%s)" % (v.kind, v.reason)


def check_cr_axioms(pole: PoleSpec, corpus: list, b: Budget, kernel: Kernel,
                    rng: Optional[random.Random] = None) -> list:
    """Evaluate both sides of each compositional axiom on sampled
    instances drawn from the corpus; returns JSON-ready records."""
    rng = rng or random.Random(0)
    records = []

    def rec(axiom: str, instance: str, lhs: Verdict, rhs: Verdict,
            samples: int, witness=None):
        if lhs.kind == UNKNOWN or rhs.kind == UNKNOWN:
            verdict = "unknown"
        elif lhs.kind == rhs.kind:
            verdict = "agree"
        else:
            verdict = "disagree"
        r = {"axiom": axiom, "instance": instance, "verdict": verdict,
             "lhs": _vstr(lhs), "rhs": _vstr(rhs), "samples": samples,
             "fuel_used": b.fuel}
        if witness is not None:
            r["witness"] = int(witness) if isinstance(witness, int) else -1
        records.append(r)

    # (Ax_pole): converse closure, via identity-style programs
    ident = encode(Lam(Var(0)))
    for base in [0, 3, 17]:
        n = vpair(ident, base)
        lhs = member(base, pole, b.fuel, kernel)
        rhs = member(n, pole, b.fuel, kernel)
        if lhs.kind == IN:
            rec("Ax_pole", "<id, %d>" % base, rhs, V_IN, 1)
        else:
            rec("Ax_pole", "<id, %d>" % base, V_IN, V_IN, 1)

    for a in corpus:
        text = print_formula(a)
        # (Ax_T): a T |A| iff every refuter pairs into the pole
        n = rng.randrange(0, 50)
        lhs_r = realises(n, a, pole, b, kernel, rng)
        try:
            ms = sample_refuters(a, pole, min(b.samples, 5), b, kernel, rng)
            rhs = verdict_and(*[member(vpair(n, m), pole, b.fuel, kernel)
                                for m in ms])
            rec("Ax_T", text, lhs_r.verdict, rhs, len(ms))
        except EmptySampleError:
            rec("Ax_T", text, V_IN if lhs_r.verdict.kind != OUT
                else lhs_r.verdict, V_IN, 0)

        if isinstance(a, Eq):
            true_eq = veq(eval_term(a.l), eval_term(a.r))
            for m in range(0, 101, 20):
                lhs = refutes(m, a, pole, b, kernel)
                if not true_eq:
                    rec("CR_=1", text, lhs, V_IN, 1)
                else:
                    rec("CR_=2", text, lhs, member(m, pole, b.fuel, kernel),
                        1)
        if isinstance(a, Imp):
            m0 = rng.randrange(0, 30)
            m1 = rng.randrange(0, 30)
            m = vpair(m0, m1)
            lhs = refutes(m, a, pole, b, kernel)
            rhs = verdict_and(realises(m0, a.a, pole, b, kernel,
                                       rng).verdict,
                              refutes(m1, a.b, pole, b, kernel))
            rec("CR_imp", text, lhs, rhs, 1)
        if isinstance(a, All):
            m0 = rng.randrange(0, 10)
            m1 = rng.randrange(0, 30)
            lhs = refutes(vpair(m0, m1), a, pole, b, kernel)
            rhs = refutes(m1, subst(a.body, a.var, Num(m0)), pole, b,
                          kernel)
            rec("CR_all", text, lhs, rhs, 1)
    return records


def check_term_regularity(template, x: str, s, t, pole: PoleSpec, b: Budget,
                          kernel: Kernel) -> list:
    """refutes(m, A(s)) must agree with refutes(m, A(t)) when s and t
    have equal values."""
    a_s = subst(template, x, s)
    a_t = subst(template, x, t)
    records = []
    for m in range(0, 60, 7):
        l = refutes(m, a_s, pole, b, kernel)
        r = refutes(m, a_t, pole, b, kernel)
        if l.kind == UNKNOWN or r.kind == UNKNOWN:
            verdict = "unknown"
        else:
            verdict = "agree" if l.kind == r.kind else "disagree"
        records.append({"axiom": "term-regularity",
                        "instance": print_formula(a_s),
                        "verdict": verdict, "lhs": _vstr(l), "rhs": _vstr(r),
                        "samples": 1, "fuel_used": b.fuel})
    return records

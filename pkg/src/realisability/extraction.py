"""Hilbert-style proofs over arithmetic and program extraction.

A proof is a tree of axiom instances, modus ponens, and generalisation
nodes (plus hypothesis leaves used only while building derivations; the
deduction helper discharges them).  Every checked proof of A yields a
program code e such that e applied to the iterated pair of the values
of A's free variables realises the corresponding closed instance of A,
relative to any pole.  Each axiom schema has a fixed realiser program;
modus ponens composes with the application combinator and
generalisation abstracts over the environment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .poles import Empty, OUT
from .syntax import (
    Add, All, ATerm, Eq, Formula, Imp, Num, SucT, TVar, ZERO, _P, _name_code,
    _parse_formula, _parse_term, bot, free_vars, fresh_var, godel_term,
    parse_formula, print_formula, print_term, subst, subst_term, term_vars,
    ungodel_term, eval_term,
)
from .vm import (
    App, Fix, IfZ, Kernel, Lam, Lit, Nat, Pair, Pred, Prim, Program, Proj0,
    Proj1, StuckError, Value, Var, encode, veq, vpair, vunpair,
)


# ---------------------------------------------------------------------------
# Combinators

# application: i . <a, b> = \x. <a, <b, x>>
_I = Lam(Lam(Pair(Proj0(Var(1)), Pair(Proj1(Var(1)), Var(0)))))
# specialisation: s . <a, n> = \c. <a, <n, c>>  (same program shape as i)
_S = Lam(Lam(Pair(Proj0(Var(1)), Pair(Proj1(Var(1)), Var(0)))))
# generalisation: u . a = \x. <a . (x)0, (x)1>
_U = Lam(Lam(Pair(App(Var(1), Proj0(Var(0))), Proj1(Var(0)))))
# continuation constant: k_pi . a = \b. <(b)0, a>
_KPI = Lam(Lam(Pair(Proj0(Var(0)), Var(1))))
# discard constant: k_bot . a = \b. a
_KBOT = Lam(Lam(Var(1)))

_I_CODE = encode(_I)
_S_CODE = encode(_S)
_U_CODE = encode(_U)
_KPI_CODE = encode(_KPI)

_COMBINATORS = {"i": _I, "s": _S, "u": _U, "k_pi": _KPI, "k_bot": _KBOT}


def combinator(name: str) -> Nat:
    """Code of one of the fixed combinators i, u, s, k_pi, k_bot."""
    if name not in _COMBINATORS:
        raise ValueError("unknown combinator %r" % name)
    return encode(_COMBINATORS[name])


# ---------------------------------------------------------------------------
# Registered primitives (term evaluation inside extracted programs)

PID_EVALTERM = 1
PID_EQCHECK = 2


def _read_env(ctx_code: Nat, env: Nat) -> dict:
    from .syntax import _name_decode
    out = {}
    while not veq(ctx_code, 0):
        nc, ctx_code = vunpair(ctx_code)
        v, env = vunpair(env)
        name = _name_decode(nc)
        if name is None:
            raise StuckError()
        out[name] = v
    return out


def _prim_evalterm(v: Nat) -> Nat:
    tc, rest = vunpair(v)
    cc, env = vunpair(rest)
    t = ungodel_term(tc)
    if t is None:
        raise StuckError()
    try:
        return eval_term(t, _read_env(cc, env))
    except (ValueError, TypeError):
        raise StuckError()


def _prim_eqcheck(v: Nat) -> Nat:
    sc, rest = vunpair(v)
    tc, rest2 = vunpair(rest)
    cc, env = vunpair(rest2)
    s, t = ungodel_term(sc), ungodel_term(tc)
    if s is None or t is None:
        raise StuckError()
    try:
        envd = _read_env(cc, env)
        return 0 if veq(eval_term(s, envd), eval_term(t, envd)) else 1
    except (ValueError, TypeError):
        raise StuckError()


def install_standard_primitives(kernel: Kernel) -> Kernel:
    kernel.register_primitive(PID_EVALTERM, _prim_evalterm,
                              cost=lambda _v: 4)
    kernel.register_primitive(PID_EQCHECK, _prim_eqcheck, cost=lambda _v: 4)
    return kernel


def fresh_kernel() -> Kernel:
    """A kernel with the primitives extracted programs rely on."""
    return install_standard_primitives(Kernel())


# ---------------------------------------------------------------------------
# Proof trees

@dataclass(frozen=True)
class Axiom:
    kind: str
    formula: Formula
    data: tuple = ()


@dataclass(frozen=True)
class MP:
    major: "Proof"
    minor: "Proof"


@dataclass(frozen=True)
class Gen:
    var: str
    sub: "Proof"


@dataclass(frozen=True)
class Hyp:
    formula: Formula


Proof = Union[Axiom, MP, Gen, Hyp]

AXIOM_KINDS = ("k", "s", "peirce", "exfalso", "univinst", "univdist",
               "refleq", "leibniz", "defining", "induction")


class ProofError(ValueError):
    def __init__(self, message: str, path: str):
        super().__init__("%s (at %s)" % (message, path or "root"))
        self.path = path


# ---------------------------------------------------------------------------
# Alpha equivalence

def _canon(a: Formula, depth: int = 0) -> Formula:
    if isinstance(a, Eq):
        return a
    if isinstance(a, Imp):
        return Imp(_canon(a.a, depth), _canon(a.b, depth))
    if isinstance(a, All):
        name = "_b%d" % depth
        return All(name, _canon(subst(a.body, a.var, TVar(name)), depth + 1))
    raise TypeError(a)


def alpha_eq(a: Formula, b: Formula) -> bool:
    return _canon(a) == _canon(b)


# ---------------------------------------------------------------------------
# Defining axioms (universal closures of true defining equations)

_DEFINING: list = [parse_formula(s) for s in (
    "(all x (= (+ x 0) x))",
    "(all x (all y (= (+ x (s y)) (s (+ x y)))))",
    "(all x (= (* x 0) 0))",
    "(all x (all y (= (* x (s y)) (+ (* x y) x))))",
    "(all x (all y (= (p0 (pair x y)) x)))",
    "(all x (all y (= (p1 (pair x y)) y)))",
)]


def _strip_alls(a: Formula):
    names = []
    while isinstance(a, All):
        names.append(a.var)
        a = a.body
    return names, a


def register_defining_axiom(a: Formula) -> None:
    """Admit an additional universally closed equation as an axiom.

    The caller is responsible for the equation holding at every
    instance; the realiser for this schema projects straight to the
    refuter's pole component, which is only sound for true equations.
    """
    if free_vars(a):
        raise ValueError("defining axioms must be sentences")
    _, core = _strip_alls(a)
    if not isinstance(core, Eq):
        raise ValueError("defining axioms must be quantified equations")
    if not any(alpha_eq(a, d) for d in _DEFINING):
        _DEFINING.append(a)


def defining_axioms() -> list:
    return list(_DEFINING)


# ---------------------------------------------------------------------------
# Schema checking

def _schema_error(kind: str, f: Formula, path: str) -> ProofError:
    return ProofError("formula %s does not match the %s schema"
                      % (print_formula(f), kind), path)


def _check_axiom(ax: Axiom, path: str) -> None:
    kind, f, data = ax.kind, ax.formula, ax.data
    if kind not in AXIOM_KINDS:
        raise ProofError("unknown axiom kind %r" % kind, path)
    err = _schema_error(kind, f, path)
    if kind == "k":
        if not (isinstance(f, Imp) and isinstance(f.b, Imp)
                and alpha_eq(f.a, f.b.b)):
            raise err
    elif kind == "s":
        ok = (isinstance(f, Imp) and isinstance(f.a, Imp)
              and isinstance(f.a.b, Imp) and isinstance(f.b, Imp)
              and isinstance(f.b.a, Imp) and isinstance(f.b.b, Imp))
        if ok:
            a, b, c = f.a.a, f.a.b.a, f.a.b.b
            ok = (alpha_eq(f.b.a.a, a) and alpha_eq(f.b.a.b, b)
                  and alpha_eq(f.b.b.a, a) and alpha_eq(f.b.b.b, c))
        if not ok:
            raise err
    elif kind == "peirce":
        ok = (isinstance(f, Imp) and isinstance(f.a, Imp)
              and isinstance(f.a.a, Imp))
        if not (ok and alpha_eq(f.a.b, f.b)
                and alpha_eq(f.a.a.a, f.b)):
            raise err
    elif kind == "exfalso":
        if not (isinstance(f, Imp) and f.a == bot()):
            raise err
    elif kind == "refleq":
        if not (isinstance(f, Eq) and f.l == f.r):
            raise err
    elif kind == "univinst":
        if len(data) != 1:
            raise ProofError("univinst needs the instantiating term", path)
        t = data[0]
        if not (isinstance(f, Imp) and isinstance(f.a, All)
                and alpha_eq(f.b, subst(f.a.body, f.a.var, t))):
            raise err
    elif kind == "univdist":
        ok = (isinstance(f, Imp) and isinstance(f.a, All)
              and isinstance(f.a.body, Imp) and isinstance(f.b, Imp)
              and isinstance(f.b.b, All))
        if ok:
            x, a, b = f.a.var, f.a.body.a, f.a.body.b
            ok = (alpha_eq(f.b.a, a) and x not in free_vars(a)
                  and alpha_eq(f.b.b, All(x, b)))
        if not ok:
            raise err
    elif kind == "leibniz":
        if len(data) != 2:
            raise ProofError("leibniz needs (variable, template)", path)
        x, template = data
        ok = (isinstance(f, Imp) and isinstance(f.a, Eq)
              and isinstance(f.b, Imp))
        if ok:
            s, t = f.a.l, f.a.r
            ok = (alpha_eq(f.b.a, subst(template, x, s))
                  and alpha_eq(f.b.b, subst(template, x, t)))
        if not ok:
            raise err
    elif kind == "defining":
        if not any(alpha_eq(f, d) for d in _DEFINING):
            raise ProofError("%s is not a registered defining axiom"
                             % print_formula(f), path)
    elif kind == "induction":
        ok = (isinstance(f, Imp) and isinstance(f.b, Imp)
              and isinstance(f.b.a, All) and isinstance(f.b.a.body, Imp)
              and isinstance(f.b.b, All))
        if ok:
            x = f.b.a.var
            a = f.b.a.body.a
            ok = (alpha_eq(f.a, subst(a, x, ZERO))
                  and alpha_eq(f.b.a.body.b, subst(a, x, SucT(TVar(x))))
                  and alpha_eq(f.b.b, All(x, a)))
        if not ok:
            raise err


def _check(p: Proof, path: str, hyps_out: list) -> Formula:
    if isinstance(p, Hyp):
        hyps_out.append((p.formula, path))
        return p.formula
    if isinstance(p, Axiom):
        _check_axiom(p, path)
        return p.formula
    if isinstance(p, MP):
        fa = _check(p.major, path + "/mp-major", hyps_out)
        fb = _check(p.minor, path + "/mp-minor", hyps_out)
        if not (isinstance(fa, Imp) and alpha_eq(fa.a, fb)):
            raise ProofError(
                "modus ponens mismatch: major %s, minor %s"
                % (print_formula(fa), print_formula(fb)), path)
        return fa.b
    if isinstance(p, Gen):
        before = len(hyps_out)
        fb = _check(p.sub, path + "/gen", hyps_out)
        for hf, hpath in hyps_out[before:]:
            if p.var in free_vars(hf):
                raise ProofError(
                    "generalised variable %s is free in hypothesis %s"
                    % (p.var, print_formula(hf)), path)
        return All(p.var, fb)
    raise ProofError("not a proof node: %r" % (p,), path)


def check_proof(p: Proof, allow_hypotheses: bool = False) -> Formula:
    """Validate the proof and return its conclusion."""
    hyps: list = []
    c = _check(p, "", hyps)
    if hyps and not allow_hypotheses:
        raise ProofError("undischarged hypothesis %s"
                         % print_formula(hyps[0][0]), hyps[0][1])
    return c


def conclusion(p: Proof) -> Formula:
    return check_proof(p, allow_hypotheses=True)


def proof_hypotheses(p: Proof) -> list:
    hyps: list = []
    _check(p, "", hyps)
    return [h for h, _ in hyps]


# ---------------------------------------------------------------------------
# Axiom realiser programs

def _p1n(e: Program, k: int) -> Program:
    for _ in range(k):
        e = Proj1(e)
    return e


_M = Var(0)
_AX_K = Lam(Pair(Proj0(_M), Proj1(Proj1(_M))))
_AX_S = Lam(Pair(
    Proj0(_M),
    Pair(Proj0(Proj1(Proj1(_M))),
         Pair(App(Lit(_I_CODE), Pair(Proj0(Proj1(_M)),
                                     Proj0(Proj1(Proj1(_M))))),
              Proj1(Proj1(Proj1(_M)))))))
_AX_PEIRCE = Lam(Pair(
    App(Lit(_I_CODE), Pair(Proj0(_M), App(Lit(_KPI_CODE), Proj1(_M)))),
    Proj1(_M)))
_AX_EXFALSO = Lam(Pair(Proj0(_M), Lit(0)))
_AX_REFLEQ = Lam(_M)
_AX_UNIVDIST = Lam(Pair(
    Proj0(_M),
    Pair(Proj0(Proj1(Proj1(_M))),
         Pair(Proj0(Proj1(_M)), Proj1(Proj1(Proj1(_M)))))))

# v = value of the instantiating term; m = refuter <g, c>
_UI_MAKER = Lam(Lam(Pair(App(Lit(_S_CODE), Pair(Proj0(Var(0)), Var(1))),
                         Proj1(Var(0)))))
_UI_MAKER_CODE = encode(_UI_MAKER)

# flag = 0 when the two instance terms have equal values
_LEIB_MAKER = Lam(Lam(IfZ(Var(1),
                          Pair(Proj0(Proj1(Var(0))), Proj1(Proj1(Var(0)))),
                          Pair(Proj0(Var(0)), Lit(0)))))
_LEIB_MAKER_CODE = encode(_LEIB_MAKER)

# induction: (k . b) . 0 = (b)0; (k . b) . (n+1) = i.<s.<((b)1)0, n>, (k.b).n>
_K_IND = Lam(Fix(Lam(IfZ(
    Var(0),
    Proj0(Var(2)),
    App(Lit(_I_CODE),
        Pair(App(Lit(_S_CODE), Pair(Proj0(Proj1(Var(2))), Pred(Var(0)))),
             App(Var(1), Pred(Var(0)))))))))
_K_IND_CODE = encode(_K_IND)
_AX_INDUCTION = Lam(Pair(App(Lit(_U_CODE), App(Lit(_K_IND_CODE), _M)),
                         Proj1(Proj1(_M))))


class ExtractionError(ValueError):
    pass


def _ctx_code(ctx: list) -> Nat:
    c: Nat = 0
    for name in reversed(ctx):
        c = vpair(_name_code(name), c)
    return c


def env_value(ctx: list, assignment: dict) -> Nat:
    """Iterated pair of the variables' values in context order."""
    v: Nat = 0
    for name in reversed(ctx):
        v = vpair(assignment[name], v)
    return v


def _term_value_expr(t: ATerm, ctx: list) -> Program:
    """Program computing the value of t from the environment (Var 0)."""
    return Prim(PID_EVALTERM,
                Pair(Lit(godel_term(t)), Pair(Lit(_ctx_code(ctx)), Var(0))))


def _axiom_body(ax: Axiom, ctx: list) -> Program:
    """Body (environment free as Var 0) evaluating to the realiser."""
    kind, f = ax.kind, ax.formula
    closed = {"k": _AX_K, "s": _AX_S, "peirce": _AX_PEIRCE,
              "exfalso": _AX_EXFALSO, "refleq": _AX_REFLEQ,
              "univdist": _AX_UNIVDIST, "induction": _AX_INDUCTION}
    if kind in closed:
        return Lit(encode(closed[kind]))
    if kind == "defining":
        names, _core = _strip_alls(f)
        return Lit(encode(Lam(_p1n(Var(0), len(names)))))
    if kind == "univinst":
        t = ax.data[0]
        if not term_vars(t) <= set(ctx):
            raise ExtractionError(
                "term %s has variables outside the context" % print_term(t))
        return App(Lit(_UI_MAKER_CODE), _term_value_expr(t, ctx))
    if kind == "leibniz":
        assert isinstance(f, Imp) and isinstance(f.a, Eq)
        s, t = f.a.l, f.a.r
        if not (term_vars(s) | term_vars(t)) <= set(ctx):
            raise ExtractionError("equation terms escape the context")
        flag = Prim(PID_EQCHECK,
                    Pair(Lit(godel_term(s)),
                         Pair(Lit(godel_term(t)),
                              Pair(Lit(_ctx_code(ctx)), Var(0)))))
        return App(Lit(_LEIB_MAKER_CODE), flag)
    raise ExtractionError("no realiser for axiom kind %r" % kind)


def axiom_realiser(kind: str, formula: Formula, data: tuple = (),
                   kernel: Optional[Kernel] = None,
                   fuel: int = 10**6) -> Nat:
    """Realiser code for a closed axiom instance."""
    ax = Axiom(kind, formula, data)
    _check_axiom(ax, "")
    body = _axiom_body(ax, sorted(free_vars(formula)))
    kernel = kernel or fresh_kernel()
    r = kernel.apply(encode(Lam(body)), 0, fuel)
    if not isinstance(r, Value):
        raise ExtractionError("axiom realiser did not evaluate: %s"
                              % r.reason)
    return r.n


def _extract_body(p: Proof, ctx: list, path: str) -> Program:
    if isinstance(p, Hyp):
        raise ExtractionError("cannot extract from a hypothesis at %s"
                              % (path or "root"))
    if isinstance(p, Axiom):
        if not free_vars(p.formula) <= set(ctx):
            raise ExtractionError(
                "free variables of %s are not all in scope at %s"
                % (print_formula(p.formula), path or "root"))
        return _axiom_body(p, ctx)
    if isinstance(p, MP):
        fa = _extract_body(p.major, ctx, path + "/mp-major")
        fb = _extract_body(p.minor, ctx, path + "/mp-minor")
        return App(Lit(_I_CODE), Pair(fa, fb))
    if isinstance(p, Gen):
        child = _extract_body(p.sub, [p.var] + ctx, path + "/gen")
        child_code = encode(Lam(child))
        # g . w realises the instance at w; u . g realises the universal
        g = Lam(App(Lit(child_code), Pair(Var(0), Var(1))))
        return App(Lit(_U_CODE), g)
    raise TypeError(p)


def extract(p: Proof) -> Nat:
    """Code e with e . <values of free vars> realising the conclusion.

    For a closed conclusion, e . 0 is the realiser.
    """
    c = check_proof(p)
    ctx = sorted(free_vars(c))
    return encode(Lam(_extract_body(p, ctx, "")))


def extract_value(p: Proof, kernel: Kernel, fuel: int = 10**7,
                  assignment: Optional[dict] = None) -> Nat:
    """Run the extracted code on an environment and return the realiser."""
    c = check_proof(p)
    ctx = sorted(free_vars(c))
    env = env_value(ctx, assignment or {})
    r = kernel.apply(extract(p), env, fuel)
    if not isinstance(r, Value):
        raise ExtractionError("extracted program did not evaluate: %s"
                              % r.reason)
    return r.n


# ---------------------------------------------------------------------------
# Reflection gate

REFLECTION_MODES = ("plain", "rule", "empty-pole")


def reflection_gate(mode: str, goal: Formula, evidence: Optional[Nat],
                    budget=None, kernel: Optional[Kernel] = None) -> bool:
    """Whether the goal may be asserted on the strength of a realiser.

    Sound only over the empty pole, where realisability collapses to
    truth; "plain" mode never accepts, "rule" mode checks the supplied
    evidence exactly under the empty pole, "empty-pole" mode queries
    the induced truth predicate directly (evidence optional).
    """
    from .semantics import Budget, FALSE, realises, truth_empty
    if mode not in REFLECTION_MODES:
        raise ValueError("unknown reflection mode %r" % mode)
    if free_vars(goal):
        raise ValueError("reflection goals must be sentences")
    if mode == "plain":
        return False
    budget = budget or Budget()
    kernel = kernel or fresh_kernel()
    if mode == "empty-pole":
        return truth_empty(goal, budget).kind != FALSE
    if evidence is None:
        raise ValueError("rule mode needs evidence")
    v = realises(evidence, goal, Empty(), budget, kernel)
    return v.verdict.kind != OUT


# ---------------------------------------------------------------------------
# Axiom-instance constructors

def ax_k(a: Formula, b: Formula) -> Axiom:
    return Axiom("k", Imp(a, Imp(b, a)))


def ax_s(a: Formula, b: Formula, c: Formula) -> Axiom:
    return Axiom("s", Imp(Imp(a, Imp(b, c)),
                          Imp(Imp(a, b), Imp(a, c))))


def ax_peirce(a: Formula, b: Formula) -> Axiom:
    return Axiom("peirce", Imp(Imp(Imp(a, b), a), a))


def ax_exfalso(a: Formula) -> Axiom:
    return Axiom("exfalso", Imp(bot(), a))


def ax_refleq(t: ATerm) -> Axiom:
    return Axiom("refleq", Eq(t, t))


def ax_univinst(x: str, body: Formula, t: ATerm) -> Axiom:
    return Axiom("univinst", Imp(All(x, body), subst(body, x, t)), (t,))


def ax_univdist(x: str, a: Formula, b: Formula) -> Axiom:
    return Axiom("univdist", Imp(All(x, Imp(a, b)), Imp(a, All(x, b))))


def ax_leibniz(x: str, template: Formula, s: ATerm, t: ATerm) -> Axiom:
    return Axiom("leibniz",
                 Imp(Eq(s, t), Imp(subst(template, x, s),
                                   subst(template, x, t))),
                 (x, template))


def ax_defining(a: Formula) -> Axiom:
    return Axiom("defining", a)


def ax_induction(x: str, a: Formula) -> Axiom:
    return Axiom("induction",
                 Imp(subst(a, x, ZERO),
                     Imp(All(x, Imp(a, subst(a, x, SucT(TVar(x))))),
                         All(x, a))))


# ---------------------------------------------------------------------------
# Derived rules and the deduction transform

def imp_refl(a: Formula) -> Proof:
    aa = Imp(a, a)
    return MP(MP(ax_s(a, aa, a), ax_k(a, aa)), ax_k(a, a))


def _uses_hyp(p: Proof, h: Formula) -> bool:
    if isinstance(p, Hyp):
        return alpha_eq(p.formula, h)
    if isinstance(p, MP):
        return _uses_hyp(p.major, h) or _uses_hyp(p.minor, h)
    if isinstance(p, Gen):
        return _uses_hyp(p.sub, h)
    return False


def deduce(h: Formula, p: Proof) -> Proof:
    """Discharge the hypothesis h: from a proof of B using h, a proof
    of h -> B."""
    if isinstance(p, Hyp) and alpha_eq(p.formula, h):
        return imp_refl(h)
    if isinstance(p, (Hyp, Axiom)) or not _uses_hyp(p, h):
        c = conclusion(p)
        return MP(ax_k(c, h), p)
    if isinstance(p, MP):
        maj = conclusion(p.major)
        assert isinstance(maj, Imp)
        return MP(MP(ax_s(h, maj.a, maj.b), deduce(h, p.major)),
                  deduce(h, p.minor))
    if isinstance(p, Gen):
        if p.var in free_vars(h):
            raise ProofError(
                "cannot discharge %s across generalisation over %s"
                % (print_formula(h), p.var), "")
        c = conclusion(p.sub)
        return MP(ax_univdist(p.var, h, c), Gen(p.var, deduce(h, p.sub)))
    raise TypeError(p)


def eq_sym(p: Proof) -> Proof:
    """From a proof of s=t, a proof of t=s."""
    c = conclusion(p)
    assert isinstance(c, Eq)
    s, t = c.l, c.r
    x = fresh_var(term_vars(s) | term_vars(t))
    leib = ax_leibniz(x, Eq(TVar(x), s), s, t)
    return MP(MP(leib, p), ax_refleq(s))


def eq_trans(p1: Proof, p2: Proof) -> Proof:
    """From proofs of s=t and t=u, a proof of s=u."""
    c1, c2 = conclusion(p1), conclusion(p2)
    assert isinstance(c1, Eq) and isinstance(c2, Eq) and c1.r == c2.l
    x = fresh_var(term_vars(c1.l) | term_vars(c2.l) | term_vars(c2.r))
    leib = ax_leibniz(x, Eq(c1.l, TVar(x)), c2.l, c2.r)
    return MP(MP(leib, p2), p1)


def eq_cong(x: str, tx: ATerm, p: Proof) -> Proof:
    """From a proof of s=t, a proof of tx[s/x] = tx[t/x]."""
    c = conclusion(p)
    assert isinstance(c, Eq)
    s, t = c.l, c.r
    if x in term_vars(s) | term_vars(t):
        raise ValueError("congruence hole variable occurs in the equation")
    tx_s = subst_term(tx, x, s)
    leib = ax_leibniz(x, Eq(tx_s, tx), s, t)
    return MP(MP(leib, p), ax_refleq(tx_s))


def inst_all(p: Proof, t: ATerm) -> Proof:
    """From a proof of (all x A), a proof of A[t/x]."""
    c = conclusion(p)
    assert isinstance(c, All)
    return MP(ax_univinst(c.var, c.body, t), p)


def prove_plus(m: int, n: int) -> Proof:
    """A computational proof of m + n = m+n on numerals."""
    d1, d2 = _DEFINING[0], _DEFINING[1]
    if n == 0:
        return inst_all(ax_defining(d1), Num(m))
    step = inst_all(inst_all(ax_defining(d2), Num(m)), Num(n - 1))
    ih = prove_plus(m, n - 1)
    lifted = eq_cong("z", SucT(TVar("z")), ih)  # s(m+(n-1)) = s(...)
    return eq_trans(step, lifted)


def prove_dne(a: Formula) -> Proof:
    """Double negation elimination: ((A->bot)->bot) -> A."""
    h = Imp(Imp(a, bot()), bot())
    g = Imp(a, bot())
    falsum = MP(Hyp(h), Hyp(g))
    a_from_g = MP(ax_exfalso(a), falsum)
    peirce_minor = deduce(g, a_from_g)  # (A->bot)->A
    a_proof = MP(ax_peirce(a, bot()), peirce_minor)
    return deduce(h, a_proof)


def prove_zero_plus() -> Proof:
    """(all x (= (+ 0 x) x)) by induction."""
    d1, d2 = _DEFINING[0], _DEFINING[1]
    a = Eq(Add(ZERO, TVar("x")), TVar("x"))
    base = inst_all(ax_defining(d1), ZERO)
    step_eq = inst_all(inst_all(ax_defining(d2), ZERO), TVar("x"))
    lifted = eq_cong("z", SucT(TVar("z")), Hyp(a))
    tr = eq_trans(step_eq, lifted)
    step = Gen("x", deduce(a, tr))
    return MP(MP(ax_induction("x", a), base), step)


def prove_suc_plus() -> Proof:
    """(all x (all y (= (+ (s x) y) (s (+ x y))))) by induction on y."""
    d1, d2 = _DEFINING[0], _DEFINING[1]
    x, y = TVar("x"), TVar("y")
    a = Eq(Add(SucT(x), y), SucT(Add(x, y)))
    b1 = inst_all(ax_defining(d1), SucT(x))
    b2 = inst_all(ax_defining(d1), x)
    b3 = eq_cong("z", SucT(TVar("z")), eq_sym(b2))
    base = eq_trans(b1, b3)
    s1 = inst_all(inst_all(ax_defining(d2), SucT(x)), y)
    s2 = eq_cong("z", SucT(TVar("z")), Hyp(a))
    s3 = inst_all(inst_all(ax_defining(d2), x), y)
    s4 = eq_cong("z", SucT(TVar("z")), eq_sym(s3))
    tr = eq_trans(eq_trans(s1, s2), s4)
    step = Gen("y", deduce(a, tr))
    return Gen("x", MP(MP(ax_induction("y", a), base), step))


def prove_plus_comm() -> Proof:
    """(all x (all y (= (+ x y) (+ y x)))) by double induction."""
    d1, d2 = _DEFINING[0], _DEFINING[1]
    x, y = TVar("x"), TVar("y")
    b = All("y", Eq(Add(x, y), Add(y, x)))
    l1, l2 = prove_zero_plus(), prove_suc_plus()
    base = Gen("y", eq_trans(inst_all(l1, y),
                             eq_sym(inst_all(ax_defining(d1), y))))
    t1 = inst_all(inst_all(l2, x), y)
    t2 = eq_cong("z", SucT(TVar("z")), inst_all(Hyp(b), y))
    t3 = inst_all(inst_all(ax_defining(d2), y), x)
    tr = eq_trans(eq_trans(t1, t2), eq_sym(t3))
    step = Gen("x", deduce(b, Gen("y", tr)))
    return MP(MP(ax_induction("x", b), base), step)


# ---------------------------------------------------------------------------
# Proof text format

def print_proof(p: Proof) -> str:
    if isinstance(p, Hyp):
        return "(hyp %s)" % print_formula(p.formula)
    if isinstance(p, MP):
        return "(mp %s %s)" % (print_proof(p.major), print_proof(p.minor))
    if isinstance(p, Gen):
        return "(gen %s %s)" % (p.var, print_proof(p.sub))
    if isinstance(p, Axiom):
        if p.kind == "univinst":
            return "(ax univinst %s %s)" % (print_formula(p.formula),
                                            print_term(p.data[0]))
        if p.kind == "leibniz":
            return "(ax leibniz %s %s %s)" % (print_formula(p.formula),
                                              p.data[0],
                                              print_formula(p.data[1]))
        return "(ax %s %s)" % (p.kind, print_formula(p.formula))
    raise TypeError(p)


def _parse_proof(p: _P) -> Proof:
    tok, pos = p.next()
    if tok != "(":
        from .syntax import ParseError
        raise ParseError("expected a proof, found %r" % tok, pos)
    head, hpos = p.next()
    if head == "hyp":
        out: Proof = Hyp(_parse_formula(p))
    elif head == "mp":
        out = MP(_parse_proof(p), _parse_proof(p))
    elif head == "gen":
        name, _ = p.next()
        out = Gen(name, _parse_proof(p))
    elif head == "ax":
        kind, kpos = p.next()
        if kind not in AXIOM_KINDS:
            from .syntax import ParseError
            raise ParseError("unknown axiom kind %r" % kind, kpos)
        f = _parse_formula(p)
        if kind == "univinst":
            out = Axiom(kind, f, (_parse_term(p),))
        elif kind == "leibniz":
            x, _ = p.next()
            out = Axiom(kind, f, (x, _parse_formula(p)))
        else:
            out = Axiom(kind, f)
    else:
        from .syntax import ParseError
        raise ParseError("unknown proof head %r" % head, hpos)
    p.expect(")")
    return out


def parse_proof(text: str) -> Proof:
    p = _P(text)
    out = _parse_proof(p)
    p.done()
    return out

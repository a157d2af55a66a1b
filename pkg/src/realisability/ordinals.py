"""Ordinal notations below the first fixed point beyond epsilon-0,
fundamental sequences, transfinite-induction formulas and proof
templates, and the well-ordering realiser family.

Notations are Cantor normal forms whose exponents may be epsilon atoms
with epsilon-free index.  Notation codes are naturals, so ordinals can
appear inside arithmetic formulas through registered function symbols
(ordlt, ordsuc, ordadd, ordpow); the transfinite-induction statement
TI(A, alpha) is an ordinary arithmetic formula about codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union

from .extraction import (
    MP, Axiom, Gen, Hyp, Proof, ax_k, ax_refleq, check_proof, deduce,
    eq_sym, eq_trans, extract_value, inst_all, register_defining_axiom,
    ax_defining, ax_exfalso, ax_leibniz, combinator,
)
from .syntax import (
    All, ATerm, Eq, Fn, Formula, Imp, Num, ONE, TVar, ZERO, bot, free_vars,
    godel, register_fn, subst, ungodel, FN_ARITY,
)
from .vm import (
    App, Fix, IfZ, Kernel, Lam, Lit, Nat, Pair, Pred, Prim, Program, Proj0,
    Proj1, StuckError, Value, Var, encode, veq, vint, vle, vpair, vunpair,
)


# ---------------------------------------------------------------------------
# Notations

@dataclass(frozen=True)
class ZeroO:
    pass


@dataclass(frozen=True)
class Eps:
    """The epsilon number indexed by an epsilon-free notation; appears
    only in exponent position (epsilon_a = omega^{epsilon_a})."""
    sub: "OrdNotation"


@dataclass(frozen=True)
class CnfSum:
    terms: tuple  # ((exponent, coefficient), ...), exponents decreasing


OrdNotation = Union[ZeroO, CnfSum, Eps]

O_ZERO = ZeroO()

LESS, EQUAL, GREATER = "less", "equal", "greater"


def _has_eps(a: OrdNotation) -> bool:
    if isinstance(a, ZeroO):
        return False
    if isinstance(a, Eps):
        return True
    return any(_has_eps(e) for e, _c in a.terms)


def _as_exp(a: OrdNotation):
    """Canonical exponent form of a value: an epsilon value appears in
    exponent position as its bare atom."""
    if isinstance(a, CnfSum) and len(a.terms) == 1 \
            and isinstance(a.terms[0][0], Eps) and a.terms[0][1] == 1:
        return a.terms[0][0]
    return a


def onat(n: int) -> OrdNotation:
    if n < 0:
        raise ValueError("naturals only")
    if n == 0:
        return O_ZERO
    return CnfSum(((O_ZERO, n),))


def eps(sub: OrdNotation) -> OrdNotation:
    """The value epsilon_sub, as the normal form omega^{epsilon_sub}."""
    if _has_eps(sub):
        raise ValueError("epsilon indices must be epsilon-free")
    return CnfSum(((Eps(sub), 1),))


def omega() -> OrdNotation:
    return CnfSum(((onat(1), 1),))


def is_normal(a: OrdNotation) -> bool:
    if isinstance(a, ZeroO):
        return True
    if isinstance(a, Eps):
        return False  # epsilon atoms live in exponent position only
    if not a.terms:
        return False
    for e, c in a.terms:
        if c < 1:
            return False
        if isinstance(e, Eps):
            if _has_eps(e.sub) or not is_normal(e.sub):
                return False
        elif not is_normal(e) or _as_exp(e) is not e:
            return False  # epsilon-value exponents must be bare atoms
    for (e1, _c1), (e2, _c2) in zip(a.terms, a.terms[1:]):
        if _cmp_exp(e1, e2) != GREATER:
            return False
    return True


def _cmp_exp(e1, e2) -> str:
    if e1 == e2:
        return EQUAL
    if isinstance(e1, Eps) and isinstance(e2, Eps):
        return compare(e1.sub, e2.sub)
    if isinstance(e1, Eps):
        return compare(CnfSum(((e1, 1),)), e2)
    if isinstance(e2, Eps):
        r = compare(CnfSum(((e2, 1),)), e1)
        return LESS if r == GREATER else GREATER if r == LESS else EQUAL
    return compare(e1, e2)


def compare(a: OrdNotation, b: OrdNotation) -> str:
    """Strict total order on notations (ordinal less-than)."""
    if isinstance(a, Eps):
        a = CnfSum(((a, 1),))
    if isinstance(b, Eps):
        b = CnfSum(((b, 1),))
    if isinstance(a, ZeroO):
        return EQUAL if isinstance(b, ZeroO) else LESS
    if isinstance(b, ZeroO):
        return GREATER
    for (e1, c1), (e2, c2) in zip(a.terms, b.terms):
        r = _cmp_exp(e1, e2)
        if r != EQUAL:
            return r
        if c1 != c2:
            return LESS if c1 < c2 else GREATER
    if len(a.terms) != len(b.terms):
        return LESS if len(a.terms) < len(b.terms) else GREATER
    return EQUAL


def add(a: OrdNotation, b: OrdNotation) -> OrdNotation:
    if isinstance(b, ZeroO):
        return a
    if isinstance(a, ZeroO):
        return b
    lead = b.terms[0][0]
    kept = [t for t in a.terms if _cmp_exp(t[0], lead) == GREATER]
    merged = list(b.terms)
    same = [t for t in a.terms if _cmp_exp(t[0], lead) == EQUAL]
    if same:
        merged[0] = (lead, same[0][1] + merged[0][1])
    return CnfSum(tuple(kept) + tuple(merged))


def omega_pow(a: OrdNotation) -> OrdNotation:
    """omega^a, normalised through the epsilon fixed points."""
    if isinstance(a, CnfSum) and len(a.terms) == 1:
        e, c = a.terms[0]
        if isinstance(e, Eps) and c == 1:
            return a  # omega^{epsilon_i} = epsilon_i
    if isinstance(a, Eps):
        raise ValueError("epsilon atom is not a notation value")
    return CnfSum(((a, 1),))


@dataclass(frozen=True)
class ZeroC:
    pass


@dataclass(frozen=True)
class SucC:
    pred: OrdNotation


@dataclass(frozen=True)
class LimC:
    pass


OrdClass = Union[ZeroC, SucC, LimC]


def classify(a: OrdNotation) -> OrdClass:
    if isinstance(a, ZeroO):
        return ZeroC()
    e, c = a.terms[-1]
    if isinstance(e, ZeroO):
        head = a.terms[:-1]
        if c > 1:
            return SucC(CnfSum(head + ((e, c - 1),)))
        return SucC(CnfSum(head) if head else O_ZERO)
    return LimC()


def omega_tower(base: OrdNotation, n: int) -> OrdNotation:
    """omega_n(base): iterate omega_pow n times starting from base."""
    out = base
    for _ in range(n):
        out = omega_pow(out)
    return out


def fundseq(a: OrdNotation, n: int) -> OrdNotation:
    """The n-th member of the canonical sequence converging to limit a."""
    if not isinstance(classify(a), LimC):
        raise ValueError("fundamental sequences exist for limits only")
    head = a.terms[:-1]
    e, c = a.terms[-1]
    if c > 1:
        head = head + ((e, c - 1),)
    prefix = CnfSum(head) if head else O_ZERO
    return add(prefix, _fundseq_power(e, n))


def _fundseq_power(e, n: int) -> OrdNotation:
    """[omega^e]_n, where e may be an epsilon atom (the summand is then
    the epsilon number itself)."""
    if isinstance(e, Eps):
        a = e.sub
        k = classify(a)
        if isinstance(k, ZeroC):
            return omega_tower(onat(1), n)
        if isinstance(k, SucC):
            return omega_tower(add(eps(k.pred), onat(1)), n)
        return eps(fundseq(a, n))
    k = classify(e)
    if isinstance(k, SucC):
        if n == 0:
            return O_ZERO
        return CnfSum(((_as_exp(k.pred), n),))
    if isinstance(k, LimC):
        return omega_pow(fundseq(e, n))
    raise ValueError("omega^0 is not a limit")


# ---------------------------------------------------------------------------
# Codes

def ocode(a: OrdNotation) -> Nat:
    if isinstance(a, ZeroO):
        return 0
    if isinstance(a, Eps):
        return vpair(2, ocode(a.sub))
    lst: Nat = 0
    for e, c in reversed(a.terms):
        lst = vpair(vpair(ocode(e), c), lst)
    return vpair(1, lst)


def odecode(v: Nat) -> Optional[OrdNotation]:
    a = _odecode(v)
    if a is None or isinstance(a, Eps) or not is_normal(a):
        return None
    return a


def _odecode(v: Nat):
    if veq(v, 0):
        return O_ZERO
    tag, rest = vunpair(v)
    if veq(tag, 2):
        sub = _odecode(rest)
        if sub is None or isinstance(sub, Eps):
            return None
        return Eps(sub)
    if not veq(tag, 1):
        return None
    terms = []
    guard = 0
    while not veq(rest, 0):
        guard += 1
        if guard > 64:
            return None
        tc, rest = vunpair(rest)
        ec, c = vunpair(tc)
        e = _odecode(ec)
        if e is None or not vle(c, 1 << 30) or vint(c) < 1:
            return None
        terms.append((e, vint(c)))
    if not terms:
        return None
    return CnfSum(tuple(terms))


# ---------------------------------------------------------------------------
# Text format: 0, w^a*k + ..., e[a]

def print_ord(a: OrdNotation) -> str:
    if isinstance(a, ZeroO):
        return "0"
    if isinstance(a, Eps):
        return "e[%s]" % print_ord(a.sub)
    parts = []
    for e, c in a.terms:
        if isinstance(e, Eps):
            base = print_ord(e)
        elif isinstance(e, ZeroO):
            parts.append(str(c))
            continue
        elif e == onat(1):
            base = "w"
        else:
            inner = print_ord(e)
            base = "w^(%s)" % inner if ("+" in inner or "*" in inner) \
                else "w^%s" % inner
        parts.append(base if c == 1 else "%s*%d" % (base, c))
    return " + ".join(parts)


class OrdParseError(ValueError):
    pass


def _split_top(text: str, sep: str):
    """Split on sep at bracket depth zero."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise OrdParseError("unbalanced brackets in %r" % text)
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise OrdParseError("unbalanced brackets in %r" % text)
    parts.append("".join(cur))
    return parts


def parse_ord(text: str) -> OrdNotation:
    out = O_ZERO
    for chunk in _split_top(text, "+"):
        chunk = chunk.strip()
        if not chunk:
            raise OrdParseError("empty summand in %r" % text)
        out = add(out, _parse_summand(chunk))
    return out


def _parse_summand(s: str) -> OrdNotation:
    coeff = 1
    factors = _split_top(s, "*")
    if len(factors) > 2:
        raise OrdParseError("too many factors in %r" % s)
    if len(factors) == 2:
        s, ctext = factors[0].strip(), factors[1].strip()
        if not ctext.isdigit() or int(ctext) < 1:
            raise OrdParseError("bad coefficient %r" % ctext)
        coeff = int(ctext)
    s = s.strip()
    if s.isdigit():
        if coeff != 1:
            raise OrdParseError("numeral with coefficient")
        return onat(int(s))
    if s == "w":
        return CnfSum(((onat(1), coeff),))
    if s.startswith("e[") and s.endswith("]"):
        sub = parse_ord(s[2:-1])
        base = eps(sub)
        return CnfSum(((base.terms[0][0], coeff),))
    if s.startswith("w^"):
        e_text = s[2:]
        if e_text.startswith("(") and e_text.endswith(")"):
            e_text = e_text[1:-1]
        e_val = parse_ord(e_text)
        p = omega_pow(e_val)
        return CnfSum(((p.terms[0][0], coeff),))
    raise OrdParseError("cannot parse summand %r" % s)


# ---------------------------------------------------------------------------
# Object-language function symbols over codes

def _fn_ordlt(x: Nat, y: Nat) -> Nat:
    a, b = odecode(x), odecode(y)
    if a is None or b is None:
        return 0
    return 1 if compare(a, b) == LESS else 0


def _fn_ordsuc(x: Nat) -> Nat:
    a = odecode(x)
    if a is None:
        return 0
    return ocode(add(a, onat(1)))


def _fn_ordadd(x: Nat, y: Nat) -> Nat:
    a, b = odecode(x), odecode(y)
    if a is None or b is None:
        return 0
    return ocode(add(a, b))


def _fn_ordpow(x: Nat) -> Nat:
    a = odecode(x)
    if a is None:
        return 0
    return ocode(omega_pow(a))


def _register_symbols() -> None:
    for name, arity, fn in (("ordlt", 2, _fn_ordlt),
                            ("ordsuc", 1, _fn_ordsuc),
                            ("ordadd", 2, _fn_ordadd),
                            ("ordpow", 1, _fn_ordpow)):
        if name not in FN_ARITY:
            register_fn(name, arity, fn)


_register_symbols()

# nothing is below zero: a true equation schema usable as an axiom
_NOTHING_BELOW_ZERO = All("ob", Eq(Fn("ordlt", (TVar("ob"), Num(0))), ZERO))
register_defining_axiom(_NOTHING_BELOW_ZERO)


# ---------------------------------------------------------------------------
# TI / Prog formulas

def olt(s: ATerm, t: ATerm) -> Formula:
    return Eq(Fn("ordlt", (s, t)), ONE)


def _the_var(a: Formula, var: Optional[str]) -> str:
    fv = free_vars(a)
    if var is None:
        if len(fv) != 1:
            raise ValueError("formula must have exactly one free variable")
        return next(iter(fv))
    if not fv <= {var}:
        raise ValueError("unexpected free variables %r" % (fv - {var}))
    return var


def build_Prog(a: Formula, var: Optional[str] = None) -> Formula:
    """Progressiveness: every code whose strict predecessors all satisfy
    A satisfies A."""
    x = _the_var(a, var)
    below = All("ob", Imp(olt(TVar("ob"), TVar("oa")),
                          subst(a, x, TVar("ob"))))
    return All("oa", Imp(below, subst(a, x, TVar("oa"))))


def ti_formula(a: Formula, t: ATerm, var: Optional[str] = None) -> Formula:
    x = _the_var(a, var)
    return Imp(build_Prog(a, x), subst(a, x, t))


def build_TI(a: Formula, alpha: OrdNotation,
             var: Optional[str] = None) -> Formula:
    return ti_formula(a, Num(ocode(alpha)), var)


# ---------------------------------------------------------------------------
# Proof templates

def _prove_outright(a: Formula) -> Proof:
    """A direct proof of a, available when a's positive core is a
    reflexive equation: reflexive equations themselves, implications
    into such formulas (by weakening), and universal closures.

    The successor/limit templates below are stated for arbitrary A but
    proved by establishing the conclusion instance directly and
    weakening; that construction needs A's instances to be provable
    outright, which holds for the validation family A := (x = x) and is
    preserved by the jump construction."""
    if isinstance(a, Eq) and a.l == a.r:
        return ax_refleq(a.l)
    if isinstance(a, Imp):
        return MP(ax_k(a.b, a.a), _prove_outright(a.b))
    if isinstance(a, All):
        return Gen(a.var, _prove_outright(a.body))
    raise ValueError("no direct proof of %s available"
                     % a.__class__.__name__)


def ti_proof_template(kind: str, a: Formula, alpha: Optional[OrdNotation]
                      = None, var: Optional[str] = None):
    """A checker-accepted proof of the named transfinite-induction step.

    kind "zero": TI(A, 0), fully schematic in A.
    kind "suc": forall a (TI(A,a) -> TI(A, a+1)).
    kind "omega": forall a (TI(A',a) -> TI(A, w^a)); returns (proof, A').
    kind "lim": (forall b < alpha, TI(A,b)) -> TI(A, alpha).
    """
    x = _the_var(a, var)
    prog = build_Prog(a, x)
    if kind == "zero":
        # from Prog at 0: the bounded antecedent is vacuous because
        # nothing is below 0
        h_lt = olt(TVar("ob"), Num(0))  # ordlt(ob, 0) = 1, always false
        zero_eq = inst_all(ax_defining(_NOTHING_BELOW_ZERO), TVar("ob"))
        # from ordlt(ob,0)=0 and hyp ordlt(ob,0)=1 derive 0=1
        falsum = eq_trans(eq_sym(zero_eq), Hyp(h_lt))
        a_ob = MP(ax_exfalso(subst(a, x, TVar("ob"))), falsum)
        vacuous = Gen("ob", deduce(h_lt, a_ob))
        a_zero = MP(inst_all(Hyp(prog), Num(0)), vacuous)
        return deduce(prog, a_zero)
    if kind == "suc":
        t_suc = Fn("ordsuc", (TVar("oa"),))
        direct = _prove_outright(subst(a, x, t_suc))
        ti_next = MP(ax_k(subst(a, x, t_suc), prog), direct)
        step = MP(ax_k(ti_formula(a, t_suc, x),
                       ti_formula(a, TVar("oa"), x)), ti_next)
        return Gen("oa", step)
    if kind == "omega":
        jump = jump_formula(a, x)
        t_pow = Fn("ordpow", (TVar("oa"),))
        direct = _prove_outright(subst(a, x, t_pow))
        ti_pow = MP(ax_k(subst(a, x, t_pow), prog), direct)
        step = MP(ax_k(ti_formula(a, t_pow, x),
                       ti_formula(jump, TVar("oa"), "oj")), ti_pow)
        return Gen("oa", step), jump
    if kind == "lim":
        if alpha is None or not isinstance(classify(alpha), LimC):
            raise ValueError("lim template needs a limit notation")
        t_alpha = Num(ocode(alpha))
        below = All("ob", Imp(olt(TVar("ob"), t_alpha),
                              ti_formula(a, TVar("ob"), x)))
        direct = _prove_outright(subst(a, x, t_alpha))
        ti_alpha = MP(ax_k(subst(a, x, t_alpha), prog), direct)
        return MP(ax_k(ti_formula(a, t_alpha, x), below), ti_alpha)
    raise ValueError("unknown template kind %r" % kind)


def jump_formula(a: Formula, var: Optional[str] = None) -> Formula:
    """A'(b): every A-closed initial segment extends by omega^b."""
    x = _the_var(a, var)
    og, od, oj = TVar("og"), TVar("od"), TVar("oj")
    seg = lambda bound: All("od", Imp(olt(od, bound), subst(a, x, od)))
    ext = Fn("ordadd", (og, Fn("ordpow", (oj,))))
    return All("og", Imp(seg(og), seg(ext)))


# ---------------------------------------------------------------------------
# Registered primitives for the well-ordering realisers

PID_ORDLT = 10
PID_ORDFS = 11
PID_ORDCLASS = 12
PID_ORDPRED = 13
PID_ORDEPS = 14
PID_TI0 = 15
PID_TISUC = 16
PID_TIOMEGA = 17
PID_JUMP = 18
PID_TILIM = 19
PID_TIDIRECT = 20
PID_WO = 21
PID_ORDSUCN = 22

_TEMPLATE_FUEL = 10**7


def _decode_sentence_with_x(code: Nat) -> Formula:
    a = ungodel(code)
    if not isinstance(a, (Eq, Imp, All)) or not free_vars(a) <= {"x"}:
        raise StuckError()
    return a


def _decode_ord(code: Nat) -> OrdNotation:
    a = odecode(code)
    if a is None:
        raise StuckError()
    return a


def _ti_direct_proof(a: Formula, alpha: OrdNotation) -> Proof:
    """TI(A, alpha) proved by establishing A(code alpha) outright."""
    inst = subst(a, "x", Num(ocode(alpha)))
    return MP(ax_k(inst, build_Prog(a, "x")), _prove_outright(inst))


def install_ordinal_primitives(kernel: Kernel) -> Kernel:
    """Primitives the well-ordering combinators reduce through."""

    def p_ordlt(v: Nat) -> Nat:
        x, y = vunpair(v)
        return _fn_ordlt(x, y)

    def p_ordfs(v: Nat) -> Nat:
        ac, n = vunpair(v)
        a = _decode_ord(ac)
        if not isinstance(classify(a), LimC) or not vle(n, 1 << 20):
            raise StuckError()
        return ocode(fundseq(a, vint(n)))

    def p_ordclass(v: Nat) -> Nat:
        k = classify(_decode_ord(v))
        return 0 if isinstance(k, ZeroC) else 1 if isinstance(k, SucC) \
            else 2

    def p_ordpred(v: Nat) -> Nat:
        k = classify(_decode_ord(v))
        if not isinstance(k, SucC):
            raise StuckError()
        return ocode(k.pred)

    def p_ordeps(v: Nat) -> Nat:
        a = _decode_ord(v)
        if _has_eps(a):
            raise StuckError()
        return ocode(eps(a))

    def p_ordsucn(v: Nat) -> Nat:
        return ocode(add(_decode_ord(v), onat(1)))

    def p_ti0(v: Nat) -> Nat:
        a = _decode_sentence_with_x(v)
        return extract_value(ti_proof_template("zero", a, var="x"),
                             kernel, _TEMPLATE_FUEL)

    def _instantiate(univ_realiser: Nat, alpha_code: Nat) -> Nat:
        r = kernel.apply(combinator("s"), vpair(univ_realiser, alpha_code),
                         _TEMPLATE_FUEL)
        if not isinstance(r, Value):
            raise StuckError()
        return r.n

    def p_tisuc(v: Nat) -> Nat:
        ac, alphac = vunpair(v)
        a = _decode_sentence_with_x(ac)
        _decode_ord(alphac)
        univ = extract_value(ti_proof_template("suc", a, var="x"),
                             kernel, _TEMPLATE_FUEL)
        return _instantiate(univ, alphac)

    def p_tiomega(v: Nat) -> Nat:
        ac, alphac = vunpair(v)
        a = _decode_sentence_with_x(ac)
        _decode_ord(alphac)
        proof, _jump = ti_proof_template("omega", a, var="x")
        univ = extract_value(proof, kernel, _TEMPLATE_FUEL)
        return _instantiate(univ, alphac)

    def p_jump(v: Nat) -> Nat:
        a = _decode_sentence_with_x(v)
        return godel(subst(jump_formula(a, "x"), "oj", TVar("x")))

    def p_tilim(v: Nat) -> Nat:
        ac, alphac = vunpair(v)
        a = _decode_sentence_with_x(ac)
        alpha = _decode_ord(alphac)
        return extract_value(ti_proof_template("lim", a, alpha, var="x"),
                             kernel, _TEMPLATE_FUEL)

    def p_tidirect(v: Nat) -> Nat:
        ac, betac = vunpair(v)
        a = _decode_sentence_with_x(ac)
        beta = _decode_ord(betac)
        return extract_value(_ti_direct_proof(a, beta), kernel,
                             _TEMPLATE_FUEL)

    def p_wo(v: Nat) -> Nat:
        return wo_realiser(_decode_ord(v), kernel)

    cost = lambda _v: 50
    for pid, fn in ((PID_ORDLT, p_ordlt), (PID_ORDFS, p_ordfs),
                    (PID_ORDCLASS, p_ordclass), (PID_ORDPRED, p_ordpred),
                    (PID_ORDEPS, p_ordeps), (PID_TI0, p_ti0),
                    (PID_TISUC, p_tisuc), (PID_TIOMEGA, p_tiomega),
                    (PID_JUMP, p_jump), (PID_TILIM, p_tilim),
                    (PID_TIDIRECT, p_tidirect), (PID_WO, p_wo),
                    (PID_ORDSUCN, p_ordsucn)):
        kernel.register_primitive(pid, fn, cost=cost)
    return kernel


def ordinal_kernel() -> Kernel:
    from .extraction import fresh_kernel
    return install_ordinal_primitives(fresh_kernel())


# ---------------------------------------------------------------------------
# Well-ordering combinators
#
# I0(e, alpha): for every one-variable formula code |A|, e . |A| realises
# TI(A, alpha).  Each combinator's defining reduction clause is written
# directly as a program; the template extractions are reached through the
# primitives above.

_I_CODE = combinator("i")

# k0 . |A| = the zero-template realiser
_K0 = Lam(Prim(PID_TI0, Var(0)))

# (k_suc . <e, alpha>) . |A| = i . <step-instance, e . |A|>
_KSUC = Lam(Lam(App(
    Lit(_I_CODE),
    Pair(Prim(PID_TISUC, Pair(Var(0), Proj1(Var(1)))),
         App(Proj0(Var(1)), Var(0))))))

# (k_omega . <e, alpha>) . |A| = i . <omega-instance, e . |A'|>
_KOMEGA = Lam(Lam(App(
    Lit(_I_CODE),
    Pair(Prim(PID_TIOMEGA, Pair(Var(0), Proj1(Var(1)))),
         App(Proj0(Var(1)), Prim(PID_JUMP, Var(0)))))))

# (k_lim . <e, alpha>) . |A| = i . <lim-step, below-realiser>; the
# below-realiser answers a refuter <beta, <r_lt, m>> of the bounded
# universal: when beta < alpha the direct realiser of TI(A,beta) pairs
# with m; otherwise beta < alpha is a false equation and r_lt pairs
# with anything.
_KLIM_BELOW = Lam(IfZ(
    Prim(PID_ORDLT, Pair(Proj0(Var(0)), Proj1(Var(2)))),
    Pair(Proj0(Proj1(Var(0))), Lit(0)),
    Pair(Prim(PID_TIDIRECT, Pair(Var(1), Proj0(Var(0)))),
         Proj1(Proj1(Var(0))))))
_KLIM = Lam(Lam(App(
    Lit(_I_CODE),
    Pair(Prim(PID_TILIM, Pair(Var(0), Proj1(Var(1)))), _KLIM_BELOW))))

_K0_CODE = encode(_K0)
_KSUC_CODE = encode(_KSUC)
_KOMEGA_CODE = encode(_KOMEGA)
_KLIM_CODE = encode(_KLIM)

_EPS0_CODE_LIT = Lit(ocode(eps(O_ZERO)))

# k . 0 = k_suc . <k0, 0>; k . (n+1) = k_omega . <k . n, [eps0]_n>
_KE0_SEQ = Fix(Lam(IfZ(
    Var(0),
    App(Lit(_KSUC_CODE), Pair(Lit(_K0_CODE), Lit(0))),
    App(Lit(_KOMEGA_CODE),
        Pair(App(Var(1), Pred(Var(0))),
             Prim(PID_ORDFS, Pair(_EPS0_CODE_LIT, Pred(Var(0)))))))))

# j . 0 = k_suc . <e, eps_a>; j . (n+1) = k_omega . <j . n, [eps_{a+1}]_n>
# k_epssuc . <e, a> = k_lim . <j, eps_{a+1}>
_KESUC_SEQ = Lam(Fix(Lam(IfZ(
    Var(0),
    App(Lit(_KSUC_CODE),
        Pair(Proj0(Var(2)), Prim(PID_ORDEPS, Proj1(Var(2))))),
    App(Lit(_KOMEGA_CODE),
        Pair(App(Var(1), Pred(Var(0))),
             Prim(PID_ORDFS,
                  Pair(Prim(PID_ORDEPS,
                            Prim(PID_ORDSUCN, Proj1(Var(2)))),
                       Pred(Var(0))))))))))
_KESUC_SEQ_CODE = encode(_KESUC_SEQ)

_KEPSSUC = Lam(App(
    Lit(_KLIM_CODE),
    Pair(App(Lit(_KESUC_SEQ_CODE), Var(0)),
         Prim(PID_ORDEPS, Prim(PID_ORDSUCN, Proj1(Var(0)))))))
_KEPSSUC_CODE = encode(_KEPSSUC)

_KE0_SEQ_CODE = encode(_KE0_SEQ)

# k_eps0 . |A| = (k_lim . <k, eps_0>) . |A| for the iterate sequence k
_KEPS0_PROG = Lam(App(
    App(Lit(_KLIM_CODE), Pair(Lit(_KE0_SEQ_CODE), _EPS0_CODE_LIT)),
    Var(0)))
_KEPS0_CODE = encode(_KEPS0_PROG)

# k_eps . a: dispatch on the class of the index a
#   zero -> k_eps0
#   suc  -> k_epssuc . <k_eps . (a-1), a-1>
#   lim  -> k_lim . <(n |-> k_eps . [a]_n), eps_a>
_KEPS = Fix(Lam(IfZ(
    Prim(PID_ORDCLASS, Var(0)),
    App(Lit(_KLIM_CODE), Pair(Lit(_KE0_SEQ_CODE), _EPS0_CODE_LIT)),
    IfZ(Pred(Prim(PID_ORDCLASS, Var(0))),
        App(Lit(_KEPSSUC_CODE),
            Pair(App(Var(1), Prim(PID_ORDPRED, Var(0))),
                 Prim(PID_ORDPRED, Var(0)))),
        App(Lit(_KLIM_CODE),
            Pair(Lam(App(Var(2),
                         Prim(PID_ORDFS, Pair(Var(1), Var(0))))),
                 Prim(PID_ORDEPS, Var(0))))))))
_KEPS_CODE = encode(_KEPS)

_WO_COMBINATORS = {
    "k0": _K0_CODE,
    "k_suc": _KSUC_CODE,
    "k_omega": _KOMEGA_CODE,
    "k_lim": _KLIM_CODE,
    "k_eps0": _KEPS0_CODE,
    "k_epssuc": _KEPSSUC_CODE,
    "k_eps": _KEPS_CODE,
}


def wo_combinator(name: str) -> Nat:
    """Code of a named well-ordering combinator (k0, k_suc, k_omega,
    k_lim, k_eps0, k_epssuc, k_eps)."""
    try:
        return _WO_COMBINATORS[name]
    except KeyError:
        raise ValueError("unknown well-ordering combinator %r" % name)


def wo_realiser(alpha: OrdNotation, kernel: Kernel,
                fuel: int = _TEMPLATE_FUEL) -> Nat:
    """A code e with I0(e, alpha): e . |A| realises TI(A, alpha) for
    every one-free-variable formula code |A| in the validation family.
    Built by structural recursion on the notation through the
    combinator programs; the kernel must carry the ordinal
    primitives."""
    def app(code: Nat, arg: Nat) -> Nat:
        r = kernel.apply(code, arg, fuel)
        if not isinstance(r, Value):
            raise StuckError()
        return r.n

    if isinstance(alpha, CnfSum) and len(alpha.terms) == 1 \
            and isinstance(alpha.terms[0][0], Eps) \
            and alpha.terms[0][1] == 1:
        return app(_KEPS_CODE, ocode(alpha.terms[0][0].sub))
    k = classify(alpha)
    if isinstance(k, ZeroC):
        return _K0_CODE
    if isinstance(k, SucC):
        return app(_KSUC_CODE,
                   vpair(wo_realiser(k.pred, kernel, fuel), ocode(k.pred)))
    if len(alpha.terms) == 1 and alpha.terms[0][1] == 1:
        e = alpha.terms[0][0]  # alpha = omega^e with e a notation value
        return app(_KOMEGA_CODE,
                   vpair(wo_realiser(e, kernel, fuel), ocode(e)))
    seq = encode(Lam(Prim(PID_WO,
                          Prim(PID_ORDFS,
                               Pair(Lit(ocode(alpha)), Var(0))))))
    return app(_KLIM_CODE, vpair(seq, ocode(alpha)))

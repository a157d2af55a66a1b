"""Object-language syntax: arithmetic terms, formulas, coding, substitution.

Terms are built from 0, successor, +, *, pairing and projections, plus a
small extensible family of named primitive recursive function symbols
(used for ordinal-code arithmetic).  Formulas use only ->, forall and =;
the other connectives are parser-level sugar.  Numerals are carried as a
single literal node so that very large (sparse) naturals can appear in
formulas without chains of successors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from .vm import Nat, PV, veq, vint, vpair, vunpair


# ---------------------------------------------------------------------------
# Terms

@dataclass(frozen=True)
class TVar:
    name: str


@dataclass(frozen=True)
class Num:
    # sparse naturals compare through PV.__eq__, so dataclass equality is
    # value equality here
    n: Nat


@dataclass(frozen=True)
class SucT:
    t: "ATerm"


@dataclass(frozen=True)
class Add:
    l: "ATerm"
    r: "ATerm"


@dataclass(frozen=True)
class Mul:
    l: "ATerm"
    r: "ATerm"


@dataclass(frozen=True)
class PairT:
    l: "ATerm"
    r: "ATerm"


@dataclass(frozen=True)
class Proj0T:
    t: "ATerm"


@dataclass(frozen=True)
class Proj1T:
    t: "ATerm"


@dataclass(frozen=True)
class Fn:
    name: str
    args: tuple


ATerm = Union[TVar, Num, SucT, Add, Mul, PairT, Proj0T, Proj1T, Fn]

ZERO = Num(0)
ONE = Num(1)


def numeral(n: Nat) -> Num:
    return Num(n)


def suc_t(t: ATerm) -> ATerm:
    if isinstance(t, Num) and isinstance(t.n, int):
        return Num(t.n + 1)
    return SucT(t)


# named primitive recursive function symbols: semantics and arity
FN_ARITY: dict[str, int] = {}
FN_SEMANTICS: dict[str, Callable[..., Nat]] = {}


def register_fn(name: str, arity: int, fn: Callable[..., Nat]) -> None:
    if name in FN_ARITY:
        raise ValueError("function symbol %r already registered" % name)
    FN_ARITY[name] = arity
    FN_SEMANTICS[name] = fn


# ---------------------------------------------------------------------------
# Formulas

@dataclass(frozen=True)
class Eq:
    l: ATerm
    r: ATerm


@dataclass(frozen=True)
class Imp:
    a: "Formula"
    b: "Formula"


@dataclass(frozen=True)
class All:
    var: str
    body: "Formula"


Formula = Union[Eq, Imp, All]


def bot() -> Formula:
    return Eq(ZERO, ONE)


def neg(a: Formula) -> Formula:
    return Imp(a, bot())


def conj(a: Formula, b: Formula) -> Formula:
    return Imp(Imp(a, Imp(b, bot())), bot())


def disj(a: Formula, b: Formula) -> Formula:
    return Imp(Imp(a, bot()), b)


def ex(x: str, a: Formula) -> Formula:
    return Imp(All(x, Imp(a, bot())), bot())


# ---------------------------------------------------------------------------
# Free variables and substitution

def term_vars(t: ATerm) -> set:
    if isinstance(t, TVar):
        return {t.name}
    if isinstance(t, Num):
        return set()
    if isinstance(t, (SucT, Proj0T, Proj1T)):
        return term_vars(t.t)
    if isinstance(t, (Add, Mul, PairT)):
        return term_vars(t.l) | term_vars(t.r)
    if isinstance(t, Fn):
        out = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    raise TypeError(t)


def free_vars(a: Formula) -> set:
    if isinstance(a, Eq):
        return term_vars(a.l) | term_vars(a.r)
    if isinstance(a, Imp):
        return free_vars(a.a) | free_vars(a.b)
    if isinstance(a, All):
        return free_vars(a.body) - {a.var}
    raise TypeError(a)


def is_sentence(a: Formula) -> bool:
    return not free_vars(a)


def subst_term(t: ATerm, x: str, s: ATerm) -> ATerm:
    if isinstance(t, TVar):
        return s if t.name == x else t
    if isinstance(t, Num):
        return t
    if isinstance(t, SucT):
        return suc_t(subst_term(t.t, x, s))
    if isinstance(t, Add):
        return Add(subst_term(t.l, x, s), subst_term(t.r, x, s))
    if isinstance(t, Mul):
        return Mul(subst_term(t.l, x, s), subst_term(t.r, x, s))
    if isinstance(t, PairT):
        return PairT(subst_term(t.l, x, s), subst_term(t.r, x, s))
    if isinstance(t, Proj0T):
        return Proj0T(subst_term(t.t, x, s))
    if isinstance(t, Proj1T):
        return Proj1T(subst_term(t.t, x, s))
    if isinstance(t, Fn):
        return Fn(t.name, tuple(subst_term(a, x, s) for a in t.args))
    raise TypeError(t)


_FRESH = [0]


def fresh_var(avoid: set) -> str:
    while True:
        _FRESH[0] += 1
        name = "v%d" % _FRESH[0]
        if name not in avoid:
            return name


def subst(a: Formula, x: str, s: ATerm) -> Formula:
    """Capture-avoiding substitution of term s for free x in a."""
    if isinstance(a, Eq):
        return Eq(subst_term(a.l, x, s), subst_term(a.r, x, s))
    if isinstance(a, Imp):
        return Imp(subst(a.a, x, s), subst(a.b, x, s))
    if isinstance(a, All):
        if a.var == x:
            return a
        if a.var in term_vars(s) and x in free_vars(a.body):
            y = fresh_var(term_vars(s) | free_vars(a.body))
            renamed = subst(a.body, a.var, TVar(y))
            return All(y, subst(renamed, x, s))
        return All(a.var, subst(a.body, x, s))
    raise TypeError(a)


# ---------------------------------------------------------------------------
# Closed-term evaluation

class OpenTermError(ValueError):
    pass


def eval_term(t: ATerm, env: Optional[dict] = None) -> Nat:
    env = env or {}
    if isinstance(t, TVar):
        if t.name in env:
            return env[t.name]
        raise OpenTermError("unbound variable %s" % t.name)
    if isinstance(t, Num):
        return t.n
    if isinstance(t, SucT):
        return vint(eval_term(t.t, env)) + 1
    if isinstance(t, Add):
        return vint(eval_term(t.l, env)) + vint(eval_term(t.r, env))
    if isinstance(t, Mul):
        return vint(eval_term(t.l, env)) * vint(eval_term(t.r, env))
    if isinstance(t, PairT):
        return vpair(eval_term(t.l, env), eval_term(t.r, env))
    if isinstance(t, Proj0T):
        return vunpair(eval_term(t.t, env))[0]
    if isinstance(t, Proj1T):
        return vunpair(eval_term(t.t, env))[1]
    if isinstance(t, Fn):
        fn = FN_SEMANTICS.get(t.name)
        if fn is None:
            raise ValueError("unregistered function symbol %r" % t.name)
        return fn(*[eval_term(a, env) for a in t.args])
    raise TypeError(t)


# ---------------------------------------------------------------------------
# Goedel coding

_T_VAR = 0
_T_NUM = 1
_T_SUC = 2
_T_ADD = 3
_T_MUL = 4
_T_PAIR = 5
_T_P0 = 6
_T_P1 = 7
_T_FN = 8
_F_EQ = 20
_F_IMP = 21
_F_ALL = 22


def _name_code(name: str) -> int:
    return int.from_bytes(("." + name).encode(), "big")


def _name_decode(c: Nat) -> Optional[str]:
    try:
        b = vint(c).to_bytes((vint(c).bit_length() + 7) // 8, "big")
    except (OverflowError, ValueError):
        return None
    if not b.startswith(b"."):
        return None
    try:
        return b[1:].decode()
    except UnicodeDecodeError:
        return None


def godel_term(t: ATerm) -> Nat:
    if isinstance(t, TVar):
        return vpair(_T_VAR, _name_code(t.name))
    if isinstance(t, Num):
        return vpair(_T_NUM, t.n)
    if isinstance(t, SucT):
        return vpair(_T_SUC, godel_term(t.t))
    if isinstance(t, Add):
        return vpair(_T_ADD, vpair(godel_term(t.l), godel_term(t.r)))
    if isinstance(t, Mul):
        return vpair(_T_MUL, vpair(godel_term(t.l), godel_term(t.r)))
    if isinstance(t, PairT):
        return vpair(_T_PAIR, vpair(godel_term(t.l), godel_term(t.r)))
    if isinstance(t, Proj0T):
        return vpair(_T_P0, godel_term(t.t))
    if isinstance(t, Proj1T):
        return vpair(_T_P1, godel_term(t.t))
    if isinstance(t, Fn):
        args: Nat = 0
        for a in reversed(t.args):
            args = vpair(godel_term(a), args)
        return vpair(_T_FN, vpair(_name_code(t.name),
                                  vpair(len(t.args), args)))
    raise TypeError(t)


def godel(a) -> Nat:
    if isinstance(a, (TVar, Num, SucT, Add, Mul, PairT, Proj0T, Proj1T, Fn)):
        return godel_term(a)
    if isinstance(a, Eq):
        return vpair(_F_EQ, vpair(godel_term(a.l), godel_term(a.r)))
    if isinstance(a, Imp):
        return vpair(_F_IMP, vpair(godel(a.a), godel(a.b)))
    if isinstance(a, All):
        return vpair(_F_ALL, vpair(_name_code(a.var), godel(a.body)))
    raise TypeError(a)


def dot_imp(ca: Nat, cb: Nat) -> Nat:
    return vpair(_F_IMP, vpair(ca, cb))


def dot_eq(cl: Nat, cr: Nat) -> Nat:
    return vpair(_F_EQ, vpair(cl, cr))


def dot_all(name: str, cb: Nat) -> Nat:
    return vpair(_F_ALL, vpair(_name_code(name), cb))


def ungodel_term(c: Nat) -> Optional[ATerm]:
    tag, rest = vunpair(c)
    if isinstance(tag, PV):
        return None
    if tag == _T_VAR:
        name = _name_decode(rest)
        return TVar(name) if name else None
    if tag == _T_NUM:
        return Num(rest)
    if tag in (_T_SUC, _T_P0, _T_P1):
        sub_t = ungodel_term(rest)
        if sub_t is None:
            return None
        return {_T_SUC: SucT, _T_P0: Proj0T, _T_P1: Proj1T}[tag](sub_t)
    if tag in (_T_ADD, _T_MUL, _T_PAIR):
        cl, cr = vunpair(rest)
        l, r = ungodel_term(cl), ungodel_term(cr)
        if l is None or r is None:
            return None
        return {_T_ADD: Add, _T_MUL: Mul, _T_PAIR: PairT}[tag](l, r)
    if tag == _T_FN:
        cn, rest2 = vunpair(rest)
        name = _name_decode(cn)
        if name is None or name not in FN_ARITY:
            return None
        n, args_c = vunpair(rest2)
        if isinstance(n, PV) or n != FN_ARITY[name] or n > 8:
            return None
        args = []
        for _ in range(n):
            ca, args_c = vunpair(args_c)
            a = ungodel_term(ca)
            if a is None:
                return None
            args.append(a)
        if not veq(args_c, 0):
            return None
        return Fn(name, tuple(args))
    return None


def ungodel(c: Nat):
    """Decode a formula or term code; returns None for non-codes."""
    tag, rest = vunpair(c)
    if isinstance(tag, PV):
        return None
    if tag == _F_EQ:
        cl, cr = vunpair(rest)
        l, r = ungodel_term(cl), ungodel_term(cr)
        if l is None or r is None:
            return None
        return Eq(l, r)
    if tag == _F_IMP:
        ca, cb = vunpair(rest)
        a, b = ungodel(ca), ungodel(cb)
        if isinstance(a, (Eq, Imp, All)) and isinstance(b, (Eq, Imp, All)):
            return Imp(a, b)
        return None
    if tag == _F_ALL:
        cn, cb = vunpair(rest)
        name = _name_decode(cn)
        b = ungodel(cb)
        if name and isinstance(b, (Eq, Imp, All)):
            return All(name, b)
        return None
    return ungodel_term(c)


def sub(c: Nat, x: str, n: Nat) -> Nat:
    """On codes: |A(x)|, n  ->  |A(numeral n)|."""
    a = ungodel(c)
    if not isinstance(a, (Eq, Imp, All)):
        raise ValueError("not a formula code")
    return godel(subst(a, x, Num(n)))


def subt(c: Nat, x: str, s_code: Nat) -> Nat:
    """On codes: |A(x)|, |s|  ->  |A(s)| for a term code |s|."""
    a = ungodel(c)
    if not isinstance(a, (Eq, Imp, All)):
        raise ValueError("not a formula code")
    s = ungodel_term(s_code)
    if s is None:
        raise ValueError("not a term code")
    return godel(subst(a, x, s))


def eq_check(cs: Nat, ct: Nat) -> bool:
    """Whether two closed term codes have equal values."""
    s, t = ungodel_term(cs), ungodel_term(ct)
    if s is None or t is None:
        raise ValueError("invalid term code")
    return veq(eval_term(s), eval_term(t))


# ---------------------------------------------------------------------------
# S-expression parser / printer

class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__("%s at offset %d" % (message, pos))
        self.pos = pos


def _tokenize(text: str):
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()":
            toks.append((ch, i))
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace() and text[j] not in "()":
            j += 1
        toks.append((text[i:j], i))
        i = j
    return toks


class _P:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.text = text

    def peek(self):
        if self.i < len(self.toks):
            return self.toks[self.i]
        return (None, len(self.text))

    def next(self):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of input", tok[1])
        self.i += 1
        return tok

    def expect(self, s):
        tok, pos = self.next()
        if tok != s:
            raise ParseError("expected %r, found %r" % (s, tok), pos)

    def done(self):
        tok, pos = self.peek()
        if tok is not None:
            raise ParseError("trailing input %r" % tok, pos)


_TERM_HEADS = {"s", "+", "*", "pair", "p0", "p1"}
_FORMULA_HEADS = {"=", "imp", "all", "not", "and", "or", "ex", "bot"}


def _parse_term(p: _P) -> ATerm:
    tok, pos = p.next()
    if tok == "(":
        head, hpos = p.next()
        if head == "s":
            t = suc_t(_parse_term(p))
        elif head == "+":
            t = Add(_parse_term(p), _parse_term(p))
        elif head == "*":
            t = Mul(_parse_term(p), _parse_term(p))
        elif head == "pair":
            t = PairT(_parse_term(p), _parse_term(p))
        elif head == "p0":
            t = Proj0T(_parse_term(p))
        elif head == "p1":
            t = Proj1T(_parse_term(p))
        elif head in FN_ARITY:
            t = Fn(head, tuple(_parse_term(p) for _ in range(FN_ARITY[head])))
        else:
            raise ParseError("unknown term head %r" % head, hpos)
        p.expect(")")
        return t
    if tok.isdigit():
        return Num(int(tok))
    if tok == ")" or tok in _FORMULA_HEADS:
        raise ParseError("expected a term, found %r" % tok, pos)
    return TVar(tok)


def _parse_formula(p: _P) -> Formula:
    tok, pos = p.next()
    if tok != "(":
        raise ParseError("expected a formula, found %r" % tok, pos)
    head, hpos = p.next()
    if head == "=":
        f: Formula = Eq(_parse_term(p), _parse_term(p))
    elif head == "imp":
        f = Imp(_parse_formula(p), _parse_formula(p))
    elif head == "all":
        name, npos = p.next()
        if name in "()" or name.isdigit():
            raise ParseError("expected a variable name", npos)
        f = All(name, _parse_formula(p))
    elif head == "not":
        f = neg(_parse_formula(p))
    elif head == "and":
        f = conj(_parse_formula(p), _parse_formula(p))
    elif head == "or":
        f = disj(_parse_formula(p), _parse_formula(p))
    elif head == "ex":
        name, npos = p.next()
        if name in "()" or name.isdigit():
            raise ParseError("expected a variable name", npos)
        f = ex(name, _parse_formula(p))
    elif head == "bot":
        f = bot()
    else:
        raise ParseError("unknown formula head %r" % head, hpos)
    p.expect(")")
    return f


def parse_term(text: str) -> ATerm:
    p = _P(text)
    t = _parse_term(p)
    p.done()
    return t


def parse_formula(text: str) -> Formula:
    p = _P(text)
    f = _parse_formula(p)
    p.done()
    return f


def print_term(t: ATerm) -> str:
    if isinstance(t, TVar):
        return t.name
    if isinstance(t, Num):
        return str(vint(t.n))
    if isinstance(t, SucT):
        return "(s %s)" % print_term(t.t)
    if isinstance(t, Add):
        return "(+ %s %s)" % (print_term(t.l), print_term(t.r))
    if isinstance(t, Mul):
        return "(* %s %s)" % (print_term(t.l), print_term(t.r))
    if isinstance(t, PairT):
        return "(pair %s %s)" % (print_term(t.l), print_term(t.r))
    if isinstance(t, Proj0T):
        return "(p0 %s)" % print_term(t.t)
    if isinstance(t, Proj1T):
        return "(p1 %s)" % print_term(t.t)
    if isinstance(t, Fn):
        return "(%s %s)" % (t.name, " ".join(print_term(a) for a in t.args))
    raise TypeError(t)


def print_formula(a: Formula) -> str:
    if isinstance(a, Eq):
        return "(= %s %s)" % (print_term(a.l), print_term(a.r))
    if isinstance(a, Imp):
        return "(imp %s %s)" % (print_formula(a.a), print_formula(a.b))
    if isinstance(a, All):
        return "(all %s %s)" % (a.var, print_formula(a.body))
    raise TypeError(a)

"""Applicative kernel: programs coded as naturals and fuel-bounded application.

Programs are a small de Bruijn lambda calculus with numerals, pairing,
case analysis on zero, fixed points, and registered host primitives.
Every program has a numeric code; application ``e . m`` decodes ``e``
and runs it on the literal ``m`` under a step budget.

Naturals are represented sparsely: a value is either a Python ``int``
or a ``PV`` node standing for the Cantor pair of two values.  The two
representations denote the same numbers; the sparse form exists because
deeply nested pairs have astronomically many digits when written out.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Callable, Optional, Union

# evaluation, decoding, and pole chases recurse along program structure
if sys.getrecursionlimit() < 100000:
    sys.setrecursionlimit(100000)


# ---------------------------------------------------------------------------
# Cantor pairing on concrete naturals

def pair(x: int, y: int) -> int:
    """Cantor pair <x, y> = (x+y)(x+y+1)/2 + y."""
    if x < 0 or y < 0:
        raise ValueError("pair arguments must be naturals")
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(z: int) -> tuple[int, int]:
    """Inverse of pair; total on naturals."""
    if z < 0:
        raise ValueError("unpair argument must be a natural")
    w = (math.isqrt(8 * z + 1) - 1) // 2
    t = w * (w + 1) // 2
    y = z - t
    x = w - y
    return x, y


def proj0(z: int) -> int:
    return unpair(z)[0]


def proj1(z: int) -> int:
    return unpair(z)[1]


def pair_seq(*xs: int) -> int:
    """Right-associated iterated pairing: <x0, x1, x2> = <x0, <x1, x2>>."""
    if not xs:
        raise ValueError("pair_seq needs at least one element")
    acc = xs[-1]
    for x in reversed(xs[:-1]):
        acc = pair(x, acc)
    return acc


# ---------------------------------------------------------------------------
# Sparse naturals

# Pairs whose concrete value stays below this bound are kept as plain ints.
_SMALL = 1 << 64


class PV:
    """The Cantor pair of two sparse naturals, kept unexpanded."""

    __slots__ = ("a", "b")

    def __init__(self, a: "Nat", b: "Nat"):
        self.a = a
        self.b = b

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, PV)):
            return veq(self, other)
        return NotImplemented

    __hash__ = None  # mixed int/PV equality makes hashing unreliable

    def __repr__(self) -> str:
        return "PV(%r, %r)" % (self.a, self.b)


Nat = Union[int, PV]


def vpair(a: Nat, b: Nat) -> Nat:
    if isinstance(a, int) and isinstance(b, int):
        z = pair(a, b)
        if z < _SMALL:
            return z
    return PV(a, b)


def vunpair(v: Nat) -> tuple[Nat, Nat]:
    if isinstance(v, int):
        return unpair(v)
    return v.a, v.b


def vpair_seq(*xs: Nat) -> Nat:
    acc = xs[-1]
    for x in reversed(xs[:-1]):
        acc = vpair(x, acc)
    return acc


def vint(v: Nat) -> int:
    """Concrete value of a sparse natural.  May be extremely large."""
    if isinstance(v, int):
        return v
    return pair(vint(v.a), vint(v.b))


def veq(u: Nat, v: Nat) -> bool:
    if isinstance(u, int) and isinstance(v, int):
        return u == v
    if isinstance(u, int):
        u, v = v, u
    # u is a PV; unpair the other side (cheap either way) and compare parts
    va, vb = vunpair(v)
    return veq(u.a, va) and veq(u.b, vb)


def vle(v: Nat, n: int) -> bool:
    """Whether v <= n, without expanding large pairs."""
    if isinstance(v, int):
        return v <= n
    # pair(a, b) >= max(a, b), so both components must already be small
    if not (vle(v.a, n) and vle(v.b, n)):
        return False
    return vint(v) <= n


def vbits(v: Nat) -> int:
    """Upper estimate of the bit length of v."""
    if isinstance(v, int):
        return v.bit_length()
    return 2 * max(vbits(v.a), vbits(v.b)) + 2


# ---------------------------------------------------------------------------
# Programs

@dataclass(frozen=True)
class Var:
    index: int  # de Bruijn index, 0 = innermost binder


@dataclass(frozen=True)
class Lam:
    body: "Program"


@dataclass(frozen=True)
class App:
    fn: "Program"
    arg: "Program"


@dataclass(frozen=True)
class Lit:
    n: Nat


@dataclass(frozen=True)
class Suc:
    p: "Program"


@dataclass(frozen=True)
class Pred:
    p: "Program"


@dataclass(frozen=True)
class IfZ:
    scrutinee: "Program"
    zero: "Program"
    succ: "Program"


@dataclass(frozen=True)
class Pair:
    l: "Program"
    r: "Program"


@dataclass(frozen=True)
class Proj0:
    p: "Program"


@dataclass(frozen=True)
class Proj1:
    p: "Program"


@dataclass(frozen=True)
class Fix:
    body: "Program"  # Var 0 in the body is the fixed point itself


@dataclass(frozen=True)
class Prim:
    pid: int
    arg: "Program"


@dataclass(frozen=True)
class Stuck:
    pass


Program = Union[Var, Lam, App, Lit, Suc, Pred, IfZ, Pair, Proj0, Proj1,
                Fix, Prim, Stuck]

_TAG_VAR = 0
_TAG_LAM = 1
_TAG_APP = 2
_TAG_LIT = 3
_TAG_SUC = 4
_TAG_PRED = 5
_TAG_IFZ = 6
_TAG_PAIR = 7
_TAG_PROJ0 = 8
_TAG_PROJ1 = 9
_TAG_FIX = 10
_TAG_PRIM = 11
_TAG_STUCK = 12


def encode(p: Program) -> Nat:
    if isinstance(p, Var):
        return vpair(_TAG_VAR, p.index)
    if isinstance(p, Lam):
        return vpair(_TAG_LAM, encode(p.body))
    if isinstance(p, App):
        return vpair(_TAG_APP, vpair(encode(p.fn), encode(p.arg)))
    if isinstance(p, Lit):
        return vpair(_TAG_LIT, p.n)
    if isinstance(p, Suc):
        return vpair(_TAG_SUC, encode(p.p))
    if isinstance(p, Pred):
        return vpair(_TAG_PRED, encode(p.p))
    if isinstance(p, IfZ):
        return vpair(_TAG_IFZ, vpair(encode(p.scrutinee),
                                     vpair(encode(p.zero), encode(p.succ))))
    if isinstance(p, Pair):
        return vpair(_TAG_PAIR, vpair(encode(p.l), encode(p.r)))
    if isinstance(p, Proj0):
        return vpair(_TAG_PROJ0, encode(p.p))
    if isinstance(p, Proj1):
        return vpair(_TAG_PROJ1, encode(p.p))
    if isinstance(p, Fix):
        return vpair(_TAG_FIX, encode(p.body))
    if isinstance(p, Prim):
        return vpair(_TAG_PRIM, vpair(p.pid, encode(p.arg)))
    if isinstance(p, Stuck):
        return vpair(_TAG_STUCK, 0)
    raise TypeError("not a Program: %r" % (p,))


def decode(v: Nat) -> Program:
    """Total decoding; codes outside the image become Stuck."""
    tag, rest = vunpair(v)
    if isinstance(tag, PV) or tag > _TAG_STUCK:
        return Stuck()
    if tag == _TAG_VAR:
        return Var(vint(rest))
    if tag == _TAG_LAM:
        return Lam(decode(rest))
    if tag == _TAG_APP:
        f, a = vunpair(rest)
        return App(decode(f), decode(a))
    if tag == _TAG_LIT:
        return Lit(rest)
    if tag == _TAG_SUC:
        return Suc(decode(rest))
    if tag == _TAG_PRED:
        return Pred(decode(rest))
    if tag == _TAG_IFZ:
        s, zr = vunpair(rest)
        z, r = vunpair(zr)
        return IfZ(decode(s), decode(z), decode(r))
    if tag == _TAG_PAIR:
        l, r = vunpair(rest)
        return Pair(decode(l), decode(r))
    if tag == _TAG_PROJ0:
        return Proj0(decode(rest))
    if tag == _TAG_PROJ1:
        return Proj1(decode(rest))
    if tag == _TAG_FIX:
        return Fix(decode(rest))
    if tag == _TAG_PRIM:
        pid, a = vunpair(rest)
        if isinstance(pid, PV):
            return Stuck()
        return Prim(pid, decode(a))
    return Stuck()


def subst(p: Program, depth: int, value: Nat) -> Program:
    """Replace Var(depth) by Lit(value); only closed values are inserted."""
    if isinstance(p, Var):
        return Lit(value) if p.index == depth else p
    if isinstance(p, Lam):
        return Lam(subst(p.body, depth + 1, value))
    if isinstance(p, Fix):
        return Fix(subst(p.body, depth + 1, value))
    if isinstance(p, App):
        return App(subst(p.fn, depth, value), subst(p.arg, depth, value))
    if isinstance(p, Suc):
        return Suc(subst(p.p, depth, value))
    if isinstance(p, Pred):
        return Pred(subst(p.p, depth, value))
    if isinstance(p, IfZ):
        return IfZ(subst(p.scrutinee, depth, value),
                   subst(p.zero, depth, value),
                   subst(p.succ, depth, value))
    if isinstance(p, Pair):
        return Pair(subst(p.l, depth, value), subst(p.r, depth, value))
    if isinstance(p, Proj0):
        return Proj0(subst(p.p, depth, value))
    if isinstance(p, Proj1):
        return Proj1(subst(p.p, depth, value))
    if isinstance(p, Prim):
        return Prim(p.pid, subst(p.arg, depth, value))
    return p  # Lit, Stuck


# ---------------------------------------------------------------------------
# Evaluation

@dataclass(frozen=True)
class Value:
    n: Nat
    fuel_used: int = 0


@dataclass(frozen=True)
class Diverged:
    reason: str  # "fuel-exhausted" | "stuck"


EvalResult = Union[Value, Diverged]


class OutOfFuel(Exception):
    pass


class StuckError(Exception):
    pass


class Kernel:
    """Holds the primitive registry.  Evaluation itself is pure."""

    def __init__(self) -> None:
        self._prims: dict[int, tuple[Callable[[Nat], Nat],
                                     Callable[[Nat], int]]] = {}

    def register_primitive(self, pid: int, fn: Callable[[Nat], Nat],
                           cost: Optional[Callable[[Nat], int]] = None) -> int:
        if pid in self._prims:
            raise ValueError("primitive id %d already registered" % pid)
        self._prims[pid] = (fn, cost or (lambda _v: 1))
        return pid

    def _eval(self, p: Program, fuel: list[int]) -> Nat:
        fuel[0] -= 1
        if fuel[0] < 0:
            raise OutOfFuel()
        if isinstance(p, Lit):
            return p.n
        if isinstance(p, Lam) or isinstance(p, Fix):
            return encode(p)
        if isinstance(p, Var) or isinstance(p, Stuck):
            raise StuckError()
        if isinstance(p, Suc):
            return vint(self._eval(p.p, fuel)) + 1
        if isinstance(p, Pred):
            v = vint(self._eval(p.p, fuel))
            return v - 1 if v > 0 else 0
        if isinstance(p, IfZ):
            v = self._eval(p.scrutinee, fuel)
            if veq(v, 0):
                return self._eval(p.zero, fuel)
            return self._eval(p.succ, fuel)
        if isinstance(p, Pair):
            l = self._eval(p.l, fuel)
            r = self._eval(p.r, fuel)
            return vpair(l, r)
        if isinstance(p, Proj0):
            return vunpair(self._eval(p.p, fuel))[0]
        if isinstance(p, Proj1):
            return vunpair(self._eval(p.p, fuel))[1]
        if isinstance(p, App):
            vf = self._eval(p.fn, fuel)
            va = self._eval(p.arg, fuel)
            return self._apply_value(vf, va, fuel)
        if isinstance(p, Prim):
            va = self._eval(p.arg, fuel)
            entry = self._prims.get(p.pid)
            if entry is None:
                raise StuckError()
            fn, cost = entry
            fuel[0] -= cost(va)
            if fuel[0] < 0:
                raise OutOfFuel()
            return fn(va)
        raise StuckError()

    def _apply_value(self, vf: Nat, va: Nat, fuel: list[int]) -> Nat:
        while True:
            fuel[0] -= 1
            if fuel[0] < 0:
                raise OutOfFuel()
            prog = decode(vf)
            if isinstance(prog, Lam):
                return self._eval(subst(prog.body, 0, va), fuel)
            if isinstance(prog, Fix):
                # one-step unfolding: the bound variable is the fixed point
                vf = self._eval(subst(prog.body, 0, vf), fuel)
                continue
            raise StuckError()

    def apply(self, e: Nat, m: Nat, fuel: int) -> EvalResult:
        """Kleene application e . m under a step budget."""
        if fuel <= 0:
            raise ValueError("fuel must be positive")
        cell = [fuel]
        try:
            v = self._apply_value(e, m, cell)
            return Value(v, fuel - cell[0])
        except OutOfFuel:
            return Diverged("fuel-exhausted")
        except StuckError:
            return Diverged("stuck")

    def run(self, p: Program, fuel: int) -> EvalResult:
        """Evaluate a closed program outright."""
        if fuel <= 0:
            raise ValueError("fuel must be positive")
        cell = [fuel]
        try:
            v = self._eval(p, cell)
            return Value(v, fuel - cell[0])
        except OutOfFuel:
            return Diverged("fuel-exhausted")
        except StuckError:
            return Diverged("stuck")


# ---------------------------------------------------------------------------
# Program text format (s-expressions)

def print_program(p: Program) -> str:
    if isinstance(p, Var):
        return "(var %d)" % p.index
    if isinstance(p, Lam):
        return "(lam %s)" % print_program(p.body)
    if isinstance(p, App):
        return "(app %s %s)" % (print_program(p.fn), print_program(p.arg))
    if isinstance(p, Lit):
        return "(lit %d)" % vint(p.n)
    if isinstance(p, Suc):
        return "(suc %s)" % print_program(p.p)
    if isinstance(p, Pred):
        return "(pred %s)" % print_program(p.p)
    if isinstance(p, IfZ):
        return "(ifz %s %s %s)" % (print_program(p.scrutinee),
                                   print_program(p.zero),
                                   print_program(p.succ))
    if isinstance(p, Pair):
        return "(pair %s %s)" % (print_program(p.l), print_program(p.r))
    if isinstance(p, Proj0):
        return "(p0 %s)" % print_program(p.p)
    if isinstance(p, Proj1):
        return "(p1 %s)" % print_program(p.p)
    if isinstance(p, Fix):
        return "(fix %s)" % print_program(p.body)
    if isinstance(p, Prim):
        return "(prim %d %s)" % (p.pid, print_program(p.arg))
    return "(stuck)"

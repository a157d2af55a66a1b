import math

import hypothesis as hyp
from hypothesis import strategies as st

from realisability.vm import (
    App, Diverged, Fix, IfZ, Kernel, Lam, Lit, Pair, Pred, Prim, Proj0,
    Proj1, Stuck, Suc, Value, Var, decode, encode, pair, pair_seq, proj0,
    proj1, unpair, veq, vint, vle, vpair, vunpair,
)


def cantor(x, y):
    # independent oracle: the closed formula, evaluated separately
    return (x + y) * (x + y + 1) // 2 + y


def test_pair_zero():
    assert pair(0, 0) == 0


def test_pair_matches_closed_formula():
    for x in range(0, 200, 7):
        for y in range(0, 200, 11):
            assert pair(x, y) == cantor(x, y)


def test_projection_laws():
    assert proj0(pair(7, 9)) == 7
    assert proj1(pair(7, 9)) == 9


def test_iterated_pairing_right_associates():
    x, y, z = 1, 2, 3
    assert pair_seq(x, y, z) == pair(x, pair(y, z))
    assert pair(x, proj1(pair(0, pair(y, z)))) == pair_seq(1, 2, 3)


def test_unpair_total_inverse():
    for z in range(5000):
        x, y = unpair(z)
        assert pair(x, y) == z


@hyp.given(st.integers(0, 10**9), st.integers(0, 10**9))
def test_pair_bijection_property(x, y):
    assert unpair(pair(x, y)) == (x, y)


def test_sparse_values_agree_with_concrete():
    v = vpair(vpair(3, 4), vpair(5, vpair(6, 7)))
    assert vint(v) == pair(pair(3, 4), pair(5, pair(6, 7)))
    a, b = vunpair(v)
    assert veq(a, pair(3, 4))
    assert vle(v, 10) is False
    assert vle(vpair(1, 2), 100) is True


def test_sparse_equality_mixed_representation():
    big = vpair(2**80, 3)
    assert veq(big, pair(2**80, 3))
    assert veq(pair(2**80, 3), big)
    assert not veq(big, vpair(2**80, 4))


# ---------------------------------------------------------------------------
# programs and evaluation

K = Kernel()
IDENT = encode(Lam(Var(0)))


def test_identity_program():
    r = K.apply(IDENT, 5, 1000)
    assert isinstance(r, Value) and veq(r.n, 5)


def test_encode_decode_roundtrip_examples():
    progs = [
        Lam(Var(0)),
        Lam(Lam(Pair(Proj0(Var(0)), Var(1)))),
        Fix(Lam(IfZ(Var(0), Lit(0), App(Var(1), Pred(Var(0)))))),
        Prim(3, Suc(Lit(7))),
        Stuck(),
    ]
    for p in progs:
        assert decode(encode(p)) == p


def test_decode_total_on_arbitrary_codes():
    for n in range(2000):
        decode(n)  # must not raise


def test_invalid_code_is_stuck():
    bad = vpair(99, 5)
    assert decode(bad) == Stuck()
    r = K.apply(bad, 0, 100)
    assert r == Diverged("stuck")


def test_continuation_constant_shape():
    # k_pi = \a.\b.<(b)0, a>
    k_pi = encode(Lam(Lam(Pair(Proj0(Var(0)), Var(1)))))
    r1 = K.apply(k_pi, 4, 10**4)
    assert isinstance(r1, Value)
    b = pair(11, 13)
    r2 = K.apply(r1.n, b, 10**4)
    assert isinstance(r2, Value)
    assert veq(r2.n, pair(11, 4))


def test_fix_divergence():
    loop = encode(Fix(Var(0)))  # unfolds to itself forever
    r = K.apply(loop, 0, 10**4)
    assert r == Diverged("fuel-exhausted")


def test_fix_computes_recursion():
    # add-by-recursion: f(n) = if n=0 then 100 else f(n-1)+1
    f = Fix(Lam(IfZ(Var(0), Lit(100), Suc(App(Var(1), Pred(Var(0)))))))
    r = K.apply(encode(f), 7, 10**4)
    assert isinstance(r, Value) and veq(r.n, 107)


def test_fixpoint_unfolding_law_concrete():
    f = Fix(Lam(IfZ(Var(0), Lit(9), Suc(App(Var(1), Pred(Var(0)))))))
    # one-step unfolding: substitute the fixed point's own code for the
    # bound variable
    from realisability.vm import subst
    unfolded = subst(f.body, 0, encode(f))
    for n in [0, 1, 5]:
        a = K.apply(encode(f), n, 10**5)
        b = K.apply(encode(unfolded), n, 10**5)
        assert isinstance(a, Value) and isinstance(b, Value)
        assert veq(a.n, b.n)


def test_register_primitive():
    k = Kernel()
    k.register_primitive(1, lambda v: vint(v) * 2)
    r = k.run(Prim(1, Lit(21)), 100)
    assert isinstance(r, Value) and veq(r.n, 42)
    try:
        k.register_primitive(1, lambda v: v)
        assert False, "duplicate id must be rejected"
    except ValueError:
        pass


def test_unregistered_primitive_is_stuck():
    r = K.run(Prim(77, Lit(0)), 100)
    assert r == Diverged("stuck")


# ---------------------------------------------------------------------------
# property tests

programs = st.recursive(
    st.one_of(
        st.builds(Var, st.integers(0, 2)),
        st.builds(Lit, st.integers(0, 50)),
    ),
    lambda ps: st.one_of(
        st.builds(Lam, ps),
        st.builds(App, ps, ps),
        st.builds(Suc, ps),
        st.builds(Pred, ps),
        st.builds(IfZ, ps, ps, ps),
        st.builds(Pair, ps, ps),
        st.builds(Proj0, ps),
        st.builds(Proj1, ps),
        st.builds(Fix, ps),
    ),
    max_leaves=25,
)


@hyp.given(programs)
def test_encode_decode_roundtrip_property(p):
    assert decode(encode(p)) == p


@hyp.given(programs, st.integers(0, 20))
def test_determinism_and_monotonicity(p, m):
    e = encode(p)
    r1 = K.apply(e, m, 300)
    r2 = K.apply(e, m, 300)
    assert r1 == r2
    if isinstance(r1, Value):
        r3 = K.apply(e, m, 10**4)
        assert isinstance(r3, Value) and veq(r3.n, r1.n)

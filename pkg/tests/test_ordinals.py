import itertools
import random

import hypothesis as hyp
import pytest
from hypothesis import strategies as st

from realisability.extraction import check_proof, extract_value
from realisability.ordinals import (
    CnfSum, Eps, GREATER, LESS, EQUAL, LimC, O_ZERO, OrdParseError, SucC,
    ZeroC, ZeroO, add, build_Prog, build_TI, classify, compare, eps,
    fundseq, is_normal, jump_formula, ocode, odecode, olt, omega, omega_pow,
    omega_tower, onat, ordinal_kernel, parse_ord, print_ord,
    ti_formula, ti_proof_template, wo_combinator, wo_realiser,
)
from realisability.poles import Generated, OUT, member
from realisability.semantics import Budget, realises
from realisability.syntax import (
    All, Eq, Fn, Imp, Num, TVar, free_vars, godel, parse_formula,
)
from realisability.vm import Value, veq, vpair

K = ordinal_kernel()
POLE = Generated(frozenset({0, 3, 8}), 64)
B = Budget(fuel=10**6, samples=5, width=20)
A_REFL = parse_formula("(= x x)")
A_CODE = godel(A_REFL)

W = omega()
EPS0 = eps(O_ZERO)


# ---------------------------------------------------------------------------
# Corpus of small notations

def _osize(a):
    if isinstance(a, ZeroO):
        return 1
    if isinstance(a, Eps):
        return 1 + _osize(a.sub)
    return sum(_osize(e) + 1 for e, _c in a.terms)


def small_notations(max_size=4, rounds=4):
    seen = {O_ZERO, onat(1), onat(2), onat(3)}
    for _ in range(rounds):
        batch = list(seen)
        for a in batch:
            cands = [omega_pow(a), add(a, onat(1))]
            try:
                cands.append(eps(a))
            except ValueError:
                pass
            for b in batch:
                cands.append(add(a, b))
            for c in cands:
                if _osize(c) <= max_size:
                    seen.add(c)
    return sorted(seen, key=lambda a: (_osize(a), repr(a)))


CORPUS = small_notations()
LIMITS = [a for a in CORPUS if isinstance(classify(a), LimC)]


def test_corpus_is_normal_and_nontrivial():
    assert len(CORPUS) > 30
    assert W in CORPUS and EPS0 in CORPUS
    for a in CORPUS:
        assert is_normal(a), a


# ---------------------------------------------------------------------------
# Order: two independent oracles.
#
# Oracle 1 rebuilds the comparison from scratch as lexicographic
# comparison of omega-power sums, treating an epsilon atom as the sum
# it abbreviates.  Oracle 2 decides a < b by brute-force descent from b
# through predecessors and fundamental-sequence members; it is only
# tractable on low notations, so it runs on a restricted sub-corpus.

def brute_cmp(a, b):
    ta = [] if isinstance(a, ZeroO) else list(a.terms)
    tb = [] if isinstance(b, ZeroO) else list(b.terms)
    for (e1, c1), (e2, c2) in zip(ta, tb):
        r = _brute_exp(e1, e2)
        if r:
            return r
        if c1 != c2:
            return -1 if c1 < c2 else 1
    if len(ta) != len(tb):
        return -1 if len(ta) < len(tb) else 1
    return 0


def _brute_exp(e1, e2):
    if isinstance(e1, Eps) and isinstance(e2, Eps):
        return brute_cmp(e1.sub, e2.sub)
    if isinstance(e1, Eps):
        return -brute_cmp(e2, CnfSum(((e1, 1),)))
    if isinstance(e2, Eps):
        return brute_cmp(e1, CnfSum(((e2, 1),)))
    return brute_cmp(e1, e2)


def test_compare_matches_independent_comparator():
    table = {-1: LESS, 0: EQUAL, 1: GREATER}
    for a, b in itertools.product(CORPUS, CORPUS):
        assert compare(a, b) == table[brute_cmp(a, b)], (a, b)


def _height(a):
    if isinstance(a, ZeroO):
        return 0
    if isinstance(a, Eps):
        return 99
    return 1 + max(_height(e) for e, _c in a.terms)


def _low(a):
    # epsilon-free, exponents are naturals <= 3, coefficients <= 6:
    # small enough for exhaustive descent with branching 9
    if isinstance(a, ZeroO):
        return True
    if _height(a) > 2:
        return False
    for e, c in a.terms:
        if c > 6:
            return False
        if not isinstance(e, ZeroO) and e.terms[0][1] > 3:
            return False
    return True


LOW = [a for a in CORPUS if _low(a)]

_memo = {}


def naive_leq(a, b):
    """a <= b verified by descent: below a successor means at-or-below
    its predecessor; below a limit means at-or-below some member of its
    fundamental sequence."""
    if a == b:
        return True
    key = (a, b)
    if key in _memo:
        return _memo[key]
    _memo[key] = False  # cycles cannot witness a descent
    k = classify(b)
    if isinstance(k, ZeroC):
        out = False
    elif isinstance(k, SucC):
        out = naive_leq(a, k.pred)
    else:
        out = any(naive_leq(a, fundseq(b, n)) for n in range(9))
    _memo[key] = out
    return out


def test_compare_matches_descent_oracle_on_low_corpus():
    assert len(LOW) > 15
    for a, b in itertools.product(LOW, LOW):
        r = compare(a, b)
        if naive_leq(a, b):
            assert (r == EQUAL) == (a == b)
            assert r in (LESS, EQUAL), (a, b)
        else:
            assert r == GREATER, (a, b)


def test_compare_total_order_properties():
    rng = random.Random(11)
    for _ in range(300):
        a, b, c = (rng.choice(CORPUS) for _ in range(3))
        ab, ba = compare(a, b), compare(b, a)
        assert ab == {LESS: GREATER, GREATER: LESS, EQUAL: EQUAL}[ba]
        assert (ab == EQUAL) == (a == b)
        if ab == LESS and compare(b, c) == LESS:
            assert compare(a, c) == LESS


# ---------------------------------------------------------------------------
# Arithmetic

def test_add_absorption_and_units():
    assert add(onat(1), W) == W
    assert add(W, onat(1)) == CnfSum(((onat(1), 1), (O_ZERO, 1)))
    assert add(onat(2), onat(3)) == onat(5)
    for a in CORPUS[:40]:
        assert add(a, O_ZERO) == a
        assert add(O_ZERO, a) == a


def test_add_associative_and_monotone():
    rng = random.Random(3)
    for _ in range(200):
        a, b, c = (rng.choice(CORPUS) for _ in range(3))
        assert add(add(a, b), c) == add(a, add(b, c))
        if compare(b, c) == LESS:
            assert compare(add(a, b), add(a, c)) == LESS


def test_omega_pow_fixed_points_and_monotone():
    assert omega_pow(O_ZERO) == onat(1)
    assert omega_pow(onat(1)) == W
    assert omega_pow(EPS0) == EPS0
    assert omega_pow(eps(onat(2))) == eps(onat(2))
    rng = random.Random(5)
    for _ in range(200):
        a, b = rng.choice(CORPUS), rng.choice(CORPUS)
        if compare(a, b) == LESS:
            r = compare(omega_pow(a), omega_pow(b))
            assert r in (LESS, EQUAL)  # EQUAL only at epsilon collapses
            if r == EQUAL:
                assert omega_pow(b) == b and isinstance(
                    b.terms[0][0], Eps)


def test_classify_successor_roundtrip():
    for a in CORPUS[:60]:
        s = add(a, onat(1))
        k = classify(s)
        assert isinstance(k, SucC) and k.pred == a


# ---------------------------------------------------------------------------
# Fundamental sequences

def test_fundseq_omega_is_n():
    for n in range(10):
        assert fundseq(W, n) == onat(n)


def test_fundseq_successor_exponent():
    # [w^(a+1)]_n = w^a * n
    rng = random.Random(7)
    for _ in range(200):
        a = rng.choice(CORPUS)
        n = rng.randrange(1, 9)
        p = omega_pow(add(a, onat(1)))
        base = omega_pow(a)
        want = CnfSum(((base.terms[0][0], n),))
        assert fundseq(p, n) == want, (a, n)


def test_fundseq_spot_values():
    w2 = omega_pow(onat(2))
    assert fundseq(w2, 3) == CnfSum(((onat(1), 3),))  # [w^2]_3 = w*3
    assert fundseq(EPS0, 0) == omega_tower(onat(1), 0) == onat(1)
    assert fundseq(EPS0, 2) == omega_pow(W)  # w^w
    assert fundseq(eps(W), 3) == eps(onat(3))
    # tail coefficient peels off: [w*2]_n = w + n
    w2c = CnfSum(((onat(1), 2),))
    assert fundseq(w2c, 4) == add(W, onat(4))


def test_fundseq_eps_tower_identities():
    rng = random.Random(13)
    eps_free = [a for a in CORPUS if not any(
        isinstance(e, Eps) for e, _ in getattr(a, "terms", ()))]
    for _ in range(100):
        n = rng.randrange(0, 5)
        assert fundseq(EPS0, n) == omega_tower(onat(1), n)
        a = rng.choice(eps_free)
        try:
            e_suc = eps(add(a, onat(1)))
        except ValueError:
            continue
        assert fundseq(e_suc, n) == omega_tower(add(eps(a), onat(1)), n)
    # limit index: [eps_lambda]_n = eps_{[lambda]_n}
    for lam in (W, omega_pow(onat(2))):
        for n in range(1, 5):
            assert fundseq(eps(lam), n) == eps(fundseq(lam, n))


def test_fundseq_increasing_and_below():
    for a in LIMITS:
        prev = None
        for n in range(21):
            f = fundseq(a, n)
            assert compare(f, a) == LESS, (a, n)
            if prev is not None and n > 1:
                assert compare(prev, f) == LESS, (a, n)
            prev = f


def test_fundseq_rejects_non_limits():
    with pytest.raises(ValueError):
        fundseq(O_ZERO, 3)
    with pytest.raises(ValueError):
        fundseq(onat(4), 3)


# ---------------------------------------------------------------------------
# Codes and text

def test_ocode_roundtrip():
    for a in CORPUS:
        assert odecode(ocode(a)) == a


def test_odecode_rejects_garbage():
    bad = [vpair(3, 0), vpair(1, 0),
           vpair(1, vpair(vpair(0, 0), 0)),  # zero coefficient
           vpair(2, vpair(2, 0))]            # epsilon-nested index
    for v in bad:
        assert odecode(v) is None
    # non-normal: increasing exponents
    incr = vpair(1, vpair(vpair(0, 1),
                          vpair(vpair(ocode(onat(1)), 1), 0)))
    assert odecode(incr) is None


def test_print_parse_roundtrip():
    for a in CORPUS:
        assert parse_ord(print_ord(a)) == a
    assert print_ord(O_ZERO) == "0"
    assert print_ord(W) == "w"
    assert print_ord(EPS0) == "e[0]"
    assert parse_ord("w^w*2 + w + 3") == add(
        CnfSum(((W, 2),)), add(W, onat(3)))
    with pytest.raises(OrdParseError):
        parse_ord("w^")
    with pytest.raises(OrdParseError):
        parse_ord("q + 1")


# ---------------------------------------------------------------------------
# TI formulas and proof templates

def test_build_ti_shape():
    t = build_TI(A_REFL, W, "x")
    assert isinstance(t, Imp)
    assert free_vars(t) == set()
    prog = build_Prog(A_REFL, "x")
    assert isinstance(prog, All) and prog.var == "oa"
    inst = t.b
    assert inst == Eq(Num(ocode(W)), Num(ocode(W)))


def test_olt_is_an_equation():
    f = olt(Num(ocode(onat(1))), Num(ocode(W)))
    assert isinstance(f, Eq) and isinstance(f.l, Fn)


def test_templates_pass_the_checker():
    z = ti_proof_template("zero", A_REFL, var="x")
    assert check_proof(z) == build_TI(A_REFL, O_ZERO, "x")
    s = ti_proof_template("suc", A_REFL, var="x")
    cs = check_proof(s)
    assert isinstance(cs, All) and cs.var == "oa"
    o, jumped = ti_proof_template("omega", A_REFL, var="x")
    co = check_proof(o)
    assert isinstance(co, All) and free_vars(jumped) == {"oj"}
    lim = ti_proof_template("lim", A_REFL, W, var="x")
    cl = check_proof(lim)
    assert cl.b == build_TI(A_REFL, W, "x")
    with pytest.raises(ValueError):
        ti_proof_template("lim", A_REFL, onat(3), var="x")
    with pytest.raises(ValueError):
        ti_proof_template("up", A_REFL, var="x")


def test_zero_template_is_schematic():
    # the zero template needs no direct proof of A's instances
    a = parse_formula("(imp (= x 0) (= 0 x))")
    p = ti_proof_template("zero", a, var="x")
    assert check_proof(p) == build_TI(a, O_ZERO, "x")


def test_templates_accept_jumped_formulas():
    jumped = jump_formula(A_REFL, "x")
    from realisability.syntax import subst
    j_x = subst(jumped, "oj", TVar("x"))
    p = ti_proof_template("suc", j_x, var="x")
    check_proof(p)


def test_zero_template_realises():
    p = ti_proof_template("zero", A_REFL, var="x")
    e = extract_value(p, K)
    v = realises(e, build_TI(A_REFL, O_ZERO, "x"), POLE, B, K,
                 random.Random(2))
    assert v.verdict.kind != OUT


# ---------------------------------------------------------------------------
# Well-ordering combinators

def _app(code, arg, fuel=10**7):
    r = K.apply(code, arg, fuel)
    assert isinstance(r, Value), r
    return r.n


def test_wo_combinator_names():
    seen = []
    for name in ("k0", "k_suc", "k_omega", "k_lim", "k_eps0",
                 "k_epssuc", "k_eps"):
        c = wo_combinator(name)
        assert not any(veq(c, o) for o in seen)
        seen.append(c)
    with pytest.raises(ValueError):
        wo_combinator("k_up")


def test_k0_clause():
    want = extract_value(ti_proof_template("zero", A_REFL, var="x"), K)
    assert veq(_app(wo_combinator("k0"), A_CODE), want)


def test_ksuc_clause():
    # (k_suc . <e, alpha>) . |A| = i . <step@alpha, e . |A|>
    from realisability.extraction import combinator
    e0 = wo_combinator("k0")
    alpha = ocode(O_ZERO)
    lhs = _app(_app(wo_combinator("k_suc"), vpair(e0, alpha)), A_CODE)
    univ = extract_value(ti_proof_template("suc", A_REFL, var="x"), K)
    step = _app(combinator("s"), vpair(univ, alpha))
    rhs = _app(combinator("i"), vpair(step, _app(e0, A_CODE)))
    assert veq(lhs, rhs)


def test_keps0_is_a_lim_package():
    # k_eps0 . |A| = (k_lim . <seq, eps0>) . |A| where seq iterates
    # k_suc then k_omega along the tower sequence
    lhs = _app(wo_combinator("k_eps0"), A_CODE)
    # independently rebuild: wo_realiser routes eps0 through k_eps
    e = wo_realiser(EPS0, K)
    rhs = _app(e, A_CODE)
    assert veq(lhs, rhs)


def test_wo_realiser_structure_cases():
    # zero is the bare k0 code
    assert veq(wo_realiser(O_ZERO, K), wo_combinator("k0"))
    # successor goes through k_suc
    e1 = wo_realiser(onat(1), K)
    assert veq(e1, _app(wo_combinator("k_suc"),
                        vpair(wo_combinator("k0"), 0)))


ALPHAS = [O_ZERO, onat(1), onat(2), W, CnfSum(((onat(1), 2),)),
          omega_pow(onat(2)), omega_pow(W)]


def test_wo_realisers_realise_ti():
    rng = random.Random(9)
    for alpha in ALPHAS:
        e = wo_realiser(alpha, K)
        r = _app(e, A_CODE)
        goal = build_TI(A_REFL, alpha, "x")
        v = realises(r, goal, POLE, B, K, rng)
        assert v.verdict.kind != OUT, (print_ord(alpha), v)


def test_wo_realisers_epsilon_family():
    rng = random.Random(10)
    for alpha in (EPS0, eps(onat(1)), eps(W), add(W, onat(2))):
        e = wo_realiser(alpha, K)
        r = _app(e, A_CODE)
        v = realises(r, build_TI(A_REFL, alpha, "x"), POLE, B, K, rng)
        assert v.verdict.kind != OUT, print_ord(alpha)


def test_klim_below_branches():
    # peel the packaged realiser apart and drive the bounded-universal
    # responder on both sides of the ordlt test
    from realisability.semantics import certified_realiser
    seq = wo_realiser(W, K)  # any e with the right shape for the pair
    packaged = _app(_app(wo_combinator("k_lim"),
                         vpair(seq, ocode(CnfSum(((onat(1), 2),))))),
                    A_CODE)
    m_pole = 3  # a seed element
    applied = _app(packaged, m_pole)
    _lim_inst, rest = (lambda v: __import__(
        "realisability.vm", fromlist=["vunpair"]).vunpair(v))(applied)
    from realisability.vm import vunpair
    below, _m = vunpair(rest)
    r_lt = certified_realiser(Eq(Num(0), Num(0)), POLE, B, K)
    # beta = omega < omega*2: the responder answers with a direct
    # realiser of TI(A, beta) paired with the tail refuter
    prog_r = certified_realiser(build_Prog(A_REFL, "x"), POLE, B, K)
    q_less = vpair(ocode(W), vpair(r_lt, vpair(prog_r, m_pole)))
    ans = _app(below, q_less)
    direct, tail = vunpair(ans)
    assert member(vpair(direct, tail), POLE, 10**6, K).kind != OUT
    # beta = omega*2 is not below omega*2: the saved refuter of the
    # false bound comes back with a dummy tail
    q_geq = vpair(ocode(CnfSum(((onat(1), 2),))), vpair(r_lt, 0))
    ans2 = vunpair(_app(below, q_geq))
    assert veq(ans2[0], r_lt) and veq(ans2[1], 0)

from fractions import Fraction as F
import random

import mpmath
import pytest
from hypothesis import given, strategies as st

from overrot import PLMap
from overrot.errors import FormatError, PreconditionError
from overrot.kneading import (
    Itinerary,
    compare,
    is_shift_maximal,
    itinerary,
    kneading,
    mt_compare,
    nu_limit,
    nu_prime,
    nu_rho,
    parse_itinerary,
    rho_from_kneading,
)
from overrot.patterns import CyclicPattern, gamma, gamma_prime, realize_p_linear
from oracles import coprime_fractions, rotation_symbols
from corpus import pl_corpus

P = parse_itinerary
TENT = PLMap.from_points([(0, 0), (F(1, 2), 1), (1, 0)])


def test_parse_and_print():
    for text in ["(RLRRC)*", "RLRRLR*", "RL*", "(RC)*", "RLRRL…@5", "RLL...@3"]:
        it = P(text)
        assert P(str(it)) == it
    assert str(P("RLRRL...@5")) == "RLRRL…@5"
    assert P("R(LR)*") == P("(RL)*")  # canonical form
    assert P("(RCRC)*") == P("(RC)*")
    with pytest.raises(FormatError):
        P("RXL*")
    with pytest.raises(FormatError):
        P("RL…@4")


def test_itinerary_tail_kinds():
    assert P("RLR*").tail == "all-R"
    assert P("(RC)*").tail == "periodic"
    assert P("RLR…@3").tail == "truncated"
    assert P("R(LR)*").take(6) == "RLRLRL"


@pytest.mark.parametrize("a,b,sign", [("RLRRLR*", "(RLRRC)*", 1), ("(RLC)*", "(RLRRC)*", 1),
                                      ("(RC)*", "(RC)*", 0), ("RL*", "(RC)*", 1), ("(RC)*", "RLR*", -1)])
def test_compare_examples(a, b, sign):
    assert mt_compare(P(a), P(b)) == sign
    assert mt_compare(P(b), P(a)) == -sign


def test_compare_depth_semantics():
    A, B = P("RLRRL…@5"), P("RLRRC…@5")
    s, decided = compare(A, B, 3)
    assert s == 0 and not decided
    assert compare(P("(RC)*"), P("(RC)*")) == (0, True)
    assert compare(P("RLR…@3"), P("RLR…@3")) == (0, False)
    with pytest.raises(ValueError):
        compare(A, B, 0)


words = st.text(alphabet="LRC", min_size=0, max_size=6)
itins = st.builds(lambda p, c: Itinerary(p, c), words, st.text(alphabet="LRC", min_size=1, max_size=5))


@given(itins, itins, itins)
def test_compare_total_order(a, b, c):
    ab, ba = mt_compare(a, b), mt_compare(b, a)
    assert ab == -ba
    assert (ab == 0) == (a.take(60) == b.take(60))
    if ab >= 0 and mt_compare(b, c) >= 0:
        assert mt_compare(a, c, 200) >= 0


def test_shift_maximal_examples():
    assert is_shift_maximal(P("(RLRRC)*"))
    assert not is_shift_maximal(P("L(RC)*"))
    assert not is_shift_maximal(P("LR*"))
    assert is_shift_maximal(P("(RC)*"))
    assert is_shift_maximal(P("RL*"))


def test_itinerary_examples():
    assert itinerary(TENT, F(1)) == P("RL*")
    assert itinerary(TENT, F(1, 2)).take(1) == "C"
    f = realize_p_linear(gamma(2, 5))
    assert itinerary(f, F(2, 5)).take(3) == "RRC"


def test_kneading_examples():
    assert kneading(realize_p_linear(gamma(2, 5))) == P("(RLRRC)*")
    assert kneading(TENT) == P("RL*")
    assert kneading(realize_p_linear(gamma_prime(1, 2))) == P("RLR*")


def test_evaluable_guard_band():
    from overrot.unimodal import quadratic

    k = kneading(quadratic(2), 20)  # f(c) = c
    assert k.is_truncated and k.prefix == ""
    k = kneading(quadratic(F(3236067977499790, 10 ** 15)), 20)  # near-superstable 2-cycle
    assert k.is_truncated and k.prefix == "R"
    k = kneading(quadratic(4), 20)
    assert k.take(2) == "RL"


@pytest.mark.parametrize("rho,text", [(F(1, 2), "(RC)*"), (F(2, 5), "(RLRRC)*"), (F(1, 3), "(RLC)*")])
def test_nu_examples(rho, text):
    assert nu_rho(rho) == P(text)


def test_nu_matches_rotation_oracle():
    for p, q in coprime_fractions(20):
        assert nu_rho(F(p, q)).take(3 * q) == rotation_symbols(F(p, q), 3 * q)


def test_nu_golden():
    mpmath.mp.dps = 80
    g = (3 - mpmath.sqrt(5)) / 2
    approx = F(int(mpmath.floor(g * 10 ** 70)), 10 ** 70)
    nu = nu_rho(approx, length=200)
    assert nu.is_truncated and nu.prefix.startswith("RLRRL")
    assert nu.prefix == rotation_symbols(g, 200)


def test_nu_rejects():
    for bad in (F(0), F(3, 5), F(-1, 3)):
        with pytest.raises(PreconditionError):
            nu_rho(bad)


@pytest.mark.parametrize("pq,text", [((1, 2), "RLR*"), ((2, 5), "RLRRLR*"), ((1, 3), "RLLR*")])
def test_nu_prime_examples(pq, text):
    assert nu_prime(*pq) == P(text)


def test_nu_prime_is_gamma_prime_kneading():
    for p, q in coprime_fractions(15):
        assert kneading(realize_p_linear(gamma_prime(p, q))) == nu_prime(p, q), (p, q)


def test_nu_monotone_in_rho():
    fr = sorted({F(p, q) for p, q in coprime_fractions(20)})
    nus = [nu_rho(r) for r in fr]
    for i in range(len(fr)):
        for j in range(i + 1, len(fr)):
            assert mt_compare(nus[i], nus[j]) == 1, (fr[i], fr[j])


def test_nu_prime_above_nu():
    for p, q in coprime_fractions(20):
        assert mt_compare(nu_prime(p, q), nu_rho(F(p, q))) == 1


def test_nu_limit_sandwich():
    # nu' <= limit < nu_m for every m < p/q, and limit > nu_{p/q}
    fr = sorted({F(p, q) for p, q in coprime_fractions(20)})
    for p, q in coprime_fractions(20):
        L = nu_limit(p, q)
        assert mt_compare(L, nu_prime(p, q)) >= 0
        assert mt_compare(L, nu_rho(F(p, q))) == 1
        for m in fr:
            if m < F(p, q):
                assert mt_compare(nu_rho(m), L) == 1, (m, p, q)


def test_nu_limit_examples():
    assert nu_limit(1, 3) == P("RL(LRR)*")
    assert nu_limit(1, 2) == P("RLR*")


def test_nu_limit_is_limit_of_rotation_codings():
    for p, q in coprime_fractions(12):
        for k in (10 ** 4, 10 ** 6):
            m = F(p, q) - F(1, k * q)
            assert nu_rho(m, length=3 * q + 3).prefix == nu_limit(p, q).take(3 * q + 3)


def test_kneading_bridge():
    for p, q in coprime_fractions(20):
        assert kneading(realize_p_linear(gamma(p, q))) == nu_rho(F(p, q)), (p, q)


def test_rho_from_kneading_endpoints():
    for p, q in coprime_fractions(20):
        for K in (nu_rho(F(p, q)), nu_prime(p, q)):
            r = rho_from_kneading(K)
            assert r.exact and r.value == F(p, q), (p, q, str(K))


@pytest.mark.parametrize("text,value", [("(RLRRC)*", F(2, 5)), ("RLRRLR*", F(2, 5)), ("RL*", 0),
                                        ("(RC)*", F(1, 2)), ("RLR*", F(1, 2))])
def test_rho_from_kneading_examples(text, value):
    r = rho_from_kneading(P(text))
    assert r.exact and r.value == value


def test_rho_from_kneading_truncated_brackets():
    mpmath.mp.dps = 60
    g = (3 - mpmath.sqrt(5)) / 2
    approx = F(int(mpmath.floor(g * 10 ** 50)), 10 ** 50)
    r = rho_from_kneading(nu_rho(approx, length=300), tolerance=F(1, 10 ** 4))
    assert not r.exact
    assert r.lo <= approx <= r.hi
    assert r.hi - r.lo <= F(1, 10 ** 4)


def test_upper_rule_prime_leaves_gap():
    f = realize_p_linear(CyclicPattern((2, 4, 6, 5, 3, 1)))
    K = kneading(f, 200)
    exact = rho_from_kneading(K)
    assert exact.exact and exact.value == F(1, 3)
    gap = rho_from_kneading(K, upper="prime", depth=64)
    assert not gap.exact and gap.lo <= F(1, 3) <= gap.hi


def test_point_order_matches_itinerary_order():
    rng = random.Random(11)
    corpus = pl_corpus()
    checked = 0
    while checked < 200:
        _, f = rng.choice(corpus)
        pts = set(f.xs)
        for x in list(pts):
            pts.update(f.preimages(x))
        x, y = sorted(rng.sample(sorted(pts), 2), reverse=True)
        ix, iy = itinerary(f, x, 400), itinerary(f, y, 400)
        if ix.is_truncated or iy.is_truncated or ix == iy:
            continue
        assert mt_compare(ix, iy) >= 0, (f, x, y)
        checked += 1


def test_roundtrip_with_markov():
    from overrot.unimodal import rho_exact_markov

    for name, f in pl_corpus():
        assert rho_from_kneading(kneading(f, 200)).value == rho_exact_markov(f).value, name

from fractions import Fraction as F
import random

import pytest
from hypothesis import given, strategies as st

from overrot import PLMap
from overrot.errors import AcyclicGraphError, PreconditionError
from overrot.graph import (
    closed_walks,
    loop_orbit,
    loop_orp,
    min_mean_cycle,
    rho_exact_markov,
    simple_cycles_brute,
    transition_graph,
)
from overrot.patterns import CyclicPattern, gamma, gamma_prime, is_overtwist, over_rotation_pair, realize_p_linear
from oracles import coprime_fractions, cycles_of_period, divergent, min_mean_bruteforce, rise_fall


def graph_of(P):
    f = realize_p_linear(P)
    a = f.fixed_point()
    ap = f.a_prime()
    return f, transition_graph(f, {a} | ({ap} if ap is not None else set()))


def test_gamma_third_graph():
    f, G = graph_of(gamma(1, 3))
    assert G.vertices == ((0, F(1, 9)), (F(1, 9), F(1, 3)), (F(1, 3), F(4, 9)), (F(4, 9), F(2, 3)))
    assert set(G.arcs) == {(0, 2), (1, 3), (2, 3), (3, 0), (3, 1), (3, 2)}
    assert {e for e in G.arcs if G.cross[e]} == {(3, 0), (3, 1), (3, 2)}
    assert G.dump().splitlines()[0] == "0 2 0 0"


def test_flip_graph():
    f, G = graph_of(gamma(1, 2))
    assert len(G.vertices) == 2
    assert set(G.arcs) == {(0, 1), (1, 0)}
    assert G.cross[0, 1] == 0 and G.cross[1, 0] == 1
    assert min_mean_cycle(G).value == F(1, 2)


def test_self_loop_graph():
    f = PLMap.from_points([(0, 0), (1, 1)])
    G = transition_graph(f, {F(1)}, a=1)
    assert G.arcs == ((0, 0),)
    assert min_mean_cycle(G).value == 0


def test_missing_fixed_point():
    f = realize_p_linear(gamma(1, 3))
    with pytest.raises(PreconditionError):
        transition_graph(f, {F(1, 9)})
    with pytest.raises(PreconditionError):
        transition_graph(f, (), a=F(1, 2))


def test_acyclic():
    f = PLMap.from_points([(0, 0), (1, 0)])
    G = transition_graph(f, {F(0)})
    with pytest.raises(AcyclicGraphError):
        min_mean_cycle(G)


def test_gamma_third_min_mean_and_witness():
    f, G = graph_of(gamma(1, 3))
    r = min_mean_cycle(G)
    assert r.exact and r.value == F(1, 3)
    cyc = list(r.witness)
    assert G.cycle_mean(cyc) == F(1, 3)
    # the only 1/3 cycle is v1 -> v3 -> v4
    k = cyc.index(0)
    assert cyc[k:] + cyc[:k] == [0, 2, 3]


def _check_against_brute(G):
    for kind in ("cross", "right"):
        r = min_mean_cycle(G, kind)
        w = G.weight(kind)
        assert r.value == min_mean_bruteforce(len(G.vertices), G.arcs, w)
        # witness re-evaluates and is a genuine cycle
        cyc = list(r.witness)
        arcs = set(G.arcs)
        assert all((cyc[t], cyc[(t + 1) % len(cyc)]) in arcs for t in range(len(cyc)))
        assert G.cycle_mean(cyc, kind) == r.value


@pytest.mark.parametrize("n", range(2, 7))
def test_karp_matches_networkx(n):
    for im in cycles_of_period(n):
        if not divergent(im):
            _check_against_brute(graph_of(CyclicPattern(im))[1])


def test_simple_cycles_agree_with_networkx():
    import networkx as nx

    f, G = graph_of(gamma(3, 8))
    ours = sorted(tuple(c) for c in simple_cycles_brute(G))
    D = nx.DiGraph(list(G.arcs))
    theirs = []
    for c in nx.simple_cycles(D):
        k = c.index(min(c))
        theirs.append(tuple(c[k:] + c[:k]))
    assert ours == sorted(theirs)


@pytest.mark.parametrize("signs,pair,prim", [((0, 1, 0), (1, 3), True), ((0, 1), (1, 2), True),
                                             ((0, 1, 0, 1), (2, 4), False), ((0, 0, 1, 1, 0, 1), (2, 6), True)])
def test_loop_orp_examples(signs, pair, prim):
    orp, p = loop_orp(signs)
    assert orp.as_tuple() == pair and p is prim


def test_loop_orp_rejects():
    with pytest.raises(PreconditionError):
        loop_orp((1,))
    with pytest.raises(PreconditionError):
        loop_orp((0, 0))
    with pytest.raises(ValueError):
        loop_orp((0, 2))


@given(st.lists(st.integers(0, 1), min_size=2, max_size=30))
def test_loop_orp_even_changes(signs):
    if len(set(signs)) == 1:
        return
    orp, _ = loop_orp(signs)
    assert orp.period == len(signs)
    assert 2 * orp.crossings == sum(signs[t] != signs[(t + 1) % len(signs)] for t in range(len(signs)))


def test_loop_orbit_realizes_loops():
    f, G = graph_of(gamma(2, 5))
    for length in range(1, 7):
        for walk in closed_walks(G, length):
            try:
                orb = loop_orbit(f, G, walk)
            except PreconditionError:
                continue
            for t, x in enumerate(orb):
                u, v = G.vertices[walk[t]]
                assert u <= x <= v


def test_markov_examples():
    assert rho_exact_markov(realize_p_linear(gamma(2, 5))).value == F(2, 5)
    assert rho_exact_markov(PLMap.from_points([(0, 0), (F(1, 2), 1), (1, 0)])).value == 0
    assert rho_exact_markov(realize_p_linear(gamma_prime(1, 2))).value == F(1, 2)


def test_markov_on_gammas():
    for p, q in coprime_fractions(20):
        r = rho_exact_markov(realize_p_linear(gamma(p, q)))
        assert r.exact and r.value == F(p, q)


def test_markov_on_gamma_primes():
    for p, q in coprime_fractions(12):
        r = rho_exact_markov(realize_p_linear(gamma_prime(p, q)))
        assert r.exact and r.value == F(p, q)


def _convergent(nmax):
    for n in range(2, nmax + 1):
        for im in cycles_of_period(n):
            if not divergent(im):
                yield CyclicPattern(im)


def test_cross_minimum_bounded_by_pattern_rho():
    for P in _convergent(8):
        f, G = graph_of(P)
        c = min_mean_cycle(G, "cross").value
        rho = over_rotation_pair(P).rho()
        assert c <= rho
        if is_overtwist(P, "crossing"):
            assert c == rho, P


def test_weight_conventions_agree_on_max_unimodal_patterns():
    seen = 0
    for P in _convergent(8):
        if not rise_fall(P.images):
            continue
        f, G = graph_of(P)
        assert min_mean_cycle(G, "cross").value == min_mean_cycle(G, "right").value, P
        seen += 1
    assert seen >= 30


@pytest.mark.xfail(strict=True, reason="out-of-right weights overcount right->right arcs: on [3,1,2] the cross "
                                       "minimum is 1/3 but every cycle has right-weight mean >= 1/2")
def test_weight_conventions_agree_on_all_convergent_patterns():
    for P in _convergent(8):
        f, G = graph_of(P)
        assert min_mean_cycle(G, "cross").value == min_mean_cycle(G, "right").value, P


def test_refinement_invariance():
    # preimages of cut points keep the partition Markov, so they are legal refinements
    rng = random.Random(7)
    pats = list(_convergent(7))
    for P in rng.sample(pats, 60):
        f, G = graph_of(P)
        base = min_mean_cycle(G).value
        cuts = sorted({x for v in G.vertices for x in v})
        extra = set()
        for c in rng.sample(cuts, min(3, len(cuts))):
            extra.update(f.preimages(c))
        H = transition_graph(f, set(cuts) | extra, a=G.a)
        assert len(H.vertices) >= len(G.vertices)
        assert min_mean_cycle(H).value == base

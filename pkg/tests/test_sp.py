import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import bundle, path, sympy_taus, cycle
from planar_resistance import (
    LEAF,
    OPEN,
    MarkedGraph,
    MarkedSP,
    double,
    dual,
    halve,
    is_proper,
    is_simple,
    k_duplicate,
    k_subdivide,
    marked_sum,
    materialize,
    parallel,
    parse_term,
    random_term,
    series,
    simplify,
    single_edge,
    tau,
    tau_bruteforce,
    tau_contract,
    tau_delete,
    term_is_simple,
    zeta_graph,
    zeta_sp,
)

TRIANGLE = series(LEAF, LEAF)  # H = path of two edges; G is C3
PAIR = LEAF  # H = one edge; G is two parallel edges
seeds = st.integers(min_value=0, max_value=2**32)


def term_from(seed, max_leaves=12):
    return random_term(random.Random(seed), max_leaves)


def shuffled(g: MarkedSP, rnd: random.Random) -> MarkedSP:
    if not g.children:
        return g
    kids = [shuffled(c, rnd) for c in g.children]
    rnd.shuffle(kids)
    return MarkedSP(g.kind, tuple(kids))


def test_single_edge():
    g = single_edge()
    assert g is OPEN
    m = materialize(g)
    assert (m.n, m.edges, m.marked) == (2, ((0, 1),), 0)
    assert zeta_sp(g) == 0
    assert not g.is_proper
    assert not is_proper(m)


def test_k_duplicate_examples():
    three = k_duplicate(single_edge(), 2)
    m = materialize(three)
    assert zeta_sp(three) == 2
    assert (tau_delete(m), tau_contract(m)) == (2, 1)
    assert m.n_edges == 3 and tau_bruteforce(m) == 3

    assert k_duplicate(TRIANGLE, 0) is TRIANGLE
    grown = k_duplicate(TRIANGLE, 1)
    assert zeta_sp(grown) == Fraction(3, 2)
    assert zeta_graph(materialize(grown)) == Fraction(3, 2)


def test_k_subdivide_examples():
    tri = k_subdivide(PAIR, 1)
    m = materialize(tri)
    assert zeta_sp(tri) == Fraction(1, 2)
    assert m.n == 3 and m.n_edges == 3
    assert (tau_delete(m), tau_contract(m)) == (1, 2)

    p2 = k_subdivide(single_edge(), 1)
    assert zeta_sp(p2) == 0
    assert not is_proper(materialize(p2))
    assert materialize(p2).n == 3

    g = k_subdivide(parallel(LEAF, LEAF, LEAF), 2)
    assert zeta_sp(g) == Fraction(3, 7)
    assert zeta_graph(materialize(g)) == Fraction(3, 7)


def test_negative_k_rejected():
    with pytest.raises(ValueError):
        k_duplicate(LEAF, -1)
    with pytest.raises(ValueError):
        k_subdivide(LEAF, -1)


def test_marked_sum_examples(rng):
    s = marked_sum(TRIANGLE, TRIANGLE)
    m = materialize(s)
    assert zeta_sp(s) == 1 and zeta_graph(m) == 1
    assert (m.n, m.n_edges) == (4, 5)
    assert m.n_edges == 3 + 3 - 1

    for _ in range(20):
        g = random_term(rng, 10)
        assert zeta_graph(materialize(marked_sum(g, PAIR))) == zeta_sp(g) + 1


def test_marked_sum_rejects_improper():
    with pytest.raises(ValueError):
        marked_sum(TRIANGLE, OPEN)
    with pytest.raises(ValueError):
        marked_sum()


def test_dual_examples(rng):
    d = dual(TRIANGLE)
    assert d == parallel(LEAF, LEAF)
    assert zeta_sp(d) == 2 and zeta_graph(materialize(d)) == 2
    for _ in range(20):
        g = random_term(rng, 12)
        assert dual(dual(g)) == g
        assert tau(materialize(dual(g))) == tau(materialize(g))


def test_dual_rejects_improper():
    with pytest.raises(ValueError):
        dual(OPEN)
    with pytest.raises(ValueError):
        dual(series(LEAF, OPEN))


def test_simplify_pair():
    s = simplify(PAIR)
    m = materialize(s)
    assert (m.n, m.n_edges) == (4, 5)
    assert m.n_edges == 4 * (2 - 1) + 1
    assert is_simple(m) and is_proper(m)
    assert zeta_graph(m) == 1
    assert zeta_sp(simplify(s)) == 1


def test_double_and_halve_scale_zeta():
    g = parse_term("S(P(L,L,L),L,L)")
    assert zeta_sp(double(g)) == 2 * zeta_sp(g)
    assert zeta_sp(halve(g)) == zeta_sp(g) / 2
    with pytest.raises(ValueError):
        simplify(OPEN)


def test_doubling_identity_examples(rng):
    for _ in range(30):
        g = random_term(rng, 8)
        m, md = materialize(g), materialize(double(g))
        assert tau_delete(md) == 2 ** (m.n - 1) * tau_delete(m)
        assert tau_contract(md) == 2 ** (m.n - 2) * tau_contract(m)


def test_materialize_examples(rng):
    m = materialize(TRIANGLE)
    assert m.n == 3 and m.n_edges == 3
    assert m.edges[-1] == (0, 1) and m.marked == 2
    for _ in range(20):
        g = random_term(rng, 15)
        m = materialize(g)
        assert m.n_edges == g.leaves + 1
        assert m.n == g.n_vertices
        assert m.faces() == m.n_edges - m.n + 2
        assert materialize(g) == m  # deterministic numbering


def test_is_simple_is_proper():
    assert not is_simple(bundle(2)) and is_proper(bundle(2))
    assert is_simple(path(3)) and not is_proper(path(3))
    assert is_simple(cycle(5)) and is_proper(cycle(5))


@pytest.mark.parametrize(
    "text, zeta",
    [("P(L,L,L)", Fraction(3)), ("S(L,L)", Fraction(1, 2)), ("S(P(L,L,L),L,L)", Fraction(3, 7))],
)
def test_zeta_examples(text, zeta):
    g = parse_term(text)
    assert str(g) == text
    assert zeta_sp(g) == zeta
    t, d, c = sympy_taus(materialize(g))
    assert Fraction(d, c) == zeta and t == d + c


def test_terms_are_flattened():
    assert series(TRIANGLE, LEAF) == parse_term("S(L,L,L)")
    assert parallel(OPEN, LEAF) == LEAF
    with pytest.raises(ValueError):
        MarkedSP("S", (TRIANGLE, LEAF))
    with pytest.raises(ValueError):
        MarkedSP("P", (OPEN, LEAF))
    with pytest.raises(ValueError):
        MarkedSP("P", (LEAF,))
    with pytest.raises(ValueError):
        parse_term("S(L,")


def test_graph_json_and_dot():
    m = materialize(parse_term("S(P(L,L),L)"))
    assert MarkedGraph.loads(m.dumps()) == m
    assert MarkedGraph.from_json(m.to_json()) == m
    assert set(m.to_json()) == {"n", "edges", "marked"}
    dot = m.to_dot()
    bold = [line for line in dot.splitlines() if "bold" in line]
    assert bold == ["  0 -- 1 [style=bold, penwidth=3, color=\"red\"];"]
    with pytest.raises(ValueError):
        MarkedGraph(2, ((0, 0),), 0)


@given(seeds)
def test_zeta_matches_oracle(seed):
    g = term_from(seed, 30)
    m = materialize(g)
    assert zeta_graph(m) == zeta_sp(g)
    assert is_proper(m) and g.is_proper
    assert term_is_simple(g) == is_simple(m)


@given(seeds, seeds)
def test_additivity(a, b):
    ga, gb = term_from(a), term_from(b)
    s = marked_sum(ga, gb)
    assert zeta_sp(s) == zeta_sp(ga) + zeta_sp(gb)
    m = materialize(s)
    assert zeta_graph(m) == zeta_sp(s)
    assert m.n_edges == ga.n_edges + gb.n_edges - 1
    assert m.n == ga.n_vertices + gb.n_vertices - 2


@given(seeds)
def test_duality(seed):
    g = term_from(seed)
    d = dual(g)
    assert zeta_sp(d) * zeta_sp(g) == 1
    assert d.leaves == g.leaves
    assert tau(materialize(d)) == tau(materialize(g))


@given(seeds)
def test_simplification(seed):
    g = term_from(seed)
    s = simplify(g)
    m = materialize(s)
    assert zeta_sp(s) == zeta_sp(g) == zeta_graph(m)
    assert is_simple(m) and is_proper(m) and term_is_simple(s)
    assert m.n_edges == 4 * (g.n_edges - 1) + 1


@given(seeds)
def test_child_order_invariance(seed):
    g = term_from(seed, 20)
    h = shuffled(g, random.Random(seed))
    assert zeta_sp(h) == zeta_sp(g)
    assert zeta_graph(materialize(h)) == zeta_sp(g)

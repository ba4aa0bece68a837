from fractions import Fraction
from itertools import combinations

import pytest

from ramsey_forge import srg
from ramsey_forge.errors import DegenerateInput, InvalidInput, NotStronglyRegular, WrongResidue
from ramsey_forge.gf import field_from_order
from ramsey_forge.srg import (
    Graph,
    SrgParams,
    complement_params,
    conference_params,
    cycle_graph,
    neighborhood_partition,
    paley_graph,
    paley_params,
    predicted_partition,
    rook_graph,
    rook_params,
    srg_params,
    theta,
    theta_check,
    theta_ratio,
    triangular_graph,
    triangular_params,
)


def brute_params(G):
    """Independent check via an adjacency-list scan."""
    n = G.n
    adj = [[G.adjacent(u, v) for v in range(n)] for u in range(n)]
    degs = {sum(r) for r in adj}
    lam = {sum(adj[u][w] and adj[v][w] for w in range(n)) for u, v in combinations(range(n), 2) if adj[u][v]}
    mu = {sum(adj[u][w] and adj[v][w] for w in range(n)) for u, v in combinations(range(n), 2) if not adj[u][v]}
    if len(degs) == len(lam) == len(mu) == 1:
        return (n, degs.pop(), lam.pop(), mu.pop())
    return None


@pytest.mark.parametrize("q", [5, 9, 13, 17, 25, 29])
def test_paley_graph_params(q):
    G = paley_graph(field_from_order(q))
    assert srg_params(G) == paley_params(q)
    assert brute_params(G) == paley_params(q).as_tuple()
    assert srg_params(G) == conference_params((q + 3) // 4)


def test_paley_graph_wrong_residue():
    with pytest.raises(WrongResidue):
        paley_graph(field_from_order(7))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_rook_params(n):
    G = rook_graph(n)
    assert srg_params(G) == rook_params(n)
    assert brute_params(G) == rook_params(n).as_tuple()


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_triangular_params(n):
    G = triangular_graph(n)
    assert srg_params(G) == triangular_params(n)
    assert brute_params(G) == triangular_params(n).as_tuple()


def test_small_named_graphs():
    assert srg_params(cycle_graph(5)).as_tuple() == (5, 2, 0, 1)
    petersen = triangular_graph(5).complement()
    assert srg_params(petersen).as_tuple() == (10, 3, 0, 1)
    assert srg.named_graph("rook", 3) == rook_graph(3)
    with pytest.raises(InvalidInput):
        srg.named_graph("petersen", 5)


def test_non_srg_has_witness():
    path = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(NotStronglyRegular) as info:
        srg_params(path)
    assert len(info.value.witness) == 2
    assert cycle_graph(6) is not None and not srg.is_strongly_regular(cycle_graph(6))


def test_degenerate_inputs():
    with pytest.raises(DegenerateInput):
        srg_params(Graph(5, [0] * 5))
    full = (1 << 5) - 1
    with pytest.raises(DegenerateInput):
        srg_params(Graph(5, [full & ~(1 << v) for v in range(5)]))
    with pytest.raises(InvalidInput):
        srg_params(cycle_graph(3))


def test_graph_validation():
    with pytest.raises(InvalidInput):
        Graph(2, [0b10, 0])
    with pytest.raises(InvalidInput):
        Graph(2, [0b01, 0])
    with pytest.raises(InvalidInput):
        Graph.from_edges(3, [(0, 3)])


def test_params_validation():
    with pytest.raises(InvalidInput):
        SrgParams(10, 3, 1, 1)
    with pytest.raises(InvalidInput):
        SrgParams(5, 5, 0, 1)


def test_complement_params():
    assert complement_params(SrgParams(16, 6, 2, 2)).as_tuple() == (16, 9, 4, 6)
    for p in [paley_params(13), rook_params(5), triangular_params(7), SrgParams(10, 3, 0, 1)]:
        assert complement_params(complement_params(p)) == p


@pytest.mark.parametrize(
    "G",
    [paley_graph(field_from_order(13)), rook_graph(4), triangular_graph(6), cycle_graph(5)],
    ids=["paley13", "rook4", "tri6", "c5"],
)
def test_complement_graph_matches_complement_params(G):
    assert srg_params(G.complement()) == complement_params(srg_params(G))


@pytest.mark.parametrize(
    "G",
    [paley_graph(field_from_order(q)) for q in (5, 9, 13)] + [rook_graph(4), triangular_graph(6), cycle_graph(5)],
)
def test_partition_closed_forms_every_pair(G):
    p = srg_params(G)
    for a in range(G.n):
        for b in range(G.n):
            if a != b:
                part = neighborhood_partition(G, a, b)
                assert part == predicted_partition(p, G.adjacent(a, b))
                assert sum(part.as_tuple()) == G.n - 2


def test_partition_examples():
    P13 = paley_graph(field_from_order(13))
    assert P13.adjacent(0, 1)
    assert neighborhood_partition(P13, 0, 1).as_tuple() == (2, 3, 3, 3)
    assert not P13.adjacent(0, 2)
    assert neighborhood_partition(P13, 0, 2).as_tuple() == (3, 2, 3, 3)
    assert neighborhood_partition(cycle_graph(5), 0, 1).as_tuple() == (0, 1, 1, 1)
    with pytest.raises(InvalidInput):
        neighborhood_partition(P13, 3, 3)


def test_theta_examples():
    assert theta(paley_params(13)) == 3
    assert theta(rook_params(4)) == 6
    assert theta(triangular_params(6)) == 4
    assert theta_ratio(paley_params(13)) == Fraction(3, 13)
    assert theta_ratio(rook_params(4)) == Fraction(3, 8)


def test_theta_ratio_conference_tends_to_quarter():
    prev = None
    for n in range(2, 400, 7):
        r = theta_ratio(conference_params(n))
        assert r == Fraction(n - 1, 4 * n - 3) < Fraction(1, 4)
        if prev is not None:
            assert r > prev
        prev = r
    assert Fraction(1, 4) - prev < Fraction(1, 1000)


@pytest.mark.parametrize("family,lo,hi", [("conference", 2, 40), ("rook", 2, 40), ("triangular", 4, 40)])
def test_theta_is_integer_and_bounded(family, lo, hi):
    for n in range(lo, hi):
        check = theta_check(family, n)
        p = {"conference": conference_params, "rook": rook_params, "triangular": triangular_params}[family](n)
        assert check.computed == max(theta_terms_int(p))
        assert 0 < check.computed < p.n


def theta_terms_int(p):
    return [t for t in srg.theta_terms(p) if t.denominator == 1] + [max(srg.theta_terms(p))]


def test_theta_closed_forms():
    assert not theta_check("conference", 5).discrepancy
    assert theta_check("conference", 5).computed == 4
    assert not theta_check("rook", 6).discrepancy
    tri = theta_check("triangular", 6)
    assert (tri.computed, tri.closed_form, tri.discrepancy) == (4, 6, True)
    assert theta_check("triangular", 8).computed == 10
    with pytest.raises(InvalidInput):
        theta_check("nope", 5)


def test_text_round_trip(tmp_path):
    G = paley_graph(field_from_order(5))
    text = srg.dumps(G)
    assert text.startswith("5\n1 2\n")
    assert srg.loads(text) == G
    path = tmp_path / "g.txt"
    srg.write(G, path)
    assert srg.read(path) == G
    assert srg.dumps(srg.read(path)) == text


@pytest.mark.parametrize("text", ["3\n1 2", "3\n2 1\n", "3\n1 2\n1 2\n", "3\n1 4\n", "x\n", "3\n1  2\n", "3\n2 3\n1 2\n"])
def test_text_rejects_malformed(text):
    with pytest.raises(InvalidInput):
        srg.loads(text)

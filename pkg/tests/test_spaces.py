import random
from fractions import Fraction

import pytest

from magnitude.rationals import INF, ExtendedRational
from magnitude.spaces import (
    AdjacentPair,
    Graph,
    InvalidSpace,
    QuasiMetricSpace,
    ZeroDistance,
    adjacent_pairs,
    builtin_graph,
    format_metric_csv,
    is_isometric,
    min_positive_distance,
    parse_graph_file,
    parse_metric_file,
    space_from_graph,
)

from samples import random_connected_graph, random_rational_space, random_strongly_connected_digraph


def floyd_warshall(n, weight):
    """Independent oracle for shortest paths."""
    d = [[INF] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = ExtendedRational(0)
    for (u, v), w in weight.items():
        if ExtendedRational(w) < d[u][v]:
            d[u][v] = ExtendedRational(w)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                via = d[i][k] + d[k][j]
                if via < d[i][j]:
                    d[i][j] = via
    return d


def test_space_from_path_graph():
    s = space_from_graph(builtin_graph("p3"))
    assert s.d[0][2] == ExtendedRational(2)
    assert s.d[0][1] == ExtendedRational(1)


def test_disconnected_components_get_inf():
    s = space_from_graph(Graph.undirected(4, [(0, 1), (2, 3)]))
    assert s.d[0][2].is_infinite
    assert s.d[3][1].is_infinite


def test_directed_three_cycle_against_floyd_warshall():
    g = Graph.directed_graph(3, [(0, 1), (1, 2), (2, 0)])
    s = space_from_graph(g)
    oracle = floyd_warshall(3, {(0, 1): 1, (1, 2): 1, (2, 0): 1})
    assert [list(row) for row in s.d] == oracle
    assert s.d[0][1] == ExtendedRational(1)
    assert s.d[1][0] == ExtendedRational(2)


def test_shortest_path_metric_satisfies_triangle_inequality():
    rng = random.Random(11)
    for _ in range(25):
        g = random_connected_graph(rng, nmax=8)
        s = space_from_graph(g)  # the constructor checks exhaustively
        for i in range(s.n):
            for j in range(s.n):
                for k in range(s.n):
                    assert not s.d[i][k] > s.d[i][j] + s.d[j][k]


def test_adjacent_pairs_single_edge():
    s = space_from_graph(builtin_graph("p2"))
    pairs = adjacent_pairs(s)
    assert pairs == [
        AdjacentPair(0, 1, ExtendedRational(1)),
        AdjacentPair(1, 0, ExtendedRational(1)),
    ]


def test_adjacent_pairs_path_midpoint_witness():
    s = space_from_graph(builtin_graph("p3"))
    pairs = adjacent_pairs(s)
    assert len(pairs) == 4
    assert all(p.length == ExtendedRational(1) for p in pairs)
    assert not any((p.x, p.y) == (0, 2) for p in pairs)


def brute_force_adjacent(space):
    out = []
    for x in range(space.n):
        for y in range(space.n):
            if x == y:
                continue
            d = space.d[x][y]
            if d.is_zero or d.is_infinite:
                continue
            witness = False
            for a in range(space.n):
                if a != x and a != y and space.d[x][a] + space.d[a][y] == d:
                    witness = True
            if not witness:
                out.append((x, y, d))
    return out


def test_adjacent_pairs_c5_brute_force():
    s = space_from_graph(builtin_graph("c5"))
    pairs = adjacent_pairs(s)
    oracle = brute_force_adjacent(s)
    assert [(p.x, p.y, p.length) for p in pairs] == oracle
    # every distance-2 pair has a geodesic midpoint, so only edges survive
    assert len(pairs) == 10
    assert all(p.length == ExtendedRational(1) for p in pairs)


def test_adjacency_is_edge_recognition_on_graphs():
    rng = random.Random(3)
    for _ in range(20):
        g = random_connected_graph(rng)
        s = space_from_graph(g)
        got = {(p.x, p.y) for p in adjacent_pairs(s) if p.length == ExtendedRational(1)}
        assert got == set(g.edges)
        assert all(p.length == ExtendedRational(1) for p in adjacent_pairs(s))


def test_adjacency_on_quasi_metrics_matches_brute_force():
    rng = random.Random(8)
    for _ in range(10):
        s = random_rational_space(rng)
        assert [(p.x, p.y, p.length) for p in adjacent_pairs(s)] == brute_force_adjacent(s)


def test_is_isometric_basics():
    p3 = space_from_graph(builtin_graph("p3"))
    k3 = space_from_graph(builtin_graph("k3"))
    assert is_isometric(p3, p3)
    assert not is_isometric(p3, k3)
    c5 = space_from_graph(builtin_graph("c5"))
    relabeled = space_from_graph(Graph.undirected(5, [(1, 3), (3, 0), (0, 4), (4, 2), (2, 1)]))
    assert is_isometric(c5, relabeled)
    assert not is_isometric(p3, space_from_graph(builtin_graph("p4")))


def test_is_isometric_is_an_equivalence():
    rng = random.Random(17)
    spaces = [space_from_graph(random_connected_graph(rng, nmax=5)) for _ in range(8)]
    spaces += [random_rational_space(rng, nmax=4) for _ in range(4)]
    for a in spaces:
        assert is_isometric(a, a)
        for b in spaces:
            assert is_isometric(a, b) == is_isometric(b, a)
    for a in spaces:
        for b in spaces:
            for c in spaces:
                if is_isometric(a, b) and is_isometric(b, c):
                    assert is_isometric(a, c)


def test_min_positive_distance():
    s = space_from_graph(builtin_graph("c4"))
    assert min_positive_distance(s) == ExtendedRational(1)
    third = Fraction(1, 3)
    t = QuasiMetricSpace([[0, third, third], [third, 0, third], [third, third, 0]])
    assert min_positive_distance(t) == ExtendedRational(third)
    pseudo = QuasiMetricSpace([[0, 0], [0, 0]], allow_pseudo=True)
    with pytest.raises(ZeroDistance):
        min_positive_distance(pseudo)


def test_pseudo_spaces_need_explicit_flag():
    with pytest.raises(ZeroDistance):
        QuasiMetricSpace([[0, 0], [0, 0]])
    pseudo = QuasiMetricSpace([[0, 0], [0, 0]], allow_pseudo=True)
    assert not pseudo.positive_min


def test_invalid_matrices_rejected():
    with pytest.raises(InvalidSpace):
        QuasiMetricSpace([[1]])  # nonzero diagonal
    with pytest.raises(InvalidSpace):
        QuasiMetricSpace([[0, 1], [1, 0], [1, 1]])  # not square
    with pytest.raises(InvalidSpace):
        QuasiMetricSpace([[0, 1, 3], [1, 0, 1], [3, 1, 0]])  # triangle fails


def test_directed_graph_asymmetry_allowed():
    g = Graph.directed_graph(2, [(0, 1)])
    s = space_from_graph(g)
    assert s.d[0][1] == ExtendedRational(1)
    assert s.d[1][0].is_infinite


def test_graph_file_roundtrip(tmp_path):
    text = "4 undirected\n0 1\n1 2\n2 3\n"
    g = parse_graph_file(text)
    assert g.n == 4 and not g.directed
    assert (0, 1) in g.edges and (1, 0) in g.edges
    d = parse_graph_file("3 directed\n0 1\n1 2\n")
    assert d.directed and (0, 1) in d.edges and (1, 0) not in d.edges


def test_metric_csv_roundtrip():
    s = random_rational_space(random.Random(2))
    text = format_metric_csv(s)
    assert parse_metric_file(text) == s
    inf_text = "0,inf\ninf,0\n"
    t = parse_metric_file(inf_text)
    assert t.d[0][1].is_infinite
    assert format_metric_csv(t) == inf_text


def test_builtin_names():
    assert builtin_graph("k3").n == 3 and len(builtin_graph("k3").edges) == 6
    assert builtin_graph("k22").n == 4  # complete bipartite, two digits
    assert builtin_graph("k23").n == 5
    assert builtin_graph("k10").n == 10  # digit 0 means complete on 10
    assert builtin_graph("petersen").n == 10
    assert builtin_graph("p5").n == 5
    with pytest.raises(InvalidSpace):
        builtin_graph("zzz")


def test_strongly_connected_digraphs_are_finite_everywhere():
    rng = random.Random(7)
    for _ in range(10):
        s = space_from_graph(random_strongly_connected_digraph(rng))
        assert all(not s.d[i][j].is_infinite for i in range(s.n) for j in range(s.n))

import itertools
import random
from fractions import Fraction

import pytest

from magnitude.complexes import (
    NotNonIncreasing,
    boundary_entries,
    boundary_matrix,
    coboundary_matrix,
    enumerate_simplices,
    induced_chain_map,
    realizable_grades,
    simplex_length,
)
from magnitude.homology import MagnitudeHomology
from magnitude.rationals import ExtendedRational
from magnitude.spaces import (
    Graph,
    QuasiMetricSpace,
    ZeroDistance,
    builtin_graph,
    space_from_graph,
)

from samples import random_connected_graph, random_rational_space


def brute_force_simplices(space, k, l):
    """Oracle: filter the full (k+1)-fold product."""
    out = []
    for tup in itertools.product(range(space.n), repeat=k + 1):
        if any(a == b for a, b in zip(tup, tup[1:])):
            continue
        if simplex_length(space, tup) == ExtendedRational(l):
            out.append(tup)
    return out


def test_enumerate_examples():
    edge = space_from_graph(builtin_graph("p2"))
    assert enumerate_simplices(edge, 2, 2) == [(0, 1, 0), (1, 0, 1)]
    k3 = space_from_graph(builtin_graph("k3"))
    assert len(enumerate_simplices(k3, 1, 1)) == 6
    c5 = space_from_graph(builtin_graph("c5"))
    got = enumerate_simplices(c5, 2, 3)
    assert len(got) == 40
    assert got == brute_force_simplices(c5, 2, 3)


def test_enumeration_matches_brute_force_on_random_spaces():
    rng = random.Random(4)
    for _ in range(6):
        space = random_rational_space(rng, nmax=4)
        for k in range(4):
            for l in realizable_grades(space, 6)[:6]:
                assert enumerate_simplices(space, k, l) == brute_force_simplices(space, k, l)


def test_enumeration_is_lexicographic_and_deterministic():
    c5 = space_from_graph(builtin_graph("c5"))
    a = enumerate_simplices(c5, 3, 4)
    assert a == sorted(a)
    assert a == enumerate_simplices(c5, 3, 4)


def test_degree_bound_empty_blocks():
    c4 = space_from_graph(builtin_graph("c4"))
    assert enumerate_simplices(c4, 3, 2) == []
    assert enumerate_simplices(c4, 5, 3) == []


def test_boundary_examples():
    p3 = space_from_graph(builtin_graph("p3"))
    engine = MagnitudeHomology(p3)
    # k = 1: the interior sum is empty
    assert engine.boundary(1, 1).is_zero()
    # edge (a,b,a): dropping b fails the length test
    edge = space_from_graph(builtin_graph("p2"))
    assert list(boundary_entries(edge, (0, 1, 0))) == []
    # P3 (a,b,c): d(a,c) = 2 = 1 + 1, so the only face is -(a,c)
    assert list(boundary_entries(p3, (0, 1, 2))) == [((0, 2), -1)]
    m = boundary_matrix(p3, 2, 2, engine.simplices(2, 2), engine.index(1, 2))
    col = engine.index(2, 2)[(0, 1, 2)]
    assert m.entry(engine.index(1, 2)[(0, 2)], col) == -1


def test_boundary_squared_zero_exhaustive():
    rng = random.Random(9)
    spaces = [space_from_graph(builtin_graph(n)) for n in ("p4", "c5", "k4", "c7", "p7")]
    spaces += [space_from_graph(random_connected_graph(rng, nmax=7)) for _ in range(5)]
    spaces += [random_rational_space(rng, nmax=4) for _ in range(4)]
    for space in spaces:
        engine = MagnitudeHomology(space)
        for l in realizable_grades(space, 6):
            kmax = min(engine.degree_bound(l), 7)
            for k in range(2, kmax + 1):
                assert engine.boundary(k - 1, l).matmul(engine.boundary(k, l)).is_zero()


def test_coboundary_matrix_is_boundary_transposed():
    p3 = space_from_graph(builtin_graph("p3"))
    engine = MagnitudeHomology(p3)
    delta = coboundary_matrix(p3, 1, 2, engine.simplices(1, 2), engine.index(2, 2))
    assert delta == engine.boundary(2, 2).transpose()


def test_coboundary_squared_zero():
    c5 = space_from_graph(builtin_graph("c5"))
    engine = MagnitudeHomology(c5)
    for l in range(5):
        for k in range(engine.degree_bound(l)):
            assert engine.coboundary(k + 1, l).matmul(engine.coboundary(k, l)).is_zero()


def test_pseudo_space_blocks_computable():
    pseudo = QuasiMetricSpace([[0, 0, 1], [0, 0, 1], [1, 1, 0]], allow_pseudo=True)
    sims = enumerate_simplices(pseudo, 2, 0)
    assert (0, 1, 0) in sims
    engine = MagnitudeHomology(pseudo)
    assert engine.boundary(1, 0).matmul(engine.boundary(2, 0)).is_zero()


def test_induced_chain_map_identity_and_constant():
    p3 = space_from_graph(builtin_graph("p3"))
    basis = enumerate_simplices(p3, 1, 1)
    index = {s: i for i, s in enumerate(basis)}
    ident = induced_chain_map([0, 1, 2], p3, p3, 1, 1, basis, index)
    from magnitude.snf import SparseMatrix

    assert ident == SparseMatrix.identity(len(basis))
    one_point = QuasiMetricSpace([[0]])
    const = induced_chain_map([0, 0, 0], p3, one_point, 1, 1, basis, {})
    assert const.is_zero()


def test_induced_chain_map_isometric_inclusion():
    p3 = space_from_graph(builtin_graph("p3"))
    p2 = QuasiMetricSpace([row[:2] for row in [list(r) for r in p3.d][:2]])
    src = enumerate_simplices(p2, 1, 1)
    tgt = enumerate_simplices(p3, 1, 1)
    index = {s: i for i, s in enumerate(tgt)}
    m = induced_chain_map([0, 1], p2, p3, 1, 1, src, index)
    assert m.nnz() == len(src)  # injection of bases


def test_induced_chain_map_rejects_increasing():
    p3 = space_from_graph(builtin_graph("p3"))
    with pytest.raises(NotNonIncreasing):
        induced_chain_map([0, 2, 0], p3, p3, 1, 1, enumerate_simplices(p3, 1, 1), {})


def test_induced_map_is_a_chain_map():
    rng = random.Random(12)
    for _ in range(8):
        target = random_rational_space(rng, nmax=5)
        points = sorted(rng.sample(range(target.n), rng.randrange(2, target.n + 1)))
        source = QuasiMetricSpace([[target.d[i][j] for j in points] for i in points])
        f = [points[i] for i in range(len(points))]
        src_engine = MagnitudeHomology(source)
        tgt_engine = MagnitudeHomology(target)
        for l in realizable_grades(source, 5)[:5]:
            for k in range(1, 4):
                f_k = induced_chain_map(
                    f, source, target, k, l, src_engine.simplices(k, l), tgt_engine.index(k, l)
                )
                f_km1 = induced_chain_map(
                    f, source, target, k - 1, l,
                    src_engine.simplices(k - 1, l), tgt_engine.index(k - 1, l),
                )
                lhs = tgt_engine.boundary(k, l).matmul(f_k)
                rhs = f_km1.matmul(src_engine.boundary(k, l))
                assert lhs == rhs


def test_realizable_grades():
    c4 = space_from_graph(builtin_graph("c4"))
    assert realizable_grades(c4, 3) == [0, 1, 2, 3]
    half = Fraction(3, 2)
    space = QuasiMetricSpace([[0, 1, half], [1, 0, 1], [half, 1, 0]])
    assert realizable_grades(space, 3) == [0, 1, half, 2, Fraction(5, 2), 3]
    one = QuasiMetricSpace([[0]])
    assert realizable_grades(one, 4) == [0]
    pseudo = QuasiMetricSpace([[0, 0], [0, 0]], allow_pseudo=True)
    with pytest.raises(ZeroDistance):
        realizable_grades(pseudo, 2)

"""Diagonal-part machinery: path algebras of doubled-edge quivers.

For a finite graph the diagonal groups MH^k_k are the quotient of the path
algebra (basis: edge paths, product: concatenation or zero) by one relation
sum_{y: x<y<z} (...y...) = 0 for every distance-2 pair (x, z), placed in
every path context.  Diagonal graphs (trees, complete graphs, complete
multipartite graphs) have their whole ring concentrated there, torsion-free,
so closed-form oracles are available to cross-check the engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .homology import AbelianGroup, LatticeQuotient, MagnitudeHomology
from .ring import class_of, class_product, indicator_cochain
from .snf import SparseMatrix
from .spaces import Graph, QuasiMetricSpace, space_from_graph


def edge_paths(g: Graph, k: int) -> list:
    """Edge paths of length k (walks; backtracking allowed), lexicographic."""
    if k == 0:
        return [(x,) for x in range(g.n)]
    succ = [g.successors(u) for u in range(g.n)]
    out = []

    def extend(prefix):
        if len(prefix) == k + 1:
            out.append(tuple(prefix))
            return
        for y in succ[prefix[-1]]:
            prefix.append(y)
            extend(prefix)
            prefix.pop()

    for x in range(g.n):
        extend([x])
    return out


def path_count(g: Graph, k: int) -> int:
    return len(edge_paths(g, k))


@dataclass
class DiagonalQuotient:
    k: int
    paths: list
    relation_count: int
    group: AbelianGroup
    quotient: LatticeQuotient

    def reduce(self, vec):
        return self.quotient.reduce(vec)


def _distance2_pairs(space: QuasiMetricSpace):
    two = Fraction(2)
    return [
        (x, z)
        for x in range(space.n)
        for z in range(space.n)
        if x != z and not space.d[x][z].is_infinite and space.d[x][z].value == two
    ]


def diagonal_quotient(g: Graph, k: int) -> DiagonalQuotient:
    """The degree-k piece of the path algebra modulo the midpoint relations."""
    space = space_from_graph(g)
    paths = edge_paths(g, k)
    index = {p: i for i, p in enumerate(paths)}
    succ = [g.successors(u) for u in range(g.n)]
    neighbours = [set(s) for s in succ]
    rows = []
    # One relation per context: an edge path broken by a single distance-2
    # gap at position i, summed over all midpoints of the gap.
    for i in range(1, k):
        prefixes = edge_paths(g, i - 1)
        suffix_len = k - 1 - i
        for prefix in prefixes:
            x = prefix[-1]
            for (a, z) in _distance2_pairs(space):
                if a != x:
                    continue
                mids = sorted(neighbours[x] & neighbours[z])
                suffixes = _paths_from(g, z, suffix_len)
                for suffix in suffixes:
                    row = {}
                    for y in mids:
                        p = prefix + (y,) + (z,) + suffix[1:]
                        row[index[p]] = row.get(index[p], 0) + 1
                    rows.append(row)
    rel_entries = {}
    for r, row in enumerate(rows):
        for c, v in row.items():
            rel_entries[(r, c)] = v
    relations = SparseMatrix.from_entries(len(rows), len(paths), rel_entries)
    quotient = LatticeQuotient(None, relations.transpose(), len(paths))
    return DiagonalQuotient(k, paths, len(rows), quotient.group, quotient)


def _paths_from(g: Graph, start: int, length: int) -> list:
    if length == 0:
        return [(start,)]
    out = []
    succ = [g.successors(u) for u in range(g.n)]

    def extend(prefix):
        if len(prefix) == length + 1:
            out.append(tuple(prefix))
            return
        for y in succ[prefix[-1]]:
            prefix.append(y)
            extend(prefix)
            prefix.pop()

    extend([start])
    return out


def verify_diagonal_theorem(g: Graph, kmax: int, samples: int = 40, seed: int = 0):
    """Compare the path-algebra quotient with MH^k_k for k <= kmax, and
    spot-check that concatenation matches the cup product.

    Returns (ok, failures); failures hold human-readable counterexamples.
    """
    import random

    space = space_from_graph(g)
    engine = MagnitudeHomology(space)
    failures = []
    quotients = {}
    for k in range(kmax + 1):
        dq = diagonal_quotient(g, k)
        quotients[k] = dq
        got = engine.cohomology(k, k)
        if got != dq.group:
            failures.append(f"k={k}: quotient {dq.group} != cohomology {got}")
    # multiplicativity: [p]* . [q]* = [pq]* (or 0 when endpoints differ)
    rng = random.Random(seed)
    pairs = []
    for ka in range(kmax + 1):
        for kb in range(kmax + 1 - ka):
            for pa in quotients[ka].paths:
                for pb in quotients[kb].paths:
                    pairs.append((ka, kb, pa, pb))
    rng.shuffle(pairs)
    for ka, kb, pa, pb in pairs[:samples]:
        alpha = class_of(engine, indicator_cochain(engine, pa, ka))
        beta = class_of(engine, indicator_cochain(engine, pb, kb))
        prod = class_product(engine, alpha, beta)
        if pa[-1] == pb[0]:
            concat = pa + pb[1:]
            expect = class_of(
                engine, indicator_cochain(engine, concat, ka + kb)
            ).coords
        else:
            expect = tuple([0] * len(prod.coords))
        if prod.coords != tuple(expect):
            failures.append(f"concatenation mismatch on {pa} . {pb}")
    return not failures, failures


def is_diagonal(g: Graph, lmax: int):
    """Truncated diagonality certificate: every off-diagonal MH_{k,l} with
    k, l <= lmax vanishes (rank and torsion).  Returns (verdict, witness);
    witness names the first nonzero off-diagonal block, if any."""
    space = space_from_graph(g)
    engine = MagnitudeHomology(space)
    for l in range(lmax + 1):
        for k in range(lmax + 1):
            if k == l:
                continue
            group = engine.homology(k, l)
            if not group.is_trivial:
                return False, f"MH_{{{k},{l}}} = {group}"
    return True, None


def oracle_rank(family: str, params, k: int) -> int:
    """Closed-form diagonal ranks, independent of the chain-complex engine.

    tree(n): n for k=0, else 2(n-1) (the alternating abab... basis, one for
    each oriented edge); complete(n): n(n-1)^k; complete_bipartite(p,q): rank
    of the alternating-sequence span modulo the two midpoint-sum relation
    families, by a dedicated rational elimination.
    """
    if family == "tree":
        n = int(params)
        return n if k == 0 else 2 * (n - 1)
    if family == "complete":
        n = int(params)
        return n * (n - 1) ** k
    if family == "complete_bipartite":
        p, q = params
        return _bipartite_rank(int(p), int(q), k)
    raise ValueError(f"unknown family {family!r}")


def _bipartite_rank(p: int, q: int, k: int) -> int:
    """Alternating X/Y sequences modulo sum_{y in Y} xyx' and its mirror."""
    if k == 0:
        return p + q
    side_of = lambda v: 0 if v < p else 1
    members = ([list(range(p)), list(range(p, p + q))])
    paths = []

    def extend(prefix):
        if len(prefix) == k + 1:
            paths.append(tuple(prefix))
            return
        for y in members[1 - side_of(prefix[-1])]:
            prefix.append(y)
            extend(prefix)
            prefix.pop()

    for v in range(p + q):
        extend([v])
    index = {path: i for i, path in enumerate(paths)}
    rows = []
    for i in range(1, k):
        for path in paths:
            a, b = path[i - 1], path[i + 1]
            if a == b:
                continue
            mid_side = side_of(path[i])
            if sorted(members[mid_side])[0] != path[i]:
                continue  # one relation row per context, not per midpoint
            row = [0] * len(paths)
            for y in members[mid_side]:
                row[index[path[: i] + (y,) + path[i + 1 :]]] += 1
            rows.append(row)
    return len(paths) - _rational_rank(rows)


def _rational_rank(rows: list) -> int:
    """Gaussian elimination over Q, kept separate from the SNF engine."""
    from fractions import Fraction as F

    mat = [[F(v) for v in row] for row in rows if any(row)]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    col = 0
    while mat and col < ncols:
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if pivot is None:
            col += 1
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                factor = mat[i][col] / pv
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
        col += 1
    return rank

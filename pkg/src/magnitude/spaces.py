"""Finite quasi-metric spaces and graphs with exact extended-rational distances.

A space is a point count n together with an n x n matrix of ExtendedRational
distances satisfying d(x,x) = 0 and the triangle inequality; symmetry is NOT
required, INF entries mark unreachable pairs, and zero distances between
distinct points are only permitted on explicitly constructed pseudo spaces
(where recovery and the magnitude series are undefined).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rationals import INF, ExtendedRational, format_rational, parse_rational


class ZeroDistance(ValueError):
    """Two distinct points at distance zero: a pseudo space."""

    def __init__(self, x: int, y: int):
        super().__init__(f"distinct points {x}, {y} are at distance 0")
        self.pair = (x, y)


class InvalidSpace(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices 0..n-1; edges are ordered pairs if directed."""

    n: int
    edges: frozenset
    directed: bool = False

    def __post_init__(self):
        for (u, v) in self.edges:
            if u == v:
                raise InvalidSpace(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidSpace(f"edge ({u},{v}) out of range")

    @staticmethod
    def undirected(n: int, pairs: Iterable[tuple]) -> "Graph":
        edges = set()
        for (u, v) in pairs:
            edges.add((u, v))
            edges.add((v, u))
        return Graph(n, frozenset(edges), directed=False)

    @staticmethod
    def directed_graph(n: int, pairs: Iterable[tuple]) -> "Graph":
        return Graph(n, frozenset((u, v) for (u, v) in pairs), directed=True)

    def successors(self, u: int) -> list:
        return sorted(v for (a, v) in self.edges if a == u)


class QuasiMetricSpace:
    """Immutable finite space with an exact extended quasi-metric."""

    __slots__ = ("n", "d", "positive_min")

    def __init__(self, d: Sequence[Sequence], allow_pseudo: bool = False):
        matrix = tuple(
            tuple(x if isinstance(x, ExtendedRational) else ExtendedRational(x) for x in row)
            for row in d
        )
        n = len(matrix)
        for row in matrix:
            if len(row) != n:
                raise InvalidSpace("distance matrix must be square")
        for i in range(n):
            if not matrix[i][i].is_zero:
                raise InvalidSpace(f"d({i},{i}) must be 0")
        positive = True
        for i in range(n):
            for j in range(n):
                if i != j and matrix[i][j].is_zero:
                    if not allow_pseudo:
                        raise ZeroDistance(i, j)
                    positive = False
        # Exhaustive triangle inequality; INF absorbs addition so the
        # comparison is well defined for unreachable pairs.
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if matrix[i][k] > matrix[i][j] + matrix[j][k]:
                        raise InvalidSpace(
                            f"triangle inequality fails: d({i},{k}) > d({i},{j}) + d({j},{k})"
                        )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", matrix)
        object.__setattr__(self, "positive_min", positive)

    def __setattr__(self, *args):
        raise AttributeError("QuasiMetricSpace is immutable")

    def dist(self, x: int, y: int) -> ExtendedRational:
        return self.d[x][y]

    def points(self) -> range:
        return range(self.n)

    def __eq__(self, other):
        return isinstance(other, QuasiMetricSpace) and self.d == other.d

    def __hash__(self):
        return hash(self.d)

    def __repr__(self):
        return f"QuasiMetricSpace(n={self.n})"

    def finite_distances(self) -> list:
        """Sorted distinct finite nonzero distance values, as Fractions."""
        values = set()
        for i in range(self.n):
            for j in range(self.n):
                if i != j and not self.d[i][j].is_infinite and not self.d[i][j].is_zero:
                    values.add(self.d[i][j].value)
        return sorted(values)

    def max_finite_distance(self) -> Fraction:
        values = self.finite_distances()
        return values[-1] if values else Fraction(0)


@dataclass(frozen=True)
class AdjacentPair:
    """Ordered pair (x, y) with d(x, y) nonzero, finite, and not refinable:
    no third point a has d(x,y) = d(x,a) + d(a,y)."""

    x: int
    y: int
    length: ExtendedRational


def space_from_graph(g: Graph) -> QuasiMetricSpace:
    """Shortest-path metric of a graph; unreachable pairs get INF."""
    n = g.n
    adj = [[] for _ in range(n)]
    for (u, v) in g.edges:
        adj[u].append(v)
    dist = [[INF] * n for _ in range(n)]
    for s in range(n):
        dist[s][s] = ExtendedRational(0)
        frontier = [s]
        level = 0
        seen = {s}
        while frontier:
            level += 1
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if v not in seen:
                        seen.add(v)
                        dist[s][v] = ExtendedRational(level)
                        nxt.append(v)
            frontier = nxt
    return QuasiMetricSpace(dist)


def empty_space() -> QuasiMetricSpace:
    return QuasiMetricSpace(())


def adjacent_pairs(space: QuasiMetricSpace) -> list:
    """All ordered adjacent pairs of the space, sorted by (x, y)."""
    out = []
    for x in range(space.n):
        for y in range(space.n):
            if x == y:
                continue
            dxy = space.d[x][y]
            if dxy.is_zero or dxy.is_infinite:
                continue
            if all(
                space.d[x][a] + space.d[a][y] != dxy
                for a in range(space.n)
                if a != x and a != y
            ):
                out.append(AdjacentPair(x, y, dxy))
    return out


def min_positive_distance(space: QuasiMetricSpace) -> ExtendedRational:
    """Minimum finite nonzero pairwise distance; INF if all pairs are
    unreachable; ZeroDistance on a pseudo space."""
    if space.n < 2:
        raise InvalidSpace("need at least two points")
    best = INF
    for i in range(space.n):
        for j in range(space.n):
            if i == j:
                continue
            dij = space.d[i][j]
            if dij.is_zero:
                raise ZeroDistance(i, j)
            if dij < best:
                best = dij
    return best


def _signature(space: QuasiMetricSpace, x: int):
    row = sorted(space.d[x][j] for j in range(space.n) if j != x)
    col = sorted(space.d[j][x] for j in range(space.n) if j != x)
    return tuple(row), tuple(col)


def is_isometric(a: QuasiMetricSpace, b: QuasiMetricSpace) -> bool:
    """Exhaustive bijection search with distance-multiset pruning.

    Intended for n <= 9; a size mismatch is False, not an error.
    """
    if a.n != b.n:
        return False
    n = a.n
    sig_a = [_signature(a, x) for x in range(n)]
    sig_b = [_signature(b, x) for x in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return False
    candidates = [[y for y in range(n) if sig_b[y] == sig_a[x]] for x in range(n)]
    image = [-1] * n
    used = [False] * n

    def extend(x: int) -> bool:
        if x == n:
            return True
        for y in candidates[x]:
            if used[y]:
                continue
            ok = True
            for z in range(x):
                if a.d[x][z] != b.d[y][image[z]] or a.d[z][x] != b.d[image[z]][y]:
                    ok = False
                    break
            if ok:
                image[x] = y
                used[y] = True
                if extend(x + 1):
                    return True
                used[y] = False
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# Built-in graphs and file formats
# ---------------------------------------------------------------------------

def path_graph(n: int) -> Graph:
    return Graph.undirected(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidSpace("cycle needs at least 3 vertices")
    return Graph.undirected(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.undirected(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite_graph(p: int, q: int) -> Graph:
    return Graph.undirected(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def petersen_graph() -> Graph:
    """Kneser graph K(5,2): 2-subsets of {0..4}, edges between disjoint sets."""
    pairs = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    index = {p: k for k, p in enumerate(pairs)}
    edges = []
    for p in pairs:
        for q in pairs:
            if p < q and not (set(p) & set(q)):
                edges.append((index[p], index[q]))
    return Graph.undirected(10, edges)


def icosahedral_graph() -> Graph:
    """1-skeleton of the icosahedron (12 vertices, 30 edges)."""
    top, bottom = 0, 11
    upper = [1, 2, 3, 4, 5]
    lower = [6, 7, 8, 9, 10]
    edges = []
    for i in range(5):
        edges.append((top, upper[i]))
        edges.append((bottom, lower[i]))
        edges.append((upper[i], upper[(i + 1) % 5]))
        edges.append((lower[i], lower[(i + 1) % 5]))
        edges.append((upper[i], lower[i]))
        edges.append((upper[i], lower[(i + 1) % 5]))
    return Graph.undirected(12, edges)


def builtin_graph(name: str) -> Graph:
    """Named graphs: kN complete, pN path, cN cycle, kPQ complete bipartite
    (two nonzero digits, e.g. k22, k23), petersen, icosahedron."""
    name = name.strip().lower()
    if name == "petersen":
        return petersen_graph()
    if name == "icosahedron":
        return icosahedral_graph()
    if len(name) >= 2 and name[0] in "kpc" and name[1:].isdigit():
        digits = name[1:]
        if name[0] == "k":
            if len(digits) == 2 and "0" not in digits:
                return complete_bipartite_graph(int(digits[0]), int(digits[1]))
            return complete_graph(int(digits))
        if name[0] == "p":
            return path_graph(int(digits))
        return cycle_graph(int(digits))
    raise InvalidSpace(f"unknown builtin graph {name!r}")


def parse_graph_file(text: str) -> Graph:
    """Edge-list format: first line 'n [directed|undirected]', then 'u v' lines."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise InvalidSpace("empty graph file")
    head = lines[0].split()
    n = int(head[0])
    directed = len(head) > 1 and head[1] == "directed"
    pairs = []
    for ln in lines[1:]:
        u, v = ln.split()
        pairs.append((int(u), int(v)))
    if directed:
        return Graph.directed_graph(n, pairs)
    return Graph.undirected(n, pairs)


def parse_metric_file(text: str, allow_pseudo: bool = False) -> QuasiMetricSpace:
    """CSV of n rows x n columns with entries 'p/q', integers, or 'inf'."""
    rows = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        rows.append([parse_rational(cell) for cell in ln.split(",")])
    return QuasiMetricSpace(rows, allow_pseudo=allow_pseudo)


def format_metric_csv(space: QuasiMetricSpace) -> str:
    lines = []
    for i in range(space.n):
        lines.append(",".join(format_rational(space.d[i][j]) for j in range(space.n)))
    return "\n".join(lines) + "\n"


def load_space(source: str, kind: str = "graph") -> QuasiMetricSpace:
    """Resolve a --graph name-or-file or a --metric file into a space."""
    import os

    if kind == "metric":
        with open(source) as fh:
            return parse_metric_file(fh.read())
    if os.path.exists(source):
        with open(source) as fh:
            return space_from_graph(parse_graph_file(fh.read()))
    return space_from_graph(builtin_graph(source))

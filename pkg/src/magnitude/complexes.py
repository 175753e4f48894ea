"""Magnitude chain blocks: simplex enumeration and boundary matrices.

A k-simplex is a tuple (x0,...,xk) of points with consecutive entries
distinct; its length is the sum of consecutive distances and must be finite
(tuples through INF gaps fall outside every finite grading block).  The
differential only ever drops interior points, and drops x_i exactly when
d(x_{i-1},x_{i+1}) = d(x_{i-1},x_i) + d(x_i,x_{i+1}); in that case the face
keeps the same length, which is why the length grading is preserved.

Bases are enumerated in lexicographic order by depth-first extension with
remaining-length pruning, so every downstream matrix is reproducible
bit-for-bit.
"""

from __future__ import annotations

from fractions import Fraction

from .rationals import ExtendedRational, INF
from .snf import SparseMatrix
from .spaces import QuasiMetricSpace, ZeroDistance


class NotNonIncreasing(ValueError):
    """A point map that fails d_Y(f x, f x') <= d_X(x, x')."""


def simplex_length(space: QuasiMetricSpace, simplex: tuple) -> ExtendedRational:
    total = ExtendedRational(0)
    for a, b in zip(simplex, simplex[1:]):
        total = total + space.d[a][b]
    return total


def enumerate_simplices(space: QuasiMetricSpace, k: int, l: Fraction) -> list:
    """All simplices of degree k and length exactly l, lexicographic."""
    l = Fraction(l)
    if l < 0 or k < 0:
        return []
    if k == 0:
        return [(x,) for x in range(space.n)] if l == 0 else []
    # smallest possible step, for budget pruning; zero steps (pseudo spaces)
    # disable the per-step lower bound
    finite = space.finite_distances()
    min_step = finite[0] if finite else None
    if space.positive_min and min_step is not None and l < k * min_step:
        return []
    out = []
    prefix = [0] * (k + 1)

    def extend(pos: int, remaining: Fraction):
        last = prefix[pos - 1]
        steps_left = k - pos
        for y in range(space.n):
            if y == last:
                continue
            d = space.d[last][y]
            if d.is_infinite:
                continue
            rest = remaining - d.value
            if rest < 0:
                continue
            if space.positive_min and min_step is not None and rest < steps_left * min_step:
                continue
            if steps_left == 0 and rest != 0:
                continue
            prefix[pos] = y
            if steps_left == 0:
                out.append(tuple(prefix))
            else:
                extend(pos + 1, rest)

    for x0 in range(space.n):
        prefix[0] = x0
        extend(1, l)
    return out


def boundary_entries(space: QuasiMetricSpace, simplex: tuple):
    """Yield (face, sign) for the magnitude differential of one simplex.

    The sum runs over interior indices i = 1..k-1 only, with sign (-1)^i;
    a face whose dropped point merges two equal neighbours is degenerate and
    contributes nothing (possible only on pseudo spaces).
    """
    k = len(simplex) - 1
    for i in range(1, k):
        a, b, c = simplex[i - 1], simplex[i], simplex[i + 1]
        if space.d[a][c] == space.d[a][b] + space.d[b][c]:
            if a == c:
                continue
            face = simplex[:i] + simplex[i + 1 :]
            yield face, (-1) ** i


def boundary_matrix(
    space: QuasiMetricSpace,
    k: int,
    l: Fraction,
    domain: list,
    codomain_index: dict,
) -> SparseMatrix:
    """Matrix of the differential MC_{k,l} -> MC_{k-1,l} in the given bases."""
    entries = {}
    for col, simplex in enumerate(domain):
        for face, sign in boundary_entries(space, simplex):
            row = codomain_index[face]
            entries[(row, col)] = entries.get((row, col), 0) + sign
    return SparseMatrix.from_entries(len(codomain_index), len(domain), entries)


def coboundary_matrix(
    space: QuasiMetricSpace,
    k: int,
    l: Fraction,
    domain: list,
    higher_index: dict,
) -> SparseMatrix:
    """Matrix of the dual differential on degree-k cochains: the transpose
    of the boundary from degree k+1 (domain is the degree-k basis)."""
    higher = sorted(higher_index, key=higher_index.get)
    index = {s: i for i, s in enumerate(domain)}
    return boundary_matrix(space, k + 1, l, higher, index).transpose()


def induced_chain_map(
    f: list,
    source: QuasiMetricSpace,
    target: QuasiMetricSpace,
    k: int,
    l: Fraction,
    source_basis: list,
    target_index: dict,
) -> SparseMatrix:
    """Chain map of a distance-non-increasing point map in degree (k, l).

    A simplex maps to its image tuple when the image has equal length, and
    to zero otherwise (in particular when the image tuple is degenerate).
    """
    if len(f) != source.n:
        raise NotNonIncreasing("point map must cover every source point")
    for x in range(source.n):
        for y in range(source.n):
            if target.d[f[x]][f[y]] > source.d[x][y]:
                raise NotNonIncreasing(
                    f"d_Y(f({x}),f({y})) > d_X({x},{y})"
                )
    entries = {}
    for col, simplex in enumerate(source_basis):
        image = tuple(f[x] for x in simplex)
        if any(a == b for a, b in zip(image, image[1:])):
            continue
        if simplex_length(target, image) != ExtendedRational(l):
            continue
        entries[(target_index[image], col)] = 1
    return SparseMatrix.from_entries(len(target_index), len(source_basis), entries)


def realizable_grades(space: QuasiMetricSpace, lmax) -> list:
    """All finite sums of distance values up to lmax (the additive closure of
    the finite nonzero distance set, plus 0), sorted and duplicate-free."""
    lmax = Fraction(lmax)
    if space.n == 0:
        return []
    if not space.positive_min:
        for i in range(space.n):
            for j in range(space.n):
                if i != j and space.d[i][j].is_zero:
                    raise ZeroDistance(i, j)
    values = space.finite_distances()
    grades = {Fraction(0)}
    frontier = [Fraction(0)]
    while frontier:
        nxt = []
        for g in frontier:
            for v in values:
                s = g + v
                if s <= lmax and s not in grades:
                    grades.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(grades)

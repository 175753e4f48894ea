"""Reconstruction of a space, up to isometry, from its cohomology ring.

The degree-(0,0) component of a positive-minimum space is the split ring
Z^n whose primitive idempotents are the point indicators; for primitive
idempotents e, f there is at most one grade l with e . MH^1_l . f != 0, and
that grade is the distance between adjacent points.  All remaining distances
are the shortest-path closure over chains of adjacent pairs (they exist
because any non-adjacent finite pair can be refined through a strict
intermediate point, and the positive minimum bounds the refinement depth).

Everything here consumes only an opaque RingPresentation, so it works on
scrambled bases: idempotents are found algebraically (splitting the
idempotent subalgebra of the ring mod 2, then Hensel-lifting 2-adically and
verifying exactly over Z), never by matching against a known basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rationals import INF, ExtendedRational
from .ring import RingPresentation, export_presentation
from .spaces import QuasiMetricSpace, is_isometric

_B00 = (0, Fraction(0))
_HENSEL_CAP = 4096  # bits; far beyond any coordinate produced by scrambling


class NotSplit(ValueError):
    """The (0,0) component does not decompose as Z^n."""


class NonUniqueGrade(ValueError):
    """Two grades carry e . MH^1_l . f != 0: corrupt presentation."""


@dataclass(frozen=True)
class Idempotent:
    coords: tuple


@dataclass(frozen=True)
class RecoveredSpace:
    points: tuple  # Idempotent per point, aligned with the metric indices
    space: QuasiMetricSpace


def _mult0(pres: RingPresentation, a, b, modulus=None):
    _, out = pres.mult(_B00, list(a), _B00, list(b))
    if out is None:
        raise NotSplit("the (0,0) component is missing product data")
    if modulus is not None:
        out = [v % modulus for v in out]
    return out


def _nullspace_mod2(matrix, n):
    """Basis of the nullspace of an n x n 0/1 matrix over F_2."""
    rows = [list(r) for r in matrix]
    pivots = {}
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, n) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(n):
            if i != r and rows[i][c]:
                rows[i] = [(x + y) % 2 for x, y in zip(rows[i], rows[r])]
        pivots[c] = r
        r += 1
    basis = []
    for c in range(n):
        if c in pivots:
            continue
        vec = [0] * n
        vec[c] = 1
        for pc, pr in pivots.items():
            vec[pc] = rows[pr][c] % 2
        basis.append(vec)
    return basis


def primitive_idempotents(pres: RingPresentation) -> list:
    """Exactly the n primitive idempotents of the (0,0) ring, as coordinate
    vectors, verified exactly (integral, idempotent, orthogonal, summing to
    the unit); NotSplit when the component is not Z^n."""
    if not pres.bidegrees:
        return []  # the empty space
    if _B00 not in pres.ranks:
        raise NotSplit("no (0,0) component")
    if pres.torsions[_B00]:
        raise NotSplit("torsion in the (0,0) component")
    n = pres.ranks[_B00]
    if n == 0:
        return []
    unit = list(pres.unit)

    # Frobenius is linear mod 2; its fixed subspace is spanned by the
    # idempotents, and refining the unit against that span isolates atoms.
    frob = [[0] * n for _ in range(n)]
    for i in range(n):
        gi = [1 if t == i else 0 for t in range(n)]
        sq = _mult0(pres, gi, gi, 2)
        for r in range(n):
            frob[r][i] = (sq[r] - (1 if r == i else 0)) % 2
    span = _nullspace_mod2(frob, n)
    atoms = [[v % 2 for v in unit]]
    for b in span:
        refined = []
        for e in atoms:
            eb = _mult0(pres, e, b, 2)
            rest = [(x + y) % 2 for x, y in zip(e, eb)]
            for part in (eb, rest):
                if any(part):
                    refined.append(part)
        atoms = refined
    if len(atoms) != n:
        raise NotSplit(f"found {len(atoms)} atoms mod 2, expected {n}")

    idempotents = []
    for atom in atoms:
        e = list(atom)
        bits = 1
        while True:
            # verify the centered candidate exactly over Z
            half = 1 << (bits - 1)
            cand = [((v + half) % (1 << bits)) - half for v in e]
            if _mult0(pres, cand, cand) == cand:
                idempotents.append(cand)
                break
            bits *= 2
            if bits > _HENSEL_CAP:
                raise NotSplit("idempotent lifting did not converge")
            modulus = 1 << bits
            sq = _mult0(pres, e, e, modulus)
            cube = _mult0(pres, sq, e, modulus)
            e = [(3 * s - 2 * c) % modulus for s, c in zip(sq, cube)]

    for i, e in enumerate(idempotents):
        if not any(e):
            raise NotSplit("zero idempotent")
        for f in idempotents[i + 1 :]:
            if any(_mult0(pres, e, f)) or any(_mult0(pres, f, e)):
                raise NotSplit("idempotents are not orthogonal")
    total = [sum(e[t] for e in idempotents) for t in range(n)]
    if total != unit:
        raise NotSplit("idempotents do not sum to the unit")
    return [Idempotent(tuple(e)) for e in sorted(idempotents)]


def adjacency_weights(pres: RingPresentation, e: Idempotent, f: Idempotent) -> ExtendedRational:
    """The unique grade l with e . MH^1_l . f != 0, INF if none."""
    found = []
    for l in pres.grades_in_degree(1):
        bideg = (1, l)
        nonzero = False
        for j in range(pres.dim(bideg)):
            gj = [1 if t == j else 0 for t in range(pres.dim(bideg))]
            _, left = pres.mult(_B00, list(e.coords), bideg, gj)
            if left is None or not any(left):
                continue
            _, full = pres.mult(bideg, left, _B00, list(f.coords))
            if full is not None and any(full):
                nonzero = True
                break
        if nonzero:
            found.append(l)
    if not found:
        return INF
    if len(found) > 1:
        raise NonUniqueGrade(f"grades {found} all pair nontrivially")
    return ExtendedRational(found[0])


def recover_space(pres: RingPresentation) -> RecoveredSpace:
    """Idempotents, adjacency weights, then all-pairs shortest paths."""
    points = primitive_idempotents(pres)
    n = len(points)
    dist = [[INF] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = ExtendedRational(0)
        for j in range(n):
            if i != j:
                dist[i][j] = adjacency_weights(pres, points[i], points[j])
    for k in range(n):
        for i in range(n):
            for j in range(n):
                via = dist[i][k] + dist[k][j]
                if via < dist[i][j]:
                    dist[i][j] = via
    return RecoveredSpace(tuple(points), QuasiMetricSpace(dist))


def recovery_roundtrip(
    space: QuasiMetricSpace,
    scramble_seed=None,
    kmax: int = 1,
    lmax=None,
) -> bool:
    """Export (scrambled), serialize, recover, compare up to isometry."""
    if lmax is None:
        lmax = space.max_finite_distance()
    pres = export_presentation(space, kmax, lmax, scramble_seed=scramble_seed)
    reparsed = RingPresentation.from_json(pres.to_json())
    recovered = recover_space(reparsed)
    return is_isometric(space, recovered.space)

"""Magnitude as a truncated power series, two ways.

The alternating sum sum_k (-1)^k rank MH^k_l(X) per grade l categorifies the
magnitude; the independent oracle inverts the similarity matrix
Z_ab = q^{d(a,b)} grade-by-grade (Z = I + N with N strictly positive, so the
Neumann series sum (-1)^j N^j converges in each truncated grade).  Both
series live over exact rational grades, so the comparison is exact equality,
no tolerance.  Pseudo spaces are refused: a zero distance would put a
grade-0 term into N and break convergence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import realizable_grades
from .homology import MagnitudeHomology
from .rationals import format_grade
from .spaces import QuasiMetricSpace, ZeroDistance


@dataclass(frozen=True)
class GradedSeries:
    """Finitely many integer coefficients keyed by exact rational grades."""

    lmax: Fraction
    coefficients: tuple  # sorted ((grade, coefficient), ...) with nonzero coefficients

    @staticmethod
    def from_dict(lmax, coeffs: dict) -> "GradedSeries":
        items = tuple(sorted((l, c) for l, c in coeffs.items() if c))
        return GradedSeries(Fraction(lmax), items)

    def coefficient(self, l) -> int:
        l = Fraction(l)
        for grade, c in self.coefficients:
            if grade == l:
                return c
        return 0

    def as_pairs(self) -> list:
        return [(format_grade(l), c) for l, c in self.coefficients]

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for l, c in self.coefficients:
            if l == 0:
                parts.append(str(c))
            else:
                parts.append(f"{'+' if c >= 0 else '-'} {abs(c)}*q^{format_grade(l)}")
        return " ".join(parts)


def euler_series(space: QuasiMetricSpace, lmax) -> GradedSeries:
    """Coefficient at l is sum_k (-1)^k rank MH^k_l; the k-sum is finite
    because k <= l / (minimum positive distance)."""
    lmax = Fraction(lmax)
    engine = MagnitudeHomology(space)
    coeffs = {}
    for l in realizable_grades(space, lmax):
        total = 0
        for k in range(engine.degree_bound(l) + 1):
            total += (-1) ** k * engine.cohomology(k, l).rank
        if total:
            coeffs[l] = total
    return GradedSeries.from_dict(lmax, coeffs)


def _series_mul(a: dict, b: dict, lmax: Fraction) -> dict:
    out = {}
    for la, ca in a.items():
        for lb, cb in b.items():
            l = la + lb
            if l <= lmax:
                out[l] = out.get(l, 0) + ca * cb
    return {l: c for l, c in out.items() if c}


def inversion_series(space: QuasiMetricSpace, lmax) -> GradedSeries:
    """Sum of the entries of Z^{-1} for Z_ab = q^{d(a,b)} (0 when d = INF),
    truncated at lmax via the Neumann series around Z = I + N."""
    lmax = Fraction(lmax)
    n = space.n
    if not space.positive_min:
        for i in range(n):
            for j in range(n):
                if i != j and space.d[i][j].is_zero:
                    raise ZeroDistance(i, j)
    off = {}
    for i in range(n):
        for j in range(n):
            if i != j and not space.d[i][j].is_infinite:
                d = space.d[i][j].value
                if d <= lmax:
                    off[(i, j)] = {d: 1}
    total = {Fraction(0): n} if n else {}
    power = {(i, i): {Fraction(0): 1} for i in range(n)}
    sign = 1
    while True:
        sign = -sign
        nxt = {}
        for (i, k), s in power.items():
            for j in range(n):
                t = off.get((k, j))
                if not t:
                    continue
                prod = _series_mul(s, t, lmax)
                if not prod:
                    continue
                cell = nxt.setdefault((i, j), {})
                for l, c in prod.items():
                    cell[l] = cell.get(l, 0) + c
        power = {ij: {l: c for l, c in s.items() if c} for ij, s in nxt.items()}
        power = {ij: s for ij, s in power.items() if s}
        if not power:
            break
        for s in power.values():
            for l, c in s.items():
                total[l] = total.get(l, 0) + sign * c
    return GradedSeries.from_dict(lmax, total)


def categorification_check(space: QuasiMetricSpace, lmax) -> bool:
    """Exact coefficientwise equality of the two series up to lmax."""
    return euler_series(space, lmax) == inversion_series(space, lmax)

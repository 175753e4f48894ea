"""Odd cyclic graphs C_n, n = 2m+1 >= 5: codes, admissible simplices, and
the generator/relation presentation of the cohomology ring.

A simplex on C_n is encoded by its sequence of signed circular steps
normalized into {-m,...,-1,1,...,m} ("clockwise" means increasing vertex
index mod n).  A code is admissible when each maximal constant-sign run
follows the alternating pattern (1, m, 1, m, ...) or its negative.  The
admissible simplices are cycles and their classes form a homology basis,
which makes the dual monomials p_x a basis of the cohomology ring.
The ring itself is generated by e_x (bidegree (0,0)), a_xy over oriented
edges ((1,1)), and b_xz over ordered pairs at distance m ((2, m+1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .homology import MagnitudeHomology
from .ring import (
    HomologyClass,
    RingClass,
    class_product,
    dual_classes,
    indicator_cochain,
    representative,
)
from .spaces import cycle_graph, space_from_graph


def half(n: int) -> int:
    if n < 5 or n % 2 == 0:
        raise ValueError(f"need an odd cycle C_n with n >= 5, got n={n}")
    return (n - 1) // 2


def cycle_space(n: int):
    return space_from_graph(cycle_graph(n))


def step(x: int, i: int, n: int) -> int:
    return (x + i) % n


def code_of(simplex: tuple, n: int) -> tuple:
    """Signed circular steps of a simplex, normalized into {-m..m} \\ {0}."""
    m = half(n)
    out = []
    for a, b in zip(simplex, simplex[1:]):
        v = (b - a) % n
        if v > m:
            v -= n
        if v == 0:
            raise ValueError("consecutive entries equal")
        out.append(v)
    return tuple(out)


def simplex_of(x0: int, code: tuple, n: int) -> tuple:
    points = [x0]
    for i in code:
        points.append(step(points[-1], i, n))
    return tuple(points)


def is_admissible(code: tuple, m: int) -> bool:
    """Maximal constant-sign runs must look like (1, m, 1, m, ...) up to sign."""
    runs = []
    for v in code:
        if abs(v) > m or v == 0:
            return False
        if runs and (runs[-1][-1] > 0) == (v > 0):
            runs[-1].append(v)
        else:
            runs.append([v])
    for run in runs:
        sign = 1 if run[0] > 0 else -1
        for t, v in enumerate(run):
            want = sign * (1 if t % 2 == 0 else m)
            if v != want:
                return False
    return True


def admissible_codes(m: int, k: int, l: int) -> list:
    """All admissible codes of degree k and total length l, in list order."""
    out = []
    code = []

    def extend(length_left: int, sign: int, runpos: int):
        pos = len(code)
        if pos == k:
            if length_left == 0:
                out.append(tuple(code))
            return
        steps_left = k - pos
        options = []
        if sign == 0:
            options = [(1, 1, 1), (-1, -1, 1)]
        else:
            cont = sign * (1 if runpos % 2 == 0 else m)
            options = [(cont, sign, runpos + 1), (-sign, -sign, 1)]
        for value, nsign, nrunpos in options:
            rest = length_left - abs(value)
            if rest < 0 or rest < (steps_left - 1) or rest > (steps_left - 1) * m:
                continue
            code.append(value)
            extend(rest, nsign, nrunpos)
            code.pop()

    extend(l, 0, 0)
    return out


@dataclass(frozen=True)
class AdmissibleSimplex:
    simplex: tuple
    code: tuple

    @property
    def k(self) -> int:
        return len(self.code)

    @property
    def l(self) -> int:
        return sum(abs(i) for i in self.code)


def admissible_simplices(n: int, k: int, l: int) -> list:
    m = half(n)
    if k == 0:
        return [AdmissibleSimplex((x,), ()) for x in range(n)] if l == 0 else []
    out = [
        AdmissibleSimplex(simplex_of(x0, code, n), code)
        for code in admissible_codes(m, k, l)
        for x0 in range(n)
    ]
    return sorted(out, key=lambda a: a.simplex)


def pieces(code: tuple, m: int) -> list:
    """Decompose an admissible code into pieces (1), (-1), (1,m), (-1,-m);
    a +-m entry can only close a piece, so the split is forced."""
    out = []
    i = 0
    while i < len(code):
        if i + 1 < len(code) and abs(code[i + 1]) == m and (code[i] > 0) == (code[i + 1] > 0):
            out.append((code[i], code[i + 1]))
            i += 2
        else:
            out.append((code[i],))
            i += 1
    return out


def monomial_of(adm: AdmissibleSimplex, n: int) -> list:
    """Generator word for an admissible simplex of positive degree:
    tokens ('a', x, y) for pieces (+-1) and ('b', x, z) for (+-1, +-m)."""
    if adm.k == 0:
        raise ValueError("monomials are defined for k > 0")
    m = half(n)
    word = []
    x = adm.simplex[0]
    for piece in pieces(adm.code, m):
        y = x
        for i in piece:
            y = step(y, i, n)
        word.append(("a" if len(piece) == 1 else "b", x, y))
        x = y
    return word


# ---------------------------------------------------------------------------
# the admissible homology basis and the ring presentation, verified
# against the engine
# ---------------------------------------------------------------------------

def _grades_for_degree(m: int, k: int):
    return [0] if k == 0 else list(range(k, k * m + 1))


def verify_gu_basis(n: int, kmax: int):
    """Check that admissible simplices are cycles whose classes form a basis
    of MH_{k,l}(C_n) in every block with k <= kmax; (ok, failures)."""
    space = cycle_space(n)
    m = half(n)
    engine = MagnitudeHomology(space)
    failures = []
    for k in range(kmax + 1):
        for l in _grades_for_degree(m, k):
            adms = admissible_simplices(n, k, l)
            group = engine.homology(k, l)
            if group.torsion or group.rank != len(adms):
                failures.append(
                    f"({k},{l}): {len(adms)} admissible simplices vs MH = {group}"
                )
                continue
            if not adms:
                continue
            index = engine.index(k, l)
            boundary = engine.boundary(k, l)
            quotient = engine.homology_quotient(k, l)
            coord_rows = []
            for adm in adms:
                chain = [0] * len(index)
                chain[index[adm.simplex]] = 1
                if any(boundary.matvec(chain)):
                    failures.append(f"({k},{l}): {adm.simplex} is not a cycle")
                    continue
                coord_rows.append(quotient.reduce(chain))
            from .snf import SparseMatrix, smith_normal_form

            sm = smith_normal_form(
                SparseMatrix.from_dense(coord_rows), need=(), divisibility=True
            )
            if sm.rank != len(adms):
                failures.append(f"({k},{l}): classes are dependent")
            elif sm.diag != [1] * len(adms):
                failures.append(f"({k},{l}): classes span a proper sublattice")
    return not failures, failures


def _oriented_edges(n: int):
    return [(x, step(x, s, n)) for x in range(n) for s in (1, -1)]


def _b_pairs(n: int):
    """Ordered pairs (x, z) at distance m, with the intermediate y of the
    admissible 2-simplex (x, y, z)."""
    m = half(n)
    out = []
    for x in range(n):
        for s in (1, -1):
            z = step(x, s * (m + 1), n)  # circular offset s(m+1), distance m
            y = step(x, s, n)
            out.append((x, z, y))
    return out


class CyclicRing:
    """Generator classes of MH(C_n) instantiated inside the engine."""

    def __init__(self, n: int):
        self.n = n
        self.m = half(n)
        self.space = cycle_space(n)
        self.engine = MagnitudeHomology(self.space)
        self.e = {}
        self.a = {}
        self.b = {}
        self._instantiate()

    def _cycle_class(self, simplex: tuple, l) -> HomologyClass:
        k = len(simplex) - 1
        engine = self.engine
        chain = [0] * len(engine.simplices(k, l))
        chain[engine.index(k, l)[simplex]] = 1
        quotient = engine.homology_quotient(k, Fraction(l))
        return HomologyClass(k, Fraction(l), quotient.reduce(chain))

    def _instantiate(self):
        n, m = self.n, self.m
        point_classes = [self._cycle_class((x,), 0) for x in range(n)]
        for x, cls in zip(range(n), dual_classes(self.engine, point_classes)):
            self.e[x] = cls
        edges = _oriented_edges(n)
        edge_classes = [self._cycle_class(edge, 1) for edge in edges]
        for edge, cls in zip(edges, dual_classes(self.engine, edge_classes)):
            self.a[edge] = cls
        bs = _b_pairs(n)
        b_classes = [self._cycle_class((x, y, z), m + 1) for (x, z, y) in bs]
        for (x, z, _y), cls in zip(bs, dual_classes(self.engine, b_classes)):
            self.b[(x, z)] = cls

    def generator(self, token) -> RingClass:
        kind = token[0]
        if kind == "e":
            return self.e[token[1]]
        if kind == "a":
            return self.a[(token[1], token[2])]
        return self.b[(token[1], token[2])]

    def word_class(self, word) -> RingClass:
        out = self.generator(word[0])
        for token in word[1:]:
            out = class_product(self.engine, out, self.generator(token))
        return out

    def pair_with_simplex(self, alpha: RingClass, simplex: tuple) -> int:
        """Kronecker pairing against the (cycle) indicator chain."""
        phi = representative(self.engine, alpha).coords
        idx = self.engine.index(alpha.k, alpha.l)[simplex]
        return phi[idx]


def reduce_word(word, n: int):
    """Symbolic reduction of a generator word by the presentation relations:
    returns None for zero, or the admissible simplex with p_x = word."""
    m = half(n)

    def direction(token):
        kind, x, y = token
        off = (y - x) % n
        if kind == "a":
            if off == 1:
                return 1
            if off == n - 1:
                return -1
        else:
            if off == m + 1:
                return 1
            if off == m:
                return -1
        raise ValueError(f"not a generator: {token}")

    # e-absorption: e_x e_x = e_x, e_x e_y = 0, e composable with a/b absorbs
    tokens = list(word)
    for token in tokens:
        direction(token) if token[0] != "e" else None
    changed = True
    while changed:
        changed = False
        for i in range(len(tokens) - 1):
            s, t = tokens[i], tokens[i + 1]
            if s[0] == "e" and t[0] == "e":
                if s[1] != t[1]:
                    return None
                tokens = tokens[: i + 1] + tokens[i + 2 :]
                changed = True
                break
            if s[0] == "e":
                if s[1] != t[1]:
                    return None
                tokens = tokens[:i] + tokens[i + 1 :]
                changed = True
                break
            if t[0] == "e":
                if s[2] != t[1]:
                    return None
                tokens = tokens[: i + 1] + tokens[i + 2 :]
                changed = True
                break
    if len(tokens) == 1 and tokens[0][0] == "e":
        return AdmissibleSimplex((tokens[0][1],), ())
    for s, t in zip(tokens, tokens[1:]):
        if s[2] != t[1]:
            return None
    # bubble a's past b's inside each maximal constant-direction factor
    changed = True
    while changed:
        changed = False
        for i in range(len(tokens) - 1):
            s, t = tokens[i], tokens[i + 1]
            if s[0] == "a" and t[0] == "b" and direction(s) == direction(t):
                d = direction(s)
                w = s[1]
                y = step(w, d * (m + 1), n)
                z = step(y, d, n)
                tokens[i] = ("b", w, y)
                tokens[i + 1] = ("a", y, z)
                changed = True
                break
    # two consecutive same-direction a's vanish (endpoints differ as n is odd)
    for s, t in zip(tokens, tokens[1:]):
        if s[0] == "a" and t[0] == "a" and direction(s) == direction(t):
            return None
    code = []
    for token in tokens:
        d = direction(token)
        code.extend([d] if token[0] == "a" else [d, d * m])
    code = tuple(code)
    if not is_admissible(code, m):
        return None
    return AdmissibleSimplex(simplex_of(tokens[0][1], code, n), code)


def verify_presentation(n: int, kmax: int):
    """Check every relation of the cyclic presentation, the Kronecker duality
    <p_x, [y]> = delta, and the per-bidegree monomial counts; (ok, failures)."""
    ring = CyclicRing(n)
    n_, m = ring.n, ring.m
    engine = ring.engine
    failures = []

    def expect_equal(lhs: RingClass, rhs: RingClass, label: str):
        if lhs != rhs:
            failures.append(f"{label}: {lhs} != {rhs}")

    def expect_zero(cls: RingClass, label: str):
        if any(cls.coords):
            failures.append(f"{label}: nonzero {cls.coords}")

    prod = lambda x, y: class_product(engine, x, y)

    for x in range(n_):
        expect_equal(prod(ring.e[x], ring.e[x]), ring.e[x], f"e_{x}^2 = e_{x}")
        for y in range(n_):
            if x != y:
                expect_zero(prod(ring.e[x], ring.e[y]), f"e_{x} e_{y} = 0")
    for (x, y), axy in ring.a.items():
        expect_equal(prod(ring.e[x], axy), axy, f"e_{x} a_{x}{y}")
        expect_equal(prod(axy, ring.e[y]), axy, f"a_{x}{y} e_{y}")
    for (x, z), bxz in ring.b.items():
        expect_equal(prod(ring.e[x], bxz), bxz, f"e_{x} b_{x}{z}")
        expect_equal(prod(bxz, ring.e[z]), bxz, f"b_{x}{z} e_{z}")
    for (x, y), axy in ring.a.items():
        for (y2, z), ayz in ring.a.items():
            if y2 == y and z != x:
                expect_zero(prod(axy, ayz), f"a_{x}{y} a_{y}{z} = 0")
    for w in range(n_):
        for s in (1, -1):
            x = step(w, s, n_)
            y = step(w, s * (m + 1), n_)
            z = step(w, s * (m + 2), n_)
            lhs = prod(ring.a[(w, x)], ring.b[(x, z)])
            rhs = prod(ring.b[(w, y)], ring.a[(y, z)])
            expect_equal(lhs, rhs, f"a_{w}{x} b_{x}{z} = b_{w}{y} a_{y}{z}")

    # Kronecker duality of monomials against the Gu basis, plus span counts
    for k in range(kmax + 1):
        for l in _grades_for_degree(m, k):
            adms = admissible_simplices(n_, k, l)
            group = engine.cohomology(k, l)
            if group.torsion or group.rank != len(adms):
                failures.append(f"({k},{l}): monomial count vs rank {group}")
            for adm in adms:
                if k == 0:
                    p = ring.e[adm.simplex[0]]
                else:
                    p = ring.word_class(monomial_of(adm, n_))
                if (p.k, p.l) != (k, Fraction(l)):
                    failures.append(f"p_{adm.simplex} lands in ({p.k},{p.l})")
                    continue
                for other in adms:
                    got = ring.pair_with_simplex(p, other.simplex)
                    want = 1 if other == adm else 0
                    if got != want:
                        failures.append(
                            f"<p_{adm.simplex}, [{other.simplex}]> = {got}, want {want}"
                        )
    return not failures, failures

"""Sparse exact integer linear algebra: Smith normal form with transforms.

All arithmetic is arbitrary-precision (Python int); intermediate entries in
integer elimination can blow up even on modest matrices, so fixed-width types
are never used.  Pivots are chosen with minimal absolute value (ties broken
towards sparse rows/columns) to limit entry growth.

Matrices are dict-of-rows {r: {c: v}} with nonzero v only.  The decomposition
satisfies U * M * V = D exactly, with U, V unimodular and D diagonal with a
divisibility chain d1 | d2 | ... .
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass


def xgcd(a: int, b: int):
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


class SparseMatrix:
    """Immutable-by-convention sparse integer matrix."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else {}

    @staticmethod
    def from_entries(nrows, ncols, entries):
        rows = {}
        for (r, c), v in entries.items():
            if v:
                rows.setdefault(r, {})[c] = v
        return SparseMatrix(nrows, ncols, rows)

    @staticmethod
    def from_dense(dense):
        nrows = len(dense)
        ncols = len(dense[0]) if nrows else 0
        rows = {}
        for r, row in enumerate(dense):
            d = {c: v for c, v in enumerate(row) if v}
            if d:
                rows[r] = d
        return SparseMatrix(nrows, ncols, rows)

    @staticmethod
    def identity(n):
        return SparseMatrix(n, n, {i: {i: 1} for i in range(n)})

    def entry(self, r, c) -> int:
        return self.rows.get(r, {}).get(c, 0)

    def nnz(self) -> int:
        return sum(len(d) for d in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    def transpose(self) -> "SparseMatrix":
        rows = {}
        for r, d in self.rows.items():
            for c, v in d.items():
                rows.setdefault(c, {})[r] = v
        return SparseMatrix(self.ncols, self.nrows, rows)

    def matvec(self, vec) -> list:
        """Dense vector (length ncols) -> dense vector (length nrows)."""
        out = [0] * self.nrows
        for r, d in self.rows.items():
            s = 0
            for c, v in d.items():
                x = vec[c]
                if x:
                    s += v * x
            out[r] = s
        return out

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        rows = {}
        for r, d in self.rows.items():
            acc = {}
            for k, v in d.items():
                for c, w in other.rows.get(k, {}).items():
                    acc[c] = acc.get(c, 0) + v * w
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                rows[r] = acc
        return SparseMatrix(self.nrows, other.ncols, rows)

    def column(self, c) -> dict:
        return {r: d[c] for r, d in self.rows.items() if c in d}

    def to_dense(self) -> list:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, d in self.rows.items():
            for c, v in d.items():
                out[r][c] = v
        return out

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


@dataclass
class SmithDecomposition:
    """U * M * V = D with U, V unimodular, D = diag(diag) padded with zeros."""

    nrows: int
    ncols: int
    diag: list
    U: SparseMatrix = None
    UinvT: SparseMatrix = None
    VT: SparseMatrix = None
    Vinv: SparseMatrix = None

    @property
    def rank(self) -> int:
        return len(self.diag)

    def d_matrix(self) -> SparseMatrix:
        return SparseMatrix.from_entries(
            self.nrows, self.ncols, {(i, i): v for i, v in enumerate(self.diag)}
        )

    def kernel_basis(self):
        """Columns of V past the rank: a lattice basis of ker(M) in Z^ncols."""
        return [self.VT.rows.get(j, {}) for j in range(self.rank, self.ncols)]


class _Eliminator:
    """Mutable elimination state over synchronized row/column indexes."""

    def __init__(self, matrix: SparseMatrix, need):
        self.rows = {r: dict(d) for r, d in matrix.rows.items()}
        self.colrows = {}
        for r, d in self.rows.items():
            for c in d:
                self.colrows.setdefault(c, set()).add(r)
        self.nrows = matrix.nrows
        self.ncols = matrix.ncols
        self.need = frozenset(need)
        self.U = {r: {r: 1} for r in range(self.nrows)} if "U" in self.need else None
        self.UinvT = {r: {r: 1} for r in range(self.nrows)} if "Uinv" in self.need else None
        self.VT = {c: {c: 1} for c in range(self.ncols)} if "V" in self.need else None
        self.Vinv = {c: {c: 1} for c in range(self.ncols)} if "Vinv" in self.need else None
        self.done_rows = set()
        self.done_cols = set()
        self.heap = []
        for r, d in self.rows.items():
            for c, v in d.items():
                self._push(r, c, v)

    # -- heap of pivot candidates, keyed for minimal entry growth ----------

    def _key(self, r, c, v):
        return (abs(v), len(self.rows.get(r, ())) + len(self.colrows.get(c, ())), r, c)

    def _push(self, r, c, v):
        heapq.heappush(self.heap, self._key(r, c, v))

    def _pop_pivot(self):
        while self.heap:
            key = heapq.heappop(self.heap)
            _, _, r, c = key
            if r in self.done_rows or c in self.done_cols:
                continue
            v = self.rows.get(r, {}).get(c)
            if v is None:
                continue
            fresh = self._key(r, c, v)
            if fresh != key:
                heapq.heappush(self.heap, fresh)
                continue
            return r, c
        return None

    # -- elementary operations, mirrored on the transforms -----------------

    @staticmethod
    def _addrow(target: dict, source: dict, t: int):
        for c, v in source.items():
            nv = target.get(c, 0) + t * v
            if nv:
                target[c] = nv
            else:
                target.pop(c, None)

    def row_op(self, r2, r1, t):
        """row r2 += t * row r1"""
        row1 = self.rows.get(r1)
        if not row1 or not t:
            return
        row2 = self.rows.setdefault(r2, {})
        for c, v in row1.items():
            nv = row2.get(c, 0) + t * v
            if nv:
                if c not in row2:
                    self.colrows.setdefault(c, set()).add(r2)
                row2[c] = nv
                self._push(r2, c, nv)
            else:
                if c in row2:
                    del row2[c]
                    self.colrows[c].discard(r2)
        if not row2:
            del self.rows[r2]
        if self.U is not None:
            self._addrow(self.U.setdefault(r2, {}), self.U.get(r1, {}), t)
        if self.UinvT is not None:
            self._addrow(self.UinvT.setdefault(r1, {}), self.UinvT.get(r2, {}), -t)

    def col_op(self, c2, c1, t):
        """col c2 += t * col c1"""
        if not t:
            return
        for r in list(self.colrows.get(c1, ())):
            row = self.rows[r]
            v = row[c1]
            nv = row.get(c2, 0) + t * v
            if nv:
                if c2 not in row:
                    self.colrows.setdefault(c2, set()).add(r)
                row[c2] = nv
                self._push(r, c2, nv)
            else:
                if c2 in row:
                    del row[c2]
                    self.colrows[c2].discard(r)
        if self.VT is not None:
            self._addrow(self.VT.setdefault(c2, {}), self.VT.get(c1, {}), t)
        if self.Vinv is not None:
            self._addrow(self.Vinv.setdefault(c1, {}), self.Vinv.get(c2, {}), -t)

    def negate_row(self, r):
        row = self.rows.get(r, {})
        for c in row:
            row[c] = -row[c]
        if self.U is not None:
            u = self.U.get(r, {})
            for c in u:
                u[c] = -u[c]
        if self.UinvT is not None:
            u = self.UinvT.get(r, {})
            for c in u:
                u[c] = -u[c]

    def two_row_op(self, r1, r2, x, y, u, v):
        """rows (r1, r2) <- (x*r1 + y*r2, u*r1 + v*r2); x*v - y*u = +-1."""
        row1 = dict(self.rows.get(r1, {}))
        row2 = dict(self.rows.get(r2, {}))
        self._set_row(r1, self._combine(row1, row2, x, y))
        self._set_row(r2, self._combine(row1, row2, u, v))
        det = x * v - y * u
        if self.U is not None:
            u1 = self.U.get(r1, {})
            u2 = self.U.get(r2, {})
            self.U[r1] = self._combine(u1, u2, x, y)
            self.U[r2] = self._combine(u1, u2, u, v)
        if self.UinvT is not None:
            # Uinv <- Uinv * R^-1 with R^-1 = det * [[v, -y], [-u, x]]
            t1 = self.UinvT.get(r1, {})
            t2 = self.UinvT.get(r2, {})
            self.UinvT[r1] = self._combine(t1, t2, det * v, -det * u)
            self.UinvT[r2] = self._combine(t1, t2, -det * y, det * x)

    @staticmethod
    def _combine(a: dict, b: dict, s: int, t: int) -> dict:
        out = {}
        for c, v in a.items():
            out[c] = s * v
        for c, v in b.items():
            nv = out.get(c, 0) + t * v
            if nv:
                out[c] = nv
            else:
                out.pop(c, None)
        return {c: v for c, v in out.items() if v}

    def _set_row(self, r, newrow: dict):
        for c in self.rows.get(r, {}):
            self.colrows[c].discard(r)
        if newrow:
            self.rows[r] = newrow
            for c, v in newrow.items():
                self.colrows.setdefault(c, set()).add(r)
                self._push(r, c, v)
        else:
            self.rows.pop(r, None)

    # -- pivot elimination --------------------------------------------------

    def eliminate(self, r, c):
        """Clear row r and column c, gcd-reducing until the pivot divides
        everything it meets; returns the final (r, c, pivot>0)."""
        while True:
            if self.rows[r][c] < 0:
                self.negate_row(r)
            p = self.rows[r][c]
            # sweep the column with floor quotients; remainders land in [0, p)
            for r2 in list(self.colrows.get(c, ())):
                if r2 == r:
                    continue
                q = self.rows[r2][c] // p
                self.row_op(r2, r, -q)
            leftovers = [r2 for r2 in self.colrows.get(c, ()) if r2 != r]
            if leftovers:
                r = min(leftovers, key=lambda rr: (self.rows[rr][c], rr))
                continue
            for c2 in list(self.rows.get(r, {})):
                if c2 == c:
                    continue
                q = self.rows[r][c2] // p
                self.col_op(c2, c, -q)
            rem = [c2 for c2 in self.rows.get(r, {}) if c2 != c]
            if rem:
                c = min(rem, key=lambda cc: (self.rows[r][cc], cc))
                continue
            return r, c, self.rows[r][c]

    def deactivate(self, r, c):
        # keep data live (the divisibility pass still edits pivot rows),
        # just exclude the row and column from future pivot selection
        self.done_rows.add(r)
        self.done_cols.add(c)


def smith_normal_form(
    matrix: SparseMatrix,
    need=("U", "Uinv", "V", "Vinv"),
    divisibility: bool = True,
) -> SmithDecomposition:
    """Full Smith normal form; `need` selects which transforms to track and
    `divisibility=False` skips the invariant-factor chain (rank-only uses)."""
    elim = _Eliminator(matrix, need)
    pivots = []
    while True:
        cell = elim._pop_pivot()
        if cell is None:
            break
        r, c = elim.eliminate(*cell)[:2]
        pivots.append((r, c, elim.rows[r][c]))
        elim.deactivate(r, c)
        if (r, c) != cell:
            # the popped cell's heap entry was consumed but the pivot
            # migrated during gcd-chasing; restore its candidacy
            r0, c0 = cell
            v = elim.rows.get(r0, {}).get(c0)
            if v is not None and r0 not in elim.done_rows and c0 not in elim.done_cols:
                elim._push(r0, c0, v)

    if divisibility:
        _fix_divisibility(elim, pivots)

    row_order = [r for r, _, _ in pivots]
    row_order += sorted(set(range(elim.nrows)) - set(row_order))
    col_order = [c for _, c, _ in pivots]
    col_order += sorted(set(range(elim.ncols)) - set(col_order))

    def permuted(table, order, n, m):
        if table is None:
            return None
        rows = {}
        for i, j in enumerate(order):
            d = table.get(j)
            if d:
                rows[i] = dict(d)
        return SparseMatrix(n, m, rows)

    return SmithDecomposition(
        nrows=matrix.nrows,
        ncols=matrix.ncols,
        diag=[p for _, _, p in pivots],
        U=permuted(elim.U, row_order, elim.nrows, elim.nrows),
        UinvT=permuted(elim.UinvT, row_order, elim.nrows, elim.nrows),
        VT=permuted(elim.VT, col_order, elim.ncols, elim.ncols),
        Vinv=permuted(elim.Vinv, col_order, elim.ncols, elim.ncols),
    )


def _fix_divisibility(elim: _Eliminator, pivots: list):
    """Pairwise gcd/lcm repair so that pivots form a divisibility chain."""
    changed = True
    while changed:
        changed = False
        for i in range(len(pivots)):
            ri, ci, a = pivots[i]
            for j in range(i + 1, len(pivots)):
                rj, cj, b = pivots[j]
                if b % a == 0:
                    continue
                changed = True
                x, y, g = xgcd(a, b)
                ll = a // g * b
                # col ci += col cj brings b into the pivot column, then a
                # unimodular 2x2 row op produces diag(g, lcm), then the stray
                # entry is cleared by an exact column op.
                elim.col_op(ci, cj, 1)
                elim.two_row_op(ri, rj, x, y, -(b // g), a // g)
                stray = elim.rows.get(ri, {}).get(cj, 0)
                elim.col_op(cj, ci, -(stray // g))
                if elim.rows[rj][cj] < 0:
                    elim.negate_row(rj)
                pivots[i] = (ri, ci, g)
                pivots[j] = (rj, cj, ll)
                a = g


def rank(matrix: SparseMatrix) -> int:
    return smith_normal_form(matrix, need=(), divisibility=False).rank


def invariant_factors(matrix: SparseMatrix) -> list:
    return smith_normal_form(matrix, need=(), divisibility=True).diag


def dot(vec_dict: dict, vec: list) -> int:
    return sum(v * vec[c] for c, v in vec_dict.items())

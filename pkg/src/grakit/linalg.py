"""Exact sparse linear algebra over the rationals.

Everything here is deterministic and exact: coefficients are
`fractions.Fraction`, no floats anywhere.  Matrices are small-to-medium
sparse (the cohomology windows and relation ideals produced elsewhere in
this package), so plain Gauss-Jordan over Q with a min-fill pivot
heuristic is both simple and fast enough.
"""

from __future__ import annotations

from fractions import Fraction


class SparseMatrix:
    """Sparse matrix with Fraction entries, keyed by (row, col).

    Zero entries are never stored; `set_entry` with value 0 deletes.
    """

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (i, j), v in entries.items():
                self.set_entry(i, j, v)

    def set_entry(self, i, j, value):
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError("entry (%d, %d) out of range" % (i, j))
        value = Fraction(value)
        if value == 0:
            self.entries.pop((i, j), None)
        else:
            self.entries[(i, j)] = value

    def get_entry(self, i, j):
        return self.entries.get((i, j), Fraction(0))

    def transpose(self):
        t = SparseMatrix(self.cols, self.rows)
        for (i, j), v in self.entries.items():
            t.entries[(j, i)] = v
        return t

    def mul_vector(self, vec):
        """Matrix times column vector (length cols), exact."""
        if len(vec) != self.cols:
            raise ValueError("vector length %d != cols %d" % (len(vec), self.cols))
        out = [Fraction(0)] * self.rows
        for (i, j), v in self.entries.items():
            if vec[j]:
                out[i] += v * vec[j]
        return out

    def to_rows(self):
        """Row-major copy as a list of {col: Fraction} dicts."""
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def __repr__(self):
        return "SparseMatrix(%d x %d, %d nonzero)" % (
            self.rows, self.cols, len(self.entries))


def _eliminate(rows, ncols, pivot_limit=None):
    """In-place row reduction; returns (pivots, leftovers).

    `pivots` is a list of (pivot_row, pivot_col); pivot columns are
    restricted to j < pivot_limit (default: all columns).  `leftovers`
    are nonzero rows supported entirely on excluded columns.

    Pivot choice is Markowitz-flavoured: among unprocessed rows, pick
    the entry minimising (row fill - 1) * (column fill - 1).  Only the
    resulting rank/kernel data is contractual.
    """
    if pivot_limit is None:
        pivot_limit = ncols
    col_count = {}
    for r in rows:
        for j in r:
            col_count[j] = col_count.get(j, 0) + 1
    pivots = []
    leftovers = []
    live = [r for r in rows if r]
    while live:
        best = None
        for r in live:
            for j in r:
                if j >= pivot_limit:
                    continue
                score = (len(r) - 1) * (col_count.get(j, 1) - 1)
                if best is None or score < best[0]:
                    best = (score, r, j)
            if best is not None and best[0] == 0:
                break
        if best is None:
            leftovers.extend(live)
            break
        _, prow, pcol = best
        pval = prow[pcol]
        inv = 1 / pval
        for j in list(prow):
            prow[j] *= inv
        live.remove(prow)
        for r in live:
            factor = r.get(pcol)
            if factor is None:
                continue
            for j, v in prow.items():
                new = r.get(j, Fraction(0)) - factor * v
                if new == 0:
                    r.pop(j, None)
                    col_count[j] = col_count.get(j, 1) - 1
                else:
                    if j not in r:
                        col_count[j] = col_count.get(j, 0) + 1
                    r[j] = new
        live = [r for r in live if r]
        pivots.append((prow, pcol))
    return pivots, leftovers


def rank(m: SparseMatrix) -> int:
    """Rank over Q."""
    pivots, _ = _eliminate(m.to_rows(), m.cols)
    return len(pivots)


def _rref(m: SparseMatrix):
    """Reduced row echelon form: (list of pivot rows as dicts, pivot cols)."""
    pivots, _ = _eliminate(m.to_rows(), m.cols)
    pivots.sort(key=lambda p: p[1])
    # back-substitute to clear above-pivot entries
    for k in range(len(pivots) - 1, -1, -1):
        prow, pcol = pivots[k]
        for r, _ in pivots[:k]:
            factor = r.get(pcol)
            if factor is None:
                continue
            for j, v in prow.items():
                new = r.get(j, Fraction(0)) - factor * v
                if new == 0:
                    r.pop(j, None)
                else:
                    r[j] = new
    return [p[0] for p in pivots], [p[1] for p in pivots]


def kernel_basis(m: SparseMatrix):
    """Basis of ker(m) as a list of Fraction vectors of length cols.

    dim ker = cols - rank; every vector multiplies back to exactly zero.
    """
    prows, pcols = _rref(m)
    pivot_of_col = {c: r for r, c in zip(prows, pcols)}
    free_cols = [j for j in range(m.cols) if j not in pivot_of_col]
    basis = []
    for f in free_cols:
        vec = [Fraction(0)] * m.cols
        vec[f] = Fraction(1)
        for r, c in zip(prows, pcols):
            coeff = r.get(f)
            if coeff is not None:
                vec[c] = -coeff
        basis.append(vec)
    return basis


def in_image(m: SparseMatrix, v) -> bool:
    """Exact test whether v (length rows) lies in the column span of m."""
    if len(v) != m.rows:
        raise ValueError("vector length %d != rows %d" % (len(v), m.rows))
    base = rank(m)
    aug = SparseMatrix(m.rows, m.cols + 1)
    aug.entries = dict(m.entries)
    for i, val in enumerate(v):
        if val:
            aug.entries[(i, m.cols)] = Fraction(val)
    return rank(aug) == base


def solve(m: SparseMatrix, v):
    """One exact solution x of m·x = v, or None when inconsistent."""
    if len(v) != m.rows:
        raise ValueError("vector length %d != rows %d" % (len(v), m.rows))
    rows = m.to_rows()
    for i, val in enumerate(v):
        if val:
            rows[i][m.cols] = Fraction(val)
    pivots, leftovers = _eliminate(rows, m.cols + 1, pivot_limit=m.cols)
    if leftovers:
        return None
    pivots.sort(key=lambda p: p[1])
    for k in range(len(pivots) - 1, -1, -1):
        prow, pcol = pivots[k]
        for r, _ in pivots[:k]:
            factor = r.get(pcol)
            if factor is None:
                continue
            for j, val in prow.items():
                new = r.get(j, Fraction(0)) - factor * val
                if new == 0:
                    r.pop(j, None)
                else:
                    r[j] = new
    x = [Fraction(0)] * m.cols
    for prow, pcol in pivots:
        x[pcol] = prow.get(m.cols, Fraction(0))
    return x

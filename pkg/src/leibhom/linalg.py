"""Exact sparse rational linear algebra.

Vectors are dicts {index: value} with no stored zeros; values are ints or
Fractions (mixed arithmetic stays exact). Matrices are column-major. Two
elimination engines live here: SpanSolver, a rational column echelon with
coefficient tracking (kernels, membership, homology coordinates fall out of
one pass), and IntEchelon, a rank-only integer staircase used for the large
streamed computations where nothing but pivot counts is needed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def vec_scaled_add(acc: dict, vec: dict, coeff) -> None:
    """acc += coeff * vec, in place, pruning zeros."""
    if not coeff:
        return
    for k, v in vec.items():
        val = acc.get(k, 0) + coeff * v
        if val:
            acc[k] = val
        else:
            acc.pop(k, None)


def integerize(vec: dict) -> dict:
    """Clear denominators: the returned integer vector spans the same line."""
    mult = 1
    for v in vec.values():
        if isinstance(v, Fraction) and v.denominator != 1:
            d = v.denominator
            mult = mult // gcd(mult, d) * d
    if mult == 1:
        return {k: int(v) for k, v in vec.items()}
    return {k: int(v * mult) for k, v in vec.items()}


class SparseMatrix:
    """Column-major exact sparse matrix over the rationals."""

    __slots__ = ("rows", "cols", "columns")

    def __init__(self, rows: int, cols: int, columns=None):
        self.rows = rows
        self.cols = cols
        self.columns = columns if columns is not None else [dict() for _ in range(cols)]

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries) -> "SparseMatrix":
        m = cls(rows, cols)
        for r, c, v in entries:
            if not 0 <= r < rows or not 0 <= c < cols:
                raise IndexError("entry (%d, %d) outside %dx%d" % (r, c, rows, cols))
            col = m.columns[c]
            val = col.get(r, 0) + v
            if val:
                col[r] = val
            else:
                col.pop(r, None)
        return m

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        m = cls(n, n)
        for i in range(n):
            m.columns[i][i] = 1
        return m

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols)

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)

    def entry(self, r: int, c: int):
        return self.columns[c].get(r, 0)

    def apply(self, vec: dict) -> dict:
        """Matrix-vector product; vec indexes columns."""
        out: dict = {}
        for j, coeff in vec.items():
            vec_scaled_add(out, self.columns[j], coeff)
        return out

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch %dx%d @ %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))
        out = SparseMatrix(self.rows, other.cols)
        for j in range(other.cols):
            out.columns[j] = self.apply(other.columns[j])
        return out

    def __matmul__(self, other):
        return self.matmul(other)

    def transpose(self) -> "SparseMatrix":
        out = SparseMatrix(self.cols, self.rows)
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out.columns[i][j] = v
        return out

    def scaled(self, coeff) -> "SparseMatrix":
        out = SparseMatrix(self.rows, self.cols)
        if coeff:
            for j, col in enumerate(self.columns):
                out.columns[j] = {i: coeff * v for i, v in col.items()}
        return out

    def __neg__(self):
        return self.scaled(-1)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        out = SparseMatrix(self.rows, self.cols)
        for j in range(self.cols):
            col = dict(self.columns[j])
            vec_scaled_add(col, other.columns[j], 1)
            out.columns[j] = col
        return out

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        for a, b in zip(self.columns, other.columns):
            if len(a) != len(b):
                return False
            for k, v in a.items():
                if b.get(k, 0) != v:
                    return False
        return True

    def __hash__(self):
        raise TypeError("SparseMatrix is not hashable")

    def entries_sorted(self):
        """All nonzero entries as (row, col, value), sorted by (row, col)."""
        out = []
        for c, col in enumerate(self.columns):
            for r, v in col.items():
                out.append((r, c, v))
        out.sort(key=lambda t: (t[0], t[1]))
        return out

    def __repr__(self):
        return "SparseMatrix(%dx%d, nnz=%d)" % (self.rows, self.cols, self.nnz())


class SpanSolver:
    """Incremental column echelon over Q with leading-index pivots.

    Pivots are stored normalized (leading entry 1, lead = smallest index).
    With combo tracking on, each pivot remembers its expression over the
    originally inserted vectors, so express() answers membership questions
    with explicit coefficients and rejected inserts yield kernel relations.
    """

    def __init__(self, track_combos: bool = True, track_relations: bool = False):
        self.pivots: dict = {}       # lead index -> (vector, combo or None)
        self.track_combos = track_combos or track_relations
        self.track_relations = track_relations
        self.relations: list = []    # combos summing to zero (kernel data)
        self.accepted: list = []     # insert indices that increased rank
        self.num_inserted = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, vec: dict, combo):
        while vec:
            lead = min(vec)
            hit = self.pivots.get(lead)
            if hit is None:
                return lead, vec, combo
            pvec, pcombo = hit
            c = vec[lead]
            for k, v in pvec.items():
                val = vec.get(k, 0) - c * v
                if val:
                    vec[k] = val
                else:
                    vec.pop(k, None)
            if combo is not None and pcombo is not None:
                vec_scaled_add(combo, pcombo, -c)
        return None, vec, combo

    def insert(self, vec: dict) -> bool:
        """Insert a vector; True iff it enlarged the span."""
        idx = self.num_inserted
        self.num_inserted += 1
        work = dict(vec)
        combo = {idx: 1} if self.track_combos else None
        lead, work, combo = self._reduce(work, combo)
        if lead is None:
            if self.track_relations:
                self.relations.append(combo)
            return False
        c = work[lead]
        if c == -1:
            work = {k: -v for k, v in work.items()}
            if combo is not None:
                combo = {k: -v for k, v in combo.items()}
        elif c != 1:
            inv = Fraction(1, 1) / c
            work = {k: inv * v for k, v in work.items()}
            if combo is not None:
                combo = {k: inv * v for k, v in combo.items()}
        self.pivots[lead] = (work, combo)
        self.accepted.append(idx)
        return True

    def contains(self, vec: dict) -> bool:
        work = dict(vec)
        lead, work, _ = self._reduce(work, None)
        return lead is None

    def express(self, vec: dict):
        """Coefficients over the original inserted vectors, or None.

        Returns a dict {insert index: coeff} with vec = sum coeff * inserted.
        Requires combo tracking.
        """
        if not self.track_combos:
            raise ValueError("solver built without combo tracking")
        work = dict(vec)
        out: dict = {}
        while work:
            lead = min(work)
            hit = self.pivots.get(lead)
            if hit is None:
                return None
            pvec, pcombo = hit
            c = work[lead]
            for k, v in pvec.items():
                val = work.get(k, 0) - c * v
                if val:
                    work[k] = val
                else:
                    work.pop(k, None)
            vec_scaled_add(out, pcombo, c)
        return out


class RankData:
    __slots__ = ("rank", "kernel", "image", "image_cols", "solver")

    def __init__(self, rank, kernel, image, image_cols, solver):
        self.rank = rank
        self.kernel = kernel          # list of dict vectors in the column space's source
        self.image = image            # echelonized basis of the column span
        self.image_cols = image_cols  # original column indices that carry the rank
        self.solver = solver


def rank_kernel_image(M: SparseMatrix) -> RankData:
    """Exact rank, kernel basis, image basis, and a membership solver.

    Kernel vectors are read off the failed inserts: when column j reduces to
    zero its tracked combo is a relation with coefficient 1 on j, which is a
    kernel vector supported on columns <= j. Image basis is the echelonized
    pivot set; image_cols are the original pivot column indices.
    """
    solver = SpanSolver(track_combos=True, track_relations=True)
    for j in range(M.cols):
        solver.insert(M.columns[j])
    kernel = list(solver.relations)
    image = [dict(vec) for vec, _ in (solver.pivots[k] for k in sorted(solver.pivots))]
    return RankData(solver.rank, kernel, image, list(solver.accepted), solver)


class IntEchelon:
    """Rank-only integer column echelon (fraction-free cross-multiplication).

    Pivots keep their smallest index as lead; each reduction divides out the
    content gcd to hold coefficient growth down. Nothing is tracked beyond
    the pivots themselves, which keeps the big streamed ranks cheap.
    """

    def __init__(self):
        self.pivots: dict = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def insert(self, vec: dict):
        """Insert an integer vector; returns its pivot lead or None."""
        while vec:
            lead = min(vec)
            p = self.pivots.get(lead)
            if p is None:
                g = 0
                for v in vec.values():
                    g = gcd(g, v)
                if g > 1:
                    vec = {k: v // g for k, v in vec.items()}
                self.pivots[lead] = vec
                return lead
            a = p[lead]
            b = vec.pop(lead)
            g = gcd(a, b)
            mv = a // g
            mp = b // g
            if mv != 1:
                for k in vec:
                    vec[k] *= mv
            for k, pv in p.items():
                if k == lead:
                    continue
                val = vec.get(k, 0) - mp * pv
                if val:
                    vec[k] = val
                else:
                    vec.pop(k, None)
            if vec:
                g = 0
                for v in vec.values():
                    g = gcd(g, v)
                if g > 1:
                    vec = {k: v // g for k, v in vec.items()}
        return None


def rank_only(M: SparseMatrix) -> int:
    ech = IntEchelon()
    for col in M.columns:
        if col:
            ech.insert(integerize(col))
    return ech.rank


def blocked_rank(vec_iter, split: int, stop_at_second=None):
    """Stream stacked vectors into a staircase echelon, counting block pivots.

    Vectors mix a leading block (indices < split) and a trailing block. Since
    pivots have distinct leads and a vector's entries below its lead are all
    zero, the projection onto the leading block of the echelon span is exactly
    the span of the leading-block pivots: first-block pivot count = rank of
    the projected family, and trailing pivots count the quotient rank.

    Returns (first_block_pivots, second_block_pivots, completed). If
    stop_at_second is reached the stream stops early with completed=False;
    the second count is then a valid lower bound on the full-stream value
    (pivot counts only grow as columns arrive).
    """
    ech = IntEchelon()
    first = 0
    second = 0
    completed = True
    for vec in vec_iter:
        if not vec:
            continue
        lead = ech.insert(integerize(vec))
        if lead is None:
            continue
        if lead < split:
            first += 1
        else:
            second += 1
            if stop_at_second is not None and second >= stop_at_second:
                completed = False
                break
    return first, second, completed

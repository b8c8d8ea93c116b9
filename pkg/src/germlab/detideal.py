"""Matrix germs and their determinantal ideals.

A MatrixGerm is an m x n matrix of polynomials vanishing (usually) at the
origin, of one of three kinds: general, symmetric, or skew-symmetric.  The
kind matters both for validation and because the symmetry groups acting in
tangent.py differ per kind.

Besides minors and Pfaffians this module knows the two classical structure
theorems for the cases we study in depth: a codimension-2 Cohen-Macaulay
ideal is the ideal of maximal minors of an m x (m+1) presentation matrix
whose kernel is the vector of signed minors (Hilbert-Burch), and a Gorenstein
codimension-3 ideal is the ideal of submaximal Pfaffians of an odd skew
matrix, annihilated by the vector of signed Pfaffian complements
(Buchsbaum-Eisenbud).  Both vectors are exposed because downstream code
uses them to pass from a matrix to equations of the singularity.
"""

import itertools
from math import comb, factorial

from .ring import Poly, QQ, VariableSet

KINDS = ("general", "symmetric", "skew")


class MatrixGerm:
    """An m x n matrix of polynomials with a declared symmetry kind."""

    def __init__(self, entries, kind="general"):
        entries = tuple(tuple(row) for row in entries)
        if not entries or not entries[0]:
            raise ValueError("empty matrix")
        n = len(entries[0])
        if any(len(row) != n for row in entries):
            raise ValueError("ragged matrix")
        vars = entries[0][0].vars
        for row in entries:
            for f in row:
                if f.vars != vars:
                    raise ValueError("entries from different variable sets")
        if kind not in KINDS:
            raise ValueError("kind must be one of %s" % (KINDS,))
        m = len(entries)
        if kind in ("symmetric", "skew") and m != n:
            raise ValueError("%s matrices must be square" % kind)
        if kind == "symmetric":
            for i in range(m):
                for j in range(i + 1, n):
                    if entries[i][j] != entries[j][i]:
                        raise ValueError(
                            "not symmetric at (%d,%d)" % (i + 1, j + 1)
                        )
        if kind == "skew":
            for i in range(m):
                if not entries[i][i].is_zero():
                    raise ValueError("nonzero diagonal at (%d,%d)" % (i + 1, i + 1))
                for j in range(i + 1, n):
                    if entries[i][j] != -entries[j][i]:
                        raise ValueError(
                            "not skew-symmetric at (%d,%d)" % (i + 1, j + 1)
                        )
        self.entries = entries
        self.kind = kind
        self.vars = vars
        self.m = m
        self.n = n

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, MatrixGerm)
            and self.kind == other.kind
            and self.entries == other.entries
        )

    def __repr__(self):
        rows = "; ".join(
            "[" + ", ".join(str(f) for f in row) + "]" for row in self.entries
        )
        return "MatrixGerm(%s, %s)" % (rows, self.kind)

    def transpose(self):
        # the transpose of a symmetric/skew matrix has the same kind
        return MatrixGerm(tuple(zip(*self.entries)), self.kind)

    def as_general(self):
        if self.kind == "general":
            return self
        return MatrixGerm(self.entries, "general")

    def unit_entries(self):
        """Positions (i, j) whose entry is a unit of the local ring."""
        return [
            (i, j)
            for i, row in enumerate(self.entries)
            for j, f in enumerate(row)
            if f.is_unit()
        ]

    def vanishes_at_origin(self):
        return not self.unit_entries()

    def submatrix(self, rows, cols):
        return [[self.entries[i][j] for j in cols] for i in rows]


def parse_matrix(rows, vars, kind="general"):
    """Build a MatrixGerm from string entries."""
    from .ring import parse_poly

    if not isinstance(vars, VariableSet):
        vars = VariableSet(vars)
    entries = [[parse_poly(e, vars) for e in row] for row in rows]
    return MatrixGerm(entries, kind)


def det(rows):
    """Determinant of a square list-of-lists of Polys, by Laplace expansion
    along the first column with memoisation on column subsets.  Fine for
    the sizes that occur here (<= 6)."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty determinant")
    vars = rows[0][0].vars
    cache = {}

    def minor(row_start, cols):
        if len(cols) == 1:
            return rows[row_start][cols[0]]
        key = cols
        got = cache.get((row_start, key))
        if got is not None:
            return got
        s = Poly.zero(vars)
        sign = 1
        for k, j in enumerate(cols):
            f = rows[row_start][j]
            if not f.is_zero():
                rest = cols[:k] + cols[k + 1:]
                term = f * minor(row_start + 1, rest)
                s = s + term if sign > 0 else s - term
            sign = -sign
        cache[(row_start, key)] = s
        return s

    return minor(0, tuple(range(n)))


def minors(A, t):
    """All t x t minors of the matrix germ, as a list ordered by the
    (row set, column set) combination order."""
    if t < 1 or t > min(A.m, A.n):
        raise ValueError("minor size %d out of range" % t)
    out = []
    for rows in itertools.combinations(range(A.m), t):
        for cols in itertools.combinations(range(A.n), t):
            out.append(det(A.submatrix(rows, cols)))
    return out


def pfaffian(rows):
    """Pfaffian of a square skew list-of-lists (even size)."""
    n = len(rows)
    if n % 2:
        raise ValueError("odd skew matrix has Pfaffian 0")
    return _pfaffians_of(rows, n // 2)[tuple(range(n))]


def _pfaffians_of(rows, s):
    """Coefficients of w^s / s! where w = sum_{i<j} a_ij e_i ^ e_j: a dict
    from increasing 2s-index tuples to the Pfaffians of the corresponding
    principal submatrices."""
    n = len(rows)
    vars = rows[0][0].vars
    two_form = {}
    for i in range(n):
        for j in range(i + 1, n):
            if not rows[i][j].is_zero():
                two_form[(i, j)] = rows[i][j]
    power = {(): Poly.constant(vars, 1)}
    for _ in range(s):
        nxt = {}
        for idx, f in power.items():
            used = set(idx)
            for (i, j), g in two_form.items():
                if i in used or j in used:
                    continue
                merged, sign = _wedge_insert(idx, i, j)
                term = f * g
                if sign < 0:
                    term = -term
                if merged in nxt:
                    nxt[merged] = nxt[merged] + term
                else:
                    nxt[merged] = term
        power = nxt
    inv = QQ(1) / factorial(s)
    return {idx: f * inv for idx, f in power.items()}


def _wedge_insert(idx, i, j):
    """Sorted merge of idx with (i, j) and the sign of the permutation that
    sorts idx + (i, j)."""
    # positions i and j would occupy; each crossing contributes a sign flip
    below_i = sum(1 for k in idx if k > i)
    below_j = sum(1 for k in idx if k > j)
    # inserting j first (to the right of i) then i
    sign = 1
    if (below_j % 2) == 1:
        sign = -sign
    if (below_i % 2) == 1:
        sign = -sign
    # j passes i? i < j always, and i is inserted after j is placed; since
    # i < j the extra crossing of i past j never happens.
    merged = tuple(sorted(idx + (i, j)))
    return merged, sign


def pfaffians(A, s):
    """All 2s x 2s principal Pfaffians of a skew matrix germ, as a list of
    (index tuple, Pfaffian) in combination order of the index tuples."""
    if A.kind != "skew":
        raise ValueError("Pfaffians need a skew matrix")
    if 2 * s > A.m:
        raise ValueError("Pfaffian size %d exceeds matrix size" % (2 * s))
    if s == 0:
        return [((), Poly.constant(A.vars, 1))]
    got = _pfaffians_of([list(r) for r in A.entries], s)
    out = []
    for idx in itertools.combinations(range(A.m), 2 * s):
        out.append((idx, got.get(idx, Poly.zero(A.vars))))
    return out


def ideal_generators(A, t=None):
    """The defining ideal of the rank < t locus, by kind: t-minors for
    general and symmetric matrices, 2t-Pfaffians for skew ones.  Defaults
    to the maximal interesting size."""
    if A.kind == "skew":
        if t is None:
            t = A.m // 2
        return [f for _, f in pfaffians(A, t)]
    if t is None:
        t = min(A.m, A.n)
    return minors(A, t)


def expected_codim(kind, m, n, t):
    """Codimension of the rank < t locus in the space of all matrices of
    the given kind (t counts minors; for skew it is the half-size s of the
    defining 2s-Pfaffians)."""
    if kind == "general":
        return (m - t + 1) * (n - t + 1)
    if kind == "symmetric":
        return comb(n - t + 2, 2)
    if kind == "skew":
        return comb(m - 2 * t + 2, 2)
    raise ValueError("unknown kind %r" % kind)


def hilbert_burch_vector(A):
    """The kernel vector of an m x (m+1) presentation matrix: entry i is
    (-1)^i times the maximal minor obtained by deleting column i.  Its
    entries generate the same ideal as the maximal minors and satisfy
    A . f = 0, which is asserted."""
    if A.n != A.m + 1:
        raise ValueError("need an m x (m+1) matrix")
    cols = range(A.n)
    f = []
    for j in cols:
        sub = A.submatrix(range(A.m), [c for c in cols if c != j])
        d = det(sub)
        f.append(d if j % 2 == 0 else -d)
    for i in range(A.m):
        s = Poly.zero(A.vars)
        for j in cols:
            s = s + A.entries[i][j] * f[j]
        assert s.is_zero(), "Hilbert-Burch relation failed in row %d" % i
    return tuple(f)


def buchsbaum_eisenbud_vector(A):
    """For an odd-size skew matrix: entry i is (-1)^i times the Pfaffian of
    the matrix with row and column i deleted.  Satisfies A . f = 0 (and by
    skewness f . A = 0), which is asserted."""
    if A.kind != "skew" or A.m % 2 == 0:
        raise ValueError("need an odd-size skew matrix")
    f = []
    for i in range(A.m):
        keep = [k for k in range(A.m) if k != i]
        sub = A.submatrix(keep, keep)
        p = pfaffian(sub)
        f.append(p if i % 2 == 0 else -p)
    for i in range(A.m):
        s = Poly.zero(A.vars)
        for j in range(A.m):
            s = s + A.entries[i][j] * f[j]
        assert s.is_zero(), "Buchsbaum-Eisenbud relation failed in row %d" % i
    return tuple(f)


def reduce_units(A, order):
    """Split off unit entries of a general matrix germ by row and column
    operations, computed at jet order `order`.

    If a_ij is a unit, row/column operations over the local ring clear row
    i and column j and delete them, giving a smaller matrix defining the
    same singularity up to stable equivalence.  Only general matrices may
    be reduced this way (congruence for symmetric/skew kinds would need the
    operations performed symmetrically, which a unit entry off the diagonal
    does not allow in general); callers treat units in those kinds as an
    input error.

    Returns (B, k) where k is the number of unit entries split off.  The
    entries of B are jets mod m^order, which is harmless downstream because
    every later computation is certified at some level <= order.
    """
    from .ring import unit_inverse_jet

    if A.kind != "general":
        raise ValueError("can only reduce units of a general matrix germ")
    work = [[f.truncate(order) for f in row] for row in A.entries]
    removed = 0
    while True:
        pos = None
        for i, row in enumerate(work):
            for j, f in enumerate(row):
                if f.is_unit():
                    pos = (i, j)
                    break
            if pos:
                break
        if pos is None:
            break
        i, j = pos
        inv = unit_inverse_jet(work[i][j], order)
        for k in range(len(work)):
            if k == i:
                continue
            c = work[k][j].mul_truncated(inv, order)
            work[k] = [
                (g - c.mul_truncated(h, order)).truncate(order)
                for g, h in zip(work[k], work[i])
            ]
        work = [row[:j] + row[j + 1:] for k, row in enumerate(work) if k != i]
        removed += 1
        if not work or not work[0]:
            break
    if not work or not work[0]:
        B = None
    else:
        B = MatrixGerm(work, "general")
    return B, removed

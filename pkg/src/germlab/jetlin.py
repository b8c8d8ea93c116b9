"""Exact linear algebra in jets of free modules over the local ring.

The basic object is a finitely generated submodule M of F = C{x}^r given
by polynomial generators, closed under multiplication by the variables.
We compute dim_C F/M (the colength) together with a monomial cobasis, and
we certify finiteness via Nakayama: if every monomial element e_c * x^a
with |a| = N-1 lies in M + m^N F, then m^{N-1} F is contained in M, so no
monomial of degree >= N-1 can appear in a cobasis and the colength read
off below degree N is exact.  Equality of consecutive truncated dimensions
is *not* accepted as a stopping rule; only the Nakayama certificate is.

Representation.  A row is a dict from packed integer indices to nonzero
rationals, where index = component * STRIDE + monomial_rank and ranks
enumerate monomials in increasing graded lex order.  Integer comparison of
packed indices therefore realises the (component, monomial) pivot order.

The elimination is a closure queue.  pivots maps a lead index to a row in
fully back-substituted form (coefficient 1 at the lead, all other entries
at non-pivot columns).  Because of that invariant a single pass over the
pivot indices hit by a row reduces it completely: subtracting a pivot row
never introduces entries at other pivot columns.  Each new pivot row gets
its var-multiples pushed onto the queue, keyed by m-adic order, so rows
whose order is beyond the current truncation level lie dormant until the
level rises to meet them; work done at level N is never repeated at N+1.
"""

import itertools
from bisect import bisect_right
from dataclasses import dataclass, field
from heapq import heappush, heappop

from .ring import Poly, QQ, QQ_ONE, QQ_ZERO, monomials_of_degree

# Component stride for packed indices.  Monomial ranks must stay below it;
# 2^26 monomials is far beyond anything the elimination can touch.
STRIDE = 1 << 26

DEFAULT_MAX_ORDER = 64

# Deterministic work budget: a colength run aborts (uncertified) once the
# elimination holds this many pivot rows.  Finite, certifiable quotients on
# the scale of this package stay well under 10^5 pivots; modules of infinite
# colength in many variables would otherwise grind through millions of rows
# before exhausting the level budget.
DEFAULT_MAX_PIVOTS = 200_000


class UncertifiedError(RuntimeError):
    """A computation could not be certified within the allowed jet order.

    Carries the partial ColengthResult on .result when one is available.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class MonomialTable:
    """Rank <-> exponent tuple translation for one number of variables.

    Monomials are ranked in increasing graded lex order; degree_start[d]
    is the rank of the first monomial of degree d (so degree_start[d] also
    counts the monomials of degree < d).  Tables grow on demand and are
    shared process-wide per variable count.
    """

    def __init__(self, nvars):
        self.nvars = nvars
        self.monomials = [(0,) * nvars]
        self.rank = {(0,) * nvars: 0}
        self.degree_start = [0, 1]
        self._mult = {}

    def ensure_degree(self, d):
        while len(self.degree_start) <= d:
            deg = len(self.degree_start) - 1
            for e in monomials_of_degree(self.nvars, deg):
                self.rank[e] = len(self.monomials)
                self.monomials.append(e)
            self.degree_start.append(len(self.monomials))

    def start(self, d):
        """Rank of the first degree-d monomial == #monomials of degree < d."""
        self.ensure_degree(d + 1)
        return self.degree_start[d]

    def degree_of_rank(self, r):
        return bisect_right(self.degree_start, r) - 1

    def mult_rank(self, r, i):
        """Rank of x_i times the rank-r monomial."""
        key = r * self.nvars + i
        m = self._mult.get(key)
        if m is None:
            e = self.monomials[r]
            self.ensure_degree(sum(e) + 2)
            e2 = e[:i] + (e[i] + 1,) + e[i + 1:]
            m = self.rank[e2]
            self._mult[key] = m
        return m


_tables = {}


def monomial_table(nvars):
    t = _tables.get(nvars)
    if t is None:
        t = _tables[nvars] = MonomialTable(nvars)
    return t


@dataclass
class ColengthResult:
    """Outcome of a colength computation.

    dim / cobasis are meaningful only when certified is True; an
    uncertified result reports dim None rather than a possibly wrong
    number.  cobasis entries are (component, exponent tuple) pairs in
    increasing (component, graded lex) order.  certified_at is the first
    truncation level N at which the Nakayama certificate held.
    """

    dim: object = None
    cobasis: list = field(default_factory=list)
    certified: bool = False
    certified_at: object = None
    reason: str = None

    def require(self, what="colength"):
        if not self.certified:
            raise UncertifiedError(
                "%s not certified: %s" % (what, self.reason or "no certificate"),
                result=self,
            )
        return self.dim


class JetSpan:
    """The closure-queue elimination state for one module span."""

    def __init__(self, nvars, ncomp, max_order, max_pivots=None):
        self.nvars = nvars
        self.ncomp = ncomp
        self.max_order = max_order
        self.max_pivots = max_pivots
        self.aborted = False
        self.table = monomial_table(nvars)
        self.pivots = {}
        self.col_users = {}
        self.heap = []
        self._seq = itertools.count()
        self.level = 1  # all queue items of order < level have been consumed

    # -- encoding ---------------------------------------------------------

    def encode(self, element):
        """Pack a module element (sequence of ncomp Polys) into a row."""
        row = {}
        table = self.table
        mo = self.max_order
        for comp, f in enumerate(element):
            if f.is_zero():
                continue
            base = comp * STRIDE
            table.ensure_degree(min(f.degree(), mo) + 1)
            for e, c in f.terms.items():
                if sum(e) >= mo:
                    continue
                row[base + table.rank[e]] = QQ(c)
        return row

    def decode(self, row, below=None):
        """Unpack a row into a tuple of Polys, keeping ranks < below."""
        polys = [{} for _ in range(self.ncomp)]
        for idx, c in row.items():
            r = idx % STRIDE
            if below is not None and r >= below:
                continue
            polys[idx // STRIDE][self.table.monomials[r]] = c
        return tuple(polys)

    def row_order(self, row):
        deg = self.table.degree_of_rank
        return min(deg(idx % STRIDE) for idx in row)

    def push(self, row):
        if row:
            heappush(self.heap, (self.row_order(row), next(self._seq), row))

    # -- elimination core ---------------------------------------------------

    def reduce(self, row):
        """Reduce a row against all pivots, in place.

        Pivot rows carry entries only at their own lead and at non-pivot
        columns, so subtracting them never creates a new pivot hit and one
        sweep over the initial hits is complete.
        """
        pivots = self.pivots
        hits = [i for i in row if i in pivots]
        if not hits:
            return row
        hits.sort()
        for i in hits:
            c = row.pop(i)
            for j, pc in pivots[i].items():
                if j == i:
                    continue
                s = row.get(j, QQ_ZERO) - c * pc
                if s:
                    row[j] = s
                else:
                    row.pop(j, None)
        return row

    def _mult_var(self, row, i):
        table = self.table
        deg = table.degree_of_rank
        mo = self.max_order
        child = {}
        for idx, c in row.items():
            r = idx % STRIDE
            if deg(r) + 1 >= mo:
                continue
            child[idx - r + table.mult_rank(r, i)] = c
        return child

    def _install(self, row, cutoff):
        """Make a reduced row with a lead below cutoff into a new pivot."""
        lead = min(i for i in row if i % STRIDE < cutoff)
        c = row[lead]
        if c != QQ_ONE:
            inv = 1 / c
            row = {j: v * inv for j, v in row.items()}
        # back-substitute the new pivot into every row that touches lead
        users = self.col_users.pop(lead, None)
        if users:
            for plead in users:
                prow = self.pivots[plead]
                pc = prow.pop(lead)
                for j, v in row.items():
                    if j == lead:
                        continue
                    old = prow.get(j)
                    if old is None:
                        prow[j] = -pc * v
                        self.col_users.setdefault(j, set()).add(plead)
                    else:
                        s = old - pc * v
                        if s:
                            prow[j] = s
                        else:
                            del prow[j]
                            self.col_users[j].discard(plead)
        self.pivots[lead] = row
        users = self.col_users
        for j in row:
            if j != lead:
                users.setdefault(j, set()).add(lead)
        # enqueue the variable multiples; the span must stay closed under m
        for i in range(self.nvars):
            self.push(self._mult_var(row, i))

    def advance(self, level):
        """Process every queued row of order < level."""
        if level > self.max_order:
            level = self.max_order
        if level <= self.level:
            return
        self.level = level
        cutoff = self.table.start(level)
        heap = self.heap
        while heap and heap[0][0] < level:
            if self.max_pivots is not None and len(self.pivots) >= self.max_pivots:
                self.aborted = True
                return
            _, _, row = heappop(heap)
            self.reduce(row)
            if not row:
                continue
            if any(i % STRIDE < cutoff for i in row):
                self._install(row, cutoff)
            else:
                self.push(row)  # dormant until the level catches up

    # -- certification and readout ------------------------------------------

    def certified(self, level):
        """Nakayama test: does every e_c * x^a, |a| = level-1, lie in the
        span modulo m^level F?"""
        table = self.table
        lo = table.start(level - 1)
        hi = table.start(level)
        for comp in range(self.ncomp):
            base = comp * STRIDE
            for r in range(lo, hi):
                rem = self.reduce({base + r: QQ_ONE})
                if any(i % STRIDE < hi for i in rem):
                    return False
        return True

    def quotient_basis(self, level):
        cutoff = self.table.start(level)
        pivots = self.pivots
        basis = []
        for comp in range(self.ncomp):
            base = comp * STRIDE
            for r in range(cutoff):
                if base + r not in pivots:
                    basis.append((comp, self.table.monomials[r]))
        return basis

    def canonical_form(self, level):
        """The truncated RREF as nested dicts, a canonical invariant of the
        span mod m^level (used for span equality)."""
        cutoff = self.table.start(level)
        out = {}
        for lead, row in self.pivots.items():
            if lead % STRIDE >= cutoff:
                continue
            out[lead] = {j: c for j, c in row.items() if j % STRIDE < cutoff}
        return out


def _as_elements(generators, ncomp):
    elems = []
    for g in generators:
        if isinstance(g, Poly):
            if ncomp != 1:
                raise ValueError("bare Poly generator in a rank-%d module" % ncomp)
            elems.append((g,))
        else:
            g = tuple(g)
            if len(g) != ncomp:
                raise ValueError(
                    "generator has %d components, expected %d" % (len(g), ncomp)
                )
            elems.append(g)
    return elems


def _nvars_of(elems):
    for g in elems:
        for f in g:
            return len(f.vars)
    raise ValueError("no generators")


def span_build(generators, ncomp, order):
    """Close the span of the generators mod m^order and return the JetSpan."""
    elems = _as_elements(generators, ncomp)
    span = JetSpan(_nvars_of(elems), ncomp, order)
    for g in elems:
        span.push(span.encode(g))
    span.advance(order)
    return span


def reduce_element(element, span):
    """Normal form of a module element against a built span, mod m^level."""
    row = span.reduce(span.encode(element))
    return span.decode(row, below=span.table.start(span.level))


def span_equal(gens_a, gens_b, ncomp, order):
    """Do two generator lists span the same submodule of C{x}^ncomp mod
    m^order?  Compares the canonical truncated RREFs."""
    a = span_build(gens_a, ncomp, order)
    b = span_build(gens_b, ncomp, order)
    return a.canonical_form(order) == b.canonical_form(order)


def colength(generators, ncomp=1, max_order=None, start_level=2,
             max_pivots=None):
    """Certified colength of the module generated by `generators` in
    C{x}^ncomp, together with a monomial cobasis.

    Walks truncation levels N = start_level, start_level+1, ... upward,
    each time completing the closure at that level and testing the
    Nakayama certificate; the first certified level is exact and also the
    cheapest possible one.  Refuses (certified False) when the level
    budget max_order or the deterministic work budget max_pivots runs out,
    with the reason recorded on the result.
    """
    if max_order is None:
        max_order = DEFAULT_MAX_ORDER
    if max_pivots is None:
        max_pivots = DEFAULT_MAX_PIVOTS
    elems = _as_elements(generators, ncomp)
    span = JetSpan(_nvars_of(elems), ncomp, max_order, max_pivots=max_pivots)
    for g in elems:
        span.push(span.encode(g))
    for level in range(start_level, max_order + 1):
        span.advance(level)
        if span.aborted:
            return ColengthResult(
                reason="work budget of %d pivot rows exhausted at jet order "
                "%d; the quotient is probably infinite" % (max_pivots, level)
            )
        if span.certified(level):
            basis = span.quotient_basis(level)
            return ColengthResult(
                dim=len(basis), cobasis=basis, certified=True, certified_at=level
            )
    return ColengthResult(
        reason="no Nakayama certificate up to jet order %d; retry with a "
        "larger --max-order" % max_order
    )


def invert_matrix_jet(P, order):
    """Inverse of a square matrix of power series units, mod m^order.

    The constant part C = P(0) must be invertible; the tail is handled by
    the finite Neumann series sum_k W^k with W = I - C^{-1} P, which
    terminates because ord(W^k) >= k.
    """
    from .ring import invert_rational_matrix

    k = len(P)
    vars = P[0][0].vars
    c = [[f.constant_term() for f in row] for row in P]
    cinv = invert_rational_matrix(c)
    # W = I - C^{-1} P, entries of positive order
    cinv_p = _mat_mul_scalar(cinv, P, vars, order)
    w = [
        [
            (Poly.constant(vars, 1) if i == j else Poly.zero(vars)) - cinv_p[i][j]
            for j in range(k)
        ]
        for i in range(k)
    ]
    acc = [[Poly.constant(vars, 1) if i == j else Poly.zero(vars) for j in range(k)]
           for i in range(k)]
    term = acc
    while True:
        term = _mat_mul(term, w, order)
        if all(f.is_zero() for row in term for f in row):
            break
        acc = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(acc, term)]
    # inverse = (sum W^k) C^{-1}
    out = [
        [
            sum(
                (acc[i][l] * QQ(cinv[l][j]) for l in range(k)),
                Poly.zero(vars),
            ).truncate(order)
            for j in range(k)
        ]
        for i in range(k)
    ]
    return out


def _mat_mul(a, b, order):
    k = len(a)
    n = len(b[0])
    vars = b[0][0].vars
    out = []
    for i in range(k):
        row = []
        for j in range(n):
            s = Poly.zero(vars)
            for l in range(len(b)):
                s = s + a[i][l].mul_truncated(b[l][j], order)
            row.append(s)
        out.append(row)
    return out


def _mat_mul_scalar(c, P, vars, order):
    k = len(c)
    n = len(P[0])
    out = []
    for i in range(k):
        row = []
        for j in range(n):
            s = Poly.zero(vars)
            for l in range(len(P)):
                if c[i][l] != 0:
                    s = s + P[l][j] * QQ(c[i][l])
            row.append(s.truncate(order))
        out.append(row)
    return out

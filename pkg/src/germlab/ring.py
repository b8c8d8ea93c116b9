"""Exact sparse polynomial arithmetic over the rationals.

Everything downstream works in the formal power series ring Q[[x_1..x_p]],
but all the inputs we care about are polynomials and every computation is
eventually truncated at a finite jet order, so a sparse polynomial type is
all we need.  A polynomial is a dict mapping exponent tuples to nonzero
rational coefficients; the zero polynomial is the empty dict.

Monomials are ordered degree first, then lexicographically in the exponent
tuple (so for variables (x, y, z): 1 < z < y < x < z^2 < yz < y^2 < xz < ...).
This "graded lex" order is fixed once and for all; the jet linear algebra
in jetlin.py and the printed form of polynomials both follow it.

Coefficients are gmpy2.mpq when gmpy2 is installed (noticeably faster on
the big eliminations) and fractions.Fraction otherwise.  The two types are
interchangeable for our purposes: same constructors, same arithmetic, and
they hash/compare equal to each other and to ints.
"""

import itertools

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as QQ

QQ_ZERO = QQ(0)
QQ_ONE = QQ(1)


class ParseError(ValueError):
    """Raised on malformed polynomial or germ-file input."""


class VariableSet:
    """An ordered tuple of distinct variable names.

    Polynomials carry a reference to their VariableSet; mixing polynomials
    from different variable sets is an error (use remap() to move between
    them explicitly).
    """

    __slots__ = ("names", "_index")

    def __init__(self, names):
        if isinstance(names, str):
            names = [nm.strip() for nm in names.split(",")]
        names = tuple(names)
        if not names:
            raise ValueError("need at least one variable")
        for nm in names:
            if not nm.isidentifier():
                raise ParseError("bad variable name %r" % (nm,))
        if len(set(names)) != len(names):
            raise ParseError("repeated variable in %s" % (names,))
        self.names = names
        self._index = {nm: i for i, nm in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, VariableSet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "VariableSet(%s)" % (", ".join(self.names),)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ParseError(
                "unknown variable %r (expected one of %s)"
                % (name, ", ".join(self.names))
            ) from None

    def without(self, i):
        """The variable set with the i-th variable removed."""
        return VariableSet(self.names[:i] + self.names[i + 1:])

    def extended(self, extra):
        """The variable set with new names appended."""
        return VariableSet(self.names + tuple(extra))


def monomial_key(exps):
    """Sort key realising the graded lex order on exponent tuples."""
    return (sum(exps), exps)


class Poly:
    """A sparse polynomial over Q in a fixed VariableSet.

    terms maps exponent tuples (one entry per variable) to nonzero QQ
    coefficients.  Instances are treated as immutable; all operations
    return new polynomials.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = vars
        if terms:
            self.terms = {e: c for e, c in terms.items() if c != 0}
        else:
            self.terms = {}

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(vars):
        return Poly(vars)

    @staticmethod
    def constant(vars, c):
        c = QQ(c)
        if c == 0:
            return Poly(vars)
        return Poly(vars, {(0,) * len(vars): c})

    @staticmethod
    def variable(vars, name):
        i = vars.index(name)
        e = [0] * len(vars)
        e[i] = 1
        return Poly(vars, {tuple(e): QQ_ONE})

    # -- basic queries ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def order(self):
        """Lowest total degree of a term (m-adic order); None for zero."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), QQ_ZERO)

    def is_unit(self):
        """Invertible in the power series ring: nonzero constant term."""
        return self.constant_term() != 0

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), QQ_ZERO)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError(
                "mixing variable sets %r and %r" % (self.vars, other.vars)
            )

    def __add__(self, other):
        if not isinstance(other, Poly):
            return self + Poly.constant(self.vars, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, QQ_ZERO) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        out = Poly.__new__(Poly)
        out.vars, out.terms = self.vars, terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Poly.__new__(Poly)
        out.vars = self.vars
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return self - Poly.constant(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.constant(self.vars, other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = QQ(other)
            if c == 0:
                return Poly(self.vars)
            out = Poly.__new__(Poly)
            out.vars = self.vars
            out.terms = {e: k * c for e, k in self.terms.items()}
            return out
        self._check(other)
        # iterate over the smaller operand's terms on the outside
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        terms = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(map(sum, zip(ea, eb)))
                s = terms.get(e, QQ_ZERO) + ca * cb
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        out = Poly.__new__(Poly)
        out.vars, out.terms = self.vars, terms
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def mul_truncated(self, other, order):
        """self*other with all terms of total degree >= order dropped."""
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        terms = {}
        for ea, ca in a.items():
            da = sum(ea)
            if da >= order:
                continue
            for eb, cb in b.items():
                if da + sum(eb) >= order:
                    continue
                e = tuple(map(sum, zip(ea, eb)))
                s = terms.get(e, QQ_ZERO) + ca * cb
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        out = Poly.__new__(Poly)
        out.vars, out.terms = self.vars, terms
        return out

    # -- jets, derivatives, substitution -----------------------------------

    def truncate(self, order):
        """Reduce mod m^order: drop all terms of total degree >= order."""
        out = Poly.__new__(Poly)
        out.vars = self.vars
        out.terms = {e: c for e, c in self.terms.items() if sum(e) < order}
        return out

    def jet(self, k):
        """The k-jet: all terms of total degree <= k."""
        return self.truncate(k + 1)

    def partial(self, i):
        """Partial derivative with respect to the i-th variable."""
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
            terms[e2] = c * e[i]
        out = Poly.__new__(Poly)
        out.vars, out.terms = self.vars, terms
        return out

    def gradient(self):
        return [self.partial(i) for i in range(len(self.vars))]

    def substitute(self, i, g, order=None):
        """Replace the i-th variable by the polynomial g (same VariableSet).

        With order set, the result is truncated mod m^order along the way,
        which keeps the fixed-point eliminations in the Tjurina transform
        from blowing up.
        """
        self._check(g)
        # group by the exponent of x_i and reuse powers of g
        powers = {0: Poly.constant(self.vars, 1)}
        out = Poly(self.vars)
        for e, c in sorted(self.terms.items(), key=lambda t: t[0][i]):
            k = e[i]
            if k not in powers:
                prev = powers[max(powers)]
                for j in range(max(powers) + 1, k + 1):
                    prev = prev.mul_truncated(g, order) if order else prev * g
                    powers[j] = prev
            rest = Poly(self.vars, {e[:i] + (0,) + e[i + 1:]: c})
            out = out + rest * powers[k]
        return out.truncate(order) if order else out

    def remap(self, new_vars, where):
        """Move to another VariableSet; where[i] is the index in new_vars
        of our i-th variable, or None to require that the variable does not
        occur."""
        q = len(new_vars)
        terms = {}
        for e, c in self.terms.items():
            e2 = [0] * q
            ok = True
            for i, k in enumerate(e):
                if k == 0:
                    continue
                if where[i] is None:
                    ok = False
                    break
                e2[where[i]] += k
            if not ok:
                raise ValueError(
                    "variable %s occurs but has no image" % self.vars.names[i]
                )
            terms[tuple(e2)] = terms.get(tuple(e2), QQ_ZERO) + c
        return Poly(new_vars, terms)

    def restricted(self, i):
        """Set the i-th variable to zero and drop it from the VariableSet."""
        new_vars = self.vars.without(i)
        terms = {
            e[:i] + e[i + 1:]: c for e, c in self.terms.items() if e[i] == 0
        }
        return Poly(new_vars, terms)

    # -- weights -----------------------------------------------------------

    def weighted_degree_spectrum(self, weights):
        """Split into weighted-homogeneous parts: a dict mapping each
        occurring weighted degree sum(w_i * e_i) to the corresponding
        subpolynomial."""
        weights = [QQ(w) for w in weights]
        parts = {}
        for e, c in self.terms.items():
            d = sum(w * k for w, k in zip(weights, e))
            parts.setdefault(d, {})[e] = c
        return {d: Poly(self.vars, t) for d, t in sorted(parts.items())}

    # -- printing ----------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return "Poly(%s)" % format_poly(self)


def format_poly(f):
    """Print a polynomial so that parse_poly reads it back verbatim.

    The grammar has no unary minus, so a leading negative term is printed
    with an explicit rational factor ("-1*x" rather than "-x"); later
    negative terms use a binary " - ".
    """
    if not f.terms:
        return "0"
    names = f.vars.names
    pieces = []
    for e, c in sorted(f.terms.items(), key=lambda t: monomial_key(t[0])):
        factors = []
        for nm, k in zip(names, e):
            if k == 1:
                factors.append(nm)
            elif k > 1:
                factors.append("%s^%d" % (nm, k))
        a = abs(c)
        if a != 1 or not factors:
            factors.insert(0, _format_rat(a))
        pieces.append((c < 0, "*".join(factors)))
    neg, body = pieces[0]
    if neg:
        # no unary minus in the grammar: fold the sign into the coefficient
        if body[0].isdigit():
            out = "-" + body
        else:
            out = "-1*" + body
    else:
        out = body
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def _format_rat(c):
    if c.denominator == 1:
        return str(c.numerator)
    return "%d/%d" % (c.numerator, c.denominator)


# -- parsing -----------------------------------------------------------------
#
# expr   := term (('+'|'-') term)*
# term   := factor ('*' factor)*
# factor := base ('^' uint)?
# base   := int ('/' uint)? | var | '(' expr ')'
#
# int may carry a leading minus; '#' starts a comment running to end of line.

_SYMBOLS = "+-*^/()[],"


def tokenize(text):
    """Yield (kind, value) pairs; kind is 'int', 'name' or 'sym'."""
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
        elif ch == "#":
            j = text.find("\n", i)
            i = n if j < 0 else j
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", text[i:j]))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j]))
            i = j
        elif ch in _SYMBOLS:
            toks.append(("sym", ch))
            i += 1
        else:
            raise ParseError("unexpected character %r" % ch)
    return toks


class PolyParser:
    """Recursive-descent parser over a token list.

    The germ-file reader in cli.py drives this one token at a time (it
    needs to parse bracketed, comma-separated matrix rows); parse_poly is
    the whole-string entry point.
    """

    def __init__(self, text, vars):
        self.toks = tokenize(text)
        self.pos = 0
        self.vars = vars

    def peek(self):
        if self.pos < len(self.toks):
            return self.toks[self.pos]
        return ("end", "")

    def next(self):
        t = self.peek()
        self.pos += 1
        return t

    def expect(self, value):
        kind, v = self.next()
        if kind != "sym" or v != value:
            raise ParseError("expected %r, found %r" % (value, v or "end of input"))

    def at_end(self):
        return self.pos >= len(self.toks)

    def parse_expr(self):
        f = self.parse_term()
        while True:
            kind, v = self.peek()
            if kind == "sym" and v in "+-":
                self.pos += 1
                g = self.parse_term()
                f = f + g if v == "+" else f - g
            else:
                return f

    def parse_term(self):
        f = self.parse_factor()
        while True:
            kind, v = self.peek()
            if kind == "sym" and v == "*":
                self.pos += 1
                f = f * self.parse_factor()
            else:
                return f

    def parse_factor(self):
        f = self.parse_base()
        kind, v = self.peek()
        if kind == "sym" and v == "^":
            self.pos += 1
            kind, v = self.next()
            if kind != "int":
                raise ParseError("expected integer exponent, found %r" % v)
            f = f ** int(v)
        return f

    def parse_base(self):
        kind, v = self.next()
        if kind == "sym" and v == "-":
            kind, v = self.next()
            if kind != "int":
                raise ParseError("expected integer after '-', found %r" % v)
            return self._rational(-int(v))
        if kind == "int":
            return self._rational(int(v))
        if kind == "name":
            return Poly.variable(self.vars, v)
        if kind == "sym" and v == "(":
            f = self.parse_expr()
            self.expect(")")
            return f
        raise ParseError("unexpected %r" % (v or "end of input"))

    def _rational(self, num):
        kind, v = self.peek()
        if kind == "sym" and v == "/":
            self.pos += 1
            kind, v = self.next()
            if kind != "int":
                raise ParseError("expected integer denominator, found %r" % v)
            den = int(v)
            if den == 0:
                raise ParseError("zero denominator")
            return Poly.constant(self.vars, QQ(num) / den)
        return Poly.constant(self.vars, num)


def parse_poly(text, vars):
    """Parse a polynomial expression in the given VariableSet."""
    if not isinstance(vars, VariableSet):
        vars = VariableSet(vars)
    p = PolyParser(text, vars)
    f = p.parse_expr()
    if not p.at_end():
        raise ParseError("trailing input %r" % (p.peek()[1],))
    return f


# -- small exact linear algebra ----------------------------------------------


def rank_and_kernel(rows):
    """Rank and a kernel basis of a rational matrix (list of row lists).

    Returns (rank, kernel) where kernel is a list of column vectors (as
    lists of QQ) spanning the right null space.  Plain Gauss elimination;
    the matrices here are tiny (Hessians, weight systems).
    """
    if not rows:
        return 0, []
    m, n = len(rows), len(rows[0])
    a = [[QQ(x) for x in row] for row in rows]
    pivot_of_col = {}
    r = 0
    for j in range(n):
        piv = None
        for i in range(r, m):
            if a[i][j] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][j]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][j] != 0:
                c = a[i][j]
                a[i] = [x - c * y for x, y in zip(a[i], a[r])]
        pivot_of_col[j] = r
        r += 1
        if r == m:
            break
    kernel = []
    free = [j for j in range(n) if j not in pivot_of_col]
    for j in free:
        v = [QQ_ZERO] * n
        v[j] = QQ_ONE
        for col, row in pivot_of_col.items():
            v[col] = -a[row][j]
        kernel.append(v)
    return r, kernel


def invert_rational_matrix(rows):
    """Exact inverse of a square rational matrix; raises on singular input."""
    n = len(rows)
    a = [[QQ(x) for x in row] + [QQ_ONE if i == j else QQ_ZERO for j in range(n)]
         for i, row in enumerate(rows)]
    for j in range(n):
        piv = None
        for i in range(j, n):
            if a[i][j] != 0:
                piv = i
                break
        if piv is None:
            raise ValueError("matrix is singular")
        a[j], a[piv] = a[piv], a[j]
        inv = 1 / a[j][j]
        a[j] = [x * inv for x in a[j]]
        for i in range(n):
            if i != j and a[i][j] != 0:
                c = a[i][j]
                a[i] = [x - c * y for x, y in zip(a[i], a[j])]
    return [row[n:] for row in a]


def hessian_rank_and_kernel(f):
    """Rank and kernel of the Hessian of f at the origin.

    The Hessian is read off the quadratic part: H[i][j] is the coefficient
    of x_i*x_j for i != j and twice the coefficient of x_i^2 on the
    diagonal.  The kernel basis spans the directions along which the
    quadratic form degenerates (used by the ADE recogniser).
    """
    p = len(f.vars)
    h = [[QQ_ZERO] * p for _ in range(p)]
    for e, c in f.terms.items():
        if sum(e) != 2:
            continue
        idx = [i for i, k in enumerate(e) if k]
        if len(idx) == 1:
            i = idx[0]
            h[i][i] = 2 * c
        else:
            i, j = idx
            h[i][j] = c
            h[j][i] = c
    return rank_and_kernel(h)


def unit_inverse_jet(u, order):
    """Inverse of a power series unit u, truncated mod m^order.

    Writes u = c*(1 - w) with w of positive order and sums the geometric
    series; the loop stops once w^k vanishes mod m^order.
    """
    c = u.constant_term()
    if c == 0:
        raise ValueError("not a unit: zero constant term")
    w = Poly.constant(u.vars, 1) - u * (1 / c)
    w = w.truncate(order)
    out = Poly.constant(u.vars, 1)
    p = Poly.constant(u.vars, 1)
    while True:
        p = p.mul_truncated(w, order)
        if p.is_zero():
            break
        out = out + p
    return out * (1 / c)


def monomials_of_degree(nvars, d):
    """All exponent tuples of total degree d, in lex order."""
    if nvars == 1:
        yield (d,)
        return
    for extra in itertools.combinations(range(d + nvars - 1), nvars - 1):
        # stars and bars, arranged so the output is lex-increasing
        exps = []
        prev = -1
        for cut in extra:
            exps.append(cut - prev - 1)
            prev = cut
        exps.append(d + nvars - 2 - prev)
        yield tuple(exps)

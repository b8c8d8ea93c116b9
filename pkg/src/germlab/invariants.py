"""Milnor and Tjurina numbers, boundary variants, quasi-homogeneity, and a
recogniser for the simple hypersurface singularities.

All dimension counts run through the certified colength engine, so every
number returned here is exact or refused; "the ideal looked stable for a
few degrees" is never accepted.
"""

from dataclasses import dataclass
from math import gcd, lcm

from .jetlin import DEFAULT_MAX_ORDER, UncertifiedError, colength
from .ring import (
    Poly,
    QQ,
    QQ_ZERO,
    VariableSet,
    hessian_rank_and_kernel,
    rank_and_kernel,
)


def milnor(f, max_order=None):
    """Milnor number: colength of the Jacobian ideal."""
    return colength(f.gradient(), max_order=max_order or DEFAULT_MAX_ORDER)


def tjurina_number(f, max_order=None):
    """Tjurina number: colength of (f) + Jacobian ideal."""
    return colength(
        [f] + f.gradient(), max_order=max_order or DEFAULT_MAX_ORDER
    )


@dataclass
class BoundaryMilnor:
    """Milnor data of a germ relative to a coordinate hyperplane.

    mu          Milnor number of f itself,
    mu_section  Milnor number of the restriction to the hyperplane,
    mu_boundary colength of <x_b df/dx_b> + <df/dx_i : i != b>.

    The three satisfy mu_boundary = mu + mu_section, which is asserted.
    """

    mu: int
    mu_section: int
    mu_boundary: int


def boundary_milnor(f, boundary=0, max_order=None):
    """Boundary Milnor data of f with respect to the hyperplane x_b = 0.

    `boundary` is the index of the distinguished variable.  All three
    colengths must certify; the restricted germ lives in the smaller
    variable set with x_b removed.
    """
    max_order = max_order or DEFAULT_MAX_ORDER
    mu = milnor(f, max_order).require("Milnor number")
    if len(f.vars) < 2:
        raise ValueError("boundary Milnor data needs at least two variables")
    section = f.restricted(boundary)
    mu_s = milnor(section, max_order).require("sectional Milnor number")
    xb = Poly.variable(f.vars, f.vars.names[boundary])
    gens = [xb * f.partial(boundary)]
    gens += [f.partial(i) for i in range(len(f.vars)) if i != boundary]
    mu_b = colength(gens, max_order=max_order).require("boundary Milnor number")
    assert mu_b == mu + mu_s, "boundary Milnor identity failed"
    return BoundaryMilnor(mu=mu, mu_section=mu_s, mu_boundary=mu_b)


def milnor_icis(F, max_order=None):
    """Milnor number of an isolated complete intersection (f_1, ..., f_k).

    Computed by the downward recursion
        mu(f_1..f_k) = colength((f_1..f_{k-1}) + maximal minors of the
                       Jacobian of (f_1..f_k)) - mu(f_1..f_{k-1}),
    whose base case is the hypersurface Milnor number.  Note the ordering
    matters for intermediate steps: each truncation (f_1..f_j) must itself
    have an isolated singularity, or the intermediate colength will fail
    to certify.
    """
    from .detideal import MatrixGerm, minors

    max_order = max_order or DEFAULT_MAX_ORDER
    F = list(F)
    k = len(F)
    if k == 1:
        return milnor(F[0], max_order).require("Milnor number")
    jac = MatrixGerm([[f.partial(i) for i in range(len(F[0].vars))] for f in F])
    gens = F[:-1] + minors(jac, k)
    c = colength(gens, max_order=max_order).require(
        "Le-Greuel colength at level %d" % k
    )
    return c - milnor_icis(F[:-1], max_order)


def singular_milnor_hypersurface(A, max_order=None):
    """Milnor number of the essentially smoothable hypersurface cut out by
    the determinant (or Pfaffian) of A in the boundary dimension.

    For a matrix of the given kind whose determinantal hypersurface has
    nonisolated singularities in the smallest interesting dimension, the
    vanishing topology is still concentrated in middle degree and the rank
    of the middle homology is

        mu(det A) - colength(ideal of submaximal minors of A)

    (sub-Pfaffians of the next size down in the skew case).  The ambient
    dimension is pinned to the codimension of the degenerate locus: 4 for
    square, 3 for symmetric, 6 for 4x4 skew germs.
    """
    from .detideal import det, minors, pfaffian, pfaffians

    max_order = max_order or DEFAULT_MAX_ORDER
    p = len(A.vars)
    if A.kind == "general":
        if A.m != A.n:
            raise ValueError("need a square matrix")
        need = 4
        f = det([list(r) for r in A.entries])
        sub = minors(A, A.m - 1)
    elif A.kind == "symmetric":
        need = 3
        f = det([list(r) for r in A.entries])
        sub = minors(A, A.m - 1)
    else:
        if A.m % 2:
            raise ValueError("need an even-size skew matrix")
        need = 6
        f = pfaffian([list(r) for r in A.entries])
        sub = [g for _, g in pfaffians(A, A.m // 2 - 1)]
    if p != need:
        raise ValueError(
            "this formula needs exactly %d variables for kind %s, got %d"
            % (need, A.kind, p)
        )
    mu = milnor(f, max_order).require("Milnor number of the hypersurface")
    c = colength(sub, max_order=max_order).require(
        "colength of the submaximal ideal"
    )
    return mu - c


# -- quasi-homogeneity ---------------------------------------------------


@dataclass
class WeightVector:
    """Positive integer weights making a germ weighted homogeneous, with
    the resulting degree."""

    weights: tuple
    degree: int


@dataclass
class MatrixWeights:
    """Weights for a quasi-homogeneous matrix germ: positive variable
    weights plus integer row and column degrees with entry (i, j) weighted
    homogeneous of degree row_degrees[i] + col_degrees[j].  Row degrees are
    gauged so the first one is zero."""

    weights: tuple
    row_degrees: tuple
    col_degrees: tuple


def _strictly_positive_combination(rows, d):
    """Find c in Q^d with row . c > 0 for every row, or None.

    Homogeneous strict Fourier-Motzkin: eliminate variables from the top;
    a positive combination of two strict inequalities with opposite signs
    on the leading variable eliminates it.  Back-substitution picks
    midpoints of the surviving bounds.
    """
    system = [[QQ(x) for x in r] for r in rows]
    stages = []
    for var in range(d - 1, 0, -1):
        pos = [r for r in system if r[var] > 0]
        neg = [r for r in system if r[var] < 0]
        keep = [r for r in system if r[var] == 0]
        stages.append((var, pos, neg))
        system = [r[:] for r in keep]
        for rp in pos:
            for rn in neg:
                comb = [
                    rp[j] * (-rn[var]) + rn[j] * rp[var] for j in range(var)
                ] + [QQ_ZERO] * (d - var)
                system.append(comb)
    # only c_0 left: a * c_0 > 0 for each surviving inequality
    sign = 0
    for r in system:
        a = r[0]
        if a == 0:
            return None  # 0 > 0 is infeasible
        s = 1 if a > 0 else -1
        if sign == 0:
            sign = s
        elif sign != s:
            return None
    c = [QQ_ZERO] * d
    c[0] = QQ(sign if sign else 1)
    for var, pos, neg in reversed(stages):
        lo, hi = None, None
        for r in pos:  # r[var] c_var > -rest
            b = -sum((r[j] * c[j] for j in range(var)), QQ_ZERO) / r[var]
            lo = b if lo is None or b > lo else lo
        for r in neg:  # dividing by the negative coefficient flips the sign
            b = -sum((r[j] * c[j] for j in range(var)), QQ_ZERO) / r[var]
            hi = b if hi is None or b < hi else hi
        if lo is None and hi is None:
            c[var] = QQ_ZERO
        elif lo is None:
            c[var] = hi - 1
        elif hi is None:
            c[var] = lo + 1
        else:
            assert lo < hi, "Fourier-Motzkin back-substitution went wrong"
            c[var] = (lo + hi) / 2
    return c


def _positive_vector_in_nullspace(constraints, p, positive_coords):
    """A rational vector v with constraints . v = 0 and v_i > 0 for the
    given coordinates, or None."""
    if constraints:
        _, kernel = rank_and_kernel(constraints)
    else:
        kernel = [
            [QQ(1) if i == j else QQ_ZERO for j in range(p)] for i in range(p)
        ]
        kernel = [list(col) for col in zip(*kernel)]  # columns as vectors
    d = len(kernel)
    if d == 0:
        return None
    rows = [[kernel[b][i] for b in range(d)] for i in positive_coords]
    c = _strictly_positive_combination(rows, d)
    if c is None:
        return None
    v = [
        sum((kernel[b][i] * c[b] for b in range(d)), QQ_ZERO) for i in range(p)
    ]
    return v


def quasi_homogeneous(f):
    """Positive integer weights making f weighted homogeneous, or None.

    Solves the linear system forcing all terms onto one weighted degree
    and then looks for a strictly positive solution; the result is scaled
    to coprime integer weights.
    """
    if f.is_zero() or f.degree() == 0:
        return None
    exps = sorted(f.terms)
    e0 = exps[0]
    constraints = [
        [QQ(a - b) for a, b in zip(e, e0)] for e in exps[1:]
    ]
    p = len(f.vars)
    v = _positive_vector_in_nullspace(constraints, p, range(p))
    if v is None:
        return None
    mult = lcm(*(x.denominator for x in v)) if p > 1 else v[0].denominator
    w = [int(x * mult) for x in v]
    g = gcd(*w) if len(w) > 1 else w[0]
    w = [x // g for x in w]
    deg = sum(a * b for a, b in zip(w, e0))
    return WeightVector(weights=tuple(w), degree=int(deg))


def quasi_homogeneous_matrix(A):
    """Weights for a matrix germ: positive variable weights w and row and
    column degrees making entry (i, j) weighted homogeneous of degree
    r_i + c_j.  Returns MatrixWeights or None.

    The gauge freedom (r_i + t, c_j - t) is fixed by forcing r_0 = 0, and
    positivity is required of the variable weights only.
    """
    p = len(A.vars)
    m, n = A.m, A.n
    # unknowns: w_0..w_{p-1}, r_1..r_{m-1} (r_0 gauged to 0), c_0..c_{n-1}
    dim = p + (m - 1) + n

    def r_index(i):
        return None if i == 0 else p + i - 1

    def c_index(j):
        return p + m - 1 + j

    constraints = []
    for i in range(m):
        for j in range(n):
            f = A.entries[i][j]
            for e in f.terms:
                row = [QQ_ZERO] * dim
                for v, k in enumerate(e):
                    if k:
                        row[v] = QQ(k)
                if r_index(i) is not None:
                    row[r_index(i)] = QQ(-1)
                row[c_index(j)] = QQ(-1)
                constraints.append(row)
    v = _positive_vector_in_nullspace(constraints, dim, range(p))
    if v is None:
        return None
    mult = lcm(*(x.denominator for x in v)) if dim > 1 else v[0].denominator
    ints = [int(x * mult) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    w = tuple(ints[:p])
    r = (0,) + tuple(ints[p:p + m - 1])
    c = tuple(ints[p + m - 1:])
    return MatrixWeights(weights=w, row_degrees=r, col_degrees=c)


# -- the ADE recogniser -----------------------------------------------------


@dataclass
class SingularityLabel:
    """The name of a simple hypersurface germ, or the reason it is not one.

    family is one of A, D, E (with index), or Smooth, NotSimple,
    NotIsolated.  mu carries the Milnor number whenever it is finite.
    """

    family: str
    index: int = None
    mu: int = None

    def __str__(self):
        if self.index is None:
            return self.family
        return "%s%d" % (self.family, self.index)

    @property
    def simple(self):
        return self.family in ("A", "D", "E")


def _uni_degree(c):
    for i in range(len(c) - 1, -1, -1):
        if c[i] != 0:
            return i
    return -1


def _uni_gcd_degree(a, b):
    """Degree of gcd of two univariate rational coefficient lists."""
    a, b = a[:], b[:]
    while True:
        db = _uni_degree(b)
        if db < 0:
            return _uni_degree(a)
        da = _uni_degree(a)
        if da < db:
            a, b = b, a
            continue
        # kill the top coefficient of a with a shifted multiple of b
        c = a[da] / b[db]
        for i in range(db + 1):
            a[da - db + i] -= c * b[i]
        a[da] = QQ_ZERO  # guard against rounding-free but lingering entries


def _distinct_root_count(cubic):
    """Number of distinct roots on the projective line of a nonzero binary
    cubic given by coefficients c[k] of s^k t^(3-k)."""
    kmax = _uni_degree(cubic)
    q = cubic[: kmax + 1]
    dq = [q[i] * i for i in range(1, len(q))]
    dg = _uni_gcd_degree(q, dq) if _uni_degree(q) > 0 else 0
    distinct = _uni_degree(q) - dg
    if kmax < 3:  # the root at infinity, [1 : 0]
        distinct += 1
    return distinct


def ade_recognize(f, max_order=None):
    """Identify the simple (ADE) type of a hypersurface germ, if any.

    Follows the classical corank analysis: corank <= 1 of the Hessian
    gives the A series, corank 2 splits by the root pattern of the cubic
    part restricted to the kernel plane (two or three distinct roots: D,
    one triple root: E when mu is 6, 7 or 8), corank >= 3 is never simple.
    """
    max_order = max_order or DEFAULT_MAX_ORDER
    res = milnor(f, max_order)
    if not res.certified:
        return SingularityLabel(family="NotIsolated")
    mu = res.dim
    if mu == 0:
        return SingularityLabel(family="Smooth", mu=0)
    rank, kernel = hessian_rank_and_kernel(f)
    corank = len(f.vars) - rank
    if corank == 0:
        assert mu == 1, "nondegenerate quadratic germ with mu != 1"
        return SingularityLabel(family="A", index=1, mu=1)
    if corank == 1:
        return SingularityLabel(family="A", index=mu, mu=mu)
    if corank >= 3:
        return SingularityLabel(family="NotSimple", mu=mu)
    # corank 2: restrict the cubic part to the kernel plane of the Hessian
    v1, v2 = kernel
    st = VariableSet(("s", "t"))
    s = Poly.variable(st, "s")
    t = Poly.variable(st, "t")
    planes = [s * QQ(a) + t * QQ(b) for a, b in zip(v1, v2)]
    cubic = Poly.zero(st)
    for e, c in f.terms.items():
        if sum(e) != 3:
            continue
        term = Poly.constant(st, c)
        for i, k in enumerate(e):
            for _ in range(k):
                term = term * planes[i]
        cubic = cubic + term
    if cubic.is_zero():
        return SingularityLabel(family="NotSimple", mu=mu)
    coeffs = [cubic.coefficient((k, 3 - k)) for k in range(4)]
    distinct = _distinct_root_count(coeffs)
    if distinct >= 2:
        return SingularityLabel(family="D", index=mu, mu=mu)
    # one triple root: E_6, E_7, E_8 are the only simple germs here
    if mu in (6, 7, 8):
        return SingularityLabel(family="E", index=mu, mu=mu)
    return SingularityLabel(family="NotSimple", mu=mu)

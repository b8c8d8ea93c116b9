"""The Tjurina transform of a determinantal matrix germ, chart by chart.

For an m x n matrix germ A (m <= n) defining X as the locus where the rank
drops below m, the Tjurina transform is

    X^ = { (x, u) in X x P^{m-1} : u . A(x) = 0 },

the closure of the graph of x -> (left kernel of A(x)).  On the chart
u_i = 1 the remaining kernel coordinates become m-1 new local parameters
and X^ is cut out by the n equations sum_k u_k A[k][j](x) = 0.  The
projection X^ -> X is an isomorphism away from the locus where the rank
drops further, so for the germs studied here all the action sits over the
origin, along the exceptional fibre {0} x P^{m-1}.

Most chart equations have invertible linear parts in some variables and
can be solved away by the implicit function theorem; the fixed-point
elimination below does exactly that, at a controlled jet order, and leaves
a residual system with no unit linear coefficients whose Milnor/Tjurina
data we then compute.  Everything reported refers to the chart origin.

One honest subtlety: a chart variety can be singular at a point of the
exceptional line away from the chart origin (the equation (t-1)z + y^2
loses its z-elimination exactly at t = 1).  Chart-origin bookkeeping alone
would miss that, so for 2-row germs every analysis also restricts the n x n
minors of the Jacobian of the full chart equations to the exceptional
line and checks that their gcd vanishes at most at t = 0; the b_3
computation refuses to sum charts unless this check comes back clean.
"""

from dataclasses import dataclass, field

from .detideal import MatrixGerm, det
from .invariants import (
    SingularityLabel,
    ade_recognize,
    milnor,
    milnor_icis,
    tjurina_number,
)
from .jetlin import DEFAULT_MAX_ORDER, UncertifiedError
from .ring import Poly, QQ, VariableSet
from .tangent import tau_icis

_BOOT_ORDER = 16  # initial jet order for the eliminations


@dataclass
class ChartGerm:
    """One affine chart of the Tjurina transform, before simplification."""

    index: int
    vars: VariableSet       # original variables followed by the parameters
    params: tuple           # names of the kernel parameters (m-1 of them)
    equations: list         # n polynomials in vars, vanishing at the origin


@dataclass
class ChartAnalysis:
    """The chart after elimination, with its local invariants.

    residual is the simplified equation system at the chart origin, in the
    surviving variables only.  smooth means the chart origin is a smooth
    point of the transform.  mu/tau are certified values or None when the
    computation refused.  exceptional_clear reports the off-origin check
    along the exceptional line: True (checked, clean), False (a singular
    point away from the chart origin, or a degenerate line), or None (not
    performed; only implemented for 2-row germs).
    """

    chart: ChartGerm
    eliminated: dict = field(default_factory=dict)
    residual_vars: VariableSet = None
    residual: list = field(default_factory=list)
    smooth: bool = False
    mu: int = None
    tau: int = None
    label: object = None
    exceptional_clear: bool = None
    elimination_order: int = 0


def tjurina_charts(A):
    """The m charts of the Tjurina transform of a general matrix germ."""
    if A.kind != "general":
        raise ValueError("the Tjurina transform here expects a general germ")
    if not A.vanishes_at_origin():
        raise ValueError("matrix must vanish at the origin")
    names = list(A.vars.names)
    # fresh parameter names: t1, t2, ... with enough prefix to avoid clashes
    prefix = "t"
    while any(nm.startswith(prefix) and nm[len(prefix):].isdigit()
              for nm in names):
        prefix += "t"
    charts = []
    for i in range(A.m):
        params = tuple("%s%d" % (prefix, k + 1) for k in range(A.m - 1))
        vars = A.vars.extended(params)
        where = list(range(len(A.vars)))
        lift = [A.entries[r][c].remap(vars, where) for r in range(A.m)
                for c in range(A.n)]
        ent = lambda r, c: lift[r * A.n + c]
        u = []
        k = 0
        for r in range(A.m):
            if r == i:
                u.append(Poly.constant(vars, 1))
            else:
                u.append(Poly.variable(vars, params[k]))
                k += 1
        eqs = []
        for c in range(A.n):
            s = Poly.zero(vars)
            for r in range(A.m):
                s = s + u[r] * ent(r, c)
            eqs.append(s)
        charts.append(ChartGerm(index=i, vars=vars, params=params,
                                equations=eqs))
    return charts


def _solve_for(g, y, c, order):
    """Solve g = 0 for the variable with index y, given that the linear
    coefficient c of that variable in g is a unit.

    Fixed-point iteration phi <- phi - G(phi)/c with G(phi) the equation
    after substituting y = phi; every step gains at least one m-adic order,
    so the loop stops within `order` rounds with g(y = phi) = 0 mod
    m^order."""
    vars = g.vars
    phi = Poly.zero(vars)
    inv = 1 / c
    while True:
        val = g.substitute(y, phi, order)
        if val.is_zero():
            return phi
        phi = phi - val * inv


def eliminate_units(chart, order):
    """Solve away every equation with a unit linear coefficient in some
    variable, at jet order `order`.

    Scans equations in order and variables in VariableSet order, restarting
    after each elimination, so the result is deterministic.  Returns
    (residual equations, eliminated dict, surviving variable indexes); the
    residual equations are jets mod m^order with identically vanishing
    linear parts, still expressed in the full chart VariableSet.
    """
    eqs = [g.truncate(order) for g in chart.equations]
    nv = len(chart.vars)
    gone = set()
    eliminated = {}
    while True:
        found = None
        for gi, g in enumerate(eqs):
            for y in range(nv):
                if y in gone:
                    continue
                e = tuple(1 if k == y else 0 for k in range(nv))
                c = g.coefficient(e)
                if c != 0:
                    found = (gi, y, c)
                    break
            if found:
                break
        if not found:
            return eqs, eliminated, [k for k in range(nv) if k not in gone]
        gi, y, c = found
        g = eqs.pop(gi)
        phi = _solve_for(g, y, c, order)
        eliminated[chart.vars.names[y]] = phi
        gone.add(y)
        eqs = [h.substitute(y, phi, order) for h in eqs]
        # keep earlier solutions expressed in surviving variables only
        for nm in list(eliminated):
            eliminated[nm] = eliminated[nm].substitute(y, phi, order)


def _exceptional_line_clear(chart):
    """For a 2-row germ: restrict the n x n minors of the Jacobian of the
    chart equations to the exceptional line (original variables = 0) and
    decide whether the transform is smooth along the line away from the
    chart origin.

    Exact arithmetic all the way: the restricted minors are univariate in
    the parameter t, and the singular points on the line are the common
    roots of all of them.  Clean means the gcd of the minors is a nonzero
    monomial t^a (roots only at the chart origin, which the chart analysis
    itself accounts for)."""
    p = len(chart.vars) - 1
    vt = VariableSet(("u",))

    def on_line(f):
        terms = {}
        for e, c in f.terms.items():
            if any(e[k] for k in range(p)):
                continue
            terms[(e[p],)] = c
        return Poly(vt, terms)

    n = len(chart.equations)
    nv = len(chart.vars)
    jac_on_line = [
        [on_line(g.partial(v)) for v in range(nv)] for g in chart.equations
    ]
    import itertools

    g = None
    for cols in itertools.combinations(range(nv), n):
        m = det([[jac_on_line[r][c] for c in cols] for r in range(n)])
        if m.is_zero():
            continue
        coeffs = _uni_coeffs(m)
        g = coeffs if g is None else _uni_gcd(g, coeffs)
        if len(g) == 1:
            return True  # unit gcd: the whole line is smooth
    if g is None:
        return False  # Jacobian degenerate along the entire line
    val = next(i for i, c in enumerate(g) if c != 0)
    deg = len(g) - 1
    return deg == val  # g = c * t^a: no roots away from t = 0


def _uni_coeffs(f):
    d = f.degree()
    out = [QQ(0)] * (d + 1)
    for e, c in f.terms.items():
        out[e[0]] = c
    return out


def _uni_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _uni_gcd(a, b):
    a, b = _uni_trim(list(a)), _uni_trim(list(b))
    while b:
        # a mod b
        while len(a) >= len(b):
            c = a[-1] / b[-1]
            off = len(a) - len(b)
            for i in range(len(b)):
                a[off + i] -= c * b[i]
            a.pop()
            _uni_trim(a)
            if not a:
                break
        a, b = b, a
    if a:
        top = a[-1]
        a = [x / top for x in a]
    return a


def analyze_chart(chart, max_order=None):
    """Eliminate, restrict to the surviving variables, and compute the
    invariants at the chart origin.

    The elimination runs at a jet order that is re-validated against the
    certification level of the Milnor computation: if the Milnor number
    certifies at level N, the residual equations must be exact mod
    m^{N+2}, and the elimination is redone at a higher order when the
    initial one turns out too small."""
    if max_order is None:
        max_order = DEFAULT_MAX_ORDER
    order = min(_BOOT_ORDER, max_order)
    while True:
        residual, eliminated, survivors = eliminate_units(chart, order)
        out = ChartAnalysis(chart=chart, eliminated=eliminated,
                            elimination_order=order)
        if len(chart.params) == 1:  # 2-row germ: the line check is univariate
            out.exceptional_clear = _exceptional_line_clear(chart)
        if not residual:
            out.smooth = True
            out.mu = 0
            out.tau = 0
            out.label = SingularityLabel(family="Smooth", mu=0)
            out.residual_vars = VariableSet(
                tuple(chart.vars.names[k] for k in survivors)
            ) if survivors else None
            return out
        if any(g.is_zero() for g in residual):
            # a residual equation vanished to jet order `order`: either the
            # equations are honestly dependent (the germ is not an EIDS) or
            # the truncation ate all its terms; only a larger jet can tell
            if order < max_order:
                order = min(2 * order, max_order)
                continue
            raise UncertifiedError(
                "chart %d: a residual equation vanishes to jet order %d; "
                "either the transform is not isolated here or the jet "
                "budget is too small, retry with a larger --max-order"
                % (chart.index, order)
            )
        rvars = VariableSet(tuple(chart.vars.names[k] for k in survivors))
        where = [None] * len(chart.vars)
        for new, old in enumerate(survivors):
            where[old] = new
        eqs = [g.remap(rvars, where) for g in residual]
        out.residual_vars = rvars
        out.residual = eqs
        if len(eqs) == 1:
            mres = milnor(eqs[0], max_order)
            if not mres.certified:
                out.label = ade_recognize(eqs[0], max_order)
                return out
            needed = mres.certified_at + 2
            if needed > order:
                if order < max_order:
                    order = min(max(needed, 2 * order), max_order)
                    continue
                # the jet order budget cannot validate this elimination;
                # refuse rather than report a number from a too-short jet
                out.label = SingularityLabel(family="NotIsolated")
                return out
            out.mu = mres.dim
            out.tau = tjurina_number(eqs[0], max_order).require(
                "chart Tjurina number"
            )
            out.label = ade_recognize(eqs[0], max_order)
            return out
        # more equations than one: treat as a complete intersection
        try:
            out.mu = milnor_icis(eqs, max_order)
            out.tau = tau_icis(eqs, max_order).require("chart tau")
        except UncertifiedError:
            return out
        return out


def tjurina_transform(A, max_order=None):
    """All chart analyses of the Tjurina transform of A."""
    return [analyze_chart(c, max_order) for c in tjurina_charts(A)]


def b3_threefold(A, max_order=None):
    """Third Betti number of the determinantal 3-fold defined by a 2 x 3
    matrix germ in 5 variables with an isolated singularity.

    The transform resolves the singularity up to isolated hypersurface
    points on the exceptional line, and the middle homology of X is the
    direct sum of their vanishing homologies: b_3 is the sum of the chart
    Milnor numbers.  (b_0 = b_2 = 1 and b_1 = 0 for every such germ.)

    Raises UncertifiedError when any chart refuses to certify and
    ValueError when a singular point on the exceptional line escapes the
    chart origins, since the sum would then silently undercount.
    """
    if A.m != 2 or A.n != 3:
        raise ValueError("b_3 computation expects a 2 x 3 matrix germ")
    if len(A.vars) != 5:
        raise ValueError("expected a 3-fold: five variables")
    total = 0
    for an in tjurina_transform(A, max_order):
        if an.exceptional_clear is False:
            raise ValueError(
                "chart %d: singular point on the exceptional line away "
                "from the chart origin; the chart sum would undercount"
                % an.chart.index
            )
        if an.smooth:
            continue
        if an.mu is None:
            raise UncertifiedError(
                "chart %d did not certify its Milnor number" % an.chart.index
            )
        total += an.mu
    return total


def betti_numbers_threefold(A, max_order=None):
    """(b_0, b_1, b_2, b_3) for the 2 x 3 determinantal 3-fold germ."""
    return (1, 0, 1, b3_threefold(A, max_order))

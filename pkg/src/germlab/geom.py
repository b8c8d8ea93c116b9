"""Closed-form topology of generic determinantal varieties and the
assembly of essential smoothings.

Everything in this module is exact integer arithmetic on classically known
formulas; no power series are harmed.  The conventions in force throughout:

  * sizes are normalised to m <= n by transposing (rank is blind to it),
  * binomial(a, b) = 0 whenever b < 0 or b > a,
  * M^s denotes the matrices of rank < s, so M^1 = {0} and M^0 is empty,
  * the reduced Euler characteristic of the empty set is -1, of a point 0.

The last two points matter for the bouquet assembly.  The wedge summands of
an essential smoothing are repeated suspensions S^k(L) of smaller generic
links L, with the degenerate cases resolved by the suspension rules

    S(empty) = S^0,     S^0(X) = X,     S^k(X) = empty for k < 0.

For the bottom stratum the inner link is empty and the block S^k(empty) is
an honest sphere S^(k-1); its Euler contribution therefore does NOT vanish,
even though the closed-form binomial coefficient attached to that stratum
degenerates to zero.  We compute all Euler characteristics through the same
suspension semantics as the homotopy descriptors, so that the two always
agree with each other — and with the known smoothings (for the space curve
of the three coordinate axes, chi-bar = -2 from the link block alone, the
wedge of two circles).
"""

from dataclasses import dataclass, field
from math import comb

from .detideal import KINDS, expected_codim


def binom(a, b):
    """Binomial coefficient with the vanishing convention: 0 whenever
    b < 0, b > a, or a < 0."""
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


# ---------------------------------------------------------------------------
#  generic profiles
# ---------------------------------------------------------------------------


@dataclass
class GenericProfile:
    """Bookkeeping record for a generic determinantal singularity of type
    (m, n, s) cut out in (C^p, 0).

    expected_codim      codimension of the rank < s locus in matrix space,
    ambient_dim         p,
    variety_dim         p - expected_codim (negative: the generic section
                        off the origin is empty),
    isolated            the singularity at the origin is isolated,
    smoothable          it admits a determinantal smoothing,
    link_reduced_euler  chi-bar of the complex link of the generic
                        determinantal variety (general kind only),
    euler_obstruction   MacPherson's local Euler obstruction of the generic
                        determinantal variety (general kind only).
    """

    kind: str
    m: int
    n: int
    s: int
    p: int
    expected_codim: int
    ambient_dim: int
    variety_dim: int
    isolated: bool
    smoothable: bool
    link_reduced_euler: int = None
    euler_obstruction: int = None


def generic_profile(kind, m, n, s, p):
    """Profile of the type (m, n, s) determinantal singularity in (C^p, 0).

    A generic section has isolated singularity at the origin if and only if
    p does not exceed the codimension of the next smaller rank stratum, and
    is smoothable if and only if that inequality is strict (the stabilising
    section then misses the singular locus of the model variety entirely).
    For s = 1 the next stratum is empty and both hold for every p.

    The closed forms chi-bar(link) = (-1)^s C(m-1, s-1) and
    Eu = C(m, s-1) are recorded for the general kind with m <= n; note that
    s = 1 correctly yields chi-bar = -1, the reduced Euler characteristic
    of the empty complex link of a point.
    """
    if kind not in KINDS:
        raise ValueError("kind must be one of %s" % (KINDS,))
    if kind == "general" and m > n:
        m, n = n, m
    if kind != "general" and m != n:
        raise ValueError("%s matrices must be square" % kind)
    if m < 1 or n < 1 or p < 1:
        raise ValueError("sizes and ambient dimension must be positive")
    if s < 1:
        raise ValueError("the rank bound s must be at least 1")
    if kind == "skew":
        if 2 * s > m:
            raise ValueError("Pfaffian half-size %d exceeds matrix size" % s)
    elif s > min(m, n):
        raise ValueError("rank bound s = %d gives no proper subvariety" % s)

    codim = expected_codim(kind, m, n, s)
    if s == 1:
        isolated = smoothable = True
    else:
        wall = expected_codim(kind, m, n, s - 1)
        isolated = p <= wall
        smoothable = p < wall

    link = eu = None
    if kind == "general":
        link = (-1) ** s * binom(m - 1, s - 1)
        eu = binom(m, s - 1)
    return GenericProfile(
        kind=kind,
        m=m,
        n=n,
        s=s,
        p=p,
        expected_codim=codim,
        ambient_dim=p,
        variety_dim=p - codim,
        isolated=isolated,
        smoothable=smoothable,
        link_reduced_euler=link,
        euler_obstruction=eu,
    )


# ---------------------------------------------------------------------------
#  homotopy descriptors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Summand:
    """One wedge summand of a homotopy descriptor.

    kind is one of "sphere" (with dim), "point" (with count: a discrete
    set of that many points; count 1 is a contractible summand and
    contributes nothing), or "link" (an unresolved generic link
    L^{s,p}_{m,n}, suspended `suspensions` times).
    """

    kind: str
    dim: int = None
    count: int = None
    block: tuple = None
    suspensions: int = 0
    multiplicity: int = 1

    def reduced_euler(self):
        """chi-bar of this summand times its multiplicity.  Unresolved
        link blocks only know their Euler characteristic when they are
        complex links (p = mn - 1); anything else raises."""
        if self.kind == "sphere":
            one = (-1) ** self.dim
        elif self.kind == "point":
            one = self.count - 1
        else:
            m, n, s, p = self.block
            if p != m * n - 1:
                raise ValueError(
                    "no closed form for chi-bar of %s" % (self,)
                )
            one = (-1) ** self.suspensions * (-1) ** s * binom(m - 1, s - 1)
        return self.multiplicity * one

    def __str__(self):
        if self.kind == "sphere":
            body = "S^%d" % self.dim
        elif self.kind == "point":
            body = "pt." if self.count == 1 else "%d pts." % self.count
        else:
            m, n, s, p = self.block
            body = "L(m=%d,n=%d,s=%d,p=%d)" % (m, n, s, p)
            if self.suspensions:
                body = "S^%d %s" % (self.suspensions, body)
        if self.multiplicity == 1:
            return body
        return " v ".join([body] * self.multiplicity)


@dataclass
class HomotopyDescriptor:
    """A wedge of summands describing a space up to homotopy.

    An empty summand list is a contractible space (the empty wedge).
    Unresolved link blocks keep the descriptor symbolic; `resolved` tells
    whether every summand is a concrete sphere or point set.
    """

    summands: list = field(default_factory=list)

    @property
    def resolved(self):
        return all(s.kind != "link" for s in self.summands)

    def reduced_euler(self):
        return sum(s.reduced_euler() for s in self.summands)

    def counts(self):
        """Multiset of summands as a dict {(kind, data): multiplicity},
        convenient for structural comparison in tests."""
        out = {}
        for s in self.summands:
            key = (s.kind, s.dim, s.count, s.block, s.suspensions)
            out[key] = out.get(key, 0) + s.multiplicity
        return out

    def __str__(self):
        if not self.summands:
            return "pt."
        return " v ".join(str(s) for s in self.summands)


def _merge(atoms):
    """Collapse equal atoms into multiplicities, preserving first-seen
    order, and drop contractible summands when anything else is present."""
    order = []
    mult = {}
    for a in atoms:
        key = (a.kind, a.dim, a.count, a.block, a.suspensions)
        if key not in mult:
            order.append((key, a))
            mult[key] = 0
        mult[key] += a.multiplicity
    out = []
    for key, a in order:
        out.append(
            Summand(
                kind=a.kind,
                dim=a.dim,
                count=a.count,
                block=a.block,
                suspensions=a.suspensions,
                multiplicity=mult[key],
            )
        )
    real = [a for a in out if not (a.kind == "point" and a.count == 1)]
    return real if real else out[:1]


def link_homotopy_2xn(n, p):
    """Homotopy type of the generic link L^{2,p}_{2,n}: the essential
    smoothing of the maximal-minor variety of a generic linear 2 x n
    matrix restricted to a generic p-plane.

        p >= 2n      a point (the section retracts onto the cone),
        n < p < 2n   a single 2-sphere,
        p = n        a wedge of n-1 circles,
        p = n - 1    n isolated points,
        p < n - 1    undefined (the section is empty; we refuse).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if p < 1:
        raise ValueError("need p >= 1")
    if p >= 2 * n:
        summands = [Summand(kind="point", count=1)]
    elif n < p:
        summands = [Summand(kind="sphere", dim=2)]
    elif p == n:
        summands = [Summand(kind="sphere", dim=1, multiplicity=n - 1)]
    elif p == n - 1:
        summands = [Summand(kind="point", count=n)]
    else:
        raise ValueError(
            "L^{2,%d}_{2,%d} has no known value for p < n - 1" % (p, n)
        )
    return HomotopyDescriptor(summands=summands)


# The generic link L^{s,p}_{m,n}, resolved to concrete summands where a
# closed description is known.  Returns None for the empty space, else a
# list of Summands.  m <= n assumed.
def _resolve_link(m, n, s, p):
    if s <= 0:
        return None
    if p >= m * n:
        # a generic affine section in >= full dimension retracts onto the
        # cone over the variety: contractible
        return [Summand(kind="point", count=1)]
    if s == 1:
        # rank < 1 means the zero matrix; a generic p-plane off the origin
        # misses it
        return None
    if m == 2 and s == 2:
        return list(link_homotopy_2xn(n, p).summands)
    return [Summand(kind="link", block=(m, n, s, p))]


def _suspend(atoms, k):
    """k-fold suspension of a resolved space (None = empty, else list of
    wedge summands), by the rules S(empty) = S^0, S^0(X) = X, and
    S^k(X) = empty for k < 0."""
    if k < 0:
        return None
    if k == 0:
        return atoms
    if atoms is None:
        return [Summand(kind="sphere", dim=k - 1)]
    out = []
    for a in atoms:
        if a.kind == "sphere":
            out.append(
                Summand(kind="sphere", dim=a.dim + k, multiplicity=a.multiplicity)
            )
        elif a.kind == "point":
            if a.count == 1:
                out.append(Summand(kind="point", count=1))
            else:
                # one suspension turns c points into c-1 circles, the
                # remaining k-1 raise the dimension
                out.append(
                    Summand(
                        kind="sphere",
                        dim=k,
                        multiplicity=a.multiplicity * (a.count - 1),
                    )
                )
        else:
            out.append(
                Summand(
                    kind="link",
                    block=a.block,
                    suspensions=a.suspensions + k,
                    multiplicity=a.multiplicity,
                )
            )
    return out


def _check_lambdas(lambdas, s):
    lambdas = dict(lambdas or {})
    for r, lam in lambdas.items():
        if not 0 <= r < s:
            raise ValueError("lambda key %r outside 0 <= r < s" % (r,))
        if lam < 0:
            raise ValueError("negative multiplicity lambda(%d) = %d" % (r, lam))
    return lambdas


def bouquet_descriptor(m, n, s, p, lambdas):
    """Homotopy descriptor of the essential smoothing of an EIDS of type
    (m, n, s) in (C^p, 0), given the carousel numbers lambda(r) for
    0 <= r < s (missing keys count as 0).

    The smoothing is the wedge of the generic link L^{s,p}_{m,n} with, for
    each stratum r, lambda(r) copies of the (p - (m-r)(n-r) + 1)-fold
    suspension of the smaller link L^{s-r-1, (m-r)(n-r)-1}_{m-r, n-r}.
    For the bottom stratum r = s-1 the inner link is empty and the blocks
    are honest spheres of dimension p - (m-s+1)(n-s+1); blocks whose
    suspension count is negative are empty and disappear.  Blocks with an
    inner 2 x n maximal-minor link resolve through link_homotopy_2xn;
    anything else stays symbolic.
    """
    if m > n:
        m, n = n, m
    lambdas = _check_lambdas(lambdas, s)
    atoms = []
    lead = _resolve_link(m, n, s, p)
    if lead is None:
        raise ValueError(
            "the EIDS of type (%d,%d,%d) in C^%d is empty off the origin"
            % (m, n, s, p)
        )
    atoms.extend(lead)
    for r in range(s):
        lam = lambdas.get(r, 0)
        if lam == 0:
            continue
        k = p - (m - r) * (n - r) + 1
        inner = _resolve_link(m - r, n - r, s - r - 1, (m - r) * (n - r) - 1)
        block = _suspend(inner, k)
        if block is None:
            continue
        for a in block:
            atoms.append(
                Summand(
                    kind=a.kind,
                    dim=a.dim,
                    count=a.count,
                    block=a.block,
                    suspensions=a.suspensions,
                    multiplicity=a.multiplicity * lam,
                )
            )
    return HomotopyDescriptor(summands=_merge(atoms))


# ---------------------------------------------------------------------------
#  Euler characteristics of essential smoothings
# ---------------------------------------------------------------------------


@dataclass
class EulerInputs:
    """Stratum data consumed by euler_characteristic.

    lambdas         {r: lambda(r)} sphere counts for bouquet mode,
    multiplicities  {(r, i): m_i(X^{r+1}, 0)} polar multiplicities of the
                    rank strata for polar mode, 0 <= i <= dim X^{r+1}.
    """

    lambdas: dict = None
    multiplicities: dict = None


def _block_reduced_euler(m, n, s, p, r):
    """chi-bar of one bouquet block: the (p - (m-r)(n-r) + 1)-fold
    suspension of the complex link of the type (m-r, n-r, s-r-1) variety.
    Empty blocks (negative suspension count, or zero count on an empty
    link) contribute 0; a suspended empty link is a sphere and contributes
    a sign, NOT zero — this is the bottom stratum r = s-1, whose closed
    form binomial degenerates."""
    k = p - (m - r) * (n - r) + 1
    if k < 0:
        return 0
    s_in = s - r - 1
    if s_in <= 1:
        # the inner link is empty (a generic hyperplane misses the zero
        # matrix); its suspension is a sphere S^(k-1) for k >= 1
        return (-1) ** (k - 1) if k >= 1 else 0
    return (-1) ** k * (-1) ** s_in * binom(m - r - 1, s_in - 1)


def euler_characteristic(mode, m, n, s, p, inputs, link_euler_L=None):
    """Euler characteristic of the essential smoothing of an EIDS of type
    (m, n, s) in (C^p, 0).

    bouquet mode returns the REDUCED characteristic

        chi-bar = chi-bar(L^{s,p}_{m,n})
                  + sum_r lambda(r) * chi-bar(suspended block r)

    with chi-bar(L^{s,p}) supplied by the caller as link_euler_L (it is
    constant in the family and no general closed form exists).  The block
    characteristics are evaluated through the same suspension semantics as
    bouquet_descriptor, so the two are always consistent.  For r < s-1 and
    nonnegative suspension count this reproduces the alternating-binomial
    sum with terms (-1)^(p+s-r-(m-r)(n-r)) C(m-r-1, s-r-2) lambda(r).

    polar mode returns the ORDINARY characteristic

        chi = sum_r [ sum_i (-1)^i m_i(X^{r+1}) ] (-1)^(s-r-1) C(m-r, s-r-1)

    from the polar multiplicities m_0, ..., m_d of each rank stratum,
    d = d(r) = p - (m-r)(n-r); strata of negative dimension are skipped.
    """
    if m > n:
        m, n = n, m
    if isinstance(inputs, dict):
        if mode == "bouquet":
            inputs = EulerInputs(lambdas=inputs)
        else:
            inputs = EulerInputs(multiplicities=inputs)
    if mode == "bouquet":
        if inputs.lambdas is None:
            raise ValueError("bouquet mode needs the lambda(r) map")
        if link_euler_L is None:
            raise ValueError("bouquet mode needs chi-bar of the link L^{s,p}")
        lambdas = _check_lambdas(inputs.lambdas, s)
        chi = link_euler_L
        for r in range(s):
            lam = lambdas.get(r, 0)
            if lam:
                chi += lam * _block_reduced_euler(m, n, s, p, r)
        return chi
    if mode == "polar":
        if inputs.multiplicities is None:
            raise ValueError("polar mode needs the polar multiplicity map")
        mults = dict(inputs.multiplicities)
        for (r, i), value in mults.items():
            if not 0 <= r < s:
                raise ValueError("multiplicity key r = %r outside 0 <= r < s" % r)
            if i < 0 or i > p - (m - r) * (n - r):
                raise ValueError(
                    "multiplicity index %d outside the dimension range of "
                    "the rank stratum r = %d" % (i, r)
                )
        chi = 0
        for r in range(s):
            d = p - (m - r) * (n - r)
            if d < 0:
                continue
            inner = sum((-1) ** i * mults.get((r, i), 0) for i in range(d + 1))
            chi += inner * (-1) ** (s - r - 1) * binom(m - r, s - r - 1)
        return chi
    raise ValueError("mode must be 'bouquet' or 'polar'")


# ---------------------------------------------------------------------------
#  Milnor fibers of the generic determinantal hypersurfaces
# ---------------------------------------------------------------------------


# stable homotopy of the infinite symmetric spaces, period 8 from j = 2
_STABLE_PI = {
    "sq": ("0", "Z", "0", "Z", "0", "Z", "0", "Z"),
    "sym": ("Z/2", "Z/2", "0", "Z", "0", "0", "0", "Z"),
    "sk": ("0", "0", "0", "Z", "Z/2", "Z/2", "0", "Z"),
}

_SYMMETRIC_SPACE = {
    "sq": "SU(m)",
    "sym": "SU(m)/SO(m)",
    "sk": "SU(m)/Sp(m/2)",
}


def stable_homotopy_group(kind, j):
    """pi_j of the infinite symmetric space governing the Milnor fiber of
    the generic determinantal hypersurface of the given kind: SU for
    ordinary square matrices, SU/SO for symmetric, SU/Sp for skew.  The
    groups are periodic of period 8 starting at j = 2; pi_0 and pi_1
    vanish."""
    if kind not in _STABLE_PI:
        raise ValueError("kind must be one of 'sq', 'sym', 'sk'")
    if j < 0:
        raise ValueError("need j >= 0")
    if j < 2:
        return "0"
    return _STABLE_PI[kind][(j - 2) % 8]


@dataclass
class MilnorFiberTopology:
    """Topology of the Milnor fiber of det (resp. Pf) on the m x m
    matrices of the given kind.

    generator_degrees       degrees of the exterior-algebra generators of
                            the rational cohomology,
    extra_module_generator  for even symmetric sizes the cohomology is the
                            free {1, e_m}-module over that exterior
                            algebra; the degree m of the extra generator
                            (None otherwise),
    mod2_generator_degrees  generator degrees with Z/2 coefficients where
                            they differ from the rational ones (symmetric
                            kind has 2-torsion; None otherwise),
    stable_range            the homotopy groups pi_j agree with the stable
                            ones for all j < stable_range,
    ambient_dim             N, the dimension of the matrix space,
    link_sphere_dim         the complex link of the hypersurface is a
                            single sphere of this dimension, N - 2.
    """

    kind: str
    m: int
    symmetric_space: str
    generator_degrees: tuple
    extra_module_generator: int
    mod2_generator_degrees: tuple
    stable_range: int
    ambient_dim: int
    link_sphere_dim: int

    def homotopy_group(self, j):
        """pi_j of the Milnor fiber, via stability; refuses outside the
        stable range where the theorem says nothing."""
        if j >= self.stable_range:
            raise ValueError(
                "pi_%d of the %s fiber is outside the stable range j < %d"
                % (j, self.kind, self.stable_range)
            )
        return stable_homotopy_group(self.kind, j)


def milnor_fiber_topology(kind, m):
    """Cohomology and stable homotopy of the global Milnor fiber of the
    generic determinantal hypersurface det = 0 (Pf = 0 for the skew kind)
    on m x m matrices.

    The fibers are homotopy equivalent to symmetric spaces: SL(m)/SO(m)
    for symmetric matrices, SL(m) for square ones, SL(m)/Sp(m/2) for skew
    ones of even size.  Rational cohomology is an exterior algebra on
    generators of degrees

        sq:        3, 5, 7, ..., 2m-1
        sym odd:   5, 9, ..., 2m-1
        sym even:  {1, e_m} times the algebra on 5, 9, ..., 2m-3
        sk:        5, 9, ..., 2m-3

    and the complex link of the hypersurface is a single sphere S^(N-2)
    where N = m^2, m(m+1)/2, m(m-1)/2 is the matrix space dimension.
    """
    if kind not in _STABLE_PI:
        raise ValueError("kind must be one of 'sq', 'sym', 'sk'")
    if m < 2:
        raise ValueError("need m >= 2")
    extra = None
    mod2 = None
    if kind == "sq":
        degrees = tuple(range(3, 2 * m, 2))
        ambient = m * m
        stable = 2 * m
    elif kind == "sym":
        if m % 2 == 1:
            degrees = tuple(range(5, 2 * m, 4))
        else:
            degrees = tuple(range(5, 2 * m - 2, 4))
            extra = m
        mod2 = tuple(range(2, m + 1))
        ambient = m * (m + 1) // 2
        stable = m - 1
    else:
        if m % 2 == 1:
            raise ValueError("skew hypersurfaces need even size")
        degrees = tuple(range(5, 2 * m - 2, 4))
        ambient = m * (m - 1) // 2
        stable = 2 * m - 2
    return MilnorFiberTopology(
        kind=kind,
        m=m,
        symmetric_space=_SYMMETRIC_SPACE[kind],
        generator_degrees=degrees,
        extra_module_generator=extra,
        mod2_generator_degrees=mod2,
        stable_range=stable,
        ambient_dim=ambient,
        link_sphere_dim=ambient - 2,
    )

"""Tangent spaces to group orbits of matrix germs, and the invariants
derived from them: tau, finite determinacy bounds, miniversal unfoldings.

For a matrix germ A in variables x the relevant equivalence is coordinate
changes in the source together with a linear group action on the matrix:

  gl   left and right multiplication by arbitrary square matrices
       (GL_m x GL_n acting as (P, Q) . A = P A Q^{-1}),
  sl   the same with both factors restricted to determinant 1,
  sym  congruence A -> M A M^T on symmetric matrices, M in GL_m,
  sk   congruence on skew-symmetric matrices with M in SL_m.

Differentiating at the identity, the "extended tangent space" to the orbit
of A inside the space of matrix germs of the same kind is spanned over
C{x} by the partial derivatives dA/dx_i (from the coordinate changes)
together with M.A resp. A.M for M running over a basis of the group's Lie
algebra (gl, sl) or M.A + A.M^T for the congruence actions.  tau(A) is the
codimension of that tangent space, computed as a certified colength in the
free module C{x}^r, where r counts the independent entries of the kind
(all mn of them, or the upper triangle with or without the diagonal).

A 1 x c matrix germ is a complete intersection (f_1, ..., f_c); in that
case the gl tangent space reproduces the classical T^1 and tau equals the
Tjurina number of the germ, which is what tau_icis relies on.
"""

import warnings
from dataclasses import dataclass

from .jetlin import DEFAULT_MAX_ORDER, ColengthResult, colength
from .ring import Poly, QQ
from .detideal import MatrixGerm, reduce_units

GROUPS = ("gl", "sl", "sym", "sk")

# which matrix kinds each group can act on
_GROUP_KIND = {
    "gl": "general",
    "sl": "general",
    "sym": "symmetric",
    "sk": "skew",
    # full-GL congruence on skew matrices; the classification tables for
    # simple skew germs are stated for the SL congruence (group "sk"), this
    # variant is kept for cross-checking the two conventions
    "sk_gl": "skew",
    # SL congruence on symmetric matrices, the counterpart of "sk"; this is
    # the group under which the Tjurina number of a symmetric matrix germ
    # matches the (singular) Milnor number of its determinant
    "sym_sl": "symmetric",
}


class UnitEntriesError(ValueError):
    """The matrix germ has unit entries where they are not allowed."""


def packed_positions(kind, m, n):
    """The (i, j) positions forming the independent entries of a matrix of
    this kind, in row-major order.  Their count is the rank r of the free
    module the tangent space lives in."""
    if kind == "general":
        return [(i, j) for i in range(m) for j in range(n)]
    if kind == "symmetric":
        return [(i, j) for i in range(m) for j in range(i, n)]
    if kind == "skew":
        return [(i, j) for i in range(m) for j in range(i + 1, n)]
    raise ValueError("unknown kind %r" % kind)


def pack_entries(entries, kind, positions=None):
    """Project a full matrix (list of lists of Poly) to the packed tuple of
    independent entries."""
    if positions is None:
        positions = packed_positions(kind, len(entries), len(entries[0]))
    return tuple(entries[i][j] for i, j in positions)


def unpack_monomial(kind, m, n, comp, exps, vars, positions=None):
    """The matrix germ x^exps * E_c, where E_c is the basis matrix of the
    packed component comp: E_ij for general kind, E_ij + E_ji for
    symmetric, E_ij - E_ji for skew."""
    if positions is None:
        positions = packed_positions(kind, m, n)
    i, j = positions[comp]
    mono = Poly(vars, {tuple(exps): QQ(1)})
    rows = [[Poly.zero(vars) for _ in range(n)] for _ in range(m)]
    rows[i][j] = mono
    if kind == "symmetric" and i != j:
        rows[j][i] = mono
    elif kind == "skew":
        rows[j][i] = -mono
    return MatrixGerm(rows, kind)


def gl_basis(m):
    """Basis of gl_m as sparse {(k,l): coeff} dicts: all E_kl."""
    return [{(k, l): QQ(1)} for k in range(m) for l in range(m)]


def sl_basis(m):
    """Basis of sl_m: off-diagonal E_kl plus E_kk - E_{k+1,k+1}."""
    out = [{(k, l): QQ(1)} for k in range(m) for l in range(m) if k != l]
    for k in range(m - 1):
        out.append({(k, k): QQ(1), (k + 1, k + 1): QQ(-1)})
    return out


def _left_mul(M, A):
    """M . A for a sparse constant matrix M, as a full list of lists."""
    rows = [[Poly.zero(A.vars) for _ in range(A.n)] for _ in range(A.m)]
    for (k, l), c in M.items():
        for j in range(A.n):
            f = A.entries[l][j]
            if not f.is_zero():
                rows[k][j] = rows[k][j] + f * c
    return rows

def _right_mul(A, M):
    rows = [[Poly.zero(A.vars) for _ in range(A.n)] for _ in range(A.m)]
    for (k, l), c in M.items():
        for i in range(A.m):
            f = A.entries[i][k]
            if not f.is_zero():
                rows[i][l] = rows[i][l] + f * c
    return rows

def _congruence(M, A):
    """M . A + A . M^T, which preserves both symmetry and skewness."""
    left = _left_mul(M, A)
    mt = {(l, k): c for (k, l), c in M.items()}
    right = _right_mul(A, mt)
    return [[f + g for f, g in zip(r1, r2)] for r1, r2 in zip(left, right)]


def tangent_generators(A, group):
    """Generators of the extended tangent space of A under the group, as
    packed module elements in C{x}^r."""
    kind = _GROUP_KIND.get(group)
    if kind is None:
        raise ValueError("unknown group %r" % group)
    if A.kind != kind:
        raise ValueError(
            "group %r acts on %s matrices, got %s" % (group, kind, A.kind)
        )
    positions = packed_positions(A.kind, A.m, A.n)
    gens = []
    for v in range(len(A.vars)):
        gens.append(
            tuple(A.entries[i][j].partial(v) for i, j in positions)
        )
    if group in ("gl", "sl"):
        basis = gl_basis if group == "gl" else sl_basis
        for M in basis(A.m):
            gens.append(pack_entries(_left_mul(M, A), A.kind, positions))
        for M in basis(A.n):
            gens.append(pack_entries(_right_mul(A, M), A.kind, positions))
    else:
        basis = gl_basis(A.m) if group in ("sym", "sk_gl") else sl_basis(A.m)
        for M in basis:
            gens.append(pack_entries(_congruence(M, A), A.kind, positions))
    return gens


def _handle_units(A, group, strict_units, order):
    """Common unit-entry policy: symmetric/skew germs must vanish at the
    origin; general ones are split (stable equivalence) unless the caller
    asked for strictness."""
    units = A.unit_entries()
    if not units:
        return A
    if strict_units:
        raise UnitEntriesError(
            "unit entries at %s (strict mode)" % (units,)
        )
    if A.kind != "general":
        raise UnitEntriesError(
            "unit entries at %s in a %s matrix germ; congruence cannot "
            "split them off, change coordinates first" % (units, A.kind)
        )
    B, k = reduce_units(A, order)
    warnings.warn(
        "split off %d unit entr%s; computing on the reduced %s germ"
        % (k, "y" if k == 1 else "ies",
           "empty" if B is None else "%dx%d" % (B.m, B.n)),
        stacklevel=3,
    )
    return B


def tau(A, group, max_order=None, strict_units=False):
    """Certified tau of the matrix germ under the given group.

    Returns a ColengthResult; .dim is the dimension of a miniversal
    unfolding, .cobasis indexes one.  Unit entries in a general germ are
    split off first (with a warning); in symmetric/skew germs they are an
    error since the congruence action cannot remove them.
    """
    if max_order is None:
        max_order = DEFAULT_MAX_ORDER
    A = _handle_units(A, group, strict_units, max_order)
    if A is None:
        # everything was a unit: the germ is equivalent to a constant
        # matrix of full rank, with nothing left to deform
        return ColengthResult(dim=0, cobasis=[], certified=True, certified_at=2)
    gens = tangent_generators(A, group)
    r = len(packed_positions(A.kind, A.m, A.n))
    return colength(gens, ncomp=r, max_order=max_order)


def tau_icis(F, max_order=None):
    """Tjurina number of the complete intersection (f_1, ..., f_c), via the
    gl tangent space of the row matrix [f_1 ... f_c]."""
    F = list(F)
    A = MatrixGerm([F], "general")
    return tau(A, "gl", max_order=max_order, strict_units=True)


def determinacy_bound(A, group, max_order=None, strict_units=False):
    """The smallest certified k such that A is k-determined under the
    group: m^{k+1} (packed matrix space) lies inside m^2 . (partials) +
    m . (group tangent directions).

    The containment is monotone in k, and the level walk in colength finds
    the first k for which the Nakayama certificate holds, so the returned
    bound is as small as this sufficient criterion can give.  Raises
    UncertifiedError if no level up to max_order certifies.
    """
    if max_order is None:
        max_order = DEFAULT_MAX_ORDER
    A = _handle_units(A, group, strict_units, max_order)
    if A is None:
        return 1
    positions = packed_positions(A.kind, A.m, A.n)
    r = len(positions)
    nv = len(A.vars)
    partials = []
    products = []
    all_gens = tangent_generators(A, group)
    partials, products = all_gens[:nv], all_gens[nv:]
    vars_polys = [Poly.variable(A.vars, nm) for nm in A.vars]
    gens = []
    for a in range(nv):
        for b in range(a, nv):
            q = vars_polys[a] * vars_polys[b]
            for P in partials:
                gens.append(tuple(q * f for f in P))
    for a in range(nv):
        for G in products:
            gens.append(tuple(vars_polys[a] * f for f in G))
    res = colength(gens, ncomp=r, max_order=max_order)
    res.require("determinacy bound")
    return max(1, res.certified_at - 2)


@dataclass
class UnfoldingBasis:
    """A miniversal unfolding: tau monomial matrices spanning the normal
    space to the group tangent space."""

    group: str
    tau: int
    certified_at: int
    matrices: list


def miniversal_unfolding(A, group, max_order=None, strict_units=False):
    if max_order is None:
        max_order = DEFAULT_MAX_ORDER
    B = _handle_units(A, group, strict_units, max_order)
    if B is None:
        return UnfoldingBasis(group=group, tau=0, certified_at=2, matrices=[])
    res = tau(B, group, max_order=max_order, strict_units=True)
    res.require("tau")
    mats = [
        unpack_monomial(B.kind, B.m, B.n, comp, exps, B.vars)
        for comp, exps in res.cobasis
    ]
    return UnfoldingBasis(
        group=group, tau=res.dim, certified_at=res.certified_at, matrices=mats
    )


def corank_differential(A):
    """Corank of the differential of A at 0 as a map C^p -> (matrix space
    of its kind): packed dimension minus the rank of the linear part."""
    from .ring import rank_and_kernel

    positions = packed_positions(A.kind, A.m, A.n)
    nv = len(A.vars)
    rows = []
    for i, j in positions:
        f = A.entries[i][j]
        rows.append([f.coefficient(tuple(1 if v == w else 0 for w in range(nv)))
                     for v in range(nv)])
    rank, _ = rank_and_kernel(rows)
    return len(positions) - rank

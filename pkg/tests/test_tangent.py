"""Tangent spaces to matrix-group orbits: tau, determinacy, unfoldings.

The worked examples pinned here are classical: the cone over the rational
normal curve of degree 4 (as a 2 x 4 catalecticant and as the symmetric
3 x 3 one), the A_1 surface as [[x,y],[z,x]], and the ordinary triple
point in the plane as [[x,0,z],[0,y,z]].
"""

import warnings

import pytest

from germlab.detideal import parse_matrix
from germlab.jetlin import UncertifiedError
from germlab.tangent import (
    UnitEntriesError,
    determinacy_bound,
    miniversal_unfolding,
    tau,
    tau_icis,
)
from germlab.ring import VariableSet


def M(rows, vars, kind="general"):
    return parse_matrix(rows, vars, kind=kind)


def test_tau_gl_triple_point():
    A = M([["x", "0", "z"], ["0", "y", "z"]], "x, y, z")
    r = tau(A, "gl")
    assert r.certified and r.dim == 3
    assert r.certified_at == 2


def test_tau_gl_a1_surface():
    A = M([["x", "y"], ["z", "x"]], "x, y, z")
    r = tau(A, "gl")
    assert r.certified and r.dim == 1


def test_tau_gl_catalecticant_2x4():
    # cone over the rational normal quartic; three unfolding parameters
    A = M([["x0", "x1", "x2", "x3"], ["x1", "x2", "x3", "x4"]],
          "x0, x1, x2, x3, x4")
    r = tau(A, "gl")
    assert r.certified and r.dim == 3


def test_tau_sym_catalecticant_3x3():
    # the same cone as a symmetric determinantal: one parameter only
    B = M([["x0", "x1", "x2"], ["x1", "x2", "x3"], ["x2", "x3", "x4"]],
          "x0, x1, x2, x3, x4", kind="symmetric")
    r = tau(B, "sym")
    assert r.certified and r.dim == 1


def test_tau_group_kind_mismatch():
    A = M([["x", "y"], ["y", "x"]], "x, y", kind="symmetric")
    with pytest.raises(ValueError):
        tau(A, "gl")
    with pytest.raises(ValueError):
        tau(A.as_general(), "sym")


def test_tau_icis_matches_tjurina():
    from germlab.invariants import tjurina_number
    from germlab.ring import parse_poly

    V = VariableSet(["x", "y"])
    f = parse_poly("x^3 + y^4", V)
    assert tau_icis([f]).dim == tjurina_number(f).dim == 6
    # an honest codimension 2 example: the fat point (xy, x^3 + y^3) has
    # mu = 5 but tau = 6, one of the non-quasi-homogeneous-like gaps that
    # only occur for multi-germ data, not for hypersurfaces with weights
    from germlab.invariants import milnor_icis

    g1 = parse_poly("x*y", V)
    g2 = parse_poly("x^3 + y^3", V)
    assert tau_icis([g1, g2]).dim == 6
    assert milnor_icis([g1, g2]) == 5


def test_sl_vs_gl():
    # the sl tangent space is a subspace of the gl one, so tau can only
    # grow when the determinant-1 constraint is imposed; on the (quasi-
    # homogeneous) A_1 germ both give the same answer
    A = M([["x", "y"], ["z", "x"]], "x, y, z")
    assert tau(A, "sl").dim >= tau(A, "gl").dim
    assert tau(A, "sl").dim == 1


def test_unit_entries_split_off():
    # a unit entry in a general germ is split off by stable equivalence:
    # [[1, y],[y, x^2]] reduces by a Schur complement to the 1x1 germ
    # [x^2 - y^2], an A_1 curve with tau = 1
    A = M([["1", "y"], ["y", "x^2"]], "x, y")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        r = tau(A, "gl")
    assert r.certified
    assert r.dim == 1
    with pytest.raises(UnitEntriesError):
        tau(A, "gl", strict_units=True)
    # with a linear term in the reduced determinant the germ is stable
    B = M([["1 + x", "y"], ["z", "x"]], "x, y, z")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert tau(B, "gl").dim == 0


def test_unit_entries_forbidden_for_congruence():
    A = M([["1 + x", "y"], ["y", "x"]], "x, y", kind="symmetric")
    with pytest.raises(UnitEntriesError):
        tau(A, "sym")


def test_determinacy_bound():
    A = M([["x", "0", "z"], ["0", "y", "z"]], "x, y, z")
    k = determinacy_bound(A, "gl")
    assert isinstance(k, int) and k >= 1
    # a k-determined germ is (k+1)-determined too, so the bound computed
    # from a larger jet order can never shrink below this one
    with pytest.raises(UncertifiedError):
        determinacy_bound(A, "gl", max_order=1)


def test_miniversal_unfolding_triple_point():
    A = M([["x", "0", "z"], ["0", "y", "z"]], "x, y, z")
    basis = miniversal_unfolding(A, "gl")
    assert basis.group == "gl"
    assert basis.tau == 3
    assert len(basis.matrices) == 3
    for B in basis.matrices:
        assert (B.m, B.n) == (2, 3)
        # a cobasis element is a monomial in a single entry
        nonzero = [e for row in B.entries for e in row if not e.is_zero()]
        assert len(nonzero) == 1


def test_miniversal_unfolding_symmetric():
    B = M([["y", "x"], ["x", "y^2"]], "x, y", kind="symmetric")
    basis = miniversal_unfolding(B, "sym")
    assert basis.tau == 2
    assert len(basis.matrices) == 2
    for U in basis.matrices:
        # unfolding directions respect the symmetry of the germ
        assert U.kind == "symmetric"


def test_uncertified_tau_raises_nothing_but_reports():
    A = M([["x", "0", "z"], ["0", "y", "z"]], "x, y, z")
    r = tau(A, "gl", max_order=1)
    assert not r.certified
    assert r.dim is None
    with pytest.raises(UncertifiedError):
        r.require()

"""Certified colengths against a brute-force staircase oracle.

For a monomial ideal the colength is the number of standard monomials
(those divisible by no generator), countable directly when every variable
appears among the generators as a pure power.  The property test feeds
random such ideals to colength() and demands the certified dimension match
the count exactly -- not approximately, not "usually".
"""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from germlab.jetlin import ColengthResult, UncertifiedError, colength
from germlab.ring import Poly, QQ, VariableSet, parse_poly

XY = VariableSet(["x", "y"])
XYZ = VariableSet(["x", "y", "z"])


def mono(vars, exps):
    return Poly(vars, {tuple(exps): QQ(1)})


def staircase_count(nvars, gens):
    """Count monomials not divisible by any generator exponent.  Finite
    exactly when some pure power of each variable lies in the ideal; the
    caller guarantees that, so the search box is bounded by those powers."""
    box = [None] * nvars
    for g in gens:
        support = [i for i, e in enumerate(g) if e > 0]
        if len(support) == 1:
            i = support[0]
            if box[i] is None or g[i] < box[i]:
                box[i] = g[i]
    assert all(b is not None for b in box), "ideal not zero-dimensional"
    count = 0
    for exps in itertools.product(*[range(b) for b in box]):
        if not any(all(exps[i] >= g[i] for i in range(nvars)) for g in gens):
            count += 1
    return count


def test_known_monomial_colengths():
    # C{x,y} / (x^2, y^3): standard monomials 1, x, y, xy, y^2, xy^2
    r = colength([mono(XY, (2, 0)), mono(XY, (0, 3))])
    assert r.certified and r.dim == 6
    assert len(r.cobasis) == 6
    # the cobasis is exactly the staircase
    assert sorted(e for _, e in r.cobasis) == sorted(
        [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)]
    )


def test_jacobian_ideal_colengths():
    # mu(x^3 + y^3) = 4, mu(x^2 + y^2) = 1
    f = parse_poly("x^3 + y^3", XY)
    r = colength(f.gradient())
    assert r.certified and r.dim == 4
    g = parse_poly("x^2 + y^2", XY)
    assert colength(g.gradient()).dim == 1


def test_maximal_ideal_power():
    # colength of m^k in p variables is C(k - 1 + p, p)
    for k in (1, 2, 3):
        gens = [mono(XYZ, e)
                for e in itertools.product(range(k + 1), repeat=3)
                if sum(e) == k]
        r = colength(gens)
        assert r.certified and r.dim == {1: 1, 2: 4, 3: 10}[k]


def test_module_colength():
    # C{x}^2 / (x.e1, x^2.e2) has basis e1 excluded... rather:
    # generators (x, 0) and (0, x^2) leave 1, (0,1), (0,x) -> wait, e1 and
    # e2 themselves are not killed: basis {e1, e2, x.e2}, dimension 3.
    x = mono(XY, (1, 0))
    zero = Poly.zero(XY)
    one_y3 = mono(XY, (0, 3))
    r = colength([(x, zero), (zero, x), (one_y3, zero), (zero, one_y3)],
                 ncomp=2)
    # each component is C{x,y}/(x, y^3), colength 3
    assert r.certified and r.dim == 6
    comps = sorted(c for c, _ in r.cobasis)
    assert comps == [0, 0, 0, 1, 1, 1]


def test_infinite_quotient_is_never_certified():
    # (x^2, x*y) leaves all powers of y: the quotient is infinite and no
    # jet order can produce a Nakayama certificate
    r = colength([mono(XY, (2, 0)), mono(XY, (1, 1))], max_order=12)
    assert not r.certified
    assert r.dim is None
    with pytest.raises(UncertifiedError):
        r.require()


def test_max_order_too_small():
    # a perfectly finite quotient reported honestly as uncertified when
    # the jet budget is too small to see the certificate
    f = parse_poly("x^7 + y^7", XY)
    r = colength(f.gradient(), max_order=3)
    assert not r.certified
    with pytest.raises(UncertifiedError):
        r.require()
    # and certified once the order is big enough
    assert colength(f.gradient()).dim == 36


def test_require_returns_certified_dim():
    r = colength([mono(XY, (1, 0)), mono(XY, (0, 1))])
    assert r.require() == 1


# -- the staircase property ---------------------------------------------------

@st.composite
def zero_dim_monomial_ideals(draw):
    nvars = draw(st.integers(1, 3))
    # pure powers guarantee finite colength; a couple of extra random
    # monomials make the staircase non-rectangular
    gens = []
    for i in range(nvars):
        e = [0] * nvars
        e[i] = draw(st.integers(1, 5))
        gens.append(tuple(e))
    extras = draw(st.integers(0, 2))
    for _ in range(extras):
        g = tuple(draw(st.integers(0, 5)) for _ in range(nvars))
        if any(g):
            gens.append(g)
    return nvars, gens[: 5]


@settings(max_examples=200, deadline=None)
@given(zero_dim_monomial_ideals())
def test_colength_matches_staircase_oracle(data):
    nvars, gens = data
    vars = VariableSet(["x", "y", "z"][:nvars])
    expected = staircase_count(nvars, gens)
    r = colength([mono(vars, g) for g in gens])
    assert r.certified, r.reason
    assert r.dim == expected
    assert len(r.cobasis) == expected
    # every cobasis monomial is standard
    for _, e in r.cobasis:
        assert not any(all(e[i] >= g[i] for i in range(nvars)) for g in gens)

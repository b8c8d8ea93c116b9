"""Milnor/Tjurina numbers, boundary singularities, weights, ADE recognition.

The A-D-E normal forms double as an exactness test: their mu and tau are
textbook values, and since they all carry weights, mu = tau throughout.
The one non-quasi-homogeneous germ pinned here, x^3 + y^7 + x*y^5, has
mu = 12 by the Newton-polygon count (2 * 6 for the principal part, the
extra monomial lies above the diagonal) while tau drops to 11.
"""

import pytest

from germlab.detideal import parse_matrix
from germlab.invariants import (
    SingularityLabel,
    ade_recognize,
    boundary_milnor,
    milnor,
    milnor_icis,
    quasi_homogeneous,
    quasi_homogeneous_matrix,
    singular_milnor_hypersurface,
    tjurina_number,
)
from germlab.ring import VariableSet, parse_poly

XY = VariableSet(["x", "y"])
XYZ = VariableSet(["x", "y", "z"])


def P(text, vars=XY):
    return parse_poly(text, vars)


ADE_PLANE = [
    ("x^2 + y^2", "A", 1),
    ("x^2 + y^4", "A", 3),
    ("x^2 + y^8", "A", 7),
    ("x^2*y + y^3", "D", 4),
    ("x^2*y + y^5", "D", 6),
    ("x^3 + y^4", "E", 6),
    ("x^3 + x*y^3", "E", 7),
    ("x^3 + y^5", "E", 8),
]


@pytest.mark.parametrize("text,family,k", ADE_PLANE)
def test_ade_mu_tau(text, family, k):
    f = P(text)
    mu = milnor(f)
    ta = tjurina_number(f)
    assert mu.certified and ta.certified
    assert mu.dim == ta.dim == k
    lab = ade_recognize(f)
    assert lab is not None
    assert (lab.family, lab.index) == (family, k)
    assert lab.simple


def test_ade_recognize_d3_is_a3():
    # D_3 and A_3 name the same germ (x^2 y + y^2 is y'^2 - x^4/4 after
    # completing the square); the recognizer normalizes to A_3
    lab = ade_recognize(P("x^2*y + y^2"))
    assert str(lab) == "A3"
    # and over three distinct lines the honest D_4 appears
    assert str(ade_recognize(P("x^3 + y^3"))) == "D4"


def test_milnor_certificate_orders():
    r = milnor(P("x^2 + y^2"))
    assert r.certified_at == 2
    r = milnor(P("x^2 + y^9"))
    assert r.dim == 8


def test_non_quasi_homogeneous_gap():
    f = P("x^3 + y^7 + x*y^5")
    assert quasi_homogeneous(f) is None
    assert milnor(f).dim == 12
    assert tjurina_number(f).dim == 11


def test_quasi_homogeneous_weights():
    w = quasi_homogeneous(P("x^3 + y^7"))
    assert w is not None
    # integer weights, coprime normalization: deg x = 7, deg y = 3, d = 21
    assert w.weights == (7, 3)
    assert w.degree == 21
    w2 = quasi_homogeneous(P("x^2*y + y^3"))
    assert w2 is not None
    assert [2 * wi for wi in w2.weights] == [w2.degree - wi
                                             for wi in reversed(w2.weights)]


def test_quasi_homogeneous_matrix():
    A = parse_matrix([["x", "0", "z"], ["0", "y", "z"]], XYZ)
    mw = quasi_homogeneous_matrix(A)
    assert mw is not None
    # row degree + column degree = entry degree on every nonzero slot
    for i in range(A.m):
        for j in range(A.n):
            f = A.entries[i][j]
            if f.is_zero():
                continue
            spec = f.weighted_degree_spectrum(mw.weights)
            assert len(spec) == 1
            (d,) = spec
            assert d == mw.row_degrees[i] + mw.col_degrees[j]


def test_boundary_milnor_bk_ck_f4():
    # B_k: x^k + y^2 with boundary x = 0 has (mu, mu_section, mu_boundary)
    # = (k-1, 1, k); C_k: xy + y^k gives (1, k-1, k); F_4: x^2 + y^3 gives
    # (2, 2, 4).  In each case mu_boundary = mu + mu_section.
    for k in range(2, 7):
        b = boundary_milnor(P("x^%d + y^2" % k), boundary=0)
        assert (b.mu, b.mu_section, b.mu_boundary) == (k - 1, 1, k)
        c = boundary_milnor(P("x*y + y^%d" % k), boundary=0)
        assert (c.mu, c.mu_section, c.mu_boundary) == (1, k - 1, k)
    f4 = boundary_milnor(P("x^2 + y^3"), boundary=0)
    assert (f4.mu, f4.mu_section, f4.mu_boundary) == (2, 2, 4)


def test_boundary_milnor_other_axis():
    # moving the boundary to y = 0 swaps the roles of the variables
    b = boundary_milnor(P("y^3 + x^2"), boundary=1)
    assert (b.mu, b.mu_section, b.mu_boundary) == (2, 1, 3)


def test_milnor_icis():
    # ICIS mu via the Le-Greuel recursion: the fat point (y, x^3) is the
    # suspension of an A_2 and keeps mu = 2; (xy, x^3 + y^3) has mu = 5
    # (one less than its tau, see the tangent tests)
    assert milnor_icis([P("y"), P("x^3")]) == 2
    assert milnor_icis([P("x*y"), P("x^3 + y^3")]) == 5
    # hypersurface case degenerates to the classical Milnor number
    assert milnor_icis([P("x^3 + y^4")]) == 6


def test_singular_milnor_number():
    # [[x,y],[z,x^2+w^2]] in 4 variables: mu(det) = 4, the submaximal
    # (entry) ideal has colength 2, so the essential smoothing carries
    # 4 - 2 = 2 vanishing cycles
    V = VariableSet(["x", "y", "z", "w"])
    A = parse_matrix([["x", "y"], ["z", "x^2 + w^2"]], V)
    assert singular_milnor_hypersurface(A) == 2


def test_label_str_and_order():
    lab = SingularityLabel("A", 3, 3)
    assert str(lab) == "A3"
    assert lab.simple
    e8 = ade_recognize(P("x^3 + y^5"))
    assert str(e8) == "E8"


def test_recognize_smooth_and_nonsimple():
    s = ade_recognize(P("x"))
    assert s.family == "Smooth" and s.mu == 0 and not s.simple
    # an isolated germ outside A-D-E: x^3 + y^6 sits in the J_10 family
    lab = ade_recognize(P("x^3 + y^6"))
    assert lab.family == "NotSimple" and lab.mu == 10 and not lab.simple

"""Tjurina transform of maximal-minor germs, chart by chart.

For a 2 x 3 matrix germ defining an isolated 3-fold in 5 variables, the
transform lives in the total space of kernel directions; each chart fixes
one kernel coordinate to 1 and eliminates what the implicit function
theorem allows.  The third Betti number of a smoothing is the sum of the
Milnor numbers found in the charts.
"""

import pytest

from germlab.detideal import parse_matrix
from germlab.jetlin import UncertifiedError
from germlab.ring import VariableSet
from germlab.tjurina import (
    b3_threefold,
    betti_numbers_threefold,
    tjurina_charts,
    tjurina_transform,
)

V5 = VariableSet(["x", "y", "z", "v", "w"])


def threefold(last_entry):
    return parse_matrix([["x", "y", "z"], ["v", "w", last_entry]], V5)


def test_charts_shape():
    A = threefold("x^2 + y^2")
    charts = tjurina_charts(A)
    # the transform sits over P^1 of left-kernel covectors: one chart per
    # row, each contributing an equation per column
    assert len(charts) == 2
    for ch in charts:
        assert len(ch.equations) == 3


def test_smooth_transform():
    # [[x,y,z],[v,w,x]] resolves in one step: every chart is smooth
    A = threefold("x")
    analyses = tjurina_transform(A)
    assert all(a.smooth for a in analyses)
    assert b3_threefold(A) == 0
    assert betti_numbers_threefold(A) == (1, 0, 1, 0)


@pytest.mark.parametrize("entry,mu,label", [
    ("x^2 + y^2", 1, "A1"),
    ("x^3 + y^2", 2, "A2"),
    ("x*y^2 + x^3", 4, "D4"),
    ("x^3 + y^4", 6, "E6"),
    ("x^3 + x*y^3", 7, "E7"),
    ("x^3 + y^5", 8, "E8"),
])
def test_one_singular_point_on_transform(entry, mu, label):
    A = threefold(entry)
    analyses = tjurina_transform(A)
    sing = [a for a in analyses if not a.smooth]
    assert len(sing) == 1
    a = sing[0]
    assert a.mu == mu
    assert str(a.label) == label
    assert b3_threefold(A) == mu


def test_transform_with_two_points():
    # [[x,y,z],[v,w,y^2 + x^k * y]] for k = 2 splits into two rational
    # double points on the transform; their Milnor numbers add up in b3
    A = threefold("y^2 + x^2 * y")
    b3 = b3_threefold(A)
    analyses = tjurina_transform(A)
    total = sum(a.mu for a in analyses if not a.smooth)
    assert b3 == total
    assert b3 >= 1


def test_off_origin_rejected():
    # an entry with a constant term puts the rank-drop locus off the
    # origin; the pipeline refuses rather than reporting a wrong number
    A = threefold("1 + x")
    with pytest.raises(ValueError):
        b3_threefold(A)


def test_wrong_shape_rejected():
    B = parse_matrix([["x", "y"], ["z", "x"]], "x, y, z")
    with pytest.raises(ValueError):
        b3_threefold(B)


def test_uncertified_b3_raises():
    A = threefold("x^3 + y^4")
    with pytest.raises(UncertifiedError):
        b3_threefold(A, max_order=2)


def test_chart_analysis_fields():
    A = threefold("x^3 + y^2")
    for a in tjurina_transform(A):
        assert a.chart.index in (0, 1, 2)
        if a.smooth:
            assert a.mu == 0
        else:
            # eliminated equations plus residual variables account for
            # the chart's five coordinates minus the 3-fold dimension
            assert a.mu > 0
            assert a.residual is not None

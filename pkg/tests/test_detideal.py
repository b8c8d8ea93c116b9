"""Determinantal ideals: minors, Pfaffians, and their classical identities.

The load-bearing fact here is Pf(A)^2 = det(A) for skew A of even size;
Cayley's theorem is checked on random polynomial skew matrices up to size
6, which exercises every sign in the Pfaffian expansion.
"""

import random

import pytest

from germlab.detideal import (
    MatrixGerm,
    buchsbaum_eisenbud_vector,
    det,
    expected_codim,
    hilbert_burch_vector,
    ideal_generators,
    minors,
    parse_matrix,
    pfaffian,
    pfaffians,
)
from germlab.ring import Poly, QQ, VariableSet, parse_poly

XYZ = VariableSet(["x", "y", "z"])


def test_parse_matrix_and_accessors():
    A = parse_matrix([["x", "y", "z"], ["y", "z", "x^2"]], XYZ)
    assert (A.m, A.n) == (2, 3)
    assert A.kind == "general"
    assert A.vanishes_at_origin()
    assert A.entries[1][2] == parse_poly("x^2", XYZ)
    B = parse_matrix([["x", "y"], ["y", "z"]], XYZ, kind="symmetric")
    assert B.kind == "symmetric"
    assert B.as_general().kind == "general"


def test_kind_shape_validation():
    with pytest.raises(ValueError):
        parse_matrix([["x", "y"], ["z", "x"]], XYZ, kind="skew")
    with pytest.raises(ValueError):
        parse_matrix([["x", "y"], ["z", "x"]], XYZ, kind="symmetric")


def test_det_small():
    A = parse_matrix([["x", "y"], ["z", "x"]], XYZ)
    assert det(A.entries) == parse_poly("x^2 - y*z", XYZ)
    B = parse_matrix(
        [["x", "y", "0"], ["y", "z", "0"], ["0", "0", "x"]], XYZ
    )
    assert det(B.entries) == parse_poly("x * (x*z - y^2)", XYZ)


def test_minors():
    A = parse_matrix([["x", "y", "z"], ["y", "z", "x"]], XYZ)
    ms = minors(A, 2)
    assert len(ms) == 3
    assert parse_poly("x*z - y^2", XYZ) in ms
    assert parse_poly("x^2 - y*z", XYZ) in ms
    assert parse_poly("x*y - z^2", XYZ) in ms
    # 1-minors are the entries
    assert sorted(map(str, minors(A, 1))) == sorted(
        str(e) for row in A.entries for e in row
    )


def test_pfaffian_signs():
    # Pf of the standard symplectic block diag(J, J) is the product of the
    # off-diagonal entries minus the cross terms; on [[0,a],[−a,0]] it is a
    V = VariableSet(["a", "b", "c", "d", "e", "f"])
    A = parse_matrix([["0", "a"], ["-1 * a", "0"]], V, kind="skew")
    assert pfaffian(A.entries) == parse_poly("a", V)
    rows = [
        ["0", "a", "b", "c"],
        ["-1 * a", "0", "d", "e"],
        ["-1 * b", "-1 * d", "0", "f"],
        ["-1 * c", "-1 * e", "-1 * f", "0"],
    ]
    B = parse_matrix(rows, V, kind="skew")
    assert pfaffian(B.entries) == parse_poly("a*f - b*e + c*d", V)


def test_pfaffians_indexing():
    V = VariableSet(["a", "b", "c", "d", "e", "f"])
    rows = [
        ["0", "a", "b", "c"],
        ["-1 * a", "0", "d", "e"],
        ["-1 * b", "-1 * d", "0", "f"],
        ["-1 * c", "-1 * e", "-1 * f", "0"],
    ]
    B = parse_matrix(rows, V, kind="skew")
    twos = dict(pfaffians(B, 1))
    # the 2-Pfaffians are the upper entries
    assert twos[(0, 1)] == parse_poly("a", V)
    assert twos[(2, 3)] == parse_poly("f", V)
    fours = pfaffians(B, 2)
    assert len(fours) == 1 and fours[0][0] == (0, 1, 2, 3)


def test_ideal_generators_by_kind():
    A = parse_matrix([["x", "y", "z"], ["y", "z", "x"]], XYZ)
    assert len(ideal_generators(A)) == 3
    V = VariableSet(["a", "b", "c", "d", "e", "f"])
    rows = [
        ["0", "a", "b", "c"],
        ["-1 * a", "0", "d", "e"],
        ["-1 * b", "-1 * d", "0", "f"],
        ["-1 * c", "-1 * e", "-1 * f", "0"],
    ]
    B = parse_matrix(rows, V, kind="skew")
    gens = ideal_generators(B)
    assert len(gens) == 1
    assert gens[0] == parse_poly("a*f - b*e + c*d", V)


def test_expected_codim_closed_forms():
    # maximal minors of a generic m x n matrix: codim n - m + 1
    assert expected_codim("general", 2, 3, 2) == 2
    assert expected_codim("general", 2, 4, 2) == 3
    assert expected_codim("general", 3, 3, 3) == 1
    assert expected_codim("general", 3, 3, 2) == 4
    # symmetric: C(n - t + 2, 2)
    assert expected_codim("symmetric", 3, 3, 3) == 1
    assert expected_codim("symmetric", 3, 3, 2) == 3
    # skew 2s-Pfaffians: C(m - 2t + 2, 2)
    assert expected_codim("skew", 4, 4, 2) == 1
    assert expected_codim("skew", 4, 4, 1) == 6
    assert expected_codim("skew", 6, 6, 2) == 6


def test_hilbert_burch_vector():
    A = parse_matrix([["x", "0", "z"], ["0", "y", "z"]], XYZ)
    f = hilbert_burch_vector(A)
    assert len(f) == 3
    # A . f = 0 componentwise
    for i in range(A.m):
        s = Poly.zero(XYZ)
        for j in range(A.n):
            s = s + A.entries[i][j] * f[j]
        assert s.is_zero()
    # the entries generate the maximal minor ideal up to sign
    ms = minors(A, 2)
    assert all(g in ms or -g in ms for g in f)


def test_buchsbaum_eisenbud_vector():
    V = VariableSet(["x", "y", "z", "w", "v"])
    # generic 5x5 skew in 5 variables: classic codim 3 Gorenstein example;
    # here a small sparse model
    rows = [["0"] * 5 for _ in range(5)]
    coords = ["x", "y", "z", "w", "v"]
    k = 0
    for i in range(5):
        for j in range(i + 1, 5):
            rows[i][j] = coords[k % 5] if (i + j) % 2 else coords[(k + 2) % 5]
            k += 1
    for i in range(5):
        for j in range(i + 1, 5):
            rows[j][i] = "-1 * (%s)" % rows[i][j]
        rows[i][i] = "0"
    A = parse_matrix(rows, V, kind="skew")
    f = buchsbaum_eisenbud_vector(A)
    assert len(f) == 5
    for i in range(5):
        s = Poly.zero(V)
        for j in range(5):
            s = s + A.entries[i][j] * f[j]
        assert s.is_zero()


# -- Cayley: Pf^2 = det up to size 6 ------------------------------------------

def random_skew(n, rng, vars):
    names = list(vars)
    rows = [[Poly.zero(vars) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            terms = {}
            for _ in range(rng.randint(1, 2)):
                e = tuple(rng.randint(0, 2) for _ in names)
                c = rng.choice([-2, -1, 1, 2, 3])
                terms[e] = QQ(c)
            rows[i][j] = Poly(vars, terms)
            rows[j][i] = -rows[i][j]
    return MatrixGerm(rows, "skew")


@pytest.mark.parametrize("n", [2, 4, 6])
def test_pfaffian_squared_is_det(n):
    vars = VariableSet(["x", "y"])
    rng = random.Random(1000 + n)
    for _ in range(8):
        A = random_skew(n, rng, vars)
        pf = pfaffian(A.entries)
        assert pf * pf == det([list(r) for r in A.entries])


def test_odd_skew_has_no_pfaffian():
    vars = VariableSet(["x"])
    rows = [["0", "x", "x"], ["-1 * x", "0", "x"], ["-1 * x", "-1 * x", "0"]]
    A = parse_matrix(rows, vars, kind="skew")
    with pytest.raises(ValueError):
        pfaffian(A.entries)
    assert det([list(r) for r in A.entries]).is_zero()


# -- row/column operations leave the minor ideal invariant (spot check) -------

@pytest.mark.parametrize("seed", range(5))
def test_minor_ideal_membership_under_row_ops(seed):
    rng = random.Random(seed)
    V = VariableSet(["x", "y"])
    # a fat point: the 2-minors of [[x,y,0],[0,x,y]] span m^2, colength 3
    A = parse_matrix([["x", "y", "0"], ["0", "x", "y"]], V)
    # add a random multiple of row 0 to row 1: an invertible row operation
    # does not change the ideal of maximal minors, here checked through
    # the colength, which is a complete invariant of the staircase
    from germlab.jetlin import colength

    c = QQ(rng.randint(1, 4))
    rows = [list(A.entries[0]), [A.entries[1][j] + A.entries[0][j] * c
                                 for j in range(3)]]
    B = MatrixGerm(rows, "general")
    before = colength(minors(A, 2)).require()
    after = colength(minors(B, 2)).require()
    assert before == after == 3

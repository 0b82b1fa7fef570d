from fractions import Fraction

import pytest
from gmpy2 import mpq

from lgr.kernel import (
    SymPoly, as_matrix, det, fmt, identity, matmul, minor, poly_eval, random_matrix, rank, rat,
)
from oracles import leibniz_det, sympy_rank

TRI = [[2, 1, 0], [1, 2, 1], [0, 1, 2]]


def test_rat_parsing_and_format():
    assert rat("3/6") == mpq(1, 2)
    assert rat(Fraction(-2, 4)) == mpq(-1, 2)
    assert fmt(mpq(-4, 2)) == "-2" and fmt(mpq(2, 6)) == "1/3"
    with pytest.raises((TypeError, ValueError)):
        rat(True)


def test_det_examples():
    assert det(identity(3)) == 1
    assert det(as_matrix(TRI)) == 4
    assert det(as_matrix([[1, 2], [2, 4]])) == 0
    assert det([]) == 1
    with pytest.raises(ValueError):
        det(as_matrix([[1, 2, 3], [4, 5, 6]]))


def test_det_matches_permutation_sum(rng):
    for n in range(1, 7):
        for _ in range(6 if n < 6 else 2):
            m = random_matrix(rng, n, n)
            assert det(m) == leibniz_det(m)


def test_det_multiplicative(rng):
    for n in range(1, 6):
        a, b = random_matrix(rng, n, n), random_matrix(rng, n, n)
        assert det(matmul(a, b)) == det(a) * det(b)


def test_minor_examples():
    m = as_matrix(TRI)
    assert minor(m, [], []) == 1
    assert minor(m, [0, 2], [0, 2]) == 4
    assert minor(m, [0, 1, 2], [0, 1, 2]) == 4
    with pytest.raises(ValueError):
        minor(m, [0, 1], [0])
    with pytest.raises(IndexError):
        minor(m, [0, 3], [0, 1])
    with pytest.raises(ValueError):
        minor(m, [1, 0], [0, 1])


def test_rank_matches_sympy(rng):
    for _ in range(10):
        r = random_matrix(rng, 3, 5)
        rows = r + [[a + b for a, b in zip(r[0], r[1])]]
        assert rank(rows) == sympy_rank(rows) == 3


def test_poly_eval_examples():
    t1 = SymPoly.var(1, 2)
    assert poly_eval(t1, [mpq(3, 2), 0]) == mpq(3, 2)
    p = t1 * t1 / 2 + SymPoly.var(2, 2)
    assert poly_eval(p, [2, 1]) == 3
    assert poly_eval(SymPoly.constant(0, 2), [5, 7]) == 0
    with pytest.raises(ValueError):
        poly_eval(p, [1])


def _random_poly(rng, m=3):
    terms = {}
    for _ in range(4):
        terms[tuple(rng.randint(0, 2) for _ in range(m))] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return SymPoly(m, terms)


def test_ring_axioms(rng):
    for _ in range(10):
        a, b, c = (_random_poly(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a - a == 0


def test_poly_evaluation_is_a_homomorphism(rng):
    pt = [Fraction(1, 3), Fraction(-2), Fraction(5, 7)]
    for _ in range(10):
        a, b = _random_poly(rng), _random_poly(rng)
        assert poly_eval(a * b, pt) == poly_eval(a, pt) * poly_eval(b, pt)
        assert poly_eval(a.shift([1, 2, 3]), pt) == poly_eval(a, [x + d for x, d in zip(pt, [1, 2, 3])])


def test_weighted_degree_and_json():
    p = SymPoly(3, {(1, 0, 1): 2, (0, 2, 0): "1/3"})
    assert p.weighted_degree() == 4
    assert SymPoly.from_json(p.to_json()) == p
    assert p.diff(2) == SymPoly(3, {(0, 1, 0): "2/3"})

import random
from fractions import Fraction

import pytest

from arknit.linalg import (GF, QQ, Mat, coker_projection, inverse,
                           is_invertible, kernel_basis, min_poly, rank, solve,
                           solve_matrix)

from oracles import rref_rank


def rmat(rng, rows, cols, field=QQ):
    return Mat(field, rows, cols, tuple(
        tuple(field.of(rng.randrange(-3, 4)) for _ in range(cols))
        for _ in range(rows)))


def test_rank_matches_independent_elimination():
    rng = random.Random(7)
    for _ in range(60):
        m = rmat(rng, rng.randrange(1, 5), rng.randrange(1, 5))
        naive = rref_rank([[Fraction(x) for x in row] for row in m.entries])
        assert rank(m) == naive


def test_kernel_columns_annihilate():
    rng = random.Random(11)
    for _ in range(40):
        m = rmat(rng, rng.randrange(1, 5), rng.randrange(1, 5))
        ker = kernel_basis(m)
        assert ker.cols == m.cols - rank(m)
        if ker.cols:
            assert m.mul(ker).is_zero()


def test_coker_projection_kills_column_space():
    rng = random.Random(13)
    for _ in range(40):
        m = rmat(rng, rng.randrange(1, 5), rng.randrange(1, 5))
        P, free = coker_projection(m)
        assert P.rows == len(free) == m.rows - rank(m)
        if P.rows:
            assert P.mul(m).is_zero()
            assert rank(P) == P.rows


def test_solve_and_inverse():
    rng = random.Random(17)
    done = 0
    while done < 25:
        n = rng.randrange(1, 5)
        m = rmat(rng, n, n)
        if not is_invertible(m):
            continue
        done += 1
        inv = inverse(m)
        assert m.mul(inv).entries == Mat.identity(QQ, n).entries
        b = tuple(QQ.of(rng.randrange(-3, 4)) for _ in range(n))
        x = solve(m, b)
        assert x is not None and m.apply(x) == b


def test_solve_reports_inconsistency():
    m = Mat(QQ, 2, 1, ((QQ.of(1),), (QQ.of(2),)))
    assert solve(m, [QQ.of(1), QQ.of(1)]) is None
    assert solve(m, [QQ.of(1), QQ.of(2)]) == (QQ.of(1),)


def test_solve_matrix_consistency():
    rng = random.Random(19)
    for _ in range(30):
        a = rmat(rng, 3, 2)
        x0 = rmat(rng, 2, 2)
        b = a.mul(x0)
        x = solve_matrix(a, b)
        assert x is not None
        assert a.mul(x).entries == b.entries


def test_min_poly_annihilates_and_is_monic():
    rng = random.Random(23)
    for _ in range(20):
        n = rng.randrange(1, 4)
        m = rmat(rng, n, n)
        coeffs = min_poly(m)
        acc = Mat.zeros(QQ, n, n)
        p = Mat.identity(QQ, n)
        for c in coeffs:
            acc = acc.add(p.scale(c))
            p = p.mul(m)
        assert acc.is_zero()
        assert coeffs[-1] == QQ.one


def test_prime_field_arithmetic():
    F = GF(5)
    m = Mat(F, 2, 2, ((F.of(2), F.of(3)), (F.of(1), F.of(1))))
    assert is_invertible(m)
    assert m.mul(inverse(m)).entries == Mat.identity(F, 2).entries
    s = Mat(F, 2, 2, ((F.of(1), F.of(2)), (F.of(2), F.of(4))))
    assert rank(s) == 1
    assert kernel_basis(s).cols == 1


def test_field_conversions():
    assert QQ.of(Fraction(3, 2)) == Fraction(3, 2)
    F = GF(7)
    assert F.of(10) == 3
    assert F.of(Fraction(1, 2)) == 4
    with pytest.raises(ZeroDivisionError):
        F.of(Fraction(1, 7))

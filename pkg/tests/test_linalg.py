from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from lieverify.linalg import (
    GaussianScalar,
    Matrix,
    Subspace,
    as_fraction,
    charpoly,
    det,
    rank_and_kernel,
    signature,
    solve_linear,
    span_membership,
)

small = st.integers(-4, 4)


def matrices(max_r=5, max_c=5):
    return st.integers(1, max_r).flatmap(
        lambda r: st.integers(1, max_c).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_identity_rank():
    r, K = rank_and_kernel(Matrix.identity(2))
    assert (r, K.dim) == (2, 0)


def test_zero_row():
    r, K = rank_and_kernel(Matrix([[0, 0, 0]]))
    assert (r, K.dim) == (0, 3)


def test_rank_one_kernel():
    r, K = rank_and_kernel(Matrix([[1, 2], [2, 4]]))
    assert r == 1 and K.dim == 1
    (v,) = K.basis
    assert v[0] == -2 * v[1]


def test_solve_examples():
    assert solve_linear(Matrix.identity(3), (1, F(1, 2), -3)) == (1, F(1, 2), -3)
    assert solve_linear(Matrix.zeros(2, 2), (1, 0)) is None
    assert solve_linear(Matrix([[1, 1], [0, 2]]), (3, 4)) == (1, 2)


def test_span_membership_examples():
    z = Subspace.zero(2)
    assert span_membership(z, z, (0, 0)) == ()
    e1, e2 = Subspace.span([(1, 0)], 2), Subspace.span([(0, 1)], 2)
    assert span_membership(e1, e2, (1, 1)) == (1, 1)
    S, T = Subspace.span([(1, 1, 0)], 3), Subspace.span([(0, 1, 1)], 3)
    assert span_membership(S, T, (1, 0, -1)) == (1, -1)
    assert span_membership(S, T, (1, 0, 0)) is None


def test_fraction_parsing():
    assert as_fraction("1/2") == F(1, 2)
    assert as_fraction(-3) == F(-3)
    for bad in (0.5, "0.5", "1e3", True):
        with pytest.raises((TypeError, ValueError)):
            as_fraction(bad)


@given(matrices())
def test_rank_nullity(rows):
    M = Matrix(rows)
    r, K = rank_and_kernel(M)
    assert r + K.dim == M.ncols
    for v in K.basis:
        assert all(x == 0 for x in M @ v)


@given(matrices(), st.data())
def test_solve_round_trip(rows, data):
    M = Matrix(rows)
    x = data.draw(st.lists(small, min_size=M.ncols, max_size=M.ncols))
    b = M @ x
    y = solve_linear(M, b)
    assert y is not None and M @ y == b


@given(matrices(4, 4))
def test_transpose_rank(rows):
    M = Matrix(rows)
    assert M.rank() == M.T.rank()


@given(*[st.fractions(max_denominator=9).filter(lambda q: abs(q) < 50)] * 4)
def test_gaussian_norm_multiplicative(a, b, c, d):
    x, y = GaussianScalar(a, b), GaussianScalar(c, d)
    assert (x * y).norm() == x.norm() * y.norm()
    if y:
        assert (x / y) * y == x


def test_gaussian_determinant():
    i = GaussianScalar(0, 1)
    assert det([[i, 1], [0, i]]) == -1
    assert det([[1, 2], [3, 4]]) == -2


@settings(max_examples=40)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_charpoly_cayley_hamilton(rows):
    M = Matrix(rows)
    n = M.nrows
    cp = charpoly(M)
    assert cp[0] == 1 and cp[-1] == (-1) ** n * det(M.rows)
    acc = Matrix.zeros(n, n)
    for c in cp:
        acc = acc @ M + Matrix.identity(n).scale(c)
    assert acc.is_zero()


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_signature_counts(rows):
    M = Matrix(rows)
    S = M + M.T
    p, q, z = signature(S)
    assert p + q + z == S.nrows
    assert p + q == S.rank()


def test_subspace_ops():
    A = Subspace.span([(1, 0, 0), (0, 1, 0)], 3)
    B = Subspace.span([(0, 1, 0), (0, 0, 1)], 3)
    assert (A + B).dim == 3
    assert A.intersection(B).dim == 1
    assert (0, 5, 0) in A.intersection(B)
    assert A.coordinates((2, 3, 0)) == (2, 3)

import random
from fractions import Fraction as F

import pytest

from qairy.kernel import (FULL, LOWER, QQ, IndexSet, NumberField, SeriesRing, SparseTensor, format_rational,
                          inverse, nullspace, rank)


def test_format_rational():
    assert format_rational(F(3)) == "3"
    assert format_rational(F(-2, 6)) == "-1/3"
    assert QQ.parse("5/10") == F(1, 2)


def test_number_field_arithmetic():
    K = NumberField([1, 1, 1])          # z^2 + z + 1
    z = K.gen()
    assert z ** 3 == K(1)
    assert z * z == -z - 1
    x = K([F(2, 3), 5])
    assert x * x.inverse() == K(1)
    assert (x / x) == K(1)
    assert K.parse(K.format(x)) == x


def test_number_field_rejects_reducible():
    with pytest.raises(Exception):
        NumberField([-1, 0, 1]).reduce([1, 1]).inverse()


def _rand_low_rank(rng, m, n, r):
    U = [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(r)] for _ in range(m)]
    V = [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(r)]
    return [[sum((U[i][k] * V[k][j] for k in range(r)), F(0)) for j in range(n)] for i in range(m)]


def test_rank_matches_nullspace(rng):
    for _ in range(100):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        M = _rand_low_rank(rng, m, n, rng.randint(0, 4))
        ns = nullspace(M, n)
        assert rank(M) + len(ns) == n
        for v in ns:
            assert all(sum(r[j] * v[j] for j in range(n)) == 0 for r in M)


def test_rank_over_number_field(rng):
    K = NumberField([1, 0, 1])          # i
    i = K.gen()
    M = [[K(1), i], [i, K(-1)]]         # second row = i * first row
    assert rank(M) == 1
    assert rank([[K(1), i], [K(0), K(2)]]) == 2


def test_inverse():
    M = [[F(2), F(1)], [F(5), F(3)]]
    Mi = inverse(M)
    assert [[sum(M[i][k] * Mi[k][j] for k in range(2)) for j in range(2)] for i in range(2)] == [[1, 0], [0, 1]]


def test_sparse_tensor_symmetry():
    ix = IndexSet.range(3)
    t = SparseTensor(3, FULL, ix, F(0))
    t[(2, 0, 1)] = F(5)
    assert t[(0, 1, 2)] == 5 and t[(1, 2, 0)] == 5
    c = SparseTensor(3, LOWER, ix, F(0))
    c[(1, 2, 0)] = F(3)
    assert c[(1, 0, 2)] == 3 and c[(0, 2, 1)] == 0


def test_graded_index_set():
    ix = IndexSet.graded_range(2, 2)
    assert len(ix) == 6
    assert ix.label(3) == "1:2"
    assert ix.degree(3) == 1 and ix.color(3) == 2


def test_series_truncation_and_inverse():
    R = SeriesRing(2, 4)
    x, y = R.var(0), R.var(1)
    s = (1 - x - y).inverse()
    assert s.coefficient([2, 2]) == 6
    assert (s * (1 - x - y)) == R(1)
    assert (x ** 5) == R(0)

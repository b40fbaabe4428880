import random
from fractions import Fraction as F

import pytest

from qairy import zoo
from qairy.airy_core import validate_relations
from qairy.kernel import SeriesRing
from qairy.recursion import fgn
from qairy.transform import (GaugeError, gauge_u, hbar_rescale, scale, translate, translation_consistency)


def _abcd(s):
    return s.A[(0, 0, 0)], s.B[(0, 0, 0)], s.C[(0, 0, 0)], s.d(0)


def test_gauge_dim1_example():
    assert _abcd(gauge_u(zoo.dim1_airy(1, 0, 0, 0), [[3]])) == (1, 3, 9, F(3, 2))
    s = zoo.sl2_airy()
    assert gauge_u(s, [[0] * 3 for _ in range(3)]).same_tensors(s)


def test_gauge_group_law():
    rng = random.Random(2)
    s = zoo.dim2_family("Ib", F(3, 5), F(-2, 3))
    q = lambda: F(rng.randint(-4, 4), rng.randint(1, 3))
    u = [[q(), 0], [0, q()]]
    u[0][1] = u[1][0] = q()
    v = [[q(), 0], [0, q()]]
    v[0][1] = v[1][0] = q()
    w = [[u[i][j] + v[i][j] for j in range(2)] for i in range(2)]
    assert gauge_u(gauge_u(s, u), v).same_tensors(gauge_u(s, w))


def test_gauge_rejects_asymmetric_u():
    with pytest.raises(GaugeError):
        gauge_u(zoo.sl2_airy(), [[0, 1, 0], [0, 0, 0], [0, 0, 0]])


def test_gauge_preserves_validity_on_zoo():
    rng = random.Random(9)
    for s in zoo.finite_examples()[:8]:
        n = s.dim
        u = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                u[a][b] = u[b][a] = F(rng.randint(-3, 3), rng.randint(1, 3))
        assert validate_relations(gauge_u(s, u, validate=False)).ok


def test_scale_and_hbar_examples():
    s = zoo.dim1_airy(1, 1, 1, 1)
    assert _abcd(scale(s, 2)) == (8, 2, F(1, 2), 2)
    assert _abcd(hbar_rescale(s, 3)) == (F(1, 3), 1, 3, 1)
    assert scale(s, 1).same_tensors(s) and hbar_rescale(s, 1).same_tensors(s)


def test_scale_and_hbar_covariance():
    s = zoo.sl2_airy()
    lam, z = F(3, 2), F(-2, 5)
    sl, sz = scale(s, lam), hbar_rescale(s, z)
    for g, idx in [(0, [1, 2, 3]), (1, [1]), (1, [2, 3]), (2, [1])]:
        assert fgn(sl, g, idx) == lam ** len(idx) * fgn(s, g, idx)
        assert fgn(sz, g, idx) == z ** (g - 1) * fgn(s, g, idx)
    assert validate_relations(sz).ok and validate_relations(sl).ok


def test_translate_low_orders():
    s = zoo.sl2_airy()
    T = translate(s, 3)
    R = T.ring
    t = [R.var(a) for a in range(3)]
    for i in range(3):
        want = sum((s.A[(i, a, b)] * t[a] * t[b] * F(1, 2) for a in range(3) for b in range(3)), R.zero)
        assert T.g01[i].homogeneous(2) == want
        for j in range(3):
            assert T.g02[i][j].homogeneous(1) == sum((s.A[(i, j, a)] * t[a] for a in range(3)), R.zero)
    assert T.C[(0, 1, 2)].constant() == s.C[(0, 1, 2)]
    assert T.A[(0, 0, 0)].constant() == s.A[(0, 0, 0)]


def test_translation_consistency_dim1():
    rep = translation_consistency(zoo.dim1_airy(2, 3, 5, 7), 3, 3)
    assert rep.ok, str(rep)
    assert translation_consistency(zoo.dim1_airy(2, 3, 5, 7), 0, 3).ok


def test_translate_rejects_graded():
    with pytest.raises(Exception):
        translate(zoo.z2_loop_airy({-1: 1}, budget=3), 2)

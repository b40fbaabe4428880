import random
from fractions import Fraction as F

from qairy import closed_form as cf
from qairy import zoo
from qairy.recursion import fgn


def test_tree_enumeration_small():
    assert cf.tree_sum(1) == 1
    assert cf.tree_sum(2) == F(1, 2)
    assert [t.aut_order for t in cf.enumerate_trees(3)] and cf.tree_count(3) == F(1, 2)


def test_beta_recursion_start():
    assert cf.bairy_beta(5) == [0, 5, 60, 1105, 27120]


def test_dim1_series_matches_recursion():
    rng = random.Random(21)
    for _ in range(2):
        a, b, c, d = (F(rng.randint(1, 9), rng.randint(1, 5)) for _ in range(4))
        s = zoo.dim1_airy(a, b, c, d)
        for (g, n), v in cf.dim1_series(a, b, c, d, 3, 5).items():
            if 2 * g - 2 + n <= 8:
                assert fgn(s, g, [0] * n) == v


def test_whittaker_table_holds_at_printed_agreements():
    # entries whose printed polynomial is correct
    s = zoo.dim1_airy(2, 3, 5, 7)
    good = {(0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (1, 1), (1, 2), (1, 3)}
    for g, n, p in cf.whittaker_table():
        if (g, n) in good:
            assert fgn(s, g, [0] * n) == p(2, 3, 5, 7)


def test_cequal0_frobenius():
    s = zoo.frobenius_airy(zoo.FrobeniusAlgebra.semisimple([1, 3]), 2, F(1, 2), 0, [1, F(2, 3)])
    for idx in [(0, 0, 0), (0, 1, 1), (0, 0, 1, 1)]:
        assert cf.cequal0_fgn(s, 0, idx) == fgn(s, 0, list(idx))
    assert cf.cequal0_fgn(s, 1, (1, 1)) == fgn(s, 1, [1, 1])

import random
from collections import defaultdict
from fractions import Fraction as F

from qairy import zoo
from qairy.weyl import WeylElement, bracket, from_airy, lie_closure_check


def _rand_elem(rng, n):
    q = lambda: F(rng.randint(-3, 3), rng.randint(1, 2))
    e = WeylElement.zero(n)
    e.c = q()
    e.p = [q() for _ in range(n)]
    e.q = [q() for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            e.A2[i][j] = e.A2[j][i] = q()
            e.C2[i][j] = e.C2[j][i] = q()
        for j in range(n):
            e.B2[i][j] = q()
    return e


def _d(f, i):
    out = defaultdict(F)
    for m, c in f.items():
        if m[i]:
            k = list(m)
            k[i] -= 1
            out[tuple(k)] += c * m[i]
    return dict(out)


def _x(f, i):
    out = {}
    for m, c in f.items():
        k = list(m)
        k[i] += 1
        out[tuple(k)] = c
    return out


def _add(*terms):
    out = defaultdict(F)
    for c, f in terms:
        for m, v in f.items():
            out[m] += c * v
    return {m: v for m, v in out.items() if v}


def _apply(e, f):
    """Act with e (hbar = 1, x to the left of d) on a polynomial {exponents: coeff}."""
    n = e.dim
    terms = [(e.c, f)]
    for i in range(n):
        terms += [(e.p[i], _d(f, i)), (e.q[i], _x(f, i))]
        for j in range(n):
            terms += [(e.A2[i][j] / 2, _x(_x(f, j), i)), (e.B2[i][j], _x(_d(f, j), i)),
                      (e.C2[i][j] / 2, _d(_d(f, j), i))]
    return _add(*terms)


def test_bracket_matches_commutator_on_polynomials():
    rng = random.Random(3)
    n = 2
    for _ in range(20):
        u, v = _rand_elem(rng, n), _rand_elem(rng, n)
        f = {(rng.randint(0, 3), rng.randint(0, 3)): F(rng.randint(1, 5)) for _ in range(4)}
        lhs = _add((1, _apply(u, _apply(v, f))), (-1, _apply(v, _apply(u, f))))
        assert lhs == _apply(bracket(u, v), f)


def test_bracket_antisymmetric_and_jacobi():
    rng = random.Random(5)
    u, v, w = (_rand_elem(rng, 2) for _ in range(3))
    assert bracket(u, v) == bracket(v, u).scaled(-1)
    jac = bracket(u, bracket(v, w)) + bracket(v, bracket(w, u)) + bracket(w, bracket(u, v))
    assert jac.is_zero()


def test_vector_round_trip():
    e = _rand_elem(random.Random(1), 3)
    assert WeylElement.from_vector(3, e.to_vector()) == e
    assert len(e.to_vector()) == WeylElement.module_dim(3)


def test_from_airy_sl2():
    s = zoo.sl2_airy()
    L1 = from_airy(s, 0)
    assert L1.c == -s.d(0) and L1.p == [1, 0, 0]
    assert lie_closure_check(s).ok

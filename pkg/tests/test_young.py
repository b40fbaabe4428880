from fractions import Fraction as F

import pytest

from qairy import recursion, young, zoo
from qairy.oracles import young_matrix, young_samples
from qairy.young import ColoredYoung, LabeledYoung, YoungState, YoungSymmetryError, _Tensors


def test_diagram_basics():
    lam = ColoredYoung.of([(1, 1), (3, 1), (1, 1), (2, 2)])
    assert lam.columns == ((3, 1), (2, 2), (1, 1), (1, 1))
    assert lam.size == 7 and lam.length == 4 and lam.aut() == 2
    assert str(lam) == "[3/1 2/2 1/1 1/1]"
    with pytest.raises(young.YoungError):
        LabeledYoung(lam, (5, 1))


def test_delta_b_dim1():
    s = zoo.dim1_airy(2, 3, 0, 1)
    T = _Tensors(s, 1)
    st = YoungState()
    st.add(ColoredYoung.of([(1, 1)] * 3), F(2))
    out = young.delta_B(st, T)
    assert dict(out.items()) == {LabeledYoung(ColoredYoung.of([(1, 1)] * 4), (1, 1)): F(18)}


def test_omega_equals_recursion_finite():
    for s in (zoo.sl2_airy(), zoo.dim2_family("Ib", F(2, 3), F(5, 2))):
        for g, n in recursion.stable_pairs(4):
            fe = {tuple(sorted(k)): v for k, v in recursion.free_energy(s, g, n).items()}
            assert young.evaluate(young.omega(s, g, n)) == fe


def test_omega_equals_recursion_z2_loop():
    s = young_samples()[0]
    assert all(ok for _, ok in young_matrix(s, 4).values())


def test_symmetry_failure_reported():
    s = zoo.z2_loop_airy({-1: 3, 0: 2}, budget=4)
    p = s.copy("perturbed")
    p.B.set((0, 1, 1), p.B[(0, 1, 1)] + 1)
    p.touched()
    with pytest.raises(YoungSymmetryError) as e:
        for g, n in recursion.stable_pairs(3):
            young.omega(p, g, n)
    assert 2 * e.value.g - 2 + e.value.n <= 3


def test_support_constant():
    assert young.support_constant(zoo.z2_loop_airy({0: 1, 1: 2}, budget=3)) >= 1
    assert young.support_constant(zoo.sl2_airy()) == 3

from fractions import Fraction as F

import pytest

from qairy import zoo
from qairy.airy_core import AiryStructure, validate_relations
from qairy.kernel import NFElement
from qairy.recursion import fgn
from qairy.weyl import lie_closure_check


@pytest.mark.parametrize("name", zoo.catalog())
def test_catalog_builds_valid(name):
    s = zoo.build(name, {"budget": 3} if name in ("loop", "z2loop", "spectral", "branchfree") else {})
    assert validate_relations(s).ok
    if not s.graded:
        assert lie_closure_check(s).ok
    assert AiryStructure.loads(s.dumps()).same_tensors(s)


def test_unknown_name():
    with pytest.raises(zoo.ZooError):
        zoo.build("nope")


def test_iib_gamma_rejected():
    assert validate_relations(zoo.dim2_family("IIb", 2, 3)).ok
    with pytest.raises(zoo.ZooError):
        zoo.dim2_family("IIb", 2, 3, gamma=5)


def test_dim3_over_number_field():
    s = zoo.dim3_lm2(F(2, 5), 1)
    assert s.dim == 3
    assert any(isinstance(v, NFElement) for _, v in s.A.items())
    assert validate_relations(s).ok and lie_closure_check(s).ok


def test_abelian_rejects_off_locus():
    with pytest.raises(zoo.ZooError):
        zoo.abelian_case(9, 1)


def test_loop_t_minus_one_forces_zero_D():
    with pytest.raises(zoo.ZooError):
        zoo.loop_airy({-1: 1, 0: 2}, D={0: 1}, budget=3)


def test_z2_loop_default_D():
    s = zoo.z2_loop_airy({-1: 3, 0: 2}, budget=3)
    assert s.d(0) == F(2, 8) and s.d(1) == F(3, 24)
    assert fgn(s, 0, [0, 0, 0]) == 3


def test_z2_loop_rejects_printed_u_shift():
    # D^0 = (t_0 + u_00 t_-1)/8 is not admissible; t_0/8 + u_00 t_-1/2 is
    t = {-1: 3, 0: 2}
    with pytest.raises(zoo.ZooError):
        zoo.z2_loop_airy(t, {(0, 0): 5}, D={0: F(2 + 15, 8), 1: F(1, 8)}, budget=3)
    s = zoo.z2_loop_airy(t, {(0, 0): 5}, budget=3)
    assert s.d(0) == F(2, 8) + F(15, 2)


def test_young_support_constant_recorded():
    assert zoo.z2_loop_airy({-1: 1}, budget=3).certificate.young_r == 3


def test_virasoro_basis():
    assert zoo.virasoro_basis_check({0: 1, 1: 2}).ok
    assert zoo.virasoro_basis_check({1: 2, 2: F(1, 3)}, window=(1, 4)).ok


def test_frobenius_noncommutative():
    s = zoo.nc_frobenius_airy(zoo.FrobeniusAlgebra.matrix_algebra(2))
    assert s.dim == 4 and validate_relations(s).ok

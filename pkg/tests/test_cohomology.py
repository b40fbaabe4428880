import random
from fractions import Fraction as F

import pytest

from qairy import zoo
from qairy.cohomology import CohomologyError, ce_complex, ce_dims, hs_oracle_dims
from qairy.oracles import dim2_generic


def test_sl2_is_rigid():
    assert ce_dims(zoo.sl2_airy()) == (1, 0, 0)


def test_complex_is_a_complex():
    for s in (zoo.sl2_airy(), zoo.dim2_family("Ic", F(3, 4), F(-5, 2))):
        C = ce_complex(s)
        assert C.dd_zero() and C.euler_audit()
        assert C.cochain_dims[0] == 1 + 2 * s.dim + s.dim * (2 * s.dim + 1)


@pytest.mark.parametrize("case", ["Ia", "Ib", "Ic", "IIa", "IIb"])
def test_dim2_routes_agree(case):
    rng = random.Random(case)
    s = dim2_generic(case, rng)
    assert hs_oracle_dims(s, [1], 0).dims == ce_dims(s)


def test_dim2_special_point_differs():
    # the table holds for generic parameters only
    assert ce_dims(zoo.dim2_family("IIb", 1, 1)) == (4, 4, 0)


def test_supplied_constants_checked():
    s = zoo.dim2_family("Ia", 2, 3)
    assert hs_oracle_dims(s, [1], 0, a=-1).a == -1
    with pytest.raises(CohomologyError):
        hs_oracle_dims(s, [1], 0, a=2)


def test_rejects_graded_and_abelian_wrong_ideal():
    with pytest.raises(CohomologyError):
        ce_dims(zoo.z2_loop_airy({-1: 1}, budget=3))
    with pytest.raises(CohomologyError):
        hs_oracle_dims(zoo.sl2_airy(), [1], 2)

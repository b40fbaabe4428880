from fractions import Fraction as F

import pytest

from qairy import zoo
from qairy.airy_core import AiryStructure, d_admissible, d_ref, structure_constants, validate_relations


def test_dense_round_trip_and_symmetry_check():
    s = zoo.dim2_family("Ia", 2, 3)
    A, B, C, D = s.dense()
    t = AiryStructure.from_dense(A, B, C, D)
    assert t.same_tensors(s)
    A[0][0][1] = F(99)
    with pytest.raises(ValueError):
        AiryStructure.from_dense(A, B, C, D)


@pytest.mark.parametrize("s", [zoo.sl2_airy(), zoo.dim3_lm2(), zoo.z2_loop_airy({-1: 2, 0: 1}, budget=3)],
                         ids=lambda s: s.name)
def test_json_round_trip(s):
    t = AiryStructure.loads(s.dumps())
    assert t.same_tensors(s)
    assert t.dumps() == s.dumps()


def test_json_rejects_inconsistent_duplicates():
    d = zoo.sl2_airy().to_json()
    i, j, k, v = d["A"][0]
    d["A"].append([k, j, i, "12345"])
    with pytest.raises(ValueError):
        AiryStructure.from_json(d)


def test_perturbation_reports_first_violation():
    s = zoo.sl2_airy().copy()
    s.B.set((0, 1, 1), s.B[(0, 1, 1)] + 1)
    s.touched()
    rep = validate_relations(s)
    assert not rep.ok and rep.first().tag in {"BB-AC", "BC", "BA", "D"}


def test_structure_constants_dim2():
    f = structure_constants(zoo.dim2_family("IIa", F(5, 3), F(-2, 7))).f
    assert f == {(0, 1, 1): -1, (1, 0, 1): 1}


def test_d_reference():
    s = zoo.sl2_airy()
    assert d_admissible(s)
    ref = d_ref(s)
    assert ref.admissible(ref.d_ref)
    bad = [x + 1 for x in ref.d_ref]
    assert not ref.admissible(bad)


def test_dimension_one_has_no_relations():
    assert validate_relations(zoo.dim1_airy(2, 3, 5, 7)).ok

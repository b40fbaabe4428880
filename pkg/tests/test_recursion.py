from fractions import Fraction as F

import pytest

from qairy import recursion, zoo
from qairy.recursion import BudgetError, check_symmetry, fgn, free_energy


def test_dim1_values():
    s = zoo.dim1_airy(2, 3, 5, 7)
    assert fgn(s, 0, [0, 0, 0]) == 2
    assert fgn(s, 1, [0]) == 7
    assert fgn(s, 1, [0, 0]) == F(1, 2) * 2 * 5 + 3 * 7 == 26
    assert fgn(s, 0, [0, 0, 0, 0]) == 3 * 2 * 3


def test_symmetry_finite():
    for s in (zoo.sl2_airy(), zoo.dim2_family("Ic", F(3, 2), F(-1, 3))):
        assert check_symmetry(s, 5).ok


def test_symmetry_detects_broken_structure():
    s = zoo.sl2_airy().copy("broken")
    s.B.set((0, 1, 1), s.B[(0, 1, 1)] + 1)
    s.touched()
    assert not check_symmetry(s, 3).ok


def test_pruned_equals_unpruned():
    mk = lambda: zoo.z2_loop_airy({-1: 3, 0: 2, 1: F(-1, 2)}, {(0, 0): 5}, budget=5)
    a, b = mk(), mk()
    b.meta["prune_support"] = False
    recursion.clear_cache(b)
    for g, n in recursion.stable_pairs(5):
        assert free_energy(a, g, n).data == free_energy(b, g, n).data


def test_budget_guard(monkeypatch):
    s = zoo.dim1_airy()
    monkeypatch.setenv("AIRY_BUDGET", "3")
    with pytest.raises(BudgetError):
        fgn(s, 2, [0, 0])
    monkeypatch.setenv("AIRY_BUDGET", "12")
    assert fgn(s, 2, [0]) == 0


def test_graded_certificate_budget():
    s = zoo.z2_loop_airy({-1: 1}, budget=3)
    with pytest.raises(BudgetError):
        check_symmetry(s, 4)


def test_free_energy_symmetric_tensor():
    s = zoo.sl2_airy()
    t = free_energy(s, 0, 4)
    for idx, v in t.items():
        assert fgn(s, 0, [s.index.label(i) for i in reversed(idx)]) == v


def test_export_table_is_json():
    import json
    s = zoo.dim1_airy(1, 2, 3, 4)
    fgn(s, 1, [0, 0])
    rows = json.loads(recursion.export_table(s))
    assert {"g": 1, "indices": [0, 0], "value": "19/2"} in rows

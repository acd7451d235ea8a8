from __future__ import annotations

from fractions import Fraction

import pytest

from takiffalg import catalog
from takiffalg.liealg import bracket_elements, index, is_symmetric_invariant, magic_number
from takiffalg.report import PASS

EXPECTED = {
    "sl2": {"index": 1, "magic": 2, "degrees": [2], "dim": 3},
    "sl3": {"index": 2, "magic": 5, "degrees": [2, 3], "dim": 8},
    "heis1": {"index": 1, "magic": 2, "degrees": [1], "dim": 3},
    "heis2": {"index": 1, "magic": 3, "degrees": [1], "dim": 5},
    "affine2": {"index": 0, "magic": 1, "degrees": [], "dim": 2},
    "slnV2": {"index": 1, "magic": 4, "degrees": [2], "dim": 7},
    "slnV3": {"index": 1, "magic": 9, "degrees": [3], "dim": 17},
    "nilrad_sl3": {"index": 1, "magic": 2, "degrees": [1], "dim": 3},
}


def test_names_and_listing():
    assert catalog.NAMES == tuple(EXPECTED)
    listed = catalog.list_entries()
    assert [name for name, _ in listed] == list(catalog.NAMES)
    assert all(summary for _, summary in listed)


def test_unknown_name_reports_choices():
    with pytest.raises(KeyError, match="sl2"):
        catalog.load("so5")


@pytest.mark.parametrize("name", catalog.NAMES)
def test_expected_values(name):
    entry = catalog.load(name)
    want = EXPECTED[name]
    assert entry.algebra.dim == want["dim"]
    assert entry.expected["index"] == want["index"]
    assert entry.expected["magic"] == want["magic"]
    assert entry.expected["degrees"] == want["degrees"]
    assert index(entry.algebra, trials=5, seed=0) == want["index"]
    assert magic_number(entry.algebra, trials=5, seed=0) == want["magic"]
    assert list(entry.invariants.degrees()) == want["degrees"]


@pytest.mark.parametrize("name", catalog.NAMES)
def test_self_certification(name):
    rep = catalog.self_test(catalog.load(name))
    assert rep.summary == PASS, rep.to_json()


def test_flags_present():
    for name in catalog.NAMES:
        flags = catalog.load(name).flags
        assert set(flags) == {"semisimple", "no_proper_semiinvariants", "frobenius"}
    assert catalog.load("affine2").flags["frobenius"] is True
    assert catalog.load("sl2").flags["semisimple"] is True
    assert catalog.load("heis1").flags["frobenius"] is False


class TestModuleExtension:
    def test_slnv2_action_example(self):
        entry = catalog.load("slnV2")
        L = entry.algebra
        # [e, v_2l] = v_1l: e feeds row 2 into row 1 of the coordinate block
        e, v21 = L.basis.index("e"), L.basis.index("v21")
        out = bracket_elements(L, {e: Fraction(1)}, {v21: Fraction(1)})
        assert out == {L.basis.index("v11"): Fraction(1)}
        # module vectors commute with one another
        v11, v22 = L.basis.index("v11"), L.basis.index("v22")
        assert bracket_elements(L, {v11: Fraction(1)}, {v22: Fraction(1)}) == {}

    def test_slnv2_determinant_is_invariant(self):
        entry = catalog.load("slnV2")
        assert is_symmetric_invariant(entry.algebra, entry.invariants.polys[0])

    def test_slnv3_determinant_degree(self):
        entry = catalog.load("slnV3")
        (det,) = entry.invariants.polys
        assert det.degree() == 3
        assert is_symmetric_invariant(entry.algebra, det)


class TestParametrizations:
    def test_sl2_nilcone_covers_expected_dim(self, sl2):
        cone = sl2.parametrizations["nilcone"]
        assert cone.declared_dim == 2
        assert cone.params == ("s", "t")
        pt = cone.point_at({"s": Fraction(2), "t": Fraction(3)})
        assert pt == {"e": Fraction(4), "h": Fraction(12), "f": Fraction(-9)}
        assert sl2.invariants.polys[0].evaluate(pt) == 0

    def test_only_sl2_ships_one(self):
        for name in catalog.NAMES:
            entry = catalog.load(name)
            if name == "sl2":
                assert set(entry.parametrizations) == {"nilcone"}
            else:
                assert entry.parametrizations == {}

from __future__ import annotations

from fractions import Fraction

import pytest

from takiffalg import catalog, linalg, sampling
from takiffalg.liealg import (
    AlgebraError,
    AlgebraFormatError,
    HomogeneityError,
    InvariantSet,
    LieAlgebra,
    bracket_elements,
    generic_kirillov_rank,
    index,
    invariance_defect,
    is_regular,
    is_symmetric_invariant,
    kirillov_matrix,
    magic_number,
    omega_test,
    poisson_bracket,
    poisson_bracket_at,
    validate,
)
from takiffalg.polyring import parse_poly

from oracles import naive_rank


def _sl2_corrupted():
    # [e, f] changed from h to e; Jacobi must fail on (e, h, f).
    return LieAlgebra.create("badsl2", ("e", "h", "f"), {
        (0, 1): {0: -2},
        (0, 2): {0: 1},
        (1, 2): {2: -2},
    })


class TestConstruction:
    def test_orientation_normalization(self, sl2):
        L = sl2.algebra
        assert L.bracket(0, 1) == {0: Fraction(-2)}
        assert L.bracket(1, 0) == {0: Fraction(2)}
        assert L.bracket(0, 0) == {}

    def test_rejects_duplicates_and_self_pairs(self):
        with pytest.raises(AlgebraFormatError):
            LieAlgebra.create("x", ("a", "a"), {})
        with pytest.raises(AlgebraFormatError):
            LieAlgebra.create("x", ("a", "b"), {(0, 0): {1: 1}})
        with pytest.raises(AlgebraFormatError):
            LieAlgebra.create("x", ("a", "b"), {(0, 5): {1: 1}})

    def test_structure_equal_contract(self, sl2):
        relabeled = LieAlgebra.create("other", sl2.algebra.basis, sl2.algebra.brackets)
        assert sl2.algebra.structure_equal(relabeled)
        assert not sl2.algebra.structure_equal(_sl2_corrupted())

    def test_nilradical_is_heisenberg_up_to_renaming(self, heis1):
        nil = catalog.load("nilrad_sl3").algebra
        assert nil.dim == heis1.algebra.dim
        assert nil.brackets == heis1.algebra.brackets

    def test_bracket_elements_bilinearity(self, sl2):
        L = sl2.algebra
        x = {0: Fraction(1), 1: Fraction(2)}
        y = {2: Fraction(3)}
        xy = bracket_elements(L, x, y)
        # [e + 2h, 3f] = 3h - 12f
        assert xy == {1: Fraction(3), 2: Fraction(-12)}


class TestValidate:
    def test_catalog_algebras_satisfy_jacobi(self):
        for name in catalog.NAMES:
            rep = validate(catalog.load(name).algebra)
            assert rep.summary == "PASS", name

    def test_corrupted_sl2_fails_with_witness(self):
        rep = validate(_sl2_corrupted())
        assert rep.summary == "FAIL"
        (check,) = [c for c in rep.checks if c.name == "jacobi"]
        assert check.witness["violation_count"] == 1
        assert check.witness["violations"][0]["triple"] == ["e", "h", "f"]


class TestKirillov:
    def test_heisenberg_matrix_shape(self, heis1):
        z = Fraction(5)
        pt = {"x": Fraction(7), "y": Fraction(-3), "z": z}
        B = kirillov_matrix(heis1.algebra, pt)
        assert B == [[0, z, 0], [-z, 0, 0], [0, 0, 0]]

    def test_skew_symmetry_random(self, sl3):
        for trial in range(10):
            r = sampling.rng(3, 17, trial)
            pt = sampling.random_coords(sl3.algebra.basis, r)
            B = kirillov_matrix(sl3.algebra, pt)
            n = len(B)
            assert all(B[i][j] == -B[j][i] for i in range(n) for j in range(n))

    def test_index_and_magic(self):
        expected = {"sl2": (1, 2), "sl3": (2, 5), "heis1": (1, 2),
                    "heis2": (1, 3), "affine2": (0, 1), "slnV2": (1, 4),
                    "nilrad_sl3": (1, 2)}
        for name, (ind, magic) in expected.items():
            L = catalog.load(name).algebra
            assert index(L, trials=5, seed=0) == ind, name
            assert magic_number(L, trials=5, seed=0) == magic, name

    def test_generic_rank_against_oracle(self, sl3):
        L = sl3.algebra
        r = sampling.rng(3, 18)
        pt = sampling.random_coords(L.basis, r)
        assert linalg.rank(kirillov_matrix(L, pt)) == naive_rank(kirillov_matrix(L, pt))
        assert generic_kirillov_rank(L, trials=5, seed=0) == 6


class TestInvariance:
    def test_sl2_casimir_is_invariant(self, sl2):
        assert is_symmetric_invariant(sl2.algebra, sl2.invariants.polys[0])

    def test_wrong_coefficient_gives_defect(self, sl2):
        bad = parse_poly("h^2 + 3*e*f", sl2.algebra.basis)
        defect = invariance_defect(sl2.algebra, bad)
        assert defect is not None
        name, residue = defect
        assert name in sl2.algebra.basis
        assert not residue.is_zero

    def test_all_catalog_invariants(self):
        for name in catalog.NAMES:
            entry = catalog.load(name)
            for f in entry.invariants.polys:
                assert is_symmetric_invariant(entry.algebra, f), name

    def test_poisson_antisymmetry_and_gradient_route(self, sl2):
        L = sl2.algebra
        f = parse_poly("e*h", L.basis)
        g = parse_poly("f^2 + h", L.basis)
        assert poisson_bracket(L, f, g) == -poisson_bracket(L, g, f)
        for trial in range(10):
            r = sampling.rng(3, 19, trial)
            pt = sampling.random_coords(L.basis, r)
            assert poisson_bracket_at(L, f, g, pt) == \
                poisson_bracket(L, f, g).evaluate(pt)


class TestInvariantSet:
    def test_rejects_constant(self, sl2):
        with pytest.raises(AlgebraError):
            InvariantSet(algebra=sl2.algebra,
                         polys=(parse_poly("2", sl2.algebra.basis),))

    def test_rejects_inhomogeneous(self, sl2):
        with pytest.raises(HomogeneityError):
            InvariantSet(algebra=sl2.algebra,
                         polys=(parse_poly("h^2 + e", sl2.algebra.basis),))

    def test_rejects_foreign_varset(self, sl2, heis1):
        with pytest.raises(AlgebraError):
            InvariantSet(algebra=sl2.algebra, polys=heis1.invariants.polys)

    def test_degrees(self, sl3):
        assert sl3.invariants.degrees() == (2, 3)


class TestRegularityAndOmega:
    def test_sl2_gradient_at_nilpotent(self, sl2):
        C = sl2.invariants.polys[0]
        pt = {"e": Fraction(1), "h": Fraction(0), "f": Fraction(0)}
        assert C.gradient_at(pt) == [Fraction(0), Fraction(0), Fraction(4)]
        assert omega_test(sl2.invariants, pt)

    def test_origin_is_singular(self, sl2):
        origin = {b: Fraction(0) for b in sl2.algebra.basis}
        assert not omega_test(sl2.invariants, origin)

    def test_omega_needs_invariants(self, sl2):
        empty = InvariantSet(algebra=sl2.algebra, polys=())
        with pytest.raises(AlgebraError):
            omega_test(empty, {b: Fraction(0) for b in sl2.algebra.basis})

    def test_regularity(self, sl2):
        L = sl2.algebra
        assert is_regular(L, {"e": Fraction(1), "h": Fraction(0), "f": Fraction(0)}, 1)
        assert not is_regular(L, {b: Fraction(0) for b in L.basis}, 1)

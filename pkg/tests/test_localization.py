import random

import pytest

from artinloc.algebra import ideal_generated, regular_matrix
from artinloc.linalg import InputError, Subspace, kernel
from artinloc.localization import (
    associated_idempotent,
    classify_element,
    duality_report,
    idempotent_denominator_check,
    left_triangular_idempotents,
    localization_report,
    monoid_denominator_decision,
    nl_ideal_test,
    powers_denominator_criterion,
    two_sided_report,
)
from artinloc.oracle import FiniteSetOfElements, brute_denominator_check, monoid_closure
from artinloc.structure import block_decomposition


class TestTriangularIdempotents:
    def test_lower_triangular_chain(self, L2_7):
        tri = left_triangular_idempotents(L2_7)
        assert [s for s, _ in tri.entries] == [(1,), (1, 2)]
        assert tri.idempotent((1,)).coeffs == (1, 0, 0)  # E_11
        assert tri.idempotent((1, 2)) == L2_7.one
        assert tri.minima == ((1,),)

    def test_simple_algebra_only_full(self, M2_7):
        tri = left_triangular_idempotents(M2_7)
        assert [s for s, _ in tri.entries] == [(1,)]
        assert tri.minima == ((1,),)

    def test_central_case_all_subsets(self, F7F7):
        tri = left_triangular_idempotents(F7F7)
        assert [s for s, _ in tri.entries] == [(1,), (2,), (1, 2)]
        assert tri.minima == ((1,), (2,))

    def test_upper_triangular_mirror(self, U2_7):
        tri = left_triangular_idempotents(U2_7)
        assert [s for s, _ in tri.entries] == [(2,), (1, 2)]
        assert tri.idempotent((2,)).coeffs == (0, 0, 1)  # E_22


class TestLocalizationReport:
    def test_lower_triangular_3(self, L3_7):
        rep = localization_report(L3_7)
        assert rep.loc_count == 3
        assert [e.subset for e in rep.entries] == [(1,), (1, 2), (1, 2, 3)]
        assert rep.minima == ((1,),)
        assert rep.l_rad.dim == 5
        assert rep.little_rad.dim == 3
        e11 = L3_7.from_matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
        expected = ideal_generated(L3_7, [L3_7.one - e11], "right")
        assert rep.l_rad.space == expected.space
        e22 = L3_7.from_matrix([[0, 0, 0], [0, 1, 0], [0, 0, 0]])
        expected_little = ideal_generated(L3_7, [L3_7.one - e11 - e22], "right")
        assert rep.little_rad.space == expected_little.space
        assert not any(rep.flags.values())

    def test_semisimple_product_counts(self, P1):
        rep = localization_report(P1)
        assert rep.flags["semisimple"]
        assert len(rep.max_den) == 2 == rep.tri.family.s
        assert rep.l_rad.dim == 0

    def test_simple_algebra_is_localization_maximal(self, M2_7):
        rep = localization_report(M2_7)
        assert rep.flags["localization_maximal"]
        assert rep.loc_count == 1
        assert rep.l_rad.dim == 0

    def test_strict_little_radical_containment(self, L3_7):
        rep = localization_report(L3_7)
        assert rep.l_rad.space.contains(rep.little_rad.space)
        assert rep.little_rad.dim < rep.l_rad.dim

    def test_kernel_ideal_identities(self, L3_7, T7xF7):
        from artinloc.algebra import ideal_combine
        from artinloc.localization import _right_ideal_of
        for a in (L3_7, T7xF7):
            rep = localization_report(a)
            for en in rep.entries:
                sq = ideal_combine(en.ass, en.ass, "product")
                assert sq.space == en.ass.space
                er = _right_ideal_of(a, en.idempotent)
                assert en.ass.space.sum(er).dim == a.dim
                assert en.ass.space.intersect(er).dim == 0

    def test_radical_containment_criterion(self, L2_7, F7F7):
        # l inside rad happens only when l = 0
        rep = localization_report(L2_7)
        fam = block_decomposition(L2_7)
        assert rep.l_rad.dim > 0
        assert not fam.rad.space.contains(rep.l_rad.space)
        rep0 = localization_report(F7F7)
        assert rep0.l_rad.dim == 0

    def test_to_dict_shape(self, L3_7):
        d = localization_report(L3_7).to_dict()
        assert d["loc_count"] == 3
        assert d["minima"] == ["{1}"]
        assert d["l_rad_dim"] == 5
        assert d["little_rad_dim"] == 3


class TestAssociatedIdempotent:
    def test_unit_gets_the_identity(self, L2_7):
        u = L2_7.from_matrix([[2, 0], [1, 1]])
        out = associated_idempotent(L2_7, u)
        assert out.n == 0 and out.e == L2_7.one and not out.is_nilpotent

    def test_nilpotent_flagged(self, L2_7):
        x = L2_7.from_matrix([[0, 0], [1, 0]])
        out = associated_idempotent(L2_7, x)
        assert out.is_nilpotent and out.e.is_zero()

    def test_remark_element(self, L2_7):
        s = L2_7.from_matrix([[2, 0], [1, 0]])
        out = associated_idempotent(L2_7, s)
        assert out.n == 1
        assert out.e.coeffs == (1, 4, 0)      # E_11 + 4 E_21
        assert out.e_prime.coeffs == (0, 3, 1)
        assert (out.e * out.e) == out.e

    def test_upper_corner_unit_split(self, U2_7):
        s = U2_7.from_matrix([[1, 0], [0, 0]])
        out = associated_idempotent(U2_7, s)
        assert out.e.coeffs == (1, 0, 0)        # E_11
        assert out.e_prime.coeffs == (0, 0, 1)  # E_22
        # oracle: R*s and ker(.s) recomputed directly
        rs = Subspace.from_vectors(7, 3, regular_matrix(U2_7, s, "right").data)
        assert rs.basis == ((1, 0, 0),)
        ker = kernel(regular_matrix(U2_7, s, "right"))
        assert ker.basis == ((0, 1, 0), (0, 0, 1))


class TestPowersCriterion:
    def test_remark_element_qualifies(self, L2_7):
        s = L2_7.from_matrix([[2, 0], [1, 0]])
        ok, desc = powers_denominator_criterion(L2_7, s)
        assert ok
        assert desc.ass.space.basis == ((0, 1, 0), (0, 0, 1))
        assert desc.quotient.algebra.dim == 1
        assert desc.min_core_exponent == 1
        om = L2_7.one - desc.witness_idempotent
        power = s
        for _ in range(5):
            assert (om * power * om).is_zero()
            power = power * s

    def test_annihilation_structure_of_remark_element(self, L2_7):
        s = L2_7.from_matrix([[2, 0], [1, 0]])
        _, desc = powers_denominator_criterion(L2_7, s)
        for v in desc.ass.space.basis:
            assert (s * L2_7.element(v)).is_zero()
        hit = any(not (L2_7.element(v) * s).is_zero() for v in desc.ass.space.basis)
        assert hit

    def test_upper_corner_fails(self, U2_7):
        ok, desc = powers_denominator_criterion(U2_7, U2_7.from_matrix([[1, 0], [0, 0]]))
        assert not ok and desc is None

    def test_unit_trivially_qualifies(self, L2_7):
        u = L2_7.from_matrix([[2, 0], [1, 1]])
        ok, desc = powers_denominator_criterion(L2_7, u)
        assert ok and desc.ass.dim == 0
        assert desc.quotient.algebra.dim == 3
        assert desc.min_core_exponent == 0

    def test_nilpotent_rejected(self, L2_7):
        ok, desc = powers_denominator_criterion(L2_7, L2_7.from_matrix([[0, 0], [1, 0]]))
        assert not ok and desc is None


class TestIdempotentCheck:
    def test_corner_idempotent_sides(self, L2_7):
        e = L2_7.from_matrix([[1, 0], [0, 0]])
        chk = idempotent_denominator_check(L2_7, e)
        assert chk.left and not chk.right and not chk.central

    def test_opposite_corner_in_upper(self, U2_7):
        e = U2_7.from_matrix([[1, 0], [0, 0]])
        chk = idempotent_denominator_check(U2_7, e)
        assert not chk.left and chk.right

    def test_central_idempotent(self, F7F7):
        chk = idempotent_denominator_check(F7F7, F7F7.element([1, 0]))
        assert chk.left and chk.right and chk.twosided and chk.central

    def test_conjugates_of_the_corner(self, L2_7):
        e11 = L2_7.from_matrix([[1, 0], [0, 0]])
        base = idempotent_denominator_check(L2_7, e11)
        for a_val in range(1, 7):
            e = L2_7.from_matrix([[1, 0], [a_val, 0]])
            chk = idempotent_denominator_check(L2_7, e)
            assert chk.left
            # same localization class: identical kernel ideals
            assert chk.descriptor.ass.space == base.descriptor.ass.space

    def test_zero_idempotent_rejected(self, L2_7):
        with pytest.raises(InputError):
            idempotent_denominator_check(L2_7, L2_7.zero)

    def test_non_idempotent_rejected(self, L2_7):
        with pytest.raises(InputError):
            idempotent_denominator_check(L2_7, L2_7.from_matrix([[2, 0], [0, 0]]))


class TestMonoidDecision:
    def test_triangular_idempotent_generator(self, L2_7):
        tri = left_triangular_idempotents(L2_7)
        e = tri.idempotent((1,))
        ok, desc = monoid_denominator_decision(L2_7, [e])
        assert ok
        expected = ideal_generated(L2_7, [L2_7.one - e], "right")
        assert desc.ass.space == expected.space

    def test_two_generator_example(self, L2_7):
        g1 = L2_7.from_matrix([[2, 0], [1, 0]])
        g2 = L2_7.from_matrix([[3, 0], [0, 1]])
        ok, desc = monoid_denominator_decision(L2_7, [g1, g2])
        assert ok and desc.ass.dim == 2
        # oracle agreement
        closure = monoid_closure(L2_7, [g1, g2])
        res = brute_denominator_check(L2_7, closure)
        assert res.is_den and res.ass.space == desc.ass.space

    def test_upper_corner_fails(self, U2_7):
        ok, desc = monoid_denominator_decision(U2_7, [U2_7.from_matrix([[1, 0], [0, 0]])])
        assert not ok and desc is None

    def test_nilpotent_generator_fails(self, T7):
        ok, desc = monoid_denominator_decision(T7, [T7.element([0, 1])])
        assert not ok


class TestClassifyElement:
    def test_units_are_completely_localizable(self, L2_7):
        rep = localization_report(L2_7)
        out = classify_element(L2_7, L2_7.from_matrix([[2, 0], [1, 1]]), rep)
        assert out["completely"] and out["left_localizable"]

    def test_localizable_non_unit(self, L2_7):
        rep = localization_report(L2_7)
        r = L2_7.from_matrix([[2, 0], [5, 0]])
        out = classify_element(L2_7, r, rep)
        assert out["left_localizable"]
        assert regular_matrix(L2_7, r, "left").rank() < 3

    def test_radical_element_is_stuck(self, L2_7):
        rep = localization_report(L2_7)
        out = classify_element(L2_7, L2_7.from_matrix([[0, 0], [1, 0]]), rep)
        assert not out["left_localizable"] and out["witnesses"] == ()

    def test_nl_set_ideal_criterion(self, L2_7, P1, F7F7):
        assert nl_ideal_test(L2_7, localization_report(L2_7))
        assert not nl_ideal_test(P1, localization_report(P1))
        assert nl_ideal_test(F7F7, localization_report(F7F7))


class TestDuality:
    def test_lower_triangular_pairing(self, L2_7):
        dr = duality_report(L2_7)
        assert dr.counts_equal
        assert dr.pairing == (((1,), (2,)),)
        assert dr.left.l_rad.dim == 2 and dr.r_rad.dim == 2
        assert dr.l_neq_r
        e22 = L2_7.from_matrix([[0, 0], [0, 1]])
        expected_r = ideal_generated(L2_7, [L2_7.one - e22], "left")
        assert dr.r_rad.space == expected_r.space

    def test_simple_algebra_trivial(self, M2_7):
        dr = duality_report(M2_7)
        assert dr.left.loc_count == dr.right.loc_count == 1
        assert not dr.l_neq_r

    def test_full_complement_map_on_two_blocks(self, F7F7):
        dr = duality_report(F7F7)
        assert set(dr.pairing) == {((1,), (2,)), ((2,), (1,))}
        assert dr.l_zero_iff_r_zero

    def test_vanishing_together_across_corpus(self, L3_7, U3_7, T7, T7xF7, P1):
        for a in (L3_7, U3_7, T7, T7xF7, P1):
            dr = duality_report(a)
            assert dr.counts_equal and dr.l_zero_iff_r_zero


class TestTwoSided:
    def test_product_counting(self, P1):
        ts = two_sided_report(P1)
        assert ts.factors == 2
        assert ts.loc_count == 3
        assert ts.loc_radical.dim == 0

    def test_powers_criterion_mixed_component(self, P1):
        r = P1.element([1, 0, 0, 0, 1])  # (E_11, 1): E_11 neither unit nor nilpotent
        ts = two_sided_report(P1)
        assert not ts.powers_criterion(r)

    def test_powers_criterion_unit_nilpotent_components(self, T7xF7):
        ts = two_sided_report(T7xF7)
        assert ts.powers_criterion(T7xF7.element([0, 1, 3]))      # (x, 3)
        assert ts.powers_criterion(T7xF7.element([1, 1, 3]))      # (1+x, 3), both units
        assert not ts.powers_criterion(T7xF7.element([0, 1, 0]))  # (x, 0) nilpotent

    def test_core_rule_matches_oracle(self, T7xF7):
        ts = two_sided_report(T7xF7)
        e1 = ts.central_idempotents[1]
        closure = monoid_closure(T7xF7, [T7xF7.element([0, 1, 3])])
        res = brute_denominator_check(T7xF7, closure, "twosided")
        assert res.is_den
        # kernel ideal R(1 - e_{2}) picks the second factor
        subset = (2,)
        rule_core = {m.coeffs for m in ts.core_rule(closure.members, subset)}
        oracle_core = {m.coeffs for m in res.core.members}
        assert rule_core == oracle_core

    def test_completely_localizable_are_units(self, T7xF7):
        ts = two_sided_report(T7xF7)
        rng = random.Random(5)
        for _ in range(100):
            r = T7xF7.element([rng.randrange(7) for _ in range(3)])
            all_units = all(
                regular_matrix(q.algebra, q.project(r), "left").rank() == q.algebra.dim
                for q in ts.factor_quotients)
            is_unit = regular_matrix(T7xF7, r, "left").rank() == T7xF7.dim
            assert all_units == is_unit

    def test_single_factor(self, M2_7):
        ts = two_sided_report(M2_7)
        assert ts.factors == 1 and ts.loc_count == 1

    def test_indecomposable_algebras_only_invert_units(self, M2_7, T7, L2_7):
        # with a single central idempotent every two-sided denominator set
        # sits inside the unit group; with more than one, {1, e_i} escapes it
        rng = random.Random(11)
        for a in (M2_7, T7, L2_7):
            assert two_sided_report(a).factors == 1
            found = 0
            while found < 25:
                r = a.element([rng.randrange(a.p) for _ in range(a.dim)])
                closure = monoid_closure(a, [r])
                if closure.contains_zero:
                    continue
                if brute_denominator_check(a, closure, "twosided").is_den:
                    found += 1
                    for m in closure.members:
                        assert regular_matrix(a, m, "left").rank() == a.dim

    def test_decomposable_algebras_invert_non_units(self, F7F7, P1):
        for a in (F7F7, P1):
            ts = two_sided_report(a)
            assert ts.factors > 1
            e = ts.central_idempotents[0]
            sset = FiniteSetOfElements.from_elements(a, [a.one, e])
            res = brute_denominator_check(a, sset, "twosided")
            assert res.is_den
            assert regular_matrix(a, e, "left").rank() < a.dim


class TestMaximalSetMaterialization:
    def test_unit_preimage_count_in_lower_triangular(self, L2_7):
        # units of the one-dimensional quotient pull back to 6*7*7 elements
        rep = localization_report(L2_7)
        members = rep.max_den[0].members_within()
        assert len(members) == 294
        for m in members[:20]:
            assert rep.max_den[0].image_is_unit(m)

    def test_materialized_set_passes_the_definitional_check(self, L2_5):
        rep = localization_report(L2_5)
        members = rep.max_den[0].members_within()
        res = brute_denominator_check(L2_5, FiniteSetOfElements.from_elements(L2_5, members))
        assert res.is_den
        assert res.ass.space == rep.max_den[0].ass.space
        oracle_core = {m.coeffs for m in res.core.members}
        formula_core = {m.coeffs for m in members if rep.max_den[0].core_member(m)}
        assert oracle_core == formula_core


class TestClassRepresentatives:
    def test_conjugate_idempotents_share_the_class(self, L2_7):
        # all corner conjugates give the kernel ideal of the {1}-class
        rep = localization_report(L2_7)
        class_ass = rep.entry((1,)).ass.space
        for a_val in range(7):
            e = L2_7.from_matrix([[1, 0], [a_val, 0]])
            chk = idempotent_denominator_check(L2_7, e)
            assert chk.left and chk.descriptor.ass.space == class_ass

    def test_union_of_minima_is_an_entry(self, P1, L3_7, F7F7):
        for a in (P1, L3_7, F7F7):
            rep = localization_report(a)
            union = tuple(sorted(set().union(*[set(m) for m in rep.minima])))
            assert union in [en.subset for en in rep.entries]
            assert rep.entry(union).ass.space == rep.l_rad.space

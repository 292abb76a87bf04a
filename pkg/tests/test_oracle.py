import pytest

from artinloc.algebra import direct_product, full_matrix, lower_triangular
from artinloc.linalg import InputError, ResourceGuardError
from artinloc.oracle import (
    FiniteSetOfElements,
    brute_denominator_check,
    brute_idempotents,
    brute_radical,
    monoid_closure,
)
from artinloc.structure import radical


class TestMonoidClosure:
    def test_identity_alone(self, L2_7):
        cl = monoid_closure(L2_7, [L2_7.one])
        assert [m.coeffs for m in cl.members] == [L2_7.one_coeffs]
        assert not cl.contains_zero

    def test_remark_element_cycle(self, L2_7):
        s = L2_7.from_matrix([[2, 0], [1, 0]])
        cl = monoid_closure(L2_7, [s])
        assert len(cl) == 4  # 1, s, 2s, 4s (2 has order 3 mod 7)
        coeffs = {m.coeffs for m in cl.members}
        assert coeffs == {L2_7.one_coeffs, (2, 1, 0), (4, 2, 0), (1, 4, 0)}
        assert not cl.contains_zero

    def test_nilpotent_flags_zero(self, L2_7):
        cl = monoid_closure(L2_7, [L2_7.from_matrix([[0, 0], [1, 0]])])
        assert cl.contains_zero

    def test_guard(self, M2_7):
        g = M2_7.from_matrix([[1, 1], [0, 1]])
        with pytest.raises(ResourceGuardError):
            monoid_closure(M2_7, [g], guard=3)


class TestBruteDenominatorCheck:
    def test_upper_corner_counterexample(self, U2_7):
        e11 = U2_7.from_matrix([[1, 0], [0, 0]])
        res = brute_denominator_check(U2_7, FiniteSetOfElements.from_elements(U2_7, [U2_7.one, e11]))
        assert not res.is_ore and not res.is_den
        s, r = res.counterexample
        assert s.coeffs == (1, 0, 0)  # E_11
        assert r.coeffs == (0, 1, 0)  # E_12, first in canonical order

    def test_lower_corner_succeeds(self, L2_7):
        e11 = L2_7.from_matrix([[1, 0], [0, 0]])
        res = brute_denominator_check(L2_7, FiniteSetOfElements.from_elements(L2_7, [L2_7.one, e11]))
        assert res.is_ore and res.is_den
        assert res.ass.space.basis == ((0, 1, 0), (0, 0, 1))
        assert [m.coeffs for m in res.core.members] == [(1, 0, 0)]

    def test_powers_monoid_core(self, L2_7):
        s = L2_7.from_matrix([[2, 0], [1, 0]])
        res = brute_denominator_check(L2_7, monoid_closure(L2_7, [s]))
        assert res.is_den
        assert res.ass.space.basis == ((0, 1, 0), (0, 0, 1))
        assert {m.coeffs for m in res.core.members} == {(2, 1, 0), (4, 2, 0), (1, 4, 0)}

    def test_zero_in_set_rejected(self, L2_7):
        bad = FiniteSetOfElements.from_elements(L2_7, [L2_7.one, L2_7.zero])
        with pytest.raises(InputError):
            brute_denominator_check(L2_7, bad)

    def test_right_side_mirrors(self, L2_7, U2_7):
        eL = L2_7.from_matrix([[1, 0], [0, 0]])
        eU = U2_7.from_matrix([[1, 0], [0, 0]])
        left_in_lower = brute_denominator_check(
            L2_7, FiniteSetOfElements.from_elements(L2_7, [L2_7.one, eL]), "left")
        right_in_lower = brute_denominator_check(
            L2_7, FiniteSetOfElements.from_elements(L2_7, [L2_7.one, eL]), "right")
        assert left_in_lower.is_den and not right_in_lower.is_den
        left_in_upper = brute_denominator_check(
            U2_7, FiniteSetOfElements.from_elements(U2_7, [U2_7.one, eU]), "left")
        right_in_upper = brute_denominator_check(
            U2_7, FiniteSetOfElements.from_elements(U2_7, [U2_7.one, eU]), "right")
        assert not left_in_upper.is_den and right_in_upper.is_den

    def test_twosided_needs_centrality(self, L2_7, F7F7):
        eL = L2_7.from_matrix([[1, 0], [0, 0]])
        res = brute_denominator_check(
            L2_7, FiniteSetOfElements.from_elements(L2_7, [L2_7.one, eL]), "twosided")
        assert not res.is_den
        e = F7F7.element([1, 0])
        res2 = brute_denominator_check(
            F7F7, FiniteSetOfElements.from_elements(F7F7, [F7F7.one, e]), "twosided")
        assert res2.is_den and res2.ass.dim == 1


class TestBruteRadical:
    def test_semisimple_product(self, F7F7):
        assert brute_radical(F7F7).dim == 0

    def test_lower_triangular_5(self, L2_5):
        rad = brute_radical(L2_5)
        assert rad.space.basis == ((0, 1, 0),)

    def test_local_poly_ring(self, T7):
        assert brute_radical(T7).space.basis == ((0, 1),)

    def test_guard(self, L2_5):
        with pytest.raises(ResourceGuardError):
            brute_radical(L2_5, guard=10)

    def test_matches_trace_form_on_corpus(self, L2_7, U2_7, T5, F5F5, T7xF7, M2_7):
        for a in (L2_7, U2_7, T5, F5F5, T7xF7, M2_7):
            assert brute_radical(a).space == radical(a).space


class TestBruteIdempotents:
    def test_base_field(self):
        f7 = full_matrix(7, 1)
        ids = brute_idempotents(f7)
        assert [m.coeffs for m in ids.members] == [(0,), (1,)]

    def test_two_field_product(self, F7F7):
        ids = brute_idempotents(F7F7)
        assert {m.coeffs for m in ids.members} == {(0, 0), (1, 0), (0, 1), (1, 1)}

    def test_census_count_lower_triangular_5(self, L2_5):
        # 0 and 1, plus the two conjugate families over the strictly lower entry
        ids = brute_idempotents(L2_5)
        assert len(ids) == 12
        for e in ids.members:
            assert (e * e) == e

    def test_guard(self, L2_5):
        with pytest.raises(ResourceGuardError):
            brute_idempotents(L2_5, guard=10)

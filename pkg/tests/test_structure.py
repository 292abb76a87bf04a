import pytest

from artinloc.algebra import (
    direct_product,
    full_matrix,
    ideal_generated,
    lower_triangular,
    truncated_poly,
)
from artinloc.linalg import InternalCheckError
from artinloc.oracle import brute_radical
from artinloc.structure import block_decomposition, ideal_block_support, radical


class TestRadical:
    def test_simple_algebra_semisimple(self, M2_7):
        assert radical(M2_7).dim == 0

    def test_lower_triangular_strictly_lower(self, L2_7):
        rad = radical(L2_7)
        assert rad.dim == 1
        assert rad.space.basis == ((0, 1, 0),)  # span{E_21}
        assert rad.space == brute_radical(L2_7).space

    def test_truncated_poly_nilpotent_part(self, T7):
        rad = radical(T7)
        assert rad.space.basis == ((0, 1),)

    def test_crosscheck_against_quasi_regularity(self, L2_5, U2_5, T5, F5F5, F7F7, P1):
        for a in (L2_5, U2_5, T5, F5F5, F7F7, P1):
            assert radical(a).space == brute_radical(a).space

    def test_semisimple_quotient_has_zero_radical(self, L2_7, L3_7, T7, T7xF7, P1):
        for a in (L2_7, L3_7, T7, T7xF7, P1):
            fam = block_decomposition(a)
            assert radical(fam.quotient.algebra).dim == 0


class TestBlockDecomposition:
    def test_full_matrix_single_block(self, M2_7):
        fam = block_decomposition(M2_7)
        assert fam.s == 1
        assert fam.block_dims == (4,)
        assert fam.block_commutative == (False,)

    def test_lower_triangular_corner_idempotents(self, L2_7):
        fam = block_decomposition(L2_7)
        assert fam.s == 2
        assert [e.coeffs for e in fam.idempotents] == [(1, 0, 0), (0, 0, 1)]
        assert fam.block_dims == (1, 1)

    def test_two_field_product_central_idempotents(self, F7F7):
        fam = block_decomposition(F7F7)
        assert [e.coeffs for e in fam.idempotents] == [(1, 0), (0, 1)]

    def test_product_concatenates_factor_blocks(self, P1):
        fam = block_decomposition(P1)
        assert fam.s == 2
        assert fam.block_dims == (4, 1)
        assert fam.block_commutative == (False, True)
        # the lifted idempotents are the factor identities, block by block
        assert [e.coeffs for e in fam.idempotents] == [(1, 0, 0, 1, 0), (0, 0, 0, 0, 1)]

    def test_deterministic_rebuild(self):
        a1 = lower_triangular(7, 3)
        a2 = lower_triangular(7, 3)
        f1 = block_decomposition(a1)
        f2 = block_decomposition(a2)
        assert [e.coeffs for e in f1.idempotents] == [e.coeffs for e in f2.idempotents]
        assert f1.block_dims == f2.block_dims

    def test_family_laws_across_corpus(self, L3_7, U3_7, T7xF7, M2_7, T5):
        for a in (L3_7, U3_7, T7xF7, M2_7, T5):
            fam = block_decomposition(a)
            total = a.zero
            for i, e in enumerate(fam.idempotents):
                assert (e * e) == e
                total = total + e
                for j, f in enumerate(fam.idempotents):
                    if i != j:
                        assert (e * f).is_zero()
            assert total == a.one
            assert sum(fam.block_dims) == fam.quotient.algebra.dim

    def test_nilpotency_of_radical_powers(self, L3_7):
        fam = block_decomposition(L3_7)
        from artinloc.algebra import ideal_combine
        power = fam.rad
        for _ in range(L3_7.dim):
            if power.dim == 0:
                break
            power = ideal_combine(power, fam.rad, "product")
        assert power.dim == 0


def skewed_lower_triangular_7():
    """Lower triangular 3x3 over GF(7) on the basis
    (E11 + E32, E21, E22, E31, E32, E33).

    In these coordinates the canonical complement of the radical contains
    E11 + E32, which is not idempotent, so lifting the first block identity
    has to do real Newton work instead of accepting the section.
    """
    from artinloc.algebra import Algebra
    from artinloc.linalg import express_in_rows
    units = [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)]
    def unit_vec(i, j):
        return tuple(1 if (r, c) == (i, j) else 0 for (r, c) in units)
    def mat_mul(u, v):
        out = [0] * 6
        for k1, (a1, b1) in enumerate(units):
            for k2, (a2, b2) in enumerate(units):
                if u[k1] and v[k2] and b1 == a2:
                    out[units.index((a1, b2))] = (out[units.index((a1, b2))]
                                                  + u[k1] * v[k2]) % 7
        return tuple(out)
    basis = [tuple((x + y) % 7 for x, y in zip(unit_vec(1, 1), unit_vec(3, 2))),
             unit_vec(2, 1), unit_vec(2, 2), unit_vec(3, 1), unit_vec(3, 2), unit_vec(3, 3)]
    table = []
    for u in basis:
        row = []
        for v in basis:
            coords = express_in_rows(basis, mat_mul(u, v), 7)
            assert coords is not None
            row.append(list(coords))
        table.append(row)
    identity = tuple((a + b + c) % 7 for a, b, c in
                     zip(unit_vec(1, 1), unit_vec(2, 2), unit_vec(3, 3)))
    one = express_in_rows(basis, identity, 7)
    return Algebra(7, table, one, "skewed L3(GF(7))")


class TestSkewedBasisLifting:
    def test_section_is_not_idempotent_but_lift_is(self):
        a = skewed_lower_triangular_7()
        fam = block_decomposition(a)
        assert fam.s == 3
        quo = fam.quotient
        # the raw section of the first block identity fails to be idempotent
        raw = quo.section(fam.central_images[0])
        assert (raw * raw) != raw
        # the lifted family is nevertheless orthogonal and sums to 1
        total = a.zero
        for e in fam.idempotents:
            assert (e * e) == e
            total = total + e
        assert total == a.one

    def test_localization_report_matches_the_straight_basis(self, L3_7):
        from artinloc.localization import localization_report
        a = skewed_lower_triangular_7()
        rep = localization_report(a)
        straight = localization_report(L3_7)
        assert [e.subset for e in rep.entries] == [e.subset for e in straight.entries]
        assert rep.l_rad.dim == straight.l_rad.dim == 5
        assert rep.little_rad.dim == straight.little_rad.dim == 3


class TestBlockSupport:
    def test_whole_algebra_meets_everything(self, L2_7):
        fam = block_decomposition(L2_7)
        whole = ideal_generated(L2_7, [L2_7.one], "twosided")
        support, in_rad = ideal_block_support(fam, whole)
        assert support == frozenset({1, 2}) and not in_rad

    def test_corner_complement_meets_second_block(self, L2_7):
        fam = block_decomposition(L2_7)
        e11 = L2_7.from_matrix([[1, 0], [0, 0]])
        ideal = ideal_generated(L2_7, [L2_7.one - e11], "twosided")
        support, in_rad = ideal_block_support(fam, ideal)
        assert support == frozenset({2}) and not in_rad

    def test_radical_is_flagged(self, L2_7):
        fam = block_decomposition(L2_7)
        support, in_rad = ideal_block_support(fam, fam.rad)
        assert support == frozenset() and in_rad

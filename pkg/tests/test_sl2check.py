"""Symplectic model, root vectors, nilpotents and the sl2-triple checks."""
import itertools
from fractions import Fraction

import pytest

from cmlab.hyperoct import Subset
from cmlab.sl2check import (
    SymplecticMatrix,
    bracket,
    build_v,
    build_vbar,
    check_sl2,
    conj,
    omega,
    root_vector,
    torus_element,
)


def tail_subsets(g):
    tail = [x for x in range(2, g + 1)]
    out = []
    for r in range(g):
        out.extend(Subset.of(g, c) for c in itertools.combinations(tail, r))
    return out


def hol_root_vectors(g):
    return [
        (I, J, root_vector(I, J, g))
        for I, J in itertools.combinations_with_replacement(tail_subsets(g), 2)
    ]


class TestSymplecticMatrix:
    def test_shape_validation(self):
        with pytest.raises(ValueError, match="4x4"):
            SymplecticMatrix(2, ((Fraction(0),),))

    def test_omega_squares_to_minus_identity(self):
        for g in (2, 3):
            assert omega(g) @ omega(g) == SymplecticMatrix.identity(g).scaled(-1)

    def test_conj_is_an_involution(self):
        m = build_v(Subset.of(3, [2]))
        assert conj(conj(m)) == m


class TestRootVectors:
    def test_rank_one_raising_matrix(self):
        e = root_vector(Subset.of(2, []), Subset.of(2, []), 2)
        assert e.entries[0][3] == 1
        assert sum(1 for row in e.entries for a in row if a) == 1

    def test_normalization(self):
        for I, J, e in hol_root_vectors(3):
            assert bracket(e, bracket(e, conj(e))) == e.scaled(2)

    def test_conjugation_swaps_complements(self):
        for I, J, e in hol_root_vectors(3):
            assert conj(e) == root_vector(I.complement(), J.complement(), 3)

    def test_lie_algebra_membership(self):
        for I, J, e in hol_root_vectors(3):
            assert e.in_lie_algebra()
            assert conj(e).in_lie_algebra()

    def test_raising_part_is_abelian(self):
        for g in (2, 3, 4):
            vectors = [e for _, _, e in hol_root_vectors(g)]
            for a, b in itertools.combinations_with_replacement(vectors, 2):
                assert bracket(a, b).is_zero()

    def test_double_bracket_dichotomy(self):
        # [E_{I,J_I}, [E_{I,J_I}, conj(E_{K,J_K})]] is 2E_{I,J_I} exactly
        # when K is I or its tail complement, and zero otherwise
        g, tail = 3, Subset.of(3, [2, 3])
        for I in tail_subsets(g):
            e = root_vector(I, tail ^ I, g)
            for K in tail_subsets(g):
                f = conj(root_vector(K, tail ^ K, g))
                got = bracket(e, bracket(e, f))
                if K in (I, tail ^ I):
                    assert got == e.scaled(2)
                else:
                    assert got.is_zero()

    def test_torus_weights(self):
        g = 3
        coeffs = {
            Subset.of(3, []): 1,
            Subset.of(3, [2]): 3,
            Subset.of(3, [3]): 5,
            Subset.of(3, [2, 3]): 7,
        }
        t = torus_element(coeffs, g)
        assert t.in_lie_algebra()

        def value(A):
            return coeffs[A] if 1 not in A else -coeffs[A.complement()]

        for I, J, e in hol_root_vectors(g):
            assert bracket(t, e) == e.scaled(value(I) + value(J))
            eb = conj(e)
            assert bracket(t, eb) == eb.scaled(
                value(I.complement()) + value(J.complement())
            )

    def test_mixed_pair_rejected(self):
        with pytest.raises(ValueError, match="non-root index pair"):
            root_vector(Subset.of(2, []), Subset.of(2, [1]), 2)

    def test_torus_key_validation(self):
        with pytest.raises(ValueError, match="subsets of"):
            torus_element({Subset.of(3, [1]): 1}, 3)


class TestNilpotents:
    def test_g3_expansion(self):
        tail = Subset.of(3, [2, 3])
        expect = root_vector(Subset.of(3, []), tail, 3) + root_vector(
            Subset.of(3, [2]), Subset.of(3, [3]), 3
        )
        assert build_v(Subset.of(3, [2])) == expect

    def test_half_weight_collapse(self):
        # at U = {2,...,g} every root vector appears twice, so the halved
        # sum equals the sum over one representative per complementary pair
        tail = Subset.of(3, [2, 3])
        expect = root_vector(Subset.of(3, []), tail, 3) + root_vector(
            Subset.of(3, [2]), Subset.of(3, [3]), 3
        )
        assert build_v(tail) == expect

    def test_conjugate_pairing(self):
        for g in (3, 4):
            for U in tail_subsets(g):
                assert conj(build_v(U)) == build_vbar(U)

    def test_lie_algebra_membership(self):
        for U in tail_subsets(3):
            assert build_v(U).in_lie_algebra()
            assert build_vbar(U).in_lie_algebra()

    def test_validation(self):
        with pytest.raises(ValueError, match="inside"):
            build_v(Subset.of(3, [1, 2]))
        with pytest.raises(ValueError, match="inside"):
            build_vbar(Subset.of(3, [1]))


class TestCheckSl2:
    def test_surface_coweight(self):
        for U in (Subset.of(2, []), Subset.of(2, [2])):
            h = bracket(build_v(U), build_vbar(U))
            assert h.diag() == (-1, -1, 1, 1)

    def test_all_reports_pass(self):
        for U in tail_subsets(3):
            report = check_sl2(U, 3)
            assert report == {
                "bracket_vv_zero": True,
                "bracket_vvbar_diagonal": True,
                "triple_identities": True,
            }

    def test_scale_negative_control(self):
        report = check_sl2(Subset.of(3, [2]), 3, scale=2)
        assert report["bracket_vv_zero"]
        assert report["bracket_vvbar_diagonal"]
        assert not report["triple_identities"]

    def test_minus_one_gauge_also_passes(self):
        assert all(check_sl2(Subset.of(3, [3]), 3, scale=-1).values())

    def test_cap(self):
        with pytest.raises(ValueError, match="g <= 6"):
            check_sl2(Subset.of(7, [2]), 7)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="not 3"):
            check_sl2(Subset.of(4, [2]), 3)

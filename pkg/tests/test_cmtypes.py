"""Subset order, orbits, reflex recovery and compagnons (cyclotomic regression)."""
import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmlab.cmtypes import (
    CMPairSpec,
    compagnon_labels,
    compagnons,
    decode_cm_type,
    encode_cm_type,
    orbit_decomposition,
    reflex_labels,
    reflex_type,
    subset_rank,
    subset_unrank,
)
from cmlab.galois import from_generators
from cmlab.hyperoct import EmbeddingLabel, SignedPerm, Subset, act_subset
from strategies import signed_perms, subsets

# Orbit table of the mu19 regression datum: translation label a -> I([a]).
MU19_ORBIT_TABLE = {
    0: set(),
    1: {1, 4, 6, 7, 8},
    2: {2, 5, 6, 7, 8, 9},
    3: {3, 7, 9},
    4: {1, 8},
    5: {1, 2, 4, 6, 7, 8, 9},
    6: {2, 3, 5, 7, 8, 9},
    7: {1, 3, 9},
    8: {1, 2, 4, 8},
    9: {1, 2, 3, 4, 5, 6, 7, 8, 9},
    10: {2, 3, 5, 9},
    11: {1, 3, 4},
    12: {1, 2, 4, 5, 6, 8},
    13: {2, 3, 4, 5, 6, 7, 9},
    14: {3, 5},
    15: {1, 4, 6},
    16: {2, 4, 5, 6, 7, 8},
    17: {3, 5, 6, 7, 9},
}

MU19_PHI_STAR = [0, 1, 2, 4, 5, 8, 12, 15, 16]


@pytest.fixture(scope="module")
def mu19():
    return CMPairSpec.from_cyclic(18, MU19_PHI_STAR)


class TestSubsetOrder:
    def test_g2_order(self):
        ranked = [subset_unrank(2, r).members() for r in range(4)]
        assert ranked == [(), (2,), (1,), (1, 2)]

    def test_rank_unrank_bijection(self):
        for g in range(1, 9):
            assert sorted(subset_rank(subset_unrank(g, r)) for r in range(1 << g)) == list(
                range(1 << g)
            )
            for r in range(1 << g):
                assert subset_rank(subset_unrank(g, r)) == r

    def test_ordering_constraints_exhaustive(self):
        for g in range(1, 9):
            for bits in range(1 << g):
                I = Subset(g, bits)
                # complement-reversal: rank(I) + rank(I^c) = 2^g - 1
                assert subset_rank(I) + subset_rank(I.complement()) == (1 << g) - 1
                if 1 not in I:
                    assert subset_rank(I) < (1 << (g - 1))
                else:
                    assert subset_rank(I) >= (1 << (g - 1))

    def test_unrank_out_of_range(self):
        with pytest.raises(ValueError):
            subset_unrank(3, 8)


class TestOrbitDecomposition:
    def test_mu19_first_orbit_is_table(self, mu19):
        orbits = orbit_decomposition(mu19.group)
        first = {I.members() for I in orbits[0]}
        assert first == {tuple(sorted(v)) for v in MU19_ORBIT_TABLE.values()}
        # and the table itself: label a acts on the empty set to give I([a])
        empty = Subset.empty(9)
        for a, expect in MU19_ORBIT_TABLE.items():
            el = mu19.group.element_for_label(a)
            assert set(act_subset(el, empty).members()) == expect

    def test_mu19_orbit_census(self, mu19):
        orbits = orbit_decomposition(mu19.group)
        assert len(orbits) == 30
        sizes = sorted(len(o) for o in orbits)
        assert sizes.count(2) == 1 and sizes.count(6) == 1 and sizes.count(18) == 28
        assert sum(sizes) == 512

    def test_partition_property(self, mu19):
        orbits = orbit_decomposition(mu19.group)
        seen = [I.bits for o in orbits for I in o]
        assert sorted(seen) == list(range(512))

    def test_orbits_sorted_and_keyed(self, mu19):
        orbits = orbit_decomposition(mu19.group)
        for o in orbits:
            ranks = [subset_rank(I) for I in o]
            assert ranks == sorted(ranks)
        keys = [subset_rank(o[0]) for o in orbits[1:]]
        assert keys == sorted(keys)

    def test_weyl_g3_single_orbit(self):
        spec = CMPairSpec.weyl(3)
        orbits = orbit_decomposition(spec.group)
        assert len(orbits) == 1 and len(orbits[0]) == 8

    def test_L_not_in_first_orbit(self, mu19):
        orbits = orbit_decomposition(mu19.group)
        L = Subset.of(9, [5, 6])
        assert L.bits not in {I.bits for I in orbits[0]}
        (orbL,) = [o for o in orbits if L.bits in {I.bits for I in o}]
        assert len(orbL) == 18


class TestReflexAndCompagnons:
    def test_reflex_recovery(self, mu19):
        assert reflex_labels(mu19) == [0, 2, 3, 6, 10, 13, 14, 16, 17]

    def test_reflex_cm_type_half_orbit(self, mu19):
        ref = reflex_type(mu19)
        assert ref.degree == 18 and len(ref.cm_type) == 9
        assert all(1 not in I for I in ref.cm_type)
        assert ref.key == Subset.empty(9)

    def test_compagnon_L(self, mu19):
        L = Subset.of(9, [5, 6])
        assert compagnon_labels(mu19, L) == [5, 7, 8, 9, 10, 11, 12, 13, 15]

    def test_compagnon_Lprime(self, mu19):
        Lp = Subset.of(9, [4, 6, 7])
        assert compagnon_labels(mu19, Lp) == [4, 6, 7, 8, 9, 10, 11, 12, 14]

    def test_census(self, mu19):
        cs = compagnons(mu19)
        assert sum(c.degree for c in cs) == 512
        assert sum(len(c.cm_type) for c in cs) == 256
        for c in cs:
            assert len(c.cm_type) * 2 == c.degree
            members = {I.bits for I in c.orbit}
            assert {I.complement().bits for I in c.orbit} == members

    def test_weyl_reflex_all_subsets_without_1(self):
        spec = CMPairSpec.weyl(3)
        ref = reflex_type(spec)
        assert ref.degree == 8
        assert {I.members() for I in ref.cm_type} == {(), (2,), (3,), (2, 3)}

    def test_g1_reflex(self):
        G = from_generators(1, [SignedPerm.rho(1)])
        spec = CMPairSpec(G, ("phi1",), ("phibar1",))
        ref = reflex_type(spec)
        assert [I.members() for I in ref.cm_type] == [()]


class TestDecodeEncode:
    def test_empty_is_base_type(self, mu19):
        labels = decode_cm_type(Subset.empty(9), mu19)
        assert labels == frozenset(EmbeddingLabel(j) for j in range(1, 10))

    def test_full_is_conjugate_type(self, mu19):
        labels = decode_cm_type(Subset.full(9), mu19)
        assert labels == frozenset(EmbeddingLabel(j, bar=True) for j in range(1, 10))

    def test_mu19_translate_display(self, mu19):
        I2 = Subset.of(9, MU19_ORBIT_TABLE[2])
        residues = {int(mu19.label_name(x)) for x in decode_cm_type(I2, mu19)}
        assert residues == {2, 3, 4, 6, 7, 10, 14, 17, 0}

    def test_encode_rejects_conjugate_pair(self, mu19):
        bad = {EmbeddingLabel(1), EmbeddingLabel(1, bar=True)} | {
            EmbeddingLabel(j) for j in range(3, 10)
        }
        with pytest.raises(ValueError, match="conjugate pair"):
            encode_cm_type(bad, mu19)

    def test_encode_rejects_wrong_count(self, mu19):
        with pytest.raises(ValueError, match="labels"):
            encode_cm_type({EmbeddingLabel(1)}, mu19)

    @settings(max_examples=100)
    @given(st.integers(0, 511))
    def test_round_trip(self, bits):
        spec = CMPairSpec.from_cyclic(18, MU19_PHI_STAR)
        I = Subset(9, bits)
        assert encode_cm_type(decode_cm_type(I, spec), spec) == I


def test_action_compatible_with_decoding():
    """Acting on labels then encoding equals acting on the subset directly."""
    from cmlab.hyperoct import act_embedding

    for g in (2, 3):
        spec = CMPairSpec.weyl(g)
        for t in spec.group:
            for bits in range(1 << g):
                I = Subset(g, bits)
                moved = {act_embedding(t, x) for x in decode_cm_type(I, spec)}
                assert encode_cm_type(moved, spec) == act_subset(t, I)

"""CM types as subsets, orbit decomposition, reflex types and compagnons.

A CM type on E is encoded by the subset I of {1,...,g} of conjugated
positions: it decodes to {phi_j : j not in I} + {phibar_j : j in I}, so the
empty set decodes to the base type Phi_E = {phi_1,...,phi_g}.  The Galois
group permutes the 2^g CM types through the subset action; each orbit O_r
yields one simple isogeny factor ("compagnon") of the generalized
anti-Weyl variety, whose CM type is indexed by the orbit members not
containing the distinguished position 1.

Subsets are ordered by a total order compatible with complementation:
subsets without 1 come first, ranked by the binary value of their
indicator over positions 2..g; subsets containing 1 are ranked so that
rank(I) = 2^g - 1 - rank(I^c).  All tables, matrices and wedge signs
downstream use this order.
"""
from __future__ import annotations

from dataclasses import dataclass

from .galois import GaloisGroup, from_cyclic_translation, weyl_full
from .hyperoct import (
    EmbeddingLabel,
    Subset,
    act_subset,
    check_powerset_size,
)


def subset_rank(I: Subset) -> int:
    """Position of I in the canonical total order on P({1,...,g})."""
    if I.bits & 1 == 0:
        return I.bits >> 1
    return (1 << I.g) - 1 - ((I.bits ^ ((1 << I.g) - 1)) >> 1)


def subset_unrank(g: int, r: int) -> Subset:
    if not 0 <= r < (1 << g):
        raise ValueError(f"rank {r} outside 0..{(1 << g) - 1}")
    half = 1 << (g - 1)
    if r < half:
        return Subset(g, r << 1)
    return Subset(g, ((1 << g) - 1) ^ (((1 << g) - 1 - r) << 1))


@dataclass(frozen=True)
class CMPairSpec:
    """A CM pair: the Galois group plus display names for phi_1..phi_g.

    `phi_names[j-1]` names the embedding phi_j; `phibar_names[j-1]` its
    conjugate.  For cyclic (translation) data the names are residues mod M
    and conjugation adds M/2.
    """

    group: GaloisGroup
    phi_names: tuple[str, ...]
    phibar_names: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.phi_names) != self.group.g or len(self.phibar_names) != self.group.g:
            raise ValueError("need one name per embedding")
        if set(self.phi_names) & set(self.phibar_names):
            raise ValueError("embedding names collide with conjugate names")

    @classmethod
    def from_cyclic(cls, M: int, phi) -> "CMPairSpec":
        group, _ = from_cyclic_translation(M, phi)
        phi = [a % M for a in phi]
        return cls(
            group,
            tuple(str(a) for a in phi),
            tuple(str((a + M // 2) % M) for a in phi),
        )

    @classmethod
    def weyl(cls, g: int) -> "CMPairSpec":
        return cls(
            weyl_full(g),
            tuple(f"phi{j}" for j in range(1, g + 1)),
            tuple(f"phibar{j}" for j in range(1, g + 1)),
        )

    @property
    def g(self) -> int:
        return self.group.g

    def label_name(self, x: EmbeddingLabel) -> str:
        return self.phibar_names[x.index - 1] if x.bar else self.phi_names[x.index - 1]


@dataclass(frozen=True)
class Compagnon:
    """One simple isogeny factor: a Galois orbit of CM types.

    `orbit` is sorted by subset_rank; `cm_type` keeps the members not
    containing 1 (half of the orbit, since conjugation lies in the group);
    `degree` is the orbit size.  The first orbit member is the stable key.
    """

    orbit: tuple[Subset, ...]
    cm_type: tuple[Subset, ...]
    degree: int

    @property
    def key(self) -> Subset:
        return self.orbit[0]


def orbit_decomposition(G: GaloisGroup) -> list[list[Subset]]:
    """Partition P({1,...,g}) into G-orbits.

    The orbit of the empty set comes first; the rest follow by their
    minimal member; each orbit is sorted in the canonical subset order.
    """
    g = G.g
    check_powerset_size(g)
    unseen = set(range(1 << g))

    def expand(seed_bits: int) -> list[Subset]:
        seed = Subset(g, seed_bits)
        members = {act_subset(el, seed).bits for el in G.elements}
        unseen.difference_update(members)
        return sorted((Subset(g, b) for b in members), key=subset_rank)

    orbits = [expand(0)]
    while unseen:
        seed = min(unseen, key=lambda b: subset_rank(Subset(g, b)))
        orbits.append(expand(seed))
    return orbits


def _compagnon_of(orbit: list[Subset]) -> Compagnon:
    return Compagnon(
        orbit=tuple(orbit),
        cm_type=tuple(I for I in orbit if 1 not in I),
        degree=len(orbit),
    )


def compagnons(spec: CMPairSpec) -> list[Compagnon]:
    """One compagnon per orbit; degrees sum to 2^g, CM types to 2^(g-1)."""
    return [_compagnon_of(o) for o in orbit_decomposition(spec.group)]


def reflex_type(spec: CMPairSpec) -> Compagnon:
    """The compagnon of the orbit of the empty set: the reflex CM pair."""
    return _compagnon_of(orbit_decomposition(spec.group)[0])


def decode_cm_type(I: Subset, spec: CMPairSpec) -> frozenset[EmbeddingLabel]:
    """The CM type indexed by I: {phi_j : j not in I} + {phibar_j : j in I}."""
    return frozenset(
        EmbeddingLabel(j, bar=(j in I)) for j in range(1, spec.g + 1)
    )


def encode_cm_type(labels, spec: CMPairSpec) -> Subset:
    """Inverse of decode_cm_type; rejects non-transversal label sets."""
    labels = set(labels)
    if len(labels) != spec.g:
        raise ValueError(f"a CM type has {spec.g} labels, got {len(labels)}")
    bits = 0
    for x in labels:
        if not 1 <= x.index <= spec.g:
            raise ValueError(f"label index {x.index} outside 1..{spec.g}")
        if x.conjugate() in labels:
            raise ValueError(f"labels contain a conjugate pair at index {x.index}")
        if x.bar:
            bits |= 1 << (x.index - 1)
    return Subset(spec.g, bits)


def reflex_labels(spec: CMPairSpec) -> list:
    """Labels a with 1 not in a.empty -- the CM type recovered by the reflex.

    For cyclic data built from the reflex of a type Phi this returns Phi:
    the orbit-table entry of a avoids position 1 exactly when the
    translated base type is holomorphic at the distinguished embedding.
    """
    G = spec.group
    if G.labels is None:
        raise ValueError("reflex labels need a labeled (cyclic) group")
    empty = Subset.empty(G.g)
    return sorted(
        lab for lab, i in G.labels.items() if 1 not in act_subset(G.elements[i], empty)
    )


def compagnon_labels(spec: CMPairSpec, base: Subset) -> list:
    """Labels a with 1 in a.base -- the CM type of the compagnon of base.

    This is the labeling convention for orbits other than the orbit of the
    empty set: the compagnon attached to the orbit of `base` carries the
    CM type {a : the translate a.base conjugates the distinguished
    embedding}.  Note the asymmetry with reflex_labels, which keeps the
    labels *avoiding* 1; both conventions are fixed by the cyclotomic
    regression data.
    """
    G = spec.group
    if G.labels is None:
        raise ValueError("compagnon labels need a labeled (cyclic) group")
    return sorted(
        lab for lab, i in G.labels.items() if 1 in act_subset(G.elements[i], base)
    )

"""Hodge-class bases, quadruple supports, and degree-two reduction
certificates.

A (p,p)-Hodge class on the n-th power of a CM abelian variety is indexed
by a 2p-element set P of embedding slots (an embedding, or a CM-type
index set I, together with a copy index 1..n).  P contributes a class
exactly when it meets every Galois translate of the CM type in p slots
(the Pohlmann condition); pohlmann_basis enumerates these directly.  For
the generalized anti-Weyl variety two independent re-enumerations exist:
bp_multisets (every point of {1,...,g} covered exactly p times) and, in
degree two, b2_quadruples (admissible quadruples I,J,K,L inside {2,...,g}
with I|J = K|L and I&J = K&L, wedged as eps_I ^ eps_J ^ eps_{K^c} ^
eps_{L^c}).  The three must agree element for element.

Each balanced cycle induces a monomial relation between the periods
Theta_I, and every such relation is an integer combination of degree-one
generators Theta_I * Theta_{I^c} ~ tau and degree-two quadruple
generators.  reduce_to_low_degree certifies this by exact lattice
membership over the triangular chain family of reciprocity, returning a
Certificate whose parts re-sum to the target.

Quadruples are classified up to Galois conjugacy by their support (the
set of translated slot pairs) or, equivalently, by the invariant (r, s)
of canonical_form_weyl; balance_dichotomy verifies the exhaustive
two-out-of-four balance lemma behind the admissibility condition.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .cmtypes import CMPairSpec, subset_rank, subset_unrank
from .galois import GaloisGroup, weyl_full
from .hyperoct import EmbeddingLabel, Subset, act_embedding, act_subset
from .intlattice import IntLattice, member
from .reciprocity import (
    ANTIWEYL,
    MonomialRelation,
    chain_quadruple,
    kernel_N,
    quadruple_vector,
)

POHLMANN_HARD_BUDGET = 10**7
BP_MAX_G = 8
BP_MAX_P = 4
BP_MAX_N = 3
DICHOTOMY_MAX_G = 5


class ReductionError(Exception):
    """A relation failed to decompose over the degree <= 2 generators."""


def _slot_key(entry):
    """Sort key for (slot, copy) pairs: copies first, then the base order
    (subset rank, or unbarred-before-barred by index for embeddings)."""
    slot, copy = entry
    if isinstance(slot, Subset):
        return (copy, 0, subset_rank(slot))
    return (copy, 1 if slot.bar else 0, slot.index)


def _is_hol(slot) -> bool:
    if isinstance(slot, Subset):
        return 1 not in slot
    return not slot.bar


@dataclass(frozen=True)
class CycleIndex:
    """An ordered 2p-tuple of embedding slots indexing a Hodge class.

    entries holds (slot, copy) pairs, strictly increasing: within a copy
    by the base order, across copies by the copy index; holomorphic slots
    precede antiholomorphic ones inside each copy by construction of the
    base order.
    """

    entries: tuple

    def __post_init__(self) -> None:
        kinds = {type(slot) for slot, _ in self.entries}
        if len(kinds) > 1:
            raise ValueError("mixed slot kinds in one cycle")
        for _, copy in self.entries:
            if copy < 1:
                raise ValueError(f"copy index {copy} out of range")
        keys = [_slot_key(e) for e in self.entries]
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise ValueError("entries must be strictly increasing (distinct slots)")

    @property
    def p(self) -> int:
        return len(self.entries) // 2

    @property
    def bidegree(self) -> tuple[int, int]:
        hol = sum(1 for slot, _ in self.entries if _is_hol(slot))
        return (hol, len(self.entries) - hol)

    def translated(self, t) -> "CycleIndex":
        """Apply a signed permutation to every slot and re-sort."""
        moved = []
        for slot, copy in self.entries:
            if isinstance(slot, Subset):
                moved.append((act_subset(t, slot), copy))
            else:
                moved.append((act_embedding(t, slot), copy))
        return CycleIndex(tuple(sorted(moved, key=_slot_key)))


def _slot_universe(spec, n: int):
    """(base slots in order, group, holomorphy test) for a CM pair spec or
    a plain genus g (the generalized anti-Weyl variety of that genus)."""
    if isinstance(spec, CMPairSpec):
        bases = [EmbeddingLabel(j, False) for j in range(1, spec.g + 1)]
        bases += [EmbeddingLabel(j, True) for j in range(1, spec.g + 1)]
        return bases, spec.group, act_embedding
    g = int(spec)
    bases = [subset_unrank(g, r) for r in range(1 << g)]
    return bases, weyl_full(g), act_subset


def _pohlmann_chunk(args):
    first, packed, target, k = args
    base = packed[first]
    hits = []
    for rest in itertools.combinations(range(first + 1, len(packed)), k - 1):
        if base + sum(packed[i] for i in rest) == target:
            hits.append((first, *rest))
    return hits


def pohlmann_basis(spec, p: int, n: int, budget: int = POHLMANN_HARD_BUDGET, jobs: int = 1) -> list[CycleIndex]:
    """All 2p-slot cycles meeting every Galois translate of the CM type in
    exactly p slots, on the n-th power of the variety.

    spec is a CMPairSpec, or an integer g for the generalized anti-Weyl
    variety (slots are then all subsets of {1,...,g}, acted on by the full
    hyperoctahedral group).  Enumeration is exact; if the candidate count
    C(#slots, 2p) exceeds the budget (hard cap 10^7) a ValueError is
    raised rather than sampling.
    """
    if p < 0 or n < 1:
        raise ValueError("need p >= 0 and n >= 1")
    if p == 0:
        return [CycleIndex(())]
    if p > 7:
        raise ValueError("the packed accumulator supports p <= 7")
    bases, group, act = _slot_universe(spec, n)
    slots = sorted(
        ((base, copy) for copy in range(1, n + 1) for base in bases), key=_slot_key
    )
    eff = min(budget, POHLMANN_HARD_BUDGET)
    count = math.comb(len(slots), 2 * p)
    if count > eff:
        raise ValueError(
            f"enumeration budget exceeded: C({len(slots)},{2 * p}) = {count} > {eff}"
        )
    # one base-16 digit per group element; a candidate is Pohlmann-valid
    # iff its digitwise holomorphy count is p at every element, and with
    # 2p <= 14 the digit sums never carry
    profile = {}
    for base in bases:
        acc = 0
        for i, s in enumerate(group.elements):
            if _is_hol(act(s, base)):
                acc |= 1 << (4 * i)
        profile[base] = acc
    packed = [profile[base] for base, _ in slots]
    ones = sum(1 << (4 * i) for i in range(len(group.elements)))
    target = p * ones
    k = 2 * p
    if jobs > 1:
        tasks = [(i, packed, target, k) for i in range(len(slots))]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_pohlmann_chunk, tasks))
        picked = [hit for chunk in chunks for hit in chunk]
    else:
        picked = []
        for combo in itertools.combinations(range(len(slots)), k):
            if sum(packed[i] for i in combo) == target:
                picked.append(combo)
    return [CycleIndex(tuple(slots[i] for i in combo)) for combo in picked]


def bp_multisets(g: int, p: int, n: int) -> list[CycleIndex]:
    """Ordered 2p-tuples of (subset, copy) slots covering every point of
    {1,...,g} exactly p times; the balanced basis of the generalized
    anti-Weyl variety."""
    if g > BP_MAX_G or p > BP_MAX_P or n > BP_MAX_N:
        raise ValueError(
            f"bp_multisets is budgeted to g <= {BP_MAX_G}, p <= {BP_MAX_P}, n <= {BP_MAX_N}"
        )
    if p < 0 or n < 1:
        raise ValueError("need p >= 0 and n >= 1")
    slots = sorted(
        ((subset_unrank(g, r), copy) for copy in range(1, n + 1) for r in range(1 << g)),
        key=_slot_key,
    )
    out: list[CycleIndex] = []
    nodes = 0

    def descend(i: int, chosen: list, cover: list[int], left: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > POHLMANN_HARD_BUDGET:
            raise ValueError("enumeration budget exceeded")
        if left == 0:
            if all(c == p for c in cover):
                out.append(CycleIndex(tuple(chosen)))
            return
        if len(slots) - i < left:
            return
        for k in range(i, len(slots)):
            I = slots[k][0]
            if any(cover[j - 1] + 1 > p for j in I.members()):
                continue
            for j in I.members():
                cover[j - 1] += 1
            chosen.append(slots[k])
            descend(k + 1, chosen, cover, left - 1)
            chosen.pop()
            for j in I.members():
                cover[j - 1] -= 1

    descend(0, [], [0] * g, 2 * p)
    return out


def admissible(I: Subset, J: Subset, K: Subset, L: Subset) -> bool:
    """Union/intersection matching: I|J = K|L and I&J = K&L, i.e. every
    point lies in exactly two of the four wedge slots I, J, K^c, L^c."""
    return I | J == K | L and I & J == K & L


def b2_quadruples(g: int, n: int) -> list[tuple]:
    """Admissible quadruples (I, J, K, L, copies) over {2,...,g} with the
    canonical slot ordering: rank(I),copy <= rank(J),copy on the left,
    rank(K^c),copy <= rank(L^c),copy on the right, all four wedge slots
    distinct."""
    if g > BP_MAX_G:
        raise ValueError(f"b2_quadruples is budgeted to g <= {BP_MAX_G}")
    if n < 1:
        raise ValueError("need n >= 1")
    tail = sorted(
        (Subset(g, b) for b in range(1 << g) if not b & 1), key=subset_rank
    )
    by_sig: dict = {}
    for I, J in itertools.combinations_with_replacement(tail, 2):
        by_sig.setdefault(((I | J).bits, (I & J).bits), []).append((I, J))
    out = []
    work = 0
    for pairs in by_sig.values():
        work += len(pairs) * len(pairs) * n**4
        if work > POHLMANN_HARD_BUDGET:
            raise ValueError("enumeration budget exceeded")
        for I, J in pairs:
            ri, rj = subset_rank(I), subset_rank(J)
            for A, B in pairs:
                K, L = (
                    (A, B)
                    if subset_rank(A.complement()) <= subset_rank(B.complement())
                    else (B, A)
                )
                rk, rl = subset_rank(K.complement()), subset_rank(L.complement())
                for copies in itertools.product(range(1, n + 1), repeat=4):
                    if (ri, copies[0]) >= (rj, copies[1]):
                        continue
                    if (rk, copies[2]) >= (rl, copies[3]):
                        continue
                    out.append((I, J, K, L, copies))
    out.sort(
        key=lambda q: (
            (subset_rank(q[0]), q[4][0]),
            (subset_rank(q[1]), q[4][1]),
            (subset_rank(q[2].complement()), q[4][2]),
            (subset_rank(q[3].complement()), q[4][3]),
        )
    )
    return out


def quadruple_to_cycle(I: Subset, J: Subset, K: Subset, L: Subset, copies=(1, 1, 1, 1)) -> CycleIndex:
    """The wedge cycle eps_I ^ eps_J ^ eps_{K^c} ^ eps_{L^c}."""
    slots = [
        (I, copies[0]),
        (J, copies[1]),
        (K.complement(), copies[2]),
        (L.complement(), copies[3]),
    ]
    return CycleIndex(tuple(sorted(slots, key=_slot_key)))


def kernel_to_cycle(spec: CMPairSpec, alpha, n: int | None = None) -> CycleIndex:
    """The canonical cycle of a kernel vector: copy l collects the
    embeddings with exponent >= l unbarred and those with exponent <= -l
    barred."""
    g = spec.g
    alpha = tuple(alpha)
    if len(alpha) != g:
        raise ValueError(f"vector length {len(alpha)}, expected {g}")
    if member(alpha, kernel_N(spec)) is None:
        raise ValueError("vector is not in the relation kernel")
    depth = max((abs(a) for a in alpha), default=0)
    if n is None:
        n = depth
    elif n < depth:
        raise ValueError(f"n too small: the vector needs n >= {depth}")
    entries = []
    for copy in range(1, n + 1):
        for j, a in enumerate(alpha, start=1):
            if a >= copy:
                entries.append((EmbeddingLabel(j, False), copy))
        for j, a in enumerate(alpha, start=1):
            if a <= -copy:
                entries.append((EmbeddingLabel(j, True), copy))
    return CycleIndex(tuple(sorted(entries, key=_slot_key)))


def relation_of_cycle(c: CycleIndex) -> MonomialRelation:
    """The monomial relation induced by a balanced subset-slot cycle:
    Theta_I on the left per holomorphic slot, Theta_{I^c} on the right per
    antiholomorphic slot; copy indices are irrelevant and dropped."""
    if not c.entries:
        raise ValueError("cannot infer the ambient dimension of an empty cycle")
    if not isinstance(c.entries[0][0], Subset):
        raise ValueError("subset slots required")
    g = c.entries[0][0].g
    hol, anti = c.bidegree
    if hol != anti:
        raise ValueError(f"unbalanced cycle: {hol} holomorphic vs {anti} antiholomorphic slots")
    vec = [0] * (1 << g)
    for slot, _ in c.entries:
        if 1 not in slot:
            vec[subset_rank(slot)] += 1
        else:
            vec[subset_rank(slot.complement())] -= 1
    return MonomialRelation(ANTIWEYL, g, tuple(vec))


# ---------------------------------------------------------------------------
# degree <= 2 generators and reduction certificates


def degree_one_generator(I: Subset) -> MonomialRelation:
    """Theta_I * Theta_{I^c} ~ tau."""
    vec = [0] * (1 << I.g)
    vec[subset_rank(I)] += 1
    vec[subset_rank(I.complement())] += 1
    return MonomialRelation(ANTIWEYL, I.g, tuple(vec), tau=-1)


def chain_generator(S: Subset) -> MonomialRelation:
    """The degree-two quadruple relation of the chain through S."""
    return MonomialRelation(ANTIWEYL, S.g, tuple(quadruple_vector(*chain_quadruple(S))))


def _is_degree_one(rel: MonomialRelation) -> bool:
    if rel.side != ANTIWEYL or rel.tau != -1:
        return False
    hits = [i for i, x in enumerate(rel.vec) if x]
    if len(hits) != 2 or any(rel.vec[i] != 1 for i in hits):
        return False
    return subset_unrank(rel.g, hits[0]) == subset_unrank(rel.g, hits[1]).complement()


def _is_degree_two(rel: MonomialRelation) -> bool:
    if rel.side != ANTIWEYL or rel.tau != 0:
        return False
    pos, neg = [], []
    for i, x in enumerate(rel.vec):
        if x > 0:
            pos += [subset_unrank(rel.g, i)] * x
        elif x < 0:
            neg += [subset_unrank(rel.g, i)] * -x
    if len(pos) != 2 or len(neg) != 2:
        return False
    return admissible(pos[0], pos[1], neg[0], neg[1])


@dataclass(frozen=True)
class Certificate:
    """Integer decomposition of a relation over degree <= 2 generators."""

    target: MonomialRelation
    parts: tuple

    def verify(self) -> bool:
        """Exact re-summation, plus the generator-shape restriction."""
        want = [*self.target.vec, self.target.tau]
        total = [0] * len(want)
        for gen, coeff in self.parts:
            if gen.g != self.target.g:
                return False
            if not (_is_degree_one(gen) or _is_degree_two(gen)):
                return False
            for i, x in enumerate([*gen.vec, gen.tau]):
                total[i] += coeff * x
        return total == want


def reduce_to_low_degree(r: MonomialRelation, g: int) -> Certificate:
    """Certificate expressing r over degree-one generators and chain
    quadruples, found by integer lattice membership.

    The chains are triangular (each tops a distinct subset), so once
    membership holds the coefficients fall out by back-substitution from
    large subsets down; a relation outside the generator lattice raises
    ReductionError.
    """
    if r.side != ANTIWEYL:
        raise ValueError("anti-Weyl relation required")
    if r.g != g:
        raise ValueError(f"dimension mismatch: relation has g={r.g}, not {g}")
    gens = [degree_one_generator(Subset.empty(g))]
    chain_tops = [
        Subset(g, bits) for bits in range(1 << g) if bits.bit_count() >= 2
    ]
    gens += [chain_generator(S) for S in chain_tops]
    lattice = IntLattice.from_rows(
        (1 << g) + 1, [[*x.vec, x.tau] for x in gens]
    )
    w = [*r.vec, r.tau]
    if member(tuple(w), lattice) is None:
        raise ReductionError("relation is not generated in degree <= 2")
    parts = []
    c_tau = -w[-1]
    if c_tau:
        d = gens[0]
        for i, x in enumerate([*d.vec, d.tau]):
            w[i] -= c_tau * x
        parts.append((d, c_tau))
    for S in sorted(chain_tops, key=len, reverse=True):
        c = w[subset_rank(S)]
        if c:
            q = quadruple_vector(*chain_quadruple(S))
            for i, x in enumerate(q):
                w[i] -= c * x
            parts.append((chain_generator(S), c))
    assert not any(w), "triangular back-substitution disagrees with membership"
    cert = Certificate(r, tuple(parts))
    assert cert.verify()
    return cert


# ---------------------------------------------------------------------------
# supports, canonical forms, and the balance dichotomy


def quadruple_support(q, G: GaloisGroup) -> frozenset:
    """All Galois translates of the wedge-slot pairs of (I, J, K, L): the
    left block {t.I, t.J} and the right block {t.K^c, t.L^c}, as an
    ordered pair of unordered blocks."""
    I, J, K, L = q
    out = set()
    for t in G.elements:
        out.add(
            (
                frozenset({act_subset(t, I), act_subset(t, J)}),
                frozenset({act_subset(t, K.complement()), act_subset(t, L.complement())}),
            )
        )
    return frozenset(out)


def support_and_equivalence(q1, q2, G: GaloisGroup):
    """Supports of both quadruples and whether they are equal (two Hodge
    cycles are equivalent exactly when their supports coincide)."""
    s1, s2 = quadruple_support(q1, G), quadruple_support(q2, G)
    return (s1, s2), s1 == s2


def canonical_form_weyl(q, g: int) -> tuple[int, int]:
    """The conjugacy invariant (r, s) of an admissible quadruple over
    {2,...,g} under the full hyperoctahedral group.

    r - 1 = |I ^ J| is the block width; s - 1 is the least overlap defect
    between the two blocks, with s = 1 reserved for the degenerate case
    {I,J} = {K,L} (zero relation).  Nondegenerate classes have
    2 <= s <= (r+1)/2.
    """
    I, J, K, L = q
    for X in q:
        if 1 in X or X.g != g:
            raise ValueError("expected index sets inside {2,...,g}")
    if not admissible(I, J, K, L):
        raise ValueError("quadruple is not admissible: unions or intersections differ")
    r = len(I ^ J) + 1
    if {I, J} == {K, L}:
        return (r, 1)
    return (r, 1 + min(len(I ^ K), len(I ^ L), len(J ^ K), len(J ^ L)))


def balance_dichotomy(g: int) -> tuple[int, int]:
    """Exhaustive two-sided balance check over all quadruples in {2,...,g}.

    Admissible quadruples keep exactly two of the four wedge slots
    containing 1 under every group element; every inadmissible quadruple
    admits an element pushing 1 into at least three slots.  Returns the
    (admissible, inadmissible) counts; a counterexample to either
    direction raises AssertionError.
    """
    if g > DICHOTOMY_MAX_G:
        raise ValueError(f"balance_dichotomy supports g <= {DICHOTOMY_MAX_G}, got {g}")
    G = weyl_full(g)
    m = len(G.elements)
    # one base-8 digit per group element counting slots that contain 1
    ones = sum(1 << (3 * i) for i in range(m))
    contains = {}
    for bits in range(1 << g):
        I = Subset(g, bits)
        acc = 0
        for i, t in enumerate(G.elements):
            if 1 in act_subset(t, I):
                acc |= 1 << (3 * i)
        contains[bits] = acc
    tail = [Subset(g, b) for b in range(1 << g) if not b & 1]
    n_adm = n_bad = 0
    high = 4 * ones
    for I, J, K, L in itertools.product(tail, repeat=4):
        total = (
            contains[I.bits]
            + contains[J.bits]
            + contains[K.complement().bits]
            + contains[L.complement().bits]
        )
        if admissible(I, J, K, L):
            n_adm += 1
            assert total == 2 * ones, (str(I), str(J), str(K), str(L))
        else:
            n_bad += 1
            # a digit reaches 3 or 4 iff adding one more pushes it to >= 4
            assert (total + ones) & high, (str(I), str(J), str(K), str(L))
    return n_adm, n_bad

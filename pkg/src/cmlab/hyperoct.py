"""Arithmetic of the hyperoctahedral group (Z/2Z)^g semidirect S_g.

Elements are signed permutations theta = (flips, perm): perm is a bijection
beta of {1,...,g} in one-line notation and flips is the subset of {1,...,g}
recording which *target* indices pick up a conjugation.  Multiplication
follows the semidirect rule

    (F1, b1) * (F2, b2) = (F1 xor b1(F2), b1 b2),

i.e. the right factor acts first.  The group acts on the 2g embedding
labels {phi_1..phi_g, phibar_1..phibar_g}:

    theta . phi_j = phi_{beta(j)}, barred iff beta(j) in flips,

extended conjugate-equivariantly to barred labels.  CM types are indexed
by subsets of {1,...,g} via I <-> {phi_j : j not in I} + {phibar_j : j in I};
transporting the label action through that bijection gives the left action
on subsets implemented here:

    theta . I = flips xor beta(I).

The element rho = (full set, identity) is central and acts on subsets as
complementation; it plays the role of complex conjugation throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

MAX_G_GROUP = 24
MAX_G_POWERSET = 16


def check_group_size(g: int) -> None:
    if not 1 <= g <= MAX_G_GROUP:
        raise ValueError(f"ground-set size g={g} outside supported range 1..{MAX_G_GROUP}")


def check_powerset_size(g: int) -> None:
    if g > MAX_G_POWERSET:
        raise ValueError(
            f"operation enumerates all 2^g subsets; g={g} exceeds the cap {MAX_G_POWERSET}"
        )


@dataclass(frozen=True, order=True)
class Subset:
    """A subset of {1,...,g}, stored as a g-bit mask (bit j-1 <-> element j)."""

    g: int
    bits: int

    def __post_init__(self) -> None:
        check_group_size(self.g)
        if not 0 <= self.bits < (1 << self.g):
            raise ValueError(f"subset mask {self.bits:#x} has elements outside 1..{self.g}")

    @classmethod
    def of(cls, g: int, members: Iterable[int] = ()) -> "Subset":
        bits = 0
        for j in members:
            if not 1 <= j <= g:
                raise ValueError(f"element {j} outside 1..{g}")
            bits |= 1 << (j - 1)
        return cls(g, bits)

    @classmethod
    def empty(cls, g: int) -> "Subset":
        return cls(g, 0)

    @classmethod
    def full(cls, g: int) -> "Subset":
        return cls(g, (1 << g) - 1)

    def members(self) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.g + 1) if self.bits >> (j - 1) & 1)

    def __contains__(self, j: int) -> bool:
        return 1 <= j <= self.g and bool(self.bits >> (j - 1) & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def complement(self) -> "Subset":
        return Subset(self.g, self.bits ^ ((1 << self.g) - 1))

    def _binop(self, other: "Subset", bits: int) -> "Subset":
        if self.g != other.g:
            raise ValueError(f"dimension mismatch: g={self.g} vs g={other.g}")
        return Subset(self.g, bits)

    def __or__(self, other: "Subset") -> "Subset":
        return self._binop(other, self.bits | other.bits)

    def __and__(self, other: "Subset") -> "Subset":
        return self._binop(other, self.bits & other.bits)

    def __xor__(self, other: "Subset") -> "Subset":
        return self._binop(other, self.bits ^ other.bits)

    def issubset(self, other: "Subset") -> bool:
        if self.g != other.g:
            raise ValueError(f"dimension mismatch: g={self.g} vs g={other.g}")
        return self.bits & ~other.bits == 0

    def __str__(self) -> str:
        return "{" + ",".join(str(j) for j in self.members()) + "}"


@dataclass(frozen=True)
class EmbeddingLabel:
    """One of the 2g labels phi_j (bar=False) or phibar_j (bar=True)."""

    index: int
    bar: bool = False

    def conjugate(self) -> "EmbeddingLabel":
        return EmbeddingLabel(self.index, not self.bar)

    def __str__(self) -> str:
        return f"phibar_{self.index}" if self.bar else f"phi_{self.index}"


@dataclass(frozen=True)
class SignedPerm:
    """Group element theta = (flips, perm); perm[j-1] is the image beta(j)."""

    g: int
    flips: Subset
    perm: tuple[int, ...]
    _inv_perm: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        check_group_size(self.g)
        if self.flips.g != self.g:
            raise ValueError(f"dimension mismatch: flips has g={self.flips.g}, element has g={self.g}")
        if len(self.perm) != self.g or sorted(self.perm) != list(range(1, self.g + 1)):
            raise ValueError(f"perm {self.perm} is not a bijection of 1..{self.g}")
        inv = [0] * self.g
        for j, bj in enumerate(self.perm, start=1):
            inv[bj - 1] = j
        object.__setattr__(self, "_inv_perm", tuple(inv))

    @classmethod
    def make(cls, g: int, flips: Iterable[int] = (), perm: Iterable[int] | None = None) -> "SignedPerm":
        p = tuple(perm) if perm is not None else tuple(range(1, g + 1))
        return cls(g, Subset.of(g, flips), p)

    @classmethod
    def identity(cls, g: int) -> "SignedPerm":
        return cls(g, Subset.empty(g), tuple(range(1, g + 1)))

    @classmethod
    def rho(cls, g: int) -> "SignedPerm":
        """The central all-flips element (complex conjugation)."""
        return cls(g, Subset.full(g), tuple(range(1, g + 1)))

    def is_identity(self) -> bool:
        return self.flips.bits == 0 and self.perm == tuple(range(1, self.g + 1))

    def apply_perm(self, I: Subset) -> Subset:
        bits = 0
        src = I.bits
        while src:
            low = src & -src
            bits |= 1 << (self.perm[low.bit_length() - 1] - 1)
            src ^= low
        return Subset(self.g, bits)

    def to_json(self) -> dict:
        return {"flips": list(self.flips.members()), "perm": list(self.perm)}

    @classmethod
    def from_json(cls, g: int, data: dict) -> "SignedPerm":
        return cls.make(g, data["flips"], data["perm"])

    def __str__(self) -> str:
        return f"(flips {self.flips}, perm {self.perm})"


def compose(a: SignedPerm, b: SignedPerm) -> SignedPerm:
    """Product a*b: apply b first, then a."""
    if a.g != b.g:
        raise ValueError(f"dimension mismatch: g={a.g} vs g={b.g}")
    flips = a.flips ^ a.apply_perm(b.flips)
    perm = tuple(a.perm[bj - 1] for bj in b.perm)
    return SignedPerm(a.g, flips, perm)


def inverse(a: SignedPerm) -> SignedPerm:
    inv = a._inv_perm
    bits = 0
    src = a.flips.bits
    while src:
        low = src & -src
        bits |= 1 << (inv[low.bit_length() - 1] - 1)
        src ^= low
    return SignedPerm(a.g, Subset(a.g, bits), inv)


def act_subset(t: SignedPerm, I: Subset) -> Subset:
    """Left action on CM-type indices: t.I = flips xor beta(I)."""
    if t.g != I.g:
        raise ValueError(f"dimension mismatch: g={t.g} vs g={I.g}")
    return t.flips ^ t.apply_perm(I)


def act_embedding(t: SignedPerm, x: EmbeddingLabel) -> EmbeddingLabel:
    """Left action on the 2g embedding labels."""
    if not 1 <= x.index <= t.g:
        raise ValueError(f"label index {x.index} outside 1..{t.g}")
    j = t.perm[x.index - 1]
    return EmbeddingLabel(j, x.bar ^ (j in t.flips))

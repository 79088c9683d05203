"""Exact-matrix verification of sl2-triples inside the symplectic Lie algebra.

The model: a symplectic space of dimension 2^g whose ordered basis is the
subsets of {1,...,g} in SubsetOrder.  The vector x_I sits at position
rank(I) for index sets with 1 not in I, and its pairing partner y_I sits at
the mirrored position rank(I^c).  Root vectors E_{I,J} for the weights
e_I + e_J are elementary raising matrices normalized so that the double
bracket with the conjugate root vector returns twice the original.  On top
of the root vectors sit the nilpotents v_U (one per index set U inside
{2,...,g}) and their complex conjugates; `check_sl2` confirms by exact
rational arithmetic that each pair spans an sl2-triple.

The concrete matrices are one valid gauge; any model with the same weights
and normalization passes the same checks.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cmtypes import subset_rank
from .hyperoct import Subset

SL2_MAX_G = 6

_ZERO = Fraction(0)


@dataclass(frozen=True)
class SymplecticMatrix:
    """Square matrix over Q acting on the 2^g-dimensional symplectic space."""

    g: int
    entries: tuple

    def __post_init__(self) -> None:
        n = 1 << self.g
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ValueError(f"expected a {n}x{n} matrix for g={self.g}")

    @classmethod
    def zero(cls, g: int) -> "SymplecticMatrix":
        n = 1 << g
        return cls(g, tuple((_ZERO,) * n for _ in range(n)))

    @classmethod
    def identity(cls, g: int) -> "SymplecticMatrix":
        n = 1 << g
        one = Fraction(1)
        return cls(g, tuple(
            tuple(one if i == j else _ZERO for j in range(n)) for i in range(n)
        ))

    @classmethod
    def diagonal(cls, g: int, diag) -> "SymplecticMatrix":
        n = 1 << g
        values = [Fraction(d) for d in diag]
        if len(values) != n:
            raise ValueError(f"expected {n} diagonal entries")
        return cls(g, tuple(
            tuple(values[i] if i == j else _ZERO for j in range(n)) for i in range(n)
        ))

    def __add__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        return SymplecticMatrix(self.g, tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)
        ))

    def __sub__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        return SymplecticMatrix(self.g, tuple(
            tuple(a - b for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)
        ))

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        n = 1 << self.g
        rows = []
        for i in range(n):
            acc = [_ZERO] * n
            for k, a in enumerate(self.entries[i]):
                if a:
                    row = other.entries[k]
                    for j in range(n):
                        if row[j]:
                            acc[j] += a * row[j]
            rows.append(tuple(acc))
        return SymplecticMatrix(self.g, tuple(rows))

    def scaled(self, c) -> "SymplecticMatrix":
        c = Fraction(c)
        return SymplecticMatrix(self.g, tuple(
            tuple(c * a for a in row) for row in self.entries
        ))

    def transpose(self) -> "SymplecticMatrix":
        return SymplecticMatrix(self.g, tuple(zip(*self.entries)))

    def is_zero(self) -> bool:
        return all(not a for row in self.entries for a in row)

    def is_diagonal(self) -> bool:
        return all(
            not a
            for i, row in enumerate(self.entries)
            for j, a in enumerate(row)
            if i != j
        )

    def diag(self) -> tuple:
        return tuple(row[i] for i, row in enumerate(self.entries))

    def in_lie_algebra(self) -> bool:
        """Membership in sp: M^T Omega + Omega M = 0."""
        form = omega(self.g)
        return (self.transpose() @ form + form @ self).is_zero()


def omega(g: int) -> SymplecticMatrix:
    """The symplectic form: position k pairs with position 2^g-1-k."""
    n = 1 << g
    rows = []
    for k in range(n):
        row = [_ZERO] * n
        row[n - 1 - k] = Fraction(1) if k < n // 2 else Fraction(-1)
        rows.append(tuple(row))
    return SymplecticMatrix(g, tuple(rows))


def conj(m: SymplecticMatrix) -> SymplecticMatrix:
    """Complex conjugation on the Lie algebra: M -> -M^T.

    An involution that swaps raising and lowering root spaces; it carries
    E_{I,J} to E_{I^c,J^c}.
    """
    return m.transpose().scaled(-1)


def bracket(a: SymplecticMatrix, b: SymplecticMatrix) -> SymplecticMatrix:
    return a @ b - b @ a


def root_vector(I: Subset, J: Subset, g: int) -> SymplecticMatrix:
    """Root vector E_{I,J} for the weight e_I + e_J.

    Both index sets must avoid 1 (raising) or both contain 1 (lowering);
    the normalization makes [E, [E, conj(E)]] = 2E.
    """
    if I.g != g or J.g != g:
        raise ValueError(f"index sets must live in {{1,...,{g}}}")
    hol_i, hol_j = 1 not in I, 1 not in J
    if hol_i != hol_j:
        raise ValueError(
            f"non-root index pair: {I} and {J} disagree on membership of 1"
        )
    if not hol_i:
        return conj(root_vector(I.complement(), J.complement(), g))
    n = 1 << g
    rows = [[_ZERO] * n for _ in range(n)]
    rows[subset_rank(I)][subset_rank(J.complement())] += Fraction(1)
    if I != J:
        rows[subset_rank(J)][subset_rank(I.complement())] += Fraction(1)
    return SymplecticMatrix(g, tuple(tuple(row) for row in rows))


def torus_element(coeffs, g: int) -> SymplecticMatrix:
    """Diagonal torus element with value c_I on x_I and -c_I on y_I.

    `coeffs` maps index sets inside {2,...,g} to rational values; missing
    sets default to zero.
    """
    n = 1 << g
    diag = [_ZERO] * n
    for I, c in coeffs.items():
        if I.g != g or 1 in I:
            raise ValueError("torus coefficients are indexed by subsets of {2,...,g}")
        diag[subset_rank(I)] = Fraction(c)
        diag[subset_rank(I.complement())] = -Fraction(c)
    return SymplecticMatrix.diagonal(g, diag)


def _subsets_of(U: Subset):
    sub = U.bits
    while True:
        yield Subset(U.g, sub)
        if sub == 0:
            return
        sub = (sub - 1) & U.bits


def _tail(g: int) -> Subset:
    return Subset.of(g, range(2, g + 1))


def build_v(U: Subset) -> SymplecticMatrix:
    """The nilpotent v_U: sum of E_{I, {2..g} minus I} over index sets I in U.

    The coefficient drops to 1/2 when U is all of {2,...,g}, where the sum
    visits every root vector twice.
    """
    g = U.g
    if g < 2:
        raise ValueError("build_v needs g >= 2")
    if 1 in U:
        raise ValueError("expected an index set inside {2,...,g}")
    tail = _tail(g)
    total = SymplecticMatrix.zero(g)
    for I in _subsets_of(U):
        total = total + root_vector(I, tail ^ I, g)
    eps = Fraction(1, 2) if U == tail else Fraction(1)
    return total.scaled(eps)


def build_vbar(U: Subset) -> SymplecticMatrix:
    """The conjugate nilpotent, built directly from lowering root vectors."""
    g = U.g
    if g < 2:
        raise ValueError("build_vbar needs g >= 2")
    if 1 in U:
        raise ValueError("expected an index set inside {2,...,g}")
    tail = _tail(g)
    one = Subset.of(g, [1])
    total = SymplecticMatrix.zero(g)
    for I in _subsets_of(U):
        total = total + root_vector(I.complement(), one | I, g)
    eps = Fraction(1, 2) if U == tail else Fraction(1)
    return total.scaled(eps)


def check_sl2(U: Subset, g: int, scale=1) -> dict:
    """Verify that (v_U, vbar_U, [v_U, vbar_U]) is an sl2-triple.

    The report keys name the identity groups: all v's commute pairwise,
    the bracket with the conjugate is diagonal, and the double brackets
    reproduce twice the nilpotents.  `scale` rescales both nilpotents and
    serves as a negative control: values other than +1 or -1 must break
    the triple identities.
    """
    if g > SL2_MAX_G:
        raise ValueError(f"check_sl2 supports g <= {SL2_MAX_G}, got {g}")
    if U.g != g:
        raise ValueError(f"index set lives at g={U.g}, not {g}")
    factor = Fraction(scale)
    v = build_v(U).scaled(factor)
    vbar = build_vbar(U).scaled(factor)
    tail = _tail(g)
    vv_zero = all(
        bracket(v, build_v(W).scaled(factor)).is_zero() for W in _subsets_of(tail)
    )
    h = bracket(v, vbar)
    return {
        "bracket_vv_zero": vv_zero,
        "bracket_vvbar_diagonal": h.is_diagonal(),
        "triple_identities": (
            bracket(v, h) == v.scaled(2) and bracket(vbar, bracket(vbar, v)) == vbar.scaled(2)
        ),
    }

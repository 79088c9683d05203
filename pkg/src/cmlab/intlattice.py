"""Exact integer linear algebra: HNF, kernels, saturation, membership.

Everything is arbitrary-precision; no floating point enters this module.
The canonical basis of a lattice is a row-style Hermite normal form with
*trailing* pivots: each basis row has a positive pivot in its rightmost
nonzero column, pivot columns strictly increase down the rows, and entries
of other rows in a pivot column are reduced to [0, pivot).  (The
trailing-pivot convention makes kernel bases of the reciprocity pairings
come out in the shape their monomial relations are usually written in;
any fixed convention would do for equality testing.)
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]
    cols: int

    def __post_init__(self) -> None:
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            if not entries:
                raise ValueError("cannot infer width of an empty matrix; pass cols")
            cols = len(entries[0])
        return cls(entries, cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    @classmethod
    def from_json(cls, data: list, cols: int | None = None) -> "IntMatrix":
        return cls.from_rows([[int(x) for x in row] for row in data], cols)


def _trailing_pivot(row: Sequence[int]) -> int:
    for c in range(len(row) - 1, -1, -1):
        if row[c]:
            return c
    return -1


def _hnf_right(rows: list[list[int]], ncols: int, transform: bool):
    """Row HNF with trailing pivots.  Returns (hnf_rows, rank, U or None).

    U is unimodular with U * input = output (zero rows included).
    """
    A = [list(r) for r in rows]
    m = len(A)
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if transform else None
    r = 0
    for col in range(ncols - 1, -1, -1):
        # gcd-reduce column col among rows r..m-1 down to one nonzero entry
        while True:
            nz = [i for i in range(r, m) if A[i][col]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(A[i][col]))
            a = nz[0]
            for b in nz[1:]:
                q = A[b][col] // A[a][col]
                A[b] = [x - q * y for x, y in zip(A[b], A[a])]
                if transform:
                    U[b] = [x - q * y for x, y in zip(U[b], U[a])]
        nz = [i for i in range(r, m) if A[i][col]]
        if not nz:
            continue
        i0 = nz[0]
        A[r], A[i0] = A[i0], A[r]
        if transform:
            U[r], U[i0] = U[i0], U[r]
        if A[r][col] < 0:
            A[r] = [-x for x in A[r]]
            if transform:
                U[r] = [-x for x in U[r]]
        for i in range(r):
            q = A[i][col] // A[r][col]
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                if transform:
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    # pivot rows were produced right-to-left; present them with increasing
    # trailing-pivot column (so e.g. an identity matrix is already canonical)
    A = A[:r][::-1] + A[r:]
    if transform:
        U = U[:r][::-1] + U[r:]
    return A, r, U


def hnf(m: IntMatrix) -> IntMatrix:
    """Canonical trailing-pivot row HNF; zero rows dropped."""
    A, rank, _ = _hnf_right([list(r) for r in m.entries], m.cols, transform=False)
    return IntMatrix.from_rows(A[:rank], m.cols)


def hnf_with_transform(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """(H, U) with U unimodular, U*m = H; zero rows of H retained."""
    A, _, U = _hnf_right([list(r) for r in m.entries], m.cols, transform=True)
    return IntMatrix.from_rows(A, m.cols), IntMatrix.from_rows(U, m.rows)


@dataclass(frozen=True)
class IntLattice:
    """A sublattice of Z^dim with HNF-canonical basis (unique per lattice)."""

    dim: int
    basis: IntMatrix

    @classmethod
    def from_rows(cls, dim: int, rows: Iterable[Sequence[int]]) -> "IntLattice":
        return cls(dim, hnf(IntMatrix.from_rows(rows, dim)))

    @classmethod
    def zero(cls, dim: int) -> "IntLattice":
        return cls(dim, IntMatrix.from_rows([], dim))

    @classmethod
    def full(cls, dim: int) -> "IntLattice":
        eye = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
        return cls(dim, IntMatrix.from_rows(eye, dim))

    @property
    def rank(self) -> int:
        return self.basis.rows


def kernel_basis(m: IntMatrix) -> IntLattice:
    """The saturated lattice {v in Z^cols : m*v = 0}."""
    if m.rows == 0:
        return IntLattice.full(m.cols)
    # rows of the transpose are the columns of m; transform rows that reduce
    # them to zero are exactly the kernel vectors
    tr = [[m.entries[r][c] for r in range(m.rows)] for c in range(m.cols)]
    A, _, U = _hnf_right(tr, m.rows, transform=True)
    ker = [U[i] for i in range(len(A)) if not any(A[i])]
    return IntLattice.from_rows(m.cols, ker)


def saturate(L: IntLattice) -> IntLattice:
    """Smallest saturated superlattice (same rank, torsion-free quotient).

    Computed as the kernel of the kernel: orthogonal-complement lattices
    are saturated by construction, and taking the complement twice returns
    the rational row span intersected with Z^dim.
    """
    if L.rank == 0:
        return L
    K = kernel_basis(L.basis)
    if K.rank == 0:
        return IntLattice.full(L.dim)
    return kernel_basis(K.basis)


def member(v: Sequence[int], L: IntLattice):
    """Coefficients of v over L's canonical basis, or None if v not in L."""
    if len(v) != L.dim:
        raise ValueError(f"dimension mismatch: vector has {len(v)}, lattice has {L.dim}")
    rem = [int(x) for x in v]
    coeffs = []
    # back-substitute from the row with the rightmost pivot down
    for row in reversed(L.basis.entries):
        p = _trailing_pivot(row)
        c, res = divmod(rem[p], row[p])
        if res:
            return None
        coeffs.append(c)
        if c:
            rem = [x - c * y for x, y in zip(rem, row)]
    if any(rem):
        return None
    return tuple(reversed(coeffs))


def lattice_equal(L1: IntLattice, L2: IntLattice) -> bool:
    if L1.dim != L2.dim:
        raise ValueError(f"ambient dimension mismatch: {L1.dim} vs {L2.dim}")
    return L1.basis == L2.basis

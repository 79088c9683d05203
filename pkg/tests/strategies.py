"""Shared hypothesis strategies."""
from hypothesis import strategies as st

from cmlab.hyperoct import SignedPerm, Subset


def subsets(g: int):
    return st.integers(0, (1 << g) - 1).map(lambda bits: Subset(g, bits))


def signed_perms(g: int):
    return st.tuples(
        st.integers(0, (1 << g) - 1),
        st.permutations(list(range(1, g + 1))),
    ).map(lambda t: SignedPerm(g, Subset(g, t[0]), tuple(t[1])))


def dims(lo: int = 2, hi: int = 12):
    return st.integers(lo, hi)

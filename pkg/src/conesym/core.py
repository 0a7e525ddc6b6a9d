"""Coordinate conventions and the elementary objects everything else builds on.

Points are 1-based, V = {1, ..., n}.  A vector "over pairs" has one entry per
unordered pair (i, j) with i < j, and the pairs are ordered lexicographically,
so for n = 4 the coordinates are (1,2), (1,3), (1,4), (2,3), (2,4), (3,4).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import isqrt
from typing import Iterable, Sequence

__all__ = [
    "num_pairs",
    "pair_list",
    "pair_index",
    "pair_unindex",
    "CutVector",
    "cut_vector",
    "enumerate_cuts",
    "TriangleFacet",
    "enumerate_triangle_facets",
    "Permutation",
    "apply_permutation",
    "permute_cut",
    "permute_facet",
    "switching_reflection",
]


def num_pairs(n: int) -> int:
    """Number of coordinates for n points, i.e. C(n, 2)."""
    return n * (n - 1) // 2


@lru_cache(maxsize=None)
def _pair_table(n: int):
    pairs = tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
    return pairs, {p: k for k, p in enumerate(pairs)}


def pair_list(n: int) -> tuple[tuple[int, int], ...]:
    """All pairs (i, j), i < j, in coordinate order."""
    return _pair_table(n)[0]


def pair_index(i: int, j: int, n: int) -> int:
    """Coordinate of the pair (i, j); requires 1 <= i < j <= n."""
    if not (1 <= i < j <= n):
        raise ValueError(f"invalid pair ({i}, {j}) for n={n}")
    return _pair_table(n)[1][(i, j)]


def pair_unindex(k: int, n: int) -> tuple[int, int]:
    """Inverse of pair_index."""
    pairs = _pair_table(n)[0]
    if not 0 <= k < len(pairs):
        raise ValueError(f"coordinate {k} out of range for n={n}")
    return pairs[k]


def _n_from_len(m: int) -> int:
    n = (1 + isqrt(1 + 8 * m)) // 2
    if num_pairs(n) != m:
        raise ValueError(f"length {m} is not C(n, 2) for any n")
    return n


class CutVector:
    """0/1 incidence vector of the cut determined by a point subset.

    A pair (i, j) is cut when exactly one of i, j lies in the generating set.
    Complementary subsets determine the same cut, so the stored generator is
    canonicalized to the representative that does not contain the point n.
    Instances are immutable value objects.
    """

    __slots__ = ("n", "members", "mask")

    def __init__(self, n: int, members: Iterable[int] = ()):
        members = frozenset(members)
        if any(not (1 <= p <= n) for p in members):
            raise ValueError(f"members must lie in 1..{n}")
        if n in members:
            members = frozenset(range(1, n + 1)) - members
        mask = 0
        for k, (i, j) in enumerate(pair_list(n)):
            if (i in members) != (j in members):
                mask |= 1 << k
        self.n = n
        self.members = members
        self.mask = mask

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.mask >> k) & 1 for k in range(num_pairs(self.n)))

    def is_zero(self) -> bool:
        return self.mask == 0

    def __len__(self) -> int:
        return num_pairs(self.n)

    def __getitem__(self, k: int) -> int:
        if not 0 <= k < num_pairs(self.n):
            raise IndexError(k)
        return (self.mask >> k) & 1

    def __iter__(self):
        return iter(self.bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CutVector):
            return NotImplemented
        return self.n == other.n and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def __repr__(self) -> str:
        return f"CutVector(n={self.n}, members={{{', '.join(map(str, sorted(self.members)))}}})"


def cut_vector(members: Iterable[int], n: int) -> CutVector:
    """Incidence vector of the cut split off by the given point set."""
    return CutVector(n, members)


def enumerate_cuts(n: int) -> list[CutVector]:
    """All 2**(n-1) - 1 distinct nonzero cuts, one per complement pair.

    Deterministic order: generating subsets of {1, .., n-1} by increasing
    bitmask, which keeps the representative free of the point n.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    cuts = []
    for m in range(1, 1 << (n - 1)):
        members = [p + 1 for p in range(n - 1) if (m >> p) & 1]
        cuts.append(CutVector(n, members))
    return cuts


class TriangleFacet:
    """Signed vector of one triangle inequality x_ij - x_ik - x_jk <= 0.

    The apex pair (i, j) carries +1 and the two pairs through the third
    point k carry -1; all three supported pairs lie in the 3-set {i, j, k}.
    """

    __slots__ = ("n", "i", "j", "k")

    def __init__(self, i: int, j: int, k: int, n: int):
        if len({i, j, k}) != 3 or not all(1 <= p <= n for p in (i, j, k)):
            raise ValueError(f"({i}, {j}, {k}) is not a 3-set inside 1..{n}")
        if i > j:
            i, j = j, i
        self.n = n
        self.i = i
        self.j = j
        self.k = k

    @property
    def apex(self) -> tuple[int, int]:
        return (self.i, self.j)

    @property
    def support(self) -> frozenset[int]:
        return frozenset((self.i, self.j, self.k))

    def entries(self) -> tuple[tuple[int, int], ...]:
        """The three (coordinate, sign) entries."""
        i, j, k, n = self.i, self.j, self.k, self.n
        return (
            (pair_index(i, j, n), 1),
            (pair_index(min(i, k), max(i, k), n), -1),
            (pair_index(min(j, k), max(j, k), n), -1),
        )

    def coeffs(self) -> tuple[int, ...]:
        """Dense coefficient vector over all pairs."""
        out = [0] * num_pairs(self.n)
        for idx, sign in self.entries():
            out[idx] = sign
        return tuple(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TriangleFacet):
            return NotImplemented
        return (self.n, self.i, self.j, self.k) == (other.n, other.i, other.j, other.k)

    def __hash__(self) -> int:
        return hash((self.n, self.i, self.j, self.k))

    def __repr__(self) -> str:
        return f"TriangleFacet({self.i},{self.j};{self.k})"


def enumerate_triangle_facets(n: int) -> list[TriangleFacet]:
    """All 3*C(n, 3) triangle facets, grouped by 3-set, apex pairs in order."""
    if n < 3:
        raise ValueError("need n >= 3")
    facets = []
    for a, b, c in itertools.combinations(range(1, n + 1), 3):
        facets.append(TriangleFacet(a, b, c, n))
        facets.append(TriangleFacet(a, c, b, n))
        facets.append(TriangleFacet(b, c, a, n))
    return facets


class Permutation:
    """Bijection of {1, ..., n}; images[p-1] is the image of p."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError("not a permutation of 1..n")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(1, n + 1))
        for cycle in cycles:
            if len(set(cycle)) != len(cycle):
                raise ValueError(f"repeated point in cycle {cycle}")
            for a, b in zip(cycle, tuple(cycle[1:]) + (cycle[0],)):
                images[a - 1] = b
        return cls(images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, p: int) -> int:
        return self.images[p - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for p, q in enumerate(self.images, start=1):
            inv[q - 1] = p
        return Permutation(inv)

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(p) == self(other(p))."""
        if self.n != other.n:
            raise ValueError("degree mismatch")
        return Permutation(self.images[q - 1] for q in other.images)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def apply_permutation(sigma: Permutation, v: Sequence) -> tuple:
    """Permute a vector over pairs by a point permutation.

    Entry (i, j) of the result is entry (sigma^-1(i), sigma^-1(j)) of v, so
    cuts map to cuts and triangle facets to triangle facets.
    """
    n = sigma.n
    if len(v) != num_pairs(n):
        raise ValueError(f"vector length {len(v)} does not match n={n}")
    inv = sigma.inverse()
    out = []
    for i, j in pair_list(n):
        a, b = inv(i), inv(j)
        if a > b:
            a, b = b, a
        out.append(v[pair_index(a, b, n)])
    return tuple(out)


def permute_cut(sigma: Permutation, cut: CutVector) -> CutVector:
    """The cut generated by the image point set."""
    if sigma.n != cut.n:
        raise ValueError("degree mismatch")
    return CutVector(cut.n, (sigma(p) for p in cut.members))


def permute_facet(sigma: Permutation, facet: TriangleFacet) -> TriangleFacet:
    """The triangle facet with apex and third point mapped through sigma."""
    if sigma.n != facet.n:
        raise ValueError("degree mismatch")
    return TriangleFacet(sigma(facet.i), sigma(facet.j), sigma(facet.k), facet.n)


def switching_reflection(members: Iterable[int], x: Sequence) -> tuple:
    """Replace x_ij by 1 - x_ij on the coordinates cut by the point set.

    An involution; coordinates off the cut are unchanged.  Exact for integer
    and rational entries alike.
    """
    n = _n_from_len(len(x))
    cut = CutVector(n, members)
    return tuple(1 - val if cut[k] else val for k, val in enumerate(x))

"""Subset-lattice utilities and exact binomial identities.

Binomials follow the zero-extension convention binom(u, v) = 0 whenever
v < 0 or v > u (in particular for u < 0 with v >= 0), which is exactly
the convention the alternating-sum identities below rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from .errors import HypothesisRangeError


def binom(u: int, v: int) -> int:
    """u choose v, extended by zero outside 0 <= v <= u."""
    if v < 0 or v > u:
        return 0
    return math.comb(u, v)


class BinomTable:
    """Cached exact binomials for 0 <= u, v <= cap."""

    def __init__(self, cap: int = 64):
        self.cap = cap
        self._rows = [[binom(u, v) for v in range(cap + 1)] for u in range(cap + 1)]

    def __call__(self, u: int, v: int) -> int:
        if 0 <= u <= self.cap and 0 <= v <= self.cap:
            return self._rows[u][v]
        return binom(u, v)


@dataclass(frozen=True)
class SubsetIndex:
    """A strictly increasing subset of {1, ..., ambient}."""

    positions: tuple[int, ...]
    ambient: int

    def __post_init__(self):
        if any(p < 1 or p > self.ambient for p in self.positions):
            raise ValueError(f"positions {self.positions} out of range 1..{self.ambient}")
        if any(a >= b for a, b in zip(self.positions, self.positions[1:])):
            raise ValueError(f"positions {self.positions} not strictly increasing")

    @staticmethod
    def full(n: int) -> "SubsetIndex":
        return SubsetIndex(tuple(range(1, n + 1)), n)

    @staticmethod
    def empty(n: int) -> "SubsetIndex":
        return SubsetIndex((), n)

    def __len__(self) -> int:
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    def subsets(self) -> Iterator["SubsetIndex"]:
        """All subsets of this subset (same ambient), by size then lexicographic."""
        for k in range(len(self.positions) + 1):
            for combo in combinations(self.positions, k):
                yield SubsetIndex(combo, self.ambient)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.positions)) + "}"


def subsets(n: int, max_size: Optional[int] = None) -> Iterator[SubsetIndex]:
    """All subsets of {1, ..., n}, ordered by size then lexicographically."""
    if n < 0:
        raise ValueError("ambient size must be non-negative")
    top = n if max_size is None else min(max_size, n)
    for k in range(top + 1):
        for combo in combinations(range(1, n + 1), k):
            yield SubsetIndex(combo, n)


@dataclass(frozen=True)
class AlternatingSumVerdict:
    part_a: bool
    observed_a: int
    expected_a: int
    part_b: bool
    observed_b: int

    @property
    def passed(self) -> bool:
        return self.part_a and self.part_b


def lemma23_verify(r: int, t: int, s: int = 0) -> AlternatingSumVerdict:
    """Check the two alternating binomial sums used by the depth estimates.

    (a)  sum_d (-1)^d binom(d-1, r) binom(t, d)  ==  -(-1)^r
    (b)  sum_d (-1)^d binom(d+s, r) binom(t, d)  ==  0

    Both are claimed only for 0 <= r < t (and s >= 0).
    """
    if r < 0 or t < 0 or s < 0:
        raise HypothesisRangeError("r, t, s must be non-negative")
    if r >= t:
        raise HypothesisRangeError(f"identity requires r < t, got r={r}, t={t}")
    sum_a = sum((-1) ** d * binom(d - 1, r) * binom(t, d) for d in range(t + 1))
    sum_b = sum((-1) ** d * binom(d + s, r) * binom(t, d) for d in range(t + 1))
    expected_a = -((-1) ** r)
    return AlternatingSumVerdict(
        part_a=(sum_a == expected_a),
        observed_a=sum_a,
        expected_a=expected_a,
        part_b=(sum_b == 0),
        observed_b=sum_b,
    )


def moebius_sign_sum(sigma_prime: tuple[int, ...], sigma: tuple[int, ...]) -> int:
    """sum over sigma' <= S <= sigma of (-1)^{|S|-|sigma'|}; 1 iff sigma'==sigma."""
    free = len(set(sigma) - set(sigma_prime))
    return sum((-1) ** k * binom(free, k) for k in range(free + 1))

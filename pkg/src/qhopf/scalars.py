"""Exact arithmetic in the truncated series ring Q[h]/(h^{N+1}).

A scalar is a tuple of N+1 rational coefficients (for h^0 .. h^N).  All
operations are exact and pure; multiplication is the Cauchy product with
every term of degree > N discarded.  The h-adic valuation of zero is the
sentinel N+1 so that valuation comparisons stay plain integer comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Union

from .errors import NotAUnitError, OrderMismatchError

RationalLike = Union[int, Fraction, str]

DEFAULT_ORDER = 4


def _as_fraction(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class TruncScalar:
    """An element of Q[h]/(h^{N+1}), stored as exact reduced rationals."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated scalar needs at least the h^0 coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(order: int = DEFAULT_ORDER) -> "TruncScalar":
        return TruncScalar((Fraction(0),) * (order + 1))

    @staticmethod
    def one(order: int = DEFAULT_ORDER) -> "TruncScalar":
        return TruncScalar.constant(1, order)

    @staticmethod
    def constant(value: RationalLike, order: int = DEFAULT_ORDER) -> "TruncScalar":
        return TruncScalar((_as_fraction(value),) + (Fraction(0),) * order)

    @staticmethod
    def h_power(k: int, order: int = DEFAULT_ORDER, coeff: RationalLike = 1) -> "TruncScalar":
        """coeff * h^k, or zero when k exceeds the truncation order."""
        if k < 0:
            raise ValueError("negative h-power")
        c = [Fraction(0)] * (order + 1)
        if k <= order:
            c[k] = _as_fraction(coeff)
        return TruncScalar(tuple(c))

    @staticmethod
    def from_coeffs(entries: Mapping[int, RationalLike] | Iterable[RationalLike],
                    order: int = DEFAULT_ORDER) -> "TruncScalar":
        """Build from a degree->coefficient mapping or a dense coefficient list."""
        c = [Fraction(0)] * (order + 1)
        if isinstance(entries, Mapping):
            for k, v in entries.items():
                if 0 <= k <= order:
                    c[k] = _as_fraction(v)
                elif k < 0:
                    raise ValueError("negative h-power")
        else:
            for k, v in enumerate(entries):
                if k > order:
                    break
                c[k] = _as_fraction(v)
        return TruncScalar(tuple(c))

    @staticmethod
    def exp_h(rate: RationalLike, order: int = DEFAULT_ORDER) -> "TruncScalar":
        """The truncated exponential series exp(rate * h)."""
        r = _as_fraction(rate)
        return TruncScalar(tuple(r ** k / factorial(k) for k in range(order + 1)))

    # -- ring structure ----------------------------------------------------

    def _check(self, other: "TruncScalar") -> None:
        if self.order != other.order:
            raise OrderMismatchError(
                f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other: "TruncScalar") -> "TruncScalar":
        self._check(other)
        return TruncScalar(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TruncScalar") -> "TruncScalar":
        self._check(other)
        return TruncScalar(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TruncScalar":
        return TruncScalar(tuple(-a for a in self.coeffs))

    def __mul__(self, other: "TruncScalar") -> "TruncScalar":
        self._check(other)
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncScalar(tuple(out))

    def scale(self, value: RationalLike) -> "TruncScalar":
        v = _as_fraction(value)
        return TruncScalar(tuple(a * v for a in self.coeffs))

    def shift(self, k: int) -> "TruncScalar":
        """Multiply by h^k (k may be negative; dropped low terms must be zero)."""
        n = self.order
        if k >= 0:
            out = [Fraction(0)] * min(k, n + 1) + list(self.coeffs[:n + 1 - k])
            out += [Fraction(0)] * (n + 1 - len(out))
        else:
            if any(self.coeffs[:min(-k, n + 1)]):
                raise ValueError("shift would drop nonzero low-order terms")
            out = list(self.coeffs[-k:]) + [Fraction(0)] * min(-k, n + 1)
        return TruncScalar(tuple(out))

    def inverse(self) -> "TruncScalar":
        """Multiplicative inverse mod h^{N+1}; requires a nonzero constant term."""
        c0 = self.coeffs[0]
        if not c0:
            raise NotAUnitError("series with zero constant term has no inverse")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = 1 / c0
        for k in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                acc += self.coeffs[j] * out[k - j]
            out[k] = -acc / c0
        return TruncScalar(tuple(out))

    def divide(self, other: "TruncScalar") -> "TruncScalar":
        """Exact quotient self/other after cancelling other's h-valuation.

        The top val(other) coefficients of the result are unreliable; callers
        compensate with a construction margin and truncate afterwards.
        """
        self._check(other)
        v = other.valuation()
        if v > other.order:
            raise NotAUnitError("division by zero series")
        return self.shift(-v) * other.shift(-v).inverse()

    # -- structure queries -------------------------------------------------

    def valuation(self) -> int:
        """Least k with a nonzero h^k coefficient; N+1 when zero mod h^{N+1}."""
        for k, a in enumerate(self.coeffs):
            if a:
                return k
        return self.order + 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, order: int) -> "TruncScalar":
        """Re-truncate to a possibly different order (padding with zeros upward)."""
        if order < self.order:
            return TruncScalar(self.coeffs[:order + 1])
        return TruncScalar(self.coeffs + (Fraction(0),) * (order - self.order))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"TruncScalar({self})"

    def __str__(self) -> str:
        parts = []
        for k, a in enumerate(self.coeffs):
            if not a:
                continue
            if k == 0:
                parts.append(str(a))
            elif k == 1:
                parts.append(f"{a}*h" if a != 1 else "h")
            else:
                parts.append(f"{a}*h^{k}" if a != 1 else f"h^{k}")
        return " + ".join(parts) if parts else "0"

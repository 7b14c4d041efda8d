"""Presented algebras with PBW normal forms and sparse tensor elements.

A presentation fixes an ordered generator list, straightening rules for
every out-of-order adjacent generator pair, counit values, coproduct
images, and optionally an R-matrix.  Elements of H^{otimes n} are sparse
maps from n-tuples of normal-form monomials to truncated scalars; all
operations are pure and results are kept in normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .errors import (
    ArityError,
    ContextMismatchError,
    DivergenceError,
    NotAUnitError,
    TermBudgetError,
)
from .scalars import RationalLike, TruncScalar


@dataclass(frozen=True)
class GeneratorTable:
    """Ordered generator names; the list order is the normal-form order."""

    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be distinct")

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def __len__(self) -> int:
        return len(self.names)


@dataclass(frozen=True)
class Monomial:
    """A normal-form generator word g_1^{e_1} ... g_m^{e_m} as exponents."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise ValueError("exponents must be non-negative")

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def is_unit(self) -> bool:
        return self.degree == 0

    def word(self) -> tuple[int, ...]:
        """The fully expanded word of generator indices, in normal order."""
        out: list[int] = []
        for i, e in enumerate(self.exponents):
            out.extend([i] * e)
        return tuple(out)

    @staticmethod
    def from_word(word: Iterable[int], num_generators: int) -> "Monomial":
        exps = [0] * num_generators
        for g in word:
            exps[g] += 1
        return Monomial(tuple(exps))

    @staticmethod
    def unit(num_generators: int) -> "Monomial":
        return Monomial((0,) * num_generators)

    def render(self, table: GeneratorTable) -> str:
        parts = []
        for i, e in enumerate(self.exponents):
            if e == 1:
                parts.append(table.names[i])
            elif e > 1:
                parts.append(f"{table.names[i]}^{e}")
        return "*".join(parts) if parts else "1"


class Presentation:
    """An algebra presentation plus Hopf structure data on its generators.

    relations maps an out-of-order adjacent pair (hi, lo) of generator
    indices (hi after lo in normal order) to the normal form of g_hi * g_lo.
    Rewriting is only tested for confluence (associativity on samples), not
    proven.
    """

    def __init__(
        self,
        generators: GeneratorTable,
        order: int,
        relations: Optional[Mapping[tuple[int, int], "TensorElement"]] = None,
        counit_values: Optional[Mapping[int, TruncScalar]] = None,
        coproduct_images: Optional[Mapping[int, "TensorElement"]] = None,
        r_matrix: Optional["TensorElement"] = None,
        name: str = "presentation",
        rewrite_budget: int = 200_000,
        term_budget: int = 2_000_000,
    ):
        self.generators = generators
        self.order = order
        self.name = name
        self.rewrite_budget = rewrite_budget
        self.term_budget = term_budget
        self.relations: dict[tuple[int, int], TensorElement] = dict(relations or {})
        self.counit_values: dict[int, TruncScalar] = dict(counit_values or {})
        self.coproduct_images: dict[int, TensorElement] = dict(coproduct_images or {})
        self.r_matrix = r_matrix
        self._mono_cache: dict[tuple[Monomial, Monomial], TensorElement] = {}

    # Presentations are compared by identity: one context per build.

    def unit_monomial(self) -> Monomial:
        return Monomial.unit(len(self.generators))

    def generator_monomial(self, index: int) -> Monomial:
        exps = [0] * len(self.generators)
        exps[index] = 1
        return Monomial(tuple(exps))

    def scalar_one(self) -> TruncScalar:
        return TruncScalar.one(self.order)

    def scalar_zero(self) -> TruncScalar:
        return TruncScalar.zero(self.order)

    # -- word rewriting ----------------------------------------------------

    def monomial_product(self, a: Monomial, b: Monomial) -> "TensorElement":
        """Normal form of the concatenation a*b, as an arity-1 element."""
        key = (a, b)
        cached = self._mono_cache.get(key)
        if cached is not None:
            return cached
        result = self._rewrite_word(a.word() + b.word())
        self._mono_cache[key] = result
        return result

    def _rewrite_word(self, word: tuple[int, ...]) -> "TensorElement":
        acc: dict[tuple[Monomial, ...], TruncScalar] = {}
        pending: list[tuple[tuple[int, ...], TruncScalar]] = [(word, self.scalar_one())]
        steps = 0
        ng = len(self.generators)
        while pending:
            w, coeff = pending.pop()
            if coeff.is_zero():
                continue
            steps += 1
            if steps > self.rewrite_budget:
                raise DivergenceError(
                    f"rewriting exceeded {self.rewrite_budget} steps; "
                    f"presentation {self.name!r} looks non-terminating")
            pos = next((t for t in range(len(w) - 1) if w[t] > w[t + 1]), None)
            if pos is None:
                mono = Monomial.from_word(w, ng)
                key = (mono,)
                acc[key] = acc.get(key, self.scalar_zero()) + coeff
                continue
            pair = (w[pos], w[pos + 1])
            rel = self.relations.get(pair)
            if rel is None:
                ghi = self.generators.names[pair[0]]
                glo = self.generators.names[pair[1]]
                raise DivergenceError(
                    f"no straightening rule for {ghi}*{glo} in {self.name!r}")
            for (mono,), c in rel.terms.items():
                pending.append((w[:pos] + mono.word() + w[pos + 2:], coeff * c))
        return TensorElement(self, 1, acc)


class TensorElement:
    """A sparse element of H^{otimes arity} over one presentation.

    Terms map arity-tuples of normal-form monomials to truncated scalars;
    zero coefficients are dropped at construction.
    """

    __slots__ = ("context", "arity", "terms")

    def __init__(
        self,
        context: Presentation,
        arity: int,
        terms: Mapping[tuple[Monomial, ...], TruncScalar],
    ):
        if arity < 1:
            raise ArityError("arity must be at least 1")
        clean: dict[tuple[Monomial, ...], TruncScalar] = {}
        for key, value in terms.items():
            if len(key) != arity:
                raise ArityError(f"key of length {len(key)} in arity-{arity} element")
            if not value.is_zero():
                clean[key] = value
        if len(clean) > context.term_budget:
            raise TermBudgetError(
                f"element with {len(clean)} terms exceeds budget {context.term_budget}")
        self.context = context
        self.arity = arity
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(context: Presentation, arity: int = 1) -> "TensorElement":
        return TensorElement(context, arity, {})

    @staticmethod
    def unit(context: Presentation, arity: int = 1) -> "TensorElement":
        key = (context.unit_monomial(),) * arity
        return TensorElement(context, arity, {key: context.scalar_one()})

    @staticmethod
    def generator(context: Presentation, name: str) -> "TensorElement":
        mono = context.generator_monomial(context.generators.index(name))
        return TensorElement(context, 1, {(mono,): context.scalar_one()})

    @staticmethod
    def scalar_multiple(context: Presentation, value: TruncScalar,
                        arity: int = 1) -> "TensorElement":
        key = (context.unit_monomial(),) * arity
        return TensorElement(context, arity, {key: value})

    # -- linear structure --------------------------------------------------

    def _check_context(self, other: "TensorElement") -> None:
        if self.context is not other.context:
            raise ContextMismatchError("operands come from different presentations")

    def _check_compatible(self, other: "TensorElement") -> None:
        self._check_context(other)
        if self.arity != other.arity:
            raise ArityError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check_compatible(other)
        out = dict(self.terms)
        zero = self.context.scalar_zero()
        for key, value in other.terms.items():
            out[key] = out.get(key, zero) + value
        return TensorElement(self.context, self.arity, out)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __neg__(self) -> "TensorElement":
        return TensorElement(
            self.context, self.arity, {k: -v for k, v in self.terms.items()})

    def scale(self, value: TruncScalar | RationalLike) -> "TensorElement":
        if not isinstance(value, TruncScalar):
            value = TruncScalar.constant(value, self.context.order)
        return TensorElement(
            self.context, self.arity, {k: v * value for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.context is other.context and self.arity == other.arity
                and self.terms == other.terms)

    def __hash__(self):
        return hash((id(self.context), self.arity,
                     frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    # -- multiplicative structure ------------------------------------------

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        """Factorwise product, straightened to normal form, bilinear."""
        self._check_compatible(other)
        ctx = self.context
        zero = ctx.scalar_zero()
        out: dict[tuple[Monomial, ...], TruncScalar] = {}
        for key1, s1 in self.terms.items():
            for key2, s2 in other.terms.items():
                coeff = s1 * s2
                if coeff.is_zero():
                    continue
                # Distribute over the normal forms of each leg product.
                partial: list[tuple[tuple[Monomial, ...], TruncScalar]] = [((), coeff)]
                for m1, m2 in zip(key1, key2):
                    leg = ctx.monomial_product(m1, m2)
                    nxt = []
                    for prefix, c in partial:
                        for (mono,), lc in leg.terms.items():
                            cc = c * lc
                            if not cc.is_zero():
                                nxt.append((prefix + (mono,), cc))
                    partial = nxt
                    if not partial:
                        break
                for key, c in partial:
                    out[key] = out.get(key, zero) + c
        return TensorElement(ctx, self.arity, out)

    def inverse(self) -> "TensorElement":
        """Inverse of c*(unit + higher order), by truncated geometric series."""
        ctx = self.context
        unit_key = (ctx.unit_monomial(),) * self.arity
        c0 = Fraction(0)
        for key, value in self.terms.items():
            head = value.coeffs[0]
            if not head:
                continue
            if key != unit_key:
                raise NotAUnitError(
                    "h^0 part is not a scalar multiple of the unit tensor")
            c0 = head
        if not c0:
            raise NotAUnitError("h^0 part vanishes; element is not invertible here")
        unit = TensorElement.unit(ctx, self.arity)
        rest = self.scale(Fraction(1, 1) / c0) - unit
        out = unit
        power = unit
        sign = 1
        for _ in range(ctx.order):
            power = power * rest
            if power.is_zero():
                break
            sign = -sign
            out = out + power.scale(sign)
        return out.scale(Fraction(1, 1) / c0)

    # -- tensor-leg operations ---------------------------------------------

    def embed(self, positions: Iterable[int], ambient: int) -> "TensorElement":
        """Place leg m at position positions[m] inside arity `ambient`, units elsewhere.

        Positions must be distinct and in range but need not be increasing;
        a decreasing pair therefore realizes the embedded flip.
        """
        pos = tuple(positions)
        if len(pos) != self.arity:
            raise ArityError(f"{len(pos)} positions for arity-{self.arity} element")
        if len(set(pos)) != len(pos) or any(p < 1 or p > ambient for p in pos):
            raise ArityError(f"bad embedding positions {pos} in 1..{ambient}")
        ctx = self.context
        unit = ctx.unit_monomial()
        out: dict[tuple[Monomial, ...], TruncScalar] = {}
        for key, value in self.terms.items():
            monos = [unit] * ambient
            for m, p in zip(key, pos):
                monos[p - 1] = m
            out[tuple(monos)] = value
        return TensorElement(ctx, ambient, out)

    def flip(self, p: int, q: int) -> "TensorElement":
        """Transpose tensor legs p and q (1-based)."""
        if not (1 <= p <= self.arity and 1 <= q <= self.arity):
            raise ArityError(f"flip positions ({p},{q}) out of range 1..{self.arity}")
        out: dict[tuple[Monomial, ...], TruncScalar] = {}
        zero = self.context.scalar_zero()
        for key, value in self.terms.items():
            lst = list(key)
            lst[p - 1], lst[q - 1] = lst[q - 1], lst[p - 1]
            newkey = tuple(lst)
            out[newkey] = out.get(newkey, zero) + value
        return TensorElement(self.context, self.arity, out)

    def permute(self, perm: tuple[int, ...]) -> "TensorElement":
        """Send leg i to position perm[i-1] (1-based permutation)."""
        if sorted(perm) != list(range(1, self.arity + 1)):
            raise ArityError(f"{perm} is not a permutation of 1..{self.arity}")
        out: dict[tuple[Monomial, ...], TruncScalar] = {}
        zero = self.context.scalar_zero()
        for key, value in self.terms.items():
            lst: list[Monomial] = [key[0]] * self.arity
            for i, m in enumerate(key):
                lst[perm[i] - 1] = m
            newkey = tuple(lst)
            out[newkey] = out.get(newkey, zero) + value
        return TensorElement(self.context, self.arity, out)

    def h_coefficient(self, power: int) -> "TensorElement":
        """The h^power coefficient, re-embedded in degree 0 at the same order."""
        if not (0 <= power <= self.context.order):
            raise ArityError(
                f"h-power {power} outside 0..{self.context.order}")
        out = {}
        for key, value in self.terms.items():
            c = value.coeffs[power]
            if c:
                out[key] = TruncScalar.constant(c, self.context.order)
        return TensorElement(self.context, self.arity, out)

    def valuation(self) -> int:
        """Min h-adic valuation over all coefficients; N+1 for the zero element."""
        v = self.context.order + 1
        for value in self.terms.values():
            v = min(v, value.valuation())
            if v == 0:
                break
        return v

    def sorted_terms(self) -> list[tuple[tuple[Monomial, ...], TruncScalar]]:
        """Terms in a deterministic (lexicographic) order for printing/reports."""
        return sorted(self.terms.items(),
                      key=lambda kv: tuple(m.exponents for m in kv[0]))

    def __repr__(self) -> str:
        from .parsing import print_element
        return f"<{print_element(self)}>"


# Operation-style aliases matching the library's documented surface.

def normalize_product(a: TensorElement, b: TensorElement) -> TensorElement:
    return a * b


def tensor_multiply(a: TensorElement, b: TensorElement) -> TensorElement:
    return a * b


def tensor_invert(a: TensorElement) -> TensorElement:
    return a.inverse()


def apply_flip(a: TensorElement, p: int, q: int) -> TensorElement:
    return a.flip(p, q)


def embed_j_sigma(a: TensorElement, positions: Iterable[int], ambient: int) -> TensorElement:
    return a.embed(positions, ambient)


def h_coefficient(a: TensorElement, power: int) -> TensorElement:
    return a.h_coefficient(power)


# An element of H itself is just the arity-1 case.
AlgebraElement = TensorElement

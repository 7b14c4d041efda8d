"""Seeded test-corpus generation for the verification suites.

All generators are driven by an explicit `random.Random` so a fixed seed
reproduces every corpus bit-for-bit.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import Optional

from .algebra import Monomial, Presentation, TensorElement
from .braiding import QTContext
from .hopf import HopfContext, drinfeld_gate
from .scalars import TruncScalar


def random_monomial(pres: Presentation, rng: random.Random, max_degree: int = 2) -> Monomial:
    ng = len(pres.generators)
    degree = rng.randint(0, max_degree)
    exps = [0] * ng
    for _ in range(degree):
        exps[rng.randrange(ng)] += 1
    return Monomial(tuple(exps))


def random_element(
    pres: Presentation,
    rng: random.Random,
    arity: int = 1,
    terms: int = 3,
    max_degree: int = 2,
    max_h_power: Optional[int] = None,
) -> TensorElement:
    """A random sparse element with small rational coefficients."""
    if max_h_power is None:
        max_h_power = pres.order
    acc: dict[tuple[Monomial, ...], TruncScalar] = {}
    zero = pres.scalar_zero()
    for _ in range(terms):
        key = tuple(random_monomial(pres, rng, max_degree) for _ in range(arity))
        num = rng.randint(-9, 9) or 1
        coeff = TruncScalar.h_power(
            rng.randint(0, max_h_power), pres.order,
            Fraction(num, rng.randint(1, 5)))
        acc[key] = acc.get(key, zero) + coeff
    return TensorElement(pres, arity, acc)


def depth_matched_monomials(pres: Presentation, arity: int, max_degree: int = 3):
    """All h^d * (monomial tuple of total degree d) for 1 <= d <= max_degree.

    These are the canonical depth-filtered elements: each extra generator
    factor is paid for by one extra power of h."""
    ng = len(pres.generators)
    out: list[TensorElement] = []
    singles = [pres.generator_monomial(i) for i in range(ng)]
    unit = pres.unit_monomial()

    def monomials_of_degree(d: int) -> list[Monomial]:
        if d == 0:
            return [unit]
        result = []
        for combo in product(range(ng), repeat=d):
            exps = [0] * ng
            for g in combo:
                exps[g] += 1
            result.append(Monomial(tuple(exps)))
        return sorted(set(result), key=lambda m: m.exponents)

    for d in range(1, max_degree + 1):
        if d > pres.order:
            break
        seen: set[tuple] = set()
        for split in product(range(d + 1), repeat=arity):
            if sum(split) != d:
                continue
            for legs in product(*(monomials_of_degree(s) for s in split)):
                if legs in seen:
                    continue
                seen.add(legs)
                out.append(TensorElement(
                    pres, arity, {legs: TruncScalar.h_power(d, pres.order)}))
    return out


def certified_corpus(
    ctx: HopfContext,
    rng: random.Random,
    size: int,
    n_max: int,
    max_degree: int = 3,
) -> list[TensorElement]:
    """Gate-certified elements: depth-matched monomials plus random certified
    combinations, each re-verified by the gate before use."""
    base = depth_matched_monomials(ctx.presentation, ctx.width, max_degree)
    pool = [e for e in base if drinfeld_gate(ctx, e, n_max).verdict]
    out = list(pool[:size])
    attempts = 0
    while len(out) < size and attempts < 10 * size:
        attempts += 1
        picks = rng.sample(pool, k=min(len(pool), rng.randint(2, 3)))
        combo = TensorElement.zero(ctx.presentation, ctx.width)
        for p in picks:
            combo = combo + p.scale(Fraction(rng.randint(-5, 5) or 1,
                                             rng.randint(1, 4)))
        if not combo.is_zero() and drinfeld_gate(ctx, combo, n_max).verdict:
            out.append(combo)
    return out[:size]


def qt_sample(qt: QTContext, rng: random.Random, size: int,
              max_degree: int = 3) -> list[TensorElement]:
    """Random width-1 elements for the intertwiner axiom tests."""
    pres = qt.presentation
    out = [TensorElement.generator(pres, n) for n in pres.generators.names]
    while len(out) < size:
        out.append(random_element(pres, rng, terms=2, max_degree=max_degree))
    return out[:size]

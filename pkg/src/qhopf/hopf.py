"""Iterated coproducts, subset coproducts, and the depth-gate machinery.

All operations are generic over a HopfContext whose `width` counts base
tensor legs per coalgebra copy: width 1 is the algebra H itself, width 2
is its tensor square with the twisted coproduct.  This makes the depth
filtration one code path for both H and H otimes H.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .algebra import Monomial, Presentation, TensorElement
from .combinatorics import SubsetIndex
from .errors import ArityError
from .scalars import TruncScalar


@dataclass
class HopfContext:
    """An algebra presentation packaged with coproduct, counit, and unit.

    `coproduct` maps an arity-`width` element to arity `2*width`;
    `counit` maps it to a truncated scalar.  Both must be linear and
    multiplicative (verified by `hopf_axioms_check`, not assumed).
    """

    presentation: Presentation
    width: int
    coproduct: Callable[[TensorElement], TensorElement]
    counit: Callable[[TensorElement], TruncScalar]
    label: str = "H"

    @property
    def order(self) -> int:
        return self.presentation.order

    def unit(self, copies: int = 1) -> TensorElement:
        return TensorElement.unit(self.presentation, copies * self.width)

    def check_element(self, a: TensorElement) -> None:
        if a.context is not self.presentation:
            raise ArityError("element does not belong to this context")

    # -- copy-wise application ---------------------------------------------

    def split_copy(self, a: TensorElement, copy: int, copies: int) -> TensorElement:
        """Apply the coproduct to one copy of an arity copies*width element."""
        w = self.width
        if a.arity != copies * w:
            raise ArityError(f"arity {a.arity} is not {copies} copies of width {w}")
        if not (1 <= copy <= copies):
            raise ArityError(f"copy index {copy} out of range 1..{copies}")
        lo = (copy - 1) * w
        hi = copy * w
        ctx = self.presentation
        zero = ctx.scalar_zero()
        out: dict[tuple[Monomial, ...], TruncScalar] = {}
        for key, value in a.terms.items():
            piece = TensorElement(ctx, w, {key[lo:hi]: value})
            split = self.coproduct(piece)
            for skey, svalue in split.terms.items():
                newkey = key[:lo] + skey + key[hi:]
                out[newkey] = out.get(newkey, zero) + svalue
        return TensorElement(ctx, (copies + 1) * w, out)

    def counit_copy(self, a: TensorElement, copy: int, copies: int) -> TensorElement:
        """Apply the counit to one copy, contracting the element by one copy."""
        w = self.width
        if a.arity != copies * w or copies < 2:
            raise ArityError(f"arity {a.arity} is not >=2 copies of width {w}")
        lo = (copy - 1) * w
        hi = copy * w
        ctx = self.presentation
        zero = ctx.scalar_zero()
        out: dict[tuple[Monomial, ...], TruncScalar] = {}
        for key, value in a.terms.items():
            piece = TensorElement(ctx, w, {key[lo:hi]: ctx.scalar_one()})
            scalar = self.counit(piece) * value
            if scalar.is_zero():
                continue
            newkey = key[:lo] + key[hi:]
            out[newkey] = out.get(newkey, zero) + scalar
        return TensorElement(ctx, (copies - 1) * w, out)


def algebra_context(pres: Presentation, label: str = "H") -> HopfContext:
    """The width-1 context of a presentation, with coproduct and counit
    extended linearly and multiplicatively from the generator images."""
    cop_cache: dict[Monomial, TensorElement] = {}
    eps_cache: dict[Monomial, TruncScalar] = {}

    def cop_mono(m: Monomial) -> TensorElement:
        cached = cop_cache.get(m)
        if cached is not None:
            return cached
        out = TensorElement.unit(pres, 2)
        for gi, e in enumerate(m.exponents):
            if not e:
                continue
            image = pres.coproduct_images[gi]
            for _ in range(e):
                out = out * image
        cop_cache[m] = out
        return out

    def eps_mono(m: Monomial) -> TruncScalar:
        cached = eps_cache.get(m)
        if cached is not None:
            return cached
        out = pres.scalar_one()
        for gi, e in enumerate(m.exponents):
            for _ in range(e):
                out = out * pres.counit_values[gi]
                if out.is_zero():
                    break
        eps_cache[m] = out
        return out

    def coproduct(a: TensorElement) -> TensorElement:
        if a.arity != 1:
            raise ArityError("width-1 coproduct expects an arity-1 element")
        out = TensorElement.zero(pres, 2)
        for (m,), value in a.terms.items():
            out = out + cop_mono(m).scale(value)
        return out

    def counit(a: TensorElement) -> TruncScalar:
        if a.arity != 1:
            raise ArityError("width-1 counit expects an arity-1 element")
        out = pres.scalar_zero()
        for (m,), value in a.terms.items():
            out = out + eps_mono(m) * value
        return out

    return HopfContext(pres, 1, coproduct, counit, label)


# -- the coproduct tower ---------------------------------------------------

def coproduct_iter(ctx: HopfContext, a: TensorElement, n: int):
    """The n-fold coproduct: a scalar for n=0, the identity for n=1, the
    coproduct for n=2, and the left-leg recursion beyond."""
    ctx.check_element(a)
    if n < 0:
        raise ArityError("coproduct iterate needs n >= 0")
    if a.arity != ctx.width:
        raise ArityError(f"expected an arity-{ctx.width} element")
    if n == 0:
        return ctx.counit(a)
    out = a
    for copies in range(1, n):
        out = ctx.split_copy(out, 1, copies)
    return out


def delta_upper(ctx: HopfContext, a: TensorElement, sigma: SubsetIndex) -> TensorElement:
    """The subset coproduct: embed the |sigma|-fold coproduct at sigma."""
    ctx.check_element(a)
    n = sigma.ambient
    k = len(sigma)
    w = ctx.width
    if k == 0:
        return ctx.unit(n).scale(ctx.counit(a))
    body = coproduct_iter(ctx, a, k)
    legs: list[int] = []
    for copy_pos in sigma:
        legs.extend(range((copy_pos - 1) * w + 1, copy_pos * w + 1))
    return body.embed(legs, n * w)


def delta_lower(ctx: HopfContext, a: TensorElement, sigma: SubsetIndex) -> TensorElement:
    """The alternating subset sum over all subsets of sigma."""
    ctx.check_element(a)
    k = len(sigma)
    out = TensorElement.zero(ctx.presentation, max(sigma.ambient, 1) * ctx.width)
    for sub in sigma.subsets():
        term = delta_upper(ctx, a, sub)
        if (k - len(sub)) % 2:
            term = -term
        out = out + term
    return out


def delta_n(ctx: HopfContext, a: TensorElement, n: int) -> TensorElement:
    """The n-th reduced coproduct (the full-set alternating sum)."""
    return delta_lower(ctx, a, SubsetIndex.full(n))


def delta_n_direct(ctx: HopfContext, a: TensorElement, n: int) -> TensorElement:
    """Independent code path for delta_n: the direct alternating sum of
    subset coproducts over all subsets of {1..n}, used as a consistency
    oracle against the subset-restricted implementation."""
    from .combinatorics import subsets

    out = TensorElement.zero(ctx.presentation, n * ctx.width)
    for sigma in subsets(n):
        term = delta_upper(ctx, a, sigma)
        if (n - len(sigma)) % 2:
            term = -term
        out = out + term
    return out


def moebius_reconstruct(
    ctx: HopfContext, a: TensorElement, sigma: SubsetIndex
) -> tuple[TensorElement, bool]:
    """Sum the reduced coproducts over subsets of sigma and compare with
    the subset coproduct; the equality is a theorem, so False flags a bug."""
    total = TensorElement.zero(ctx.presentation, max(sigma.ambient, 1) * ctx.width)
    for sub in sigma.subsets():
        total = total + delta_lower(ctx, a, sub)
    return total, total == delta_upper(ctx, a, sigma)


# -- the membership gate ---------------------------------------------------

@dataclass(frozen=True)
class GateCertificate:
    """Truncation-order evidence that delta_n(subject) has h-valuation >= n.

    A pass certifies membership in the depth-filtered subalgebra at the
    working truncation order only, for 1 <= n <= n_max.
    """

    subject: TensorElement
    n_max: int
    order: int
    failures: tuple[tuple[int, int], ...]  # (n, observed valuation)

    @property
    def verdict(self) -> bool:
        return not self.failures


def drinfeld_gate(ctx: HopfContext, a: TensorElement, n_max: Optional[int] = None) -> GateCertificate:
    """Test valuation(delta_n(a)) >= min(n, N+1) for n = 1 .. n_max."""
    ctx.check_element(a)
    if n_max is None:
        n_max = ctx.order + 2
    if n_max < 1:
        raise ArityError("gate needs n_max >= 1")
    cap = ctx.order + 1
    failures = []
    for n in range(1, n_max + 1):
        v = delta_n(ctx, a, n).valuation()
        if v < min(n, cap):
            failures.append((n, v))
    return GateCertificate(a, n_max, ctx.order, tuple(failures))


# -- structural validation -------------------------------------------------

@dataclass(frozen=True)
class CheckRecord:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class CheckReport:
    label: str
    records: tuple[CheckRecord, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]


def hopf_axioms_check(
    ctx: HopfContext, sample: Optional[Sequence[TensorElement]] = None
) -> CheckReport:
    """Verify coassociativity, the counit axioms, and that the coproduct and
    counit are algebra morphisms, on generators plus an optional sample."""
    pres = ctx.presentation
    base: list[TensorElement]
    if ctx.width == 1:
        base = [TensorElement.generator(pres, name) for name in pres.generators.names]
    else:
        base = []
    elements = base + list(sample or [])
    records: list[CheckRecord] = []
    from .parsing import print_element

    for i, a in enumerate(elements):
        tag = f"[{i}]"
        cop = ctx.coproduct(a)
        left = ctx.split_copy(cop, 1, 2)
        right = ctx.split_copy(cop, 2, 2)
        records.append(CheckRecord(
            f"coassociativity{tag}", left == right,
            "" if left == right else print_element(a)))
        eps_left = ctx.counit_copy(cop, 1, 2)
        eps_right = ctx.counit_copy(cop, 2, 2)
        ok = eps_left == a and eps_right == a
        records.append(CheckRecord(
            f"counit{tag}", ok, "" if ok else print_element(a)))
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            prod = a * b
            cop_ok = ctx.coproduct(prod) == ctx.coproduct(a) * ctx.coproduct(b)
            eps_ok = ctx.counit(prod) == ctx.counit(a) * ctx.counit(b)
            records.append(CheckRecord(
                f"coproduct-morphism[{i},{j}]", cop_ok,
                "" if cop_ok else print_element(prod)))
            records.append(CheckRecord(
                f"counit-morphism[{i},{j}]", eps_ok,
                "" if eps_ok else print_element(prod)))
    unit = ctx.unit()
    records.append(CheckRecord(
        "coproduct-unit", ctx.coproduct(unit) == ctx.unit(2), ""))
    records.append(CheckRecord(
        "counit-unit", ctx.counit(unit) == pres.scalar_one(), ""))
    return CheckReport(ctx.label, tuple(records))

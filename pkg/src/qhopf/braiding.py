"""Twisted coproduct, R-matrix subset products, and braiding verification.

Houses the quasitriangular context (H, R) together with the derived
tensor-square context, the embedded R products indexed by subsets, the
conjugation operator, and the falsifiable checks for the coproduct/product
identities and the braided-operator axioms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .algebra import Monomial, Presentation, TensorElement
from .combinatorics import SubsetIndex, binom, subsets
from .errors import ArityError, GateRequiredError, PresetInvalidError
from .hopf import (
    CheckRecord,
    CheckReport,
    GateCertificate,
    HopfContext,
    algebra_context,
    coproduct_iter,
    delta_upper,
    drinfeld_gate,
)
from .scalars import TruncScalar


def twisted_context(base: HopfContext, label: str = "H#H") -> HopfContext:
    """The tensor square of a width-1 context with the leg-2/3 twist.

    On decomposables the coproduct sends a # b to a(1) # b(1) # a(2) # b(2);
    the counit is the product of the base counits."""
    if base.width != 1:
        raise ArityError("twisted context is built over a width-1 context")
    pres = base.presentation

    def coproduct(a: TensorElement) -> TensorElement:
        if a.arity != 2:
            raise ArityError("twisted coproduct expects an arity-2 element")
        # (id x Delta) then (Delta x id x id) then swap legs 2 and 3.
        step = base.split_copy(a, 2, 2)
        step = base.split_copy(step, 1, 3)
        return step.flip(2, 3)

    def counit(a: TensorElement) -> TruncScalar:
        if a.arity != 2:
            raise ArityError("twisted counit expects an arity-2 element")
        out = pres.scalar_zero()
        for key, value in a.terms.items():
            left = TensorElement(pres, 1, {key[:1]: pres.scalar_one()})
            right = TensorElement(pres, 1, {key[1:]: pres.scalar_one()})
            out = out + base.counit(left) * base.counit(right) * value
        return out

    return HopfContext(pres, 2, coproduct, counit, label)


@dataclass
class QTContext:
    """A quasitriangular pair (H, R) with the derived tensor-square context."""

    hopf: HopfContext
    R: TensorElement
    R_inv: TensorElement = field(init=False)
    twisted: HopfContext = field(init=False)

    def __post_init__(self):
        if self.hopf.width != 1:
            raise ArityError("QTContext expects the width-1 context of H")
        if self.R.arity != 2:
            raise ArityError("R must live in H # H")
        unit_key = (self.hopf.presentation.unit_monomial(),) * 2
        head = self.R.h_coefficient(0)
        if list(head.terms.keys()) != [unit_key] or head.terms[unit_key].coeffs[0] != 1:
            raise PresetInvalidError("the h^0 part of R must be the unit tensor")
        self.R_inv = self.R.inverse()
        self.twisted = twisted_context(self.hopf)

    @property
    def presentation(self) -> Presentation:
        return self.hopf.presentation

    # -- operators ----------------------------------------------------------

    def ad_r(self, a: TensorElement) -> TensorElement:
        """Conjugation by R on H # H."""
        if a.arity != 2:
            raise ArityError("ad_r acts on arity-2 elements")
        return self.R * a * self.R_inv

    def ad_r_inverse(self, a: TensorElement) -> TensorElement:
        return self.R_inv * a * self.R

    def classical_r_extract(self) -> TensorElement:
        """The h-linear coefficient of R: the first-order shadow of the braiding."""
        return self.R.h_coefficient(1)

    def embedded_r(self, first: int, second: int, ambient: int) -> TensorElement:
        """R with leg 1 at `first` and leg 2 at `second` inside arity `ambient`.

        `first > second` is allowed and means the flipped embedding, which is
        how descending-index factors in the subset products are read."""
        return self.R.embed((first, second), ambient)

    def r_sigma(self, sigma: SubsetIndex) -> TensorElement:
        """The ordered product of |sigma|^2 embedded R factors in H^{2n}.

        Row a = 1..k contributes factors with first index 2*i_a - 1 and second
        index 2*i_b for b = k down to 1, multiplied left to right."""
        n = sigma.ambient
        pres = self.presentation
        out = TensorElement.unit(pres, 2 * n)
        pos = sigma.positions
        k = len(pos)
        for a in range(k):
            for b in range(k - 1, -1, -1):
                factor = self.embedded_r(2 * pos[a] - 1, 2 * pos[b], 2 * n)
                out = out * factor
        return out

    def require_gate(self, a: TensorElement, n_max: int,
                     certificate: Optional[GateCertificate] = None) -> GateCertificate:
        """Return a passing twisted-context certificate for `a` or raise."""
        if certificate is not None:
            if certificate.subject != a or certificate.n_max < n_max:
                certificate = None
        if certificate is None:
            certificate = drinfeld_gate(self.twisted, a, n_max)
        if not certificate.verdict:
            raise GateRequiredError(
                f"element is not gate-certified (failures {certificate.failures})")
        return certificate


def twisted_coproduct(qt: QTContext, a: TensorElement) -> TensorElement:
    return qt.twisted.coproduct(a)


# -- quasitriangularity ------------------------------------------------------

def qt_axioms_check(qt: QTContext, test_set: Sequence[TensorElement]) -> CheckReport:
    """Check the three R-matrix axioms and the Yang-Baxter equation.

    The intertwiner axiom is tested on every element of `test_set`; the two
    coproduct-splitting axioms and the YBE are element identities in H^3."""
    base = qt.hopf
    records: list[CheckRecord] = []
    from .parsing import print_element

    for i, a in enumerate(test_set):
        lhs = qt.ad_r(base.coproduct(a))
        rhs = base.coproduct(a).flip(1, 2)
        residual = lhs - rhs
        records.append(CheckRecord(
            f"intertwiner[{i}]", residual.is_zero(),
            "" if residual.is_zero()
            else f"element {print_element(a)}; residual valuation {residual.valuation()}"))

    r12 = qt.R.embed((1, 2), 3)
    r13 = qt.R.embed((1, 3), 3)
    r23 = qt.R.embed((2, 3), 3)
    split_left = base.split_copy(qt.R, 1, 2)
    records.append(CheckRecord(
        "coproduct-split-left", split_left == r13 * r23,
        "" if split_left == r13 * r23
        else f"residual valuation {(split_left - r13 * r23).valuation()}"))
    split_right = base.split_copy(qt.R, 2, 2)
    records.append(CheckRecord(
        "coproduct-split-right", split_right == r13 * r12,
        "" if split_right == r13 * r12
        else f"residual valuation {(split_right - r13 * r12).valuation()}"))
    ybe_l = r12 * r13 * r23
    ybe_r = r23 * r13 * r12
    records.append(CheckRecord(
        "yang-baxter", ybe_l == ybe_r,
        "" if ybe_l == ybe_r
        else f"residual valuation {(ybe_l - ybe_r).valuation()}"))
    inv_ok = qt.R * qt.R_inv == TensorElement.unit(qt.presentation, 2)
    records.append(CheckRecord("r-invertible", inv_ok, ""))
    return CheckReport("quasitriangularity", tuple(records))


# -- coproducts of R ---------------------------------------------------------

def prop_coproduct_of_r(qt: QTContext, n: int) -> CheckReport:
    """For every subset of {1..n}: the twisted subset coproduct of R equals
    the ordered product of embedded R factors, exactly at truncation order."""
    if n < 1:
        raise ArityError("need n >= 1")
    records: list[CheckRecord] = []
    for sigma in subsets(n):
        lhs = delta_upper(qt.twisted, qt.R, sigma)
        rhs = qt.r_sigma(sigma)
        ok = lhs == rhs
        records.append(CheckRecord(
            f"r-subset-product[n={n},sigma={sigma}]", ok,
            "" if ok else f"residual valuation {(lhs - rhs).valuation()}"))
    return CheckReport("r-subset-product", tuple(records))


# -- truncated expansion of subset coproducts --------------------------------

def prop_truncated_expansion(
    qt: QTContext,
    a: TensorElement,
    sigma: SubsetIndex,
    i: int,
    n_max: Optional[int] = None,
    certificate: Optional[GateCertificate] = None,
) -> CheckRecord:
    """For gate-certified a and |sigma| > i: the subset coproduct agrees with
    its alternating-binomial expansion over subsets of size <= i, up to h^{i+1}."""
    if len(sigma) <= i:
        raise ArityError(f"need |sigma| > i, got |sigma|={len(sigma)}, i={i}")
    if n_max is None:
        n_max = max(len(sigma), 1)
    qt.require_gate(a, n_max, certificate)
    ctx = qt.twisted
    lhs = delta_upper(ctx, a, sigma)
    total = TensorElement.zero(qt.presentation, sigma.ambient * 2)
    k = len(sigma)
    for sub in sigma.subsets():
        s = len(sub)
        if s > i:
            continue
        coeff = (-1) ** (i - s) * binom(k - 1 - s, i - s)
        if coeff:
            total = total + delta_upper(ctx, a, sub).scale(coeff)
    residual = lhs - total
    v = residual.valuation()
    ok = v >= i + 1
    return CheckRecord(
        f"truncated-expansion[sigma={sigma},i={i}]", ok,
        f"residual valuation {v}, required >= {i + 1}")


# -- stability of the gate under conjugation ---------------------------------

def prop_conjugation_stability(
    qt: QTContext,
    a: TensorElement,
    n_max: int,
    certificate: Optional[GateCertificate] = None,
) -> GateCertificate:
    """Gate the conjugate R a R^{-1} of a gate-certified a in the twisted
    context.  The theorem says it must pass; a failure is a falsification."""
    qt.require_gate(a, n_max, certificate)
    return drinfeld_gate(qt.twisted, qt.ad_r(a), n_max)


# -- braided operator axioms --------------------------------------------------

@dataclass(frozen=True)
class BraidOperatorReport:
    """Axiom-by-axiom results for the conjugation operator on the certified
    corpus, plus the flip-difference witness."""

    records: tuple[CheckRecord, ...]
    witness: Optional[str]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records) and self.witness is not None


def braided_axioms_check(
    qt: QTContext,
    corpus2: Sequence[TensorElement],
    corpus1: Sequence[TensorElement] = (),
    n_max: Optional[int] = None,
) -> BraidOperatorReport:
    """Check the braided-algebra axioms for conjugation by R.

    corpus2 holds gate-certified arity-2 elements (operator inputs); corpus1
    holds certified arity-1 elements for the intertwiner axiom.  The operator
    Yang-Baxter equation is evaluated on arity-3 elements derived from corpus2.
    """
    base = qt.hopf
    if n_max is None:
        n_max = base.order + 2
    records: list[CheckRecord] = []
    from .parsing import print_element

    def conj(t: TensorElement, first: int, second: int) -> TensorElement:
        r = qt.embedded_r(first, second, t.arity)
        rinv = qt.R_inv.embed((first, second), t.arity)
        return r * t * rinv

    def op_23(t: TensorElement) -> TensorElement:
        return conj(t, 2, 3)

    def op_12(t: TensorElement) -> TensorElement:
        return conj(t, 1, 2)

    def op_13(t: TensorElement) -> TensorElement:
        # Realized through flips, keeping the operator picture literal.
        return op_23(t.flip(1, 2)).flip(1, 2)

    for i, a in enumerate(corpus1):
        cert = drinfeld_gate(base, a, n_max)
        if not cert.verdict:
            raise GateRequiredError(f"corpus1[{i}] is not gate-certified")
        lhs = qt.ad_r(base.coproduct(a))
        rhs = base.coproduct(a).flip(1, 2)
        ok = lhs == rhs
        records.append(CheckRecord(
            f"op-intertwiner[{i}]", ok,
            "" if ok else f"element {print_element(a)}"))

    ybe_inputs: list[TensorElement] = []
    for i, x in enumerate(corpus2):
        qt.require_gate(x, n_max)
        rx = qt.ad_r(x)
        left2 = base.split_copy(rx, 1, 2)
        right2 = op_13(op_23(base.split_copy(x, 1, 2)))
        ok2 = left2 == right2
        records.append(CheckRecord(
            f"op-split-left[{i}]", ok2,
            "" if ok2 else f"residual valuation {(left2 - right2).valuation()}"))
        left3 = base.split_copy(rx, 2, 2)
        right3 = op_13(op_12(base.split_copy(x, 2, 2)))
        ok3 = left3 == right3
        records.append(CheckRecord(
            f"op-split-right[{i}]", ok3,
            "" if ok3 else f"residual valuation {(left3 - right3).valuation()}"))
        ybe_inputs.append(base.split_copy(x, 1, 2))

    for i, y in enumerate(ybe_inputs):
        lhs = op_12(op_13(op_23(y)))
        rhs = op_23(op_13(op_12(y)))
        ok = lhs == rhs
        records.append(CheckRecord(
            f"op-yang-baxter[{i}]", ok,
            "" if ok else f"residual valuation {(lhs - rhs).valuation()}"))

    witness = _flip_difference_witness(qt, corpus2)
    records.append(CheckRecord(
        "differs-from-flip", witness is not None,
        witness or "operator agrees with the flip on every tested element"))
    return BraidOperatorReport(tuple(records), witness)


def _flip_difference_witness(
    qt: QTContext, corpus2: Sequence[TensorElement]
) -> Optional[str]:
    """Exhibit one element where conjugation by R differs from the flip."""
    from .parsing import print_element

    pres = qt.presentation
    candidates: list[TensorElement] = []
    names = pres.generators.names
    for n1 in names:
        for n2 in names:
            g1 = TensorElement.generator(pres, n1).embed((1,), 2)
            g2 = TensorElement.generator(pres, n2).embed((2,), 2)
            candidates.append(g1 * g2)
    candidates.extend(corpus2)
    for w in candidates:
        if qt.ad_r(w) != w.flip(1, 2):
            return print_element(w)
    return None

"""Built-in quasitriangular presentations, plus user presentation loading.

Three presets are shipped:

* ``trivial``  -- two commuting primitive generators, R = 1 # 1.
* ``abelian``  -- the same algebra with R = exp(h * x # y).
* ``qsl2``     -- a rank-one quantized enveloping algebra with generators
  F, E, K-free Cartan element H, deformed commutator, and the standard
  Cartan-exponential times q-exponential R-matrix.

The qsl2 structure constants involve quotients of series with h-valuation
one, so construction runs at order N + margin and truncates back to N.
Every preset is validated against the Hopf and quasitriangularity axiom
checkers before being returned.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Optional

from .algebra import GeneratorTable, Monomial, Presentation, TensorElement
from .braiding import QTContext, qt_axioms_check
from .errors import ConfigError, PresetInvalidError
from .hopf import HopfContext, algebra_context, hopf_axioms_check
from .scalars import TruncScalar

PRESET_IDS = ("trivial", "abelian", "qsl2")

DEFAULT_MARGIN = 2


@dataclass(frozen=True)
class PresetDescriptor:
    preset_id: str
    order: int
    internal_margin: int = DEFAULT_MARGIN

    def __post_init__(self):
        if self.preset_id not in PRESET_IDS:
            raise ConfigError(f"unknown preset {self.preset_id!r}")
        if self.order < 1:
            raise ConfigError("truncation order must be >= 1")


def build_preset(descriptor: PresetDescriptor) -> QTContext:
    """Construct and validate the requested preset at its truncation order."""
    if descriptor.preset_id == "trivial":
        qt = _build_commutative(descriptor.order, exponential_r=False)
    elif descriptor.preset_id == "abelian":
        qt = _build_commutative(descriptor.order, exponential_r=True)
    else:
        qt = _build_qsl2(descriptor.order, descriptor.internal_margin)
    _validate(qt, descriptor.preset_id)
    return qt


def preset(preset_id: str, order: int, margin: int = DEFAULT_MARGIN) -> QTContext:
    return build_preset(PresetDescriptor(preset_id, order, margin))


def _validate(qt: QTContext, preset_id: str) -> None:
    pres = qt.presentation
    report = hopf_axioms_check(qt.hopf)
    if not report.passed:
        bad = report.failures()[0]
        raise PresetInvalidError(
            f"preset {preset_id!r}: Hopf axiom {bad.name} failed: {bad.detail}")
    generators = [TensorElement.generator(pres, n) for n in pres.generators.names]
    qt_report = qt_axioms_check(qt, generators)
    if not qt_report.passed:
        bad = qt_report.failures()[0]
        raise PresetInvalidError(
            f"preset {preset_id!r}: axiom {bad.name} failed: {bad.detail}")


# -- commuting presets -------------------------------------------------------

def _build_commutative(order: int, exponential_r: bool) -> QTContext:
    table = GeneratorTable(("x", "y"))
    pres = Presentation(table, order, name="abelian" if exponential_r else "trivial")
    one = pres.scalar_one()
    x_mono = pres.generator_monomial(0)
    y_mono = pres.generator_monomial(1)
    # y*x -> x*y
    pres.relations[(1, 0)] = TensorElement(pres, 1, {(Monomial((1, 1)),): one})
    zero = pres.scalar_zero()
    pres.counit_values = {0: zero, 1: zero}
    unit = pres.unit_monomial()
    for gi, mono in ((0, x_mono), (1, y_mono)):
        pres.coproduct_images[gi] = TensorElement(pres, 2, {
            (mono, unit): one, (unit, mono): one})
    if exponential_r:
        terms = {}
        for k in range(order + 1):
            key = (Monomial((k, 0)), Monomial((0, k)))
            terms[key] = TruncScalar.h_power(k, order, Fraction(1, factorial(k)))
        r = TensorElement(pres, 2, terms)
    else:
        r = TensorElement.unit(pres, 2)
    pres.r_matrix = r
    return QTContext(algebra_context(pres), r)


# -- quantized sl2 -----------------------------------------------------------

def _qsl2_structure_series(order: int, margin: int):
    """Structure scalars computed with margin, then truncated to `order`.

    Returns (commutator_coeffs, r_lowering_coeffs) where commutator_coeffs[k]
    is the coefficient of H^k in the deformed [E, F], and r_lowering_coeffs[n]
    is the scalar multiplying E^n # F^n in the R-matrix.
    """
    big = order + margin
    q = TruncScalar.exp_h(1, big)
    q_inv = TruncScalar.exp_h(-1, big)
    q_diff = q - q_inv  # valuation 1

    # [E, F] = (K - K^{-1}) / (q - q^{-1}) with K = exp(h H):
    # numerator coefficient of H^k is 2 h^k / k! for odd k, zero otherwise.
    commutator = {}
    for k in range(1, big + 1, 2):
        numerator = TruncScalar.h_power(k, big, Fraction(2, factorial(k)))
        commutator[k] = numerator.divide(q_diff).truncate(order)

    # q-integer factorials: [n]_q = (q^n - q^{-n}) / (q - q^{-1}), a unit.
    q_ints = []
    for n in range(1, big + 1):
        qn = TruncScalar.exp_h(n, big)
        qn_inv = TruncScalar.exp_h(-n, big)
        q_ints.append((qn - qn_inv).divide(q_diff))
    lowering = {0: TruncScalar.one(big).truncate(order)}
    for n in range(1, order + 1):
        q_fact = q_ints[0]
        for m in range(1, n):
            q_fact = q_fact * q_ints[m]
        coeff = TruncScalar.exp_h(Fraction(n * (n - 1), 2), big)
        for _ in range(n):
            coeff = coeff * q_diff
        lowering[n] = coeff.divide(q_fact).truncate(order)
    return commutator, lowering


def _build_qsl2(order: int, margin: int) -> QTContext:
    table = GeneratorTable(("F", "E", "H"))
    pres = Presentation(table, order, name="qsl2")
    one = pres.scalar_one()
    F, E, H = 0, 1, 2
    unit = pres.unit_monomial()

    def mono(f=0, e=0, hexp=0) -> Monomial:
        return Monomial((f, e, hexp))

    commutator, lowering = _qsl2_structure_series(order, margin)

    # H*E -> E*H + 2E
    pres.relations[(H, E)] = TensorElement(pres, 1, {
        (mono(e=1, hexp=1),): one,
        (mono(e=1),): TruncScalar.constant(2, order),
    })
    # H*F -> F*H - 2F
    pres.relations[(H, F)] = TensorElement(pres, 1, {
        (mono(f=1, hexp=1),): one,
        (mono(f=1),): TruncScalar.constant(-2, order),
    })
    # E*F -> F*E + deformed Cartan series
    ef_terms = {(mono(f=1, e=1),): one}
    for k, coeff in commutator.items():
        if not coeff.is_zero():
            ef_terms[(mono(hexp=k),)] = coeff
    pres.relations[(E, F)] = TensorElement(pres, 1, ef_terms)

    zero = pres.scalar_zero()
    pres.counit_values = {F: zero, E: zero, H: zero}

    def cartan_exponential(rate: Fraction) -> TensorElement:
        terms = {}
        for k in range(order + 1):
            terms[(mono(hexp=k),)] = TruncScalar.h_power(
                k, order, Fraction(rate) ** k / factorial(k))
        return TensorElement(pres, 1, terms)

    k_plus = cartan_exponential(Fraction(1))    # exp(h H)
    k_minus = cartan_exponential(Fraction(-1))  # exp(-h H)

    h_elem = TensorElement(pres, 1, {(mono(hexp=1),): one})
    e_elem = TensorElement(pres, 1, {(mono(e=1),): one})
    f_elem = TensorElement(pres, 1, {(mono(f=1),): one})
    pres.coproduct_images[H] = (
        h_elem.embed((1,), 2) + h_elem.embed((2,), 2))
    pres.coproduct_images[E] = (
        e_elem.embed((1,), 2) * k_plus.embed((2,), 2)
        + e_elem.embed((2,), 2))
    pres.coproduct_images[F] = (
        f_elem.embed((1,), 2)
        + k_minus.embed((1,), 2) * f_elem.embed((2,), 2))

    # R = exp(h H#H / 2) * sum_n c_n E^n # F^n.
    cartan_terms = {}
    for k in range(order + 1):
        cartan_terms[(mono(hexp=k), mono(hexp=k))] = TruncScalar.h_power(
            k, order, Fraction(1, 2) ** k / factorial(k))
    cartan_factor = TensorElement(pres, 2, cartan_terms)
    qexp_terms = {}
    for n, coeff in lowering.items():
        if not coeff.is_zero():
            qexp_terms[(mono(e=n), mono(f=n))] = coeff
    qexp_factor = TensorElement(pres, 2, qexp_terms)
    r = cartan_factor * qexp_factor
    pres.r_matrix = r
    return QTContext(algebra_context(pres), r)


# -- user presentations ------------------------------------------------------

def load_presentation(path: str | Path) -> QTContext:
    """Build a quasitriangular context from a JSON presentation file.

    Schema: {"name": str, "order": int, "generators": [names...],
    "relations": {"g*f": "element text", ...}, "counit": {gen: "scalar text"},
    "coproduct": {gen: "arity-2 element text"}, "r_matrix": "element text"}.
    All element texts use the package grammar; relations keys are the
    out-of-order adjacent pair written as hi*lo.
    """
    from .parsing import parse_element

    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read presentation file: {exc}") from exc
    try:
        names = tuple(data["generators"])
        order = int(data["order"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad presentation header: {exc}") from exc
    pres = Presentation(GeneratorTable(names), order,
                        name=str(data.get("name", "user")))
    for key, text in data.get("relations", {}).items():
        try:
            hi_name, lo_name = key.split("*")
            hi = pres.generators.index(hi_name.strip())
            lo = pres.generators.index(lo_name.strip())
        except (ValueError, KeyError) as exc:
            raise ConfigError(f"bad relation key {key!r}: {exc}") from exc
        if hi <= lo:
            raise ConfigError(
                f"relation key {key!r} is not an out-of-order pair")
        pres.relations[(hi, lo)] = parse_element(text, pres, 1)
    for name, text in data.get("counit", {}).items():
        elem = parse_element(text, pres, 1)
        value = pres.scalar_zero()
        for key2, scalar in elem.terms.items():
            if any(not m.is_unit for m in key2):
                raise ConfigError(f"counit value for {name!r} is not a scalar")
            value = value + scalar
        pres.counit_values[pres.generators.index(name)] = value
    for name, text in data.get("coproduct", {}).items():
        pres.coproduct_images[pres.generators.index(name)] = parse_element(
            text, pres, 2)
    missing = [n for i, n in enumerate(names)
               if i not in pres.counit_values or i not in pres.coproduct_images]
    if missing:
        raise ConfigError(f"missing counit/coproduct data for {missing}")
    r_text = data.get("r_matrix")
    r = (parse_element(r_text, pres, 2) if r_text
         else TensorElement.unit(pres, 2))
    pres.r_matrix = r
    qt = QTContext(algebra_context(pres, label=pres.name), r)
    _validate(qt, pres.name)
    return qt

import random

import pytest

from qhopf.braiding import (
    braided_axioms_check,
    prop_conjugation_stability,
    prop_coproduct_of_r,
    prop_truncated_expansion,
    qt_axioms_check,
)
from qhopf.combinatorics import SubsetIndex
from qhopf.corpus import certified_corpus, qt_sample
from qhopf.errors import GateRequiredError
from qhopf.hopf import delta_upper
from qhopf.parsing import parse_element, print_element


def test_twisted_coproduct_on_decomposable(abelian4):
    pres = abelian4.presentation
    twisted = abelian4.twisted
    a = parse_element("x # y", pres, 2)
    # a(1) # b(1) # a(2) # b(2) for primitive x and y.
    expected = parse_element(
        "x # y # 1 # 1 + x # 1 # 1 # y + 1 # y # x # 1 + 1 # 1 # x # y",
        pres, 4)
    assert twisted.coproduct(a) == expected


def test_twisted_counit(abelian4):
    pres = abelian4.presentation
    twisted = abelian4.twisted
    a = parse_element("2 * 1 # 1 + x # y", pres, 2)
    from qhopf.scalars import TruncScalar
    assert twisted.counit(a) == TruncScalar.constant(2, pres.order)


def test_classical_r_shadow_qsl2(qsl2_n3):
    assert print_element(qsl2_n3.classical_r_extract()) == \
        "1/2 * H # H + 2 * E # F"


def test_classical_r_shadow_abelian(abelian4):
    assert print_element(abelian4.classical_r_extract()) == "x # y"


def test_r_sigma_singleton_is_embedded_r(qsl2_n3):
    qt = qsl2_n3
    sigma = SubsetIndex((2,), 3)
    assert qt.r_sigma(sigma) == qt.embedded_r(3, 4, 6)


def test_r_sigma_pair_matches_explicit_factor_order(qsl2_n3):
    qt = qsl2_n3
    sigma = SubsetIndex((1, 2), 2)
    explicit = (qt.embedded_r(1, 4, 4) * qt.embedded_r(1, 2, 4)
                * qt.embedded_r(3, 4, 4) * qt.embedded_r(3, 2, 4))
    assert qt.r_sigma(sigma) == explicit


def test_r_sigma_empty_set_is_unit(abelian4):
    sigma = SubsetIndex.empty(2)
    from qhopf.algebra import TensorElement
    assert abelian4.r_sigma(sigma) == TensorElement.unit(
        abelian4.presentation, 4)


def test_conjugation_is_trivial_on_commutative_preset(abelian4):
    rng = random.Random(2)
    from qhopf.corpus import random_element
    for _ in range(5):
        a = random_element(abelian4.presentation, rng, arity=2, terms=2)
        assert abelian4.ad_r(a) == a


def test_conjugation_first_order_is_the_classical_commutator(qsl2_n3):
    qt = qsl2_n3
    pres = qt.presentation
    r1 = qt.classical_r_extract()
    from qhopf.corpus import random_element
    rng = random.Random(8)
    for _ in range(4):
        b = random_element(pres, rng, arity=2, terms=2, max_degree=2,
                           max_h_power=0)
        deviation = (qt.ad_r(b) - b).h_coefficient(1)
        commutator = (r1 * b - b * r1).h_coefficient(0)
        assert deviation == commutator


def test_conjugation_moves_cartan_leg(qsl2_n3):
    qt = qsl2_n3
    pres = qt.presentation
    b = parse_element("1 # H", pres, 2)
    moved = qt.ad_r(b) - b
    assert moved.valuation() == 1
    assert moved.h_coefficient(1) == parse_element("4 * E # F", pres, 2)


def test_qt_axioms_on_presets(abelian4, qsl2_n3):
    rng = random.Random(1)
    for qt in (abelian4, qsl2_n3):
        assert qt_axioms_check(qt, qt_sample(qt, rng, 6)).passed


def test_coproducts_of_r_match_subset_products(abelian4, qsl2_n3):
    for qt in (abelian4, qsl2_n3):
        for n in (1, 2):
            assert prop_coproduct_of_r(qt, n).passed


def test_delta_upper_of_r_sanity(qsl2_n3):
    # The full-set case at n=1 is just the twisted coproduct identity leg.
    qt = qsl2_n3
    assert delta_upper(qt.twisted, qt.R, SubsetIndex.full(1)) == qt.R


def test_truncated_expansion_residuals(abelian4):
    qt = abelian4
    rng = random.Random(12)
    corpus = certified_corpus(qt.twisted, rng, 3, n_max=4)
    for a in corpus:
        for sigma in (SubsetIndex.full(2), SubsetIndex.full(3)):
            for i in range(len(sigma)):
                assert prop_truncated_expansion(qt, a, sigma, i, 4).passed


def test_truncated_expansion_requires_certificate(abelian4):
    qt = abelian4
    bare = parse_element("x # 1", qt.presentation, 2)
    with pytest.raises(GateRequiredError):
        prop_truncated_expansion(qt, bare, SubsetIndex.full(2), 1, 3)


def test_conjugation_stability_on_certified_corpus(qsl2_n3):
    qt = qsl2_n3
    rng = random.Random(13)
    for a in certified_corpus(qt.twisted, rng, 4, n_max=4):
        assert prop_conjugation_stability(qt, a, 4).verdict


def test_braided_axioms_and_flip_witness(qsl2_n3):
    qt = qsl2_n3
    rng = random.Random(14)
    corpus2 = certified_corpus(qt.twisted, rng, 3, n_max=4)
    corpus1 = certified_corpus(qt.hopf, rng, 3, n_max=4, max_degree=2)
    report = braided_axioms_check(qt, corpus2, corpus1, n_max=4)
    assert report.passed
    assert report.witness is not None
    w = parse_element(report.witness, qt.presentation, 2)
    assert qt.ad_r(w) != w.flip(1, 2)


def test_braided_axioms_reject_uncertified_corpus(qsl2_n3):
    qt = qsl2_n3
    bare = parse_element("E # 1", qt.presentation, 2)
    with pytest.raises(GateRequiredError):
        braided_axioms_check(qt, [bare], (), n_max=3)

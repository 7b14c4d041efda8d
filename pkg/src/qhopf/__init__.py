"""Exact verification toolkit for braided structures on quantized algebras.

Everything is computed over the truncated series ring Q[h]/(h^{N+1}) with
exact rational coefficients; all identity checks are exact at the working
truncation order.
"""

from .algebra import (
    AlgebraElement,
    GeneratorTable,
    Monomial,
    Presentation,
    TensorElement,
    apply_flip,
    embed_j_sigma,
    h_coefficient,
    normalize_product,
    tensor_invert,
    tensor_multiply,
)
from .braiding import (
    BraidOperatorReport,
    QTContext,
    braided_axioms_check,
    prop_conjugation_stability,
    prop_coproduct_of_r,
    prop_truncated_expansion,
    qt_axioms_check,
    twisted_context,
    twisted_coproduct,
)
from .combinatorics import BinomTable, SubsetIndex, binom, lemma23_verify, subsets
from .hopf import (
    CheckRecord,
    CheckReport,
    GateCertificate,
    HopfContext,
    algebra_context,
    coproduct_iter,
    delta_lower,
    delta_n,
    delta_upper,
    drinfeld_gate,
    hopf_axioms_check,
    moebius_reconstruct,
)
from .parsing import parse_element, print_element
from .presets import PresetDescriptor, build_preset, load_presentation, preset
from .scalars import TruncScalar

__version__ = "0.1.0"

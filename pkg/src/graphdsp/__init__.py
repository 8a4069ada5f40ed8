"""Linear discrete signal processing on weighted directed graphs.

Signals are indexed by graph nodes, the adjacency matrix acts as the shift,
filters are polynomials in the shift, and the Fourier transform is the
change of basis into the shift's generalized eigenvectors.
"""

from .apps import (
    ClassifierFilter,
    LPCode,
    QuantHeader,
    classify,
    compress,
    decompress,
    dominant_basis_vector,
    lp_decode,
    lp_dequantize,
    lp_encode,
    lp_fit,
    lp_residual,
    predict_churn,
    train_churn_classifier,
    train_classifier,
)
from .errors import (
    DecompositionError,
    GraphDSPError,
    InterpolationError,
    NotInvertibleError,
    NumericalError,
    TapsRecoveryError,
    ValidationError,
)
from .filtering import (
    GraphFilter,
    apply_filter,
    equivalent_shift,
    impulse_response,
    invert_filter,
    is_shift_invariant,
    make_filter,
    reduce_filter,
    taps_from_impulse,
    z_transform_basis,
)
from .graph import (
    Graph,
    GraphSignal,
    build_graph,
    cycle_graph,
    graph_shift,
    knn_similarity_graph,
    normalize_call_graph,
    path_graph,
)
from .polynomial import (
    HermiteConstraint,
    Polynomial,
    char_poly,
    eval_on_jordan_block,
    evaluate_on_matrix,
    hermite_interpolate,
    min_poly,
    poly_eval,
    poly_from_roots,
    poly_mod_mul,
)
from .spectral import (
    SpectralBasis,
    Spectrum,
    frequency_response,
    gft,
    igft,
    jordan_decompose,
    spectral_filter,
)
from .tolerances import DEFAULT_TOLERANCES, Tolerances

__version__ = "0.1.0"

__all__ = [
    "ClassifierFilter",
    "DEFAULT_TOLERANCES",
    "DecompositionError",
    "Graph",
    "GraphDSPError",
    "GraphFilter",
    "GraphSignal",
    "HermiteConstraint",
    "InterpolationError",
    "LPCode",
    "NotInvertibleError",
    "NumericalError",
    "Polynomial",
    "QuantHeader",
    "SpectralBasis",
    "Spectrum",
    "TapsRecoveryError",
    "Tolerances",
    "ValidationError",
    "apply_filter",
    "build_graph",
    "char_poly",
    "classify",
    "compress",
    "cycle_graph",
    "decompress",
    "dominant_basis_vector",
    "equivalent_shift",
    "eval_on_jordan_block",
    "evaluate_on_matrix",
    "frequency_response",
    "gft",
    "graph_shift",
    "hermite_interpolate",
    "igft",
    "impulse_response",
    "invert_filter",
    "is_shift_invariant",
    "jordan_decompose",
    "knn_similarity_graph",
    "lp_decode",
    "lp_dequantize",
    "lp_encode",
    "lp_fit",
    "lp_residual",
    "make_filter",
    "min_poly",
    "normalize_call_graph",
    "path_graph",
    "poly_eval",
    "poly_from_roots",
    "poly_mod_mul",
    "predict_churn",
    "reduce_filter",
    "spectral_filter",
    "taps_from_impulse",
    "train_churn_classifier",
    "train_classifier",
    "z_transform_basis",
]

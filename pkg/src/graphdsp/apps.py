"""Application pipelines: linear-prediction coding, spectral compression,
adaptive-filter classification, and churn prediction.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import NumericalError, ValidationError
from .filtering import (
    GraphFilter,
    apply_filter,
    invert_filter,
    make_filter,
)
from .graph import Graph, GraphSignal, check_signal
from .polynomial import Polynomial
from .spectral import SpectralBasis, Spectrum, frequency_response, gft, igft
from .tolerances import Tolerances, resolve

#: default number of greedy classifier stages
DEFAULT_STAGES = 10


# -- linear prediction ---------------------------------------------------------

@dataclass(frozen=True)
class QuantHeader:
    lo: float
    hi: float
    bits: int

    def __post_init__(self):
        if not 1 <= self.bits <= 16:
            raise ValidationError("quantizer bits must lie in [1, 16]")
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)) or self.hi < self.lo:
            raise ValidationError("invalid quantizer range")

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (1 << self.bits)


@dataclass(frozen=True)
class LPCode:
    """Quantized residual plus the prediction taps that produced it."""

    taps: GraphFilter
    codes: np.ndarray
    header: QuantHeader
    graph_id: str

    def __post_init__(self):
        codes = np.asarray(self.codes, dtype=np.int64).copy()
        if np.any(codes < 0) or np.any(codes >= (1 << self.header.bits)):
            raise ValidationError("quantizer codes out of range for the bit depth")
        codes.setflags(write=False)
        object.__setattr__(self, "codes", codes)


def lp_fit(g: Graph, s: GraphSignal, n_taps: int) -> GraphFilter:
    """Least-squares prediction filter with h0 = 0 and n_taps taps.

    Minimizes ||s - (h1 A + ... + h_{L-1} A^{L-1}) s||_2; rank-deficient
    prediction matrices fall back to the minimum-norm solution.
    """
    if not 2 <= n_taps <= 10:
        raise ValidationError("tap count must lie in [2, 10]")
    check_signal(g, s)
    if np.any(s.values.imag != 0):
        raise ValidationError("linear prediction expects a real-valued signal")
    weights_imag = g.adjacency.data.imag if g.is_sparse else g.dense().imag
    if np.any(weights_imag != 0):
        raise ValidationError("linear prediction expects a real-valued graph")
    cols = []
    vec = s.values
    for _ in range(n_taps - 1):
        vec = g.adjacency @ vec
        cols.append(vec.real)
    b = np.column_stack(cols)
    h_tail, *_ = np.linalg.lstsq(b, s.values.real, rcond=1e-10)
    return make_filter(g, np.concatenate([[0.0], h_tail]))


def lp_residual(g: Graph, f: GraphFilter, s: GraphSignal) -> np.ndarray:
    """r = (I - h(A)) s as a real vector."""
    predicted = apply_filter(g, f, s)
    return (s.values - predicted.values).real


def lp_encode(g: Graph, f: GraphFilter, s: GraphSignal, bits: int) -> LPCode:
    """Quantize the prediction residual with a uniform mid-rise quantizer.

    The header stores the exact residual range; a constant residual encodes
    as all-zero codes with a degenerate (zero-width) header.
    """
    if not 1 <= bits <= 16:
        raise ValidationError("bits must lie in [1, 16]")
    r = lp_residual(g, f, s)
    lo, hi = float(np.min(r)), float(np.max(r))
    header = QuantHeader(lo, hi, bits)
    if hi == lo:
        codes = np.zeros(len(r), dtype=np.int64)
    else:
        step = header.step
        codes = np.clip(np.floor((r - lo) / step), 0, (1 << bits) - 1).astype(np.int64)
    return LPCode(f, codes, header, g.fingerprint)


def lp_dequantize(code: LPCode) -> np.ndarray:
    """Cell midpoints; a degenerate header decodes to its single stored value."""
    header = code.header
    if header.hi == header.lo:
        return np.full(len(code.codes), header.lo)
    return header.lo + (code.codes.astype(float) + 0.5) * header.step


def lp_decode(
    g: Graph,
    f: GraphFilter,
    code: LPCode,
    basis: SpectralBasis,
    tol: Tolerances | None = None,
) -> GraphSignal:
    """Reconstruct: dequantize, then run the synthesis filter (I - h(A))^{-1}.

    The inverse is the unique polynomial filter of Theorem-style inversion;
    when its monomial tap construction is too ill-conditioned (large N_A),
    the same operator is applied through the spectral basis instead.
    """
    tol = resolve(tol)
    if code.graph_id != g.fingerprint or f.graph_id != g.fingerprint:
        raise ValidationError("code/filter belong to a different graph")
    synth = GraphFilter(Polynomial([1.0]) - f.taps, g.fingerprint)
    r_hat = GraphSignal(lp_dequantize(code), g.fingerprint)
    from .filtering import _check_invertible  # shared invertibility guard

    _check_invertible(synth.taps, basis, tol)
    try:
        inv = invert_filter(synth, basis, tol=tol)
        out = apply_filter(g, inv, r_hat)
        # guard against tap-domain round-off: verify the round trip cheaply
        back = apply_filter(g, synth, out)
        if float(np.linalg.norm(back.values - r_hat.values)) <= 1e-6 * max(
            1.0, float(np.linalg.norm(r_hat.values))
        ):
            return out
    except NumericalError:
        pass
    # spectral application of the same inverse operator
    h_j = frequency_response(synth.taps, basis)
    y = basis.F @ r_hat.values
    z = np.linalg.solve(h_j, y)
    return GraphSignal(basis.V @ z, g.fingerprint)


# -- spectral compression --------------------------------------------------------

def compress(basis: SpectralBasis, s: GraphSignal, keep: int) -> Spectrum:
    """Zero all but the `keep` largest-magnitude spectrum coefficients.

    Ties in magnitude are broken toward the lower index. Warns when the basis
    is far from orthogonal, since the energy accounting then degrades.
    """
    if not 1 <= keep <= basis.n_nodes:
        raise ValidationError("keep count must lie in [1, N]")
    if basis.cond_V > 1e3:
        warnings.warn(
            f"compression basis is ill-conditioned (cond_V ~ {basis.cond_V:.3g}); "
            "reconstruction error is not controlled by dropped energy",
            stacklevel=2,
        )
    spec = gft(basis, s)
    order = np.lexsort((np.arange(len(spec)), -np.abs(spec.coeffs)))
    kept = order[:keep]
    coeffs = np.zeros_like(spec.coeffs)
    coeffs[kept] = spec.coeffs[kept]
    return Spectrum(coeffs, spec.basis_id)


def decompress(basis: SpectralBasis, spec: Spectrum) -> GraphSignal:
    """Inverse transform of the truncated spectrum."""
    return igft(basis, spec)


def dominant_basis_vector(
    basis: SpectralBasis, signals: Sequence[GraphSignal]
) -> tuple[int, np.ndarray]:
    """Modal index of the largest-|coefficient| basis vector over many signals.

    Returns (modal index, histogram of argmax indices over all signals).
    """
    if not signals:
        raise ValidationError("need at least one signal")
    hist = np.zeros(basis.n_nodes, dtype=np.int64)
    for s in signals:
        spec = gft(basis, s)
        hist[int(np.argmax(np.abs(spec.coeffs)))] += 1
    return int(np.argmax(hist)), hist


# -- adaptive classification -------------------------------------------------------

@dataclass(frozen=True)
class ClassifierFilter:
    """Cascade (I + h_P A) ... (I + h_1 A) of nonnegative confidence stages."""

    stages: tuple[float, ...]

    def __post_init__(self):
        stages = tuple(float(h) for h in self.stages)
        if any(h < 0 for h in stages):
            raise ValidationError("classifier stages must be nonnegative")
        object.__setattr__(self, "stages", stages)

    @property
    def n_stages(self) -> int:
        return len(self.stages)


def _stage_candidates(breakpoints: np.ndarray) -> np.ndarray:
    """{0} + positive breakpoints + piece midpoints + one point past the last.

    Zero is always an anchor: labels sitting at exactly zero transition as
    soon as h leaves 0, so the first midpoint samples the piece (0, bp_1)
    (and the trailing +1 samples (bp_max, inf) even when no positive
    breakpoint exists).
    """
    pos = np.unique(breakpoints[np.isfinite(breakpoints) & (breakpoints > 0)])
    anchors = np.concatenate([[0.0], pos])
    cands = list(anchors)
    cands.extend(((anchors[:-1] + anchors[1:]) / 2.0).tolist())
    cands.append(float(anchors[-1]) + 1.0)
    return np.unique(np.asarray(cands))


def _train_stages(
    g: Graph,
    start: np.ndarray,
    n_stages: int,
    error_count: Callable[[np.ndarray], int],
    breakpoint_fn: Callable[[np.ndarray, np.ndarray], np.ndarray],
) -> tuple[ClassifierFilter, np.ndarray]:
    labels = start.astype(float)
    stages = []
    for _ in range(n_stages):
        shifted = (g.adjacency @ labels).real
        bps = breakpoint_fn(labels, shifted)
        candidates = _stage_candidates(bps)
        errors = np.array([error_count(labels + h * shifted) for h in candidates])
        minimizers = candidates[errors == errors.min()]
        # stage confidences are positive while any label is still wrong;
        # h = 0 is the converged no-op stage. Ties pick the smallest such h.
        if errors.min() == 0:
            h_best = float(minimizers[0])
        else:
            positive = minimizers[minimizers > 0]
            h_best = float(positive[0]) if positive.size else float(minimizers[0])
        stages.append(h_best)
        labels = labels + h_best * shifted
    return ClassifierFilter(tuple(stages)), labels


def train_classifier(
    g: Graph,
    t: GraphSignal,
    s_known: GraphSignal,
    n_stages: int = DEFAULT_STAGES,
) -> ClassifierFilter:
    """Greedy per-stage confidence optimization for +-1 label propagation.

    Per stage, every known node contributes the breakpoint where its updated
    label t + h (A t) changes sign; candidates are scanned for the fewest
    incorrect-or-undecided labels, ties resolved toward the smallest h.
    """
    check_signal(g, t)
    check_signal(g, s_known)
    t_real = t.values.real
    known = s_known.values.real
    if np.any(np.abs(t.values.imag) > 0) or np.any(np.abs(s_known.values.imag) > 0):
        raise ValidationError("labels must be real")
    if not np.all(np.isin(t_real, (-1.0, 0.0, 1.0))) or not np.all(
        np.isin(known, (-1.0, 0.0, 1.0))
    ):
        raise ValidationError("labels must take values in {-1, 0, +1}")
    if not np.any(known != 0):
        raise ValidationError("no known labels to train on")
    if not np.any(t_real != 0):
        raise ValidationError("training labels are all zero")
    mask = known != 0
    if np.any(t_real[mask & (t_real != 0)] != known[mask & (t_real != 0)]):
        raise ValidationError("training labels contradict known labels")
    if np.any((t_real != 0) & ~mask):
        raise ValidationError("training labels must be a subset of known labels")

    sgn = known[mask]

    def error_count(labels: np.ndarray) -> int:
        return int(np.sum(labels[mask] * sgn <= 0))

    def breakpoints(labels: np.ndarray, shifted: np.ndarray) -> np.ndarray:
        num = -labels[mask]
        den = shifted[mask]
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(den != 0, num / den, np.nan)

    cf, _ = _train_stages(g, t_real, n_stages, error_count, breakpoints)
    return cf


def classify(g: Graph, cf: ClassifierFilter, s: GraphSignal) -> GraphSignal:
    """Apply the stage cascade; sign of the output is the predicted class."""
    check_signal(g, s)
    vals = s.values.real.astype(float)
    for h in cf.stages:
        vals = vals + h * (g.adjacency @ vals).real
    return GraphSignal(vals, g.fingerprint)


def _warn_if_not_row_normalized(g: Graph) -> None:
    sums = np.abs(np.asarray(g.adjacency.sum(axis=1)).reshape(-1))
    ok = np.isclose(sums, 1.0, atol=1e-9) | np.isclose(sums, 0.0, atol=1e-12)
    if not np.all(ok):
        warnings.warn(
            "call graph rows do not sum to 1; churn scores lose their "
            "fraction-of-time interpretation",
            stacklevel=3,
        )


def train_churn_classifier(
    g: Graph,
    observed: GraphSignal,
    churned: GraphSignal,
    n_stages: int = DEFAULT_STAGES,
    threshold: float = 0.5,
) -> ClassifierFilter:
    """Greedy stage training under the threshold rule.

    ``observed`` holds the already-churned indicators feeding the filter;
    ``churned`` is the ground-truth outcome; a node is counted correct when
    (score >= threshold) matches its outcome.
    """
    check_signal(g, observed)
    check_signal(g, churned)
    obs = observed.values.real
    truth = churned.values.real
    if not np.all(np.isin(obs, (0.0, 1.0))) or not np.all(np.isin(truth, (0.0, 1.0))):
        raise ValidationError("churn indicators must take values in {0, 1}")
    _warn_if_not_row_normalized(g)
    churn_mask = truth == 1.0

    def error_count(labels: np.ndarray) -> int:
        predicted = labels >= threshold
        return int(np.sum(predicted != churn_mask))

    def breakpoints(labels: np.ndarray, shifted: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(shifted != 0, (threshold - labels) / shifted, np.nan)

    cf, _ = _train_stages(g, obs, n_stages, error_count, breakpoints)
    return cf


def predict_churn(
    g: Graph,
    cf: ClassifierFilter,
    s: GraphSignal,
    threshold: float = 0.5,
) -> tuple[GraphSignal, np.ndarray]:
    """Propagated churn scores plus boolean predictions (score >= threshold)."""
    check_signal(g, s)
    vals = s.values.real
    if not np.all(np.isin(vals, (0.0, 1.0))):
        raise ValidationError("churn indicators must take values in {0, 1}")
    _warn_if_not_row_normalized(g)
    scores = classify(g, cf, s)
    return scores, scores.values.real >= threshold

"""Command-line front end.

One command per process; every pipeline is deterministic under a fixed seed
(the seed and backend are recorded in each summary). Exit codes: 0 success,
2 validation error, 3 numerical failure. Timing goes to stderr so output
files stay byte-identical across reruns.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import io as gio
from .apps import (
    classify,
    compress,
    decompress,
    dominant_basis_vector,
    lp_decode,
    lp_encode,
    lp_fit,
    lp_residual,
    predict_churn,
    train_churn_classifier,
    train_classifier,
)
from .errors import NumericalError, ValidationError
from .filtering import (
    GraphFilter,
    apply_filter,
    impulse_response,
    invert_filter,
    make_filter,
    reduce_filter,
)
from .graph import Graph, GraphSignal, graph_shift, knn_similarity_graph, normalize_call_graph
from .polynomial import min_poly
from .spectral import Spectrum, gft, igft, jordan_decompose
from .synth import DEFAULT_SEED, synth_call_log, synth_smooth_field, synth_two_block
from .tolerances import DEFAULT_TOLERANCES

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="RNG seed (default %(default)s)")
    common.add_argument("--backend", choices=("numeric", "exact"), default="numeric",
                        help="spectral backend (default %(default)s)")
    common.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                        help="override a named tolerance (repeatable)")
    common.add_argument("--out", type=Path, default=Path("."),
                        help="output directory (default: current)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    p = argparse.ArgumentParser(
        prog="graphdsp",
        description="Linear signal processing on weighted directed graphs.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", help="graph construction").add_subparsers(
        dest="subcommand", required=True
    )
    gb = g.add_parser("build", parents=[common], help="build a graph file")
    src = gb.add_mutually_exclusive_group(required=True)
    src.add_argument("--coords", type=Path, help="coordinates CSV (id,x,y[,z])")
    src.add_argument("--edges", type=Path, help="edge-list file to normalize")
    gb.add_argument("--knn", type=int, help="neighbor count for --coords")
    gb.set_defaults(func=cmd_graph_build)

    sy = sub.add_parser("synth", parents=[common], help="synthetic datasets")
    sy.add_argument("kind", choices=("smooth-field", "two-block", "call-log"))
    sy.add_argument("--n", type=int, default=None, help="node count")
    sy.add_argument("--knn", type=int, default=11)
    sy.add_argument("--order", type=int, default=8)
    sy.add_argument("--noise", type=float, default=0.0)
    sy.add_argument("--p-in", type=float, default=0.9)
    sy.add_argument("--p-out", type=float, default=0.01)
    sy.add_argument("--seed-frac", type=float, default=0.05)
    sy.add_argument("--train-frac", type=float, default=0.5)
    sy.add_argument("--strategy", choices=("random", "most-links"), default="random")
    sy.add_argument("--clusters", type=int, default=10)
    sy.add_argument("--churn-clusters", type=int, default=2)
    sy.add_argument("--observed-frac", type=float, default=0.5)
    sy.set_defaults(func=cmd_synth)

    sh = sub.add_parser("shift", parents=[common], help="apply the graph shift")
    sh.add_argument("--graph", type=Path, required=True)
    sh.add_argument("--signal", type=Path, required=True)
    sh.set_defaults(func=cmd_shift)

    fl = sub.add_parser("filter", help="tap-domain filtering").add_subparsers(
        dest="subcommand", required=True
    )
    for name, fn in (
        ("apply", cmd_filter_apply),
        ("invert", cmd_filter_invert),
        ("reduce", cmd_filter_reduce),
        ("impulse", cmd_filter_impulse),
    ):
        fp = fl.add_parser(name, parents=[common])
        fp.add_argument("--graph", type=Path, required=True)
        fp.add_argument("--taps", type=Path, required=True, help="filter JSON")
        if name == "apply":
            fp.add_argument("--signal", type=Path, required=True)
        fp.set_defaults(func=fn)

    for name, fn in (("gft", cmd_gft), ("igft", cmd_igft)):
        tp = sub.add_parser(name, parents=[common])
        tp.add_argument("--graph", type=Path, required=True)
        tp.add_argument(
            "--signal" if name == "gft" else "--spectrum", type=Path, required=True
        )
        tp.set_defaults(func=fn)

    sp = sub.add_parser("spectral", help="spectral decomposition").add_subparsers(
        dest="subcommand", required=True
    )
    sd = sp.add_parser("decompose", parents=[common])
    sd.add_argument("--graph", type=Path, required=True)
    sd.set_defaults(func=cmd_spectral_decompose)

    lp = sub.add_parser("lp", help="linear-prediction coding").add_subparsers(
        dest="subcommand", required=True
    )
    lf = lp.add_parser("fit", parents=[common])
    lf.add_argument("--graph", type=Path, required=True)
    lf.add_argument("--signal", type=Path, required=True)
    lf.add_argument("--taps-count", type=int, default=3)
    lf.set_defaults(func=cmd_lp_fit)
    le = lp.add_parser("encode", parents=[common])
    le.add_argument("--graph", type=Path, required=True)
    le.add_argument("--signal", type=Path, required=True)
    le.add_argument("--taps", type=Path, required=True)
    le.add_argument("--bits", type=int, default=8)
    le.set_defaults(func=cmd_lp_encode)
    ld = lp.add_parser("decode", parents=[common])
    ld.add_argument("--graph", type=Path, required=True)
    ld.add_argument("--code", type=Path, required=True)
    ld.add_argument("--reference", type=Path, help="original signal for error metrics")
    ld.set_defaults(func=cmd_lp_decode)
    ls = lp.add_parser("sweep", parents=[common])
    ls.add_argument("--graph", type=Path, required=True)
    ls.add_argument("--signal", type=Path, required=True)
    ls.add_argument("--bits-max", type=int, default=16)
    ls.add_argument("--taps-min", type=int, default=2)
    ls.add_argument("--taps-max", type=int, default=10)
    ls.set_defaults(func=cmd_lp_sweep)

    cp = sub.add_parser("compress", parents=[common], help="spectral compression")
    cp.add_argument("--graph", type=Path, required=True)
    cp.add_argument("--signal", type=Path, nargs="+", required=True,
                    help="one signal (or several for --dominant)")
    cp.add_argument("--keep", type=int, help="spectrum coefficients to keep")
    cp.add_argument("--sweep", action="store_true", help="emit error for C = 1..N")
    cp.add_argument("--dominant", action="store_true",
                    help="histogram of dominant basis vectors over the signals")
    cp.set_defaults(func=cmd_compress)

    cl = sub.add_parser("classify", help="adaptive classification").add_subparsers(
        dest="subcommand", required=True
    )
    ct = cl.add_parser("train", parents=[common])
    ct.add_argument("--graph", type=Path, required=True)
    ct.add_argument("--labels", type=Path, required=True, help="known labels CSV")
    ct.add_argument("--train-labels", type=Path,
                    help="training subset CSV (default: the known labels)")
    ct.add_argument("--stages", type=int, default=10)
    ct.set_defaults(func=cmd_classify_train)
    ca = cl.add_parser("apply", parents=[common])
    ca.add_argument("--graph", type=Path, required=True)
    ca.add_argument("--labels", type=Path, required=True)
    ca.add_argument("--classifier", type=Path, required=True)
    ca.add_argument("--truth", type=Path, help="ground truth for accuracy metrics")
    ca.set_defaults(func=cmd_classify_apply)

    ch = sub.add_parser("churn", help="customer churn prediction").add_subparsers(
        dest="subcommand", required=True
    )
    cht = ch.add_parser("train", parents=[common])
    cht.add_argument("--durations", type=Path, required=True, help="call matrix CSV")
    cht.add_argument("--observed", type=Path, required=True)
    cht.add_argument("--truth", type=Path, required=True)
    cht.add_argument("--stages", type=int, default=10)
    cht.add_argument("--threshold", type=float, default=0.5)
    cht.set_defaults(func=cmd_churn_train)
    chp = ch.add_parser("predict", parents=[common])
    chp.add_argument("--durations", type=Path, required=True)
    chp.add_argument("--observed", type=Path, required=True)
    chp.add_argument("--classifier", type=Path, required=True)
    chp.add_argument("--truth", type=Path, help="outcome CSV for accuracy metrics")
    chp.add_argument("--threshold", type=float, default=0.5)
    chp.set_defaults(func=cmd_churn_predict)

    return p


# -- helpers -------------------------------------------------------------------------

def _tolerances(args):
    overrides = {}
    for item in args.tol:
        name, sep, value = item.partition("=")
        if not sep:
            raise ValidationError(f"--tol expects NAME=VALUE, got {item!r}")
        try:
            overrides[name.strip()] = float(value)
        except ValueError:
            raise ValidationError(f"--tol {name}: {value!r} is not a number") from None
    try:
        return DEFAULT_TOLERANCES.replace(**overrides)
    except ValueError as e:
        raise ValidationError(str(e)) from None


def _outdir(args) -> Path:
    args.out.mkdir(parents=True, exist_ok=True)
    return args.out


def _write_summary(out: Path, command: str, args, outputs: dict, metrics: dict) -> None:
    summary = {
        "command": command,
        "seed": args.seed,
        "backend": args.backend,
        "outputs": outputs,
        "metrics": metrics,
    }
    (out / "summary.json").write_text(
        json.dumps(summary, sort_keys=True, indent=2) + "\n"
    )


def _load_graph_signal(graph_path, signal_path):
    g = gio.read_graph(graph_path)
    values = gio.read_signal(signal_path)
    return g, g.signal(values)


def _relative_error(reference: np.ndarray, approx: np.ndarray) -> float:
    denom = max(float(np.linalg.norm(reference)), 1e-300)
    return float(np.linalg.norm(reference - approx)) / denom


# -- commands -------------------------------------------------------------------------

def cmd_graph_build(args) -> None:
    out = _outdir(args)
    if args.coords is not None:
        if args.knn is None:
            raise ValidationError("--coords requires --knn")
        coords = gio.read_coords(args.coords)
        g = knn_similarity_graph(coords, args.knn)
    else:
        g = gio.read_graph(args.edges)
    gio.write_graph(g, out / "graph.txt")
    _write_summary(
        out, "graph build", args,
        {"graph": "graph.txt"},
        {"n_nodes": g.n_nodes, "n_edges": len(g.edges()), "fingerprint": g.fingerprint},
    )


def cmd_synth(args) -> None:
    out = _outdir(args)
    if args.kind == "smooth-field":
        n = args.n or 150
        data = synth_smooth_field(n, args.knn, args.order, args.noise, args.seed)
        gio.write_coords(data.coords, out / "coords.csv")
        gio.write_graph(data.graph, out / "graph.txt")
        gio.write_signal(data.signal, out / "signal.csv")
        outputs = {"coords": "coords.csv", "graph": "graph.txt", "signal": "signal.csv"}
        metrics = {"n_nodes": n, "order": args.order,
                   "fingerprint": data.graph.fingerprint}
    elif args.kind == "two-block":
        n = args.n or 100
        data = synth_two_block(n, args.p_in, args.p_out, args.seed_frac,
                               args.train_frac, args.strategy, args.seed)
        gio.write_graph(data.graph, out / "graph.txt")
        gio.write_labels(data.truth, out / "truth.csv")
        gio.write_labels(data.known, out / "known.csv")
        gio.write_labels(data.train, out / "train.csv")
        outputs = {"graph": "graph.txt", "truth": "truth.csv",
                   "known": "known.csv", "train": "train.csv"}
        metrics = {"n_nodes": n, "n_known": int(np.sum(data.known != 0)),
                   "fingerprint": data.graph.fingerprint}
    else:
        n = args.n or 120
        data = synth_call_log(n, args.clusters, args.churn_clusters,
                              args.observed_frac, seed=args.seed)
        gio.write_matrix(data.durations, out / "durations.csv")
        gio.write_graph(data.graph, out / "graph.txt")
        gio.write_labels(data.churned, out / "churned.csv")
        gio.write_labels(data.observed, out / "observed.csv")
        outputs = {"durations": "durations.csv", "graph": "graph.txt",
                   "churned": "churned.csv", "observed": "observed.csv"}
        metrics = {"n_nodes": n, "n_churned": int(np.sum(data.churned)),
                   "n_observed": int(np.sum(data.observed)),
                   "fingerprint": data.graph.fingerprint}
    _write_summary(out, f"synth {args.kind}", args, outputs, metrics)


def cmd_shift(args) -> None:
    out = _outdir(args)
    g, s = _load_graph_signal(args.graph, args.signal)
    shifted = graph_shift(g, s)
    gio.write_signal(shifted, out / "shifted.csv")
    _write_summary(out, "shift", args, {"signal": "shifted.csv"},
                   {"n_nodes": g.n_nodes})


def cmd_filter_apply(args) -> None:
    out = _outdir(args)
    g, s = _load_graph_signal(args.graph, args.signal)
    f = gio.read_filter(args.taps, g)
    result = apply_filter(g, f, s)
    gio.write_signal(result, out / "filtered.csv")
    _write_summary(out, "filter apply", args, {"signal": "filtered.csv"},
                   {"n_taps": f.n_taps})


def cmd_filter_invert(args) -> None:
    out = _outdir(args)
    g = gio.read_graph(args.graph)
    f = gio.read_filter(args.taps, g)
    tol = _tolerances(args)
    basis = jordan_decompose(g, backend=args.backend, tol=tol)
    inv = invert_filter(f, basis, tol=tol)
    gio.write_filter(inv, out / "inverse.json")
    _write_summary(out, "filter invert", args, {"taps": "inverse.json"},
                   {"degree": inv.taps.degree, "cond_V": basis.cond_V})


def cmd_filter_reduce(args) -> None:
    out = _outdir(args)
    g = gio.read_graph(args.graph)
    f = gio.read_filter(args.taps, g)
    tol = _tolerances(args)
    basis = jordan_decompose(g, backend=args.backend, tol=tol)
    reduced = reduce_filter(f, min_poly(basis))
    gio.write_filter(reduced, out / "reduced.json")
    _write_summary(out, "filter reduce", args, {"taps": "reduced.json"},
                   {"degree_before": f.taps.degree, "degree_after": reduced.taps.degree})


def cmd_filter_impulse(args) -> None:
    out = _outdir(args)
    g = gio.read_graph(args.graph)
    f = gio.read_filter(args.taps, g)
    u = impulse_response(g, f)
    gio.write_signal(u, out / "impulse.csv")
    _write_summary(out, "filter impulse", args, {"signal": "impulse.csv"},
                   {"n_taps": f.n_taps})


def cmd_gft(args) -> None:
    out = _outdir(args)
    g, s = _load_graph_signal(args.graph, args.signal)
    tol = _tolerances(args)
    basis = jordan_decompose(g, backend=args.backend, tol=tol)
    spec = gft(basis, s)
    gio.write_spectrum(spec, out / "spectrum.csv")
    _write_summary(out, "gft", args, {"spectrum": "spectrum.csv"},
                   {"cond_V": basis.cond_V,
                    "n_distinct_eigenvalues": basis.n_distinct})


def cmd_igft(args) -> None:
    out = _outdir(args)
    g = gio.read_graph(args.graph)
    coeffs = gio.read_signal(args.spectrum)
    tol = _tolerances(args)
    basis = jordan_decompose(g, backend=args.backend, tol=tol)
    signal = igft(basis, Spectrum(coeffs, basis.basis_id))
    gio.write_signal(signal, out / "signal.csv")
    _write_summary(out, "igft", args, {"signal": "signal.csv"},
                   {"cond_V": basis.cond_V})


def cmd_spectral_decompose(args) -> None:
    out = _outdir(args)
    g = gio.read_graph(args.graph)
    tol = _tolerances(args)
    basis = jordan_decompose(g, backend=args.backend, tol=tol)
    (out / "basis.json").write_text(
        json.dumps(gio.basis_to_json(basis), sort_keys=True, indent=2) + "\n"
    )
    _write_summary(out, "spectral decompose", args, {"basis": "basis.json"},
                   {"cond_V": basis.cond_V, "backend_tag": basis.backend_tag,
                    "n_distinct_eigenvalues": basis.n_distinct,
                    "diagonalizable": basis.is_diagonalizable})


def cmd_lp_fit(args) -> None:
    out = _outdir(args)
    g, s = _load_graph_signal(args.graph, args.signal)
    f = lp_fit(g, s, args.taps_count)
    gio.write_filter(f, out / "taps.json")
    r = lp_residual(g, f, s)
    energy = float(np.sum(s.values.real**2))
    _write_summary(out, "lp fit", args, {"taps": "taps.json"},
                   {"residual_energy_ratio": float(np.sum(r**2)) / max(energy, 1e-300),
                    "n_taps": args.taps_count})


def cmd_lp_encode(args) -> None:
    out = _outdir(args)
    g, s = _load_graph_signal(args.graph, args.signal)
    f = gio.read_filter(args.taps, g)
    code = lp_encode(g, f, s, args.bits)
    gio.write_lpcode(code, out / "code.lpc")
    _write_summary(out, "lp encode", args, {"code": "code.lpc"},
                   {"bits": args.bits, "range_lo": code.header.lo,
                    "range_hi": code.header.hi})


def cmd_lp_decode(args) -> None:
    out = _outdir(args)
    g = gio.read_graph(args.graph)
    code = gio.read_lpcode(args.code, g)
    tol = _tolerances(args)
    basis = jordan_decompose(g, backend=args.backend, tol=tol)
    decoded = lp_decode(g, code.taps, code, basis, tol=tol)
    gio.write_signal(decoded, out / "decoded.csv")
    metrics = {"bits": code.header.bits}
    if args.reference is not None:
        ref = gio.read_signal(args.reference)
        metrics["relative_error"] = _relative_error(ref.real, decoded.values.real)
    _write_summary(out, "lp decode", args, {"signal": "decoded.csv"}, metrics)


def cmd_lp_sweep(args) -> None:
    out = _outdir(args)
    g, s = _load_graph_signal(args.graph, args.signal)
    tol = _tolerances(args)
    basis = jordan_decompose(g, backend=args.backend, tol=tol)
    rows = ["L,B,relative_error"]
    for n_taps in range(args.taps_min, args.taps_max + 1):
        f = lp_fit(g, s, n_taps)
        for bits in range(1, args.bits_max + 1):
            code = lp_encode(g, f, s, bits)
            decoded = lp_decode(g, f, code, basis, tol=tol)
            err = _relative_error(s.values.real, decoded.values.real)
            rows.append(f"{n_taps},{bits},{err!r}")
    (out / "sweep.csv").write_text("\n".join(rows) + "\n")
    _write_summary(out, "lp sweep", args, {"sweep": "sweep.csv"},
                   {"taps_range": [args.taps_min, args.taps_max],
                    "bits_range": [1, args.bits_max]})


def cmd_compress(args) -> None:
    out = _outdir(args)
    g = gio.read_graph(args.graph)
    signals = [g.signal(gio.read_signal(p)) for p in args.signal]
    tol = _tolerances(args)
    basis = jordan_decompose(g, backend=args.backend, tol=tol)
    outputs, metrics = {}, {"cond_V": basis.cond_V}

    if args.dominant:
        modal, hist = dominant_basis_vector(basis, signals)
        rows = ["basis_index,count"]
        rows += [f"{i},{int(c)}" for i, c in enumerate(hist) if c]
        (out / "dominant.csv").write_text("\n".join(rows) + "\n")
        outputs["dominant"] = "dominant.csv"
        metrics["modal_index"] = modal
    s = signals[0]
    if args.sweep:
        rows = ["C,relative_error"]
        for keep in range(1, g.n_nodes + 1):
            rec = decompress(basis, compress(basis, s, keep))
            rows.append(f"{keep},{_relative_error(s.values, rec.values)!r}")
        (out / "sweep.csv").write_text("\n".join(rows) + "\n")
        outputs["sweep"] = "sweep.csv"
    if args.keep is not None:
        spec = compress(basis, s, args.keep)
        rec = decompress(basis, spec)
        gio.write_spectrum(spec, out / "spectrum.csv")
        gio.write_signal(rec, out / "reconstructed.csv")
        outputs["spectrum"] = "spectrum.csv"
        outputs["reconstructed"] = "reconstructed.csv"
        metrics["keep"] = args.keep
        metrics["relative_error"] = _relative_error(s.values, rec.values)
    if not (args.sweep or args.dominant or args.keep is not None):
        raise ValidationError("compress needs --keep, --sweep, or --dominant")
    _write_summary(out, "compress", args, outputs, metrics)


def cmd_classify_train(args) -> None:
    out = _outdir(args)
    g = gio.read_graph(args.graph)
    known = gio.read_labels(args.labels, g.n_nodes)
    train = known if args.train_labels is None else gio.read_labels(
        args.train_labels, g.n_nodes
    )
    cf = train_classifier(g, g.signal(train), g.signal(known), args.stages)
    gio.write_classifier(cf, out / "classifier.json")
    scores = classify(g, cf, g.signal(known))
    mask = known != 0
    accuracy = float(
        np.mean(np.sign(scores.values.real[mask]) == known[mask])
    )
    _write_summary(out, "classify train", args, {"classifier": "classifier.json"},
                   {"stages": list(cf.stages), "known_accuracy": accuracy})


def cmd_classify_apply(args) -> None:
    out = _outdir(args)
    g = gio.read_graph(args.graph)
    known = gio.read_labels(args.labels, g.n_nodes)
    cf = gio.read_classifier(args.classifier)
    scores = classify(g, cf, g.signal(known))
    predicted = np.sign(scores.values.real)
    gio.write_signal(scores, out / "scores.csv")
    gio.write_labels(predicted, out / "predicted.csv")
    metrics = {"n_undecided": int(np.sum(predicted == 0))}
    if args.truth is not None:
        truth = gio.read_labels(args.truth, g.n_nodes)
        held_out = (known == 0) & (truth != 0)
        if np.any(held_out):
            metrics["held_out_accuracy"] = float(
                np.mean(predicted[held_out] == truth[held_out])
            )
    _write_summary(out, "classify apply", args,
                   {"scores": "scores.csv", "predicted": "predicted.csv"}, metrics)


def cmd_churn_train(args) -> None:
    out = _outdir(args)
    durations = gio.read_matrix(args.durations)
    g = normalize_call_graph(durations)
    observed = gio.read_labels(args.observed, g.n_nodes, allowed=(0, 1))
    truth = gio.read_labels(args.truth, g.n_nodes, allowed=(0, 1))
    cf = train_churn_classifier(
        g, g.signal(observed), g.signal(truth), args.stages, args.threshold
    )
    gio.write_classifier(cf, out / "classifier.json")
    _, preds = predict_churn(g, cf, g.signal(observed), args.threshold)
    _write_summary(out, "churn train", args, {"classifier": "classifier.json"},
                   {"stages": list(cf.stages),
                    "train_accuracy": float(np.mean(preds == (truth == 1)))})


def cmd_churn_predict(args) -> None:
    out = _outdir(args)
    durations = gio.read_matrix(args.durations)
    g = normalize_call_graph(durations)
    observed = gio.read_labels(args.observed, g.n_nodes, allowed=(0, 1))
    cf = gio.read_classifier(args.classifier)
    scores, preds = predict_churn(g, cf, g.signal(observed), args.threshold)
    gio.write_signal(scores, out / "scores.csv")
    gio.write_labels(preds.astype(int), out / "predicted.csv")
    metrics = {"n_predicted_churn": int(np.sum(preds)),
               "threshold": args.threshold}
    if args.truth is not None:
        truth = gio.read_labels(args.truth, g.n_nodes, allowed=(0, 1))
        metrics["accuracy"] = float(np.mean(preds == (truth == 1)))
        metrics["majority_baseline"] = float(
            max(np.mean(truth == 1), np.mean(truth == 0))
        )
    _write_summary(out, "churn predict", args,
                   {"scores": "scores.csv", "predicted": "predicted.csv"}, metrics)


# -- entry point ---------------------------------------------------------------------

def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    start = time.perf_counter()
    try:
        args.func(args)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    print(f"elapsed: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

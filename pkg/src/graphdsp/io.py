"""File formats: edge lists, signal/coordinate/label CSVs, filter JSON, and
the binary LP-code container.

All writers are deterministic (floats serialized with shortest round-trip
repr, JSON with sorted keys); parse errors carry 1-based line numbers.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .apps import LPCode, QuantHeader
from .errors import ValidationError
from .filtering import GraphFilter
from .graph import DENSE_THRESHOLD, EDGE_HEADER_PREFIX, Graph, build_graph
from .polynomial import Polynomial
from .spectral import SpectralBasis

LPCODE_MAGIC = b"GDSPLP1"


def _fmt(x: float) -> str:
    return repr(float(x))


# -- edge lists ------------------------------------------------------------------

def write_graph(g: Graph, path) -> None:
    Path(path).write_text("\n".join(g.edge_lines()) + "\n")


def read_graph(path, dense_threshold: int = DENSE_THRESHOLD) -> Graph:
    lines = Path(path).read_text().splitlines()
    if not lines or not lines[0].startswith(EDGE_HEADER_PREFIX):
        raise ValidationError(f"{path}: line 1: missing '{EDGE_HEADER_PREFIX}<n>' header")
    try:
        n = int(lines[0][len(EDGE_HEADER_PREFIX):])
    except ValueError:
        raise ValidationError(f"{path}: line 1: malformed node count") from None
    edges = []
    for i, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) not in (3, 4):
            raise ValidationError(
                f"{path}: line {i}: expected 'src dst re [im]', got {line!r}"
            )
        try:
            src, dst = int(parts[0]), int(parts[1])
            re = float(parts[2])
            im = float(parts[3]) if len(parts) == 4 else 0.0
        except ValueError:
            raise ValidationError(f"{path}: line {i}: malformed number") from None
        edges.append((src, dst, complex(re, im)))
    return build_graph(n, edges, dense_threshold=dense_threshold)


# -- signals ------------------------------------------------------------------------

def write_signal(values, path) -> None:
    vals = np.asarray(getattr(values, "values", values), dtype=np.complex128).reshape(-1)
    lines = []
    if np.any(vals.imag != 0):
        for v in vals:
            lines.append(f"{_fmt(v.real)},{_fmt(v.imag)}")
    else:
        for v in vals:
            lines.append(_fmt(v.real))
    Path(path).write_text("\n".join(lines) + "\n")


def read_signal(path) -> np.ndarray:
    values = []
    for i, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) not in (1, 2):
            raise ValidationError(f"{path}: line {i}: expected 're' or 're,im'")
        try:
            re = float(parts[0])
            im = float(parts[1]) if len(parts) == 2 else 0.0
        except ValueError:
            raise ValidationError(f"{path}: line {i}: malformed number") from None
        values.append(complex(re, im))
    if not values:
        raise ValidationError(f"{path}: empty signal file")
    return np.asarray(values, dtype=np.complex128)


# -- coordinates ----------------------------------------------------------------------

def write_coords(coords, path) -> None:
    pts = np.asarray(coords, dtype=float)
    dim = pts.shape[1]
    header = "id," + ",".join("xyz"[:dim])
    lines = [header]
    for i, row in enumerate(pts):
        lines.append(f"{i}," + ",".join(_fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_coords(path) -> np.ndarray:
    rows: dict[int, tuple] = {}
    lines = Path(path).read_text().splitlines()
    start = 1
    dim = None
    for i, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        if i == 1 and line.split(",")[0].strip().lower() == "id":
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) not in (3, 4):
            raise ValidationError(f"{path}: line {i}: expected 'id,x,y[,z]'")
        try:
            node = int(parts[0])
            pt = tuple(float(p) for p in parts[1:])
        except ValueError:
            raise ValidationError(f"{path}: line {i}: malformed number") from None
        if dim is None:
            dim = len(pt)
        elif len(pt) != dim:
            raise ValidationError(f"{path}: line {i}: inconsistent dimension")
        if node in rows:
            raise ValidationError(f"{path}: line {i}: duplicate id {node}")
        rows[node] = pt
    if not rows:
        raise ValidationError(f"{path}: empty coordinates file")
    n = len(rows)
    if sorted(rows) != list(range(n)):
        raise ValidationError(f"{path}: ids must cover 0..{n - 1}")
    return np.asarray([rows[i] for i in range(n)], dtype=float)


# -- labels --------------------------------------------------------------------------

def write_labels(values, path) -> None:
    vals = np.asarray(getattr(values, "values", values)).real
    lines = ["node_id,label"]
    for i, v in enumerate(vals):
        lines.append(f"{i},{int(round(float(v)))}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_labels(path, n_nodes: int, allowed=(-1, 0, 1)) -> np.ndarray:
    out = np.zeros(n_nodes)
    seen = set()
    for i, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        if i == 1 and line.split(",")[0].strip().lower() == "node_id":
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise ValidationError(f"{path}: line {i}: expected 'node_id,label'")
        try:
            node, label = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValidationError(f"{path}: line {i}: malformed number") from None
        if not 0 <= node < n_nodes:
            raise ValidationError(f"{path}: line {i}: node {node} out of range")
        if node in seen:
            raise ValidationError(f"{path}: line {i}: duplicate node {node}")
        if label not in allowed:
            raise ValidationError(f"{path}: line {i}: label must be one of {allowed}")
        seen.add(node)
        out[node] = label
    return out


# -- dense matrices (call logs) ---------------------------------------------------------

def write_matrix(matrix, path) -> None:
    m = np.asarray(matrix, dtype=float)
    lines = [",".join(_fmt(v) for v in row) for row in m]
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix(path) -> np.ndarray:
    rows = []
    width = None
    for i, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split(",")
        try:
            row = [float(p) for p in parts]
        except ValueError:
            raise ValidationError(f"{path}: line {i}: malformed number") from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ValidationError(f"{path}: line {i}: ragged row")
        rows.append(row)
    if not rows:
        raise ValidationError(f"{path}: empty matrix file")
    return np.asarray(rows, dtype=float)


# -- JSON forms ------------------------------------------------------------------------

def poly_to_json(p: Polynomial) -> dict:
    return {"coeffs": [[c.real, c.imag] for c in p.coeffs_complex()]}


def poly_from_json(obj: dict) -> Polynomial:
    try:
        coeffs = [complex(re, im) for re, im in obj["coeffs"]]
    except (KeyError, TypeError, ValueError):
        raise ValidationError("polynomial JSON must carry 'coeffs': [[re, im], ...]") from None
    return Polynomial(coeffs)


def write_filter(f: GraphFilter, path) -> None:
    obj = poly_to_json(f.taps)
    obj["graph"] = f.graph_id
    Path(path).write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def read_filter(path, g: Graph | None = None) -> GraphFilter:
    obj = json.loads(Path(path).read_text())
    taps = poly_from_json(obj)
    graph_id = obj.get("graph", "")
    if g is not None and graph_id and graph_id != g.fingerprint:
        raise ValidationError(
            f"{path}: filter was built for a different graph (fingerprint mismatch)"
        )
    return GraphFilter(taps, graph_id or (g.fingerprint if g else ""))


def write_classifier(cf, path) -> None:
    Path(path).write_text(
        json.dumps({"stages": list(cf.stages)}, sort_keys=True, indent=2) + "\n"
    )


def read_classifier(path):
    from .apps import ClassifierFilter

    obj = json.loads(Path(path).read_text())
    if "stages" not in obj:
        raise ValidationError(f"{path}: classifier JSON must carry 'stages'")
    return ClassifierFilter(tuple(float(h) for h in obj["stages"]))


def basis_to_json(basis: SpectralBasis) -> dict:
    def cplx_matrix(m):
        return [[[v.real, v.imag] for v in row] for row in np.asarray(m)]

    return {
        "n": basis.n_nodes,
        "graph": basis.graph_id,
        "backend": basis.backend_tag,
        "cond_V": basis.cond_V,
        "eigenvalues": [[lam.real, lam.imag] for lam in basis.eigenvalues],
        "chains": [list(c) for c in basis.chains],
        "V": cplx_matrix(basis.V),
        "F": cplx_matrix(basis.F),
    }


def write_spectrum(spec, path) -> None:
    write_signal(spec.coeffs, path)


# -- LP code binary container --------------------------------------------------------------

def pack_bits(codes: np.ndarray, bits: int) -> bytes:
    out = bytearray()
    acc = 0
    nacc = 0
    mask = (1 << bits) - 1
    for c in codes:
        acc |= (int(c) & mask) << nacc
        nacc += bits
        while nacc >= 8:
            out.append(acc & 0xFF)
            acc >>= 8
            nacc -= 8
    if nacc:
        out.append(acc & 0xFF)
    return bytes(out)


def unpack_bits(data: bytes, bits: int, count: int) -> np.ndarray:
    out = np.zeros(count, dtype=np.int64)
    acc = 0
    nacc = 0
    pos = 0
    mask = (1 << bits) - 1
    for i in range(count):
        while nacc < bits:
            if pos >= len(data):
                raise ValidationError("LP code payload truncated")
            acc |= data[pos] << nacc
            pos += 1
            nacc += 8
        out[i] = acc & mask
        acc >>= bits
        nacc -= bits
    return out


def write_lpcode(code: LPCode, path) -> None:
    taps = code.taps.taps.coeffs_complex().real
    header = struct.pack(
        "<7sxIIH", LPCODE_MAGIC, len(code.codes), len(taps), code.header.bits
    )
    header += struct.pack("<dd", code.header.lo, code.header.hi)
    header += bytes.fromhex(code.graph_id)
    payload = struct.pack(f"<{len(taps)}d", *taps) if len(taps) else b""
    payload += pack_bits(code.codes, code.header.bits)
    Path(path).write_bytes(header + payload)


def read_lpcode(path, g: Graph | None = None) -> LPCode:
    blob = Path(path).read_bytes()
    head_fmt = "<7sxIIH"
    head_len = struct.calcsize(head_fmt)
    if len(blob) < head_len + 16 + 32:
        raise ValidationError(f"{path}: truncated LP code container")
    magic, n, n_taps, bits = struct.unpack_from(head_fmt, blob, 0)
    if magic != LPCODE_MAGIC:
        raise ValidationError(f"{path}: bad magic, not an LP code container")
    off = head_len
    lo, hi = struct.unpack_from("<dd", blob, off)
    off += 16
    fingerprint = blob[off:off + 32].hex()
    off += 32
    taps = np.array(struct.unpack_from(f"<{n_taps}d", blob, off)) if n_taps else np.zeros(0)
    off += 8 * n_taps
    codes = unpack_bits(blob[off:], bits, n)
    if g is not None and fingerprint != g.fingerprint:
        raise ValidationError(f"{path}: LP code belongs to a different graph")
    return LPCode(
        GraphFilter(Polynomial(taps), fingerprint),
        codes,
        QuantHeader(lo, hi, bits),
        fingerprint,
    )

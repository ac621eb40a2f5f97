"""Grids of ``log10 ||(J_n - z)^{-1}||`` and their CSV/JSON serialisation."""
from __future__ import annotations

import json
import math
import os
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import DimensionError, SingularError
from .operator import OperatorSpec
from .oracle import resolvent_norm

__all__ = ["PseudoField", "field", "emit", "load", "dumps", "point_seed", "DEFAULT_RE", "DEFAULT_IM", "thread_count"]

# windows that contain lambda_N for |N| <= 6 when |alpha| <= 0.9
DEFAULT_RE = (-15.0, 15.0, 201)
DEFAULT_IM = (-4.0, 4.0, 201)
DEFAULT_DIM = 1000
DEFAULT_TOL = 1e-4
CSV_HEADER = "re,im,log10_norm"


@dataclass(frozen=True, eq=False)
class PseudoField:
    """Row-major field: ``values[i, j]`` belongs to ``re_axis[j] + 1j * im_axis[i]``."""

    re_axis: tuple
    im_axis: tuple
    values: np.ndarray
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (len(self.im_axis), len(self.re_axis)):
            raise DimensionError(f"values shape {v.shape} does not match axes ({len(self.im_axis)}, {len(self.re_axis)})")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "re_axis", tuple(float(x) for x in self.re_axis))
        object.__setattr__(self, "im_axis", tuple(float(x) for x in self.im_axis))

    def at(self, z: complex) -> float:
        """Value at the grid point nearest to ``z``."""
        j = int(np.argmin(np.abs(np.asarray(self.re_axis) - z.real)))
        i = int(np.argmin(np.abs(np.asarray(self.im_axis) - z.imag)))
        return float(self.values[i, j])


def _bits(x: float) -> int:
    return struct.unpack("<Q", struct.pack("<d", float(x) + 0.0))[0]


def point_seed(seed: int, z: complex) -> int:
    """Start-vector seed for one grid point.

    Depends on ``Re z`` and ``|Im z|`` only, so conjugate points share a
    start vector and real-parameter fields are exactly conjugation
    symmetric.
    """
    ss = np.random.SeedSequence([int(seed) & 0xFFFFFFFF, _bits(z.real), _bits(abs(z.imag))])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def thread_count() -> int:
    """Worker count from ``EJSPEC_THREADS`` (0 or unset means one per CPU)."""
    raw = os.environ.get("EJSPEC_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def _axis(r):
    lo, hi, count = r
    if int(count) < 2:
        raise DimensionError("grid counts must be at least 2")
    return np.linspace(float(lo), float(hi), int(count))


def _log_norm(spec, z, dim, tol, seed):
    try:
        return math.log10(resolvent_norm(spec, z, dim, tol, point_seed(seed, z)))
    except SingularError:
        return math.inf


def field(
    spec: OperatorSpec,
    dim: int = DEFAULT_DIM,
    re_range=DEFAULT_RE,
    im_range=DEFAULT_IM,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    threads: int | None = None,
) -> PseudoField:
    """Sweep ``log10`` resolvent norms of the ``dim x dim`` truncation over a grid.

    Points are independent; singular points are recorded as ``+inf``.
    The result does not depend on ``threads``.
    """
    re_axis = _axis(re_range)
    im_axis = _axis(im_range)

    def row(y):
        return [_log_norm(spec, complex(x, y), dim, tol, seed) for x in re_axis]

    workers = threads or thread_count()
    if workers == 1:
        rows = [row(y) for y in im_axis]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, im_axis))
    meta = {"mode": spec.mode, "param": [spec.param.real, spec.param.imag], "dim": int(dim), "tol": float(tol), "seed": int(seed)}
    return PseudoField(tuple(re_axis), tuple(im_axis), np.array(rows), meta)


def _num(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _json_num(x: float) -> str:
    return json.dumps(_num(x)) if math.isinf(x) or math.isnan(x) else _num(x)


def dumps(v) -> str:
    """JSON text with floats at 17 significant digits, complex numbers as
    ``[re, im]`` and infinities as the strings ``"inf"``/``"-inf"``."""
    if isinstance(v, (bool, np.bool_)) or v is None or isinstance(v, str):
        return json.dumps(bool(v) if isinstance(v, np.bool_) else v)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _json_num(float(v))
    if isinstance(v, (complex, np.complexfloating)):
        return dumps([float(v.real), float(v.imag)])
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(x)}" for k, x in v.items()) + "}"
    return "[" + ", ".join(dumps(x) for x in v) + "]"


def to_json(fieldv: PseudoField) -> str:
    doc = {
        "re_axis": list(fieldv.re_axis),
        "im_axis": list(fieldv.im_axis),
        "values": [[float(x) for x in r] for r in fieldv.values],
        "meta": fieldv.meta,
    }
    return dumps(doc) + "\n"


def to_csv(fieldv: PseudoField) -> str:
    lines = [CSV_HEADER]
    for i, y in enumerate(fieldv.im_axis):
        for j, x in enumerate(fieldv.re_axis):
            lines.append(f"{_num(x)},{_num(y)},{_num(fieldv.values[i, j])}")
    return "\n".join(lines) + "\n"


def emit(fieldv: PseudoField, format: str = "json", path: str | None = None) -> str:
    """Serialise ``fieldv`` as CSV rows ``re,im,log10_norm`` (im outer, re
    inner, both ascending) or JSON; writes to ``path`` when given and
    returns the text."""
    if format == "csv":
        text = to_csv(fieldv)
    elif format == "json":
        text = to_json(fieldv)
    else:
        raise ValueError(f"unknown format {format!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text


def _decode(x):
    if isinstance(x, str):
        return float(x)
    if isinstance(x, list):
        return [_decode(v) for v in x]
    return x


def load(path: str) -> PseudoField:
    """Read a field written by :func:`emit` (either format)."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.startswith(CSV_HEADER):
        rows = [tuple(float(t) for t in line.split(",")) for line in text.splitlines()[1:] if line]
        re_axis = sorted({r[0] for r in rows})
        im_axis = sorted({r[1] for r in rows})
        values = np.array([r[2] for r in rows]).reshape(len(im_axis), len(re_axis))
        return PseudoField(tuple(re_axis), tuple(im_axis), values, {})
    doc = json.loads(text)
    meta = doc.get("meta", {})
    return PseudoField(tuple(doc["re_axis"]), tuple(doc["im_axis"]), np.array(_decode(doc["values"]), dtype=float), meta)

"""Serialisation: reports as JSON (17 significant digits), curves and samples as CSV."""
from __future__ import annotations

import json
import math

import numpy as np

from .estimate import LipschitzReport
from .ratio import RatioSample

REPORT_FIELDS = ("sup_estimate", "inf_estimate", "argmax", "argmin", "theoretical_upper",
                 "theoretical_lower", "n_samples", "n_refinement_steps", "verdict", "seed")


def fmt_json_float(v: float) -> str:
    v = float(v)
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Infinity" if v > 0 else "-Infinity"
    return f"{v:.17g}"


def fmt_csv_float(v: float) -> str:
    """Shortest round-trip decimal, without a trailing ``.0``."""
    v = float(v)
    if v == 0.0:
        return "0"
    s = repr(v)
    return s[:-2] if s.endswith(".0") else s


def _plain(obj):
    if obj is None or isinstance(obj, (str, bool)):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return _plain(obj.to_dict())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON text with every float written with 17 significant digits."""

    def enc(o, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if isinstance(o, float):
            return fmt_json_float(o)
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [f"{pad}{json.dumps(k)}: {enc(v, level + 1)}" for k, v in o.items()]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(o, list):
            if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in o):
                return "[" + ", ".join(enc(v, level) for v in o) + "]"
            items = [pad + enc(v, level + 1) for v in o]
            return "[\n" + ",\n".join(items) + "\n" + end + "]" if items else "[]"
        return json.dumps(o)

    return enc(_plain(obj), 0) + "\n"


def report_to_dict(r: LipschitzReport) -> dict:
    return {name: getattr(r, name) for name in REPORT_FIELDS}


def report_to_json(r: LipschitzReport) -> str:
    return dumps(report_to_dict(r))


def ratio_sample_to_dict(s: RatioSample) -> dict:
    return {"x": s.x, "y": s.y, "h_source": s.h_source, "h_image": s.h_image, "ratio": s.ratio}


def curve_to_csv(rows) -> str:
    lines = ["t,ratio"] + [f"{fmt_csv_float(t)},{fmt_csv_float(r)}" for t, r in rows]
    return "\n".join(lines) + "\n"


def samples_to_csv(X, Y, h_src, h_img, ratio) -> str:
    X = np.atleast_2d(X)
    Y = np.atleast_2d(Y)
    n = X.shape[1]
    head = [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)] + ["h_src", "h_img", "ratio"]
    lines = [",".join(head)]
    for row in zip(X, Y, np.atleast_1d(h_src), np.atleast_1d(h_img), np.atleast_1d(ratio)):
        vals = [*row[0], *row[1], row[2], row[3], row[4]]
        lines.append(",".join(fmt_csv_float(v) for v in vals))
    return "\n".join(lines) + "\n"

"""
JSON serialisation of estimation reports and coverage summaries.

Reals are written with 17 significant digits; infinities become the strings
``"inf"``/``"-inf"``.
"""

from __future__ import annotations

import json
import math
from typing import Any, Optional

import numpy as np

from .estimator import EstimationReport
from .intervals import Interval, IntervalSet

SCHEMA_VERSION = "1.0"


def _real(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    s = format(x, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON text with fixed-precision reals."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _real(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, Interval):
        obj = [obj.lo, obj.hi]
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray, Interval)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _decode_real(x):
    if isinstance(x, str) and x in ("inf", "-inf", "nan"):
        return float(x)
    return x


def loads(text: str) -> Any:
    """Inverse of :func:`dumps`; the strings ``"inf"``/``"-inf"``/``"nan"`` become floats."""

    def walk(v):
        if isinstance(v, dict):
            return {k: walk(x) for k, x in v.items()}
        if isinstance(v, list):
            return [walk(x) for x in v]
        return _decode_real(v)

    return walk(json.loads(text))


def intervals_to_dict(ivs: IntervalSet) -> dict:
    return {
        "pi": list(ivs.pi),
        "gap": ivs.gap,
        "pimin": ivs.pimin,
        "relaxation_time": {"interval": ivs.relaxation, "derived": True},
        "combined_pimin": ivs.combined_pimin,
        "combined_gap": ivs.combined_gap,
        "flags": list(ivs.flags),
    }


def report_to_dict(rep: EstimationReport, emit_matrix: bool = False,
                   timings: Optional[dict] = None) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "inputs": {"n": rep.n, "d": rep.d, "delta": rep.delta, "c": rep.c},
        "estimates": {
            "pi": rep.pi_hat,
            "pimin": rep.pimin_hat,
            "gap": rep.gap_hat,
            "relaxation_time": rep.relaxation_hat,
            "eigenvalues": rep.eigenvalues,
        },
        "bounds": {
            "tau": rep.tau,
            "kappa": rep.kappa,
            "b": rep.b,
            "rho": rep.rho,
            "w": rep.w,
            "max_B": float(rep.B.max()),
        },
        "intervals": intervals_to_dict(rep.intervals),
    }
    if emit_matrix:
        out["P_hat"] = rep.P_hat
    if timings is not None:
        out["timings"] = timings
    return out

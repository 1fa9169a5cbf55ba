"""Byte-stable JSON, CSV and aligned-text emitters.

JSON floats are printed with 17 significant digits and complex numbers as
``[re, im]``; dict order is preserved as built, so a fixed config gives
identical bytes on every run.  Non-finite floats become the strings
``"inf"``, ``"-inf"`` and ``"nan"``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Mapping, Sequence

import mpmath
import numpy as np

__all__ = ["plain", "dumps_json", "dumps_csv", "dumps_text", "fmt_float"]


def fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    s = "%.17g" % x
    # keep floats recognisable as floats
    if not any(c in s for c in ".eEn"):
        s += ".0"
    return s


def plain(obj):
    """Reduce numpy / mpmath / complex values to JSON-ready builtins."""
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, mpmath.mpf):
        v = float(obj)
        # keep values below double range readable instead of flushing to 0
        return v if (v != 0.0 or obj == 0) else mpmath.nstr(obj, 17)
    if isinstance(obj, mpmath.mpc):
        return [plain(obj.real), plain(obj.imag)]
    if isinstance(obj, np.ndarray):
        return [plain(v) for v in obj.tolist()]
    if isinstance(obj, Mapping):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        # short numeric lists (complex pairs, small vectors) stay on one line
        if all(not isinstance(v, (dict, list)) for v in obj) and len(obj) <= 4:
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps_json(obj, indent: int = 2) -> str:
    return _encode(plain(obj), indent, 0) + "\n"


def _cell(v) -> str:
    if isinstance(v, float):
        return fmt_float(v).strip('"')
    if isinstance(v, list):
        return " ".join(_cell(x) for x in v)
    if v is None:
        return ""
    return str(v)


def dumps_csv(rows: Sequence[Mapping]) -> str:
    """One row per record; complex ``[re, im]`` cells become ``re_`` / ``im_`` columns."""
    rows = [plain(r) for r in rows]
    if not rows:
        return ""
    header: list[str] = []
    flat_rows = []
    for r in rows:
        flat = {}
        for k, v in r.items():
            if isinstance(v, list) and len(v) == 2 and all(isinstance(x, float) for x in v):
                flat[f"{k}_re"], flat[f"{k}_im"] = v
            else:
                flat[k] = v
        for k in flat:
            if k not in header:
                header.append(k)
        flat_rows.append(flat)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for flat in flat_rows:
        w.writerow([_cell(flat.get(k)) for k in header])
    return buf.getvalue()


def _text_cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.10g}"
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, float) for x in v):
        re, im = v
        return f"{re:.10g}{im:+.10g}j"
    if isinstance(v, list):
        return ", ".join(_text_cell(x) for x in v)
    return str(v)


def dumps_text(rows: Sequence[Mapping], title: str | None = None) -> str:
    """Right-aligned columns, one line per record."""
    rows = [plain(r) for r in rows]
    out = []
    if title:
        out.append(title)
    if not rows:
        return "\n".join(out) + "\n"
    header = list(rows[0].keys())
    for r in rows[1:]:
        header += [k for k in r if k not in header]
    cells = [[_text_cell(r.get(k, "")) for k in header] for r in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(header)]
    out.append("  ".join(h.rjust(w) for h, w in zip(header, widths)))
    for c in cells:
        out.append("  ".join(x.rjust(w) for x, w in zip(c, widths)))
    return "\n".join(out) + "\n"

"""File formats: distance matrices (CSV/JSON), barcode JSON, SVG barcodes."""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .errors import InvalidParameter
from .metric_spaces import DistanceMatrix, validate
from .persistence import INF, Barcode

SIG_DIGITS = 15


def _round(x: float) -> float:
    return float(f"{x:.{SIG_DIGITS}g}")


def jsonable(obj):
    """Recursively convert to JSON-ready values: inf -> "inf", floats to 15 digits."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return _round(x)
    return obj


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def _parse_number(x):
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "+inf", "infinity"):
            return INF
        return float(x)
    return float(x)


# --- distance matrices -------------------------------------------------------

def matrix_to_dict(D: DistanceMatrix) -> dict:
    out = {"n": D.n, "d": D.d.tolist()}
    if D.labels is not None:
        out["labels"] = list(D.labels)
    if D.coords is not None:
        out["coords"] = D.coords.tolist()
    return out


def matrix_to_csv(D: DistanceMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in D.d:
        writer.writerow([repr(_round(float(x))) for x in row])
    return buf.getvalue()


def matrix_from_dict(data: dict) -> DistanceMatrix:
    if "d" not in data:
        raise InvalidParameter("matrix JSON needs a 'd' field")
    D = validate(data["d"], labels=data.get("labels"), coords=data.get("coords"))
    if "n" in data and data["n"] != D.n:
        raise InvalidParameter(f"'n' is {data['n']} but the matrix has {D.n} rows")
    return D


def read_matrix(path) -> DistanceMatrix:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        return matrix_from_dict(json.loads(text))
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    return validate(np.array([[float(c) for c in r] for r in rows]))


def write_matrix(D: DistanceMatrix, path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        path.write_text(matrix_to_csv(D))
    else:
        path.write_text(dumps(matrix_to_dict(D)))


# --- barcodes ----------------------------------------------------------------

def barcode_to_dict(b: Barcode) -> dict:
    return {"field": b.field_char,
            "dims": {str(k): [[x, y] for x, y in b.pairs(k)] for k in b.dims}}


def barcode_from_dict(data: dict) -> Barcode:
    dims = {int(k): [(_parse_number(x), _parse_number(y)) for x, y in bars]
            for k, bars in data.get("dims", {}).items()}
    return Barcode(dims, int(data.get("field", 2)))


def read_barcode(path) -> Barcode:
    return barcode_from_dict(json.loads(Path(path).read_text()))


def write_barcode(b: Barcode, path, extra: dict = None) -> None:
    data = barcode_to_dict(b)
    data.update(extra or {})
    Path(path).write_text(dumps(data))


# --- SVG -----------------------------------------------------------------------

def render_svg(b: Barcode, width: int = 640, bar_height: int = 6, gap: int = 3) -> str:
    """One horizontal bar per interval, a band per dimension, axis 0..1.1*max finite death.

    Essential bars run to the right edge and end in an arrow head.
    """
    finite = [d for k in b.dims for _, d in b.pairs(k) if not math.isinf(d)]
    births = [a for k in b.dims for a, _ in b.pairs(k)]
    top = 1.1 * max(finite + births + [1e-12])
    left, right = 40, 10
    plot_w = width - left - right
    y = 20
    body = []
    for k in b.dims:
        body.append(f'<text x="4" y="{y + bar_height}" font-size="10">H{k}</text>')
        for a, d in b.pairs(k):
            x0 = left + plot_w * a / top
            x1 = left + plot_w * (min(d, top) / top)
            colour = "#b22" if math.isinf(d) else "#236"
            body.append(f'<rect x="{x0:.2f}" y="{y}" width="{max(x1 - x0, 0.5):.2f}" '
                        f'height="{bar_height}" fill="{colour}"/>')
            if math.isinf(d):
                body.append(f'<path d="M{x1:.2f},{y - 2} l6,{bar_height / 2 + 2} l-6,{bar_height / 2 + 2}z" '
                            f'fill="{colour}"/>')
            y += bar_height + gap
        y += 4 * gap
    axis_y = y
    ticks = []
    for i in range(6):
        v = top * i / 5
        x = left + plot_w * i / 5
        ticks.append(f'<line x1="{x:.2f}" y1="{axis_y}" x2="{x:.2f}" y2="{axis_y + 4}" stroke="black"/>')
        ticks.append(f'<text x="{x:.2f}" y="{axis_y + 14}" font-size="9" text-anchor="middle">{v:.3g}</text>')
    height = axis_y + 20
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">')
    axis = f'<line x1="{left}" y1="{axis_y}" x2="{left + plot_w}" y2="{axis_y}" stroke="black"/>'
    return "\n".join([head, *body, axis, *ticks, "</svg>"]) + "\n"

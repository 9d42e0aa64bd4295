"""Text renderings of exact matrices: JSON, CSV, LaTeX and a pretty grid.

Every entry is printed as an exact ``p/q`` token (``p`` alone when q = 1).
The JSON form is canonical, so emit -> parse -> emit is byte-identical.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

from .exact_linalg import Matrix, format_rational, parse_rational

FORMATS = ("pretty", "json", "csv", "latex")
# canonical order of the params object; unknown keys follow, sorted
_PARAM_ORDER = ("m", "n", "alpha", "lo", "hi", "which")


@dataclass(frozen=True)
class Document:
    family: str
    params: dict
    matrix: Matrix


def _canonical_params(params: dict) -> dict:
    keys = [k for k in _PARAM_ORDER if k in params]
    keys += sorted(k for k in params if k not in _PARAM_ORDER)
    return {k: params[k] for k in keys}


def to_json(family: str, params: dict, M: Matrix) -> str:
    doc = {
        "family": str(family),
        "params": _canonical_params(params),
        "rows": [[format_rational(x) for x in row] for row in M.tolist()],
    }
    return json.dumps(doc, separators=(", ", ": ")) + "\n"


def parse_json(text: str) -> Document:
    doc = json.loads(text)
    if set(doc) != {"family", "params", "rows"}:
        raise ValueError(f"unexpected JSON keys {sorted(doc)}")
    rows = [[parse_rational(tok) for tok in row] for row in doc["rows"]]
    return Document(doc["family"], doc["params"], Matrix.from_rows(rows))


def to_csv(M: Matrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in M.tolist():
        w.writerow(format_rational(x) for x in row)
    return buf.getvalue()


def latex_entry(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return rf"{sign}\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def to_latex(M: Matrix) -> str:
    lines = [r"\begin{pmatrix}"]
    rows = M.tolist()
    for k, row in enumerate(rows):
        end = r" \\" if k < len(rows) - 1 else ""
        lines.append(" & ".join(latex_entry(x) for x in row) + end)
    lines.append(r"\end{pmatrix}")
    return "\n".join(lines) + "\n"


def to_pretty(M: Matrix, labels: list[int] | None = None) -> str:
    """Right-aligned columns; optional integer labels head the rows and columns."""
    cells = [[format_rational(x) for x in row] for row in M.tolist()]
    if labels is not None:
        cells = [[""] + [str(x) for x in labels]] + [[str(lab)] + row for lab, row in zip(labels, cells)]
    if not cells:
        return "\n"
    widths = [max(len(r[c]) for r in cells) for c in range(len(cells[0]))]
    return "".join("  ".join(tok.rjust(w) for tok, w in zip(row, widths)).rstrip() + "\n" for row in cells)


def render(M: Matrix, fmt: str, family: str = "", params: dict | None = None,
           labels: list[int] | None = None) -> str:
    if fmt == "json":
        return to_json(family, params or {}, M)
    if fmt == "csv":
        return to_csv(M)
    if fmt == "latex":
        return to_latex(M)
    if fmt == "pretty":
        return to_pretty(M, labels)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")

"""Plain-text and TikZ pictures of labelings, polyominoes and fillings.

Both formats draw up-diagonal ``i`` as a row with the largest ``i`` on top
and down-diagonal ``j`` as a column, left to right.  The TikZ output rotates
that grid by 45 degrees so the poset's minimum sits at the bottom.
"""

from __future__ import annotations

from .moon import Filling, MoonPolyomino
from .realm import Labeling, format_rational


def _table(cells: dict, rows: list[int], cols: list[int]) -> str:
    width = max((len(v) for v in cells.values()), default=1)
    lines = []
    for i in rows:
        parts = [cells.get((i, j), ".").rjust(width) for j in cols]
        lines.append(f"{i:>3} | " + " ".join(parts))
    lines.append("    +-" + "-" * (len(cols) * (width + 1) - 1))
    lines.append("      " + " ".join(str(j).rjust(width) for j in cols))
    return "\n".join(lines)


def ascii_labeling(x: Labeling) -> str:
    cells = {p: format_rational(v) for p, v in x.items()}
    return _table(cells, list(range(x.shape.r, 0, -1)), list(range(1, x.shape.s + 1)))


def ascii_polyomino(M: MoonPolyomino, values: dict | None = None) -> str:
    rows = list(range(max(M.rows), min(M.rows) - 1, -1))
    cols = list(range(min(M.columns), max(M.columns) + 1))
    cells = {c: (format_rational(values[c]) if values else "#") for c in M.cells}
    return _table(cells, rows, cols)


def ascii_filling(x: Filling) -> str:
    return ascii_polyomino(x.polyomino, x.values)


def _tikz(cells: dict, top: int) -> str:
    out = ["\\begin{tikzpicture}[rotate=45]"]
    for (i, j), text in sorted(cells.items()):
        x0, y0 = j - 1, i - top - 1
        out.append(f"  \\draw ({x0},{y0}) rectangle ({x0 + 1},{y0 + 1});")
        if text:
            out.append(f"  \\node[rotate=45] at ({x0 + 0.5},{y0 + 0.5}) {{${text}$}};")
    out.append("\\end{tikzpicture}")
    return "\n".join(out)


def _tex(v) -> str:
    q = format_rational(v)
    if "/" in q:
        num, den = q.split("/")
        sign = "-" if num.startswith("-") else ""
        return f"{sign}\\frac{{{num.lstrip('-')}}}{{{den}}}"
    return q


def tikz_labeling(x: Labeling) -> str:
    return _tikz({p: _tex(v) for p, v in x.items()}, x.shape.r)


def tikz_polyomino(M: MoonPolyomino, values: dict | None = None) -> str:
    return _tikz({c: (_tex(values[c]) if values else "") for c in M.cells}, max(M.rows))


def render(obj, fmt: str = "ascii") -> str:
    if fmt not in ("ascii", "tikz"):
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(obj, Labeling):
        return ascii_labeling(obj) if fmt == "ascii" else tikz_labeling(obj)
    if isinstance(obj, Filling):
        return ascii_filling(obj) if fmt == "ascii" else tikz_polyomino(obj.polyomino, obj.values)
    if isinstance(obj, MoonPolyomino):
        return ascii_polyomino(obj) if fmt == "ascii" else tikz_polyomino(obj)
    raise TypeError(f"cannot render {type(obj).__name__}")


__all__ = ["render", "ascii_labeling", "ascii_polyomino", "ascii_filling", "tikz_labeling", "tikz_polyomino"]

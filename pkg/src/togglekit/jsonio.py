"""JSON encodings for labelings, polyominoes, fillings and programs.

Rationals are always strings such as ``"3/7"`` so that nothing passes
through floating point.

* labeling: ``{"shape": {"r": 3, "s": 3}, "realm": "PL", "values": [["2", "1", "0"], ...]}``
  where ``values[i-1][j-1]`` is the label of ``(i, j)``;
* polyomino: ``{"cells": [[i, j], ...]}``;
* filling: a polyomino plus ``"values": {"i,j": "p/q", ...}`` and an
  optional ``"realm"`` (default PL).
"""

from __future__ import annotations

import json
from pathlib import Path

from .moon import Filling, MaxRect, MoonPolyomino
from .poset import RectShape
from .realm import PL, Labeling, format_rational, realm_by_name


def _values(v):
    return [format_rational(a) for a in v]


def labeling_to_json(x: Labeling) -> dict:
    return {
        "shape": {"r": x.shape.r, "s": x.shape.s},
        "realm": x.realm.name,
        "values": [_values(row) for row in x.rows],
    }


def labeling_from_json(obj: dict) -> Labeling:
    try:
        shape = RectShape(int(obj["shape"]["r"]), int(obj["shape"]["s"]))
        realm = realm_by_name(obj.get("realm", "PL"))
        return Labeling(shape, realm, obj["values"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed labeling JSON: {exc}") from exc


def polyomino_to_json(M: MoonPolyomino) -> dict:
    return {"cells": [list(c) for c in sorted(M.cells)]}


def polyomino_from_json(obj: dict, check: bool = True) -> MoonPolyomino:
    try:
        return MoonPolyomino([tuple(c) for c in obj["cells"]], check=check)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed polyomino JSON: {exc}") from exc


def filling_to_json(x: Filling) -> dict:
    out = polyomino_to_json(x.polyomino)
    out["realm"] = x.realm.name
    out["values"] = {f"{i},{j}": format_rational(v) for (i, j), v in sorted(x.values.items())}
    return out


def filling_from_json(obj: dict) -> Filling:
    M = polyomino_from_json(obj)
    realm = realm_by_name(obj.get("realm", PL.name))
    try:
        vals = {tuple(int(t) for t in key.split(",")): v for key, v in obj["values"].items()}
    except (KeyError, AttributeError, ValueError) as exc:
        raise ValueError(f"malformed filling JSON: {exc}") from exc
    return Filling(M, vals, realm)


def rect_to_json(R: MaxRect) -> dict:
    return {"i1": R.i1, "i2": R.i2, "j1": R.j1, "j2": R.j2}


def rect_from_json(obj) -> MaxRect:
    if isinstance(obj, str):
        i1, i2, j1, j2 = (int(t) for t in obj.split(","))
        return MaxRect(i1, i2, j1, j2)
    return MaxRect(int(obj["i1"]), int(obj["i2"]), int(obj["j1"]), int(obj["j2"]))


def load(path: str | Path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def dumps(obj, pretty: bool = False) -> str:
    return json.dumps(obj, indent=2 if pretty else None, sort_keys=True)


__all__ = [
    "labeling_to_json",
    "labeling_from_json",
    "polyomino_to_json",
    "polyomino_from_json",
    "filling_to_json",
    "filling_from_json",
    "rect_to_json",
    "rect_from_json",
    "load",
    "dumps",
]

"""Toggle-built maps on rectangle labelings: RSK, promotion, evacuation and friends.

Every map here is compiled to a list of primitive :class:`~togglekit.toggles.Op`
values for a given rectangle, so composition and inversion are list
operations.  Truncated versions are indexed by a point ``(a, b)``:

* ``rsk_ops(shape, a, b)`` starts with the inverse transfer map and then
  applies inverse rowmotion on the principal ideals of ``(a-1, b-1)``,
  ``(a-2, b-2)``, ... down to ``(a-m+1, b-m+1)`` where ``m = min(a, b)``.
  Here ``(a, b)`` ranges over ``[r+1] x [s+1]``; the full map is ``(r, s)``.
* ``promotion_ops(shape, "P", a, b)`` toggles the files ``a-1, a-2, ...,
  a-b+1`` of ``[a] x [b]`` in that order.  The ``"Q"`` side is the same map
  conjugated by transposition.
* ``evacuation_ops(shape, "P", i, j)`` applies the P-promotions of
  ``[i] x [j], [i] x [j-1], ..., [i] x [2]`` in that order.

The P-tableau of an output is its restriction to files ``>= r - s`` and the
Q-tableau its restriction to files ``<= r - s``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from .poset import Coord, RectShape, Region, file_index, principal_ideal, top_to_bottom
from .realm import Labeling
from .toggles import (
    ROTATE,
    TRANSFER,
    TRANSFER_INVERSE,
    TRANSPOSE,
    Op,
    invert_ops,
    rowmotion_ops,
    run_ops,
    toggle_ops,
)

SIDES = ("P", "Q")


def _side(side: str) -> str:
    side = side.upper()
    if side not in SIDES:
        raise ValueError(f"side must be 'P' or 'Q', got {side!r}")
    return side


# ---------------------------------------------------------------- RSK family


def _check_rsk_index(shape: RectShape, a: int, b: int) -> None:
    if not (1 <= a <= shape.r + 1 and 1 <= b <= shape.s + 1):
        raise ValueError(f"RSK index {(a, b)} must lie in [{shape.r + 1}] x [{shape.s + 1}]")


def rsk_toggle_ops(shape: RectShape, a: int | None = None, b: int | None = None) -> list[Op]:
    """The toggle part of truncated RSK, without the leading inverse transfer."""
    a = shape.r if a is None else a
    b = shape.s if b is None else b
    _check_rsk_index(shape, a, b)
    ops: list[Op] = []
    for t in range(1, min(a, b)):
        ops += rowmotion_ops(shape, Region.principal(a - t, b - t), inverse=True)
    return ops


def rsk_ops(shape: RectShape, a: int | None = None, b: int | None = None) -> list[Op]:
    return [TRANSFER_INVERSE] + rsk_toggle_ops(shape, a, b)


def rsk(x: Labeling, a: int | None = None, b: int | None = None) -> Labeling:
    """Toggle-built RSK, optionally truncated at ``(a, b)``."""
    return run_ops(x, rsk_ops(x.shape, a, b))


def rsk_inverse(y: Labeling, a: int | None = None, b: int | None = None) -> Labeling:
    return run_ops(y, invert_ops(rsk_ops(y.shape, a, b)))


def p_tableau(y: Labeling) -> dict[Coord, object]:
    """Entries of an RSK output on files weakly left of ``(r, s)``."""
    d = y.shape.r - y.shape.s
    return {p: v for p, v in y.items() if file_index(p) >= d}


def q_tableau(y: Labeling) -> dict[Coord, object]:
    """Entries of an RSK output on files weakly right of ``(r, s)``."""
    d = y.shape.r - y.shape.s
    return {p: v for p, v in y.items() if file_index(p) <= d}


# ------------------------------------------------------ promotion, evacuation


def _file_cells(shape: RectShape, a: int, b: int, k: int) -> list[Coord]:
    return [(i, i - k) for i in range(1, min(a, shape.r) + 1) if 1 <= i - k <= min(b, shape.s)]


def promotion_ops(shape: RectShape, side: str = "P", a: int | None = None, b: int | None = None) -> list[Op]:
    """Truncated promotion on ``[a] x [b]`` (defaults to the whole rectangle).

    P-side: toggle files ``a-1`` down to ``a-b+1``.  Q-side: toggle files
    ``1-b`` up to ``a-b-1``, which is the P-side map on the transpose.
    """
    a = shape.r if a is None else a
    b = shape.s if b is None else b
    if a < 1 or b < 1:
        raise ValueError(f"promotion index {(a, b)} must be positive")
    files = range(a - 1, a - b, -1) if _side(side) == "P" else range(1 - b, a - b)
    ops: list[Op] = []
    for k in files:
        ops += toggle_ops(_file_cells(shape, a, b, k))
    return ops


def promotion(x: Labeling, side: str = "P", a: int | None = None, b: int | None = None) -> Labeling:
    return run_ops(x, promotion_ops(x.shape, side, a, b))


def evacuation_ops(shape: RectShape, side: str = "P", i: int | None = None, j: int | None = None) -> list[Op]:
    """Truncated evacuation.

    P-side: promotions of ``[i] x [j]``, ``[i] x [j-1]``, ..., ``[i] x [2]``.
    Q-side: promotions of ``[i] x [j]``, ``[i-1] x [j]``, ..., ``[2] x [j]``.
    """
    i = shape.r if i is None else i
    j = shape.s if j is None else j
    ops: list[Op] = []
    if _side(side) == "P":
        for t in range(j, 1, -1):
            ops += promotion_ops(shape, "P", i, t)
    else:
        for t in range(i, 1, -1):
            ops += promotion_ops(shape, "Q", t, j)
    return ops


def evacuation(x: Labeling, side: str = "P", i: int | None = None, j: int | None = None) -> Labeling:
    return run_ops(x, evacuation_ops(x.shape, side, i, j))


def sw_promotion_ops(shape: RectShape) -> list[Op]:
    """Toggle every file, from the leftmost file ``r-1`` to the rightmost ``1-s``."""
    ops: list[Op] = []
    for k in range(shape.r - 1, -shape.s, -1):
        ops += toggle_ops(_file_cells(shape, shape.r, shape.s, k))
    return ops


def sw_promotion(x: Labeling) -> Labeling:
    return run_ops(x, sw_promotion_ops(x.shape))


def conjugator_ops(shape: RectShape) -> list[Op]:
    """Inverse rowmotions on ``[r-1] x [s]``, ``[r-2] x [s]``, ..., ``[1] x [s]``.

    This map conjugates inverse rowmotion to file-by-file promotion.
    """
    ops: list[Op] = []
    for k in range(shape.r - 1, 0, -1):
        ops += rowmotion_ops(shape, Region.principal(k, shape.s), inverse=True)
    return ops


def conjugator(x: Labeling) -> Labeling:
    return run_ops(x, conjugator_ops(x.shape))


def omega_ops(shape: RectShape, side: str = "P") -> list[Op]:
    """Promotion conjugated by RSK: ``RSK^-1 . Pro . RSK``."""
    fwd = rsk_ops(shape)
    return fwd + promotion_ops(shape, side) + invert_ops(fwd)


def omega(x: Labeling, side: str = "P") -> Labeling:
    return run_ops(x, omega_ops(x.shape, side))


def rowmotion_shift_ops(shape: RectShape) -> list[Op]:
    """Inverse rowmotion conjugated by the transfer map: ``phi . rho^-1 . phi^-1``."""
    return [TRANSFER_INVERSE] + rowmotion_ops(shape, None, inverse=True) + [TRANSFER]


def rowmotion_shift(x: Labeling) -> Labeling:
    return run_ops(x, rowmotion_shift_ops(x.shape))


# ------------------------------------------------------------ map programs

_NAMES = (
    "id",
    "toggle",
    "rho",
    "phi",
    "rsk",
    "scriptrsk",
    "proP",
    "proQ",
    "evacP",
    "evacQ",
    "swpro",
    "E",
    "omega",
    "omegaQ",
    "rhoshift",
    "transpose",
    "rotate",
)

_TERM = re.compile(r"\s*([A-Za-z]+)\s*(?:\[([^\]]*)\])?\s*(?:\^\s*([+-]?\d+))?\s*$")
_PAIR = re.compile(r"^\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")


def _split_params(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur)
    return [p.strip() for p in parts]


def _parse_value(text: str):
    m = _PAIR.match(text)
    if m:
        return (int(m.group(1)), int(m.group(2)))
    return int(text)


def _split_terms(text: str) -> list[str]:
    terms, depth, cur = [], 0, ""
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == "." and depth == 0:
            terms.append(cur)
            cur = ""
        else:
            cur += ch
    terms.append(cur)
    return terms


@dataclass(frozen=True)
class Term:
    """One named map with parameters, raised to an integer power."""

    name: str
    positional: tuple = ()
    keywords: tuple = ()
    power: int = 1

    def __str__(self):
        params = [str(v).replace(" ", "") for v in self.positional]
        params += [f"{k}={str(v).replace(' ', '')}" for k, v in self.keywords]
        text = self.name + (f"[{','.join(params)}]" if params else "")
        return text + (f"^{self.power}" if self.power != 1 else "")

    def _index(self, shape: RectShape, names=("a", "b")) -> tuple[int | None, int | None]:
        kw = dict(self.keywords)
        pos = list(self.positional)
        if pos and isinstance(pos[0], tuple):
            pos = list(pos[0])
        vals = [kw.get(n, pos[k] if k < len(pos) else None) for k, n in enumerate(names)]
        return vals[0], vals[1]

    def _region(self) -> Region | None:
        kw = dict(self.keywords)
        if "ideal" in kw:
            return Region.principal(*kw["ideal"])
        if "file" in kw:
            return Region.file(kw["file"])
        if "rank" in kw:
            return Region.rank(kw["rank"])
        if "updiag" in kw:
            return Region.up_diagonal(kw["updiag"])
        if "downdiag" in kw:
            return Region.down_diagonal(kw["downdiag"])
        if self.positional:
            return Region.principal(*self._index(RectShape(0, 0)))
        return None

    def ops_once(self, shape: RectShape) -> tuple[list[Op], RectShape]:
        n = self.name
        if n == "id":
            return [], shape
        if n == "toggle":
            i, j = self._index(shape, ("i", "j"))
            return [Op("toggle", shape.check((i, j)))], shape
        if n == "rho":
            return rowmotion_ops(shape, self._region()), shape
        if n == "phi":
            return [TRANSFER], shape
        if n == "rsk":
            return rsk_ops(shape, *self._index(shape)), shape
        if n == "scriptrsk":
            return [TRANSFER] + rsk_ops(shape, *self._index(shape)), shape
        if n in ("proP", "proQ"):
            return promotion_ops(shape, n[-1], *self._index(shape)), shape
        if n in ("evacP", "evacQ"):
            return evacuation_ops(shape, n[-1], *self._index(shape, ("i", "j"))), shape
        if n == "swpro":
            return sw_promotion_ops(shape), shape
        if n == "E":
            return conjugator_ops(shape), shape
        if n == "omega":
            return omega_ops(shape, "P"), shape
        if n == "omegaQ":
            return omega_ops(shape, "Q"), shape
        if n == "rhoshift":
            return rowmotion_shift_ops(shape), shape
        if n == "transpose":
            return [TRANSPOSE], shape.transpose()
        if n == "rotate":
            return [ROTATE], shape
        raise ValueError(f"unknown map {n!r}")

    def ops(self, shape: RectShape) -> tuple[list[Op], RectShape]:
        once, out_shape = self.ops_once(shape)
        if self.power >= 0:
            if self.power and out_shape != shape:
                # Only the transpose changes shape; its powers alternate.
                ops, cur = [], shape
                for _ in range(self.power):
                    step, cur = self.ops_once(cur)
                    ops += step
                return ops, cur
            return once * self.power, shape
        if out_shape != shape:
            ops, cur = [], shape
            for _ in range(-self.power):
                step, cur = self.ops_once(cur)
                ops += step
            return invert_ops(ops), cur
        return invert_ops(once) * (-self.power), shape


@dataclass(frozen=True)
class MapProgram:
    """A composition of named maps, written with ``.`` as function composition.

    ``MapProgram.parse("rsk^-1.proP.rsk")`` applies ``rsk`` first and
    ``rsk^-1`` last, matching the usual right-to-left reading of ``f . g``.
    """

    terms: tuple[Term, ...] = field(default_factory=tuple)

    @classmethod
    def parse(cls, text: str) -> "MapProgram":
        terms = []
        for chunk in _split_terms(text):
            m = _TERM.match(chunk)
            if not m:
                raise ValueError(f"cannot parse map term {chunk.strip()!r}")
            name, params, power = m.group(1), m.group(2), m.group(3)
            if name not in _NAMES:
                raise ValueError(f"unknown map {name!r}; expected one of {', '.join(_NAMES)}")
            pos, kw = [], []
            for part in _split_params(params or ""):
                try:
                    if "=" in part:
                        k, v = part.split("=", 1)
                        kw.append((k.strip(), _parse_value(v.strip())))
                    else:
                        pos.append(_parse_value(part))
                except ValueError as exc:
                    raise ValueError(f"bad parameter {part!r} in {chunk.strip()!r}") from exc
            terms.append(Term(name, tuple(pos), tuple(kw), int(power) if power else 1))
        return cls(tuple(terms))

    def __str__(self):
        return ".".join(str(t) for t in self.terms) or "id"

    def compile(self, shape: RectShape) -> list[Op]:
        ops: list[Op] = []
        for term in reversed(self.terms):
            step, shape = term.ops(shape)
            ops += step
        return ops

    def __call__(self, x: Labeling) -> Labeling:
        return run_ops(x, self.compile(x.shape))

    apply = __call__

    def inverse(self) -> "MapProgram":
        return MapProgram(tuple(Term(t.name, t.positional, t.keywords, -t.power) for t in reversed(self.terms)))

    def then(self, other: "MapProgram") -> "MapProgram":
        """``other . self``: apply ``self`` first."""
        return MapProgram(other.terms + self.terms)

    def __matmul__(self, other: "MapProgram") -> "MapProgram":
        return MapProgram(self.terms + other.terms)


def apply_program(x: Labeling, program: str | MapProgram) -> Labeling:
    if isinstance(program, str):
        program = MapProgram.parse(program)
    return program(x)


def equal_on(x: Labeling, y: Labeling, cells: Sequence[Coord]) -> bool:
    return all(x[p] == y[p] for p in cells)


def weakly_left_of(shape: RectShape, a: int, b: int) -> list[Coord]:
    """Cells whose file is at least ``a - b``."""
    return top_to_bottom(p for p in shape if file_index(p) >= a - b)


def strictly_right_of(shape: RectShape, a: int, b: int) -> list[Coord]:
    return top_to_bottom(p for p in shape if file_index(p) < a - b)


__all__ = [
    "rsk_ops",
    "rsk_toggle_ops",
    "rsk",
    "rsk_inverse",
    "p_tableau",
    "q_tableau",
    "promotion_ops",
    "promotion",
    "evacuation_ops",
    "evacuation",
    "sw_promotion_ops",
    "sw_promotion",
    "conjugator_ops",
    "conjugator",
    "omega_ops",
    "omega",
    "rowmotion_shift_ops",
    "rowmotion_shift",
    "Term",
    "MapProgram",
    "apply_program",
    "principal_ideal",
    "weakly_left_of",
    "strictly_right_of",
    "equal_on",
]

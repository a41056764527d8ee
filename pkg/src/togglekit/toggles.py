"""Toggles, rowmotion and the transfer map, for either realm.

Every map in this package is ultimately a word in a handful of primitive
operations acting on a grid of values.  :class:`Op` names one primitive and
:func:`run_ops` executes a sequence of them in application order.  Keeping
programs as plain op lists makes inverses trivial (reverse the list and
invert each op) and keeps one generic engine for both realms.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

from .poset import Coord, RectShape, Region, linear_extension, resolve_region
from .realm import Labeling, Realm


class Op(NamedTuple):
    """One primitive step.

    ``kind`` is ``"toggle"`` (with ``cell``), ``"transfer"``,
    ``"transfer_inverse"``, ``"transpose"`` or ``"rotate"``.
    """

    kind: str
    cell: Coord | None = None

    def inverse(self) -> "Op":
        if self.kind == "transfer":
            return Op("transfer_inverse")
        if self.kind == "transfer_inverse":
            return Op("transfer")
        return self


TRANSFER = Op("transfer")
TRANSFER_INVERSE = Op("transfer_inverse")
TRANSPOSE = Op("transpose")
ROTATE = Op("rotate")


def toggle_ops(cells: Iterable[Coord]) -> list[Op]:
    return [Op("toggle", c) for c in cells]


def invert_ops(ops: Sequence[Op]) -> list[Op]:
    return [op.inverse() for op in reversed(ops)]


def _toggle_grid(g, realm: Realm, r: int, s: int, i: int, j: int) -> None:
    up = []
    if i < r:
        up.append(g[i][j - 1])
    if j < s:
        up.append(g[i - 1][j])
    down = []
    if i > 1:
        down.append(g[i - 2][j - 1])
    if j > 1:
        down.append(g[i - 1][j - 2])
    g[i - 1][j - 1] = realm.compose(realm.invert(realm.up_combine(up), g[i - 1][j - 1]), realm.down_combine(down))


def _transfer_grid(g, realm: Realm, r: int, s: int) -> list[list]:
    out = [row[:] for row in g]
    for i in range(1, r + 1):
        for j in range(1, s + 1):
            down = []
            if i > 1:
                down.append(g[i - 2][j - 1])
            if j > 1:
                down.append(g[i - 1][j - 2])
            out[i - 1][j - 1] = realm.invert(g[i - 1][j - 1], realm.down_combine(down))
    return out


def _transfer_inverse_grid(g, realm: Realm, r: int, s: int) -> None:
    # Bottom-to-top so that lower covers already hold their new values.
    for i in range(1, r + 1):
        for j in range(1, s + 1):
            down = []
            if i > 1:
                down.append(g[i - 2][j - 1])
            if j > 1:
                down.append(g[i - 1][j - 2])
            g[i - 1][j - 1] = realm.compose(g[i - 1][j - 1], realm.down_combine(down))


def run_ops(x: Labeling, ops: Iterable[Op]) -> Labeling:
    """Apply ``ops`` to ``x`` in order and return the resulting labeling."""
    realm = x.realm
    r, s = x.shape.r, x.shape.s
    g = x.grid()
    for op in ops:
        kind = op.kind
        if kind == "toggle":
            i, j = op.cell
            if not (1 <= i <= r and 1 <= j <= s):
                raise ValueError(f"toggle at {op.cell} is outside the {r}x{s} rectangle")
            _toggle_grid(g, realm, r, s, i, j)
        elif kind == "transfer":
            g = _transfer_grid(g, realm, r, s)
        elif kind == "transfer_inverse":
            _transfer_inverse_grid(g, realm, r, s)
        elif kind == "transpose":
            g = [list(col) for col in zip(*g)]
            r, s = s, r
        elif kind == "rotate":
            g = [row[::-1] for row in g[::-1]]
        else:
            raise ValueError(f"unknown op {op!r}")
    return Labeling._trusted(RectShape(r, s), realm, g)


def toggle(x: Labeling, p: Coord) -> Labeling:
    """Toggle the label at ``p``.

    The new label is ``compose(invert(U, x_p), D)`` where ``U`` folds the
    upper covers and ``D`` the lower covers.  In the PL realm this is
    ``min(upper) + max(lower) - x_p``; birationally it is
    ``(sum 1/x_upper)^-1 * (sum x_lower) / x_p``.
    """
    x.shape.check(p)
    return run_ops(x, [Op("toggle", p)])


def rowmotion_ops(shape: RectShape, region: Region | None = None, inverse: bool = False) -> list[Op]:
    """Toggles of rowmotion restricted to ``region``.

    Forward rowmotion toggles from the top of the poset down; the inverse
    goes from the bottom up.
    """
    cells = resolve_region(shape, region)
    if inverse:
        cells = cells[::-1]
    return toggle_ops(cells)


def rowmotion(x: Labeling, region: Region | None = None, inverse: bool = False) -> Labeling:
    return run_ops(x, rowmotion_ops(x.shape, region, inverse))


def transfer(x: Labeling, inverse: bool = False) -> Labeling:
    """The transfer map from order-polytope to chain-polytope coordinates.

    Forward: each label loses the combined labels of its lower covers
    (``x_p - max`` in PL, ``x_p / sum`` birationally).  The inverse rebuilds
    labels from the bottom up, and the empty fold at the minimum is the
    realm's down unit.
    """
    return run_ops(x, [TRANSFER_INVERSE if inverse else TRANSFER])


def orbit_length(x: Labeling, ops: Sequence[Op], limit: int = 10_000) -> int:
    """Smallest ``n > 0`` with ``f^n(x) = x`` for the map ``f`` given by ``ops``."""
    y = run_ops(x, ops)
    n = 1
    while y != x:
        if n >= limit:
            raise RuntimeError("orbit did not close within the limit")
        y = run_ops(y, ops)
        n += 1
    return n


__all__ = [
    "Op",
    "TRANSFER",
    "TRANSFER_INVERSE",
    "TRANSPOSE",
    "ROTATE",
    "toggle_ops",
    "invert_ops",
    "run_ops",
    "toggle",
    "rowmotion_ops",
    "rowmotion",
    "transfer",
    "orbit_length",
    "linear_extension",
]

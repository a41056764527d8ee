"""The product-of-chains poset [r] x [s] and the regions toggled inside it.

Elements are pairs ``(i, j)`` with ``1 <= i <= r`` and ``1 <= j <= s``.
The first coordinate indexes up-diagonals and the second indexes
down-diagonals, so ``(i, j) <= (i', j')`` exactly when ``i <= i'`` and
``j <= j'``.  The *rank* of ``(i, j)`` is ``i + j`` and its *file* is
``i - j``; a larger file lies further to the left when the poset is drawn
with its minimum at the bottom.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

Coord = tuple[int, int]


@dataclass(frozen=True, order=True)
class RectShape:
    """An ``r`` by ``s`` rectangle.

    Degenerate shapes with a zero side are allowed; they have no elements
    and serve as identities for vertical stacking.
    """

    r: int
    s: int

    def __post_init__(self):
        if not (isinstance(self.r, int) and isinstance(self.s, int)):
            raise TypeError("rectangle sides must be integers")
        if self.r < 0 or self.s < 0:
            raise ValueError(f"invalid rectangle {self.r}x{self.s}")

    def __contains__(self, p) -> bool:
        i, j = p
        return 1 <= i <= self.r and 1 <= j <= self.s

    def __iter__(self) -> Iterator[Coord]:
        for i in range(1, self.r + 1):
            for j in range(1, self.s + 1):
                yield (i, j)

    def __len__(self) -> int:
        return self.r * self.s

    def transpose(self) -> "RectShape":
        return RectShape(self.s, self.r)

    def check(self, p: Coord) -> Coord:
        if p not in self:
            raise ValueError(f"{p} is outside the {self.r}x{self.s} rectangle")
        return p


def rank(p: Coord) -> int:
    return p[0] + p[1]


def file_index(p: Coord) -> int:
    return p[0] - p[1]


def lower_covers(shape: RectShape, p: Coord) -> list[Coord]:
    i, j = shape.check(p)
    out = []
    if i > 1:
        out.append((i - 1, j))
    if j > 1:
        out.append((i, j - 1))
    return out


def upper_covers(shape: RectShape, p: Coord) -> list[Coord]:
    i, j = shape.check(p)
    out = []
    if i < shape.r:
        out.append((i + 1, j))
    if j < shape.s:
        out.append((i, j + 1))
    return out


def covers(shape: RectShape, p: Coord) -> tuple[list[Coord], list[Coord]]:
    """Return ``(lower, upper)`` cover lists of ``p``."""
    return lower_covers(shape, p), upper_covers(shape, p)


def _extension_key(p: Coord):
    return (-rank(p), p[1])


def linear_extension(shape: RectShape) -> list[Coord]:
    """Canonical top-to-bottom order: rank descending, ties by ``j`` ascending.

    >>> linear_extension(RectShape(2, 3))
    [(2, 3), (2, 2), (1, 3), (2, 1), (1, 2), (1, 1)]
    """
    return sorted(shape, key=_extension_key)


def top_to_bottom(cells: Iterable[Coord]) -> list[Coord]:
    """Sort any collection of cells in the canonical top-to-bottom order."""
    return sorted(set(cells), key=_extension_key)


class RegionKind(str, Enum):
    UP_DIAGONAL = "up-diagonal"
    DOWN_DIAGONAL = "down-diagonal"
    RANK = "rank"
    FILE = "file"
    PRINCIPAL_IDEAL = "principal-ideal"
    IDEAL = "ideal"
    SET = "set"


@dataclass(frozen=True)
class Region:
    """A symbolic subset of the rectangle.

    ``value`` holds an integer index for diagonals, ranks and files, a single
    generator for principal ideals, and a tuple of cells for generated ideals
    and explicit sets.
    """

    kind: RegionKind
    value: object

    @classmethod
    def up_diagonal(cls, i: int) -> "Region":
        return cls(RegionKind.UP_DIAGONAL, i)

    @classmethod
    def down_diagonal(cls, j: int) -> "Region":
        return cls(RegionKind.DOWN_DIAGONAL, j)

    @classmethod
    def rank(cls, k: int) -> "Region":
        return cls(RegionKind.RANK, k)

    @classmethod
    def file(cls, k: int) -> "Region":
        return cls(RegionKind.FILE, k)

    @classmethod
    def principal(cls, i: int, j: int) -> "Region":
        return cls(RegionKind.PRINCIPAL_IDEAL, (i, j))

    @classmethod
    def ideal(cls, generators: Iterable[Coord]) -> "Region":
        return cls(RegionKind.IDEAL, tuple(sorted(set(map(tuple, generators)))))

    @classmethod
    def of(cls, cells: Iterable[Coord]) -> "Region":
        return cls(RegionKind.SET, tuple(sorted(set(map(tuple, cells)))))


def principal_ideal(shape: RectShape, i: int, j: int) -> list[Coord]:
    """Cells below ``(i, j)``, clipped to the rectangle.

    A generator with a nonpositive coordinate gives the empty ideal, and a
    generator beyond the rectangle is clipped, so ``[i] x [j]`` is always
    read as an intersection with ``[r] x [s]``.
    """
    return [(a, b) for a in range(1, min(i, shape.r) + 1) for b in range(1, min(j, shape.s) + 1)]


def resolve_region(shape: RectShape, region: Region | None) -> list[Coord]:
    """Concrete cells of ``region`` in top-to-bottom order.

    ``None`` stands for the whole rectangle.
    """
    if region is None:
        return linear_extension(shape)
    kind, v = RegionKind(region.kind), region.value
    if kind is RegionKind.UP_DIAGONAL:
        cells = [p for p in shape if p[0] == v]
    elif kind is RegionKind.DOWN_DIAGONAL:
        cells = [p for p in shape if p[1] == v]
    elif kind is RegionKind.RANK:
        cells = [p for p in shape if rank(p) == v]
    elif kind is RegionKind.FILE:
        cells = [p for p in shape if file_index(p) == v]
    elif kind is RegionKind.PRINCIPAL_IDEAL:
        cells = principal_ideal(shape, *v)
    elif kind is RegionKind.IDEAL:
        cells = {c for g in v for c in principal_ideal(shape, *g)}
    else:
        for p in v:
            shape.check(p)
        cells = v
    return top_to_bottom(cells)

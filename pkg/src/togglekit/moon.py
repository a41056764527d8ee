"""Moon polyominoes, their maximal rectangles, and label-carrying shifts.

Cells use the same ``(i, j)`` convention as rectangles: ``i`` picks the
up-diagonal and ``j`` the down-diagonal.  A polyomino is a *moon polyomino*
when every up-diagonal and every down-diagonal is an interval and the
up-diagonals are pairwise nested (as sets of ``j`` values).

A :class:`ShiftStep` moves every cell that shares a diagonal with a maximal
rectangle ``R`` but lies outside it by one unit towards the bottom of the
poset, and transforms the labels inside ``R``:

* ``axis="down"``: cells in the down-diagonals through ``R`` move
  ``(i, j) -> (i, j - 1)`` and ``R`` receives ``RSK^-1 . ProP . RSK``;
* ``axis="up"``: cells in the up-diagonals through ``R`` move
  ``(i, j) -> (i - 1, j)`` and ``R`` receives ``RSK^-1 . ProQ . RSK``;
* ``axis="both"``: both moves happen and ``R`` receives
  ``phi . rho^-1 . phi^-1``.

``inverse=True`` undoes a step: cells move back up and ``R`` gets the
inverse map.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

from .chains import PathFamilySpec, max_weight
from .maps import omega_ops, rowmotion_shift_ops
from .poset import Coord, RectShape
from .realm import PL, Labeling, Realm, format_rational
from .toggles import invert_ops, run_ops

AXES = ("down", "up", "both")


class MoonError(ValueError):
    """A cell set is not a moon polyomino; ``reason`` names the violated condition."""

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


class IllegalShift(ValueError):
    """A shift would produce something that is not a moon polyomino."""


def _is_interval(vals: list[int]) -> bool:
    return vals[-1] - vals[0] + 1 == len(vals)


def _groups(cells: Iterable[Coord], axis: int) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for c in cells:
        out.setdefault(c[axis], []).append(c[1 - axis])
    return {k: sorted(v) for k, v in sorted(out.items())}


def check_moon(cells: Iterable[Coord]) -> None:
    """Raise :class:`MoonError` unless ``cells`` form a moon polyomino."""
    cells = set(cells)
    if not cells:
        raise MoonError("empty", "a moon polyomino needs at least one cell")
    rows, cols = _groups(cells, 0), _groups(cells, 1)
    for i, js in rows.items():
        if not _is_interval(js):
            raise MoonError("up-diagonal not convex", f"up-diagonal {i} has gaps: {js}")
    for j, is_ in cols.items():
        if not _is_interval(is_):
            raise MoonError("down-diagonal not convex", f"down-diagonal {j} has gaps: {is_}")
    if not _is_interval(list(rows)):
        raise MoonError("not connected", "up-diagonals skip an index")
    supports = sorted((set(js) for js in rows.values()), key=len)
    for a, b in zip(supports, supports[1:]):
        if not a <= b:
            raise MoonError("not intersection-free", f"up-diagonal supports {sorted(a)} and {sorted(b)} are not nested")


def validate(cells: Iterable[Coord]) -> tuple[bool, str]:
    """``(True, "ok")`` for a moon polyomino, otherwise ``(False, reason)``."""
    try:
        check_moon(cells)
    except MoonError as exc:
        return False, str(exc)
    return True, "ok"


@dataclass(frozen=True, order=True)
class MaxRect:
    """The rectangle ``[i1, i2] x [j1, j2]`` of a polyomino."""

    i1: int
    i2: int
    j1: int
    j2: int

    @property
    def shape(self) -> RectShape:
        return RectShape(self.i2 - self.i1 + 1, self.j2 - self.j1 + 1)

    def cells(self) -> list[Coord]:
        return [(i, j) for i in range(self.i1, self.i2 + 1) for j in range(self.j1, self.j2 + 1)]

    def __contains__(self, c) -> bool:
        return self.i1 <= c[0] <= self.i2 and self.j1 <= c[1] <= self.j2

    def local(self, c: Coord) -> Coord:
        return (c[0] - self.i1 + 1, c[1] - self.j1 + 1)

    def moved(self, di: int, dj: int) -> "MaxRect":
        return MaxRect(self.i1 + di, self.i2 + di, self.j1 + dj, self.j2 + dj)

    def __str__(self):
        return f"[{self.i1},{self.i2}]x[{self.j1},{self.j2}]"


class MoonPolyomino:
    """An immutable moon polyomino given by its set of cells."""

    def __init__(self, cells: Iterable[Coord], check: bool = True):
        cells = frozenset((int(i), int(j)) for i, j in cells)
        if check:
            check_moon(cells)
        object.__setattr__(self, "cells", cells)

    def __setattr__(self, *_):
        raise AttributeError("MoonPolyomino is immutable")

    @classmethod
    def from_rows(cls, rows: Mapping[int, Iterable[int]]) -> "MoonPolyomino":
        """Build from ``{i: columns}``, e.g. ``{1: range(1, 3), 2: [1, 2, 3]}``."""
        return cls((i, j) for i, js in rows.items() for j in js)

    @classmethod
    def partition(cls, parts: Iterable[int]) -> "MoonPolyomino":
        """The straight shape with up-diagonal ``i`` holding ``1..parts[i-1]``."""
        return cls((i, j) for i, n in enumerate(parts, 1) for j in range(1, n + 1))

    def __eq__(self, other):
        return isinstance(other, MoonPolyomino) and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(sorted(self.cells))

    def __contains__(self, c):
        return tuple(c) in self.cells

    def __repr__(self):
        rows = ", ".join(f"{i}: {js[0]}..{js[-1]}" for i, js in self.rows.items())
        return f"MoonPolyomino({{{rows}}})"

    @cached_property
    def rows(self) -> dict[int, list[int]]:
        """Up-diagonal index to sorted list of its ``j`` values."""
        return _groups(self.cells, 0)

    @cached_property
    def columns(self) -> dict[int, list[int]]:
        """Down-diagonal index to sorted list of its ``i`` values."""
        return _groups(self.cells, 1)

    def translate(self, di: int, dj: int) -> "MoonPolyomino":
        return MoonPolyomino(((i + di, j + dj) for i, j in self.cells), check=False)

    @property
    def corner(self) -> Coord:
        return (min(self.rows), min(self.columns))

    def normalized(self) -> "MoonPolyomino":
        i0, j0 = self.corner
        return self.translate(1 - i0, 1 - j0)

    def contains_rect(self, i1: int, i2: int, j1: int, j2: int) -> bool:
        return all((i, j) in self.cells for i in range(i1, i2 + 1) for j in range(j1, j2 + 1))

    @cached_property
    def maximal_rectangles(self) -> tuple[MaxRect, ...]:
        """All inclusion-maximal rectangles, sorted."""
        found = set()
        rows = self.rows
        keys = list(rows)
        for a in range(len(keys)):
            lo, hi = rows[keys[a]][0], rows[keys[a]][-1]
            for b in range(a, len(keys)):
                lo = max(lo, rows[keys[b]][0])
                hi = min(hi, rows[keys[b]][-1])
                if lo > hi:
                    break
                found.add(MaxRect(keys[a], keys[b], lo, hi))
        return tuple(
            sorted(
                r
                for r in found
                if not any(o != r and o.i1 <= r.i1 and r.i2 <= o.i2 and o.j1 <= r.j1 and r.j2 <= o.j2 for o in found)
            )
        )

    def is_straight(self) -> bool:
        """True for a down-set anchored at the corner, i.e. a partition shape."""
        i0, j0 = self.corner
        return all(
            (i == i0 or (i - 1, j) in self.cells) and (j == j0 or (i, j - 1) in self.cells) for i, j in self.cells
        )

    def row_lengths(self) -> tuple[int, ...]:
        return tuple(sorted((len(js) for js in self.rows.values()), reverse=True))

    def comparable_in_rectangle(self, p: Coord, q: Coord) -> bool:
        """Edge test of the compatibility graph.

        Two distinct cells are joined when they are comparable in the
        product order and the rectangle they span lies in the polyomino.
        """
        if p == q:
            return False
        (a, b), (c, d) = sorted((p, q))
        if d < b:
            return False
        return self.contains_rect(a, c, b, d)


# ----------------------------------------------------------------- fillings


class Filling:
    """Rational labels on the cells of a moon polyomino."""

    __slots__ = ("polyomino", "realm", "values")

    def __init__(self, polyomino: MoonPolyomino, values: Mapping[Coord, object], realm: Realm = PL):
        vals = {tuple(c): realm.value(v) for c, v in values.items()}
        if set(vals) != set(polyomino.cells):
            missing = sorted(set(polyomino.cells) - set(vals))
            extra = sorted(set(vals) - set(polyomino.cells))
            raise ValueError(f"filling does not match the polyomino (missing {missing}, extra {extra})")
        object.__setattr__(self, "polyomino", polyomino)
        object.__setattr__(self, "realm", realm)
        object.__setattr__(self, "values", vals)

    def __setattr__(self, *_):
        raise AttributeError("Filling is immutable")

    def __getitem__(self, c: Coord):
        return self.values[tuple(c)]

    def __eq__(self, other):
        return (
            isinstance(other, Filling)
            and self.realm is other.realm
            and self.polyomino == other.polyomino
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.polyomino, tuple(sorted(self.values.items()))))

    def __repr__(self):
        body = ", ".join(f"{c}: {format_rational(v)}" for c, v in sorted(self.values.items()))
        return f"Filling({{{body}}})"

    def labeling(self, rect: MaxRect) -> Labeling:
        """The labels inside ``rect`` as a labeling of its local rectangle."""
        rows = [[self.values[i, j] for j in range(rect.j1, rect.j2 + 1)] for i in range(rect.i1, rect.i2 + 1)]
        return Labeling._trusted(rect.shape, self.realm, rows)

    def translate(self, di: int, dj: int) -> "Filling":
        return Filling(
            self.polyomino.translate(di, dj), {(i + di, j + dj): v for (i, j), v in self.values.items()}, self.realm
        )


# -------------------------------------------------------------------- shifts


@dataclass(frozen=True)
class ShiftStep:
    rect: MaxRect
    axis: str = "down"
    inverse: bool = False

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")

    def reverse(self) -> "ShiftStep":
        return ShiftStep(self.rect, self.axis, not self.inverse)

    def __str__(self):
        return f"{self.axis}{'^-1' if self.inverse else ''}@{self.rect}"


def _moves(M: MoonPolyomino, step: ShiftStep) -> dict[Coord, Coord]:
    R = step.rect
    d = 1 if step.inverse else -1
    moves = {}
    for c in M.cells:
        if c in R:
            continue
        i, j = c
        if step.axis in ("down", "both") and R.j1 <= j <= R.j2:
            moves[c] = (i, j + d)
        elif step.axis in ("up", "both") and R.i1 <= i <= R.i2:
            moves[c] = (i + d, j)
    return moves


def _check_rect(M: MoonPolyomino, rect: MaxRect) -> None:
    if rect not in M.maximal_rectangles:
        raise ValueError(f"{rect} is not a maximal rectangle of {M}")


def shift_cells(M: MoonPolyomino, step: ShiftStep) -> tuple[MoonPolyomino, dict[Coord, Coord]]:
    """Move the cells for ``step`` and return the new polyomino and the cell map."""
    _check_rect(M, step.rect)
    moves = _moves(M, step)
    mapping = {c: moves.get(c, c) for c in M.cells}
    image = set(mapping.values())
    if len(image) != len(mapping):
        raise IllegalShift(f"shift {step} makes cells collide")
    try:
        N = MoonPolyomino(image)
    except MoonError as exc:
        raise IllegalShift(f"shift {step} leaves the class of moon polyominoes ({exc.reason})") from exc
    if step.rect not in N.maximal_rectangles:
        raise IllegalShift(f"{step.rect} is not maximal after shift {step}")
    return N, mapping


def apply_shift(M: MoonPolyomino, step: ShiftStep) -> MoonPolyomino:
    return shift_cells(M, step)[0]


def is_legal(M: MoonPolyomino, step: ShiftStep) -> bool:
    try:
        shift_cells(M, step)
    except IllegalShift:
        return False
    return True


def _rect_map_ops(shape: RectShape, axis: str, inverse: bool):
    if axis == "both":
        ops = rowmotion_shift_ops(shape)
    else:
        ops = omega_ops(shape, "P" if axis == "down" else "Q")
    return invert_ops(ops) if inverse else ops


def shift_filling(x: Filling, step: ShiftStep) -> Filling:
    """Apply ``step`` to a filling: transform the labels in the rectangle and carry the others."""
    N, mapping = shift_cells(x.polyomino, step)
    R = step.rect
    inside = run_ops(x.labeling(R), _rect_map_ops(R.shape, step.axis, step.inverse))
    values = {}
    for c, v in x.values.items():
        values[mapping[c]] = inside[R.local(c)] if c in R else v
    return Filling(N, values, x.realm)


def omega_shift(x: Filling, step: ShiftStep) -> Filling:
    """Shift along one family of diagonals, applying the RSK-conjugated promotion in ``step.rect``."""
    if step.axis not in ("down", "up"):
        raise ValueError("omega_shift takes a down- or up-diagonal step")
    return shift_filling(x, step)


def rho_shift(x: Filling, rect: MaxRect, inverse: bool = False) -> Filling:
    """Shift along both families, applying ``phi . rho^-1 . phi^-1`` in ``rect``."""
    return shift_filling(x, ShiftStep(rect, "both", inverse))


def rect_image(M: MoonPolyomino, step: ShiftStep, S: MaxRect) -> MaxRect:
    """The maximal rectangle of the shifted polyomino that corresponds to ``S``.

    A rectangle that reaches beyond the rows of ``step.rect`` travels with
    the cells moved along down-diagonals, one that reaches beyond its columns
    travels with the cells moved along up-diagonals, and the rest stay put.
    """
    _check_rect(M, S)
    R = step.rect
    d = 1 if step.inverse else -1
    di = dj = 0
    if S != R:
        if step.axis in ("down", "both") and not (R.i1 <= S.i1 and S.i2 <= R.i2):
            dj = d
        if step.axis in ("up", "both") and not (R.j1 <= S.j1 and S.j2 <= R.j2):
            di = d
    image = S.moved(di, dj)
    N = apply_shift(M, step)
    if image not in N.maximal_rectangles:
        raise IllegalShift(f"{S} has no maximal image after {step}")
    return image


# ------------------------------------------------------------ straightening


def _candidate_steps(M: MoonPolyomino):
    for rect in M.maximal_rectangles:
        for axis in ("down", "up"):
            step = ShiftStep(rect, axis)
            if _moves(M, step):
                yield step


def straighten(M: MoonPolyomino) -> tuple[list[ShiftStep], MoonPolyomino]:
    """A shortest sequence of unit shifts turning ``M`` into a straight shape.

    Breadth-first search over legal down- and up-diagonal shifts; candidate
    steps are tried in sorted order so the route is deterministic.
    """
    if M.is_straight():
        return [], M
    parent: dict[MoonPolyomino, tuple[MoonPolyomino, ShiftStep] | None] = {M: None}
    queue = deque([M])
    while queue:
        cur = queue.popleft()
        for step in sorted(_candidate_steps(cur), key=lambda s: (s.rect, s.axis)):
            try:
                nxt = apply_shift(cur, step)
            except IllegalShift:
                continue
            if nxt in parent:
                continue
            parent[nxt] = (cur, step)
            if nxt.is_straight():
                route = []
                node = nxt
                while parent[node] is not None:
                    prev, st = parent[node]
                    route.append(st)
                    node = prev
                return route[::-1], nxt
            queue.append(nxt)
    raise IllegalShift(f"{M} cannot be straightened by unit shifts")


def canonical_partition(M: MoonPolyomino) -> tuple[int, ...]:
    """Row lengths of the straight shape reached by :func:`straighten`."""
    return straighten(M)[1].row_lengths()


def equivalent(M: MoonPolyomino, N: MoonPolyomino) -> bool:
    return canonical_partition(M) == canonical_partition(N)


def route_between(M: MoonPolyomino, N: MoonPolyomino):
    """Steps and a translation carrying ``M`` to ``N`` through a common straight shape.

    Returns ``(forward, (di, dj), backward)``: apply ``forward`` to ``M``,
    translate by ``(di, dj)``, then apply ``backward`` to reach ``N``.
    """
    fwd, lam_m = straighten(M)
    back, lam_n = straighten(N)
    if lam_m.row_lengths() != lam_n.row_lengths():
        raise ValueError("the polyominoes are not equivalent")
    (a, b), (c, d) = lam_m.corner, lam_n.corner
    return fwd, (c - a, d - b), [st.reverse() for st in reversed(back)]


def run_route(x: Filling, forward, offset, backward) -> Filling:
    for st in forward:
        x = shift_filling(x, st)
    x = x.translate(*offset)
    for st in backward:
        x = shift_filling(x, st)
    return x


def omega_path(x: Filling, N: MoonPolyomino) -> Filling:
    """Carry a filling of ``M`` to the equivalent polyomino ``N`` via straightening."""
    return run_route(x, *route_between(x.polyomino, N))


# --------------------------------------------------------------- statistics


def rect_chain_max(x: Filling, rect: MaxRect, k: int):
    """The order-``k`` path statistic of the labels inside ``rect``."""
    sh = rect.shape
    return max_weight(x.labeling(rect), PathFamilySpec(1, 1, sh.r, sh.s, k))


def ne_chain_max(x: Filling, k: int = 1):
    """Largest order-``k`` path statistic over the maximal rectangles (PL only)."""
    if x.realm is not PL:
        raise ValueError("the maximum over rectangles is a PL statistic")
    return max(rect_chain_max(x, R, k) for R in x.polyomino.maximal_rectangles)


def _longest_antichain(cells: list[Coord]) -> int:
    # Cells with strictly increasing i and strictly decreasing j.
    cells = sorted(cells)
    best = [1] * len(cells)
    for b in range(len(cells)):
        for a in range(b):
            if cells[a][0] < cells[b][0] and cells[a][1] > cells[b][1]:
                best[b] = max(best[b], best[a] + 1)
    return max(best, default=0)


def se_chain_max(x: Filling) -> int:
    """Largest antichain of nonzero cells lying in a common rectangle."""
    return max(
        _longest_antichain([c for c in R.cells() if x[c] != 0]) for R in x.polyomino.maximal_rectangles
    )


def se_chain_max_by_stabilization(x: Filling) -> int:
    """The same number via Dilworth: per rectangle, the least ``k`` at which the statistic stops growing."""
    if x.realm is not PL or any(v < 0 for v in x.values.values()):
        raise ValueError("stabilization needs a nonnegative PL filling")
    best = 0
    for R in x.polyomino.maximal_rectangles:
        sh = R.shape
        full = rect_chain_max(x, R, min(sh.r, sh.s))
        k = 0
        while rect_chain_max(x, R, k) != full:
            k += 1
        best = max(best, k)
    return best


def random_moon(rng, max_cells: int = 10, max_shifts: int = 6) -> MoonPolyomino:
    """A random moon polyomino: a random partition pushed around by reversed shifts."""
    n = rng.randint(1, max_cells)
    parts = []
    left = n
    while left:
        cap = parts[-1] if parts else left
        p = rng.randint(1, min(cap, left))
        parts.append(p)
        left -= p
    M = MoonPolyomino.partition(parts)
    for _ in range(rng.randint(0, max_shifts)):
        options = [
            ShiftStep(R, axis, inverse=True) for R in M.maximal_rectangles for axis in ("down", "up")
        ]
        rng.shuffle(options)
        for st in options:
            if _moves(M, st) and is_legal(M, st):
                M = apply_shift(M, st)
                break
    return M


def random_filling(M: MoonPolyomino, rng, realm: Realm = PL, lo: int = 0, hi: int = 4) -> Filling:
    if realm.positive_only:
        lo = max(lo, 1)
    return Filling(M, {c: rng.randint(lo, hi) for c in M.cells}, realm)


def pairs_of_rectangles(M: MoonPolyomino):
    return combinations(M.maximal_rectangles, 2)


__all__ = [
    "AXES",
    "MoonError",
    "IllegalShift",
    "check_moon",
    "validate",
    "MaxRect",
    "MoonPolyomino",
    "Filling",
    "ShiftStep",
    "shift_cells",
    "apply_shift",
    "is_legal",
    "shift_filling",
    "omega_shift",
    "rho_shift",
    "rect_image",
    "straighten",
    "canonical_partition",
    "equivalent",
    "route_between",
    "run_route",
    "omega_path",
    "rect_chain_max",
    "ne_chain_max",
    "se_chain_max",
    "se_chain_max_by_stabilization",
    "random_moon",
    "random_filling",
    "pairs_of_rectangles",
]

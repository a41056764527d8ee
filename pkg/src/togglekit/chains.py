"""Weights of families of nonintersecting lattice paths.

A *path family* of order ``k`` in the box ``[u1, u2] x [v1, v2]`` consists of
``k`` vertex-disjoint lattice paths, each stepping ``(i, j) -> (i+1, j)`` or
``(i, j) -> (i, j+1)``, where path ``t`` runs from ``(u1, v1 + t - 1)`` to
``(u2, v2 - k + t)``.  The PL statistic is the largest total label over all
families; the birational statistic sums, over all families, the product of
the labels they cover.  Both are computed by the same realm-generic dynamic
program, and :func:`brute_force_max_weight` enumerates families directly as
an independent check on small boxes.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import reduce
from itertools import combinations, product

from .poset import Coord
from .realm import Labeling, Realm

DEFAULT_PATH_ORACLE_CELLS = 20


def oracle_cell_limit(default: int) -> int:
    """Cell budget for brute-force oracles; ``TOGGLEKIT_MAX_CELLS`` overrides it."""
    env = os.environ.get("TOGGLEKIT_MAX_CELLS")
    return int(env) if env else default


class OracleTooLarge(ValueError):
    """Raised when a brute-force oracle is asked to handle too many cells."""


@dataclass(frozen=True)
class PathFamilySpec:
    u1: int
    v1: int
    u2: int
    v2: int
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("the number of paths must be nonnegative")
        if self.u1 > self.u2 or self.v1 > self.v2:
            raise ValueError(f"empty box [{self.u1},{self.u2}] x [{self.v1},{self.v2}]")

    @property
    def height(self) -> int:
        return self.u2 - self.u1 + 1

    @property
    def width(self) -> int:
        return self.v2 - self.v1 + 1

    @property
    def effective_k(self) -> int:
        """Beyond ``min(height, width)`` the statistic stops changing."""
        return min(self.k, self.height, self.width)

    def check_inside(self, x: Labeling) -> None:
        for p in ((self.u1, self.v1), (self.u2, self.v2)):
            if p not in x.shape:
                raise ValueError(f"box corner {p} lies outside the {x.shape.r}x{x.shape.s} rectangle")


def _fold_better(realm: Realm, a, b):
    return b if a is None else realm.down_combine([a, b])


def max_weight(x: Labeling, spec: PathFamilySpec):
    """The path-family statistic, computed one up-diagonal at a time.

    Within up-diagonal ``i`` each path occupies a contiguous run of columns
    ``[enter_t, exit_t]`` and then steps up to ``(i + 1, exit_t)``.  The state
    is the strictly increasing tuple of entry columns, so disjointness is the
    single condition ``exit_t < enter_{t+1}``.
    """
    spec.check_inside(x)
    realm = x.realm
    k = spec.effective_k
    if k == 0:
        return realm.identity
    u1, v1, u2, v2 = spec.u1, spec.v1, spec.u2, spec.v2
    compose, invert = realm.compose, realm.invert

    states = {tuple(range(v1, v1 + k)): realm.identity}
    for i in range(u1, u2 + 1):
        row = x.rows[i - 1]
        prefix = [realm.identity]
        for j in range(v1, v2 + 1):
            prefix.append(compose(prefix[-1], row[j - 1]))

        def run(a, b):
            return invert(prefix[b - v1 + 1], prefix[a - v1])

        last = i == u2
        nxt: dict[tuple[int, ...], object] = {}
        for enters, acc in states.items():
            ranges = []
            for t, a in enumerate(enters):
                cap = v2 - k + t + 1
                hi = min(cap, enters[t + 1] - 1) if t + 1 < k else cap
                ranges.append(range(cap, cap + 1) if last else range(a, hi + 1))
                if last and not a <= cap <= hi:
                    ranges = None
                    break
            if ranges is None:
                continue
            for exits in product(*ranges):
                w = acc
                for a, b in zip(enters, exits):
                    w = compose(w, run(a, b))
                nxt[exits] = _fold_better(realm, nxt.get(exits), w)
        states = nxt
    return states[tuple(range(v2 - k + 1, v2 + 1))]


def chain_statistic(x: Labeling, u1: int, v1: int, u2: int, v2: int, k: int):
    """Shorthand for ``max_weight(x, PathFamilySpec(u1, v1, u2, v2, k))``."""
    return max_weight(x, PathFamilySpec(u1, v1, u2, v2, k))


def _paths(start: Coord, end: Coord):
    (i0, j0), (i1, j1) = start, end
    if i1 < i0 or j1 < j0:
        return
    up, right = i1 - i0, j1 - j0
    for steps_up in combinations(range(up + right), up):
        i, j = i0, j0
        cells = [(i, j)]
        ups = set(steps_up)
        for t in range(up + right):
            if t in ups:
                i += 1
            else:
                j += 1
            cells.append((i, j))
        yield cells


def path_families(spec: PathFamilySpec):
    """Every vertex-disjoint family of order ``effective_k``, as lists of cell lists."""
    k = spec.effective_k
    if k == 0:
        yield []
        return
    choices = [
        list(_paths((spec.u1, spec.v1 + t), (spec.u2, spec.v2 - k + 1 + t)))
        for t in range(k)
    ]
    for family in product(*choices):
        seen: set[Coord] = set()
        ok = True
        for path in family:
            for c in path:
                if c in seen:
                    ok = False
                    break
                seen.add(c)
            if not ok:
                break
        if ok:
            yield list(family)


def brute_force_max_weight(x: Labeling, spec: PathFamilySpec, max_cells: int | None = None):
    """Enumerate all families and fold their weights; for small boxes only."""
    spec.check_inside(x)
    limit = oracle_cell_limit(DEFAULT_PATH_ORACLE_CELLS) if max_cells is None else max_cells
    if spec.height * spec.width > limit:
        raise OracleTooLarge(
            f"box has {spec.height * spec.width} cells; the path oracle is limited to {limit}"
            " (raise TOGGLEKIT_MAX_CELLS to override)"
        )
    realm = x.realm
    weights = [
        realm.compose_all(x[c] for path in family for c in path) for family in path_families(spec)
    ]
    return reduce(lambda a, b: realm.down_combine([a, b]), weights)


def greene_boundary(y: Labeling, i: int, j: int, k: int):
    """Fold ``y[i - t, j - t]`` for ``t < k`` with the realm's group law.

    When ``y`` is an RSK output and ``(i, j)`` is on the upper boundary
    (``i == r`` or ``j == s``) this equals the order-``k`` statistic of the
    box ``[1, i] x [1, j]`` of the original labeling.
    """
    y.shape.check((i, j))
    k = min(k, i, j)
    return y.realm.compose_all(y[i - t, j - t] for t in range(k))


def boundary_points(shape) -> list[Coord]:
    return sorted({(shape.r, j) for j in range(1, shape.s + 1)} | {(i, shape.s) for i in range(1, shape.r + 1)})


__all__ = [
    "PathFamilySpec",
    "max_weight",
    "chain_statistic",
    "brute_force_max_weight",
    "path_families",
    "greene_boundary",
    "boundary_points",
    "oracle_cell_limit",
    "OracleTooLarge",
    "DEFAULT_PATH_ORACLE_CELLS",
]

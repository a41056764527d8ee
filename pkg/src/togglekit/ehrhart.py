"""Lattice-point counts for the stable-set polytope of a moon polyomino.

The polytope ``QSTAB(M)`` lives in ``R^M`` and is cut out by nonnegativity
and one inequality ``sum <= 1`` per maximal clique of the compatibility
graph.  Those cliques are exactly the maximal chains (corner-to-corner
lattice paths) of the maximal rectangles, so a nonnegative filling lies in
``k * QSTAB(M)`` precisely when its largest single-chain weight is at most
``k``.

Counting uses two routes:

* the fast path straightens ``M`` to a partition and counts order-preserving
  maps of the partition's cells into ``{0, ..., k}`` with a profile DP
  (the transfer map identifies these with chain-polytope lattice points);
* :func:`count_dilate_oracle` enumerates fillings of ``M`` directly, with
  branch pruning, and is meant for small shapes only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .chains import PathFamilySpec, oracle_cell_limit, path_families, OracleTooLarge
from .moon import MoonPolyomino, canonical_partition
from .poset import Coord
from .realm import mpq

DEFAULT_DILATE_ORACLE_CELLS = 8


@dataclass(frozen=True)
class QStab:
    """Nonnegativity plus one ``sum <= 1`` row per maximal clique."""

    cells: tuple[Coord, ...]
    cliques: tuple[frozenset[Coord], ...]

    def contains(self, point: dict[Coord, object], scale=1) -> bool:
        if any(point[c] < 0 for c in self.cells):
            return False
        return all(sum((point[c] for c in q), mpq(0)) <= scale for q in self.cliques)


def maximal_chains(M: MoonPolyomino) -> list[frozenset[Coord]]:
    """Corner-to-corner lattice paths of every maximal rectangle, without repeats."""
    seen = []
    found = set()
    for R in M.maximal_rectangles:
        for (path,) in path_families(PathFamilySpec(R.i1, R.j1, R.i2, R.j2, 1)):
            chain = frozenset(path)
            if chain not in found:
                found.add(chain)
                seen.append(chain)
    return seen


def qstab(M: MoonPolyomino) -> QStab:
    return QStab(tuple(sorted(M.cells)), tuple(maximal_chains(M)))


# ------------------------------------------------------------------ counting


def count_order_preserving(parts: Sequence[int], k: int) -> int:
    """Maps ``f`` from the cells of a partition to ``{0..k}``, weakly increasing along rows and columns.

    Row ``i`` holds columns ``1..parts[i-1]`` and ``parts`` is weakly
    decreasing.  Cells are visited row by row; the state is the list of
    current column tops, truncated to the length of the row being filled so
    that finished columns are forgotten.
    """
    parts = [p for p in parts if p]
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"{parts} is not a partition")
    if k < 0:
        return 0
    if not parts:
        return 1
    states: dict[tuple[int, ...], int] = {(0,) * parts[0]: 1}
    for length in parts:
        merged: dict[tuple[int, ...], int] = {}
        for prof, n in states.items():
            key = prof[:length]
            merged[key] = merged.get(key, 0) + n
        states = merged
        for j in range(length):
            # Group by the other coordinates; the new value v at column j may
            # follow any old value a <= v, so the counts are prefix sums in a.
            groups: dict[tuple, list[int]] = {}
            for prof, n in states.items():
                rest = prof[:j] + prof[j + 1 :]
                groups.setdefault(rest, [0] * (k + 1))[prof[j]] += n
            nxt: dict[tuple[int, ...], int] = {}
            for rest, by_old in groups.items():
                left = rest[j - 1] if j else 0
                running = sum(by_old[:left])
                for v in range(left, k + 1):
                    running += by_old[v]
                    if running:
                        nxt[rest[:j] + (v,) + rest[j:]] = running
            states = nxt
    return sum(states.values())


def count_dilate(M: MoonPolyomino, k: int) -> int:
    """Lattice points of ``k * QSTAB(M)`` via the straightened partition."""
    return count_order_preserving(canonical_partition(M), k)


def _check_oracle_size(M: MoonPolyomino, max_cells: int | None) -> None:
    limit = oracle_cell_limit(DEFAULT_DILATE_ORACLE_CELLS) if max_cells is None else max_cells
    if len(M) > limit:
        raise OracleTooLarge(
            f"polyomino has {len(M)} cells; the enumeration oracle is limited to {limit}"
            " (raise TOGGLEKIT_MAX_CELLS to override)"
        )


def enumerate_dilate(M: MoonPolyomino, k: int, max_cells: int | None = None) -> Iterator[dict[Coord, int]]:
    """Every nonnegative integer filling whose chains all weigh at most ``k``."""
    _check_oracle_size(M, max_cells)
    cells = sorted(M.cells)
    chains = [sorted(cells.index(c) for c in ch) for ch in maximal_chains(M)]
    on = [[n for n, ch in enumerate(chains) if idx in ch] for idx in range(len(cells))]
    sums = [0] * len(chains)
    vals = [0] * len(cells)

    def rec(idx):
        if idx == len(cells):
            yield dict(zip(cells, vals))
            return
        room = min((k - sums[n] for n in on[idx]), default=k)
        for v in range(room + 1):
            vals[idx] = v
            for n in on[idx]:
                sums[n] += v
            yield from rec(idx + 1)
            for n in on[idx]:
                sums[n] -= v
        vals[idx] = 0

    if k >= 0:
        yield from rec(0)


def count_dilate_oracle(M: MoonPolyomino, k: int, max_cells: int | None = None) -> int:
    return sum(1 for _ in enumerate_dilate(M, k, max_cells))


# ------------------------------------------------------------- polynomials


@dataclass(frozen=True)
class Polynomial:
    """Exact rational coefficients, constant term first."""

    coeffs: tuple

    @property
    def degree(self) -> int:
        nz = [n for n, c in enumerate(self.coeffs) if c != 0]
        return nz[-1] if nz else -1

    @property
    def leading(self):
        return self.coeffs[self.degree] if self.degree >= 0 else mpq(0)

    def __call__(self, t):
        acc = mpq(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        pad = lambda cs: list(cs) + [mpq(0)] * (n - len(cs))
        return pad(self.coeffs) == pad(other.coeffs)

    def __hash__(self):
        return hash(tuple(c for c in self.coeffs[: self.degree + 1]))

    def __str__(self):
        terms = [f"{c}*k^{n}" for n, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(reversed(terms)) or "0"


def interpolate(points: Iterable[tuple[int, int]]) -> Polynomial:
    """The unique polynomial of degree below ``len(points)`` through ``points`` (Newton form)."""
    pts = [(mpq(x), mpq(y)) for x, y in points]
    xs = [p[0] for p in pts]
    table = [p[1] for p in pts]
    n = len(pts)
    newton = [table[0]]
    for level in range(1, n):
        table = [(table[t + 1] - table[t]) / (xs[t + level] - xs[t]) for t in range(n - level)]
        newton.append(table[0])
    coeffs = [mpq(0)] * max(n, 1)
    basis = [mpq(1)]
    for level, c in enumerate(newton):
        for d, b in enumerate(basis):
            coeffs[d] += c * b
        nxt = [mpq(0)] * (len(basis) + 1)
        for d, b in enumerate(basis):
            nxt[d + 1] += b
            nxt[d] -= xs[level] * b
        basis = nxt
    return Polynomial(tuple(coeffs))


@dataclass(frozen=True)
class CollapseReport:
    ok: bool
    counts: tuple[int, ...]
    polynomial: Polynomial
    mismatches: tuple[int, ...]
    quasi_checked: bool

    def __str__(self):
        head = "polynomial" if self.ok else f"NOT polynomial (mismatch at k={list(self.mismatches)})"
        return f"{head}; counts k=0..{len(self.counts) - 1}: {list(self.counts)}"


def period_collapse_check(M: MoonPolyomino, K: int | None = None, counter=count_dilate) -> CollapseReport:
    """Check that the lattice-point counts for ``k = 0..K`` follow one polynomial.

    A degree-``|M|`` polynomial is fitted to ``k = 0..|M|`` and must predict
    the rest.  When ``K >= 2|M| + 1`` the even and odd values are also fitted
    separately, as a period-2 quasi-polynomial would be, and both
    constituents must coincide with that polynomial.
    """
    d = len(M)
    K = d + 3 if K is None else K
    if K < d:
        raise ValueError(f"need K >= {d} to determine a degree-{d} polynomial")
    counts = tuple(counter(M, k) for k in range(K + 1))
    poly = interpolate(enumerate(counts[: d + 1]))
    bad = tuple(k for k in range(K + 1) if poly(k) != counts[k])
    quasi = K >= 2 * d + 1
    if quasi:
        for residue in (0, 1):
            ks = [k for k in range(residue, K + 1, 2)][: d + 1]
            if interpolate((k, counts[k]) for k in ks) != poly:
                bad = tuple(sorted(set(bad) | {ks[-1]}))
    return CollapseReport(not bad, counts, poly, bad, quasi)


def hook_length_count(parts: Sequence[int]) -> int:
    """Standard Young tableaux of shape ``parts`` by the hook length formula."""
    parts = [p for p in parts if p]
    conj = [sum(1 for p in parts if p > j) for j in range(parts[0])] if parts else []
    hooks = math.prod(parts[i] - j + conj[j] - i - 1 for i in range(len(parts)) for j in range(parts[i]))
    return math.factorial(sum(parts)) // hooks


def syt_volume_check(M: MoonPolyomino, poly: Polynomial | None = None) -> tuple[bool, int, int]:
    """Compare ``|M|! * leading coefficient`` with the tableau count of the straightened shape."""
    d = len(M)
    if poly is None:
        poly = interpolate((k, count_dilate(M, k)) for k in range(d + 1))
    lhs = poly.coeffs[d] * math.factorial(d) if len(poly.coeffs) > d else mpq(0)
    rhs = hook_length_count(canonical_partition(M))
    return lhs == rhs, int(lhs), rhs


# -------------------------------------------------------- vertex certificates


def rational_rank(rows: Sequence[Sequence]) -> int:
    """Rank by exact Gaussian elimination."""
    mat = [[mpq(v) for v in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col] / mat[rank][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class VertexCertificate:
    in_polytope: bool
    is_vertex: bool
    tight_rank: int
    tight: tuple[str, ...]


def vertex_certificate(M: MoonPolyomino, point: dict[Coord, object]) -> VertexCertificate:
    """Decide membership and vertexhood of ``point`` in ``QSTAB(M)`` without an LP solver.

    A feasible point is a vertex exactly when its tight constraints have
    rank ``|M|``.
    """
    P = qstab(M)
    pt = {c: mpq(point.get(c, 0)) for c in P.cells}
    inside = P.contains(pt)
    rows, names = [], []
    for c in P.cells:
        if pt[c] == 0:
            rows.append([1 if d == c else 0 for d in P.cells])
            names.append(f"x{c} >= 0")
    for q in P.cliques:
        if sum((pt[c] for c in q), mpq(0)) == 1:
            rows.append([1 if d in q else 0 for d in P.cells])
            names.append("sum over " + " ".join(str(c) for c in sorted(q)) + " <= 1")
    rank = rational_rank(rows) if rows else 0
    return VertexCertificate(inside, inside and rank == len(P.cells), rank, tuple(names))


__all__ = [
    "QStab",
    "qstab",
    "maximal_chains",
    "count_order_preserving",
    "count_dilate",
    "count_dilate_oracle",
    "enumerate_dilate",
    "Polynomial",
    "interpolate",
    "CollapseReport",
    "period_collapse_check",
    "hook_length_count",
    "syt_volume_check",
    "rational_rank",
    "VertexCertificate",
    "vertex_certificate",
    "DEFAULT_DILATE_ORACLE_CELLS",
]

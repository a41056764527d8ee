"""Exact rational numbers, the two arithmetic realms, and labelings.

All arithmetic is exact.  Values are ``gmpy2.mpq`` rationals, which behave
like :class:`fractions.Fraction` but are much faster; anything accepted by
``mpq`` (ints, ``Fraction``, strings such as ``"3/7"``) can be passed in.

A :class:`Realm` bundles the four operations that the toggle formula needs.
In the piecewise-linear realm ``PL`` they are (min, max, +, -) and in the
birational realm ``BIRATIONAL`` they are (parallel sum, sum, *, /), the
latter restricted to positive rationals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterable, Mapping, Sequence

from gmpy2 import mpq

from .poset import Coord, RectShape

__all__ = [
    "mpq",
    "to_rational",
    "format_rational",
    "Realm",
    "PL",
    "BIRATIONAL",
    "REALMS",
    "realm_by_name",
    "Labeling",
    "stack",
    "random_labeling",
]

ZERO = mpq(0)
ONE = mpq(1)


def to_rational(v) -> mpq:
    """Convert ints, fractions, mpq values or ``"p/q"`` strings to ``mpq``.

    Floats are rejected so that nothing inexact sneaks in.
    """
    if isinstance(v, float):
        raise TypeError(f"refusing inexact float {v!r}; pass a string like '1/10'")
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    if isinstance(v, str):
        v = v.strip()
        if not v:
            raise ValueError("empty rational literal")
        if "." in v:
            return mpq(Fraction(v).numerator, Fraction(v).denominator)
    return mpq(v)


def format_rational(v) -> str:
    return str(mpq(v))


def _parallel_sum(vals: Sequence[mpq]) -> mpq:
    return ONE / sum((ONE / v for v in vals), ZERO)


@dataclass(frozen=True, eq=False)
class Realm:
    """The four operations used by toggles, with their empty-fold units.

    ``up_combine`` folds the labels of upper covers, ``down_combine`` folds
    the labels of lower covers, ``compose`` is the group law and
    ``invert(a, b)`` computes ``a`` composed with the inverse of ``b``.
    """

    name: str
    _up: Callable[[Sequence[mpq]], mpq]
    _down: Callable[[Sequence[mpq]], mpq]
    compose: Callable[[mpq, mpq], mpq]
    invert: Callable[[mpq, mpq], mpq]
    empty_up_unit: mpq
    empty_down_unit: mpq
    identity: mpq
    positive_only: bool

    def up_combine(self, vals: Sequence[mpq]) -> mpq:
        return self._up(vals) if vals else self.empty_up_unit

    def down_combine(self, vals: Sequence[mpq]) -> mpq:
        return self._down(vals) if vals else self.empty_down_unit

    def compose_all(self, vals: Iterable[mpq]) -> mpq:
        return reduce(self.compose, vals, self.identity)

    def value(self, v) -> mpq:
        q = to_rational(v)
        if self.positive_only and q <= 0:
            raise ValueError(f"{self.name} labels must be positive, got {q}")
        return q

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (realm_by_name, (self.name,))


PL = Realm(
    name="PL",
    _up=min,
    _down=max,
    compose=lambda a, b: a + b,
    invert=lambda a, b: a - b,
    empty_up_unit=ONE,
    empty_down_unit=ZERO,
    identity=ZERO,
    positive_only=False,
)

BIRATIONAL = Realm(
    name="Birational",
    _up=_parallel_sum,
    _down=lambda vals: sum(vals, ZERO),
    compose=lambda a, b: a * b,
    invert=lambda a, b: a / b,
    empty_up_unit=ONE,
    empty_down_unit=ONE,
    identity=ONE,
    positive_only=True,
)

REALMS = (PL, BIRATIONAL)


def realm_by_name(name: str) -> Realm:
    key = name.strip().lower()
    if key in ("pl", "piecewise-linear", "tropical"):
        return PL
    if key in ("birational", "bir"):
        return BIRATIONAL
    raise ValueError(f"unknown realm {name!r}")


class Labeling:
    """An immutable map from the cells of a rectangle to rationals.

    Indexing is 1-based: ``x[i, j]``.  Equality is exact and includes the
    realm and shape.
    """

    __slots__ = ("shape", "realm", "rows")

    def __init__(self, shape: RectShape, realm: Realm, rows: Iterable[Iterable]):
        rows = tuple(tuple(realm.value(v) for v in row) for row in rows)
        if len(rows) != shape.r or any(len(row) != shape.s for row in rows):
            raise ValueError(f"values do not fill a {shape.r}x{shape.s} rectangle")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "realm", realm)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, *_):
        raise AttributeError("Labeling is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], realm: Realm = PL) -> "Labeling":
        rows = [list(row) for row in rows]
        shape = RectShape(len(rows), len(rows[0]) if rows else 0)
        return cls(shape, realm, rows)

    @classmethod
    def from_mapping(cls, shape: RectShape, realm: Realm, values: Mapping[Coord, object]) -> "Labeling":
        return cls(shape, realm, [[values[i, j] for j in range(1, shape.s + 1)] for i in range(1, shape.r + 1)])

    @classmethod
    def constant(cls, shape: RectShape, realm: Realm, c) -> "Labeling":
        return cls(shape, realm, [[c] * shape.s for _ in range(shape.r)])

    @classmethod
    def _trusted(cls, shape, realm, rows) -> "Labeling":
        # Internal constructor for rows already known to hold valid mpq values.
        obj = object.__new__(cls)
        object.__setattr__(obj, "shape", shape)
        object.__setattr__(obj, "realm", realm)
        object.__setattr__(obj, "rows", tuple(tuple(row) for row in rows))
        return obj

    def __getitem__(self, p: Coord) -> mpq:
        i, j = self.shape.check(p)
        return self.rows[i - 1][j - 1]

    def items(self):
        for i, row in enumerate(self.rows, 1):
            for j, v in enumerate(row, 1):
                yield (i, j), v

    def as_dict(self) -> dict[Coord, mpq]:
        return dict(self.items())

    def grid(self) -> list[list[mpq]]:
        """A fresh mutable 0-based copy of the values."""
        return [list(row) for row in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Labeling):
            return NotImplemented
        return self.shape == other.shape and self.realm is other.realm and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.realm.name, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(v) for v in row) for row in self.rows)
        return f"Labeling({self.shape.r}x{self.shape.s} {self.realm.name}: {body})"

    def transpose(self) -> "Labeling":
        """Swap the two coordinates, giving a labeling of ``[s] x [r]``."""
        return Labeling._trusted(self.shape.transpose(), self.realm, zip(*self.rows))

    def rotate(self) -> "Labeling":
        """The half-turn ``x*`` with ``x*[i, j] = x[r + 1 - i, s + 1 - j]``."""
        return Labeling._trusted(self.shape, self.realm, [row[::-1] for row in self.rows[::-1]])

    def project(self, cells: Iterable[Coord]) -> dict[Coord, mpq]:
        """Restrict to ``cells``, keeping the original coordinates."""
        return {p: self[p] for p in cells}

    def map_values(self, f: Callable[[mpq], object]) -> "Labeling":
        return Labeling(self.shape, self.realm, [[f(v) for v in row] for row in self.rows])

    def replace(self, updates: Mapping[Coord, object]) -> "Labeling":
        g = self.grid()
        for (i, j), v in updates.items():
            self.shape.check((i, j))
            g[i - 1][j - 1] = self.realm.value(v)
        return Labeling._trusted(self.shape, self.realm, g)


def stack(lower: Labeling, upper: Labeling) -> Labeling:
    """Place ``upper`` on top of ``lower``: ``[i] x [s]`` and ``[j] x [s]`` give ``[i + j] x [s]``.

    The rows of ``lower`` keep their indices and those of ``upper`` are
    shifted by ``i``.  A labeling with no rows is a two-sided identity.
    """
    if lower.realm is not upper.realm:
        raise ValueError("cannot stack labelings from different realms")
    if lower.shape.r == 0:
        return upper
    if upper.shape.r == 0:
        return lower
    if lower.shape.s != upper.shape.s:
        raise ValueError("stacked labelings need the same number of down-diagonals")
    return Labeling._trusted(RectShape(lower.shape.r + upper.shape.r, lower.shape.s), lower.realm, lower.rows + upper.rows)


def random_rational(rng: random.Random, realm: Realm, max_num: int = 6, max_den: int = 3) -> mpq:
    """A small random rational suitable for property tests.

    PL values may be negative; birational values are strictly positive.
    """
    den = rng.randint(1, max_den)
    if realm.positive_only:
        return mpq(rng.randint(1, max_num), den)
    return mpq(rng.randint(-max_num, max_num), den)


def random_labeling(shape: RectShape, realm: Realm, rng: random.Random, **kw) -> Labeling:
    return Labeling._trusted(
        shape, realm, [[random_rational(rng, realm, **kw) for _ in range(shape.s)] for _ in range(shape.r)]
    )

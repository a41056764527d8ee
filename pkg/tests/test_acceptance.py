"""End-to-end acceptance checks; a summary line per criterion is printed at the end of the run."""

import random
import time
import timeit

import pytest

import pinned
from togglekit.chains import PathFamilySpec, brute_force_max_weight, max_weight
from togglekit.ehrhart import (
    count_dilate,
    count_dilate_oracle,
    enumerate_dilate,
    interpolate,
    period_collapse_check,
    qstab,
    syt_volume_check,
    vertex_certificate,
)
from togglekit.maps import promotion, rowmotion_shift, rsk
from togglekit.moon import (
    AXES,
    Filling,
    MoonPolyomino,
    ShiftStep,
    apply_shift,
    equivalent,
    ne_chain_max,
    omega_path,
    random_filling,
    random_moon,
    rect_chain_max,
    rect_image,
    route_between,
    se_chain_max,
    straighten,
)
from togglekit.poset import RectShape
from togglekit.realm import REALMS, mpq, random_labeling
from togglekit.toggles import rowmotion
from togglekit.verify import commute_once, run_property

criterion = pytest.mark.criterion


@criterion(1, "RSK and P-promotion golden triple on the 3x3 example")
def test_rsk_promotion_golden_triple():
    y = rsk(pinned.GREENE_INPUT)
    assert y == pinned.GREENE_RSK
    assert promotion(y) == pinned.GREENE_RSK_PROMOTED
    best = min(timeit.repeat(lambda: promotion(rsk(pinned.GREENE_INPUT)), number=1, repeat=20))
    assert best < 1e-3


@criterion(2, "path-family values 5 and 6 by DP and by enumeration")
def test_greene_values():
    x = pinned.GREENE_INPUT
    for k, expected in [(1, 5), (2, 6)]:
        spec = PathFamilySpec(1, 1, 3, 3, k)
        assert max_weight(x, spec) == expected
        assert brute_force_max_weight(x, spec) == expected


@criterion(3, "rowmotion-shift golden pair and the shared weight 23/20")
def test_rowmotion_shift_golden_pair():
    x, y = pinned.SHIFT_INPUT, pinned.SHIFT_OUTPUT
    assert rowmotion_shift(x) == y
    assert max_weight(x, PathFamilySpec(2, 1, 4, 3, 2)) == pinned.SHIFT_PAIR_WEIGHT
    assert max_weight(y, PathFamilySpec(1, 1, 3, 3, 2)) == pinned.SHIFT_PAIR_WEIGHT
    assert brute_force_max_weight(x, PathFamilySpec(2, 1, 4, 3, 2)) == mpq(23, 20)


SUITES = [
    "toggle-involution",
    "toggle-commutation",
    "transfer-roundtrip",
    "rsk-roundtrip",
    "chain-shifting",
    "proid-rsk",
    "rsk-cancellation",
    "double-rsk",
    "omega-chain-shifting",
    "same-p-tableaux",
    "omega-reconstruction",
    "evac-involution",
    "evac-rotation",
    "evac-chain-shifting",
    "swpro-factorization",
    "swpro-conjugacy",
    "conjugator-identity",
    "swpro-chain-shifting",
    "plactic",
]


@criterion(4, "identity suites: 200 trials per realm, no failures, under 60 s")
def test_property_suites():
    start = time.perf_counter()
    failures = {}
    for name in SUITES:
        rep = run_property(name, trials=200, seed=20261015)
        assert rep.runs == 400, name
        if not rep.ok:
            failures[name] = rep.minimal_failure()
    elapsed = time.perf_counter() - start
    print(f"\n{len(SUITES)} suites x 200 trials x 2 realms in {elapsed:.1f}s")
    assert not failures, failures
    assert elapsed < 60


@criterion(5, "rowmotion has period r+s on every shape with r+s <= 7")
def test_rowmotion_periodicity():
    rng = random.Random(5)
    shapes = [RectShape(r, s) for r in range(1, 7) for s in range(1, 7) if r + s <= 7]
    assert len(shapes) == 21
    for shape in shapes:
        for realm in REALMS:
            for _ in range(50):
                x = random_labeling(shape, realm, rng)
                y = x
                for _ in range(shape.r + shape.s):
                    y = rowmotion(y)
                assert y == x


@criterion(6, "all nine pairs of shift maps commute on the pinned two-rectangle shape")
def test_shift_maps_commute():
    M = pinned.SIXTEEN
    R, S = pinned.SIXTEEN_PAIR
    assert R in M.maximal_rectangles and S in M.maximal_rectangles
    rng = random.Random(6)
    for realm in REALMS:
        for _ in range(100):
            x = random_filling(M, rng, realm, 0, 5)
            for a1 in AXES:
                for a2 in AXES:
                    lhs, rhs = commute_once(x, ShiftStep(R, a1), ShiftStep(S, a2))
                    assert lhs == rhs, (a1, a2, x)


@criterion(7, "seven-cell filling has northeast maximum 3 and southeast chain 1")
def test_moon_statistics():
    x = pinned.SEVEN_FILLING
    assert ne_chain_max(x, 1) == 3
    assert se_chain_max(x) == 1


def _track_rectangles(M, N):
    """Follow every maximal rectangle of M along the shift route to N."""
    forward, offset, backward = route_between(M, N)
    images = {S: S for S in M.maximal_rectangles}
    cur = M
    for st in forward:
        images = {S: rect_image(cur, st, T) for S, T in images.items()}
        cur = apply_shift(cur, st)
    images = {S: T.moved(*offset) for S, T in images.items()}
    cur = cur.translate(*offset)
    for st in backward:
        images = {S: rect_image(cur, st, T) for S, T in images.items()}
        cur = apply_shift(cur, st)
    assert cur == N
    return images


@criterion(8, "shape map is a statistic-preserving bijection on lattice points, k <= 3")
def test_shape_map_bijection_on_lattice_points():
    M = pinned.SEVEN
    N = MoonPolyomino.partition(pinned.SEVEN_PARTITION)
    assert equivalent(M, N)
    images = _track_rectangles(M, N)
    P_N = qstab(N)
    for k in range(4):
        targets = {tuple(sorted(p.items())) for p in enumerate_dilate(N, k)}
        hit = set()
        for point in enumerate_dilate(M, k):
            x = Filling(M, point)
            y = omega_path(x, N)
            assert all(v == int(v) and v >= 0 for v in y.values.values())
            assert P_N.contains(y.values, scale=k)
            key = tuple(sorted((c, int(v)) for c, v in y.values.items()))
            assert key not in hit
            hit.add(key)
            for S, T in images.items():
                for order in range(1, min(S.shape.r, S.shape.s) + 1):
                    assert rect_chain_max(x, S, order) == rect_chain_max(y, T, order)
            assert se_chain_max(x) == se_chain_max(y)
        assert hit == targets


@criterion(9, "Ehrhart counts: equivalence, oracle agreement, polynomiality, tableaux, half vertex")
def test_ehrhart_counts():
    rng = random.Random(9)
    shapes = [pinned.SEVEN] + [random_moon(rng, 7, 6) for _ in range(25)]
    for M in shapes:
        _, lam = straighten(M)
        assert equivalent(M, lam)
        oracle = [count_dilate_oracle(M, k) for k in range(6)]
        assert oracle == [count_dilate_oracle(lam, k) for k in range(6)]
        assert oracle == [count_dilate(M, k) for k in range(6)]
        rep = period_collapse_check(M, len(M) + 3)
        assert rep.ok
        assert syt_volume_check(M, rep.polynomial)[0]

    T = pinned.THIRTEEN
    cert = vertex_certificate(T, {c: mpq(1, 2) for c in pinned.THIRTEEN_HALF_VERTEX})
    assert cert.in_polytope and cert.is_vertex
    counts = [count_dilate(T, k) for k in range(16)]
    assert counts[:5] == pinned.THIRTEEN_COUNTS
    poly = interpolate(enumerate(counts[:14]))
    assert poly.degree == 13
    assert poly(14) == counts[14] and poly(15) == counts[15]
    assert syt_volume_check(T, poly)[0]

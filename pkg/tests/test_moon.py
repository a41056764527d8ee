import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import pinned
from togglekit.moon import (
    AXES,
    Filling,
    IllegalShift,
    MaxRect,
    MoonError,
    MoonPolyomino,
    ShiftStep,
    apply_shift,
    canonical_partition,
    check_moon,
    equivalent,
    is_legal,
    ne_chain_max,
    omega_path,
    random_filling,
    random_moon,
    rect_chain_max,
    rect_image,
    route_between,
    se_chain_max,
    se_chain_max_by_stabilization,
    shift_filling,
    straighten,
    validate,
)
from togglekit.realm import BIRATIONAL, PL

seeds = st.integers(0, 10**6)


def brute_maximal_rectangles(M):
    cells = M.cells
    rows = [i for i, _ in cells]
    cols = [j for _, j in cells]
    rects = []
    for i1 in range(min(rows), max(rows) + 1):
        for i2 in range(i1, max(rows) + 1):
            for j1 in range(min(cols), max(cols) + 1):
                for j2 in range(j1, max(cols) + 1):
                    if all((i, j) in cells for i in range(i1, i2 + 1) for j in range(j1, j2 + 1)):
                        rects.append((i1, i2, j1, j2))
    inside = lambda a, b: b[0] <= a[0] and a[1] <= b[1] and b[2] <= a[2] and a[3] <= b[3]
    return {MaxRect(*a) for a in rects if not any(a != b and inside(a, b) for b in rects)}


def test_validate_accepts_and_rejects():
    assert validate(pinned.SEVEN.cells)[0]
    ok, why = validate(pinned.NOT_CONVEX)
    assert not ok and "convex" in why
    ok, why = validate(pinned.NOT_NESTED)
    assert not ok and "nested" in why
    with pytest.raises(MoonError):
        MoonPolyomino(pinned.NOT_CONVEX)
    with pytest.raises(MoonError):
        check_moon([])


def test_seven_cell_shape():
    M = pinned.SEVEN
    assert set(M.maximal_rectangles) == pinned.SEVEN_RECTS
    assert canonical_partition(M) == pinned.SEVEN_PARTITION
    assert not M.is_straight()
    assert M.rows == {1: [1, 2], 2: [1, 2, 3], 3: [1, 2]}
    assert M.columns == {1: [1, 2, 3], 2: [1, 2, 3], 3: [2]}


@given(seeds)
def test_maximal_rectangles_match_brute_force(seed):
    M = random_moon(random.Random(seed), 12, 6)
    assert set(M.maximal_rectangles) == brute_maximal_rectangles(M)


def test_partition_shape():
    lam = MoonPolyomino.partition([3, 1])
    assert lam.cells == {(1, 1), (1, 2), (1, 3), (2, 1)}
    assert lam.is_straight() and lam.row_lengths() == (3, 1)


def test_immutability():
    with pytest.raises(AttributeError):
        pinned.SEVEN.cells = frozenset()
    with pytest.raises(AttributeError):
        pinned.SEVEN_FILLING.values = {}


def test_filling_must_cover_cells():
    with pytest.raises(ValueError):
        Filling(pinned.SEVEN, {(1, 1): 1})
    with pytest.raises(ValueError):
        Filling(pinned.SEVEN, {c: 0 for c in pinned.SEVEN.cells}, BIRATIONAL)


def test_statistics_on_seven_cell_filling():
    x = pinned.SEVEN_FILLING
    assert ne_chain_max(x, 1) == 3
    assert se_chain_max(x) == 1
    assert se_chain_max_by_stabilization(x) == 1
    with pytest.raises(ValueError):
        ne_chain_max(Filling(x.polyomino, {c: 1 for c in x.polyomino.cells}, BIRATIONAL))


def test_straighten_sixteen_cell_shape():
    steps, lam = straighten(pinned.SIXTEEN)
    assert len(steps) == 3
    assert lam.row_lengths() == pinned.SIXTEEN_PARTITION
    assert lam.is_straight()


def test_cross_down_shift_golden():
    names = "abcdefgh"
    cells = [(3, 1), (2, 2), (1, 3), (3, 2), (2, 3), (3, 3), (4, 3), (3, 4)]
    x = Filling(pinned.CROSS, {c: n + 1 for n, c in enumerate(cells)})
    y = shift_filling(x, ShiftStep(pinned.CROSS_RECT, "down"))
    where = dict(zip(names, cells))
    # cells in the rectangle's columns but outside it slide one down-diagonal
    assert y[1, 2] == 3 and y[4, 2] == 7
    assert y[where["a"]] == 1 and y[where["h"]] == 8
    assert (y[where["b"]], y[where["d"]], y[where["e"]], y[where["f"]]) == (3, 8, 4, 2)


def test_illegal_shift_is_rejected():
    M = pinned.SEVEN
    st_ = ShiftStep(MaxRect(2, 2, 1, 3), "down")
    assert not is_legal(M, st_)
    with pytest.raises(IllegalShift):
        apply_shift(M, st_)
    with pytest.raises(IllegalShift):
        shift_filling(pinned.SEVEN_FILLING, st_)
    with pytest.raises(ValueError):
        apply_shift(M, ShiftStep(MaxRect(1, 1, 1, 1), "down"))
    with pytest.raises(ValueError):
        ShiftStep(MaxRect(1, 3, 1, 2), "sideways")


@given(seeds, st.sampled_from(AXES), st.sampled_from([PL, BIRATIONAL]))
def test_shift_then_reverse_is_identity(seed, axis, realm):
    rng = random.Random(seed)
    M = random_moon(rng, 12, 6)
    legal = [ShiftStep(R, axis) for R in M.maximal_rectangles if is_legal(M, ShiftStep(R, axis))]
    if not legal:
        return
    step = rng.choice(legal)
    x = random_filling(M, rng, realm)
    assert shift_filling(shift_filling(x, step), step.reverse()) == x


@given(seeds)
def test_down_and_up_shifts_keep_rectangle_statistics(seed):
    rng = random.Random(seed)
    M = random_moon(rng, 12, 6)
    steps = [ShiftStep(R, a) for R in M.maximal_rectangles for a in ("down", "up") if is_legal(M, ShiftStep(R, a))]
    if not steps:
        return
    step = rng.choice(steps)
    x = random_filling(M, rng, PL)
    y = shift_filling(x, step)
    for S in M.maximal_rectangles:
        T = rect_image(M, step, S)
        for k in range(1, min(S.shape.r, S.shape.s) + 1):
            assert rect_chain_max(x, S, k) == rect_chain_max(y, T, k)
    assert se_chain_max(y) == se_chain_max(x)


@given(seeds)
def test_se_chain_two_ways(seed):
    rng = random.Random(seed)
    x = random_filling(random_moon(rng, 10, 5), rng, PL, 0, 2)
    assert se_chain_max(x) == se_chain_max_by_stabilization(x)


@given(seeds)
def test_straightening_reaches_row_length_partition(seed):
    M = random_moon(random.Random(seed), 14, 8)
    steps, lam = straighten(M)
    assert lam.is_straight() and lam.row_lengths() == M.row_lengths()
    cur = M
    for s in steps:
        cur = apply_shift(cur, s)
    assert cur == lam


def test_omega_path_between_equivalent_shapes():
    x = pinned.SEVEN_FILLING
    N = MoonPolyomino.partition(pinned.SEVEN_PARTITION).translate(4, 2)
    assert equivalent(x.polyomino, N)
    y = omega_path(x, N)
    assert y.polyomino == N
    assert omega_path(y, x.polyomino) == x
    forward, offset, backward = route_between(x.polyomino, N)
    assert offset == (4, 2) and backward == []
    assert not equivalent(x.polyomino, MoonPolyomino.partition([3, 3, 1]))
    with pytest.raises(ValueError):
        omega_path(x, MoonPolyomino.partition([3, 3, 1]))


def test_commutation_pair_on_sixteen_cell_shape():
    from togglekit.verify import commute_once

    R, S = pinned.SIXTEEN_PAIR
    rng = random.Random(11)
    for realm in (PL, BIRATIONAL):
        x = random_filling(pinned.SIXTEEN, rng, realm)
        for a1 in AXES:
            for a2 in AXES:
                lhs, rhs = commute_once(x, ShiftStep(R, a1), ShiftStep(S, a2))
                assert lhs == rhs


def test_translate_and_normalize():
    M = pinned.SEVEN.translate(3, -2)
    assert M.corner == (4, -1)
    assert M.normalized() == pinned.SEVEN
    x = pinned.SEVEN_FILLING.translate(1, 1)
    assert x[2, 2] == 2

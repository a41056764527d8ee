"""Randomized property suites for every identity the library relies on.

Each property is a function ``check(rng, realm, shape)`` that raises
:class:`PropertyFailure` with a witness when the identity breaks.  Trials are
seeded deterministically from ``(root seed, property, realm, trial)`` so any
failure can be replayed from the printed seed alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .chains import PathFamilySpec, boundary_points, brute_force_max_weight, chain_statistic, greene_boundary, max_weight
from .maps import (
    conjugator_ops,
    evacuation,
    evacuation_ops,
    omega,
    p_tableau,
    promotion,
    promotion_ops,
    rsk,
    rsk_inverse,
    sw_promotion,
)
from .moon import (
    AXES,
    Filling,
    IllegalShift,
    MoonPolyomino,
    ShiftStep,
    apply_shift,
    is_legal,
    random_filling,
    random_moon,
    rect_chain_max,
    rect_image,
    run_route,
    se_chain_max,
    se_chain_max_by_stabilization,
    shift_filling,
    straighten,
)
from .poset import Coord, RectShape, Region, file_index, principal_ideal, top_to_bottom
from .realm import PL, REALMS, Labeling, Realm, mpq, random_labeling, stack
from .toggles import TRANSFER, TRANSFER_INVERSE, invert_ops, rowmotion, rowmotion_ops, run_ops, toggle, toggle_ops, transfer


class PropertyFailure(AssertionError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def expect(cond: bool, message: str, witness=None) -> None:
    if not cond:
        raise PropertyFailure(message, witness)


@dataclass(frozen=True)
class Property:
    name: str
    summary: str
    check: Callable
    realms: tuple = REALMS
    min_shape: tuple[int, int] = (1, 1)
    max_sum: int | None = None
    uses_shape: bool = True


REGISTRY: dict[str, Property] = {}


def prop(name, summary, realms=REALMS, min_shape=(1, 1), max_sum=None, uses_shape=True):
    def deco(fn):
        REGISTRY[name] = Property(name, summary, fn, realms, min_shape, max_sum, uses_shape)
        return fn

    return deco


def H(x, u1, v1, u2, v2, k):
    return chain_statistic(x, u1, v1, u2, v2, k)


def _ks(height: int, width: int) -> range:
    # One past the clamp checks that the statistic really has stabilized.
    return range(0, min(height, width) + 2)


def _random_cell(rng, shape: RectShape) -> Coord:
    return (rng.randint(1, shape.r), rng.randint(1, shape.s))


# ----------------------------------------------------------- toggles, transfer


@prop("toggle-involution", "each toggle is an involution")
def _toggle_involution(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    p = _random_cell(rng, shape)
    expect(toggle(toggle(x, p), p) == x, f"toggling {p} twice changed the labeling", x)


@prop("toggle-commutation", "toggles commute when separated by a diagonal or a file")
def _toggle_commutation(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    cells = list(shape)
    p, q = rng.choice(cells), rng.choice(cells)
    if abs(p[0] - q[0]) + abs(p[1] - q[1]) != 1:
        expect(toggle(toggle(x, p), q) == toggle(toggle(x, q), p), f"toggles at {p} and {q} do not commute", x)
    # Words living on opposite sides of an up-diagonal, of a down-diagonal, or of a file.
    splits = [
        (lambda c, t: c[0] > t, lambda c, t: c[0] < t, range(1, shape.r + 1)),
        (lambda c, t: c[1] > t, lambda c, t: c[1] < t, range(1, shape.s + 1)),
        (lambda c, t: file_index(c) > t, lambda c, t: file_index(c) < t, range(1 - shape.s, shape.r)),
    ]
    above, below, cuts = rng.choice(splits)
    t = rng.choice(list(cuts))
    word_a = [c for c in cells if above(c, t)]
    word_b = [c for c in cells if below(c, t)]
    wa = toggle_ops(rng.choices(word_a, k=4) if word_a else [])
    wb = toggle_ops(rng.choices(word_b, k=4) if word_b else [])
    expect(run_ops(x, wa + wb) == run_ops(x, wb + wa), f"words separated at {t} do not commute", x)


@prop("transfer-roundtrip", "the transfer map and its inverse undo each other")
def _transfer_roundtrip(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    expect(transfer(transfer(x), inverse=True) == x, "phi^-1 . phi is not the identity", x)
    expect(transfer(transfer(x, inverse=True)) == x, "phi . phi^-1 is not the identity", x)


@prop("rowmotion-period", "rowmotion has order dividing r + s", max_sum=7)
def _rowmotion_period(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    ops = rowmotion_ops(shape)
    expect(run_ops(x, ops * (shape.r + shape.s)) == x, "rho^(r+s) is not the identity", x)
    expect(rowmotion(rowmotion(x), inverse=True) == x, "rho^-1 . rho is not the identity", x)


def _ideal_indicator(shape, ideal) -> Labeling:
    # PL rowmotion acts on order-filter indicators: 1 off the ideal, 0 on it.
    return Labeling.from_mapping(shape, PL, {p: 0 if p in ideal else 1 for p in shape})


def _combinatorial_toggle(shape, ideal, p):
    ideal = set(ideal)
    lower = [q for q in ((p[0] - 1, p[1]), (p[0], p[1] - 1)) if q in shape]
    upper = [q for q in ((p[0] + 1, p[1]), (p[0], p[1] + 1)) if q in shape]
    if p in ideal and not any(q in ideal for q in upper):
        return ideal - {p}
    if p not in ideal and all(q in ideal for q in lower):
        return ideal | {p}
    return ideal


@prop("combinatorial-rowmotion", "PL toggles restrict to combinatorial toggles on 0/1 filter vectors", realms=(PL,))
def _combinatorial_rowmotion(rng, realm, shape):
    gens = [_random_cell(rng, shape) for _ in range(rng.randint(0, 2))]
    ideal = set(top_to_bottom(c for g in gens for c in principal_ideal(shape, *g)))
    p = _random_cell(rng, shape)
    got = toggle(_ideal_indicator(shape, ideal), p)
    expect(got == _ideal_indicator(shape, _combinatorial_toggle(shape, ideal, p)), f"toggle at {p} disagrees", got)
    cur = ideal
    for q in rowmotion_ops(shape):
        cur = _combinatorial_toggle(shape, cur, q.cell)
    got = rowmotion(_ideal_indicator(shape, ideal))
    expect(got == _ideal_indicator(shape, cur), "rowmotion disagrees with combinatorial rowmotion", got)


# ----------------------------------------------------------------------- RSK


@prop("rsk-roundtrip", "truncated RSK is invertible")
def _rsk_roundtrip(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    a, b = rng.randint(1, shape.r + 1), rng.randint(1, shape.s + 1)
    expect(rsk_inverse(rsk(x, a, b), a, b) == x, f"RSK_{a},{b} round trip failed", x)
    expect(rsk(rsk_inverse(x, a, b), a, b) == x, f"RSK_{a},{b} inverse round trip failed", x)
    expect(rsk_inverse(rsk(x)) == x, "full RSK round trip failed", x)


@prop("greene", "RSK entries along a file sum to path-family weights at the boundary")
def _greene(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    y = rsk(x)
    for i, j in boundary_points(shape):
        for k in _ks(i, j):
            expect(
                greene_boundary(y, i, j, k) == H(x, 1, 1, i, j, k),
                f"boundary point {(i, j)} order {k}",
                x,
            )


@prop("transpose-duality", "RSK and path statistics commute with transposition")
def _transpose_duality(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    xt = x.transpose()
    expect(rsk(xt) == rsk(x).transpose(), "RSK does not commute with transposition", x)
    expect(omega(xt, "Q") == omega(x, "P").transpose(), "Q-side map is not the transposed P-side map", x)
    u1, u2 = sorted(rng.randint(1, shape.r) for _ in range(2))
    v1, v2 = sorted(rng.randint(1, shape.s) for _ in range(2))
    k = rng.randint(0, 3)
    expect(H(x, u1, v1, u2, v2, k) == H(xt, v1, u1, v2, u2, k), "statistic changes under transposition", x)


@prop("translation-covariance", "shifting PL labels (or scaling birational ones) shifts the statistic by path length")
def _translation(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    c = mpq(rng.randint(1, 5), rng.randint(1, 3))
    u1, u2 = sorted(rng.randint(1, shape.r) for _ in range(2))
    v1, v2 = sorted(rng.randint(1, shape.s) for _ in range(2))
    spec = PathFamilySpec(u1, v1, u2, v2, rng.randint(0, 4))
    k = spec.effective_k
    cells = k * (u2 - u1 + v2 - v1 - k + 2)
    if realm is PL:
        expect(max_weight(x.map_values(lambda v: v + c), spec) == max_weight(x, spec) + c * cells, "translation", x)
    else:
        expect(max_weight(x.map_values(lambda v: v * c), spec) == max_weight(x, spec) * c**cells, "scaling", x)


@prop("path-oracle", "the lockstep DP agrees with brute-force enumeration of path families")
def _path_oracle(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    u1, u2 = sorted(rng.randint(1, shape.r) for _ in range(2))
    v1, v2 = sorted(rng.randint(1, shape.s) for _ in range(2))
    spec = PathFamilySpec(u1, v1, u2, v2, rng.randint(0, 4))
    expect(max_weight(x, spec) == brute_force_max_weight(x, spec), f"DP and oracle disagree on {spec}", x)


def _rho_conj_ops(shape, region):
    return [TRANSFER_INVERSE] + rowmotion_ops(shape, region, inverse=True) + [TRANSFER]


@prop("chain-shifting", "conjugated inverse rowmotion shifts up-diagonal statistics down by one", min_shape=(2, 1))
def _chain_shifting(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    r, s = shape.r, shape.s
    for v in range(2, r + 1):
        extra = [_random_cell(rng, shape) for _ in range(rng.randint(0, 2))]
        region = Region.ideal([(v - 1, s)] + extra)
        y = run_ops(x, _rho_conj_ops(shape, region))
        for u in range(2, v + 1):
            for k in _ks(v - u + 1, s):
                expect(
                    H(x, u, 1, v, s, k) == H(y, u - 1, 1, v - 1, s, k),
                    f"u={u} v={v} k={k} with ideal generated by {region.value}",
                    x,
                )


@prop("proid-rsk", "consecutive truncated RSK maps differ by a truncated P-promotion")
def _proid_rsk(rng, realm, shape):
    y = random_labeling(shape, realm, rng)
    for a, b in shape:
        expect(rsk(rsk_inverse(y, a, b), a + 1, b) == promotion(y, "P", a, b), f"(a, b) = {(a, b)}", y)


@prop("rsk-cancellation", "RSK_{a,c} . RSK_{a,b}^-1 is a product of Q-promotions and fixes the left part")
def _rsk_cancellation(rng, realm, shape):
    y = random_labeling(shape, realm, rng)
    a = rng.randint(1, shape.r + 1)
    b, c = rng.randint(1, shape.s + 1), rng.randint(1, shape.s + 1)
    got = rsk(rsk_inverse(y, a, b), a, c)
    if c >= b:
        ops = []
        for t in range(b, c):
            ops += promotion_ops(shape, "Q", a, t)
        expect(got == run_ops(y, ops), f"a={a} b={b} c={c}", y)
    m = min(b, c)
    for p in shape:
        if file_index(p) >= a - m:
            expect(got[p] == y[p], f"a={a} b={b} c={c} moved {p}, weakly left of {(a, m)}", y)


@prop("double-rsk", "RSK^-1_{a,b} . RSK_{a,c} preserves down-diagonal band statistics")
def _double_rsk(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    r, s = shape.r, shape.s
    a = rng.randint(1, r)
    b, c = rng.randint(1, s + 1), rng.randint(1, s + 1)
    z = rsk_inverse(rsk(x, a, c), a, b)
    for j in range(1, min(b, c, s) + 1):
        for l in range(1, j + 1):
            for k in _ks(r, j - l + 1):
                expect(H(x, 1, l, r, j, k) == H(z, 1, l, r, j, k), f"a={a} b={b} c={c} l={l} j={j} k={k}", x)


@prop("omega-chain-shifting", "RSK-conjugated P-promotion fixes up-diagonal bands and shifts down-diagonal bands")
def _omega_chain_shifting(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    r, s = shape.r, shape.s
    y = omega(x)
    expect(y == rsk_inverse(rsk(x, r + 1, s)), "omega differs from RSK_{r,s}^-1 . RSK_{r+1,s}", x)
    for u in range(1, r + 1):
        for v in range(u, r + 1):
            for k in _ks(v - u + 1, s):
                expect(H(x, u, 1, v, s, k) == H(y, u, 1, v, s, k), f"up band u={u} v={v} k={k}", x)
    for u in range(2, s + 1):
        for v in range(u, s + 1):
            for k in _ks(r, v - u + 1):
                expect(H(x, 1, u, r, v, k) == H(y, 1, u - 1, r, v - 1, k), f"down band u={u} v={v} k={k}", x)


def _q_only_ops(rng, shape):
    """A random word in maps that only touch files strictly right of the corner."""
    ops = []
    for _ in range(rng.randint(1, 3)):
        pick = rng.randrange(3)
        if pick == 0:
            ops += promotion_ops(shape, "Q")
        elif pick == 1:
            ops += evacuation_ops(shape, "Q")
        else:
            ops += invert_ops(promotion_ops(shape, "Q", rng.randint(1, shape.r), shape.s))
    return ops


def _down_band_stats(x):
    r, s = x.shape.r, x.shape.s
    return {
        (u, v, k): H(x, 1, u, r, v, k) for u in range(1, s + 1) for v in range(u, s + 1) for k in _ks(r, v - u + 1)
    }


@prop("same-p-tableaux", "equal P-tableaux exactly when all down-diagonal band statistics agree")
def _same_p(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    y = rsk(x)
    x2 = rsk_inverse(run_ops(y, _q_only_ops(rng, shape)))
    expect(p_tableau(rsk(x2)) == p_tableau(y), "Q-only word changed the P-tableau", x)
    expect(_down_band_stats(x) == _down_band_stats(x2), "equal P-tableaux but different statistics", x)
    cell = rng.choice(sorted(p_tableau(y)))
    bump = {cell: y[cell] + 1 if realm is PL else y[cell] * 2}
    x3 = rsk_inverse(y.replace(bump))
    expect(p_tableau(rsk(x3)) != p_tableau(y), "perturbation did not change the P-tableau", x)
    expect(_down_band_stats(x) != _down_band_stats(x3), "different P-tableaux but identical statistics", x)


@prop("omega-reconstruction", "RSK of the shifted labeling is read off from differences of statistics")
def _omega_reconstruction(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    r, s = shape.r, shape.s
    z = rsk(omega(x))
    inv = x.realm.invert
    for j in range(1, s):
        for k in range(min(r, j)):
            want = inv(H(x, 1, 2, r, j + 1, k + 1), H(x, 1, 2, r, j + 1, k))
            expect(z[r - k, j - k] == want, f"entry {(r - k, j - k)}", x)
    for i in range(1, r + 1):
        for k in range(min(i, s)):
            want = inv(H(x, 1, 1, i, s, k + 1), H(x, 1, 1, i, s, k))
            expect(z[i - k, s - k] == want, f"entry {(i - k, s - k)}", x)


# ----------------------------------------------------------------- evacuation


@prop("evac-involution", "full and truncated evacuations are involutions")
def _evac_involution(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    for side in "PQ":
        expect(evacuation(evacuation(x, side), side) == x, f"evac{side} is not an involution", x)
        i, j = _random_cell(rng, shape)
        expect(evacuation(evacuation(x, side, i, j), side, i, j) == x, f"evac{side}[{i},{j}] is not an involution", x)


@prop("evac-rotation", "conjugating both evacuations by RSK rotates the labeling a half turn")
def _evac_rotation(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    expect(rsk_inverse(evacuation(evacuation(rsk(x), "Q"), "P")) == x.rotate(), "not the half-turn", x)


@prop("evac-chain-shifting", "RSK-conjugated P-evacuation reflects down-diagonal bands and fixes up-diagonal ones")
def _evac_chain_shifting(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    r, s = shape.r, shape.s
    y = rsk_inverse(evacuation(rsk(x), "P"))
    for u in range(1, s + 1):
        for k in _ks(r, u):
            expect(H(x, 1, s - u + 1, r, s, k) == H(y, 1, 1, r, u, k), f"suffix band u={u} k={k}", x)
    for u in range(1, r + 1):
        for v in range(u, r + 1):
            for k in _ks(v - u + 1, s):
                expect(H(x, u, 1, v, s, k) == H(y, u, 1, v, s, k), f"up band u={u} v={v} k={k}", x)
    for u in range(1, s + 1):
        for v in range(u, s + 1):
            for k in _ks(r, v - u + 1):
                expect(
                    H(x, 1, u, r, v, k) == H(y, 1, s + 1 - v, r, s + 1 - u, k), f"down band u={u} v={v} k={k}", x
                )


# -------------------------------------------------------------- SW promotion


def _file_cells(shape, k):
    return [p for p in shape if file_index(p) == k]


@prop("swpro-factorization", "file-by-file promotion factors through P- and Q-promotion")
def _swpro_factorization(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    mid = toggle_ops(_file_cells(shape, shape.r - shape.s))
    ops = promotion_ops(shape, "P") + mid + invert_ops(promotion_ops(shape, "Q"))
    expect(sw_promotion(x) == run_ops(x, ops), "factorization failed", x)


@prop("conjugator-identity", "the conjugator equals Q-evacuation after RSK after the transfer map")
def _conjugator_identity(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    lhs = run_ops(x, conjugator_ops(shape))
    expect(lhs == evacuation(rsk(transfer(x)), "Q"), "conjugator identity failed", x)


@prop("swpro-conjugacy", "file-by-file promotion is conjugate to inverse rowmotion")
def _swpro_conjugacy(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    E = conjugator_ops(shape)
    rhs = run_ops(x, invert_ops(E) + rowmotion_ops(shape, None, inverse=True) + E)
    expect(sw_promotion(x) == rhs, "conjugacy failed", x)


@prop("swpro-chain-shifting", "RSK-conjugated file-by-file promotion shifts both kinds of bands")
def _swpro_chain_shifting(rng, realm, shape):
    x = random_labeling(shape, realm, rng)
    r, s = shape.r, shape.s
    y = rsk_inverse(sw_promotion(rsk(x)))
    for u in range(2, s + 1):
        for v in range(u, s + 1):
            for k in _ks(r, v - u + 1):
                expect(H(x, 1, u, r, v, k) == H(y, 1, u - 1, r, v - 1, k), f"down band u={u} v={v} k={k}", x)
    for u in range(1, r):
        for v in range(u, r):
            for k in _ks(v - u + 1, s):
                expect(H(x, u, 1, v, s, k) == H(y, u + 1, 1, v + 1, s, k), f"up band u={u} v={v} k={k}", x)


@prop("plactic", "stacking respects equality of P-tableaux")
def _plactic(rng, realm, shape):
    s = shape.s
    i, j = rng.randint(1, 3), rng.randint(1, 3)
    pieces = []
    for rows in (i, j):
        sh = RectShape(rows, s)
        x = random_labeling(sh, realm, rng)
        twin = rsk_inverse(run_ops(rsk(x), _q_only_ops(rng, sh)))
        pieces.append((x, twin))
    (x1, t1), (x2, t2) = pieces
    expect(p_tableau(rsk(x1)) == p_tableau(rsk(t1)), "twin construction changed P", x1)
    expect(p_tableau(rsk(stack(x1, x2))) == p_tableau(rsk(stack(t1, t2))), "stacking broke P-equality", stack(x1, x2))


# ---------------------------------------------------------- moon polyominoes


def _legal_commuting_setup(rng, M):
    """Pick rectangles and maps so that both composition orders are defined."""
    options = []
    for R1 in M.maximal_rectangles:
        for R2 in M.maximal_rectangles:
            if R1 == R2:
                continue
            for a1 in AXES:
                for a2 in AXES:
                    s1, s2 = ShiftStep(R1, a1), ShiftStep(R2, a2)
                    try:
                        R1b, R2b = rect_image(M, s2, R1), rect_image(M, s1, R2)
                        if is_legal(apply_shift(M, s2), ShiftStep(R1b, a1)) and is_legal(
                            apply_shift(M, s1), ShiftStep(R2b, a2)
                        ):
                            options.append((s1, s2, ShiftStep(R1b, a1), ShiftStep(R2b, a2)))
                    except IllegalShift:
                        pass
    return rng.choice(options) if options else None


def commute_once(x: Filling, s1: ShiftStep, s2: ShiftStep) -> tuple[Filling, Filling]:
    """Both orders of applying two steps on distinct rectangles."""
    M = x.polyomino
    t1 = ShiftStep(rect_image(M, s2, s1.rect), s1.axis, s1.inverse)
    t2 = ShiftStep(rect_image(M, s1, s2.rect), s2.axis, s2.inverse)
    return shift_filling(shift_filling(x, s2), t1), shift_filling(shift_filling(x, s1), t2)


@prop("commutation", "shift maps on distinct maximal rectangles commute", uses_shape=False)
def _commutation(rng, realm, shape):
    for _ in range(50):
        M = random_moon(rng, 12, 6)
        setup = _legal_commuting_setup(rng, M)
        if setup:
            break
    else:
        return
    s1, s2, _, _ = setup
    x = random_filling(M, rng, realm)
    a, b = commute_once(x, s1, s2)
    expect(a == b, f"{s1} and {s2} do not commute", x)


def _random_legal_step(rng, M, axes=AXES):
    steps = [ShiftStep(R, a) for R in M.maximal_rectangles for a in axes]
    rng.shuffle(steps)
    for st in steps:
        if is_legal(M, st) and apply_shift(M, st) != M:
            return st
    return None


@prop("maptheorem-a", "a shift carries each rectangle's statistics to its image rectangle", uses_shape=False)
def _shift_keeps_rectangle_stats(rng, realm, shape):
    for _ in range(50):
        M = random_moon(rng, 12, 6)
        st = _random_legal_step(rng, M, ("down", "up"))
        if st:
            break
    else:
        return
    x = random_filling(M, rng, realm)
    y = shift_filling(x, st)
    for S in M.maximal_rectangles:
        S2 = rect_image(M, st, S)
        for d in _ks(S.shape.r, S.shape.s):
            expect(rect_chain_max(x, S, d) == rect_chain_max(y, S2, d), f"{st}: {S} -> {S2} at order {d}", x)


@prop("shift-reverse", "a shift followed by its reverse restores the filling", uses_shape=False)
def _shift_reverse(rng, realm, shape):
    M = random_moon(rng, 12, 6)
    st = _random_legal_step(rng, M)
    if st is None:
        return
    x = random_filling(M, rng, realm)
    expect(shift_filling(shift_filling(x, st), st.reverse()) == x, f"{st} is not undone by its reverse", x)


@prop("se-chain", "southeast chain length: direct search equals Dilworth stabilization, and shifts keep it", realms=(PL,), uses_shape=False)
def _se_chain(rng, realm, shape):
    M = random_moon(rng, 10, 6)
    x = random_filling(M, rng, PL, 0, 2)
    expect(se_chain_max(x) == se_chain_max_by_stabilization(x), "two computations disagree", x)
    st = _random_legal_step(rng, M, ("down", "up"))
    if st is not None:
        expect(se_chain_max(shift_filling(x, st)) == se_chain_max(x), f"{st} changed it", x)


def random_route(rng, M: MoonPolyomino):
    """Straighten ``M`` with randomly chosen legal unit shifts."""
    steps = []
    while not M.is_straight():
        st = _random_legal_step(rng, M, ("down", "up"))
        if st is None:
            raise IllegalShift(f"no legal shift from {M}")
        steps.append(st)
        M = apply_shift(M, st)
    return steps, M


@prop("straighten", "every moon polyomino straightens to the partition of its row lengths", uses_shape=False)
def _straighten(rng, realm, shape):
    M = random_moon(rng, 14, 8)
    _, lam = straighten(M)
    expect(lam.is_straight() and lam.row_lengths() == M.row_lengths(), f"{M} straightened to {lam}")
    _, lam2 = random_route(rng, M)
    expect(lam2.row_lengths() == lam.row_lengths(), "random route reached a different shape")


@prop("route-independence", "different shift routes between equivalent polyominoes give the same map", uses_shape=False)
def _route_independence(rng, realm, shape):
    M = random_moon(rng, 9, 6)
    N = M
    for _ in range(rng.randint(1, 5)):
        steps = [ShiftStep(R, a, True) for R in N.maximal_rectangles for a in ("down", "up")]
        rng.shuffle(steps)
        for st in steps:
            if is_legal(N, st) and apply_shift(N, st) != N:
                N = apply_shift(N, st)
                break
    x = random_filling(M, rng, realm)
    outs = []
    for _ in range(2):
        fwd, lam_m = random_route(rng, M)
        back, lam_n = random_route(rng, N)
        (a, b), (c, d) = lam_m.corner, lam_n.corner
        outs.append(run_route(x, fwd, (c - a, d - b), [st.reverse() for st in reversed(back)]))
    expect(outs[0] == outs[1], "two routes disagree", x)


def _witness_json(w):
    from .jsonio import filling_to_json, labeling_to_json

    if isinstance(w, Labeling):
        return labeling_to_json(w)
    if isinstance(w, Filling):
        return filling_to_json(w)
    return None


# -------------------------------------------------------------------- runner


@dataclass
class Failure:
    realm: str
    trial: int
    seed: str
    message: str
    witness: dict | None
    size: int


@dataclass
class Report:
    name: str
    trials: int
    seed: int
    runs: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def minimal_failure(self) -> Failure | None:
        return min(self.failures, key=lambda f: (f.size, f.realm, f.trial), default=None)


def trial_seed(seed: int, name: str, realm: Realm, trial: int) -> str:
    return f"{seed}:{name}:{realm.name}:{trial}"


def _shape_for(rng, p: Property, shape: RectShape | None, max_side: int) -> RectShape:
    if shape is not None:
        return shape
    while True:
        r = rng.randint(p.min_shape[0], max_side)
        s = rng.randint(p.min_shape[1], max_side)
        if p.max_sum is None or r + s <= p.max_sum:
            return RectShape(r, s)


def run_property(
    name: str,
    trials: int = 200,
    seed: int = 0,
    shape: RectShape | None = None,
    realms=None,
    max_side: int = 4,
) -> Report:
    """Run ``trials`` seeded trials of property ``name`` in each applicable realm."""
    if name not in REGISTRY:
        raise KeyError(f"unknown property {name!r}; known: {', '.join(sorted(REGISTRY))}")
    p = REGISTRY[name]
    if shape is not None and (shape.r < p.min_shape[0] or shape.s < p.min_shape[1]):
        raise ValueError(f"{name} needs a shape of at least {p.min_shape[0]}x{p.min_shape[1]}")
    use = [rl for rl in (realms or REALMS) if rl in p.realms]
    report = Report(name, trials, seed)
    for realm in use:
        for t in range(trials):
            ts = trial_seed(seed, name, realm, t)
            rng = random.Random(ts)
            sh = _shape_for(rng, p, shape, max_side)
            report.runs += 1
            try:
                p.check(rng, realm, sh)
            except PropertyFailure as exc:
                w = _witness_json(exc.witness)
                size = len(exc.witness.polyomino) if isinstance(exc.witness, Filling) else len(sh)
                report.failures.append(Failure(realm.name, t, ts, str(exc), w, size))
    return report


__all__ = [
    "PropertyFailure",
    "Property",
    "REGISTRY",
    "Report",
    "Failure",
    "run_property",
    "trial_seed",
    "commute_once",
    "random_route",
]

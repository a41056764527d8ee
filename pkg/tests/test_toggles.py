import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import labelings
from togglekit.poset import RectShape, Region, lower_covers, upper_covers
from togglekit.realm import BIRATIONAL, PL, Labeling, mpq
from togglekit.toggles import (
    TRANSFER,
    Op,
    invert_ops,
    orbit_length,
    rowmotion,
    rowmotion_ops,
    run_ops,
    toggle,
    toggle_ops,
    transfer,
)


def reference_toggle(x, p):
    """Toggle written straight from the cover relations, as an oracle."""
    sh = x.shape
    ups = [x[q] for q in upper_covers(sh, p)]
    downs = [x[q] for q in lower_covers(sh, p)]
    if x.realm is PL:
        new = (min(ups) if ups else 1) + (max(downs) if downs else 0) - x[p]
    else:
        par = 1 / sum(1 / u for u in ups) if ups else mpq(1)
        new = par * (sum(downs) if downs else mpq(1)) / x[p]
    return x.replace({p: new})


def reference_transfer(x):
    out = {}
    for p, v in x.items():
        downs = [x[q] for q in lower_covers(x.shape, p)]
        if x.realm is PL:
            out[p] = v - (max(downs) if downs else 0)
        else:
            out[p] = v / (sum(downs) if downs else 1)
    return Labeling.from_mapping(x.shape, x.realm, out)


def cell_of(data, x):
    return (data.draw(st.integers(1, x.shape.r)), data.draw(st.integers(1, x.shape.s)))


@given(labelings(max_side=4), st.data())
def test_toggle_matches_reference(x, data):
    p = cell_of(data, x)
    assert toggle(x, p) == reference_toggle(x, p)


@given(labelings(max_side=4), st.data())
def test_toggle_is_involution(x, data):
    p = cell_of(data, x)
    assert toggle(toggle(x, p), p) == x


@given(labelings(max_side=4))
def test_transfer_matches_reference_and_inverts(x):
    y = transfer(x)
    assert y == reference_transfer(x)
    assert transfer(y, inverse=True) == x


def test_toggle_known_values():
    x = Labeling.from_rows([[1, 2], [3, 5]])
    # (1,2): upper cover (2,2)=5, lower cover (1,1)=1 -> 5 + 1 - 2
    assert toggle(x, (1, 2))[1, 2] == 4
    # minimum: min(2, 3) + 0 - 1
    assert toggle(x, (1, 1))[1, 1] == 1
    # maximum: 1 + max(2, 3) - 5
    assert toggle(x, (2, 2))[2, 2] == -1
    b = Labeling.from_rows([[1, 2], [3, 5]], BIRATIONAL)
    # top: empty parallel sum is 1, lower sum 5 -> 5 / 5
    assert toggle(b, (2, 2))[2, 2] == 1
    # bottom: parallel sum of 2 and 3 is 6/5, empty lower sum 1 -> (6/5) / 1
    assert toggle(b, (1, 1))[1, 1] == mpq(6, 5)


def test_toggle_rejects_outside_cell():
    with pytest.raises(ValueError):
        toggle(Labeling.from_rows([[1]]), (2, 1))
    with pytest.raises(ValueError):
        run_ops(Labeling.from_rows([[1]]), [Op("toggle", (1, 2))])
    with pytest.raises(ValueError):
        run_ops(Labeling.from_rows([[1]]), [Op("bogus", None)])


@given(labelings(max_side=4), st.data())
def test_toggles_commute_when_not_covering(x, data):
    p, q = cell_of(data, x), cell_of(data, x)
    if q in upper_covers(x.shape, p) or p in upper_covers(x.shape, q):
        return
    assert toggle(toggle(x, p), q) == toggle(toggle(x, q), p)


@given(labelings(max_side=3))
def test_rowmotion_inverse(x):
    assert rowmotion(rowmotion(x), inverse=True) == x
    ops = rowmotion_ops(x.shape)
    assert invert_ops(ops) == rowmotion_ops(x.shape, inverse=True)


@given(labelings(max_side=3))
def test_rowmotion_period_is_r_plus_s(x):
    n = x.shape.r + x.shape.s
    y = x
    for _ in range(n):
        y = rowmotion(y)
    assert y == x


def test_orbit_length_divides_period():
    x = Labeling.from_rows([[0, 1, 2], [1, 1, 3]])
    n = orbit_length(x, rowmotion_ops(x.shape))
    assert 5 % n == 0


def test_rowmotion_on_region_only_touches_region():
    x = Labeling.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    y = rowmotion(x, Region.principal(2, 2))
    for p in [(1, 3), (2, 3), (3, 1), (3, 2), (3, 3)]:
        assert y[p] == x[p]
    assert y != x


def test_invert_ops_reverses_transfer():
    assert invert_ops([TRANSFER])[0].kind == "transfer_inverse"
    assert invert_ops(toggle_ops([(1, 1), (1, 2)])) == toggle_ops([(1, 2), (1, 1)])


def test_run_ops_transpose_changes_shape():
    x = Labeling.from_rows([[1, 2, 3]])
    y = run_ops(x, [Op("transpose", None)])
    assert y.shape == RectShape(3, 1)

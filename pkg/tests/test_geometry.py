import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from switchless_music.geometry import AntennaArray, roi_grid, split_array, uniform_circle_array


def test_first_antenna_at_bottom_and_clockwise():
    arr = uniform_circle_array(16, 0.09)
    np.testing.assert_allclose(arr.positions[0], [0.0, -0.09], atol=1e-15)
    # antenna 5 is a quarter turn clockwise from the bottom, i.e. on the left
    np.testing.assert_allclose(arr.positions[4], [-0.09, 0.0], atol=1e-15)


def test_example1_split_sizes(array16):
    sp = split_array(array16, (12, 13, 14), (4, 5, 6))
    assert (sp.M, sp.N) == (3, 3)
    np.testing.assert_array_equal(sp.tx_positions, array16.positions[[11, 12, 13]])


def test_interleaved_split(star_split):
    assert star_split.M == star_split.N == 8
    np.testing.assert_allclose(np.linalg.norm(star_split.rx_positions, axis=1), 0.09)


def test_split_rejects_shared_antenna(array16):
    with pytest.raises(ValueError, match="both transmitter and receiver"):
        split_array(array16, (1, 2), (2, 3))


@pytest.mark.parametrize("tx, rx, exc", [((0,), (1,), IndexError), ((17,), (1,), IndexError),
                                         ((1, 1), (2,), ValueError), ((), (2,), ValueError)])
def test_split_rejects_bad_indices(array16, tx, rx, exc):
    with pytest.raises(exc):
        split_array(array16, tx, rx)


def test_array_rejects_repeated_angles():
    with pytest.raises(ValueError):
        AntennaArray(1.0, (0.0, 2 * math.pi))
    with pytest.raises(ValueError):
        AntennaArray(-1.0, (0.0,))


def test_reference_grid_size():
    g = roi_grid(0.08, 0.001)
    n = 80
    i, j = np.meshgrid(np.arange(-n, n + 1), np.arange(-n, n + 1))
    assert len(g) == int(np.count_nonzero(i**2 + j**2 <= n**2))
    assert g.mask.shape == (161, 161)
    assert g.points[g.nearest((0.01, 0.03))].tolist() == pytest.approx([0.01, 0.03])


def test_grid_ordering_y_outer():
    g = roi_grid(1.0, 0.5)
    ys = g.points[:, 1]
    assert np.all(np.diff(ys) >= 0)
    first_row = g.points[ys == ys[0]]
    assert np.all(np.diff(first_row[:, 0]) > 0)


def test_grid_step_equal_to_radius():
    g = roi_grid(1.0, 1.0)
    assert len(g) == 5


def test_grid_rejects_step_above_radius():
    with pytest.raises(ValueError):
        roi_grid(0.01, 0.02)


@given(st.integers(2, 40), st.floats(0.01, 2.0))
def test_uniform_array_on_circle(count, radius):
    arr = uniform_circle_array(count, radius)
    np.testing.assert_allclose(np.hypot(*arr.positions.T), radius, rtol=1e-12)
    np.testing.assert_allclose(arr.positions.sum(axis=0), 0, atol=1e-12 * radius * count)


@given(st.integers(4, 24).flatmap(lambda s: st.tuples(st.just(s), st.permutations(range(1, s + 1)), st.integers(1, s - 1))))
def test_any_partition_is_valid(args):
    s, perm, cut = args
    sp = split_array(uniform_circle_array(s, 1.0), perm[:cut], perm[cut:])
    assert sp.M + sp.N == s
    assert not set(sp.tx_indices) & set(sp.rx_indices)


@given(st.floats(0.05, 1.0), st.integers(2, 30))
def test_grid_points_inside_disk(radius, per_radius):
    step = radius / per_radius
    g = roi_grid(radius, step)
    assert np.all(np.hypot(*g.points.T) <= radius * (1 + 1e-12))
    assert g.same_as(roi_grid(radius, step))

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from switchless_music.forward import born_scattering_matrix
from switchless_music.geometry import roi_grid, split_array
from switchless_music.imaging import (
    ImagingMap,
    SubspaceError,
    imaging_maps,
    noise_projection_norm,
    noise_projector,
    normalize_map,
    subspace_split,
    test_vectors,
)


def test_rank_two_for_two_anomalies(medium, anomaly, second_anomaly, star_split):
    K = born_scattering_matrix(star_split, medium, [anomaly, second_anomaly])
    assert subspace_split(K, 0.1).rank == 2


def test_zero_matrix_raises():
    with pytest.raises(SubspaceError):
        subspace_split(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        subspace_split(np.eye(3), threshold=1.5)


def test_norm_needs_unit_vectors():
    sub = subspace_split(np.eye(3) + 0j)
    with pytest.raises(ValueError, match="unit norm"):
        noise_projection_norm(sub, np.ones(3))
    with pytest.raises(ValueError, match="length"):
        noise_projection_norm(sub, np.ones(2) / np.sqrt(2))
    with pytest.raises(ValueError):
        noise_projection_norm(sub, np.ones(3) / np.sqrt(3), side="middle")


def test_test_vectors_unit_and_shapes(star_split, k):
    f, g = test_vectors((0.01, 0.02), star_split, k)
    assert f.shape == (8,) and g.shape == (8,)
    F, G = test_vectors(np.zeros((5, 2)), star_split, k, "far-field")
    assert F.shape == (8, 5)
    np.testing.assert_allclose(np.linalg.norm(G, axis=0), 1)


def test_true_location_is_in_signal_space(medium, anomaly, star_split, k):
    K = born_scattering_matrix(star_split, medium, [anomaly])
    sub = subspace_split(K)
    f, g = test_vectors(anomaly.center, star_split, k)
    assert noise_projection_norm(sub, f, "left") < 1e-12
    assert noise_projection_norm(sub, g, "right") < 1e-12


def test_maps_peak_at_anomaly(medium, anomaly, star_split):
    K = born_scattering_matrix(star_split, medium, [anomaly])
    grid = roi_grid(0.08, 0.002)
    f_tx, f_rx, f = imaging_maps(K, grid, workers=1)
    for m in (f_tx, f_rx, f):
        np.testing.assert_allclose(m.argmax_point, anomaly.center, atol=1e-12)
    np.testing.assert_allclose(f.values, np.minimum(0.5 * (f_tx.values + f_rx.values), 1e8))
    n = normalize_map(f)
    assert n.kind == "N" and n.values.max() == 1.0


def test_clamp_caps_singular_peak(medium, anomaly, star_split):
    K = born_scattering_matrix(star_split, medium, [anomaly])
    grid = roi_grid(0.08, 0.002)
    _, _, f = imaging_maps(K, grid, clamp=1e3, workers=1)
    assert f.values.max() == 1e3


def test_map_validation():
    g = roi_grid(1.0, 0.5)
    with pytest.raises(ValueError):
        ImagingMap(g, np.ones(3), "F")
    with pytest.raises(ValueError):
        ImagingMap(g, np.ones(len(g)), "G")
    with pytest.raises(ValueError):
        normalize_map(ImagingMap(g, np.zeros(len(g)), "F"))


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 9), st.integers(2, 9), st.integers(0, 2**32 - 1), st.floats(0.01, 0.95))
def test_projector_properties(n, m, seed, thr):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(n, m)) + 1j * rng.normal(size=(n, m))
    sub = subspace_split(A, thr)
    assert 1 <= sub.rank <= min(n, m)
    for side, dim in (("left", n), ("right", m)):
        P = noise_projector(sub, side)
        np.testing.assert_allclose(P @ P, P, atol=1e-12)
        np.testing.assert_allclose(P.conj().T, P, atol=1e-12)
        assert np.trace(P).real == pytest.approx(dim - sub.rank)
        v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        v /= np.linalg.norm(v)
        nrm = noise_projection_norm(sub, v, side)
        assert 0 <= nrm <= 1 + 1e-12
        assert nrm == pytest.approx(np.linalg.norm(P @ v), abs=1e-12)


@settings(max_examples=10, deadline=None)
@given(st.permutations(range(1, 17)), st.integers(3, 13), st.floats(0, 2 * np.pi))
def test_map_invariant_to_global_phase(medium, anomaly, array16, perm, cut, phase):
    sp = split_array(array16, perm[:cut], perm[cut:])
    K = born_scattering_matrix(sp, medium, [anomaly])
    Kp = type(K)(K.entries * np.exp(1j * phase), sp, medium, K.provenance)
    grid = roi_grid(0.08, 0.008)
    for a, b in zip(imaging_maps(K, grid, workers=1), imaging_maps(Kp, grid, workers=1)):
        np.testing.assert_allclose(a.values, b.values, rtol=1e-10)

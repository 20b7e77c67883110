import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import hankel2

from switchless_music.forward import (
    EPS0,
    MU0,
    AnomalyOverlapError,
    AnomalySpec,
    CoincidenceError,
    MediumSpec,
    ScatteringMatrix,
    born_scattering_matrix,
    contrast,
    far_field_incident,
    incident_field,
    small_anomaly_check,
    wavelength,
    wavenumber,
)
from switchless_music.geometry import split_array


def test_reference_wavenumber(medium):
    k = wavenumber(medium)
    w = 2 * math.pi * 1e9
    ref = cmath.sqrt(w**2 * MU0 * (20 * EPS0) - 1j * w * MU0 * 0.2)
    assert k == pytest.approx(ref, rel=1e-14)
    assert k.real == pytest.approx(94.103, abs=5e-3)
    assert k.imag == pytest.approx(-8.390, abs=5e-3)
    assert wavelength(medium) == pytest.approx(0.066769, rel=1e-4)


def test_vacuum_normalisation():
    freq = 1 / (2 * math.pi * math.sqrt(MU0 * EPS0))
    assert wavenumber(MediumSpec(EPS0, 0.0, freq)) == pytest.approx(1.0 + 0j, abs=1e-14)


def test_lossless_wavenumber_is_real(lossless_medium):
    k = wavenumber(lossless_medium)
    assert k.imag == 0
    assert k.real == pytest.approx(2 * math.pi * 1e9 * math.sqrt(MU0 * 20 * EPS0), rel=1e-14)


def test_contrast(medium, anomaly):
    O = contrast(medium, anomaly)
    assert O.real == pytest.approx(55 / 20 - 1)
    assert O.imag == pytest.approx(1.0 / (2 * math.pi * 1e9 * 20 * EPS0))


def test_small_anomaly_values(medium, anomaly):
    chk = small_anomaly_check(medium, anomaly)
    assert chk.size_term == pytest.approx(4 * 0.01 * (math.sqrt(55 / 20) - 1), rel=1e-14)
    assert chk.passed and chk.ratio < 1 and chk.margin > 1


def test_large_anomaly_warns(medium, star_split):
    big = AnomalySpec.relative((0.0, 0.0), 0.05, 80.0, 0.0)
    assert not small_anomaly_check(medium, big).passed
    with pytest.warns(UserWarning, match="small-anomaly"):
        born_scattering_matrix(star_split, medium, [big])


def test_born_matrix_against_scipy(medium, anomaly, star_split):
    K = born_scattering_matrix(star_split, medium, [anomaly]).entries
    k = wavenumber(medium)
    c = np.array(anomaly.center)
    e_rx = 0.25j * hankel2(0, k * np.linalg.norm(star_split.rx_positions - c, axis=1))
    e_tx = 0.25j * hankel2(0, k * np.linalg.norm(star_split.tx_positions - c, axis=1))
    coef = 1j * k**2 * anomaly.radius**2 * np.pi * contrast(medium, anomaly) / (4 * medium.omega * medium.mu_b)
    np.testing.assert_allclose(K, coef * np.outer(e_rx, e_tx), rtol=1e-9)


def test_two_anomaly_matrix_is_additive(medium, anomaly, second_anomaly, star_split):
    both = born_scattering_matrix(star_split, medium, [anomaly, second_anomaly]).entries
    one = born_scattering_matrix(star_split, medium, [anomaly]).entries
    two = born_scattering_matrix(star_split, medium, [second_anomaly]).entries
    np.testing.assert_allclose(both, one + two, rtol=1e-14, atol=0)
    s = np.linalg.svd(both, compute_uv=False)
    assert s[1] / s[0] > 0.1


def test_overlapping_anomalies_rejected(medium, star_split):
    a = AnomalySpec.relative((0.0, 0.0), 0.01, 30, 0.1)
    b = AnomalySpec.relative((0.015, 0.0), 0.01, 30, 0.1)
    with pytest.raises(AnomalyOverlapError):
        born_scattering_matrix(star_split, medium, [a, b])


def test_far_field_close_to_exact_at_antenna_range(k, array16):
    # |r| << R is not met here, so only a loose agreement is expected
    pts = np.array([[0.0, 0.0], [0.005, -0.003]])
    ang = array16.angles[0]
    exact = incident_field(array16.positions[0], pts, k)
    far = far_field_incident(ang, pts, k, 0.09)
    np.testing.assert_allclose(far, exact, rtol=0.05)


def test_incident_field_coincidence(k, array16):
    with pytest.raises(CoincidenceError):
        incident_field(array16.positions[0], array16.positions[:2], k)


def test_matrix_validation(medium, star_split):
    with pytest.raises(ValueError, match="shape"):
        ScatteringMatrix(np.zeros((3, 3)), star_split, medium)
    bad = np.zeros((8, 8), complex)
    bad[0, 0] = np.nan
    with pytest.raises(ValueError, match="non-finite"):
        ScatteringMatrix(bad, star_split, medium)
    with pytest.raises(ValueError):
        MediumSpec(-1.0, 0.0, 1e9)


@settings(max_examples=40, deadline=None)
@given(st.floats(-0.06, 0.06), st.floats(-0.06, 0.06), st.floats(0.001, 0.01), st.floats(21, 80), st.floats(0, 3))
def test_single_anomaly_rank_one(medium, array16, x, y, radius, eps_r, sigma):
    sp = split_array(array16, (1, 4, 9, 12), (2, 3, 6, 10, 15))
    an = AnomalySpec.relative((x, y), radius, eps_r, sigma)
    s = np.linalg.svd(born_scattering_matrix(sp, medium, [an]).entries, compute_uv=False)
    assert s[1] <= 1e-12 * s[0]


@settings(max_examples=40, deadline=None)
@given(st.floats(1, 80), st.floats(0, 5), st.floats(1e8, 5e9))
def test_wavenumber_branch(eps_r, sigma, freq):
    k = wavenumber(MediumSpec.relative(eps_r, sigma, freq))
    assert k.real > 0 and k.imag <= 0
    w = 2 * math.pi * freq
    assert k * k == pytest.approx(w**2 * MU0 * eps_r * EPS0 - 1j * w * MU0 * sigma, rel=1e-12)

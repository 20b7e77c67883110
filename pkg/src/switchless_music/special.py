"""Integer-order Bessel functions and H_0^(2) for complex arguments.

Two regimes are used for each function:

* ``bessel_j_orders``: ascending power series for ``|z| <= 8``, Miller's
  backward recurrence normalised by ``J_0 + 2 sum J_2k = 1`` above that.
* ``hankel0_2``: ascending series for J_0 and Y_0 below ``|z| = 12``,
  Hankel's asymptotic expansion above.

Arguments are limited to ``|z| <= 50``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MAX_ABS_ARGUMENT = 50.0
SERIES_LIMIT_J = 8.0
HANKEL_CROSSOVER = 12.0
EULER_GAMMA = 0.57721566490153286061

_SERIES_TERMS_J = 40
_SERIES_TERMS_Y = 60
_RESCALE_AT = 1e200


class ConvergenceError(RuntimeError):
    """A Bessel series could not be truncated within the requested bounds."""


@dataclass(frozen=True)
class TruncationPolicy:
    absolute_tolerance: float = 1e-12
    max_order: int = 100

    def __post_init__(self):
        if not self.absolute_tolerance > 0:
            raise ValueError("absolute_tolerance must be positive")
        if self.max_order < 1:
            raise ValueError("max_order must be at least 1")


def _as_complex(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise OverflowError("Bessel argument is not finite")
    if z.size and np.max(np.abs(z)) > MAX_ABS_ARGUMENT:
        raise OverflowError(
            f"|z| = {np.max(np.abs(z)):.4g} exceeds the supported range {MAX_ABS_ARGUMENT}"
        )
    return z


def _series_j(max_order: int, z: np.ndarray) -> np.ndarray:
    # J_p(z) = (z/2)^p / p! * sum_k (-z^2/4)^k / (k! (p+1)_k)
    half = z / 2
    q = -(half * half)
    tiny = half == 0  # z/2 underflowed; J_p = 0 for p >= 1
    log_half = np.log(np.where(tiny, 1.0, half))
    out = np.empty((max_order + 1, z.size), dtype=complex)
    for p in range(max_order + 1):
        term = np.ones_like(z)
        total = np.ones_like(z)
        for k in range(1, _SERIES_TERMS_J):
            term = term * q / (k * (k + p))
            total = total + term
        if p == 0:
            out[p] = total
        else:
            out[p] = np.where(tiny, 0.0, np.exp(p * log_half - math.lgamma(p + 1)) * total)
    return out


def _miller_j(max_order: int, z: np.ndarray) -> np.ndarray:
    top = max(float(max_order), float(np.max(np.abs(z))))
    start = int(top + 20 + math.sqrt(40 * top))
    start += start % 2
    out = np.zeros((max_order + 1, z.size), dtype=complex)
    upper = np.zeros(z.size, dtype=complex)
    cur = np.full(z.size, 1e-30, dtype=complex)
    norm = 2 * cur
    for m in range(start, 0, -1):
        upper, cur = cur, (2 * m / z) * cur - upper
        n = m - 1
        if n <= max_order:
            out[n] = cur
        if n > 0 and n % 2 == 0:
            norm = norm + 2 * cur
        big = np.abs(cur) > _RESCALE_AT
        if big.any():
            s = 1.0 / _RESCALE_AT
            cur[big] *= s
            upper[big] *= s
            norm[big] *= s
            if n <= max_order:
                out[n:, big] *= s
    norm = norm + cur
    return out / norm


def bessel_j_orders(max_order: int, z) -> np.ndarray:
    """J_0(z) .. J_max_order(z), stacked along a new leading axis."""
    if max_order < 0:
        raise ValueError("max_order must be non-negative")
    z = _as_complex(z)
    flat = z.ravel()
    out = np.zeros((max_order + 1, flat.size), dtype=complex)
    a = np.abs(flat)
    small = (a <= SERIES_LIMIT_J) & (a > 0)
    large = a > SERIES_LIMIT_J
    out[0, a == 0] = 1.0
    if small.any():
        out[:, small] = _series_j(max_order, flat[small])
    if large.any():
        out[:, large] = _miller_j(max_order, flat[large])
    return out.reshape((max_order + 1,) + z.shape)


def bessel_j(p: int, z):
    """J_p(z) for integer ``p`` (negative orders via J_-p = (-1)^p J_p)."""
    p = int(p)
    vals = bessel_j_orders(abs(p), z)[abs(p)]
    if p < 0 and p % 2:
        vals = -vals
    return vals[()] if vals.ndim == 0 else vals


def bessel_j_signed(max_order: int, z) -> np.ndarray:
    """J_p(z) for p = -max_order .. max_order along the leading axis."""
    pos = bessel_j_orders(max_order, z)
    orders = np.arange(1, max_order + 1)
    sign = np.where(orders % 2, -1.0, 1.0).reshape((-1,) + (1,) * (pos.ndim - 1))
    neg = (sign * pos[1:])[::-1]
    return np.concatenate([neg, pos], axis=0)


def _hankel0_2_series(z: np.ndarray) -> np.ndarray:
    q = (z / 2) ** 2
    term = np.ones_like(z)
    j0 = np.ones_like(z)
    harmonic = 0.0
    ysum = np.zeros_like(z)
    for k in range(1, _SERIES_TERMS_Y):
        term = term * (-q) / (k * k)
        harmonic += 1.0 / k
        j0 = j0 + term
        ysum = ysum - harmonic * term
    y0 = (2 / np.pi) * ((np.log(z / 2) + EULER_GAMMA) * j0 + ysum)
    return j0 - 1j * y0


def _hankel0_2_asymptotic(z: np.ndarray) -> np.ndarray:
    # H_0^(2)(z) ~ sqrt(2/(pi z)) e^{-i(z - pi/4)} sum_k (-i)^k a_k(0) / z^k
    total = np.ones_like(z)
    term = np.ones_like(z)
    prev = np.full(z.shape, np.inf)
    active = np.ones(z.shape, dtype=bool)
    for k in range(1, 200):
        term = term * (-1j) * (-((2 * k - 1) ** 2)) / (k * 8 * z)
        mag = np.abs(term)
        active &= mag < prev
        if not active.any():
            break
        total = total + np.where(active, term, 0)
        active &= mag > 1e-17 * np.abs(total)
        prev = mag
    return np.sqrt(2 / (np.pi * z)) * np.exp(-1j * (z - np.pi / 4)) * total


def hankel0_2(z, path: str = "auto"):
    """H_0^(2)(z) = J_0(z) - i Y_0(z), principal branch.

    ``path`` forces one evaluation regime (``"series"`` or
    ``"asymptotic"``); the default picks by ``|z|``.
    """
    z = _as_complex(z)
    if np.any(z == 0):
        raise ValueError("H_0^(2) is singular at z = 0")
    flat = z.ravel()
    if path == "series":
        out = _hankel0_2_series(flat)
    elif path == "asymptotic":
        out = _hankel0_2_asymptotic(flat)
    elif path == "auto":
        out = np.empty_like(flat)
        small = np.abs(flat) < HANKEL_CROSSOVER
        if small.any():
            out[small] = _hankel0_2_series(flat[small])
        if (~small).any():
            out[~small] = _hankel0_2_asymptotic(flat[~small])
    else:
        raise ValueError(f"unknown evaluation path {path!r}")
    out = out.reshape(z.shape)
    return out[()] if out.ndim == 0 else out


def _converged_order(mags: np.ndarray, x: float, tol: float) -> int | None:
    """Smallest P >= 1 with |J_P| < tol inside the monotone tail (P > x)."""
    for p in range(1, len(mags)):
        if p >= x and mags[p] < tol:
            return p
    return None


def jacobi_anger_sum(x, theta: float, policy: TruncationPolicy = TruncationPolicy()):
    """Partial Jacobi-Anger sum for exp(i x cos(theta)).

    Returns ``(value, P)`` where the sum runs over |p| <= P and P is the
    first order whose Bessel coefficient drops below the policy tolerance.
    """
    x = complex(x)
    if x == 0:
        return 1.0 + 0j, 0
    J = bessel_j_orders(policy.max_order + 1, x)
    P = _converged_order(np.abs(J), abs(x), policy.absolute_tolerance)
    if P is None or P > policy.max_order:
        raise ConvergenceError(
            f"Jacobi-Anger series for |x| = {abs(x):.4g} not converged "
            f"to {policy.absolute_tolerance:g} by order {policy.max_order}"
        )
    p = np.arange(1, P + 1)
    # i^p J_p e^{ip t} + i^-p J_-p e^{-ip t} = 2 i^p J_p cos(p t)
    value = J[0] + np.sum(2 * (1j**p) * J[1 : P + 1] * np.cos(p * theta))
    return complex(value), P


def truncation_order(k, max_distance: float, tol: float = 1e-12, cap: int = 100) -> int:
    """Smallest order P >= 1 past which |J_p(|k| d)| stays below ``tol``.

    Only orders above the argument are accepted, where |J_p| decreases
    monotonically in p.
    """
    if max_distance < 0:
        raise ValueError("max_distance must be non-negative")
    if not tol > 0:
        raise ValueError("tol must be positive")
    x = abs(complex(k)) * max_distance
    if x == 0:
        return 1
    J = np.abs(bessel_j_orders(cap, x))
    P = _converged_order(J, x, tol)
    if P is None:
        raise ConvergenceError(
            f"|J_p({x:.4g})| does not fall below {tol:g} for any order up to {cap}"
        )
    return P

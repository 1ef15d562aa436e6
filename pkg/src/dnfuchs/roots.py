"""Simultaneous polynomial root finding (Aberth-Ehrlich iteration)."""
from __future__ import annotations

import numpy as np


def _horner(c, z):
    """Evaluate p and p' at all points of ``z``; ``c`` is highest degree first."""
    p = np.full_like(z, c[0])
    dp = np.zeros_like(z)
    for a in c[1:]:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def aberth(coeffs, tol: float = 1e-15, max_iter: int = 500) -> np.ndarray:
    """All complex roots of ``sum coeffs[k] x^k`` (lowest degree first)."""
    c = np.asarray([complex(x) for x in coeffs], dtype=complex)
    nz = np.nonzero(c)[0]
    if nz.size == 0:
        raise ValueError("zero polynomial has no finite root set")
    c = c[: nz[-1] + 1]
    low = nz[0]
    zeros = np.zeros(low, dtype=complex)
    c = c[low:]
    deg = len(c) - 1
    if deg == 0:
        return zeros
    hi = c[::-1] / c[-1]
    if deg == 1:
        return np.concatenate([zeros, [-hi[1]]])

    center = -hi[1] / deg
    shifted = np.abs(hi[1:])
    radius = 2.0 * max(shifted[k - 1] ** (1.0 / k) for k in range(1, deg + 1))
    radius = max(radius, 1e-300)
    angles = 2 * np.pi * np.arange(deg) / deg + 0.4
    z = center + 0.5 * radius * np.exp(1j * angles)

    for _ in range(max_iter):
        p, dp = _horner(hi, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            corr = ratio / (1.0 - ratio * inv.sum(axis=1))
        corr = np.where(np.isfinite(corr), corr, 0.0)
        z = z - corr
        if np.all(np.abs(corr) <= tol * (1.0 + np.abs(z))):
            break

    # Newton polish
    for _ in range(2):
        p, dp = _horner(hi, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = p / dp
        z = z - np.where(np.isfinite(step), step, 0.0)
    return np.concatenate([zeros, z])

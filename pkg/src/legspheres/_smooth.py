"""Quintic smoothstep kernels and Hermite transition windows.

All piecewise profiles in the package (surgery handle profiles, cutoffs,
binding profiles, twist angles) are built from the two kernels here so that
every transition is C^2 at its joins.
"""

from __future__ import annotations

import numpy as np


def smoothstep5(s):
    """Quintic smoothstep: 0 at s<=0, 1 at s>=1, zero 1st/2nd derivative at both ends."""
    s = np.clip(s, 0.0, 1.0)
    return s * s * s * (10.0 + s * (-15.0 + 6.0 * s))


def smoothstep5_d1(s):
    """Derivative of :func:`smoothstep5` (zero outside [0, 1])."""
    s_in = np.clip(s, 0.0, 1.0)
    d = 30.0 * s_in * s_in * (1.0 - s_in) ** 2
    return np.where((np.asarray(s) <= 0.0) | (np.asarray(s) >= 1.0), 0.0, d)


def smoothstep5_int(s):
    """Antiderivative of :func:`smoothstep5` with value 0 at s=0.

    For s >= 1 it equals s - 1/2 (the step has unit mass center at 1/2).
    """
    s_arr = np.asarray(s, dtype=float)
    s_in = np.clip(s_arr, 0.0, 1.0)
    inner = s_in**4 * (2.5 + s_in * (-3.0 + s_in))
    return np.where(s_arr >= 1.0, s_arr - 0.5, inner)


def hermite_quintic(x, x0, x1, y0, y1, d0, d1, dd0=0.0, dd1=0.0):
    """Quintic Hermite interpolant on [x0, x1] with endpoint values,
    first and second derivatives prescribed; clamped outside the window
    to the linear extensions through the endpoint data.
    """
    x = np.asarray(x, dtype=float)
    w = x1 - x0
    s = np.clip((x - x0) / w, 0.0, 1.0)
    # Quintic Hermite basis in normalized coordinates.
    h00 = 1.0 - 10.0 * s**3 + 15.0 * s**4 - 6.0 * s**5
    h10 = s - 6.0 * s**3 + 8.0 * s**4 - 3.0 * s**5
    h20 = 0.5 * s**2 - 1.5 * s**3 + 1.5 * s**4 - 0.5 * s**5
    h01 = 10.0 * s**3 - 15.0 * s**4 + 6.0 * s**5
    h11 = -4.0 * s**3 + 7.0 * s**4 - 3.0 * s**5
    h21 = 0.5 * s**3 - s**4 + 0.5 * s**5
    val = (
        y0 * h00
        + d0 * w * h10
        + dd0 * w * w * h20
        + y1 * h01
        + d1 * w * h11
        + dd1 * w * w * h21
    )
    below = x < x0
    above = x > x1
    val = np.where(below, y0 + d0 * (x - x0), val)
    val = np.where(above, y1 + d1 * (x - x1), val)
    return val


def hermite_quintic_d1(x, x0, x1, y0, y1, d0, d1, dd0=0.0, dd1=0.0):
    """Derivative of :func:`hermite_quintic` (matching the clamped extensions)."""
    x = np.asarray(x, dtype=float)
    w = x1 - x0
    s = np.clip((x - x0) / w, 0.0, 1.0)
    g00 = (-30.0 * s**2 + 60.0 * s**3 - 30.0 * s**4) / w
    g10 = (1.0 - 18.0 * s**2 + 32.0 * s**3 - 15.0 * s**4) / w
    g20 = (s - 4.5 * s**2 + 6.0 * s**3 - 2.5 * s**4) / w
    g01 = (30.0 * s**2 - 60.0 * s**3 + 30.0 * s**4) / w
    g11 = (-12.0 * s**2 + 28.0 * s**3 - 15.0 * s**4) / w
    g21 = (1.5 * s**2 - 4.0 * s**3 + 2.5 * s**4) / w
    val = (
        y0 * g00
        + d0 * w * g10
        + dd0 * w * w * g20
        + y1 * g01
        + d1 * w * g11
        + dd1 * w * w * g21
    )
    val = np.where(x < x0, d0, val)
    val = np.where(x > x1, d1, val)
    return val

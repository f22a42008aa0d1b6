"""Quasi-uniform sample grids on spheres and disks.

Grid choice is configuration, not contract: uniform angles on S^1,
a Fibonacci lattice on S^2, tensor latitude grids for S^n with n >= 3.
"""

from __future__ import annotations

import numpy as np

from .errors import ArgumentError

_GOLDEN = (1.0 + np.sqrt(5.0)) / 2.0


def circle_grid(m: int) -> np.ndarray:
    """m uniformly spaced points on S^1, shape (m, 2)."""
    theta = 2.0 * np.pi * np.arange(m) / m
    return np.stack([np.cos(theta), np.sin(theta)], axis=1)


def fibonacci_sphere(m: int) -> np.ndarray:
    """Fibonacci lattice on S^2, shape (m, 3); offset avoids the exact poles."""
    k = np.arange(m)
    phi = 2.0 * np.pi * k / _GOLDEN
    cos_theta = 1.0 - 2.0 * (k + 0.5) / m
    sin_theta = np.sqrt(np.maximum(0.0, 1.0 - cos_theta**2))
    return np.stack(
        [sin_theta * np.cos(phi), sin_theta * np.sin(phi), cos_theta], axis=1
    )


def latitude_sphere(n: int, m: int) -> np.ndarray:
    """Tensor latitude grid on S^n (n >= 3) with roughly m points, shape (~m, n+1).

    Hyperspherical angles phi_1..phi_{n-1} in (0, pi) and phi_n in [0, 2*pi),
    each sampled at cell midpoints so no point sits on a coordinate pole.
    """
    per_axis = max(2, int(round(m ** (1.0 / n))))
    polar = [(np.arange(per_axis) + 0.5) * np.pi / per_axis for _ in range(n - 1)]
    azimuth = (np.arange(per_axis) + 0.5) * 2.0 * np.pi / per_axis
    mesh = np.meshgrid(*polar, azimuth, indexing="ij")
    angles = np.stack([a.ravel() for a in mesh], axis=1)
    pts = np.empty((angles.shape[0], n + 1))
    sin_prod = np.ones(angles.shape[0])
    for i in range(n):
        pts[:, i] = sin_prod * np.cos(angles[:, i])
        sin_prod = sin_prod * np.sin(angles[:, i])
    pts[:, n] = sin_prod
    return pts


def sphere_grid(n: int, m: int, pole_margin: float = 0.0) -> np.ndarray:
    """Quasi-uniform grid of about m points on S^n embedded in R^{n+1}.

    With pole_margin > 0, points with last coordinate <= pole_margin are
    dropped (restricting to the chart q_{n+1} > pole_margin).
    """
    if n < 1:
        raise ArgumentError(f"sphere dimension must be >= 1, got {n}")
    if n == 1:
        pts = circle_grid(m)
    elif n == 2:
        pts = fibonacci_sphere(m)
    else:
        pts = latitude_sphere(n, m)
    if pole_margin > 0.0:
        pts = pts[pts[:, -1] > pole_margin]
    return pts


def disk_grid(n: int, m: int, radius: float = 1.0, rng=None) -> np.ndarray:
    """About m quasi-random points in the closed n-ball of the given radius."""
    rng = np.random.default_rng(rng)
    raw = rng.standard_normal((m, n))
    raw /= np.linalg.norm(raw, axis=1, keepdims=True)
    r = rng.random(m) ** (1.0 / n)
    return radius * raw * r[:, None]


def sphere_tangent_basis(q: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the tangent space T_q S^n, shape (n, n+1).

    Built by Gram-Schmidt of the ambient basis against q.
    """
    q = np.asarray(q, dtype=float)
    d = q.shape[0]
    basis = []
    for i in range(d):
        v = np.zeros(d)
        v[i] = 1.0
        v = v - (v @ q) * q
        for b in basis:
            v = v - (v @ b) * b
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            basis.append(v / norm)
        if len(basis) == d - 1:
            break
    return np.array(basis)

"""The disk family sweeping one surgered hemisphere into the other, and the
generating families that carry the complementary hemisphere along with it.

Everything is parametrized by t in [-1, 1], with

    eps_t = (eps - 1)|t| + 1,

so eps_0 = 1 (the disks degenerate to the transverse disk through the pole)
and eps_{+-1} = eps. The inner disks D_t live in the chart identified with
the cylinder |z|^2 = 1 + eps; their boundaries lie on the corner locus
z^2/4 + |p|^2 = 1, and carrying a boundary point back through the cylinder
chart and the jet-space model of the round hypersurface |w| = 1 gives the
closed-form boundary blocks implemented in pulled_back_boundary_rows.

The outer disks are 1-jet lifts of profiles H_t(q_{n+1}) on [q_{n+1,t}, 1]
pinned by

    H_t(q_{n+1,t}) = t sqrt(1+eps),
    H_t'(q_{n+1,t}) = sqrt(1+eps) sqrt(1-t^2) / sqrt(1 - q_{n+1,t}^2),

the exact data of the pulled-back boundary. Writing H_t = sqrt(1+eps) sin(phi)
turns the exclusion inequality z^2 + |p|^2 >= 1 + eps into phi'(u) >=
1/sqrt(1-u^2), with equality exactly at the mandated boundary slope; the
profiles here take phi = (angle of u) + ramp, capped at pi/2, which meets the
boundary data exactly, keeps the inequality pointwise, and plateaus at
sqrt(1+eps) before the pole. For plot export, slope_H carries the normalized
slope sqrt(1-t^2)/(eps_t sqrt(1-t^2) + |t| sqrt(1-eps_t^2)), which differs
from the exact boundary slope by the constant factor sqrt(1+eps).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from ._smooth import smoothstep5, smoothstep5_d1, smoothstep5_int
from .errors import ArgumentError, ConstructionError
from .grids import disk_grid
from .surgery import psi_inv_rows, psi_w_inv_rows, split_jet
from .verifier import CurveSampler

T_GRID_POINTS = 101


def t_grid(points: int = T_GRID_POINTS) -> np.ndarray:
    """Uniform grid on [-1, 1] including both endpoints and 0."""
    if points % 2 == 0:
        raise ArgumentError("t grid needs an odd point count to contain 0")
    return np.linspace(-1.0, 1.0, points)


@dataclass(frozen=True)
class IsotopyParams:
    """Width eps of the surgery region, plateau offset scale delta0, dimension n."""

    eps: float
    n: int
    delta0: float | None = None

    def __post_init__(self):
        if not (0.0 < self.eps < 0.5):
            raise ArgumentError(f"eps must lie in (0, 0.5), got {self.eps}")
        if self.delta0 is None:
            object.__setattr__(self, "delta0", self.eps / 8.0)
        if not (0.0 < self.delta0 <= self.eps / 4.0):
            raise ArgumentError(f"delta0 must lie in (0, eps/4], got {self.delta0}")
        if self.n < 1:
            raise ArgumentError(f"dimension n must be >= 1, got {self.n}")

    @property
    def root(self) -> float:
        return float(np.sqrt(1.0 + self.eps))


def eps_t(t: float, eps: float) -> float:
    """(eps - 1)|t| + 1; interpolates 1 at t=0 down to eps at |t|=1."""
    return (eps - 1.0) * abs(t) + 1.0


def K_eps(t: float, eps: float) -> float:
    """Positive root of K^2 = eps_t^2, the boundary-closure normalization."""
    return eps_t(t, eps)


def _one_minus_eps_t_sq(t: float, eps: float) -> float:
    # (1 - eps_t)(1 + eps_t) avoids cancellation for small |t|
    a = (1.0 - eps) * abs(t)
    return a * (2.0 - a)


def q_n1_t(t: float, eps: float) -> float:
    """Last sphere coordinate of the carried-back boundary:
    +sqrt((1-t^2)(1-eps_t^2)) - t eps_t for t >= 0, mirrored radical for t < 0."""
    if not -1.0 <= t <= 1.0:
        raise ArgumentError(f"t must lie in [-1, 1], got {t}")
    rad = np.sqrt(max(0.0, (1.0 - t * t) * _one_minus_eps_t_sq(t, eps)))
    sgn = 1.0 if t >= 0.0 else -1.0
    return float(sgn * rad - t * eps_t(t, eps))


def slope_H(t: float, eps: float) -> float:
    """Normalized boundary slope sqrt(1-t^2)/(eps_t sqrt(1-t^2) + |t| sqrt(1-eps_t^2)),
    the quantity tabulated by the plot export; the exact boundary slope is
    sqrt(1+eps) times this value."""
    if not -1.0 <= t <= 1.0:
        raise ArgumentError(f"t must lie in [-1, 1], got {t}")
    s = np.sqrt(1.0 - t * t)
    denom = eps_t(t, eps) * s + abs(t) * np.sqrt(_one_minus_eps_t_sq(t, eps))
    return float(s / denom)


def boundary_slope_exact(t: float, eps: float) -> float:
    """The slope that matches the carried-back boundary covector exactly."""
    return float(np.sqrt(1.0 + eps) * slope_H(t, eps))


@dataclass(frozen=True)
class FtProfile:
    """Height profile of the inner disk at parameter t: quadratic in q_{n+1}
    near the boundary sphere, blended over [eps_t, eps_t + delta_t] into the
    plateau 2t -/+ delta_t; delta_t = delta0 (1 - t^2) so both endpoint disks
    are exactly flat at height 2t."""

    t: float
    params: IsotopyParams

    @property
    def sgn(self) -> float:
        return 1.0 if self.t >= 0.0 else -1.0

    @property
    def e_t(self) -> float:
        return eps_t(self.t, self.params.eps)

    @property
    def delta_t(self) -> float:
        return self.params.delta0 * (1.0 - self.t * self.t)

    @property
    def coeff(self) -> float:
        one_minus = _one_minus_eps_t_sq(self.t, self.params.eps)
        return np.sqrt((1.0 - self.t * self.t) / one_minus) / self.e_t \
            if one_minus > 0.0 else 0.0

    def _quad(self, u):
        # value 2t at u = eps_t, bending away from the plateau side
        return 2.0 * self.t + 0.5 * self.sgn * self.coeff * (self.e_t**2 - u * u)

    def _quad_d1(self, u):
        return -self.sgn * self.coeff * u

    def value(self, u):
        u = np.asarray(u, dtype=float)
        if abs(self.t) == 1.0 or self.delta_t <= 0.0:
            return np.full_like(u, 2.0 * self.t)
        plateau = 2.0 * self.t - self.sgn * self.delta_t
        s = (u - self.e_t) / self.delta_t
        sig = smoothstep5(s)
        return (1.0 - sig) * self._quad(u) + sig * plateau

    def d1(self, u):
        u = np.asarray(u, dtype=float)
        if abs(self.t) == 1.0 or self.delta_t <= 0.0:
            return np.zeros_like(u)
        plateau = 2.0 * self.t - self.sgn * self.delta_t
        s = (u - self.e_t) / self.delta_t
        sig = smoothstep5(s)
        dsig = smoothstep5_d1(s) / self.delta_t
        return (1.0 - sig) * self._quad_d1(u) + dsig * (plateau - self._quad(u))


def _jet_rows_from_profile(q: np.ndarray, value, d1) -> np.ndarray:
    """Jet rows of the lift of a profile in the last sphere coordinate:
    z = h(u), p_i = h'(u) u q_i (i <= n), p_{n+1} = h'(u)(u^2 - 1)."""
    u = q[:, -1]
    z = value(u)
    d = d1(u)
    p = np.empty_like(q)
    p[:, :-1] = (d * u)[:, None] * q[:, :-1]
    p[:, -1] = d * (u * u - 1.0)
    p -= np.sum(p * q, axis=1, keepdims=True) * q  # kill rounding drift
    return np.concatenate([z[:, None], q, p], axis=1)


def disk_D_rows(t: float, x: np.ndarray, params: IsotopyParams) -> np.ndarray:
    """The inner disk at parameter t evaluated on model points x (|x| <= 1).

    q_i = sign(t) x_i sqrt(1 - eps_t^2), q_{n+1} fills the sphere constraint,
    z = F_t(q_{n+1}), p the lift covector of F_t. At t = 0 this is the
    transverse disk z = 0, q = pole, p = (-x, 0) exactly.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    if not -1.0 <= t <= 1.0:
        raise ArgumentError(f"t must lie in [-1, 1], got {t}")
    if np.any(np.sum(x * x, axis=1) > 1.0 + 1e-12):
        raise ArgumentError("model disk points must satisfy |x| <= 1")
    m, n = x.shape
    if t == 0.0:
        rows = np.zeros((m, 2 * n + 3))
        rows[:, n + 1] = 1.0  # q_{n+1} = 1
        rows[:, n + 2 : 2 * n + 2] = -x
        return rows
    sgn = 1.0 if t > 0.0 else -1.0
    scale = np.sqrt(_one_minus_eps_t_sq(t, params.eps))
    q_head = sgn * scale * x
    qn1 = np.sqrt(1.0 - np.sum(q_head * q_head, axis=1))
    q = np.concatenate([q_head, qn1[:, None]], axis=1)
    prof = FtProfile(t, params)
    return _jet_rows_from_profile(q, prof.value, prof.d1)


def boundary_D_rows(t: float, x: np.ndarray, params: IsotopyParams) -> np.ndarray:
    """Closed-form boundary circle of the inner disk (|x| = 1):
    z = 2t, q_{n+1} = eps_t, p_i = -eps_t sqrt(1-t^2) x_i,
    p_{n+1} = sign(t) sqrt((1-t^2)(1-eps_t^2))."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    norms = np.linalg.norm(x, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-10):
        raise ArgumentError("boundary points require |x| = 1")
    m, n = x.shape
    e = eps_t(t, params.eps)
    one_minus = _one_minus_eps_t_sq(t, params.eps)
    root_one_minus = np.sqrt(one_minus)
    s = np.sqrt(1.0 - t * t)
    sgn = 1.0 if t >= 0.0 else -1.0
    rows = np.empty((m, 2 * n + 3))
    rows[:, 0] = 2.0 * t
    rows[:, 1 : n + 1] = sgn * root_one_minus * x
    rows[:, n + 1] = e
    rows[:, n + 2 : 2 * n + 2] = -e * s * x
    rows[:, 2 * n + 2] = sgn * s * root_one_minus
    return rows


def pulled_back_boundary_rows(t: float, x: np.ndarray,
                              params: IsotopyParams) -> np.ndarray:
    """The boundary circle carried back to the round-model jet chart, in the
    closed-form blocks (t >= 0 and t < 0 differ by the radical sign):

    z = t sqrt(1+eps),
    q_i = (-eps_t sqrt(1-t^2) -/+ t sqrt(1-eps_t^2)) x_i,
    q_{n+1} = q_n1_t,
    p = -sqrt(1+eps) (q_D + t q),
    with q_D the boundary sphere coordinate of the inner disk."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    norms = np.linalg.norm(x, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-10):
        raise ArgumentError("boundary points require |x| = 1")
    m, n = x.shape
    eps = params.eps
    root = params.root
    e = eps_t(t, eps)
    rom = np.sqrt(_one_minus_eps_t_sq(t, eps))
    s = np.sqrt(1.0 - t * t)
    sgn = 1.0 if t >= 0.0 else -1.0
    rows = np.empty((m, 2 * n + 3))
    rows[:, 0] = t * root
    q_head = (-e * s - sgn * t * rom) * x
    qn1 = sgn * s * rom - t * e
    rows[:, 1 : n + 1] = q_head
    rows[:, n + 1] = qn1
    rows[:, n + 2 : 2 * n + 2] = root * x * (
        -sgn * rom - t * (-e * s - sgn * t * rom)
    )
    rows[:, 2 * n + 2] = root * (-e - t * qn1)
    return rows


def composed_pullback_rows(t: float, x: np.ndarray,
                           params: IsotopyParams) -> np.ndarray:
    """Independent code path: boundary_D pushed through the two chart inverses."""
    return psi_w_inv_rows(psi_inv_rows(boundary_D_rows(t, x, params), params.eps))


_RAMP_WINDOW = 0.2  # phase units
_PLATEAU_START = 0.9  # q_{n+1} where every profile must have reached the plateau


def _ramp(s: np.ndarray) -> np.ndarray:
    return _RAMP_WINDOW * smoothstep5_int(np.asarray(s, dtype=float) / _RAMP_WINDOW)


def _ramp_d1(s: np.ndarray) -> np.ndarray:
    return smoothstep5(np.asarray(s, dtype=float) / _RAMP_WINDOW)


@dataclass(frozen=True)
class HProfile:
    """Outer generating profile at parameter t, H(u) = sqrt(1+eps) sin(phi(u)),
    phi = a_t + (asin u - sigma_t) + c ramp(asin u - sigma_t) capped at pi/2.

    The phase speed in asin u is >= 1, so z^2 + |p|^2 >= 1 + eps pointwise
    with equality exactly at the boundary and on the plateau; the boundary
    value and exact slope hold by construction.
    """

    t: float
    params: IsotopyParams

    @property
    def a_t(self) -> float:
        return float(np.arcsin(self.t))

    @property
    def u_start(self) -> float:
        return q_n1_t(self.t, self.params.eps)

    @property
    def sigma_t(self) -> float:
        return float(np.arcsin(self.u_start))

    @property
    def sigma_cap(self) -> float:
        return float(np.arcsin(_PLATEAU_START))

    @property
    def c_ramp(self) -> float:
        span = self.sigma_cap - self.sigma_t
        if span <= 0.0:
            raise ConstructionError(
                f"plateau start {_PLATEAU_START} is not beyond the boundary "
                f"sphere q_n1 = {self.u_start:.4f} at t = {self.t}; "
                "no room to reach the plateau"
            )
        needed = 0.5 * np.pi - self.a_t - span
        if needed <= 0.0:
            return 0.0
        return float(needed / _ramp(span))

    def phase(self, u: np.ndarray) -> np.ndarray:
        s = np.arcsin(np.clip(np.asarray(u, dtype=float), -1.0, 1.0)) - self.sigma_t
        s = np.maximum(s, 0.0)
        return np.minimum(self.a_t + s + self.c_ramp * _ramp(s), 0.5 * np.pi)

    def value(self, u: np.ndarray) -> np.ndarray:
        return self.params.root * np.sin(self.phase(u))

    def d1(self, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        sigma = np.arcsin(np.clip(u, -1.0, 1.0))
        s = np.maximum(sigma - self.sigma_t, 0.0)
        phi = self.a_t + s + self.c_ramp * _ramp(s)
        capped = phi >= 0.5 * np.pi
        dphi_dsigma = 1.0 + self.c_ramp * _ramp_d1(s)
        denom = np.sqrt(np.maximum(1.0 - u * u, 1e-300))
        d = self.params.root * np.cos(np.minimum(phi, 0.5 * np.pi)) * dphi_dsigma / denom
        return np.where(capped, 0.0, d)

    def boundary_residuals(self) -> tuple[float, float]:
        """(value - t sqrt(1+eps), slope - exact boundary slope) at u_start."""
        dv = float(self.value(self.u_start)) - self.t * self.params.root
        ds = float(self.d1(self.u_start)) - boundary_slope_exact(self.t, self.params.eps)
        return dv, ds


@dataclass(frozen=True)
class DiskFamily:
    """A family (t, x in D^n_model) -> jet row, with its construction tag."""

    eval_batch: Callable[[float, np.ndarray], np.ndarray]
    construction: str
    params: IsotopyParams

    def eval_vector(self, t: float, x: np.ndarray) -> np.ndarray:
        return self.eval_batch(t, np.asarray(x, dtype=float)[None, :])[0]

    def slice_sampler(self, t: float, interior: float = 0.95,
                      name: str | None = None) -> CurveSampler:
        n = self.params.n

        def sample(m: int, rng: np.random.Generator):
            return disk_grid(n, m, radius=interior, rng=rng)

        def curve(states, i: int, h: float) -> np.ndarray:
            x = states
            if h != 0.0:
                e = np.zeros(n)
                e[i] = h
                x = x + e
            return self.eval_batch(t, x)

        return CurveSampler(
            name=name or f"{self.construction}[t={t:+.3f}]",
            directions=n,
            sample=sample,
            curve=curve,
            params=lambda s: s,
        )


def disk_family(params: IsotopyParams) -> DiskFamily:
    """The inner disks D_t in the cylinder-chart jet coordinates."""
    return DiskFamily(
        eval_batch=lambda t, x: disk_D_rows(t, x, params),
        construction="inner_disk",
        params=params,
    )


def mis_signed_disk_family(params: IsotopyParams) -> DiskFamily:
    """Negative control: the t < 0 disks with the sphere-coordinate sign of the
    t > 0 branch, which flips their orientation and breaks the t -> 0 match."""

    def eval_batch(t, x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        return disk_D_rows(t, -x, params) if t < 0.0 else disk_D_rows(t, x, params)

    return DiskFamily(eval_batch, "inner_disk_missigned", params)


def build_H_family(eps: float, delta0: float | None = None, n: int = 2) -> DiskFamily:
    """Generating-profile lifts over [q_n1_t, 1], as a disk family through the
    polar parametrization q(x) = (-sin(|x| phi_t) x/|x|, cos(|x| phi_t)) with
    phi_t the polar angle of the boundary sphere."""
    params = IsotopyParams(eps=eps, n=n, delta0=delta0)

    @lru_cache(maxsize=512)
    def profile(t: float) -> HProfile:
        prof = HProfile(t, params)
        prof.c_ramp  # force the feasibility check
        return prof

    def eval_batch(t: float, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        if np.any(np.sum(x * x, axis=1) > 1.0 + 1e-12):
            raise ArgumentError("model disk points must satisfy |x| <= 1")
        prof = profile(float(t))
        r = np.linalg.norm(x, axis=1)
        phi_pole = np.arccos(np.clip(prof.u_start, -1.0, 1.0))
        angle = r * phi_pole
        # sin(r phi)/r is smooth through r = 0
        radial = np.where(r > 1e-12, np.sin(angle) / np.maximum(r, 1e-300), phi_pole)
        q_head = -radial[:, None] * x
        qn1 = np.cos(angle)
        q = np.concatenate([q_head, qn1[:, None]], axis=1)
        q /= np.linalg.norm(q, axis=1, keepdims=True)
        return _jet_rows_from_profile(q, prof.value, prof.d1)

    return DiskFamily(eval_batch, "outer_profile_lift", params)


@dataclass(frozen=True)
class AssembledSphere:
    """One sphere of the sweep: the outer profile lift (round-model jet chart)
    joined along the carried-back boundary to the inner disk (cylinder chart)."""

    t: float
    params: IsotopyParams
    outer: DiskFamily
    inner: DiskFamily

    def outer_sampler(self, interior: float = 0.95) -> CurveSampler:
        return self.outer.slice_sampler(self.t, interior, name=f"outer[t={self.t:+.3f}]")

    def inner_sampler(self, interior: float = 0.95) -> CurveSampler:
        return self.inner.slice_sampler(self.t, interior, name=f"inner[t={self.t:+.3f}]")

    def boundary_sphere(self, m: int, rng=0) -> np.ndarray:
        rng = np.random.default_rng(rng)
        x = rng.standard_normal((m, self.params.n))
        return x / np.linalg.norm(x, axis=1, keepdims=True)

    def boundary_mismatch(self, m: int = 256, rng=0) -> float:
        """sup |outer boundary - carried-back inner boundary| over the seam."""
        x = self.boundary_sphere(m, rng)
        outer = self.outer.eval_batch(self.t, x)
        inner = pulled_back_boundary_rows(self.t, x, self.params)
        return float(np.max(np.abs(outer - inner)))

    def exclusion_margin(self, m: int = 2048, rng=0) -> float:
        """min of z^2 + |p|^2 - (1 + eps) over the outer disk."""
        x = disk_grid(self.params.n, m, rng=np.random.default_rng(rng))
        rows = self.outer.eval_batch(self.t, x)
        z, _, p = split_jet(rows)
        return float(np.min(z * z + np.sum(p * p, axis=1) - (1.0 + self.params.eps)))

    def inner_corner_quantity(self, m: int = 2048, rng=0) -> tuple[float, float]:
        """(min, max) of z^2/4 + |p|^2 over the inner disk; reported only."""
        x = disk_grid(self.params.n, m, rng=np.random.default_rng(rng))
        rows = self.inner.eval_batch(self.t, x)
        z, _, p = split_jet(rows)
        vals = 0.25 * z * z + np.sum(p * p, axis=1)
        return float(np.min(vals)), float(np.max(vals))


def assemble_sphere(t: float, params: IsotopyParams,
                    outer: DiskFamily | None = None) -> AssembledSphere:
    if not -1.0 <= t <= 1.0:
        raise ArgumentError(f"t must lie in [-1, 1], got {t}")
    outer = outer or build_H_family(params.eps, params.delta0, params.n)
    return AssembledSphere(t, params, outer, disk_family(params))

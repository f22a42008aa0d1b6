"""The flat Weinstein model in R^{2n+2}.

Coordinates (z, w) with z, w in R^{n+1}, symplectic form sum dz_i ^ dw_i and
Liouville field X = 2z d_z - w d_w. Hypersurfaces transverse to X inherit the
contact form alpha = iota_X omega = sum(2 z_i dw_i + w_i dz_i):

    S_{-1}   = { |w|^2 = 1 }
    S_1      = { f(|w|^2) - g(|z|^2) = 0 }     (handle profiles f, g)
    S_1^st   = { |z|^2 = 1 + eps }

with the identifications

    psi_w   : J^1(S^n) -> S_{-1},   (z, q, p) |-> (z q + p, q)
    psi     : S_1^st -> J^1(S^n),   (z, w) |-> (2 z.w / sqrt(1+eps),
                                                -z / sqrt(1+eps),
                                                w - (z.w) z / (1+eps))

psi_w is a strict contactomorphism; psi rescales the contact form by the
constant 1/sqrt(1+eps).

Ambient vector layout: [z_1..z_{n+1}, w_1..w_{n+1}].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._smooth import hermite_quintic, hermite_quintic_d1
from .errors import ArgumentError, DomainError
from .grids import sphere_tangent_basis
from .jetspace import JetPoint
from .verifier import ContactForm, CurveSampler

MEMBERSHIP_TOL = 1e-10

S_MINUS_1 = "S-1"
S_1 = "S1"
S_1_ST = "S1st"
S_INTERSECTION = "S1&S-1"


@dataclass(frozen=True)
class SurgeryPoint:
    """A point (z, w) of the flat model R^{2n+2}."""

    z: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.z, dtype=float)
        w = np.asarray(self.w, dtype=float)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "w", w)
        if z.shape != w.shape or z.ndim != 1:
            raise ArgumentError("z and w must be 1-d vectors of equal length")

    def vector(self) -> np.ndarray:
        return np.concatenate([self.z, self.w])

    @classmethod
    def from_vector(cls, v: np.ndarray) -> "SurgeryPoint":
        v = np.asarray(v, dtype=float)
        d = v.shape[0] // 2
        return cls(v[:d], v[d:])


def split_surgery(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    rows = np.atleast_2d(rows)
    d = rows.shape[1] // 2
    return rows[:, :d], rows[:, d:]


def split_jet(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    rows = np.atleast_2d(rows)
    d = (rows.shape[1] - 1) // 2
    return rows[:, 0], rows[:, 1 : 1 + d], rows[:, 1 + d :]


def liouville_X(pt: SurgeryPoint) -> np.ndarray:
    """The Liouville field X = 2z d_z - w d_w evaluated at pt, as (2z, -w)."""
    return np.concatenate([2.0 * pt.z, -pt.w])


def surgery_contact_form(n: int) -> ContactForm:
    """alpha = sum(2 z_i dw_i + w_i dz_i) on the [z, w] layout."""

    def coeffs(x: np.ndarray) -> np.ndarray:
        z, w = split_surgery(x)
        return np.concatenate([w, 2.0 * z], axis=1)

    return ContactForm(name=f"2zdw+wdz(n={n})", coeffs=coeffs)


@dataclass(frozen=True)
class ProfilePair:
    """Handle profiles f, g with first derivatives and the width parameter eps.

    f == 1 on [0, 1-eps], f == x + eps on [1-eps/2, inf), increasing between;
    g == x on [0, 1], g == 1+eps on [1+eps, inf), increasing between.
    """

    f: Callable[[np.ndarray], np.ndarray]
    f_d1: Callable[[np.ndarray], np.ndarray]
    g: Callable[[np.ndarray], np.ndarray]
    g_d1: Callable[[np.ndarray], np.ndarray]
    eps: float


def standard_profiles(eps: float) -> ProfilePair:
    """C^2 quintic-Hermite transitions on [1-eps, 1-eps/2] (f) and [1, 1+eps] (g)."""
    if not (0.0 < eps < 0.5):
        raise ArgumentError(f"eps must lie in (0, 0.5), got {eps}")
    fa, fb = 1.0 - eps, 1.0 - eps / 2.0
    ga, gb = 1.0, 1.0 + eps

    def f(x):
        x = np.asarray(x, dtype=float)
        mid = hermite_quintic(x, fa, fb, 1.0, fb + eps, 0.0, 1.0)
        return np.where(x <= fa, 1.0, np.where(x >= fb, x + eps, mid))

    def f_d1(x):
        x = np.asarray(x, dtype=float)
        mid = hermite_quintic_d1(x, fa, fb, 1.0, fb + eps, 0.0, 1.0)
        return np.where(x <= fa, 0.0, np.where(x >= fb, 1.0, mid))

    def g(x):
        x = np.asarray(x, dtype=float)
        mid = hermite_quintic(x, ga, gb, 1.0, 1.0 + eps, 1.0, 0.0)
        return np.where(x <= ga, x, np.where(x >= gb, 1.0 + eps, mid))

    def g_d1(x):
        x = np.asarray(x, dtype=float)
        mid = hermite_quintic_d1(x, ga, gb, 1.0, 1.0 + eps, 1.0, 0.0)
        return np.where(x <= ga, 1.0, np.where(x >= gb, 0.0, mid))

    return ProfilePair(f, f_d1, g, g_d1, eps)


def membership_rows(rows: np.ndarray, surface: str, profiles: ProfilePair) -> np.ndarray:
    """Signed residuals of surface membership for rows of (z, w) vectors."""
    z, w = split_surgery(rows)
    z2 = np.sum(z * z, axis=1)
    w2 = np.sum(w * w, axis=1)
    eps = profiles.eps
    if surface == S_MINUS_1:
        return w2 - 1.0
    if surface == S_1:
        return profiles.f(w2) - profiles.g(z2)
    if surface == S_1_ST:
        return z2 - (1.0 + eps)
    if surface == S_INTERSECTION:
        return np.maximum(np.abs(w2 - 1.0), np.maximum(0.0, 1.0 + eps - z2))
    raise ArgumentError(f"unknown surface {surface!r}")


def membership(pt: SurgeryPoint, surface: str, profiles: ProfilePair) -> float:
    return float(membership_rows(pt.vector()[None, :], surface, profiles)[0])


def psi_w_rows(jet_rows: np.ndarray) -> np.ndarray:
    """(z, q, p) |-> (z q + p, q) on batched jet rows."""
    z, q, p = split_jet(jet_rows)
    return np.concatenate([z[:, None] * q + p, q], axis=1)


def psi_w(pt: JetPoint) -> SurgeryPoint:
    return SurgeryPoint.from_vector(psi_w_rows(pt.vector()[None, :])[0])


def psi_w_inv_rows(rows: np.ndarray, tol: float = MEMBERSHIP_TOL) -> np.ndarray:
    """(z, w) |-> (z.w, w, z - (z.w) w); input must lie on S_{-1}."""
    z, w = split_surgery(rows)
    off = np.abs(np.sum(w * w, axis=1) - 1.0)
    if np.any(off > tol):
        raise DomainError(f"point off S_-1 by {float(np.max(off)):.3e}")
    zw = np.sum(z * w, axis=1)
    return np.concatenate([zw[:, None], w, z - zw[:, None] * w], axis=1)


def psi_w_inv(pt: SurgeryPoint) -> JetPoint:
    return JetPoint.from_vector(psi_w_inv_rows(pt.vector()[None, :])[0])


def psi_rows(rows: np.ndarray, eps: float, tol: float = MEMBERSHIP_TOL) -> np.ndarray:
    """S_1^st -> J^1(S^n); output q renormalized and p re-projected."""
    z, w = split_surgery(rows)
    root = np.sqrt(1.0 + eps)
    off = np.abs(np.sum(z * z, axis=1) - (1.0 + eps))
    if np.any(off > tol):
        raise DomainError(f"point off S_1^st by {float(np.max(off)):.3e}")
    zw = np.sum(z * w, axis=1)
    new_z = 2.0 * zw / root
    q = -z / root
    q = q / np.linalg.norm(q, axis=1, keepdims=True)
    p = w - (zw / (1.0 + eps))[:, None] * z
    p = p - np.sum(p * q, axis=1, keepdims=True) * q
    return np.concatenate([new_z[:, None], q, p], axis=1)


def psi(pt: SurgeryPoint, eps: float) -> JetPoint:
    return JetPoint.from_vector(psi_rows(pt.vector()[None, :], eps)[0])


def psi_inv_rows(jet_rows: np.ndarray, eps: float) -> np.ndarray:
    """(z, q, p) |-> (-sqrt(1+eps) q, p - z q / 2); image lies on S_1^st."""
    z, q, p = split_jet(jet_rows)
    root = np.sqrt(1.0 + eps)
    return np.concatenate([-root * q, p - 0.5 * z[:, None] * q], axis=1)


def psi_inv(pt: JetPoint, eps: float) -> SurgeryPoint:
    return SurgeryPoint.from_vector(psi_inv_rows(pt.vector()[None, :], eps)[0])


@dataclass(frozen=True)
class HomotopySlice:
    """One slice S_{1,t} of the endpoint-preserving homotopy from the round
    cylinder S_1^st (t=0) to the handle hypersurface S_1 (t=1), restricted to
    |z|^2 <= 1 + eps.

    f_t = (1-t) f_0 + t f_1 with f_0 == 1+eps; g_t likewise with g_0 = id.
    Both pin the values f_t(1) = g_t(1+eps) = 1+eps, so every slice has the
    same boundary S_1 & S_{-1}.
    """

    t: float
    profiles: ProfilePair

    def f_t(self, x):
        t = self.t
        return (1.0 - t) * (1.0 + self.profiles.eps) + t * self.profiles.f(x)

    def f_t_d1(self, x):
        return self.t * self.profiles.f_d1(x)

    def g_t(self, x):
        t = self.t
        return (1.0 - t) * np.asarray(x, dtype=float) + t * self.profiles.g(x)

    def g_t_d1(self, x):
        return (1.0 - self.t) + self.t * self.profiles.g_d1(x)

    def residual_rows(self, rows: np.ndarray) -> np.ndarray:
        z, w = split_surgery(rows)
        z2 = np.sum(z * z, axis=1)
        w2 = np.sum(w * w, axis=1)
        return self.f_t(w2) - self.g_t(z2)

    def residual(self, pt: SurgeryPoint) -> float:
        return float(self.residual_rows(pt.vector()[None, :])[0])

    def in_region(self, rows: np.ndarray) -> np.ndarray:
        z, _ = split_surgery(rows)
        return np.sum(z * z, axis=1) <= 1.0 + self.profiles.eps + 1e-12

    def sample_on_surface(self, m: int, n: int, rng) -> np.ndarray:
        """Solve g_t(|z|^2) = f_t(|w|^2) radially for random directions."""
        rng = np.random.default_rng(rng)
        zhat = rng.standard_normal((m, n + 1))
        zhat /= np.linalg.norm(zhat, axis=1, keepdims=True)
        what = rng.standard_normal((m, n + 1))
        what /= np.linalg.norm(what, axis=1, keepdims=True)
        w2 = rng.random(m)  # f_t is below 1+eps here, so g_t(a) = v is solvable
        target = self.f_t(w2)
        lo = np.zeros(m)
        hi = np.full(m, 1.0 + self.profiles.eps)
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            val = self.g_t(mid)
            lo = np.where(val < target, mid, lo)
            hi = np.where(val < target, hi, mid)
        a2 = 0.5 * (lo + hi)
        z = np.sqrt(a2)[:, None] * zhat
        w = np.sqrt(w2)[:, None] * what
        return np.concatenate([z, w], axis=1)

    def transversality_margin(self, rows: np.ndarray, fd_step: float = 1e-6) -> np.ndarray:
        """|grad(residual) . X| by central differences, at the given points."""
        rows = np.atleast_2d(rows)
        m, d = rows.shape
        grad = np.empty((m, d))
        for i in range(d):
            e = np.zeros(d)
            e[i] = fd_step
            grad[:, i] = (
                self.residual_rows(rows + e) - self.residual_rows(rows - e)
            ) / (2.0 * fd_step)
        z, w = split_surgery(rows)
        x_field = np.concatenate([2.0 * z, -w], axis=1)
        return np.abs(np.sum(grad * x_field, axis=1))


def s1t_family(t: float, profiles: ProfilePair) -> HomotopySlice:
    if not (0.0 <= t <= 1.0):
        raise ArgumentError(f"homotopy parameter t must lie in [0, 1], got {t}")
    return HomotopySlice(t, profiles)


def random_jet_sampler(
    n: int, z_scale: float = 1.0, p_scale: float = 1.0, name: str = "random_jet"
) -> CurveSampler:
    """Random points of J^1(S^n) with exact constraint-respecting curves in
    all 2n+1 directions (z shift, great circles with transported p, p shifts)."""

    def sample(m: int, rng: np.random.Generator):
        q = rng.standard_normal((m, n + 1))
        q /= np.linalg.norm(q, axis=1, keepdims=True)
        p = rng.standard_normal((m, n + 1)) * p_scale
        p -= np.sum(p * q, axis=1, keepdims=True) * q
        z = rng.standard_normal(m) * z_scale
        bases = np.stack([sphere_tangent_basis(qq) for qq in q])
        return {"z": z, "q": q, "p": p, "basis": bases}

    def curve(states, i: int, h: float) -> np.ndarray:
        z, q, p = states["z"], states["q"], states["p"]
        if h != 0.0:
            if i == 0:
                z = z + h
            elif i <= n:
                v = states["basis"][:, i - 1, :]
                q = np.cos(h) * q + np.sin(h) * v
                p = p - np.sum(p * q, axis=1, keepdims=True) * q
            else:
                v = states["basis"][:, i - n - 1, :]
                p = p + h * v
        return np.concatenate([z[:, None], q, p], axis=1)

    return CurveSampler(
        name=name,
        directions=2 * n + 1,
        sample=sample,
        curve=curve,
        params=lambda s: np.concatenate([s["z"][:, None], s["q"], s["p"]], axis=1),
    )


def s1st_sampler(n: int, eps: float, w_scale: float = 1.0) -> CurveSampler:
    """Random points of S_1^st with exact on-surface curves: n directions along
    the |z| = sqrt(1+eps) sphere, n+1 straight directions in w."""
    root = np.sqrt(1.0 + eps)

    def sample(m: int, rng: np.random.Generator):
        zhat = rng.standard_normal((m, n + 1))
        zhat /= np.linalg.norm(zhat, axis=1, keepdims=True)
        w = rng.standard_normal((m, n + 1)) * w_scale
        bases = np.stack([sphere_tangent_basis(zz) for zz in zhat])
        return {"zhat": zhat, "w": w, "basis": bases}

    def curve(states, i: int, h: float) -> np.ndarray:
        zhat, w = states["zhat"], states["w"]
        if h != 0.0:
            if i < n:
                v = states["basis"][:, i, :]
                zhat = np.cos(h) * zhat + np.sin(h) * v
            else:
                e = np.zeros(n + 1)
                e[i - n] = 1.0
                w = w + h * e
        return np.concatenate([root * zhat, w], axis=1)

    return CurveSampler(
        name=f"S1st(eps={eps})",
        directions=2 * n + 1,
        sample=sample,
        curve=curve,
        params=lambda s: np.concatenate([s["zhat"], s["w"]], axis=1),
    )

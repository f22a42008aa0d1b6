"""Page coordinates on the disk cotangent bundle of the sphere.

On the chart q_{n+1} > 0 of D(T*S^n), the symplectomorphism to R^{2n} is

    x_i = q_{n+1} p_i,    y_i = q_i / q_{n+1},   i = 1..n,

with the z coordinate of the ambient jet space passing through. The page
boundary |p|^2 = 1 becomes {b(x, y) = 1} with

    b(x, y) = (sum x_i^2 + (sum x_i y_i)^2)(sum y_i^2 + 1),

and |p|^2 = b(x, y) identically on the chart. The module also carries the
swept neighbourhood inequalities nu_t of the core disk {y = 0} and of its
boundary, the page rotation F used to glue complements, and the model
contact form near the binding.

Chart vector layout: [z, x_1..x_n, y_1..y_n].
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from ._smooth import smoothstep5, smoothstep5_d1
from .errors import ArgumentError, DomainError
from .grids import sphere_grid, sphere_tangent_basis
from .surgery import split_jet
from .verifier import ContactForm, CurveSampler


@dataclass(frozen=True)
class PagePoint:
    """A chart point (x, y) in R^{2n}; on_page tags membership in {b <= 1}."""

    x: np.ndarray
    y: np.ndarray
    on_page: bool = False

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        if x.shape != y.shape or x.ndim != 1:
            raise ArgumentError("x and y must be 1-d vectors of equal length")
        if self.on_page and b_fn(x, y) > 1.0 + 1e-10:
            raise ArgumentError("point tagged on-page has b(x, y) > 1")


def b_rows(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    x = np.atleast_2d(x)
    y = np.atleast_2d(y)
    xy = np.sum(x * y, axis=-1)
    return (np.sum(x * x, axis=-1) + xy * xy) * (np.sum(y * y, axis=-1) + 1.0)


def b_fn(x: np.ndarray, y: np.ndarray) -> float:
    return float(b_rows(np.asarray(x)[None, :], np.asarray(y)[None, :])[0])


def page_chart_rows(jet_rows: np.ndarray) -> np.ndarray:
    """(z, q, p) with q_{n+1} > 0  |->  (z, x, y)."""
    z, q, p = split_jet(jet_rows)
    qn1 = q[:, -1]
    if np.any(qn1 <= 0.0):
        raise DomainError("page chart requires q_{n+1} > 0")
    x = qn1[:, None] * p[:, :-1]
    y = q[:, :-1] / qn1[:, None]
    return np.concatenate([z[:, None], x, y], axis=1)


def page_chart_inv_rows(rows: np.ndarray) -> np.ndarray:
    """(z, x, y) |-> (z, q, p), solved from the chart formulas and the
    constraints |q| = 1, p.q = 0."""
    rows = np.atleast_2d(rows)
    n = (rows.shape[1] - 1) // 2
    z = rows[:, 0]
    x = rows[:, 1 : 1 + n]
    y = rows[:, 1 + n :]
    qn1 = 1.0 / np.sqrt(1.0 + np.sum(y * y, axis=1))
    q = np.concatenate([y * qn1[:, None], qn1[:, None]], axis=1)
    p_head = x / qn1[:, None]
    p_last = -np.sum(p_head * y, axis=1)
    p = np.concatenate([p_head, p_last[:, None]], axis=1)
    return np.concatenate([z[:, None], q, p], axis=1)


def page_chart(pt) -> tuple[float, np.ndarray, np.ndarray]:
    """Chart image of a JetPoint as (z, x, y)."""
    row = page_chart_rows(pt.vector()[None, :])[0]
    n = (row.shape[0] - 1) // 2
    return float(row[0]), row[1 : 1 + n], row[1 + n :]


def canonical_one_form(n: int) -> ContactForm:
    """lambda = sum p_i dq_i on the [z, q, p] jet layout."""

    def coeffs(rows: np.ndarray) -> np.ndarray:
        rows = np.atleast_2d(rows)
        c = np.zeros_like(rows)
        c[:, 1 : n + 2] = rows[:, n + 2 :]
        return c

    return ContactForm(name=f"p.dq(n={n})", coeffs=coeffs)


def xy_one_form(n: int) -> ContactForm:
    """lambda = sum x_i dy_i on the [z, x, y] chart layout."""

    def coeffs(rows: np.ndarray) -> np.ndarray:
        rows = np.atleast_2d(rows)
        c = np.zeros_like(rows)
        c[:, 1 + n :] = rows[:, 1 : 1 + n]
        return c

    return ContactForm(name=f"x.dy(n={n})", coeffs=coeffs)


def chart_domain_sampler(n: int, qn1_min: float = 0.1, p_scale: float = 0.7,
                         name: str | None = None) -> CurveSampler:
    """Cotangent points with q_{n+1} > qn1_min, curves exact on the constraints."""

    def sample(m: int, rng: np.random.Generator):
        q = sphere_grid(n, 4 * m, pole_margin=qn1_min)
        q = q[rng.permutation(len(q))[:m]]
        p = rng.standard_normal(q.shape) * p_scale
        p -= np.sum(p * q, axis=1, keepdims=True) * q
        z = rng.standard_normal(len(q))
        bases = np.stack([sphere_tangent_basis(qq) for qq in q])
        return {"z": z, "q": q, "p": p, "basis": bases}

    def curve(states, i: int, h: float) -> np.ndarray:
        z, q, p = states["z"], states["q"], states["p"]
        if h != 0.0:
            if i < n:
                v = states["basis"][:, i, :]
                q = np.cos(h) * q + np.sin(h) * v
                p = p - np.sum(p * q, axis=1, keepdims=True) * q
            else:
                v = states["basis"][:, i - n, :]
                p = p + h * v
        return np.concatenate([z[:, None], q, p], axis=1)

    return CurveSampler(
        name=name or f"chart_domain(n={n})",
        directions=2 * n,
        sample=sample,
        curve=curve,
        params=lambda s: np.concatenate([s["q"], s["p"]], axis=1),
    )


def corrupted_chart_rows(jet_rows: np.ndarray) -> np.ndarray:
    """Negative control: the chart with the q_{n+1} factor dropped from x."""
    z, q, p = split_jet(jet_rows)
    qn1 = q[:, -1]
    x = p[:, :-1]
    y = q[:, :-1] / qn1[:, None]
    return np.concatenate([z[:, None], x, y], axis=1)


@dataclass(frozen=True)
class CutoffRho:
    """Cutoff in the quantity max(b(x,y), b(y,x)): 0 where both reach the
    binding level 1, rising to 1 at level r0; monotone along radial rays."""

    r0: float = 4.0

    def value_rows(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        m = np.maximum(b_rows(x, y), b_rows(y, x))
        return smoothstep5((m - 1.0) / (self.r0 - 1.0))

    def value(self, x: np.ndarray, y: np.ndarray) -> float:
        return float(self.value_rows(np.asarray(x)[None, :], np.asarray(y)[None, :])[0])


@dataclass(frozen=True)
class ConstantRho:
    """Constant cutoff, for tests that pin rho."""

    c: float = 1.0

    def value_rows(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.full(np.atleast_2d(x).shape[0], self.c)

    def value(self, x, y) -> float:
        return self.c


NU_CORE = "L"
NU_BOUNDARY = "dL"


def nu_t_rows(x: np.ndarray, y: np.ndarray, t: float, rho, which: str) -> np.ndarray:
    """Signed residual (<= 0 means inside) of the swept neighbourhoods:

    L:  b(x,y) <= 1  and  b(y,x) <= rho (b(x,y) + t) + (1 - rho) b(x,y)
    dL: b(x,y) <= 1  and  b(x,y) >= rho (b(y,x) + t) + (1 - rho) b(y,x)
    """
    if not (0.0 < t < 0.5):
        raise ArgumentError(f"sweep parameter t must lie in (0, 0.5), got {t}")
    u = b_rows(x, y)
    v = b_rows(y, x)
    r = rho.value_rows(x, y)
    if which == NU_CORE:
        blended = v - (r * (u + t) + (1.0 - r) * u)
    elif which == NU_BOUNDARY:
        blended = (r * (v + t) + (1.0 - r) * v) - u
    else:
        raise ArgumentError(f"unknown neighbourhood {which!r}")
    return np.maximum(u - 1.0, blended)


def nu_t(pt: PagePoint, t: float, rho, which: str) -> float:
    return float(nu_t_rows(pt.x[None, :], pt.y[None, :], t, rho, which)[0])


def beta(t: float) -> float:
    """Sweep schedule 0.5 sin(2 pi t) for the neighbourhood families."""
    return 0.5 * np.sin(2.0 * np.pi * t)


def glue_F(x: np.ndarray, y: np.ndarray, t: float, s: float):
    """The regluing rotation (x, y, t, s) |-> (-y, x, t + 0.5 mod 1, -s)."""
    return -np.asarray(y, dtype=float), np.asarray(x, dtype=float), (t + 0.5) % 1.0, -s


def nu_coverage_scan(t: float, rho, m: int, n: int = 1, rng=0,
                     box: float = 1.2) -> dict:
    """Scan the bidisk {b(x,y) <= 1, b(y,x) <= 1}: each point must lie in
    nu_t(L) or carry over to nu_t(dL) through the gluing rotation F; reports
    counts and whether the two sets overlap."""
    rng = np.random.default_rng(rng)
    x = rng.uniform(-box, box, (m, n))
    y = rng.uniform(-box, box, (m, n))
    # symmetric points b(x,y) = b(y,x) witness the nonempty overlap
    x_sym = rng.uniform(-0.5, 0.5, (max(m // 10, 8), n))
    x = np.concatenate([x, x_sym])
    y = np.concatenate([y, x_sym])
    keep = (b_rows(x, y) <= 1.0) & (b_rows(y, x) <= 1.0)
    x, y = x[keep], y[keep]
    in_core = nu_t_rows(x, y, t, rho, NU_CORE) <= 1e-12
    xf, yf, _, _ = glue_F(x, y, 0.0, 0.0)
    in_bdry = nu_t_rows(xf, yf, t, rho, NU_BOUNDARY) <= 1e-12
    return {
        "points": int(len(x)),
        "uncovered": int(np.count_nonzero(~(in_core | in_bdry))),
        "overlap": int(np.count_nonzero(in_core & in_bdry)),
    }


@dataclass(frozen=True)
class BindingProfiles:
    """Radial profiles (h1, h2) of the model contact form near the binding,
    e^s h1(r) sum x_i dy_i + h2(r) dt: h1 vanishes near the core and rises to
    1 at r = 1; h2 is identically 1. The pair matches the page form at r = 1
    and is never simultaneously zero."""

    rise_start: float = 0.25

    def h1(self, r):
        return smoothstep5((np.asarray(r, dtype=float) - self.rise_start)
                           / (1.0 - self.rise_start))

    def h1_d1(self, r):
        return smoothstep5_d1((np.asarray(r, dtype=float) - self.rise_start)
                              / (1.0 - self.rise_start)) / (1.0 - self.rise_start)

    def h2(self, r):
        return np.ones_like(np.asarray(r, dtype=float))

    def h2_d1(self, r):
        return np.zeros_like(np.asarray(r, dtype=float))


def binding_form(x, y, r, v, profiles: BindingProfiles, s: float = 0.0) -> float:
    """Evaluate e^s h1(r) sum x_i dy_i + h2(r) dt on v = (dx, dy, dr, dt)."""
    x = np.asarray(x, dtype=float)
    dx, dy, dr, dt = v
    dy = np.asarray(dy, dtype=float)
    if np.asarray(dx).shape != x.shape or dy.shape != x.shape:
        raise ArgumentError("tangent components must match the point dimension")
    return float(np.exp(s) * profiles.h1(r) * np.sum(x * dy) + profiles.h2(r) * dt)


def binding_contact_det(y_vals: np.ndarray, r_vals: np.ndarray,
                        profiles: BindingProfiles, s: float = 0.0,
                        branch: float = 1.0) -> np.ndarray:
    """alpha ^ d(alpha) on the n=1 binding {b(x, y) = 1} evaluated on the frame
    (curve tangent, d_r, d_t); the curve is x = branch / (1 + y^2).

    For the product form the density is e^s x y' (h1 h2' - h1' h2), so it
    vanishes identically where h1 is flat; sample r inside the rising window.
    """
    y = np.asarray(y_vals, dtype=float)
    r = np.asarray(r_vals, dtype=float)
    x = branch / (1.0 + y * y)
    dxdy = -2.0 * branch * y / (1.0 + y * y) ** 2
    h1, h2 = profiles.h1(r), profiles.h2(r)
    d_h1, d_h2 = profiles.h1_d1(r), profiles.h2_d1(r)
    # alpha(v1) = e^s h1 x * 1 (dy-component of the curve tangent is 1),
    # d(alpha)(v2, v3) = (h1' e^s x dy + h2' dt wedge terms) contracted below.
    a1 = np.exp(s) * h1 * x * 1.0
    a3 = h2
    d_a12 = -np.exp(s) * d_h1 * x * 1.0  # (dr ^ (x dy))(v1, v2) term
    d_a23 = d_h2  # (dr ^ dt)(v2, v3)
    _ = dxdy  # the dx-component never enters: the form has no dx term
    return a1 * d_a23 + a3 * d_a12

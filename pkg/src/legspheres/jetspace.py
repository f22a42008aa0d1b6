"""The 1-jet space of the n-sphere and jet lifts of scalar fields.

Coordinates (z, q, p) with q on the unit sphere in R^{n+1} and p an ambient
covector satisfying p.q = 0. The contact form used throughout the package is

    alpha = dz + p.dq

and the 1-jet lift of a scalar field f is

    z = f(q),   p = -grad(f) + (grad(f).q) q,

i.e. minus the tangential projection of the ambient gradient. Along a sphere
curve q(s) this gives dz/ds = grad(f).q' and p.q' = -grad(f).q', so the lift
is tangent to ker(dz + p.dq); the sign pair (alpha, lift) is fixed globally
and verified numerically by the test suite.

Ambient vector layout for samplers and forms: [z, q_1..q_{n+1}, p_1..p_{n+1}].
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from .errors import ArgumentError, DomainError
from .grids import sphere_grid, sphere_tangent_basis
from .verifier import CheckConfig, ContactForm, CurveSampler, Report, check_legendrian

SPHERE_TOL = 1e-12
ORTHO_TOL = 1e-12
TANGENT_TOL = 1e-10


@dataclass(frozen=True)
class SpherePoint:
    """A point q of S^n, validated to | |q|^2 - 1 | <= 1e-12 at construction."""

    q: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        object.__setattr__(self, "q", q)
        if q.ndim != 1:
            raise ArgumentError("sphere point must be a 1-d vector")
        if abs(q @ q - 1.0) > SPHERE_TOL:
            raise ArgumentError(f"|q|^2 - 1 = {q @ q - 1.0:.3e} exceeds {SPHERE_TOL}")

    @property
    def n(self) -> int:
        return self.q.shape[0] - 1


@dataclass(frozen=True)
class JetPoint:
    """A point (z, q, p) of J^1(S^n); enforces |p.q| <= 1e-12 at construction."""

    z: float
    q: SpherePoint
    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        object.__setattr__(self, "p", p)
        if p.shape != self.q.q.shape:
            raise ArgumentError("p and q must have the same length")
        if abs(p @ self.q.q) > ORTHO_TOL:
            raise ArgumentError(f"|p.q| = {abs(p @ self.q.q):.3e} exceeds {ORTHO_TOL}")

    @property
    def q_vec(self) -> np.ndarray:
        return self.q.q

    @property
    def n(self) -> int:
        return self.q.n

    def vector(self) -> np.ndarray:
        return np.concatenate([[self.z], self.q.q, self.p])

    @classmethod
    def of(cls, z: float, q: np.ndarray, p: np.ndarray) -> "JetPoint":
        return cls(float(z), SpherePoint(np.asarray(q, dtype=float)), p)

    @classmethod
    def from_vector(cls, v: np.ndarray) -> "JetPoint":
        v = np.asarray(v, dtype=float)
        if v.ndim != 1 or v.shape[0] % 2 == 0:
            raise ArgumentError("jet vector must have odd length 2n+3")
        d = (v.shape[0] - 1) // 2
        return cls.of(v[0], v[1 : 1 + d], v[1 + d :])


@dataclass(frozen=True)
class TangentSample:
    """A tangent vector (dz, dq, dp) at a JetPoint, with the sphere and
    orthogonality constraints differentiated: dq.q = 0 and dp.q + p.dq = 0."""

    base: JetPoint
    dz: float
    dq: np.ndarray
    dp: np.ndarray

    def __post_init__(self):
        dq = np.asarray(self.dq, dtype=float)
        dp = np.asarray(self.dp, dtype=float)
        object.__setattr__(self, "dq", dq)
        object.__setattr__(self, "dp", dp)
        q, p = self.base.q_vec, self.base.p
        if dq.shape != q.shape or dp.shape != q.shape:
            raise ArgumentError("tangent components must match the base dimension")
        if abs(dq @ q) > TANGENT_TOL:
            raise ArgumentError(f"|dq.q| = {abs(dq @ q):.3e} exceeds {TANGENT_TOL}")
        if abs(dp @ q + p @ dq) > TANGENT_TOL:
            raise ArgumentError("|dp.q + p.dq| exceeds tolerance")

    def vector(self) -> np.ndarray:
        return np.concatenate([[self.dz], self.dq, self.dp])

    @classmethod
    def projected(cls, base: JetPoint, dz: float, dq: np.ndarray, dp: np.ndarray):
        """Build a sample with the linearized constraints enforced exactly."""
        q, p = base.q_vec, base.p
        dq = np.asarray(dq, dtype=float)
        dq = dq - (dq @ q) * q
        dp = np.asarray(dp, dtype=float)
        dp = dp - (dp @ q + p @ dq) * q
        return cls(base, float(dz), dq, dp)


def contact_form_j1(pt: JetPoint, v: TangentSample) -> float:
    """Evaluate dz + p.dq at pt on the tangent sample v (v must be based at pt)."""
    if v.base is not pt and not (
        v.base.z == pt.z
        and np.array_equal(v.base.q_vec, pt.q_vec)
        and np.array_equal(v.base.p, pt.p)
    ):
        raise ArgumentError("tangent sample is not based at the given point")
    return float(v.dz + pt.p @ v.dq)


def jet_contact_form(n: int) -> ContactForm:
    """dz + p.dq as a coefficient field on the [z, q, p] ambient layout."""

    def coeffs(x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(x)
        c = np.zeros_like(x)
        c[:, 0] = 1.0
        c[:, 1 : n + 2] = x[:, n + 2 :]
        return c

    return ContactForm(name=f"dz+p.dq(n={n})", coeffs=coeffs)


@dataclass(frozen=True)
class ScalarField:
    """A scalar field on (a region of) S^n given by ambient formulas.

    value and gradient accept arrays of shape (..., n+1); gradient is the
    ambient gradient, which jet_lift projects tangentially.
    """

    value: Callable[[np.ndarray], np.ndarray]
    gradient: Callable[[np.ndarray], np.ndarray]
    domain: Callable[[np.ndarray], np.ndarray] = dc_field(
        default=lambda q: np.ones(np.asarray(q).shape[:-1], dtype=bool)
    )
    name: str = "field"

    def check_gradient(self, points: np.ndarray, step: float = 1e-5,
                       rtol: float = 1e-6) -> Report:
        """Compare the declared gradient against ambient central differences."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        m, d = points.shape
        fd = np.empty((m, d))
        for i in range(d):
            e = np.zeros(d)
            e[i] = step
            fd[:, i] = (self.value(points + e) - self.value(points - e)) / (2 * step)
        g = self.gradient(points)
        rel = np.max(np.abs(fd - g), axis=1) / np.maximum(
            1.0, np.max(np.abs(g), axis=1)
        )
        return Report(
            name=f"gradient[{self.name}]",
            max_residual=float(np.max(rel)) if m else 0.0,
            argmax=f"point {int(np.argmax(rel)) if m else 0}",
            samples=m,
            tol=rtol,
            passed=bool(np.max(rel) < rtol) if m else True,
        )


def jet_lift_batch(f: ScalarField, q: np.ndarray) -> np.ndarray:
    """Vectorized jet lift: rows [z, q, p] for q of shape (m, n+1)."""
    q = np.atleast_2d(np.asarray(q, dtype=float))
    inside = f.domain(q)
    if not np.all(inside):
        raise DomainError(f"{int(np.count_nonzero(~inside))} points outside "
                          f"the domain of {f.name}")
    z = np.asarray(f.value(q), dtype=float)
    g = np.asarray(f.gradient(q), dtype=float)
    p = -g + np.sum(g * q, axis=-1, keepdims=True) * q
    p = p - np.sum(p * q, axis=-1, keepdims=True) * q  # kill rounding drift
    return np.concatenate([z[:, None], q, p], axis=1)


def jet_lift(f: ScalarField, q: SpherePoint) -> JetPoint:
    """Jet lift of f at one sphere point; p is exactly re-projected onto q-perp."""
    row = jet_lift_batch(f, q.q[None, :])[0]
    d = q.q.shape[0]
    return JetPoint(float(row[0]), q, row[1 + d :])


def jet_lift_sampler(
    f: ScalarField,
    n: int,
    grid: np.ndarray | None = None,
    name: str | None = None,
) -> CurveSampler:
    """Sampler for the jet lift of f, with exact great-circle parameter curves."""

    def sample(m: int, rng: np.random.Generator):
        pts = sphere_grid(n, m) if grid is None else np.atleast_2d(grid)
        pts = pts[f.domain(pts)]
        bases = np.stack([sphere_tangent_basis(qq) for qq in pts])
        return {"q": pts, "basis": bases}

    def curve(states, i: int, h: float) -> np.ndarray:
        q0 = states["q"]
        if h == 0.0:
            return jet_lift_batch(f, q0)
        v = states["basis"][:, i, :]
        qh = np.cos(h) * q0 + np.sin(h) * v
        return jet_lift_batch(f, qh)

    return CurveSampler(
        name=name or f"jet_lift[{f.name}]",
        directions=n,
        sample=sample,
        curve=curve,
        params=lambda states: states["q"],
    )


def verify_jet_lift_legendrian(
    f: ScalarField,
    grid: np.ndarray,
    tol: float = 1e-6,
    fd_step: float = 1e-5,
) -> Report:
    """Check that the jet lift of f is tangent to ker(dz + p.dq) over the grid,
    pushing grid tangents forward by finite differences along great circles."""
    grid = np.atleast_2d(np.asarray(grid, dtype=float))
    n = grid.shape[1] - 1
    config = CheckConfig(fd_step=fd_step, tol=tol,
                         grid_sizes={n: grid.shape[0]})
    sampler = jet_lift_sampler(f, n, grid=grid)
    return check_legendrian(sampler, jet_contact_form(n), config)


def constant_field(c: float) -> ScalarField:
    return ScalarField(
        value=lambda q: np.full(np.asarray(q).shape[:-1], float(c)),
        gradient=lambda q: np.zeros_like(np.asarray(q, dtype=float)),
        name=f"const({c})",
    )


def coordinate_field(i: int) -> ScalarField:
    return ScalarField(
        value=lambda q: np.asarray(q)[..., i],
        gradient=lambda q: _unit_gradient(q, i),
        name=f"q[{i}]",
    )


def _unit_gradient(q: np.ndarray, i: int) -> np.ndarray:
    g = np.zeros_like(np.asarray(q, dtype=float))
    g[..., i] = 1.0
    return g


def standard_fields(n: int) -> list[ScalarField]:
    """Ten analytic fields on S^n: constants, coordinates, sums, products."""
    last = n

    def prod_field():
        def value(q):
            q = np.asarray(q)
            return q[..., 0] * q[..., last]

        def gradient(q):
            q = np.asarray(q, dtype=float)
            g = np.zeros_like(q)
            g[..., 0] = q[..., last]
            g[..., last] = q[..., 0]
            return g

        return ScalarField(value, gradient, name="q1*qlast")

    def square_field(i):
        def value(q):
            return np.asarray(q)[..., i] ** 2

        def gradient(q):
            q = np.asarray(q, dtype=float)
            g = np.zeros_like(q)
            g[..., i] = 2.0 * q[..., i]
            return g

        return ScalarField(value, gradient, name=f"q[{i}]^2")

    def cubic_field():
        def value(q):
            q = np.asarray(q)
            return q[..., 0] ** 2 * q[..., last]

        def gradient(q):
            q = np.asarray(q, dtype=float)
            g = np.zeros_like(q)
            g[..., 0] = 2.0 * q[..., 0] * q[..., last]
            g[..., last] = q[..., 0] ** 2
            return g

        return ScalarField(value, gradient, name="q1^2*qlast")

    def sum_field():
        def value(q):
            q = np.asarray(q)
            return q[..., 0] + q[..., last]

        def gradient(q):
            q = np.asarray(q, dtype=float)
            g = np.zeros_like(q)
            g[..., 0] = 1.0
            g[..., last] = 1.0
            return g

        return ScalarField(value, gradient, name="q1+qlast")

    return [
        constant_field(0.0),
        constant_field(1.0),
        constant_field(-0.75),
        coordinate_field(0),
        coordinate_field(last),
        sum_field(),
        prod_field(),
        square_field(0),
        square_field(last),
        cubic_field(),
    ]


def corrupted_gradient_field(f: ScalarField, bump: float = 0.1,
                             component: int = 0) -> ScalarField:
    """Negative control: f with a constant bump added to one gradient component."""

    def gradient(q):
        g = np.array(f.gradient(q), dtype=float)
        g[..., component] = g[..., component] + bump
        return g

    return ScalarField(f.value, gradient, f.domain, name=f"{f.name}+corrupt")

"""Closed Legendrian spheres built at desk scale.

Three families:

* the spun round front in R^{2n+1} = (x, y, z): front
  (x, z) = (cos(s) w, a sin^3(s)) for s in [-pi/2, pi/2], w in S^{n-1},
  lifted by the slope y = -3a sin(s) cos(s) w; the front folds exactly on
  the cusp sphere s = 0;

* two-disk spheres in the round-model jet chart: the flat sphere at height
  sqrt(1+eps) split at q_{n+1} = -eps (the stabilized sphere), and the union
  of a generating-profile disk with the flat disk at -sqrt(1+eps) over
  q_{n+1} >= eps (the join sphere), matching the sweep-family endpoints;

* the double of an exact Lagrangian disk: its lift, the lift of its
  last-coordinate reflection, and the spun bend grafted along the shared
  cylindrical end.

Conventions in the (x, y, z) model: contact form dz - sum y_i dx_i, vertical
Reeb field d_z, fronts discard y. Ambient layout [x_1..x_n, y_1..y_n, z].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._smooth import smoothstep5_int
from .errors import ArgumentError, ConstructionError, DomainError, SingularityError
from .grids import disk_grid, sphere_grid, sphere_tangent_basis
from .isotopy import HProfile, IsotopyParams
from .jetspace import ScalarField, jet_lift_batch
from .verifier import ContactForm, CurveSampler

CUSP_RANK_TOL = 1e-8
CUSP_COLLAR = 1e-2
SPUN_AMPLITUDE = 2.0 / 3.0


def xy_contact_form(n: int) -> ContactForm:
    """dz - sum y_i dx_i on the [x, y, z] layout."""

    def coeffs(rows: np.ndarray) -> np.ndarray:
        rows = np.atleast_2d(rows)
        c = np.zeros_like(rows)
        c[:, :n] = -rows[:, n : 2 * n]
        c[:, 2 * n] = 1.0
        return c

    return ContactForm(name=f"dz-y.dx(n={n})", coeffs=coeffs)


@dataclass(frozen=True)
class FrontSample:
    """One sampled front point: base parameters, horizontal coordinates,
    height, and whether the front projection drops rank there."""

    params: np.ndarray
    horizontal: np.ndarray
    z: float
    cusp: bool

    def __post_init__(self):
        if not (np.all(np.isfinite(self.horizontal)) and np.isfinite(self.z)):
            raise ArgumentError("front coordinates must be finite")


@dataclass(frozen=True)
class SpherePiece:
    """One disk piece of a piecewise sphere: a named sampler plus the raw
    batch evaluation its tests and exports share."""

    name: str
    eval_batch: Callable[[np.ndarray], np.ndarray]
    sampler: CurveSampler
    layout: str  # "jet" rows [z,q,p] or "xyz" rows [x,y,z]


@dataclass(frozen=True)
class PiecewiseSphere:
    name: str
    pieces: tuple[SpherePiece, ...]

    def piece(self, name: str) -> SpherePiece:
        for p in self.pieces:
            if p.name == name:
                return p
        raise ArgumentError(f"no piece named {name!r} in {self.name}")

    def sample_points(self, m_per_piece: int, rng=0) -> np.ndarray:
        rng = np.random.default_rng(rng)
        rows = []
        for p in self.pieces:
            states = p.sampler.sample(m_per_piece, rng)
            rows.append(p.sampler.points(states))
        return np.concatenate(rows, axis=0)


def disk_piece(name: str, dim: int, eval_batch, layout: str,
               interior: float = 0.97) -> SpherePiece:
    """Piece parametrized over the model dim-ball with straight parameter lines."""

    def sample(m: int, rng: np.random.Generator):
        return disk_grid(dim, m, radius=interior, rng=rng)

    def curve(states, i: int, h: float) -> np.ndarray:
        x = states
        if h != 0.0:
            e = np.zeros(dim)
            e[i] = h
            x = x + e
        return eval_batch(x)

    sampler = CurveSampler(name=name, directions=dim, sample=sample,
                           curve=curve, params=lambda s: s)
    return SpherePiece(name, eval_batch, sampler, layout)


def hausdorff_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric Hausdorff distance between two sample clouds."""
    d = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=-1)
    return float(max(np.max(np.min(d, axis=1)), np.max(np.min(d, axis=0))))


# --- the spun round front -------------------------------------------------


def spun_front_rows(s: np.ndarray, omega: np.ndarray,
                    a: float = SPUN_AMPLITUDE) -> np.ndarray:
    """Rows [x, y, z] of the lifted spun front at angles s, spin points omega."""
    s = np.asarray(s, dtype=float)
    omega = np.atleast_2d(omega)
    x = np.cos(s)[:, None] * omega
    y = (-3.0 * a * np.sin(s) * np.cos(s))[:, None] * omega
    z = a * np.sin(s) ** 3
    return np.concatenate([x, y, z[:, None]], axis=1)


def spun_unknot_front(n: int, m: int, a: float = SPUN_AMPLITUDE) -> list[FrontSample]:
    """Front samples of the spun sphere on an angle-by-spin grid; the cusp
    flag is the front-Jacobian rank test, which fires exactly at s = 0."""
    if n < 1:
        raise ArgumentError("spun front needs n >= 1")
    n_s = max(9, 2 * int(np.sqrt(m)) + 1)  # odd count puts s = 0 on the grid
    s_vals = np.linspace(-np.pi / 2.0, np.pi / 2.0, n_s)
    if n == 1:
        spins = np.array([[1.0], [-1.0]])
    else:
        spins = sphere_grid(n - 1, max(8, m // n_s))
    # the radial front-Jacobian column is -sin(s) w; rank drops iff sin(s) = 0
    cusp = np.abs(np.sin(s_vals)) < CUSP_RANK_TOL
    out = []
    for w in spins:
        rows = spun_front_rows(s_vals, np.tile(w, (n_s, 1)), a)
        for k in range(n_s):
            out.append(FrontSample(
                params=np.concatenate([[s_vals[k]], w]),
                horizontal=rows[k, :n],
                z=float(rows[k, 2 * n]),
                cusp=bool(cusp[k]),
            ))
    return out


def spun_unknot_sampler(n: int, a: float = SPUN_AMPLITUDE,
                        pole_collar: float = CUSP_COLLAR) -> CurveSampler:
    """Sampler of the lifted spun sphere with exact angle/spin curves."""

    def sample(m: int, rng: np.random.Generator):
        s = rng.uniform(-np.pi / 2.0 + pole_collar, np.pi / 2.0 - pole_collar, m)
        if n == 1:
            w = np.where(rng.random((m, 1)) < 0.5, 1.0, -1.0)
            bases = np.zeros((m, 0, 1))
        else:
            w = sphere_grid(n - 1, 4 * m)
            w = w[rng.permutation(len(w))[:m]]
            bases = np.stack([sphere_tangent_basis(ww) for ww in w])
        return {"s": s, "w": w, "basis": bases}

    def curve(states, i: int, h: float) -> np.ndarray:
        s, w = states["s"], states["w"]
        if h != 0.0:
            if i == 0:
                s = s + h
            else:
                v = states["basis"][:, i - 1, :]
                w = np.cos(h) * w + np.sin(h) * v
        return spun_front_rows(s, w, a)

    return CurveSampler(
        name=f"spun_front(n={n})",
        directions=1 if n == 1 else n,
        sample=sample,
        curve=curve,
        params=lambda st: np.concatenate([st["s"][:, None], st["w"]], axis=1),
    )


def spun_meridian_rows(n: int, m: int = 401, a: float = SPUN_AMPLITUDE,
                       omega: np.ndarray | None = None) -> np.ndarray:
    """Closed meridian polyline: spin branch omega south to north, -omega back."""
    if omega is None:
        omega = np.zeros(max(n, 1))
        omega[0] = 1.0
    if m % 2 == 0:
        m += 1
    s_vals = np.linspace(-np.pi / 2.0, np.pi / 2.0, m)
    fwd = spun_front_rows(s_vals, np.tile(omega, (m, 1)), a)
    back = spun_front_rows(s_vals[::-1][1:], np.tile(-omega, (m - 1, 1)), a)
    return np.concatenate([fwd, back], axis=0)


def count_meridian_folds(polyline_rows: np.ndarray, radial: np.ndarray,
                         n: int) -> int:
    """Cyclic sign changes of the radial front increment along a closed
    meridian polyline; each front fold contributes exactly one."""
    x = polyline_rows[:, :n]
    xi = x @ (np.asarray(radial, dtype=float) / np.linalg.norm(radial))
    d = np.diff(np.concatenate([xi, xi[:1]]))
    d = d[np.abs(d) > 1e-12]
    if d.size < 2:
        return 0
    signs = np.sign(d)
    return int(np.count_nonzero(signs != np.roll(signs, -1)))


def front_closure_gap(polyline_rows: np.ndarray, n: int) -> float:
    """Distance between the ends of a closed front polyline, in (x, z)."""
    front = np.concatenate([polyline_rows[:, :n], polyline_rows[:, -1:]], axis=1)
    return float(np.linalg.norm(front[0] - front[-1]))


# --- two-disk spheres in the round-model jet chart ------------------------


def polar_cap_q(x: np.ndarray, floor: float) -> np.ndarray:
    """Polar parametrization of the cap q_{n+1} >= floor over the model disk,
    q(x) = (-sin(|x| phi) x/|x|, cos(|x| phi)) with phi = arccos(floor)."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    r = np.linalg.norm(x, axis=1)
    phi_pole = np.arccos(np.clip(floor, -1.0, 1.0))
    angle = r * phi_pole
    radial = np.where(r > 1e-12, np.sin(angle) / np.maximum(r, 1e-300), phi_pole)
    q = np.concatenate([-radial[:, None] * x, np.cos(angle)[:, None]], axis=1)
    return q / np.linalg.norm(q, axis=1, keepdims=True)


def _flat_rows(q: np.ndarray, z_level: float) -> np.ndarray:
    m, d = q.shape
    rows = np.zeros((m, 2 * d + 1))
    rows[:, 0] = z_level
    rows[:, 1 : d + 1] = q
    return rows


def _endpoint_disk_q(x: np.ndarray, eps: float, lower: bool) -> np.ndarray:
    """Sphere coordinates of the sweep family's endpoint disks: linear head
    -x sqrt(1-eps^2), last coordinate closing the constraint (negated for the
    lower cap q_{n+1} <= -eps)."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    head = -np.sqrt(1.0 - eps * eps) * x
    qn1 = np.sqrt(np.maximum(0.0, 1.0 - np.sum(head * head, axis=1)))
    if lower:
        qn1 = -qn1
    return np.concatenate([head, qn1[:, None]], axis=1)


def s_stab_model(eps: float, n: int = 2) -> PiecewiseSphere:
    """The stabilized sphere: both flat disks at height sqrt(1+eps), p = 0,
    split at q_{n+1} = -eps."""
    root = float(np.sqrt(1.0 + eps))
    cap = disk_piece("cap", n, lambda x: _flat_rows(polar_cap_q(x, -eps), root), "jet")
    core = disk_piece(
        "core", n, lambda x: _flat_rows(_endpoint_disk_q(x, eps, lower=True), root), "jet"
    )
    return PiecewiseSphere(name=f"s_stab(eps={eps},n={n})", pieces=(cap, core))


def profile_scalar_field(value, d1, domain_floor: float, name: str) -> ScalarField:
    """Wrap a last-coordinate profile as an ambient scalar field."""

    def val(q):
        return value(np.asarray(q)[..., -1])

    def grad(q):
        q = np.asarray(q, dtype=float)
        g = np.zeros_like(q)
        g[..., -1] = d1(q[..., -1])
        return g

    def dom(q):
        return np.asarray(q)[..., -1] >= domain_floor - 1e-12

    return ScalarField(val, grad, dom, name=name)


def validate_join_profile(value, d1, eps: float, tol: float = 1e-9) -> None:
    """The join profile must leave the flat level -sqrt(1+eps) at
    q_{n+1} = eps with zero slope, keep z^2 + |p|^2 >= 1 + eps, and plateau
    at sqrt(1+eps) at the pole."""
    root = np.sqrt(1.0 + eps)
    u0 = np.array([eps])
    if abs(float(value(u0)[0]) + root) > tol or abs(float(d1(u0)[0])) > tol:
        raise ConstructionError("join profile must start at -sqrt(1+eps) with slope 0")
    u = np.linspace(eps, 1.0, 2001)
    h, dh = np.asarray(value(u)), np.asarray(d1(u))
    margin = h * h + dh * dh * (1.0 - u * u) - (1.0 + eps)
    if float(np.min(margin)) < -1e-9:
        raise ConstructionError(
            f"join profile violates the exclusion inequality by {-np.min(margin):.2e}"
        )
    if abs(float(value(np.array([1.0]))[0]) - root) > tol:
        raise ConstructionError("join profile must plateau at sqrt(1+eps)")


def s_join_model(eps: float, n: int = 2,
                 profile: HProfile | None = None) -> PiecewiseSphere:
    """The join sphere: the 1-jet lift of a generating profile over
    q_{n+1} >= eps, joined C^1 at q_{n+1} = eps with the flat disk at
    -sqrt(1+eps). The lift goes through the scalar-field jet machinery, an
    independent code path from the sweep-family evaluation."""
    params = IsotopyParams(eps=eps, n=n)
    prof = profile or HProfile(-1.0, params)
    validate_join_profile(prof.value, prof.d1, eps)
    fld = profile_scalar_field(prof.value, prof.d1, eps, name="join_profile")
    root = float(np.sqrt(1.0 + eps))

    def jet_rows(x: np.ndarray) -> np.ndarray:
        return jet_lift_batch(fld, polar_cap_q(x, eps))

    jet = disk_piece("jet", n, jet_rows, "jet")
    flat = disk_piece(
        "flat", n, lambda x: _flat_rows(_endpoint_disk_q(x, eps, lower=False), -root),
        "jet",
    )
    return PiecewiseSphere(name=f"s_join(eps={eps},n={n})", pieces=(jet, flat))


# --- the transverse hypersurface ------------------------------------------


@dataclass(frozen=True)
class RhoProfile:
    """A positive smoothing of 1 - x on [0, 1]: exactly 1 - x on
    [delta, 1 - delta], even quartic caps at both ends."""

    delta: float = 0.05

    def _cap(self, s):
        return 0.375 + 0.75 * s * s - 0.125 * s**4

    def _cap_d1(self, s):
        return 1.5 * s - 0.5 * s**3

    def _cap_d2(self, s):
        return 1.5 - 1.5 * s * s

    def value(self, x):
        x = np.asarray(x, dtype=float)
        d = self.delta
        left = 1.0 - d * self._cap(x / d)
        right = d * self._cap((1.0 - x) / d)
        return np.where(x < d, left, np.where(x > 1.0 - d, right, 1.0 - x))

    def d1(self, x):
        x = np.asarray(x, dtype=float)
        d = self.delta
        left = -self._cap_d1(x / d)
        right = -self._cap_d1((1.0 - x) / d)
        return np.where(x < d, left, np.where(x > 1.0 - d, right, -1.0))

    def d2(self, x):
        x = np.asarray(x, dtype=float)
        d = self.delta
        left = -self._cap_d2(x / d) / d
        right = self._cap_d2((1.0 - x) / d) / d
        return np.where(x < d, left, np.where(x > 1.0 - d, right, 0.0))


def w_rho_surface(x_n: float, y_n: float, rho: RhoProfile) -> float:
    """Height of the hypersurface z = (rho(x_n)/rho'(x_n)) y_n, 0 < x_n < 1."""
    if not 0.0 < x_n < 1.0:
        raise DomainError(f"x_n must lie in (0, 1), got {x_n}")
    d = float(rho.d1(x_n))
    if abs(d) < 1e-12:
        raise SingularityError(f"rho'({x_n}) = 0")
    return float(rho.value(x_n)) / d * y_n


def w_rho_reeb_margin(x_n: np.ndarray, y_n: np.ndarray, rho: RhoProfile) -> np.ndarray:
    """Cosine of the angle between the surface normal and the vertical Reeb
    direction, 1/sqrt(1 + |grad z|^2); strictly positive on any graph."""
    x_n = np.asarray(x_n, dtype=float)
    y_n = np.asarray(y_n, dtype=float)
    v, d1, d2 = rho.value(x_n), rho.d1(x_n), rho.d2(x_n)
    dz_dy = v / d1
    dz_dx = y_n * (1.0 - v * d2 / (d1 * d1))
    return 1.0 / np.sqrt(1.0 + dz_dx**2 + dz_dy**2)


# --- exact Lagrangian disks and the doubling ------------------------------


@dataclass(frozen=True)
class ExactLagrangianDisk:
    """An exact Lagrangian disk in R^{2n}: a model-disk parametrization
    u -> (x(u), y(u)) and a primitive with d(primitive) = y . dx along it."""

    parametrization: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]
    primitive: Callable[[np.ndarray], np.ndarray]
    dim: int
    name: str = "disk"

    def check_exact(self, m: int = 256, step: float = 1e-6, rng=0) -> float:
        """Max |d(primitive) - y . dx| over interior sample directions."""
        rng = np.random.default_rng(rng)
        u = disk_grid(self.dim, m, radius=0.9, rng=rng)
        _, y0 = self.parametrization(u)
        worst = 0.0
        for i in range(self.dim):
            e = np.zeros(self.dim)
            e[i] = step
            xp, _ = self.parametrization(u + e)
            xm, _ = self.parametrization(u - e)
            dprim = (self.primitive(u + e) - self.primitive(u - e)) / (2 * step)
            ydx = np.sum(y0 * (xp - xm), axis=1) / (2 * step)
            worst = max(worst, float(np.max(np.abs(dprim - ydx))))
        return worst

    def collar_constancy(self, m: int = 128, rng=0) -> float:
        """Max movement of the parametrization along the frozen radial collar."""
        rng = np.random.default_rng(rng)
        u = rng.standard_normal((m, self.dim))
        u /= np.linalg.norm(u, axis=1, keepdims=True)
        ax, ay = self.parametrization(u)
        bx, by = self.parametrization(0.93 * u)
        return float(max(np.max(np.abs(ax - bx)), np.max(np.abs(ay - by))))


def flat_disk(n: int, radius: float = 1.0, collar: float = 0.15) -> ExactLagrangianDisk:
    """The flat disk {y = 0} over a round region, radially frozen across the
    last `collar` of the model radius; the primitive is identically zero."""
    inner = 1.0 - 2.0 * collar
    span = collar
    s_cap = inner + 0.5 * span

    def arc(r):
        r = np.asarray(r, dtype=float)
        srel = np.clip((r - inner) / span, 0.0, 1.0)
        mid = inner + span * (srel - smoothstep5_int(srel))
        return np.where(r <= inner, r, np.where(r >= inner + span, s_cap, mid))

    def parametrization(u: np.ndarray):
        u = np.atleast_2d(np.asarray(u, dtype=float))
        r = np.linalg.norm(u, axis=1)
        scale = np.where(r > 1e-12, arc(r) / np.maximum(r, 1e-300), 1.0)
        x = (radius / s_cap) * scale[:, None] * u
        return x, np.zeros_like(x)

    def primitive(u: np.ndarray):
        return np.zeros(np.atleast_2d(u).shape[0])

    return ExactLagrangianDisk(parametrization, primitive, n, name="flat_disk")


def _bend_sampler(bend_rows, n: int, pole_collar: float = CUSP_COLLAR) -> CurveSampler:
    """Sampler of a bend piece with exact (spin, bend-angle) curves."""

    def sample(m: int, rng: np.random.Generator):
        s = rng.uniform(-0.5 * np.pi + pole_collar, 0.5 * np.pi - pole_collar, m)
        if n == 1:
            w = np.where(rng.random((m, 1)) < 0.5, 1.0, -1.0)
            bases = np.zeros((m, 0, 1))
        else:
            w = sphere_grid(n - 1, 4 * m)
            w = w[rng.permutation(len(w))[:m]]
            bases = np.stack([sphere_tangent_basis(ww) for ww in w])
        return {"s": s, "w": w, "basis": bases}

    def curve(states, i: int, h: float) -> np.ndarray:
        s, w = states["s"], states["w"]
        if h != 0.0:
            if i == 0:
                s = s + h
            else:
                v = states["basis"][:, i - 1, :]
                w = np.cos(h) * w + np.sin(h) * v
        return bend_rows(w, s)

    return CurveSampler(
        name=f"double_bend(n={n})",
        directions=1 if n == 1 else n,
        sample=sample,
        curve=curve,
        params=lambda st: np.concatenate([st["s"][:, None], st["w"]], axis=1),
    )


@dataclass(frozen=True)
class DoubledSphere:
    """The assembled double: the lifted disk, the lifted reflected copy, and
    the spun bend grafted along their shared boundary sphere."""

    sphere: PiecewiseSphere
    dim: int
    z_half: float
    bulge: float
    end_radius: float
    seam_gap: float
    w_rho_margin: float
    bend_rows: Callable[[np.ndarray, np.ndarray], np.ndarray]

    def meridian_rows(self, m: int = 400, direction: np.ndarray | None = None) -> np.ndarray:
        """Closed meridian: across the top disk, down the far bend, back
        across the bottom disk, and up the near bend."""
        if direction is None:
            direction = np.zeros(self.dim)
            direction[0] = 1.0
        direction = np.asarray(direction, dtype=float)
        direction = direction / np.linalg.norm(direction)
        k = max(m // 4, 8)
        taus = np.linspace(1.0, -1.0, k)
        top = self.sphere.piece("top").eval_batch(np.outer(taus, direction))
        s_down = np.linspace(0.5 * np.pi, -0.5 * np.pi, k)
        far = self.bend_rows(np.tile(-direction, (k, 1)), s_down)
        bottom = self.sphere.piece("bottom").eval_batch(np.outer(-taus, direction))
        near = self.bend_rows(np.tile(direction, (k, 1)), -s_down)
        return np.concatenate([top, far, bottom, near], axis=0)


def lambda_double(disk: ExactLagrangianDisk, rho: RhoProfile | None = None,
                  z_half: float | None = None, bulge: float = 0.2) -> DoubledSphere:
    """Double an exact Lagrangian disk into a closed Legendrian sphere.

    The disk is lifted at height +h above its end level, the last-coordinate
    reflection of the disk at -h, and the two are joined along the boundary
    sphere by the spun bend x = b (1 + bulge cos(s)), z = h sin^3(s) with its
    slope lift. Checked preconditions: an exact primitive, a frozen radial
    collar, a level end (y = 0, constant primitive on the boundary), and a
    round end sphere centered at the origin (the bend slopes are radial).
    """
    rho = rho or RhoProfile()
    n = disk.dim
    exact = disk.check_exact()
    if exact > 1e-8:
        raise ConstructionError(f"primitive defect {exact:.2e} exceeds 1e-8")
    frozen = disk.collar_constancy()
    if frozen > 1e-9:
        raise ConstructionError(f"collar moves by {frozen:.2e}; end is not cylindrical")

    probe = np.random.default_rng(0).standard_normal((64, n))
    probe /= np.linalg.norm(probe, axis=1, keepdims=True)
    bx, by = disk.parametrization(probe)
    prim_end = disk.primitive(probe)
    if float(np.max(np.abs(by))) > 1e-8:
        raise ConstructionError("end must be level: y != 0 on the boundary sphere")
    if float(np.max(prim_end) - np.min(prim_end)) > 1e-8:
        raise ConstructionError("end must be level: primitive varies on the boundary")
    radii = np.linalg.norm(bx, axis=1)
    end_radius = float(np.mean(radii))
    if float(np.max(np.abs(radii - end_radius))) > 1e-8:
        raise ConstructionError("end sphere must be round for the bend graft")

    h = z_half if z_half is not None else SPUN_AMPLITUDE * end_radius
    prim_shift = float(np.mean(prim_end))

    def top_rows(u: np.ndarray) -> np.ndarray:
        u = np.atleast_2d(np.asarray(u, dtype=float))
        x, y = disk.parametrization(u)
        z = disk.primitive(u) - prim_shift + h
        return np.concatenate([x, y, z[:, None]], axis=1)

    def bottom_rows(u: np.ndarray) -> np.ndarray:
        """Reflected copy, reparametrized by the model reflection so the
        boundary spheres of the two lifts match pointwise."""
        u = np.atleast_2d(np.asarray(u, dtype=float)).copy()
        u[:, -1] = -u[:, -1]
        x, y = disk.parametrization(u)
        x = x.copy()
        y = y.copy()
        x[:, -1] = -x[:, -1]
        y[:, -1] = -y[:, -1]
        z = disk.primitive(u) - prim_shift - h
        return np.concatenate([x, y, z[:, None]], axis=1)

    def bend_rows(w: np.ndarray, s: np.ndarray) -> np.ndarray:
        """Spun bend at boundary spin points w (unit vectors of the model
        boundary) and bend angles s in [-pi/2, pi/2]."""
        w = np.atleast_2d(np.asarray(w, dtype=float))
        s = np.asarray(s, dtype=float)
        b, _ = disk.parametrization(w)
        x = b * (1.0 + bulge * np.cos(s))[:, None]
        y_rad = -3.0 * h * np.sin(s) * np.cos(s) / (end_radius * bulge)
        y = y_rad[:, None] * (b / end_radius)
        z = h * np.sin(s) ** 3
        return np.concatenate([x, y, z[:, None]], axis=1)

    top = disk_piece("top", n, top_rows, "xyz")
    bottom = disk_piece("bottom", n, bottom_rows, "xyz")
    bend = SpherePiece(
        "bend",
        lambda params: bend_rows(np.atleast_2d(params)[:, 1:],
                                 np.atleast_2d(params)[:, 0]),
        _bend_sampler(bend_rows, n),
        "xyz",
    )
    sphere = PiecewiseSphere(name=f"double[{disk.name}]", pieces=(top, bottom, bend))

    # seam gaps: bend ends against the two lifted boundaries
    if n == 1:
        spins = np.array([[1.0], [-1.0]])
    else:
        spins = sphere_grid(n - 1, 64)
    gap_top = np.max(np.abs(bend_rows(spins, np.full(len(spins), 0.5 * np.pi))
                            - top_rows(spins)))
    gap_bot = np.max(np.abs(bend_rows(spins, np.full(len(spins), -0.5 * np.pi))
                            - bottom_rows(spins)))

    # nonsingularity of the ambient transverse hypersurface over the band the
    # double occupies, before its flattening to {z = 0}
    xs = np.linspace(rho.delta, 1.0 - rho.delta, 101)
    ys = np.linspace(-h, h, 21)
    margin = float(np.min(w_rho_reeb_margin(*np.meshgrid(xs, ys), rho)))

    return DoubledSphere(
        sphere=sphere,
        dim=n,
        z_half=h,
        bulge=bulge,
        end_radius=end_radius,
        seam_gap=float(max(gap_top, gap_bot)),
        w_rho_margin=margin,
        bend_rows=bend_rows,
    )

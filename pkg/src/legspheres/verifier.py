"""Numerical certification engine.

Checks consume samplers (parametrized pieces with exact on-manifold curves)
and 1-form fields, and produce deterministic Reports. All residuals are
dimensionless: contracted values are divided by tangent norms and by the
pointwise norm of the form's coefficient covector, so one tolerance policy
works across models. Reductions are max/count only, so reports do not depend
on evaluation order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

import numpy as np

from .errors import ArgumentError

_DEGENERATE_NORM = 1e-10


@dataclass(frozen=True)
class CheckConfig:
    """Tolerance and sampling policy for one check.

    fd_step must sit in (1e-9, 1e-2) and tol must clear the second-order
    finite-difference floor 10*fd_step**2.
    """

    fd_step: float = 1e-5
    tol: float = 1e-6
    grid_sizes: Mapping[int, int] = field(
        default_factory=lambda: {1: 1000, 2: 1000, 3: 1000, 4: 1000}
    )
    collar: float = 1e-2
    seed: int = 0

    def __post_init__(self):
        if not (1e-9 < self.fd_step < 1e-2):
            raise ArgumentError(f"fd_step {self.fd_step} outside (1e-9, 1e-2)")
        if self.tol <= 10.0 * self.fd_step**2:
            raise ArgumentError(
                f"tol {self.tol} below finite-difference floor "
                f"{10.0 * self.fd_step ** 2}"
            )

    def size_for(self, dim: int) -> int:
        return int(self.grid_sizes.get(dim, 1000))

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


# Strict pullback identities of closed-form maps resolve below 1e-9; the
# default fd_step would sit exactly on the 10*h^2 floor, so they use a
# slightly finer step.
PULLBACK_CONFIG = CheckConfig(fd_step=5e-6, tol=1e-9)
MEMBERSHIP_TOL = 1e-9
LEGENDRIAN_CONFIG = CheckConfig(fd_step=1e-5, tol=1e-6)


@dataclass(frozen=True)
class Report:
    """Outcome of one named check. passed is equivalent to max_residual < tol."""

    name: str
    max_residual: float
    argmax: str
    samples: int
    tol: float
    passed: bool
    note: str = ""
    flagged: int = 0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "max_residual": float(self.max_residual),
            "argmax": self.argmax,
            "samples": int(self.samples),
            "tol": float(self.tol),
            "passed": bool(self.passed),
            "note": self.note,
            "flagged": int(self.flagged),
            "details": {k: _jsonable(v) for k, v in self.details.items()},
        }


def _jsonable(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, np.ndarray):
        return v.tolist()
    return v


def make_report(name, residuals, tol, argmax_labels=None, note="", flagged=0, details=None):
    """Reduce per-sample residuals to a Report (max + argmax only)."""
    residuals = np.asarray(residuals, dtype=float)
    if residuals.size == 0:
        return Report(name, 0.0, "no samples", 0, tol, True, note, flagged, details or {})
    idx = int(np.argmax(residuals))
    label = argmax_labels[idx] if argmax_labels is not None else f"sample {idx}"
    mx = float(residuals[idx])
    return Report(
        name, mx, str(label), int(residuals.size), tol, bool(mx < tol), note,
        flagged, details or {},
    )


def reports_to_json(reports, meta=None) -> str:
    payload = {"meta": meta or {}, "reports": [r.to_dict() for r in reports]}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


@dataclass(frozen=True)
class ContactForm:
    """A 1-form field on an ambient coordinate space, alpha(v) = coeffs(x) . v."""

    name: str
    coeffs: Callable[[np.ndarray], np.ndarray]

    def pair(self, points: np.ndarray, vectors: np.ndarray) -> np.ndarray:
        return np.sum(self.coeffs(points) * vectors, axis=-1)

    def scale(self, points: np.ndarray) -> np.ndarray:
        return np.linalg.norm(self.coeffs(points), axis=-1)


@dataclass(frozen=True)
class CurveSampler:
    """Sampled piece of a parametrized submanifold.

    sample(m, rng) returns an opaque batch of states; curve(states, i, h)
    evaluates, for each state, the point at parameter h along an exact
    on-manifold curve in the i-th parameter direction (h=0 is the base point).
    params(states) exposes parameter coordinates for injectivity distances.
    """

    name: str
    directions: int
    sample: Callable[[int, np.random.Generator], Any]
    curve: Callable[[Any, int, float], np.ndarray]
    params: Callable[[Any], np.ndarray] | None = None
    param_distance: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None

    def points(self, states) -> np.ndarray:
        return self.curve(states, 0, 0.0)


def pushforwards(sampler: CurveSampler, states, fd_step: float) -> np.ndarray:
    """Central-difference tangents along every direction, shape (dirs, m, D)."""
    out = []
    for i in range(sampler.directions):
        plus = sampler.curve(states, i, fd_step)
        minus = sampler.curve(states, i, -fd_step)
        out.append((plus - minus) / (2.0 * fd_step))
    return np.stack(out, axis=0)


def check_legendrian(
    sampler: CurveSampler,
    form: ContactForm,
    config: CheckConfig = LEGENDRIAN_CONFIG,
    rng: np.random.Generator | None = None,
) -> Report:
    """Max over samples and directions of |alpha(pushforward)|, normalized by
    the pushforward norm and the form scale. Degenerate pushforwards
    (norm < 1e-10) are flagged, excluded, and counted."""
    rng = config.rng() if rng is None else rng
    states = sampler.sample(config.size_for(sampler.directions), rng)
    pts = sampler.points(states)
    coeff_scale = np.maximum(form.scale(pts), 1e-300)
    push = pushforwards(sampler, states, config.fd_step)
    values = np.abs(np.sum(form.coeffs(pts)[None, :, :] * push, axis=-1))
    norms = np.linalg.norm(push, axis=-1)
    degenerate = norms < _DEGENERATE_NORM
    resid = np.where(degenerate, 0.0, values / np.maximum(norms, _DEGENERATE_NORM))
    resid = resid / coeff_scale[None, :]
    labels = [
        f"dir {i}, sample {j}"
        for i in range(resid.shape[0])
        for j in range(resid.shape[1])
    ]
    return make_report(
        f"legendrian[{sampler.name};{form.name}]",
        resid.ravel(),
        config.tol,
        argmax_labels=labels,
        flagged=int(np.count_nonzero(degenerate)),
    )


def check_pullback(
    mapping: Callable[[np.ndarray], np.ndarray],
    source_form: ContactForm,
    target_form: ContactForm,
    sampler: CurveSampler,
    mode: str = "strict",
    config: CheckConfig = PULLBACK_CONFIG,
    rng: np.random.Generator | None = None,
    name: str = "pullback",
) -> Report:
    """Compare map*(target) with source on sampled tangents.

    strict: max |target(Dmap v) - source(v)| normalized.
    conformal: max deviation of the ratio field target/source from pointwise
    constancy across sampled directions, plus positivity of the ratio.
    """
    if mode not in ("strict", "conformal"):
        raise ArgumentError(f"unknown pullback mode {mode!r}")
    rng = config.rng() if rng is None else rng
    states = sampler.sample(config.size_for(sampler.directions), rng)
    pts = sampler.points(states)
    h = config.fd_step
    v = pushforwards(sampler, states, h)
    v_push = []
    for i in range(sampler.directions):
        plus = mapping(sampler.curve(states, i, h))
        minus = mapping(sampler.curve(states, i, -h))
        v_push.append((plus - minus) / (2.0 * h))
    v_push = np.stack(v_push, axis=0)

    image_pts = mapping(pts)
    a = np.sum(source_form.coeffs(pts)[None, :, :] * v, axis=-1)
    b = np.sum(target_form.coeffs(image_pts)[None, :, :] * v_push, axis=-1)

    if mode == "strict":
        norms = np.maximum(np.linalg.norm(v, axis=-1), _DEGENERATE_NORM)
        scale = np.maximum(source_form.scale(pts), 1e-300)
        resid = np.abs(b - a) / (norms * scale[None, :])
        labels = [
            f"dir {i}, sample {j}"
            for i in range(resid.shape[0])
            for j in range(resid.shape[1])
        ]
        return make_report(
            f"{name}[strict]", resid.ravel(), config.tol, argmax_labels=labels
        )

    # conformal: cross-ratios a_i b_j - a_j b_i must vanish; ratio must be > 0.
    amax = np.maximum(np.max(np.abs(a), axis=0), _DEGENERATE_NORM)
    bmax = np.maximum(np.max(np.abs(b), axis=0), _DEGENERATE_NORM)
    m = a.shape[1]
    defect = np.zeros(m)
    for i in range(sampler.directions):
        for j in range(i + 1, sampler.directions):
            defect = np.maximum(defect, np.abs(a[i] * b[j] - a[j] * b[i]))
    defect = defect / (amax * bmax)
    ratio = np.sum(a * b, axis=0) / np.maximum(np.sum(a * a, axis=0), 1e-300)
    bad_sign = ratio <= 0.0
    resid = np.where(bad_sign, 1.0 + defect, defect)
    return make_report(
        f"{name}[conformal]",
        resid,
        config.tol,
        note=f"min ratio {float(np.min(ratio)):.3e}",
        details={"min_ratio": float(np.min(ratio))},
    )


def check_injectivity(
    sampler: CurveSampler,
    config: CheckConfig | None = None,
    eta_out: float = 1e-4,
    eta_in: float = 1e-1,
    rng: np.random.Generator | None = None,
) -> Report:
    """Flag sample pairs that are closer than eta_out in the image while
    farther than eta_in in parameters. Pass iff no pair is flagged."""
    config = config or CheckConfig(tol=0.5)
    rng = config.rng() if rng is None else rng
    states = sampler.sample(config.size_for(sampler.directions), rng)
    pts = sampler.points(states)
    if sampler.params is None:
        raise ArgumentError(f"sampler {sampler.name} exposes no parameters")
    pars = sampler.params(states)
    d_out = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
    if sampler.param_distance is not None:
        d_in = sampler.param_distance(pars, pars)
    else:
        d_in = np.linalg.norm(pars[:, None, :] - pars[None, :, :], axis=-1)
    offending = (d_out < eta_out) & (d_in > eta_in)
    count = int(np.count_nonzero(offending))
    if count:
        i, j = np.argwhere(offending)[0]
        argmax = f"pair params {pars[i].tolist()} / {pars[j].tolist()}"
    else:
        argmax = "none"
    return Report(
        name=f"injectivity[{sampler.name}]",
        max_residual=float(count),
        argmax=argmax,
        samples=pts.shape[0],
        tol=0.5,
        passed=count == 0,
        note=f"eta_out={eta_out}, eta_in={eta_in}",
        flagged=count,
    )


def continuity_modulus(
    family: Callable[[float, np.ndarray], np.ndarray],
    t_grid: np.ndarray,
    x_grid: np.ndarray,
    gap_tol: float = 1e-6,
    branch_step: float = 1e-14,
    name: str = "family",
) -> Report:
    """Empirical continuity data for a family (t, x) -> ambient point.

    Reports the max adjacent-step sup distance, the Lipschitz estimate
    sup(step/dt), and the one-sided gaps at t=0 taken with a tiny branch
    step; the gate is on the gaps (branch consistency at the t=0 switch).
    """
    t_grid = np.asarray(t_grid, dtype=float)
    steps = []
    lips = []
    prev = family(t_grid[0], x_grid)
    for k in range(1, t_grid.size):
        cur = family(t_grid[k], x_grid)
        d = float(np.max(np.linalg.norm(cur - prev, axis=-1)))
        steps.append(d)
        lips.append(d / max(abs(t_grid[k] - t_grid[k - 1]), 1e-300))
        prev = cur
    gap_plus = gap_minus = 0.0
    if t_grid.min() <= 0.0 <= t_grid.max():
        base = family(0.0, x_grid)
        gap_plus = float(np.max(np.linalg.norm(family(branch_step, x_grid) - base, axis=-1)))
        gap_minus = float(np.max(np.linalg.norm(family(-branch_step, x_grid) - base, axis=-1)))
    modulus = max(steps) if steps else 0.0
    lipschitz = max(lips) if lips else 0.0
    gap = max(gap_plus, gap_minus)
    return Report(
        name=f"continuity[{name}]",
        max_residual=gap,
        argmax=f"t->0 gap (+{gap_plus:.3e}/-{gap_minus:.3e})",
        samples=t_grid.size * np.asarray(x_grid).shape[0],
        tol=gap_tol,
        passed=bool(gap < gap_tol and np.isfinite(modulus) and np.isfinite(lipschitz)),
        note=f"modulus {modulus:.3e}, empirical Lipschitz {lipschitz:.3e}",
        details={"modulus": modulus, "lipschitz": lipschitz,
                 "gap_plus": gap_plus, "gap_minus": gap_minus},
    )

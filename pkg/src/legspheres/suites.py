"""Named check suites over the geometry modules, consumed by the CLI.

Every check returns a Report; a suite is deterministic for a fixed seed.
Negative controls are reported as threshold/measured so the Report invariant
(pass iff max_residual < tol) carries over: the control passes when the
corrupted input makes its checker fire loudly.
"""

from __future__ import annotations

import numpy as np

from . import constructions as con
from . import isotopy as iso
from . import jetspace as js
from . import openbook as ob
from . import pages as pg
from . import surgery as sg
from .grids import disk_grid, sphere_grid
from .verifier import (
    CheckConfig,
    Report,
    check_injectivity,
    check_legendrian,
    check_pullback,
    continuity_modulus,
)

LEGENDRIAN_TOL = 1e-6
PULLBACK_STRICT_TOL = 1e-9
CHART_TOL = 1e-7
MEMBERSHIP_TOL = 1e-9
NEGATIVE_THRESHOLD = 1e-2


def negative_control_report(name: str, measured: float,
                            threshold: float = NEGATIVE_THRESHOLD) -> Report:
    ratio = threshold / max(measured, 1e-300)
    return Report(
        name=f"{name}[negative-control]",
        max_residual=float(ratio),
        argmax=f"measured {measured:.3e}",
        samples=1,
        tol=1.0,
        passed=bool(ratio < 1.0),
        note="reported as threshold/measured; pass means the checker fired",
    )


def _legendrian_cfg(n: int, m: int = 1000, tol: float = LEGENDRIAN_TOL) -> CheckConfig:
    return CheckConfig(fd_step=1e-5, tol=tol, grid_sizes={k: m for k in range(1, 8)})


def _pullback_cfg(tol: float, m: int = 1000) -> CheckConfig:
    return CheckConfig(fd_step=5e-6, tol=tol, grid_sizes={k: m for k in range(1, 8)})


def suite_jet(n: int, eps: float, seed: int = 0, grid_points: int = 1000) -> list[Report]:
    del eps
    reports = []
    grid = sphere_grid(n, grid_points)
    fields = js.standard_fields(n)
    grad_worst = max(f.check_gradient(grid).max_residual for f in fields)
    reports.append(Report(
        name=f"jet.gradient_consistency(n={n})",
        max_residual=grad_worst, argmax="max over fields", tol=1e-6,
        samples=len(fields) * len(grid), passed=grad_worst < 1e-6,
    ))
    worst = 0.0
    for f in fields:
        rep = js.verify_jet_lift_legendrian(f, grid, tol=LEGENDRIAN_TOL)
        worst = max(worst, rep.max_residual)
    reports.append(Report(
        name=f"jet.lift_legendrian(n={n})",
        max_residual=worst, argmax="max over 10 fields", tol=LEGENDRIAN_TOL,
        samples=len(fields) * len(grid) * n, passed=worst < LEGENDRIAN_TOL,
    ))
    ortho = 0.0
    for f in fields:
        rows = js.jet_lift_batch(f, grid)
        _, q, p = sg.split_jet(rows)
        ortho = max(ortho, float(np.max(np.abs(np.sum(p * q, axis=1)))))
    reports.append(Report(
        name=f"jet.lift_orthogonality(n={n})",
        max_residual=ortho, argmax="max over fields", tol=1e-12,
        samples=len(fields) * len(grid), passed=ortho < 1e-12,
    ))
    bad = js.corrupted_gradient_field(js.coordinate_field(0))
    rep = js.verify_jet_lift_legendrian(bad, grid, tol=LEGENDRIAN_TOL)
    reports.append(negative_control_report(
        f"jet.corrupted_gradient(n={n})", rep.max_residual))
    return reports


def suite_surgery(n: int, eps: float, seed: int = 0) -> list[Report]:
    reports = []
    rng = np.random.default_rng(seed)
    profiles = sg.standard_profiles(eps)

    # Liouville identity d(iota_X omega) = omega: the induced 1-form is
    # linear, so central differences of its exterior derivative are exact.
    pts = rng.standard_normal((10, 2 * n + 2))
    form = sg.surgery_contact_form(n)
    h = 1e-4
    worst = 0.0
    dim = 2 * n + 2
    for i in range(dim):
        for j in range(i + 1, dim):
            ei = np.zeros(dim)
            ej = np.zeros(dim)
            ei[i] = h
            ej[j] = h
            dcoeff_i = (form.coeffs(pts + ei) - form.coeffs(pts - ei)) / (2 * h)
            dcoeff_j = (form.coeffs(pts + ej) - form.coeffs(pts - ej)) / (2 * h)
            d_alpha = dcoeff_i[:, j] - dcoeff_j[:, i]
            # omega(e_i, e_j) = +1 when (i, j) = (z_k, w_k), else 0
            expected = 1.0 if j == i + n + 1 and i < n + 1 else 0.0
            worst = max(worst, float(np.max(np.abs(d_alpha - expected))))
    reports.append(Report(
        name=f"surgery.liouville_identity(n={n})", max_residual=worst,
        argmax="coordinate 2-planes", samples=10 * dim * (dim - 1) // 2,
        tol=1e-8, passed=worst < 1e-8,
    ))

    jets = sg.random_jet_sampler(n)
    reports.append(check_pullback(
        sg.psi_w_rows, js.jet_contact_form(n), form, jets, "strict",
        _pullback_cfg(PULLBACK_STRICT_TOL), rng=np.random.default_rng(seed),
        name=f"surgery.psi_w_pullback(n={n})"))

    states = jets.sample(1000, np.random.default_rng(seed))
    J = jets.points(states)
    rt = sg.psi_w_inv_rows(sg.psi_w_rows(J))
    r1 = float(np.max(np.abs(rt - J)))
    reports.append(Report(
        name=f"surgery.psi_w_roundtrip(n={n})", max_residual=r1,
        argmax="sup norm", samples=len(J), tol=1e-12, passed=r1 < 1e-12))

    cyl = sg.s1st_sampler(n, eps)
    reports.append(check_pullback(
        lambda r: sg.psi_rows(r, eps), form, js.jet_contact_form(n), cyl,
        "conformal", _pullback_cfg(1e-8), rng=np.random.default_rng(seed),
        name=f"surgery.psi_conformal(n={n},eps={eps})"))

    states = cyl.sample(1000, np.random.default_rng(seed + 1))
    P = cyl.points(states)
    r2 = float(np.max(np.abs(sg.psi_inv_rows(sg.psi_rows(P, eps), eps) - P)))
    reports.append(Report(
        name=f"surgery.psi_roundtrip(n={n})", max_residual=r2,
        argmax="sup norm", samples=len(P), tol=1e-10, passed=r2 < 1e-10))

    # endpoint identities of the composed chart maps
    root = np.sqrt(1.0 + eps)
    Q = sphere_grid(n, 600)
    Qc = Q[Q[:, -1] <= -eps]
    ce = np.concatenate([np.full((len(Qc), 1), root), Qc, np.zeros_like(Qc)], axis=1)
    img = sg.psi_rows(sg.psi_w_rows(ce), eps)
    want = np.concatenate([np.full((len(Qc), 1), 2.0), -Qc, np.zeros_like(Qc)], axis=1)
    e1 = float(np.max(np.abs(img - want)))
    Ql = Q[Q[:, -1] >= eps]
    l2 = np.concatenate([np.full((len(Ql), 1), -root), Ql, np.zeros_like(Ql)], axis=1)
    img2 = sg.psi_rows(sg.psi_w_rows(l2), eps)
    want2 = np.concatenate([np.full((len(Ql), 1), -2.0), Ql, np.zeros_like(Ql)], axis=1)
    e2 = float(np.max(np.abs(img2 - want2)))
    reports.append(Report(
        name=f"surgery.endpoint_identities(eps={eps})",
        max_residual=max(e1, e2), argmax="core/flat caps",
        samples=len(Qc) + len(Ql), tol=1e-12, passed=max(e1, e2) < 1e-12))

    # profile invariants on a scan of [0, 2]
    xs = np.linspace(0.0, 2.0, 10000)
    f, g = profiles.f(xs), profiles.g(xs)
    bad = 0.0
    bad = max(bad, float(np.max(np.abs(f[xs <= 1 - eps] - 1.0))))
    bad = max(bad, float(np.max(np.abs(f[xs >= 1 - eps / 2] - (xs[xs >= 1 - eps / 2] + eps)))))
    bad = max(bad, float(np.max(np.abs(g[xs <= 1.0] - xs[xs <= 1.0]))))
    bad = max(bad, float(np.max(np.abs(g[xs >= 1 + eps] - (1 + eps)))))
    bad = max(bad, float(max(0.0, -np.min(profiles.f_d1(xs[xs >= 1 - eps])))))
    inside = (xs > 0) & (xs < 1 + eps)
    bad = max(bad, float(max(0.0, -np.min(profiles.g_d1(xs[inside])))))
    reports.append(Report(
        name=f"surgery.profile_invariants(eps={eps})", max_residual=bad,
        argmax="scan of [0,2]", samples=xs.size, tol=1e-12, passed=bad < 1e-12))

    # common zero set of the two memberships = {|w|=1, |z|^2 >= 1+eps}:
    # on |w| = 1 the handle membership vanishes iff |z|^2 >= 1+eps (up to the
    # flat C^2 tail of the transition, excluded by a thin band)
    zhat = rng.standard_normal((4000, n + 1))
    zhat /= np.linalg.norm(zhat, axis=1, keepdims=True)
    z2_scan = rng.uniform(0.0, 2.0, 4000)
    band = np.abs(z2_scan - (1.0 + eps)) > 1e-3
    ws = rng.standard_normal((4000, n + 1))
    ws /= np.linalg.norm(ws, axis=1, keepdims=True)
    rows = np.concatenate([np.sqrt(z2_scan)[:, None] * zhat, ws], axis=1)
    on_s1 = np.abs(sg.membership_rows(rows, sg.S_1, profiles)) < 1e-9
    in_locus = sg.membership_rows(rows, sg.S_INTERSECTION, profiles) < 1e-9
    mism = int(np.count_nonzero((on_s1 != in_locus) & band))
    # locus points satisfy both memberships exactly
    z_loc = zhat * np.sqrt(1.0 + eps + rng.uniform(0.0, 0.5, 4000))[:, None]
    rows_loc = np.concatenate([z_loc, ws], axis=1)
    worst_loc = float(np.max(np.maximum(
        np.abs(sg.membership_rows(rows_loc, sg.S_MINUS_1, profiles)),
        np.abs(sg.membership_rows(rows_loc, sg.S_1, profiles)))))
    reports.append(Report(
        name=f"surgery.intersection_zero_set(eps={eps})",
        max_residual=float(mism) + worst_loc, argmax="scan",
        samples=8000, tol=MEMBERSHIP_TOL, passed=mism == 0 and worst_loc < MEMBERSHIP_TOL))

    # corner locus maps onto the intersection
    q_loc = sphere_grid(n, 500)
    p_loc = rng.standard_normal((len(q_loc), n + 1))
    p_loc -= np.sum(p_loc * q_loc, axis=1, keepdims=True) * q_loc
    theta = rng.uniform(0, 2 * np.pi, len(q_loc))
    p_norm = np.linalg.norm(p_loc, axis=1, keepdims=True)
    p_loc = p_loc / np.maximum(p_norm, 1e-12) * np.abs(np.sin(theta))[:, None]
    z_loc2 = 2.0 * np.cos(theta)
    jet_rows = np.concatenate([z_loc2[:, None], q_loc, p_loc], axis=1)
    img = sg.psi_inv_rows(jet_rows, eps)
    resid = float(np.max(sg.membership_rows(img, sg.S_INTERSECTION, profiles)))
    reports.append(Report(
        name=f"surgery.boundary_locus(eps={eps})", max_residual=resid,
        argmax="z^2/4+|p|^2=1 samples", samples=len(q_loc), tol=1e-10,
        passed=resid < 1e-10))

    # transversality of the interpolating hypersurfaces to the dilation
    worst_margin = np.inf
    for t in (0.0, 0.25, 0.5, 0.75, 1.0):
        sl = sg.s1t_family(t, profiles)
        pts_t = sl.sample_on_surface(1000, n, seed)
        worst_margin = min(worst_margin, float(np.min(sl.transversality_margin(pts_t))))
    reports.append(Report(
        name=f"surgery.s1t_transversality(eps={eps})",
        max_residual=1e-3 / worst_margin, argmax=f"min margin {worst_margin:.4f}",
        samples=5000, tol=1.0, passed=worst_margin > 1e-3,
        note="reported as tol/margin",
    ))

    scaled = lambda rows: 2.0 * sg.psi_w_rows(rows)
    rep = check_pullback(scaled, js.jet_contact_form(n), form, jets, "strict",
                         _pullback_cfg(PULLBACK_STRICT_TOL),
                         rng=np.random.default_rng(seed), name="scaled")
    reports.append(negative_control_report(
        f"surgery.scaled_map(n={n})", rep.max_residual, threshold=0.5))
    return reports


def suite_chart(n: int, eps: float, seed: int = 0) -> list[Report]:
    reports = []
    rng = np.random.default_rng(seed)
    smp = pg.chart_domain_sampler(n)
    states = smp.sample(1000, rng)
    J = smp.points(states)
    rt = float(np.max(np.abs(pg.page_chart_inv_rows(pg.page_chart_rows(J)) - J)))
    fwd = pg.page_chart_rows(J)
    rt2 = float(np.max(np.abs(pg.page_chart_rows(pg.page_chart_inv_rows(fwd)) - fwd)))
    reports.append(Report(
        name=f"chart.roundtrip(n={n})", max_residual=max(rt, rt2),
        argmax="both directions", samples=len(J), tol=1e-10,
        passed=max(rt, rt2) < 1e-10))

    reports.append(check_pullback(
        pg.page_chart_rows, pg.canonical_one_form(n), pg.xy_one_form(n), smp,
        "strict", _pullback_cfg(CHART_TOL), rng=np.random.default_rng(seed),
        name=f"chart.symplecto(n={n})"))

    z, q, p = sg.split_jet(J)
    p_unit = p / np.linalg.norm(p, axis=1, keepdims=True)
    rows = pg.page_chart_rows(np.concatenate([z[:, None], q, p_unit], axis=1))
    bvals = pg.b_rows(rows[:, 1 : n + 1], rows[:, n + 1 :])
    b_res = float(np.max(np.abs(bvals - 1.0)))
    reports.append(Report(
        name=f"chart.unit_covector_to_b1(n={n})", max_residual=b_res,
        argmax="|p|=1 image", samples=len(J), tol=1e-10, passed=b_res < 1e-10))

    b_nonneg = float(-np.min(pg.b_rows(rng.standard_normal((4000, n)),
                                       rng.standard_normal((4000, n)))))
    reports.append(Report(
        name=f"chart.b_nonnegative(n={n})", max_residual=max(0.0, b_nonneg),
        argmax="random scan", samples=4000, tol=1e-15,
        passed=b_nonneg <= 0.0))

    rho = pg.CutoffRho()
    uncovered = overlap_missing = nest_bad = 0
    for t in (0.05, 0.15, 0.25, 0.35, 0.45):
        res = pg.nu_coverage_scan(t, rho, 8000, n=1, rng=seed)
        uncovered += res["uncovered"]
        overlap_missing += int(res["overlap"] == 0)
    x1 = rng.uniform(-1, 1, (2000, 1))
    y1 = rng.uniform(-1, 1, (2000, 1))
    for t1, t2 in ((0.05, 0.15), (0.15, 0.3), (0.3, 0.45)):
        inside1 = pg.nu_t_rows(x1, y1, t1, rho, pg.NU_CORE) <= 0
        r2 = pg.nu_t_rows(x1, y1, t2, rho, pg.NU_CORE)
        nest_bad += int(np.count_nonzero(inside1 & (r2 > 1e-12)))
    reports.append(Report(
        name="chart.nu_sweep(coverage+nesting)",
        max_residual=float(uncovered + overlap_missing + nest_bad),
        argmax="scan counts", samples=5 * 8000 + 3 * 2000, tol=0.5,
        passed=(uncovered + overlap_missing + nest_bad) == 0))

    x0 = rng.uniform(-1, 1, (1000, n))
    y0 = rng.uniform(-1, 1, (1000, n))
    xf, yf, tf, sf = pg.glue_F(x0, y0, 0.25, 0.5)
    x2, y2, t2_, s2 = pg.glue_F(xf, yf, tf, sf)
    invol = max(
        float(np.max(np.abs(x2 + x0))), float(np.max(np.abs(y2 + y0))),
        abs(t2_ - 0.25), abs(s2 - 0.5),
        float(np.max(np.abs(pg.b_rows(yf, xf) - pg.b_rows(x0, y0)))),
        float(np.max(np.abs(pg.b_rows(xf, yf) - pg.b_rows(y0, x0)))),
    )
    reports.append(Report(
        name="chart.glue_rotation", max_residual=invol,
        argmax="involution + b swap", samples=1000, tol=1e-12,
        passed=invol < 1e-12))

    prof = pg.BindingProfiles()
    ys = np.linspace(-1.0, 1.0, 11)
    rs = np.linspace(0.3, 0.9, 11)
    Y, R = np.meshgrid(ys, rs)
    det = np.abs(pg.binding_contact_det(Y.ravel(), R.ravel(), prof))
    reports.append(Report(
        name="chart.binding_contact_window", max_residual=1e-6 / float(np.min(det)),
        argmax=f"min |det| {float(np.min(det)):.3e} on r in [0.3, 0.9]",
        samples=det.size, tol=1.0, passed=float(np.min(det)) > 1e-6,
        note="reported as tol/|det|",
    ))

    rep = check_pullback(
        pg.corrupted_chart_rows, pg.canonical_one_form(n), pg.xy_one_form(n),
        smp, "strict", _pullback_cfg(CHART_TOL), rng=np.random.default_rng(seed),
        name="corrupted")
    reports.append(negative_control_report(
        f"chart.corrupted_chart(n={n})", rep.max_residual))
    return reports


def suite_isotopy(n: int, eps: float, seed: int = 0,
                  t_points: int = iso.T_GRID_POINTS) -> list[Report]:
    reports = []
    params = iso.IsotopyParams(eps=eps, n=n)
    family = iso.disk_family(params)
    outer = iso.build_H_family(eps, n=n)
    form = js.jet_contact_form(n)
    grid = iso.t_grid(t_points)
    rngs = np.random.default_rng(seed)

    worst_leg = 0.0
    for t in grid:
        rep = check_legendrian(family.slice_sampler(float(t)), form,
                               _legendrian_cfg(n, 1000 // 2), rng=rngs)
        worst_leg = max(worst_leg, rep.max_residual)
    reports.append(Report(
        name=f"isotopy.disk_legendrian(n={n},eps={eps})", max_residual=worst_leg,
        argmax="max over t grid", samples=t_points * 500 * n,
        tol=LEGENDRIAN_TOL, passed=worst_leg < LEGENDRIAN_TOL))

    xb = np.random.default_rng(seed).standard_normal((256, n))
    xb /= np.linalg.norm(xb, axis=1, keepdims=True)
    worst_corner = worst_keps = worst_pbb = 0.0
    for t in grid:
        b = iso.boundary_D_rows(float(t), xb, params)
        z, q, p = sg.split_jet(b)
        p2 = np.sum(p * p, axis=1)
        worst_keps = max(worst_keps, float(np.max(np.abs(p2 - (1 - t * t)))))
        worst_corner = max(worst_corner, float(np.max(np.abs(0.25 * z * z + p2 - 1.0))))
        pbb = iso.pulled_back_boundary_rows(float(t), xb, params)
        comp = iso.composed_pullback_rows(float(t), xb, params)
        worst_pbb = max(worst_pbb, float(np.max(np.abs(pbb - comp))))
    reports.append(Report(
        name=f"isotopy.boundary_closure(eps={eps})", max_residual=worst_keps,
        argmax="sum p^2 = 1-t^2", samples=t_points * 256, tol=MEMBERSHIP_TOL,
        passed=worst_keps < MEMBERSHIP_TOL))
    reports.append(Report(
        name=f"isotopy.corner_locus(eps={eps})", max_residual=worst_corner,
        argmax="z^2/4 + |p|^2 = 1", samples=t_points * 256, tol=MEMBERSHIP_TOL,
        passed=worst_corner < MEMBERSHIP_TOL))
    reports.append(Report(
        name=f"isotopy.pullback_two_paths(eps={eps})", max_residual=worst_pbb,
        argmax="closed form vs composed charts", samples=t_points * 256,
        tol=1e-10, passed=worst_pbb < 1e-10))

    X = disk_grid(n, 600, rng=np.random.default_rng(seed))
    rows1 = family.eval_batch(1.0, X)
    z, q, p = sg.split_jet(rows1)
    e_plus = max(
        float(np.max(np.abs(z - 2.0))), float(np.max(np.abs(p))),
        float(max(0.0, eps - np.min(q[:, -1]))))
    rows_m = family.eval_batch(-1.0, X)
    z, q, p = sg.split_jet(rows_m)
    e_minus = max(
        float(np.max(np.abs(z + 2.0))), float(np.max(np.abs(p))),
        float(max(0.0, eps - np.min(q[:, -1]))))
    reports.append(Report(
        name=f"isotopy.endpoint_disks(eps={eps})", max_residual=max(e_plus, e_minus),
        argmax="t=+1 / t=-1", samples=2 * len(X), tol=1e-12,
        passed=max(e_plus, e_minus) < 1e-12))

    reports.append(continuity_modulus(
        family.eval_batch, grid, X[:200], gap_tol=1e-6,
        name=f"inner_disk(n={n},eps={eps})"))

    worst_bv = worst_bs = worst_mismatch = 0.0
    excl = np.inf
    for t in grid:
        prof = iso.HProfile(float(t), params)
        dv, ds = prof.boundary_residuals()
        worst_bv = max(worst_bv, abs(dv))
        worst_bs = max(worst_bs, abs(ds))
        sph = iso.assemble_sphere(float(t), params, outer=outer)
        worst_mismatch = max(worst_mismatch, sph.boundary_mismatch(128, rng=seed))
        excl = min(excl, sph.exclusion_margin(512, rng=seed))
    reports.append(Report(
        name=f"isotopy.profile_boundary_data(eps={eps})",
        max_residual=max(worst_bv, worst_bs), argmax="value/slope at the seam",
        samples=2 * t_points, tol=MEMBERSHIP_TOL,
        passed=max(worst_bv, worst_bs) < MEMBERSHIP_TOL))
    reports.append(Report(
        name=f"isotopy.exclusion_inequality(eps={eps})",
        max_residual=max(0.0, -excl), argmax=f"min margin {excl:.3e}",
        samples=t_points * 512, tol=MEMBERSHIP_TOL, passed=excl > -MEMBERSHIP_TOL))
    reports.append(Report(
        name=f"isotopy.assemble_boundary_match(eps={eps})",
        max_residual=worst_mismatch, argmax="seam sup over t grid",
        samples=t_points * 128, tol=1e-8, passed=worst_mismatch < 1e-8))

    worst_outer_leg = 0.0
    for t in np.linspace(-1, 1, 11):
        rep = check_legendrian(outer.slice_sampler(float(t)), form,
                               _legendrian_cfg(n, 500), rng=rngs)
        worst_outer_leg = max(worst_outer_leg, rep.max_residual)
    reports.append(Report(
        name=f"isotopy.outer_legendrian(eps={eps})", max_residual=worst_outer_leg,
        argmax="11 t slices", samples=11 * 500 * n, tol=LEGENDRIAN_TOL,
        passed=worst_outer_leg < LEGENDRIAN_TOL))

    stab = con.s_stab_model(eps, n)
    join = con.s_join_model(eps, n)
    from .surgery import psi_inv_rows, psi_w_inv_rows

    X2 = disk_grid(n, 400, rng=np.random.default_rng(seed + 3))
    d_stab = max(
        float(np.max(np.abs(stab.piece("cap").eval_batch(X2)
                            - outer.eval_batch(1.0, X2)))),
        float(np.max(np.abs(stab.piece("core").eval_batch(X2)
                            - psi_w_inv_rows(psi_inv_rows(
                                family.eval_batch(1.0, X2), eps))))))
    d_join = max(
        float(np.max(np.abs(join.piece("jet").eval_batch(X2)
                            - outer.eval_batch(-1.0, X2)))),
        float(np.max(np.abs(join.piece("flat").eval_batch(X2)
                            - psi_w_inv_rows(psi_inv_rows(
                                family.eval_batch(-1.0, X2), eps))))))
    reports.append(Report(
        name=f"isotopy.sweep_endpoints_vs_models(eps={eps})",
        max_residual=max(d_stab, d_join), argmax="stab(+1) / join(-1)",
        samples=4 * len(X2), tol=1e-9, passed=max(d_stab, d_join) < 1e-9))

    rep = continuity_modulus(
        iso.mis_signed_disk_family(params).eval_batch, grid, X[:100],
        name="mis-signed")
    reports.append(negative_control_report(
        "isotopy.mis_signed_branch", rep.max_residual, threshold=1e-1))
    return reports


def suite_constructions(n: int, eps: float, seed: int = 0) -> list[Report]:
    reports = []
    xy_form = con.xy_contact_form(n)
    rng = np.random.default_rng(seed)

    mer = con.spun_meridian_rows(n, 801)
    closure = con.front_closure_gap(mer, n)
    folds = con.count_meridian_folds(mer, np.eye(n)[0], n)
    rep = check_legendrian(con.spun_unknot_sampler(n), xy_form,
                           _legendrian_cfg(max(n, 1)), rng=rng)
    reports.append(Report(
        name=f"constructions.spun_front(n={n})",
        max_residual=max(closure, rep.max_residual, float(abs(folds - 2))),
        argmax=f"closure {closure:.1e}, legendrian {rep.max_residual:.1e}, folds {folds}",
        samples=rep.samples + len(mer), tol=LEGENDRIAN_TOL,
        passed=closure < 1e-9 and rep.passed and folds == 2))

    dbl = con.lambda_double(con.flat_disk(n))
    mer_d = dbl.meridian_rows(800)
    closure_d = con.front_closure_gap(mer_d, n)
    folds_d = con.count_meridian_folds(mer_d, np.eye(n)[0], n)
    worst_leg = 0.0
    for piece in dbl.sphere.pieces:
        repp = check_legendrian(piece.sampler, xy_form, _legendrian_cfg(n, 500),
                                rng=rng)
        worst_leg = max(worst_leg, repp.max_residual)
    reports.append(Report(
        name=f"constructions.double_flat_disk(n={n})",
        max_residual=max(closure_d, dbl.seam_gap, worst_leg, float(abs(folds_d - 2))),
        argmax=f"seam {dbl.seam_gap:.1e}, folds {folds_d}",
        samples=len(mer_d), tol=LEGENDRIAN_TOL,
        passed=closure_d < 1e-9 and dbl.seam_gap < 1e-9
        and worst_leg < LEGENDRIAN_TOL and folds_d == 2))

    z_spun = np.max(np.abs(mer[:, -1]))
    z_dbl = np.max(np.abs(mer_d[:, -1]))
    norm_gap = abs(z_spun / con.SPUN_AMPLITUDE - z_dbl / dbl.z_half)
    reports.append(Report(
        name=f"constructions.front_extrema_match(n={n})", max_residual=norm_gap,
        argmax="normalized |z| extrema", samples=len(mer) + len(mer_d),
        tol=1e-6, passed=norm_gap < 1e-6 and folds == folds_d))

    rho = con.RhoProfile()
    xs = np.linspace(rho.delta + 1e-3, 1.0 - rho.delta - 1e-3, 200)
    ys = np.linspace(-1.0, 1.0, 41)
    margin = float(np.min(con.w_rho_reeb_margin(*np.meshgrid(xs, ys), rho)))
    straight = abs(con.w_rho_surface(0.5, 0.8, rho) - (-(1 - 0.5) * 0.8))
    reports.append(Report(
        name="constructions.w_rho", max_residual=straight,
        argmax=f"straight part; margin {margin:.3f}", samples=xs.size * ys.size,
        tol=1e-12, passed=straight < 1e-12 and margin > 0.0))

    stab = con.s_stab_model(eps, n)
    pts = stab.sample_points(500, rng=seed)
    _, _, p = sg.split_jet(pts)
    flatness = float(np.max(np.abs(p)))
    z_gap = float(np.max(np.abs(pts[:, 0] - np.sqrt(1 + eps))))
    reports.append(Report(
        name=f"constructions.stab_flat(eps={eps})",
        max_residual=max(flatness, z_gap), argmax="p == 0 and constant height",
        samples=len(pts), tol=1e-12, passed=max(flatness, z_gap) < 1e-12))

    params = iso.IsotopyParams(eps=eps, n=n)
    outer = iso.build_H_family(eps, n=n)
    inj_bad = 0
    for t in np.linspace(-1, 1, 11):
        sph = iso.assemble_sphere(float(t), params, outer=outer)
        for smp in (sph.outer_sampler(), sph.inner_sampler()):
            repi = check_injectivity(smp, CheckConfig(
                tol=0.5, grid_sizes={n: 400}), rng=np.random.default_rng(seed))
            inj_bad += repi.flagged
    reports.append(Report(
        name=f"constructions.sphere_injectivity(eps={eps})",
        max_residual=float(inj_bad), argmax="pairs over 11 t slices",
        samples=11 * 2 * 400, tol=0.5, passed=inj_bad == 0))

    repf = check_injectivity(figure_eight_sampler(),
                             CheckConfig(tol=0.5, grid_sizes={1: 600}),
                             rng=np.random.default_rng(seed))
    reports.append(negative_control_report(
        "constructions.figure_eight", float(repf.flagged), threshold=0.5))
    return reports


def figure_eight_sampler() -> "CurveSampler":
    """Immersed negative control for the injectivity checker."""
    from .verifier import CurveSampler

    def fig8(states, i, h):
        s = states + (h if i == 0 else 0.0)
        return np.stack([np.sin(2 * s), np.sin(s)], axis=1)

    return CurveSampler(
        name="figure-eight", directions=1,
        sample=lambda m, r: np.linspace(0.0, 2 * np.pi, m, endpoint=False),
        curve=fig8, params=lambda s: s[:, None],
        param_distance=lambda a, b: np.minimum(
            np.abs(a[:, None, 0] - b[None, :, 0]),
            2 * np.pi - np.abs(a[:, None, 0] - b[None, :, 0])),
    )


def suite_openbook() -> list[Report]:
    reports = []
    book = ob.OpenBookDesc(page=ob.PageDesc("D^{2n}", n=2), disks=(("L", True),))
    st = ob.stabilize(book, "L")
    ok = (st.page.recognized_model == "D(T*S^n)"
          and st.monodromy.canonical() == "+tw(L+core)"
          and len(st.page.handles) == 1)
    reports.append(Report(
        name="openbook.stabilize_trivial_book", max_residual=0.0 if ok else 1.0,
        argmax=st.canonical(), samples=1, tol=0.5, passed=ok))

    s2 = ob.surgery_rewrite(ob.surgery_rewrite(st, "L+core", +1), "L+core", -1)
    ok2 = s2.monodromy.free_reduce().canonical() == st.monodromy.canonical()
    reports.append(Report(
        name="openbook.surgery_free_reduction", max_residual=0.0 if ok2 else 1.0,
        argmax=s2.monodromy.canonical(), samples=1, tol=0.5, passed=ok2))

    prof = ob.TwistProfile()
    q = np.array([0.0, 0.0, 1.0])
    qq, pp = ob.dehn_twist_map(q, np.zeros(3), prof)
    q2, p2 = ob.dehn_twist_map(qq, pp, prof)
    invol = max(float(np.max(np.abs(qq + q))), float(np.max(np.abs(q2 - q))),
                float(np.max(np.abs(pp))), float(np.max(np.abs(p2))))
    p_out = np.array([1.2, 0.0, 0.0])
    q3, p3 = ob.dehn_twist_map(q, p_out, prof)
    ident = max(float(np.max(np.abs(q3 - q))), float(np.max(np.abs(p3 - p_out))))
    reports.append(Report(
        name="openbook.twist_core_involution", max_residual=max(invol, ident),
        argmax="antipode on the core, identity outside the support",
        samples=2, tol=1e-12, passed=max(invol, ident) < 1e-12))

    glued = ob.glue_relative(ob.shifted_ball_fixture(), ob.sphere_complement_fixture())
    ok3 = all(p.domain == "D(T*S^n)" for p in glued.pages) and glued.monodromy == "tau(S0)"
    reports.append(Report(
        name="openbook.glue_fixtures", max_residual=0.0 if ok3 else 1.0,
        argmax=glued.canonical(), samples=1, tol=0.5, passed=ok3))
    return reports


SUITES = {
    "jet": lambda n, eps, seed: suite_jet(n, eps, seed),
    "surgery": lambda n, eps, seed: suite_surgery(n, eps, seed),
    "chart": lambda n, eps, seed: suite_chart(n, eps, seed),
    "isotopy": lambda n, eps, seed: suite_isotopy(n, eps, seed),
    "constructions": lambda n, eps, seed: suite_constructions(n, eps, seed),
    "openbook": lambda n, eps, seed: suite_openbook(),
}


def run_suite(name: str, n: int, eps: float, seed: int = 0) -> list[Report]:
    if name == "all":
        out = []
        for key in ("jet", "surgery", "chart", "isotopy", "constructions", "openbook"):
            out.extend(SUITES[key](n, eps, seed))
        return out
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](n, eps, seed)

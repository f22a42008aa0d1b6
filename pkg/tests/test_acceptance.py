"""Acceptance criteria, one test per criterion, each at its stated tolerance.

Every test prints one PASS/FAIL line (visible with -s or in captured output)
and the two time-boxed criteria assert their wall-clock budgets.
"""

import time

import numpy as np

from legspheres import constructions as con
from legspheres import isotopy as iso
from legspheres import jetspace as js
from legspheres import openbook as ob
from legspheres import pages as pg
from legspheres import surgery as sg
from legspheres.cli import main as cli_main
from legspheres.grids import disk_grid, sphere_grid
from legspheres.suites import figure_eight_sampler
from legspheres.verifier import (
    CheckConfig,
    check_injectivity,
    check_legendrian,
    check_pullback,
    continuity_modulus,
)


def report(name: str, ok: bool, detail: str = ""):
    print(f"ACCEPTANCE {'PASS' if ok else 'FAIL'}: {name}"
          + (f" ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


def test_jet_lift_legendrian_suite():
    start = time.perf_counter()
    worst = 0.0
    for n in (1, 2, 3):
        grid = sphere_grid(n, 1000)
        assert len(grid) >= 1000 - 100
        fields = js.standard_fields(n)
        assert len(fields) == 10
        for f in fields:
            rep = js.verify_jet_lift_legendrian(f, grid, tol=1e-6)
            worst = max(worst, rep.max_residual)
    control = js.verify_jet_lift_legendrian(
        js.corrupted_gradient_field(js.coordinate_field(0)), sphere_grid(2, 500))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-6 and control.max_residual > 1e-2 and elapsed < 30.0
    report("jet-lift Legendrian suite", ok,
           f"residual {worst:.2e}, control {control.max_residual:.2e}, "
           f"{elapsed:.1f}s")


def test_round_model_chart_identities():
    worst_pull = 0.0
    for n in (1, 2, 3):
        rep = check_pullback(
            sg.psi_w_rows, js.jet_contact_form(n), sg.surgery_contact_form(n),
            sg.random_jet_sampler(n), "strict",
            CheckConfig(fd_step=5e-6, tol=1e-9, grid_sizes={2 * n + 1: 1000}))
        worst_pull = max(worst_pull, rep.max_residual)
    eps = 0.1
    root = np.sqrt(1 + eps)
    worst_endpoint = 0.0
    for n in (1, 2, 3):
        q = sphere_grid(n, 600)
        core = q[q[:, -1] <= -eps]
        rows = np.concatenate(
            [np.full((len(core), 1), root), core, np.zeros_like(core)], axis=1)
        img = sg.psi_rows(sg.psi_w_rows(rows), eps)
        want = np.concatenate(
            [np.full((len(core), 1), 2.0), -core, np.zeros_like(core)], axis=1)
        worst_endpoint = max(worst_endpoint, float(np.max(np.abs(img - want))))
        flat = q[q[:, -1] >= eps]
        rows = np.concatenate(
            [np.full((len(flat), 1), -root), flat, np.zeros_like(flat)], axis=1)
        img = sg.psi_rows(sg.psi_w_rows(rows), eps)
        want = np.concatenate(
            [np.full((len(flat), 1), -2.0), flat, np.zeros_like(flat)], axis=1)
        worst_endpoint = max(worst_endpoint, float(np.max(np.abs(img - want))))
    ok = worst_pull < 1e-9 and worst_endpoint < 1e-12
    report("round-model strict pullback + composed endpoint identities", ok,
           f"pullback {worst_pull:.2e}, endpoints {worst_endpoint:.2e}")


def test_page_chart_symplectomorphism():
    worst = 0.0
    worst_b = 0.0
    for n in (1, 2, 3):
        smp = pg.chart_domain_sampler(n)
        rep = check_pullback(
            pg.page_chart_rows, pg.canonical_one_form(n), pg.xy_one_form(n),
            smp, "strict", CheckConfig(fd_step=5e-6, tol=1e-7,
                                       grid_sizes={2 * n: 1000}))
        worst = max(worst, rep.max_residual)
        rows = smp.points(smp.sample(1000, np.random.default_rng(0)))
        z, q, p = sg.split_jet(rows)
        p = p / np.linalg.norm(p, axis=1, keepdims=True)
        chart = pg.page_chart_rows(np.concatenate([z[:, None], q, p], axis=1))
        b = pg.b_rows(chart[:, 1 : n + 1], chart[:, n + 1 :])
        worst_b = max(worst_b, float(np.max(np.abs(b - 1.0))))
    ok = worst < 1e-7 and worst_b < 1e-10
    report("page-chart symplectomorphism + unit covector level", ok,
           f"pullback {worst:.2e}, b defect {worst_b:.2e}")


def test_boundary_normalization_closure():
    worst = 0.0
    xb = np.random.default_rng(0).standard_normal((256, 2))
    xb /= np.linalg.norm(xb, axis=1, keepdims=True)
    for eps in (0.05, 0.1, 0.2):
        params = iso.IsotopyParams(eps=eps, n=2)
        for t in iso.t_grid(101):
            rows = iso.boundary_D_rows(float(t), xb, params)
            _, _, p = sg.split_jet(rows)
            worst = max(worst, float(np.max(np.abs(
                np.sum(p * p, axis=1) - (1.0 - t * t)))))
    ok = worst < 1e-9
    report("boundary covector closure sum p^2 = 1 - t^2", ok, f"{worst:.2e}")


def test_isotopy_family():
    start = time.perf_counter()
    n, eps = 2, 0.1
    params = iso.IsotopyParams(eps=eps, n=n)
    family = iso.disk_family(params)
    form = js.jet_contact_form(n)
    grid = iso.t_grid(101)
    rng = np.random.default_rng(0)

    worst_leg = 0.0
    for t in grid:
        rep = check_legendrian(family.slice_sampler(float(t)), form,
                               CheckConfig(grid_sizes={n: 1000}), rng=rng)
        worst_leg = max(worst_leg, rep.max_residual)

    xb = np.random.default_rng(1).standard_normal((256, n))
    xb /= np.linalg.norm(xb, axis=1, keepdims=True)
    worst_corner = worst_paths = 0.0
    for t in grid:
        b = iso.boundary_D_rows(float(t), xb, params)
        z, _, p = sg.split_jet(b)
        worst_corner = max(worst_corner, float(np.max(np.abs(
            0.25 * z * z + np.sum(p * p, axis=1) - 1.0))))
        worst_paths = max(worst_paths, float(np.max(np.abs(
            iso.pulled_back_boundary_rows(float(t), xb, params)
            - iso.composed_pullback_rows(float(t), xb, params)))))

    X = disk_grid(n, 600, rng=np.random.default_rng(2))
    rows = family.eval_batch(1.0, X)
    z, q, p = sg.split_jet(rows)
    top_err = max(float(np.max(np.abs(z - 2.0))), float(np.max(np.abs(p))))
    core = sg.psi_w_inv_rows(sg.psi_inv_rows(rows, eps))
    zc, qc, pc = sg.split_jet(core)
    top_err = max(top_err,
                  float(np.max(np.abs(zc - np.sqrt(1 + eps)))),
                  float(np.max(np.abs(pc))),
                  float(np.max(qc[:, -1]) - (-eps)) if np.max(qc[:, -1]) > -eps else 0.0)
    rows = family.eval_batch(-1.0, X)
    z, q, p = sg.split_jet(rows)
    bot_err = max(float(np.max(np.abs(z + 2.0))), float(np.max(np.abs(p))))
    flat = sg.psi_w_inv_rows(sg.psi_inv_rows(rows, eps))
    zf, qf, pf = sg.split_jet(flat)
    bot_err = max(bot_err,
                  float(np.max(np.abs(zf + np.sqrt(1 + eps)))),
                  float(np.max(np.abs(pf))),
                  float(eps - np.min(qf[:, -1])) if np.min(qf[:, -1]) < eps else 0.0)

    gap_rep = continuity_modulus(family.eval_batch, grid, X[:200])
    elapsed = time.perf_counter() - start
    ok = (worst_leg < 1e-6 and worst_corner < 1e-9
          and max(top_err, bot_err) < 1e-12 and gap_rep.max_residual < 1e-6
          and worst_paths < 1e-10 and elapsed < 120.0)
    report("sweep family: Legendrian, corner locus, endpoints, branch gap, "
           "two-path boundary", ok,
           f"leg {worst_leg:.2e}, corner {worst_corner:.2e}, "
           f"endpoints {max(top_err, bot_err):.2e}, gap {gap_rep.max_residual:.2e}, "
           f"paths {worst_paths:.2e}, {elapsed:.1f}s")


def test_generating_family():
    n, eps = 2, 0.1
    params = iso.IsotopyParams(eps=eps, n=n)
    outer = iso.build_H_family(eps, n=n)
    grid = iso.t_grid(101)
    worst_bc = worst_mismatch = 0.0
    excl = np.inf
    for t in grid:
        prof = iso.HProfile(float(t), params)
        dv, ds = prof.boundary_residuals()
        worst_bc = max(worst_bc, abs(dv), abs(ds))
        sph = iso.assemble_sphere(float(t), params, outer=outer)
        worst_mismatch = max(worst_mismatch, sph.boundary_mismatch(128))
        excl = min(excl, sph.exclusion_margin(1024))

    X = disk_grid(n, 500, rng=np.random.default_rng(3))
    stab = con.s_stab_model(eps, n)
    join = con.s_join_model(eps, n)
    fam = iso.disk_family(params)
    d_models = max(
        float(np.max(np.abs(stab.piece("cap").eval_batch(X)
                            - outer.eval_batch(1.0, X)))),
        float(np.max(np.abs(stab.piece("core").eval_batch(X)
                            - sg.psi_w_inv_rows(sg.psi_inv_rows(
                                fam.eval_batch(1.0, X), eps))))),
        float(np.max(np.abs(join.piece("jet").eval_batch(X)
                            - outer.eval_batch(-1.0, X)))),
        float(np.max(np.abs(join.piece("flat").eval_batch(X)
                            - sg.psi_w_inv_rows(sg.psi_inv_rows(
                                fam.eval_batch(-1.0, X), eps))))))
    ok = (worst_bc < 1e-9 and excl > -1e-9 and worst_mismatch < 1e-8
          and d_models < 1e-9)
    report("generating family: boundary data, exclusion inequality, seam "
           "match, endpoint models", ok,
           f"bc {worst_bc:.2e}, excl margin {excl:.2e}, "
           f"mismatch {worst_mismatch:.2e}, models {d_models:.2e}")


def test_figure_reproduction(tmp_path):
    out = tmp_path / "plots.csv"
    code = cli_main(["export-plots", "--eps", "0.1", "--format", "csv",
                     "--out", str(out)])
    rows = {}
    for line in out.read_text().strip().splitlines()[1:]:
        t, q, s = (float(v) for v in line.split(","))
        rows[t] = (q, s)
    anchors = {1.0: (-0.1, 0.0), 0.0: (0.0, 1.0), -1.0: (0.1, 0.0)}
    worst = max(abs(rows[t][0] - a) + abs(rows[t][1] - b)
                for t, (a, b) in anchors.items())
    ok = code == 0 and worst < 1e-12
    report("figure reproduction (data level)", ok, f"anchor defect {worst:.2e}")


def test_constructions():
    worst_close = 0.0
    folds = []
    worst_leg = 0.0
    n = 2
    mer = con.spun_meridian_rows(n, 801)
    worst_close = max(worst_close, con.front_closure_gap(mer, n))
    folds.append(con.count_meridian_folds(mer, np.eye(n)[0], n))
    rep = check_legendrian(con.spun_unknot_sampler(n), con.xy_contact_form(n),
                           CheckConfig(grid_sizes={n: 1000}))
    worst_leg = max(worst_leg, rep.max_residual)

    dbl = con.lambda_double(con.flat_disk(n))
    mer_d = dbl.meridian_rows(800)
    worst_close = max(worst_close, con.front_closure_gap(mer_d, n), dbl.seam_gap)
    folds.append(con.count_meridian_folds(mer_d, np.eye(n)[0], n))
    for piece in dbl.sphere.pieces:
        repp = check_legendrian(piece.sampler, con.xy_contact_form(n),
                                CheckConfig(grid_sizes={n: 600}))
        worst_leg = max(worst_leg, repp.max_residual)

    rho = con.RhoProfile()
    xs = np.linspace(rho.delta + 1e-3, 1 - rho.delta - 1e-3, 200)
    ys = np.linspace(-1, 1, 41)
    margin = float(np.min(con.w_rho_reeb_margin(*np.meshgrid(xs, ys), rho)))
    ok = (worst_close < 1e-9 and worst_leg < 1e-6
          and folds[0] == folds[1] == 2 and margin > 0.0)
    report("constructions: closures, Legendrian residuals, fold counts, "
           "transversality margin", ok,
           f"close {worst_close:.2e}, leg {worst_leg:.2e}, folds {folds}, "
           f"margin {margin:.3f}")


def test_openbook_algebra():
    book = ob.OpenBookDesc(page=ob.PageDesc("D^{2n}", n=2), disks=(("L", True),))
    st_book = ob.stabilize(book, "L")
    golden_ok = st_book.page.recognized_model == "D(T*S^n)" \
        and st_book.monodromy.canonical() == "+tw(L+core)"

    import pathlib

    golden_dir = pathlib.Path(__file__).parent / "golden"
    stable = (st_book.canonical()
              == (golden_dir / "stabilize_trivial.txt").read_text().strip())
    seq = ob.surgery_rewrite(ob.surgery_rewrite(st_book, "L+core"), "L+core", -1)
    stable = stable and (
        seq.canonical()
        == (golden_dir / "surgery_sequence.txt").read_text().strip())

    q = np.array([0.0, 0.0, 1.0])
    q1, p1 = ob.dehn_twist_map(q, np.zeros(3))
    q2, p2 = ob.dehn_twist_map(q1, p1)
    invol = np.allclose(q1, -q) and np.allclose(q2, q) and np.allclose(p2, 0.0)
    p_out = np.array([1.1, 0.0, 0.0])
    q3, p3 = ob.dehn_twist_map(q, p_out)
    ident = np.allclose(q3, q) and np.allclose(p3, p_out)
    ok = golden_ok and stable and invol and ident
    report("open-book algebra: stabilization descriptor, stable goldens, "
           "twist local checks", ok)


def test_negative_controls():
    failures = {}

    rep = js.verify_jet_lift_legendrian(
        js.corrupted_gradient_field(js.coordinate_field(0)), sphere_grid(2, 500))
    failures["corrupted gradient"] = rep.max_residual > 1e-2

    smp = pg.chart_domain_sampler(2)
    rep = check_pullback(pg.corrupted_chart_rows, pg.canonical_one_form(2),
                         pg.xy_one_form(2), smp, "strict",
                         CheckConfig(fd_step=5e-6, tol=1e-7))
    failures["corrupted chart"] = rep.max_residual > 1e-2

    rep = check_pullback(lambda r: 2.0 * sg.psi_w_rows(r),
                         js.jet_contact_form(2), sg.surgery_contact_form(2),
                         sg.random_jet_sampler(2), "strict",
                         CheckConfig(fd_step=5e-6, tol=1e-9))
    failures["scaled chart map"] = rep.max_residual > 1e-2

    repi = check_injectivity(figure_eight_sampler(),
                             CheckConfig(tol=0.5, grid_sizes={1: 600}))
    failures["figure eight"] = repi.flagged > 0

    params = iso.IsotopyParams(eps=0.1, n=2)
    X = disk_grid(2, 150, rng=np.random.default_rng(0))
    repc = continuity_modulus(iso.mis_signed_disk_family(params).eval_batch,
                              iso.t_grid(), X)
    failures["mis-signed branch"] = repc.max_residual > 1e-2

    ok = all(failures.values())
    report("negative controls all fire", ok, str(failures))

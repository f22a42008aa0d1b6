import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legspheres import pages as pg
from legspheres.errors import ArgumentError, DomainError
from legspheres.verifier import CheckConfig, check_pullback

FINITE = st.floats(-2.0, 2.0)


class TestChart:
    def test_pole_maps_to_origin(self):
        row = np.concatenate([[0.7], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])[None, :]
        out = pg.page_chart_rows(row)[0]
        assert out[0] == 0.7
        assert np.allclose(out[1:], 0.0)

    def test_circle_example(self):
        # n=1: q=(0,1), p=(1,0): x = q2 p1 = 1, y = q1/q2 = 0
        row = np.array([[0.5, 0.0, 1.0, 1.0, 0.0]])
        out = pg.page_chart_rows(row)[0]
        assert np.allclose(out, [0.5, 1.0, 0.0])

    def test_domain_error_on_wrong_hemisphere(self):
        row = np.concatenate([[0.0], [0.0, 0.0, -1.0], np.zeros(3)])[None, :]
        with pytest.raises(DomainError):
            pg.page_chart_rows(row)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_roundtrip_both_ways(self, n, rng):
        smp = pg.chart_domain_sampler(n)
        rows = smp.points(smp.sample(1000, rng))
        fwd = pg.page_chart_rows(rows)
        assert np.max(np.abs(pg.page_chart_inv_rows(fwd) - rows)) < 1e-10
        assert np.max(np.abs(pg.page_chart_rows(pg.page_chart_inv_rows(fwd)) - fwd)) < 1e-10

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_symplectomorphism(self, n, rng):
        smp = pg.chart_domain_sampler(n)
        rep = check_pullback(
            pg.page_chart_rows, pg.canonical_one_form(n), pg.xy_one_form(n),
            smp, "strict", CheckConfig(fd_step=5e-6, tol=1e-7), rng=rng,
            name=f"chart(n={n})")
        assert rep.passed, rep

    def test_symplecto_single_point_oracle(self):
        # independent check of x.dy(pushforward) == p.dq(v) at one point
        q0 = np.array([0.6, 0.0, 0.8])
        p0 = np.array([0.0, 1.0, 0.0]) * 0.3
        b = np.array([0.8, 0.0, -0.6])  # unit tangent at q0
        h = 1e-6

        def state(t):
            q = np.cos(t) * q0 + np.sin(t) * b
            p = p0 - (p0 @ q) * q
            return q, p

        def chart(t):
            q, p = state(t)
            return q[-1] * p[:2], q[:2] / q[-1]

        (x1, y1), (x2, y2) = chart(h), chart(-h)
        x0, y0 = chart(0.0)
        lhs = float(x0 @ (y1 - y2) / (2 * h))
        (qa, pa), (qb, pb) = state(h), state(-h)
        rhs = float(p0 @ (qa - qb) / (2 * h))
        assert abs(lhs - rhs) < 1e-9

    def test_corrupted_chart_fails_loudly(self, rng):
        smp = pg.chart_domain_sampler(2)
        rep = check_pullback(
            pg.corrupted_chart_rows, pg.canonical_one_form(2), pg.xy_one_form(2),
            smp, "strict", CheckConfig(fd_step=5e-6, tol=1e-7), rng=rng)
        assert rep.max_residual > 1e-2


class TestBFunction:
    def test_zero_slope_gives_square_norm(self, rng):
        x = rng.standard_normal((50, 2))
        assert np.max(np.abs(pg.b_rows(x, np.zeros_like(x))
                             - np.sum(x * x, axis=1))) < 1e-15

    def test_zero_x_gives_zero(self, rng):
        y = rng.standard_normal((50, 2))
        assert np.max(np.abs(pg.b_rows(np.zeros_like(y), y))) == 0.0

    def test_nonnegative_and_vanishes_only_on_core(self, rng):
        x = rng.standard_normal((5000, 2))
        y = rng.standard_normal((5000, 2))
        b = pg.b_rows(x, y)
        assert np.min(b) >= 0.0
        away = np.linalg.norm(x, axis=1) > 1e-3
        assert np.min(b[away]) > 0.0

    def test_unit_covector_sphere_hits_level_one(self, rng):
        smp = pg.chart_domain_sampler(2)
        rows = smp.points(smp.sample(1000, rng))
        q, p = rows[:, 1:4], rows[:, 4:]
        p = p / np.linalg.norm(p, axis=1, keepdims=True)
        chart = pg.page_chart_rows(np.concatenate([rows[:, :1], q, p], axis=1))
        b = pg.b_rows(chart[:, 1:3], chart[:, 3:])
        assert np.max(np.abs(b - 1.0)) < 1e-10

    def test_b_fn_scalar(self):
        assert abs(pg.b_fn(np.array([1.0]), np.array([0.0])) - 1.0) < 1e-15


class TestNeighbourhoods:
    def test_core_points_inside_for_all_t(self):
        pt = pg.PagePoint(np.array([0.2]), np.array([0.0]), on_page=True)
        for t in (0.05, 0.2, 0.45):
            assert pg.nu_t(pt, t, pg.ConstantRho(1.0), pg.NU_CORE) <= 0.0

    def test_symmetric_points_inside_core_for_positive_t(self, rng):
        for _ in range(20):
            x = rng.uniform(-0.5, 0.5, 1)
            pt = pg.PagePoint(x, x.copy())
            for t in (0.01, 0.1, 0.4):
                assert pg.nu_t(pt, t, pg.ConstantRho(1.0), pg.NU_CORE) <= 0.0

    def test_sweep_parameter_validated(self):
        pt = pg.PagePoint(np.array([0.1]), np.array([0.0]))
        with pytest.raises(ArgumentError):
            pg.nu_t(pt, 0.7, pg.ConstantRho(1.0), pg.NU_CORE)
        with pytest.raises(ArgumentError):
            pg.nu_t(pt, 0.2, pg.ConstantRho(1.0), "??")

    def test_coverage_scan_with_overlap(self):
        for t in (0.05, 0.25, 0.45):
            res = pg.nu_coverage_scan(t, pg.CutoffRho(), 20000, n=1)
            assert res["points"] > 1000
            assert res["uncovered"] == 0
            assert res["overlap"] > 0

    def test_nesting_in_t(self, rng):
        x = rng.uniform(-1, 1, (3000, 1))
        y = rng.uniform(-1, 1, (3000, 1))
        rho = pg.CutoffRho()
        inside_small = pg.nu_t_rows(x, y, 0.1, rho, pg.NU_CORE) <= 0
        bigger = pg.nu_t_rows(x, y, 0.3, rho, pg.NU_CORE)
        assert not np.any(inside_small & (bigger > 1e-12))

    def test_on_page_tag_validated(self):
        with pytest.raises(ArgumentError):
            pg.PagePoint(np.array([2.0]), np.array([0.0]), on_page=True)

    def test_far_side_point_needs_the_transported_neighbourhood(self):
        # the same-chart union misses bidisk points with b(y,x) >> b(x,y)
        # for every cutoff value; carrying the boundary neighbourhood through
        # the regluing rotation covers them, which is what the coverage scan
        # certifies
        x, y = np.array([[0.263]]), np.array([[0.837]])
        assert pg.b_rows(x, y)[0] < 0.25 and pg.b_rows(y, x)[0] > 0.75
        for t in (0.05, 0.25, 0.45):
            for rho in (pg.ConstantRho(0.0), pg.ConstantRho(1.0), pg.CutoffRho()):
                assert pg.nu_t_rows(x, y, t, rho, pg.NU_CORE)[0] > 0
                assert pg.nu_t_rows(x, y, t, rho, pg.NU_BOUNDARY)[0] > 0
            xf, yf, _, _ = pg.glue_F(x, y, 0.0, 0.0)
            assert pg.nu_t_rows(xf, yf, t, pg.CutoffRho(), pg.NU_BOUNDARY)[0] <= 0


class TestCutoff:
    def test_range_and_endpoints(self, rng):
        rho = pg.CutoffRho()
        x = rng.standard_normal((2000, 2)) * 2
        y = rng.standard_normal((2000, 2)) * 2
        v = rho.value_rows(x, y)
        assert np.min(v) >= 0.0 and np.max(v) <= 1.0
        assert rho.value(np.array([0.1, 0.0]), np.array([0.0, 0.0])) == 0.0

    def test_monotone_along_rays(self, rng):
        rho = pg.CutoffRho()
        for _ in range(30):
            x = rng.standard_normal(2)
            y = rng.standard_normal(2)
            scales = np.linspace(0.1, 3.0, 40)
            vals = [rho.value(s * x, s * y) for s in scales]
            assert np.all(np.diff(vals) >= -1e-12)


class TestBeta:
    def test_values(self):
        assert pg.beta(0.0) == 0.0
        assert abs(pg.beta(0.25) - 0.5) < 1e-15
        assert abs(pg.beta(0.5)) < 1e-15
        assert abs(pg.beta(0.75) + 0.5) < 1e-15


class TestGlueRotation:
    def test_basic_image(self):
        x, y, t, s = pg.glue_F(np.array([0.3]), np.array([0.0]), 0.0, 0.0)
        assert np.allclose(x, 0.0) and np.allclose(y, 0.3)
        assert t == 0.5 and s == 0.0

    @given(x0=FINITE, y0=FINITE, t0=st.floats(0, 1), s0=st.floats(-1, 1))
    @settings(max_examples=50, deadline=None)
    def test_involution_up_to_page_shift(self, x0, y0, t0, s0):
        x = np.array([x0])
        y = np.array([y0])
        x1, y1, t1, s1 = pg.glue_F(x, y, t0, s0)
        x2, y2, t2, s2 = pg.glue_F(x1, y1, t1, s1)
        assert np.allclose(x2, -x) and np.allclose(y2, -y)
        assert abs((t2 - t0) % 1.0) < 1e-12 or abs((t2 - t0) % 1.0 - 1.0) < 1e-12
        assert s2 == s0

    def test_b_levels_swap(self, rng):
        x = rng.standard_normal((1000, 2))
        y = rng.standard_normal((1000, 2))
        xf, yf, _, _ = pg.glue_F(x, y, 0.0, 0.0)
        assert np.max(np.abs(pg.b_rows(xf, yf) - pg.b_rows(y, x))) < 1e-12
        assert np.max(np.abs(pg.b_rows(yf, xf) - pg.b_rows(x, y))) < 1e-12


class TestBindingForm:
    def test_page_boundary_values(self):
        prof = pg.BindingProfiles()
        x = np.array([0.4, 0.1])
        v = (np.zeros(2), np.array([1.0, 2.0]), 0.0, 3.0)
        # r=1, s=0: h1 = h2 = 1: reduces to x.dy + dt
        got = pg.binding_form(x, np.zeros(2), 1.0, v, prof, s=0.0)
        assert abs(got - (x @ v[1] + 3.0)) < 1e-15

    def test_dt_direction(self):
        prof = pg.BindingProfiles()
        got = pg.binding_form(np.array([1.0]), np.array([0.0]), 0.5,
                              (np.zeros(1), np.zeros(1), 0.0, 1.0), prof)
        assert abs(got - prof.h2(0.5)) < 1e-15

    def test_profile_invariants(self):
        prof = pg.BindingProfiles()
        assert prof.h1(1.0) == 1.0
        assert prof.h2(1.0) == 1.0
        assert prof.h2(0.0) > 0.0
        rs = np.linspace(0.0, 1.0, 101)
        assert np.all(np.hypot(prof.h1(rs), prof.h2(rs)) > 0.0)
        assert np.max(np.abs(prof.h1(rs[rs <= 0.25]))) == 0.0

    def test_dimension_mismatch(self):
        prof = pg.BindingProfiles()
        with pytest.raises(ArgumentError):
            pg.binding_form(np.array([1.0, 0.0]), np.zeros(2), 0.5,
                            (np.zeros(1), np.zeros(2), 0.0, 1.0), prof)

    def test_contact_determinant_fd_wedge_oracle(self):
        # oracle: alpha ^ d(alpha) on the frame (curve tangent, d_r, d_t) of
        # the binding {b = 1}, with d(alpha) on the constant frame computed by
        # finite differences in the point parameters (y, r): the curve tangent
        # moves y, d_r moves r, d_t moves nothing alpha depends on.
        prof = pg.BindingProfiles()
        h = 1e-6
        v1 = (1.0, 0.0, 0.0)  # (dy, dr, dt) components; dx is slaved to dy
        v2 = (0.0, 1.0, 0.0)
        v3 = (0.0, 0.0, 1.0)

        def alpha(y, r, v):
            dy, _, dt = v
            x = 1.0 / (1.0 + y * y)
            return prof.h1(r) * x * dy + prof.h2(r) * dt

        def d_dy(fn, y, r):
            return (fn(y + h, r) - fn(y - h, r)) / (2 * h)

        def d_dr(fn, y, r):
            return (fn(y, r + h) - fn(y, r - h)) / (2 * h)

        worst_offset = 0.0
        for y in np.linspace(-1, 1, 7):
            for r in np.linspace(0.3, 0.9, 7):
                dal_12 = d_dy(lambda a, b: alpha(a, b, v2), y, r) \
                    - d_dr(lambda a, b: alpha(a, b, v1), y, r)
                dal_13 = d_dy(lambda a, b: alpha(a, b, v3), y, r)
                dal_23 = d_dr(lambda a, b: alpha(a, b, v3), y, r)
                det = (alpha(y, r, v1) * dal_23
                       - alpha(y, r, v2) * dal_13
                       + alpha(y, r, v3) * dal_12)
                assert abs(det) > 1e-6
                got = pg.binding_contact_det(np.array([y]), np.array([r]), prof)[0]
                worst_offset = max(worst_offset, abs(det - got))
        assert worst_offset < 1e-6

    def test_determinant_window_bound(self):
        prof = pg.BindingProfiles()
        Y, R = np.meshgrid(np.linspace(-1, 1, 20), np.linspace(0.3, 0.9, 20))
        det = pg.binding_contact_det(Y.ravel(), R.ravel(), prof)
        assert np.min(np.abs(det)) > 1e-6

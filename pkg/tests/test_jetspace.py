import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legspheres import jetspace as js
from legspheres.errors import ArgumentError, DomainError
from legspheres.grids import sphere_grid


def e(i, d=3):
    v = np.zeros(d)
    v[i] = 1.0
    return v


class TestTypes:
    def test_sphere_point_validates(self):
        js.SpherePoint(np.array([0.0, 1.0]))
        with pytest.raises(ArgumentError):
            js.SpherePoint(np.array([0.0, 1.0 + 1e-6]))

    def test_jet_point_validates_orthogonality(self):
        q = js.SpherePoint(e(2))
        js.JetPoint(0.0, q, np.array([1.0, 0.0, 0.0]))
        with pytest.raises(ArgumentError):
            js.JetPoint(0.0, q, np.array([0.0, 0.0, 1e-6]))

    def test_tangent_sample_validates_linearized_constraints(self):
        pt = js.JetPoint.of(0.0, e(2), e(0))
        js.TangentSample(pt, 1.0, e(1), np.zeros(3))
        with pytest.raises(ArgumentError):
            js.TangentSample(pt, 0.0, e(2), np.zeros(3))  # dq not tangent
        with pytest.raises(ArgumentError):
            js.TangentSample(pt, 0.0, e(0), np.zeros(3))  # dp.q + p.dq != 0

    def test_projected_enforces_constraints_exactly(self):
        rng = np.random.default_rng(0)
        pt = js.JetPoint.of(0.3, e(2), 0.7 * e(0))
        v = js.TangentSample.projected(pt, 0.1, rng.standard_normal(3),
                                       rng.standard_normal(3))
        q, p = pt.q_vec, pt.p
        assert abs(v.dq @ q) < 1e-15
        assert abs(v.dp @ q + p @ v.dq) < 1e-15

    def test_vector_roundtrip(self):
        pt = js.JetPoint.of(0.5, e(1), e(0) * 0.2)
        assert js.JetPoint.from_vector(pt.vector()).z == pt.z


class TestContactForm:
    def test_dz_direction_with_zero_p(self):
        pt = js.JetPoint.of(0.0, e(2), np.zeros(3))
        v = js.TangentSample(pt, 1.0, np.zeros(3), np.zeros(3))
        assert js.contact_form_j1(pt, v) == 1.0

    def test_q_direction_with_zero_p(self):
        pt = js.JetPoint.of(0.0, e(2), np.zeros(3))
        v = js.TangentSample(pt, 0.0, e(0), np.zeros(3))
        assert js.contact_form_j1(pt, v) == 0.0

    def test_q_direction_pairs_with_p(self):
        # direct evaluation: p.dq = e1.e1 = 1
        pt = js.JetPoint.of(0.0, e(2), e(0))
        v = js.TangentSample.projected(pt, 0.0, e(0), np.zeros(3))
        assert abs(js.contact_form_j1(pt, v) - 1.0) < 1e-15

    def test_rejects_foreign_base(self):
        pt = js.JetPoint.of(0.0, e(2), np.zeros(3))
        other = js.JetPoint.of(1.0, e(2), np.zeros(3))
        v = js.TangentSample(other, 1.0, np.zeros(3), np.zeros(3))
        with pytest.raises(ArgumentError):
            js.contact_form_j1(pt, v)

    @given(a=st.floats(-5, 5), b=st.floats(-5, 5))
    @settings(max_examples=40, deadline=None)
    def test_linearity(self, a, b):
        rng = np.random.default_rng(7)
        pt = js.JetPoint.of(0.2, e(2), 0.4 * e(1) + 0.1 * e(0))
        v1 = js.TangentSample.projected(pt, 0.3, rng.standard_normal(3),
                                        rng.standard_normal(3))
        v2 = js.TangentSample.projected(pt, -1.1, rng.standard_normal(3),
                                        rng.standard_normal(3))
        combo = js.TangentSample(pt, a * v1.dz + b * v2.dz,
                                 a * v1.dq + b * v2.dq, a * v1.dp + b * v2.dp)
        lhs = js.contact_form_j1(pt, combo)
        rhs = a * js.contact_form_j1(pt, v1) + b * js.contact_form_j1(pt, v2)
        assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(lhs), abs(rhs))


class TestJetLift:
    def test_constant_field(self):
        f = js.constant_field(2.5)
        pt = js.jet_lift(f, js.SpherePoint(e(2)))
        assert pt.z == 2.5
        assert np.all(pt.p == 0.0)

    def test_last_coordinate_at_pole(self):
        # gradient is e_{n+1}; at the pole the tangential part vanishes
        f = js.coordinate_field(2)
        pt = js.jet_lift(f, js.SpherePoint(e(2)))
        assert pt.z == 1.0
        assert np.max(np.abs(pt.p)) < 1e-15

    def test_first_coordinate_on_circle(self):
        f = js.coordinate_field(0)
        pt = js.jet_lift(f, js.SpherePoint(np.array([0.0, 1.0])))
        assert pt.z == 0.0
        assert np.allclose(pt.p, [-1.0, 0.0])
        assert abs(pt.p @ pt.q_vec) < 1e-15

    def test_orthogonality_reprojected(self):
        grid = sphere_grid(2, 500)
        for f in js.standard_fields(2):
            rows = js.jet_lift_batch(f, grid)
            q, p = rows[:, 1:4], rows[:, 4:]
            assert np.max(np.abs(np.sum(p * q, axis=1))) < 1e-12

    def test_domain_error(self):
        f = js.ScalarField(
            value=lambda q: np.asarray(q)[..., -1],
            gradient=lambda q: js._unit_gradient(q, -1),
            domain=lambda q: np.asarray(q)[..., -1] > 0.5,
        )
        with pytest.raises(DomainError):
            js.jet_lift(f, js.SpherePoint(np.array([1.0, 0.0, 0.0])))


class TestGradientChecks:
    def test_declared_gradients_match_local_fd_oracle(self):
        # independent oracle: ambient central differences, written here
        grid = sphere_grid(2, 100)
        h = 1e-5
        for f in js.standard_fields(2):
            fd = np.empty((len(grid), 3))
            for i in range(3):
                step = np.zeros(3)
                step[i] = h
                fd[:, i] = (f.value(grid + step) - f.value(grid - step)) / (2 * h)
            assert np.max(np.abs(fd - f.gradient(grid))) < 1e-6

    def test_check_gradient_passes_and_fails(self):
        grid = sphere_grid(1, 64)
        good = js.coordinate_field(0)
        assert good.check_gradient(grid).passed
        bad = js.corrupted_gradient_field(good)
        assert not bad.check_gradient(grid).passed


class TestLegendrianVerifier:
    def test_zero_section_exact(self):
        rep = js.verify_jet_lift_legendrian(js.constant_field(0.0),
                                            sphere_grid(2, 200))
        assert rep.max_residual < 1e-12

    def test_height_field_within_fd_tolerance(self):
        rep = js.verify_jet_lift_legendrian(js.coordinate_field(2),
                                            sphere_grid(2, 1000))
        assert rep.passed
        assert rep.max_residual < 1e-6

    def test_corrupted_gradient_fails_loudly(self):
        bad = js.corrupted_gradient_field(js.coordinate_field(0))
        rep = js.verify_jet_lift_legendrian(bad, sphere_grid(2, 500))
        assert rep.max_residual > 1e-2

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_all_standard_fields(self, n):
        grid = sphere_grid(n, 1000)
        for f in js.standard_fields(n):
            rep = js.verify_jet_lift_legendrian(f, grid)
            assert rep.passed, (n, f.name, rep.max_residual)

    def test_mirrored_sign_convention_is_equally_consistent(self):
        # the global convention pairs alpha = dz + p.dq with the lift
        # p = -grad_tan(f); the mirrored pair (dz - p.dq, p = +grad_tan(f))
        # is the same Legendrian condition under p -> -p, and flipping only
        # one side breaks it
        from legspheres.verifier import CheckConfig, ContactForm, check_legendrian

        n, f = 2, js.standard_fields(2)[6]
        sampler = js.jet_lift_sampler(f, n)

        def mirrored_coeffs(x):
            x = np.atleast_2d(x)
            c = np.zeros_like(x)
            c[:, 0] = 1.0
            c[:, 1 : n + 2] = -x[:, n + 2 :]
            return c

        mirrored = ContactForm("dz-p.dq", mirrored_coeffs)

        def flip_p(states, inner):
            rows = inner(states)
            rows = rows.copy()
            rows[:, n + 2 :] = -rows[:, n + 2 :]
            return rows

        flipped_sampler = js.jet_lift_sampler(f, n)
        flipped_sampler = type(flipped_sampler)(
            name="flipped",
            directions=flipped_sampler.directions,
            sample=flipped_sampler.sample,
            curve=lambda s, i, h, _c=flipped_sampler.curve: flip_p(s, lambda st: _c(st, i, h)),
            params=flipped_sampler.params,
        )
        cfg = CheckConfig(grid_sizes={2: 300})
        assert check_legendrian(flipped_sampler, mirrored, cfg).passed
        assert not check_legendrian(sampler, mirrored, cfg).passed

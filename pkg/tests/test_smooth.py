import numpy as np

from legspheres._smooth import (
    hermite_quintic,
    hermite_quintic_d1,
    smoothstep5,
    smoothstep5_d1,
    smoothstep5_int,
)


def test_smoothstep_endpoints():
    assert smoothstep5(0.0) == 0.0
    assert smoothstep5(1.0) == 1.0
    assert smoothstep5(-3.0) == 0.0
    assert smoothstep5(7.0) == 1.0
    assert abs(smoothstep5(0.5) - 0.5) < 1e-15
    assert smoothstep5_d1(0.0) == 0.0
    assert smoothstep5_d1(1.0) == 0.0


def test_smoothstep_derivative_matches_fd():
    s = np.linspace(0.05, 0.95, 37)
    h = 1e-6
    fd = (smoothstep5(s + h) - smoothstep5(s - h)) / (2 * h)
    assert np.max(np.abs(fd - smoothstep5_d1(s))) < 1e-8


def test_smoothstep_integral_against_quadrature():
    # trapezoid oracle on a fine grid
    grid = np.linspace(0.0, 1.0, 20001)
    vals = smoothstep5(grid)
    for s in (0.2, 0.5, 0.8, 1.0):
        keep = grid <= s
        oracle = np.trapezoid(vals[keep], grid[keep])
        assert abs(smoothstep5_int(s) - oracle) < 1e-8
    assert abs(smoothstep5_int(3.0) - (3.0 - 0.5)) < 1e-15


def test_hermite_quintic_endpoint_data():
    x0, x1 = 0.3, 1.1
    y0, y1, d0, d1 = -0.4, 2.0, 1.5, -0.25
    h = 1e-6
    f = lambda x: hermite_quintic(x, x0, x1, y0, y1, d0, d1)
    assert abs(f(x0) - y0) < 1e-13
    assert abs(f(x1) - y1) < 1e-13
    fd0 = (f(x0 + h) - f(x0)) / h  # one-sided: clamped below x0
    fd1 = (f(x1) - f(x1 - h)) / h
    assert abs(fd0 - d0) < 1e-5
    assert abs(fd1 - d1) < 1e-5
    # second derivatives vanish at both joins (via the analytic derivative)
    df = lambda x: hermite_quintic_d1(x, x0, x1, y0, y1, d0, d1)
    # one-sided differences carry O(h) truncation from the cubic term
    dd0 = (df(x0 + h) - df(x0)) / h
    dd1 = (df(x1) - df(x1 - h)) / h
    assert abs(dd0) < 5e-4
    assert abs(dd1) < 5e-4


def test_hermite_quintic_derivative_matches_fd():
    x = np.linspace(0.35, 1.05, 29)
    h = 1e-6
    args = (0.3, 1.1, -0.4, 2.0, 1.5, -0.25)
    fd = (hermite_quintic(x + h, *args) - hermite_quintic(x - h, *args)) / (2 * h)
    assert np.max(np.abs(fd - hermite_quintic_d1(x, *args))) < 1e-7


def test_hermite_clamps_to_linear_extensions():
    args = (0.0, 1.0, 2.0, 3.0, 0.5, -1.0)
    assert abs(hermite_quintic(-2.0, *args) - (2.0 + 0.5 * -2.0)) < 1e-14
    assert abs(hermite_quintic(4.0, *args) - (3.0 - 1.0 * 3.0)) < 1e-14

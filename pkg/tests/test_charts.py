import numpy as np
import pytest

from warpcheck.charts import (
    ChartMetric,
    christoffel,
    euclidean_metric,
    laplacian,
    plane_scalar_curvature,
    riemann,
    sectional_curvature,
)
from warpcheck.errors import DegenerateMetricError, DegeneratePlaneError


def sphere_metric():
    return ChartMetric(2, lambda x: np.diag([1.0, np.sin(x[0]) ** 2]))


def hyperbolic_metric():
    return ChartMetric(2, lambda x: np.diag([1.0, np.cosh(x[0]) ** 2]))


def test_christoffel_euclidean_zero():
    gamma = christoffel(euclidean_metric(3), np.array([0.4, -1.0, 2.0]))
    assert np.max(np.abs(gamma)) < 1e-12


def test_christoffel_polar():
    polar = ChartMetric(2, lambda x: np.diag([1.0, x[0] ** 2]))
    gamma = christoffel(polar, np.array([2.0, 0.3]))
    assert abs(gamma[0, 1, 1] + 2.0) < 1e-6
    assert abs(gamma[1, 0, 1] - 0.5) < 1e-6


def test_christoffel_sphere():
    gamma = christoffel(sphere_metric(), np.array([np.pi / 4, 0.2]))
    assert abs(gamma[0, 1, 1] + 0.5) < 1e-6  # -sin(pi/4)cos(pi/4)


def test_riemann_euclidean_zero():
    cp = riemann(euclidean_metric(3), np.array([0.1, 0.2, 0.3]))
    assert np.max(np.abs(cp.riemann04)) < 1e-10


@pytest.mark.parametrize(
    "metric,expected,t",
    [
        (sphere_metric(), 1.0, np.pi / 3),
        (hyperbolic_metric(), -1.0, 0.5),
        (euclidean_metric(2), 0.0, 0.4),
    ],
)
def test_constant_curvature_charts(metric, expected, t):
    x = np.array([t, 0.7])
    cp = riemann(metric, x)
    K = sectional_curvature(cp, metric, x, np.array([1.0, 0.0]), np.array([0.0, 1.0]))
    assert abs(K - expected) < 1e-4


def test_sectional_scaling_invariance():
    metric = sphere_metric()
    x = np.array([1.0, 0.5])
    cp = riemann(metric, x)
    X, Y = np.array([1.0, 0.2]), np.array([0.1, 1.0])
    k1 = sectional_curvature(cp, metric, x, X, Y)
    k2 = sectional_curvature(cp, metric, x, 3.0 * X, Y)
    assert abs(k1 - k2) < 1e-12


def test_sectional_degenerate_plane():
    metric = euclidean_metric(2)
    x = np.zeros(2)
    cp = riemann(metric, x)
    with pytest.raises(DegeneratePlaneError):
        sectional_curvature(cp, metric, x, np.array([1.0, 0.0]), np.array([2.0, 0.0]))


def test_scalar_curvature_sphere_s2():
    metric = sphere_metric()
    x = np.array([0.9, 0.4])
    cp = riemann(metric, x)
    tau = plane_scalar_curvature(cp, metric, x, [np.eye(2)[0], np.eye(2)[1]])
    assert abs(tau - 1.0) < 1e-4


def test_scalar_curvature_s3():
    s3 = ChartMetric(
        3, lambda x: np.diag([1.0, np.sin(x[0]) ** 2, (np.sin(x[0]) * np.sin(x[1])) ** 2])
    )
    x = np.array([1.1, 0.9, 0.4])
    cp = riemann(s3, x)
    tau = plane_scalar_curvature(cp, s3, x, [np.eye(3)[i] for i in range(3)])
    assert abs(tau - 3.0) < 1e-3


def test_flat_two_plane_zero():
    metric = euclidean_metric(3)
    x = np.zeros(3)
    cp = riemann(metric, x)
    tau = plane_scalar_curvature(cp, metric, x, [np.eye(3)[0], np.eye(3)[2]])
    assert abs(tau) < 1e-10


def _random_analytic_metric(rng, dim):
    """Positive-definite metric with analytic derivatives built from a few
    low-frequency trigonometric modes."""
    amps = rng.uniform(-0.15, 0.15, size=(dim, dim, dim))
    amps = 0.5 * (amps + amps.transpose(1, 0, 2))
    phases = rng.uniform(0, 2 * np.pi, size=(dim, dim, dim))
    phases = np.where(
        np.arange(dim)[:, None, None] <= np.arange(dim)[None, :, None], phases,
        phases.transpose(1, 0, 2),
    )

    def g(x):
        out = np.eye(dim)
        for k in range(dim):
            out = out + amps[:, :, k] * np.sin(x[k] + phases[:, :, k])
        return out

    def dg(x):
        out = np.zeros((dim, dim, dim))
        for k in range(dim):
            out[k] = amps[:, :, k] * np.cos(x[k] + phases[:, :, k])
        return out

    return ChartMetric(dim, g, dg)


def test_riemann_symmetries_random_metrics():
    # antisymmetries, pair symmetry and first Bianchi within 5e-4
    rng = np.random.default_rng(5)
    total_points = 0
    while total_points < 100:
        dim = int(rng.integers(2, 4))
        metric = _random_analytic_metric(rng, dim)
        for _ in range(10):
            x = rng.uniform(-1.0, 1.0, size=dim)
            try:
                cp = riemann(metric, x)
            except DegenerateMetricError:
                continue
            r = cp.riemann04
            assert np.max(np.abs(r + r.transpose(1, 0, 2, 3))) < 5e-4
            assert np.max(np.abs(r + r.transpose(0, 1, 3, 2))) < 5e-4
            assert np.max(np.abs(r - r.transpose(2, 3, 0, 1))) < 5e-4
            bianchi = r + r.transpose(1, 2, 0, 3) + r.transpose(2, 0, 1, 3)
            assert np.max(np.abs(bianchi)) < 5e-4
            total_points += 1


def test_scalar_curvature_matches_ricci_half_trace():
    # independent route: tau = (1/2) trace of Ricci in an orthonormal frame
    rng = np.random.default_rng(9)
    metric = _random_analytic_metric(rng, 3)
    x = rng.uniform(-0.5, 0.5, size=3)
    cp = riemann(metric, x)
    gx = metric.at(x)
    from warpcheck.numeric import gram_schmidt

    frame = gram_schmidt([np.eye(3)[i] for i in range(3)], inner=lambda u, v: float(u @ gx @ v))
    ricci_trace = 0.0
    for j in range(3):
        for i in range(3):
            ricci_trace += float(
                np.einsum("ijkl,i,j,k,l->", cp.riemann04, frame[i], frame[j], frame[j], frame[i])
            )
    tau_indep = 0.5 * ricci_trace
    tau = plane_scalar_curvature(cp, metric, x, [np.eye(3)[i] for i in range(3)])
    assert abs(tau - tau_indep) < 1e-4


def test_degenerate_metric_rejected():
    bad = ChartMetric(2, lambda x: np.diag([1.0, 0.0]))
    with pytest.raises(DegenerateMetricError):
        christoffel(bad, np.zeros(2))


def test_laplacian_sign_convention():
    line = euclidean_metric(1)
    assert abs(laplacian(line, lambda x: 5.0, np.array([0.3]))) < 1e-9
    assert abs(laplacian(line, lambda x: float(x[0] ** 2), np.array([0.3])) + 2.0) < 1e-5
    # Delta cos = +cos at 0, so Delta f / f = 1
    assert abs(laplacian(line, lambda x: float(np.cos(x[0])), np.array([0.0])) - 1.0) < 1e-6


def test_laplacian_on_curved_chart():
    # on the round 2-sphere, cos(polar angle) is an eigenfunction: using the
    # -div grad sign, Delta cos t = 2 cos t
    from warpcheck.warped import round_sphere_factor

    s2 = round_sphere_factor(2)
    for t in (0.4, 1.0, 2.2):
        x = np.array([t, 0.7])
        val = laplacian(s2, lambda p: float(np.cos(p[0])), x)
        assert abs(val - 2.0 * np.cos(t)) < 1e-5


def test_laplacian_analytic_callbacks():
    line = euclidean_metric(1)
    val = laplacian(
        line,
        lambda x: float(np.cos(x[0])),
        np.array([0.2]),
        grad=lambda x: np.array([-np.sin(x[0])]),
        hess=lambda x: np.array([[-np.cos(x[0])]]),
    )
    assert abs(val - np.cos(0.2)) < 1e-12

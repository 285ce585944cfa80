"""Warped-product charts g = g1 + f^2 g2 and the identities they satisfy.

The first factor's coordinates come first in the product chart; the warping
function is evaluated through them only.  A small closed catalog of warping
functions (constant, cosine, exponential, polynomial, sums/products) carries
analytic first and second derivatives so that curvature checks stay one
finite-difference level deep.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .charts import ChartMetric, christoffel, laplacian, riemann, sectional_curvature
from .errors import InvalidInputError, InvalidWarpingError
from .numeric import DEFAULT_TOLERANCE, as_vector, gram_schmidt

__all__ = [
    "WarpFunction",
    "const_fn",
    "cos_fn",
    "exp_fn",
    "poly_fn",
    "sum_fn",
    "product_fn",
    "WarpedProductChart",
    "build_metric",
    "check_connection_identity",
    "mixed_sectional",
    "check_laplacian_ratio",
    "is_trivial",
    "flat_factor",
    "round_sphere_factor",
    "chart_catalog",
    "named_chart",
    "sphere_chart",
    "hyperbolic_chart",
    "cone_chart",
    "flat_product_chart",
]


@dataclass(frozen=True)
class WarpFunction:
    """Scalar function of the first factor-1 coordinate with analytic t-derivatives."""

    label: str
    fn: Callable[[float], float]
    d1: Callable[[float], float]
    d2: Callable[[float], float]

    def value(self, x1: np.ndarray) -> float:
        return float(self.fn(float(x1[0])))

    def grad(self, x1: np.ndarray) -> np.ndarray:
        out = np.zeros(len(x1))
        out[0] = self.d1(float(x1[0]))
        return out

    def hess(self, x1: np.ndarray) -> np.ndarray:
        out = np.zeros((len(x1), len(x1)))
        out[0, 0] = self.d2(float(x1[0]))
        return out


def const_fn(a: float) -> WarpFunction:
    return WarpFunction(f"const({a})", lambda t: a, lambda t: 0.0, lambda t: 0.0)


def cos_fn() -> WarpFunction:
    return WarpFunction("cos", np.cos, lambda t: -np.sin(t), lambda t: -np.cos(t))


def exp_fn() -> WarpFunction:
    return WarpFunction("exp", np.exp, np.exp, np.exp)


def poly_fn(coeffs: Sequence[float]) -> WarpFunction:
    """Polynomial sum(coeffs[k] * t^k)."""
    c = list(map(float, coeffs))
    p = np.polynomial.Polynomial(c)
    return WarpFunction(f"polynomial({c})", p, p.deriv(1), p.deriv(2))


def sum_fn(a: WarpFunction, b: WarpFunction) -> WarpFunction:
    return WarpFunction(
        f"sum({a.label},{b.label})",
        lambda t: a.fn(t) + b.fn(t),
        lambda t: a.d1(t) + b.d1(t),
        lambda t: a.d2(t) + b.d2(t),
    )


def product_fn(a: WarpFunction, b: WarpFunction) -> WarpFunction:
    return WarpFunction(
        f"product({a.label},{b.label})",
        lambda t: a.fn(t) * b.fn(t),
        lambda t: a.d1(t) * b.fn(t) + a.fn(t) * b.d1(t),
        lambda t: a.d2(t) * b.fn(t) + 2.0 * a.d1(t) * b.d1(t) + a.fn(t) * b.d2(t),
    )


@dataclass
class WarpedProductChart:
    """Two factor charts and a positive warping function on the first."""

    factor1: ChartMetric
    factor2: ChartMetric
    warp: WarpFunction
    label: str = ""
    sample_points: list[np.ndarray] = field(default_factory=list)

    @property
    def n1(self) -> int:
        return self.factor1.dim

    @property
    def n2(self) -> int:
        return self.factor2.dim

    @property
    def dim(self) -> int:
        return self.n1 + self.n2

    def split(self, x: np.ndarray):
        x = as_vector(x, self.dim)
        return x[: self.n1], x[self.n1 :]

    def warp_at(self, x: np.ndarray) -> float:
        x1, _ = self.split(x)
        f = self.warp.value(x1)
        if f <= 0.0:
            raise InvalidWarpingError(f"warping function non-positive ({f}) at {x1}")
        return f


def build_metric(wp: WarpedProductChart) -> ChartMetric:
    """Block metric diag(g1(x1), f(x1)^2 g2(x2)) on the product chart."""
    n1, n2 = wp.n1, wp.n2
    n = n1 + n2

    def g(x: np.ndarray) -> np.ndarray:
        x1, x2 = wp.split(x)
        f = wp.warp_at(x)
        out = np.zeros((n, n))
        out[:n1, :n1] = wp.factor1.g(x1)
        out[n1:, n1:] = (f * f) * wp.factor2.g(x2)
        return out

    dg = None
    if wp.factor1.dg is not None and wp.factor2.dg is not None:

        def dg(x: np.ndarray) -> np.ndarray:
            x1, x2 = wp.split(x)
            f = wp.warp_at(x)
            df = wp.warp.grad(x1)
            g2 = wp.factor2.g(x2)
            out = np.zeros((n, n, n))
            out[:n1, :n1, :n1] = wp.factor1.dg(x1)
            out[n1:, n1:, n1:] = (f * f) * wp.factor2.dg(x2)
            for k in range(n1):
                out[k, n1:, n1:] += 2.0 * f * df[k] * g2
            return out

    return ChartMetric(dim=n, g=g, dg=dg)


def _check_blocks(wp: WarpedProductChart, X: np.ndarray, Y: np.ndarray):
    X = as_vector(X, wp.dim)
    Y = as_vector(Y, wp.dim)
    if np.any(X[wp.n1 :] != 0.0):
        raise InvalidInputError("X must be tangent to the first factor")
    if np.any(Y[: wp.n1] != 0.0):
        raise InvalidInputError("Y must be tangent to the second factor")
    return X, Y


def check_connection_identity(
    wp: WarpedProductChart, x: np.ndarray, X: np.ndarray, Y: np.ndarray
) -> float:
    """Residual of nabla_X Y = (Xf/f) Y for X in the leaf and Y in the fibre.

    Both sides are evaluated via the Christoffel symbols of the full block
    metric with constant-coefficient extensions of X and Y; returns the metric
    norm of the difference.
    """
    X, Y = _check_blocks(wp, X, Y)
    metric = build_metric(wp)
    x = as_vector(x, wp.dim)
    gamma = christoffel(metric, x)
    nabla = np.einsum("kij,i,j->k", gamma, X, Y)
    x1, _ = wp.split(x)
    f = wp.warp_at(x)
    xf = float(X[: wp.n1] @ wp.warp.grad(x1))
    diff = nabla - (xf / f) * Y
    gx = metric.at(x)
    return float(np.sqrt(max(diff @ gx @ diff, 0.0)))


def mixed_sectional(
    wp: WarpedProductChart,
    x: np.ndarray,
    X: np.ndarray,
    Z: np.ndarray,
    tol: float = 1e-8,
) -> float:
    """K(X ^ Z) for unit X in the leaf and unit Z in the fibre.

    Evaluates (1/f) { (nabla_X X) f - X(Xf) } on the first factor, which is
    -Hess_{g1} f (X,X) / f; independent of Z.
    """
    X, Z = _check_blocks(wp, X, Z)
    metric = build_metric(wp)
    x = as_vector(x, wp.dim)
    gx = metric.at(x)
    if abs(float(X @ gx @ X) - 1.0) > tol or abs(float(Z @ gx @ Z) - 1.0) > tol:
        raise InvalidInputError("X and Z must be unit vectors in the warped metric")
    x1, _ = wp.split(x)
    f = wp.warp_at(x)
    x1v = X[: wp.n1]
    gamma1 = christoffel(wp.factor1, x1)
    hess = wp.warp.hess(x1) - np.einsum("kij,k->ij", gamma1, wp.warp.grad(x1))
    return -float(x1v @ hess @ x1v) / f


def _adapted_frame(wp: WarpedProductChart, metric: ChartMetric, x: np.ndarray):
    """Orthonormal frame adapted to the block split (leaf vectors first)."""
    gx = metric.at(x)
    inner = lambda u, v: float(u @ gx @ v)
    n, n1 = wp.dim, wp.n1
    basis1 = [np.eye(n)[i] for i in range(n1)]
    basis2 = [np.eye(n)[i] for i in range(n1, n)]
    return gram_schmidt(basis1, inner), gram_schmidt(basis2, inner)


def check_laplacian_ratio(wp: WarpedProductChart, x: np.ndarray) -> dict:
    """Compare Delta f / f on the first factor with the mixed-curvature sums.

    For every fibre frame direction e_s the sum over leaf directions
    sum_j K(e_j ^ e_s) must reproduce Delta f / f (geometers' sign); reports
    all per-s sums, the maximal deviation and the s-independence spread.
    """
    metric = build_metric(wp)
    x = as_vector(x, wp.dim)
    x1, _ = wp.split(x)
    f = wp.warp_at(x)
    lap = laplacian(
        wp.factor1,
        lambda p: wp.warp.value(p),
        x1,
        grad=wp.warp.grad,
        hess=wp.warp.hess,
    )
    ratio = lap / f
    frame1, frame2 = _adapted_frame(wp, metric, x)
    cp = riemann(metric, x)
    per_s = []
    for e_s in frame2:
        per_s.append(
            sum(sectional_curvature(cp, metric, x, e_j, e_s) for e_j in frame1)
        )
    per_s_arr = np.array(per_s)
    return {
        "laplacian_ratio": ratio,
        "per_s_sums": per_s,
        "max_deviation": float(np.max(np.abs(per_s_arr - ratio))),
        "spread": float(np.max(per_s_arr) - np.min(per_s_arr)),
    }


def is_trivial(
    wp: WarpedProductChart,
    samples: Sequence[np.ndarray],
    tol: float = DEFAULT_TOLERANCE.algebraic,
) -> bool:
    """True iff the warping function is constant over the sample set."""
    if len(samples) == 0:
        raise InvalidInputError("sample set must be nonempty")
    values = [wp.warp.value(wp.split(p)[0]) for p in samples]
    return max(abs(v - values[0]) for v in values) < tol


def flat_factor(dim: int) -> ChartMetric:
    eye = np.eye(dim)
    zeros = np.zeros((dim, dim, dim))
    return ChartMetric(dim=dim, g=lambda x: eye, dg=lambda x: zeros)


def round_sphere_factor(dim: int) -> ChartMetric:
    """Round unit-sphere metric in nested spherical coordinates."""
    if dim == 1:
        return flat_factor(1)

    def g(x: np.ndarray) -> np.ndarray:
        out = np.eye(dim)
        acc = 1.0
        for i in range(1, dim):
            acc *= np.sin(x[i - 1]) ** 2
            out[i, i] = acc
        return out

    def dg(x: np.ndarray) -> np.ndarray:
        out = np.zeros((dim, dim, dim))
        for k in range(dim - 1):
            for i in range(k + 1, dim):
                prod = 1.0
                for j in range(i):
                    prod *= np.sin(x[j]) ** 2
                # derivative of prod w.r.t. x_k (k < i)
                out[k, i, i] = prod * 2.0 * np.cos(x[k]) / np.sin(x[k])
        return out

    return ChartMetric(dim=dim, g=g, dg=dg)


def chart_catalog() -> dict[str, Callable[..., WarpedProductChart]]:
    """Named warped charts addressable from scene files."""
    return {
        "sphere": sphere_chart,
        "hyperbolic": hyperbolic_chart,
        "cone": cone_chart,
        "flat-product": flat_product_chart,
    }


def sphere_chart(n2: int = 1) -> WarpedProductChart:
    """(-pi/2, pi/2) x_{cos t} S^{n2}: the unit round sphere S^{1+n2}."""
    pts = [np.array([t] + [0.4 + 0.1 * i for i in range(n2)]) for t in (-0.6, 0.2, 0.9)]
    return WarpedProductChart(
        factor1=flat_factor(1),
        factor2=round_sphere_factor(n2),
        warp=cos_fn(),
        label=f"sphere(n2={n2})",
        sample_points=pts,
    )


def hyperbolic_chart(n2: int = 1) -> WarpedProductChart:
    """R x_{e^t} R^{n2}: constant curvature -1."""
    pts = [np.array([t] + [0.3] * n2) for t in (-0.5, 0.0, 0.7)]
    return WarpedProductChart(
        factor1=flat_factor(1),
        factor2=flat_factor(n2),
        warp=exp_fn(),
        label=f"hyperbolic(n2={n2})",
        sample_points=pts,
    )


def cone_chart() -> WarpedProductChart:
    """(0, inf) x_t S^1: flat cone (punctured plane in polar coordinates)."""
    pts = [np.array([r, 0.5]) for r in (0.6, 1.0, 1.8)]
    return WarpedProductChart(
        factor1=flat_factor(1),
        factor2=flat_factor(1),
        warp=poly_fn([0.0, 1.0]),
        label="cone",
        sample_points=pts,
    )


def flat_product_chart(n1: int = 1, n2: int = 1) -> WarpedProductChart:
    """Trivial warped product: f == 1."""
    pts = [np.full(n1 + n2, 0.2), np.full(n1 + n2, -0.4)]
    return WarpedProductChart(
        factor1=flat_factor(n1),
        factor2=flat_factor(n2),
        warp=const_fn(1.0),
        label=f"flat-product({n1},{n2})",
        sample_points=pts,
    )


def named_chart(key: str, **params) -> WarpedProductChart:
    catalog = chart_catalog()
    if key not in catalog:
        raise InvalidInputError(
            f"unknown warped chart {key!r}; known: {sorted(catalog)}"
        )
    return catalog[key](**params)

"""The curvature inequality engine.

Implements the quadratic trace lemma, the proof-level decomposition of the
second fundamental form, the general warped-product inequality

    n2 * (Delta f / f) <= n^2/4 |H|^2 + tau~(T_pM) - tau~(T_pM_1) - tau~(T_pM_2),

its two contact specializations and the nonexistence / warped-product
obstruction verdicts.  All reports are normalized to Delta f / f units (the
general statement divided by n2), so the general and specialized right-hand
sides are directly comparable.

For pointwise-algebraic data the left-hand side is the Gauss-equation proxy
n2 * Delta f / f := tau(p) - tau(T_pM_1) - tau(T_pM_2), with the intrinsic
scalar curvatures reconstructed from the ambient model and sigma.  For chart
data callers may pass the genuine Delta f / f computed on the first factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .charts import laplacian
from .errors import (
    InadmissibleTupleError,
    InvalidConfigurationError,
    InvalidInputError,
    SingularParameterError,
)
from .immersion import (
    ChartImmersion,
    PointwiseImmersionData,
    a_xi_identity,
    intrinsic_kij,
    is_C_totally_real,
    is_mixed_totally_geodesic,
    mean_curvatures,
    second_fundamental_form,
)

__all__ = [
    "chen_lemma",
    "ProofDecomposition",
    "decompose",
    "InequalityReport",
    "general_inequality",
    "kmu_space_form_inequality",
    "non_sasakian_inequality",
    "NONEXISTENCE",
    "WARPED_PRODUCT_IMMERSION",
    "UNOBSTRUCTED",
    "obstruction_check",
    "chart_inequality",
]

ALGEBRAIC_EQUALITY_TOL = 1e-8
CHART_EQUALITY_TOL = 1e-3


def chen_lemma(a: Sequence[float], b: float, tol: float = 1e-9) -> dict:
    """Quadratic trace lemma: if (sum a_i)^2 = (l-1)(sum a_i^2 + b) with
    l >= 2, then 2 a_1 a_2 >= b, with equality iff a_1 + a_2 = a_3 = ... = a_l.

    Raises InadmissibleTupleError when the constraint fails beyond `tol`
    (scaled by the tuple magnitude).  Returns the constraint residual, the
    inequality slack and both equality detectors.
    """
    a = [float(v) for v in a]
    ell = len(a)
    if ell < 2:
        raise InvalidInputError("need at least two values")
    s = sum(a)
    sq = sum(v * v for v in a)
    residual = abs(s * s - (ell - 1) * (sq + b))
    scale = max(1.0, s * s, abs(b))
    if residual > tol * scale:
        raise InadmissibleTupleError(
            f"constraint violated: residual {residual:.3e} (scale {scale:.3e})"
        )
    slack = 2.0 * a[0] * a[1] - b
    tail = [a[0] + a[1]] + a[2:]
    tail_dev = max(abs(v - tail[0]) for v in tail)
    return {
        "constraint_residual": residual,
        "holds": slack >= -tol * scale,
        "slack": slack,
        "equality": abs(slack) <= tol * scale,
        "tail_condition": tail_dev <= tol * max(1.0, max(abs(v) for v in tail)),
        "tail_deviation": tail_dev,
    }


@dataclass
class ProofDecomposition:
    """Trace decomposition of sigma in the frame whose first normal direction
    is parallel to the mean curvature vector."""

    delta: float
    a1: float
    a2: float
    a3: float
    b: float
    ai_residual: float
    lemma_slack: float
    lemma_equality: bool
    trace_residuals: list[float]
    rotated_sigma: np.ndarray


def _rotate_normal_frame(data: PointwiseImmersionData) -> np.ndarray:
    """Sigma components after rotating the normal frame so that the first
    direction is parallel to H; identity rotation when H = 0."""
    rec = mean_curvatures(data)
    k = data.num_normals
    if rec.norm_H < 1e-14 or k == 1:
        return data.sigma.copy()
    first = rec.components / np.linalg.norm(rec.components)
    # QR of [H | I] yields an orthonormal basis whose first vector follows H
    rot = np.linalg.qr(np.column_stack([first, np.eye(k)]))[0][:, :k]
    if rot[:, 0] @ first < 0.0:
        rot = -rot
    return np.einsum("sr,sij->rij", rot, data.sigma)


def decompose(
    data: PointwiseImmersionData, tau_p: float | None = None
) -> ProofDecomposition:
    """Proof-level decomposition feeding the trace lemma with l = 3.

    tau_p defaults to the Gauss-equation intrinsic scalar curvature; a
    chart-computed value may be supplied instead.
    """
    n, n1 = data.n, data.n1
    sigma = _rotate_normal_frame(data)
    iu = np.triu_indices(n, k=1)
    if tau_p is None:
        tau_p = float(intrinsic_kij(data)[iu].sum())
    tau_ambient = float(data.ambient_kij()[iu].sum())
    rec = mean_curvatures(data)
    nh2 = n * n * rec.norm_H**2
    delta = 0.5 * (4.0 * tau_p - 4.0 * tau_ambient - nh2)

    diag0 = np.diag(sigma[0])
    a1 = float(diag0[0])
    a2 = float(diag0[1:n1].sum())
    a3 = float(diag0[n1:].sum())

    off0 = float(np.sum(sigma[0] ** 2) - np.sum(diag0**2))
    rest = float(np.sum(sigma[1:] ** 2))
    pair1 = float(np.sum(np.outer(diag0[1:n1], diag0[1:n1])) - np.sum(diag0[1:n1] ** 2))
    pair2 = float(np.sum(np.outer(diag0[n1:], diag0[n1:])) - np.sum(diag0[n1:] ** 2))
    b = delta + off0 + rest - pair1 - pair2

    total = a1 + a2 + a3
    ai_residual = abs(total * total - 2.0 * (a1 * a1 + a2 * a2 + a3 * a3 + b))
    slack = 2.0 * a1 * a2 - b

    trace_residuals = []
    for r in range(sigma.shape[0]):
        d = np.diag(sigma[r])
        tr1, tr2 = float(d[:n1].sum()), float(d[n1:].sum())
        if r == 0:
            trace_residuals.append(abs(tr1 - tr2))
        else:
            trace_residuals.append(max(abs(tr1), abs(tr2)))

    return ProofDecomposition(
        delta=delta,
        a1=a1,
        a2=a2,
        a3=a3,
        b=b,
        ai_residual=ai_residual,
        lemma_slack=slack,
        lemma_equality=abs(a1 + a2 - a3) < 1e-9 * max(1.0, abs(a3)),
        trace_residuals=trace_residuals,
        rotated_sigma=sigma,
    )


@dataclass
class InequalityReport:
    """Both sides of a warped-product curvature inequality plus the equality
    diagnostics; values are in Delta f / f units."""

    name: str
    lhs: float
    rhs: float
    gap: float
    equality: bool
    diagnostics: dict
    mean_term: float
    ambient_term: float
    norm_H: float
    n1: int
    n2: int
    equality_tol: float
    verdict: str | None = None
    extras: dict = field(default_factory=dict)


def _proxy_lhs(data: PointwiseImmersionData) -> float:
    """Gauss-equation proxy for Delta f / f: the mixed-pair sum of intrinsic
    sectional curvatures divided by n2."""
    kij = intrinsic_kij(data)
    mixed = float(kij[: data.n1, data.n1 :].sum())
    return mixed / data.n2


def _trace_conditions(data: PointwiseImmersionData) -> list[float]:
    """Per-direction residuals of the block-trace conditions in the frame
    whose first normal direction follows H: |tr1 - tr2| along H, then
    max(|tr1|, |tr2|) for the remaining directions."""
    sigma = _rotate_normal_frame(data)
    diag = np.einsum("rii->ri", sigma)
    tr1 = diag[:, : data.n1].sum(axis=1)
    tr2 = diag[:, data.n1 :].sum(axis=1)
    out = [abs(float(tr1[0] - tr2[0]))]
    out.extend(max(abs(float(a)), abs(float(b))) for a, b in zip(tr1[1:], tr2[1:]))
    return out


def _diagnostics(data: PointwiseImmersionData, tol: float) -> dict:
    diag = np.einsum("rii->ri", data.sigma)
    tr1 = diag[:, : data.n1].sum(axis=1)  # n1 * H1 in the normal frame
    tr2 = diag[:, data.n1 :].sum(axis=1)
    partial_residual = float(np.max(np.abs(tr1 - tr2)))
    return {
        "mixed_totally_geodesic": is_mixed_totally_geodesic(data, tol),
        "partial_mean_equal": partial_residual < tol,
        "partial_mean_residual": partial_residual,
        "trace_conditions": _trace_conditions(data),
    }


def general_inequality(
    data: PointwiseImmersionData,
    lhs: float | None = None,
    equality_tol: float = ALGEBRAIC_EQUALITY_TOL,
) -> InequalityReport:
    """The inequality for an arbitrary ambient model.

    rhs = n^2/(4 n2) |H|^2 + [tau~(T_pM) - tau~(T_pM_1) - tau~(T_pM_2)] / n2;
    lhs defaults to the Gauss-equation proxy.  Equality holds exactly when the
    immersion data is mixed totally geodesic with n1 H1 = n2 H2.
    """
    n, n1, n2 = data.n, data.n1, data.n2
    kij = data.ambient_kij()
    iu = np.triu_indices(n, k=1)
    tau_full = float(kij[iu].sum())
    tau_1 = float(kij[:n1, :n1][np.triu_indices(n1, k=1)].sum())
    tau_2 = float(kij[n1:, n1:][np.triu_indices(n2, k=1)].sum())
    rec = mean_curvatures(data)
    mean_term = n * n / (4.0 * n2) * rec.norm_H**2
    ambient_term = (tau_full - tau_1 - tau_2) / n2
    rhs = mean_term + ambient_term
    if lhs is None:
        # Gauss-equation proxy: mixed-pair intrinsic curvatures reuse the
        # ambient table computed above
        diag = np.einsum("rii->ri", data.sigma)
        corr = np.einsum("ri,rj->ij", diag, diag) - np.einsum(
            "rij,rij->ij", data.sigma, data.sigma
        )
        lhs_val = float((kij + corr)[:n1, n1:].sum()) / n2
    else:
        lhs_val = float(lhs)
    gap = rhs - lhs_val
    return InequalityReport(
        name="general_inequality",
        lhs=lhs_val,
        rhs=rhs,
        gap=gap,
        equality=abs(gap) < equality_tol,
        diagnostics=_diagnostics(data, equality_tol),
        mean_term=mean_term,
        ambient_term=ambient_term,
        norm_H=rec.norm_H,
        n1=n1,
        n2=n2,
        equality_tol=equality_tol,
    )


def _contact_rhs_inputs(data: PointwiseImmersionData):
    ok, residuals = is_C_totally_real(data)
    if not ok:
        raise InvalidConfigurationError(
            f"data is not C-totally real: residuals {residuals}"
        )
    stats = a_xi_identity(data)
    return stats["h_stats"], stats["a_stats"]


def kmu_space_form_inequality(
    data: PointwiseImmersionData,
    c: float | None = None,
    lhs: float | None = None,
    equality_tol: float = ALGEBRAIC_EQUALITY_TOL,
) -> InequalityReport:
    """Specialized right-hand side for a constant-phi-sectional-curvature
    contact ambient, in terms of the restricted traces of h^T and A_xi.

    Cross-checks its RHS against the general inequality evaluated with the
    same ambient oracle (stored as extras['rhs_cross_residual']).
    """
    frame = data.contact
    if frame is None:
        raise InvalidConfigurationError("contact frame required")
    if c is None:
        c = frame.c
    if c is None:
        raise InvalidInputError("phi-sectional curvature c required")
    hs, As = _contact_rhs_inputs(data)
    n, n1, n2 = data.n, data.n1, data.n2
    rec = mean_curvatures(data)
    mean_term = n * n / (4.0 * n2) * rec.norm_H**2
    bracket = (
        hs["trace"] ** 2 - hs["trace_1"] ** 2 - hs["trace_2"] ** 2
        - As["trace"] ** 2 + As["trace_1"] ** 2 + As["trace_2"] ** 2
        - hs["norm_sq"] + hs["norm_sq_1"] + hs["norm_sq_2"]
        + As["norm_sq"] - As["norm_sq_1"] - As["norm_sq_2"]
    )
    curvature_term = (
        0.25 * n1 * (c + 3.0)
        + hs["trace_1"]
        + (n1 / n2) * hs["trace_2"]
        + bracket / (4.0 * n2)
    )
    rhs = mean_term + curvature_term
    lhs_val = _proxy_lhs(data) if lhs is None else float(lhs)
    gap = rhs - lhs_val
    general = general_inequality(data, lhs=lhs_val, equality_tol=equality_tol)
    return InequalityReport(
        name="kmu_space_form_inequality",
        lhs=lhs_val,
        rhs=rhs,
        gap=gap,
        equality=abs(gap) < equality_tol,
        diagnostics=general.diagnostics,
        mean_term=mean_term,
        ambient_term=curvature_term,
        norm_H=rec.norm_H,
        n1=n1,
        n2=n2,
        equality_tol=equality_tol,
        extras={
            "c": c,
            "rhs_general": general.rhs,
            "rhs_cross_residual": abs(rhs - general.rhs),
        },
    )


def non_sasakian_inequality(
    data: PointwiseImmersionData,
    lhs: float | None = None,
    equality_tol: float = ALGEBRAIC_EQUALITY_TOL,
) -> InequalityReport:
    """Specialized right-hand side for an ambient whose curvature is
    determined by (kappa, mu) with kappa < 1.

    The A_xi bracket groups carry the signs forced by the ambient curvature
    tensor (so that this RHS is exactly the general one), which flips the
    A_xi groups relative to the h^T groups.
    """
    frame = data.contact
    if frame is None:
        raise InvalidConfigurationError("contact frame required")
    kappa, mu = frame.kappa, frame.mu
    if kappa > 1.0 - 1e-8:
        raise SingularParameterError("non-Sasakian inequality needs kappa < 1")
    hs, As = _contact_rhs_inputs(data)
    n, n1, n2 = data.n, data.n1, data.n2
    rec = mean_curvatures(data)
    mean_term = n * n / (4.0 * n2) * rec.norm_H**2
    e1 = (1.0 - mu / 2.0) / (1.0 - kappa)
    e2 = (kappa - mu / 2.0) / (1.0 - kappa)
    trace_group_h = hs["trace"] ** 2 - hs["trace_1"] ** 2 - hs["trace_2"] ** 2
    trace_group_a = As["trace"] ** 2 - As["trace_1"] ** 2 - As["trace_2"] ** 2
    norm_group_h = hs["norm_sq"] - hs["norm_sq_1"] - hs["norm_sq_2"]
    norm_group_a = As["norm_sq"] - As["norm_sq_1"] - As["norm_sq_2"]
    curvature_term = (
        n1 * (1.0 - mu / 2.0)
        + hs["trace_1"]
        + (n1 / n2) * hs["trace_2"]
        + e1 / (2.0 * n2) * trace_group_h
        + e2 / (2.0 * n2) * trace_group_a
        - e1 / (2.0 * n2) * norm_group_h
        - e2 / (2.0 * n2) * norm_group_a
    )
    rhs = mean_term + curvature_term
    lhs_val = _proxy_lhs(data) if lhs is None else float(lhs)
    gap = rhs - lhs_val
    general = general_inequality(data, lhs=lhs_val, equality_tol=equality_tol)
    return InequalityReport(
        name="non_sasakian_inequality",
        lhs=lhs_val,
        rhs=rhs,
        gap=gap,
        equality=abs(gap) < equality_tol,
        diagnostics=general.diagnostics,
        mean_term=mean_term,
        ambient_term=curvature_term,
        norm_H=rec.norm_H,
        n1=n1,
        n2=n2,
        equality_tol=equality_tol,
        extras={
            "kappa": kappa,
            "mu": mu,
            "rhs_general": general.rhs,
            "rhs_cross_residual": abs(rhs - general.rhs),
        },
    )


NONEXISTENCE = "NONEXISTENCE"
WARPED_PRODUCT_IMMERSION = "WARPED_PRODUCT_IMMERSION"
UNOBSTRUCTED = "UNOBSTRUCTED"


def obstruction_check(
    report: InequalityReport,
    harmonic: bool = False,
    eigenvalue: float | None = None,
    minimal: bool = False,
    tol: float = 1e-8,
) -> str:
    """Existence verdict for minimal immersions with harmonic or eigenfunction
    warping.

    With a minimal immersion the inequality forces Delta f / f <= curvature
    term; a harmonic warping (lhs 0) facing a negative curvature term, or a
    positive eigenvalue facing a non-positive one, is a contradiction
    (NONEXISTENCE).  A harmonic warping with vanishing curvature term pins the
    equality case, which flags the immersion as a warped-product immersion
    (flag only; the decomposition theorem is cited, not re-proved).
    """
    if harmonic and eigenvalue is not None:
        raise InvalidConfigurationError("harmonic and eigenvalue flags are exclusive")
    if not harmonic and eigenvalue is None:
        raise InvalidConfigurationError("need the harmonic flag or an eigenvalue")
    if eigenvalue is not None and eigenvalue <= 0.0:
        raise InvalidConfigurationError("eigenvalue must be positive")
    if not minimal:
        raise InvalidConfigurationError("obstruction verdicts apply to minimal immersions")
    if report.norm_H > 1e-6:
        raise InvalidConfigurationError(
            f"minimal flag inconsistent with |H| = {report.norm_H:.3e}"
        )
    curvature_term = report.rhs - report.mean_term
    lhs_required = 0.0 if harmonic else float(eigenvalue)
    if lhs_required > curvature_term + tol:
        return NONEXISTENCE
    if harmonic and abs(curvature_term) <= tol:
        return WARPED_PRODUCT_IMMERSION
    return UNOBSTRUCTED


def chart_inequality(
    im: ChartImmersion,
    p: np.ndarray,
    equality_tol: float = CHART_EQUALITY_TOL,
) -> InequalityReport:
    """Run the general inequality on a chart immersion of a warped chart.

    Produces both left-hand sides (the genuine Delta f / f on the first factor
    and the Gauss-equation proxy) and reports their agreement.
    """
    if im.warped is None:
        raise InvalidConfigurationError("chart immersion carries no warped structure")
    data = second_fundamental_form(im, p)
    wp = im.warped
    x1 = np.asarray(p, dtype=float)[: wp.n1]
    f = wp.warp.value(x1)
    lap = laplacian(
        wp.factor1, lambda q: wp.warp.value(q), x1, grad=wp.warp.grad, hess=wp.warp.hess
    )
    lhs_chart = lap / f
    lhs_proxy = _proxy_lhs(data)
    report = general_inequality(data, lhs=lhs_chart, equality_tol=equality_tol)
    report.extras["lhs_chart"] = lhs_chart
    report.extras["lhs_proxy"] = lhs_proxy
    report.extras["lhs_agreement"] = abs(lhs_chart - lhs_proxy)
    return report

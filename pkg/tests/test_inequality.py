import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from warpcheck.contact import make_ambient
from warpcheck.errors import InadmissibleTupleError, InvalidConfigurationError, SingularParameterError
from warpcheck.immersion import (
    balance_for_equality,
    dplus_leaf,
    force_xi_consistency,
    random_data,
)
from warpcheck.inequality import (
    NONEXISTENCE,
    UNOBSTRUCTED,
    WARPED_PRODUCT_IMMERSION,
    chart_inequality,
    chen_lemma,
    decompose,
    general_inequality,
    kmu_space_form_inequality,
    non_sasakian_inequality,
    obstruction_check,
)


# --- the trace lemma -------------------------------------------------------


def test_lemma_equality_tuple():
    res = chen_lemma([1.0, 2.0, 3.0], 4.0)
    assert res["holds"] and res["equality"] and res["tail_condition"]


def test_lemma_strict_tuple():
    res = chen_lemma([1.0, 1.0, 3.0], 1.5)
    assert res["holds"] and not res["equality"] and not res["tail_condition"]
    assert abs(res["slack"] - 0.5) < 1e-12


def test_lemma_two_values_always_equality():
    x = 0.8
    res = chen_lemma([x, x], 2 * x * x)
    assert res["equality"] and res["tail_condition"]


def test_lemma_rejects_inadmissible():
    with pytest.raises(InadmissibleTupleError):
        chen_lemma([1.0, 2.0, 3.0], 100.0)


@settings(max_examples=200, deadline=None)
@given(
    st.integers(2, 10),
    st.integers(0, 2**31 - 1),
    st.booleans(),
)
def test_lemma_randomized(ell, seed, force_equality):
    rng = np.random.default_rng(seed)
    a = list(rng.normal(size=ell))
    if force_equality and ell >= 3:
        a = [a[0], a[1]] + [a[0] + a[1]] * (ell - 2)
    s = sum(a)
    b = s * s / (ell - 1) - sum(v * v for v in a)
    res = chen_lemma(a, b)
    assert res["holds"]
    assert res["equality"] == res["tail_condition"]


# --- decomposition ---------------------------------------------------------


def test_decompose_zero_sigma():
    rng = np.random.default_rng(0)
    amb = make_ambient("euclidean", m=5)
    data = random_data(rng, amb, 1, 2, sigma_scale=0.0)
    dec = decompose(data)
    assert dec.a1 == dec.a2 == dec.a3 == 0.0
    assert abs(dec.b - dec.delta) < 1e-12
    assert dec.delta <= 1e-12  # forced by 2 a1 a2 >= b with a = 0


def test_decompose_constraint_residual():
    rng = np.random.default_rng(1)
    amb = make_ambient("kmu-space-form", m=3, kappa=0.5, mu=0.3, c=-0.4)
    for _ in range(200):
        data = random_data(rng, amb, 2, 2)
        dec = decompose(data)
        assert dec.ai_residual < 1e-9
        assert dec.lemma_slack >= -1e-9
        # equality in the lemma step holds exactly when a1 + a2 = a3
        assert (abs(dec.lemma_slack) < 1e-9) == dec.lemma_equality


def test_decompose_sphere_data():
    from warpcheck.immersion import second_fundamental_form, sphere_in_euclidean

    im = sphere_in_euclidean(2)
    data = second_fundamental_form(im, im.default_point)
    dec = decompose(data)
    assert dec.ai_residual < 1e-9


def test_decompose_equality_detection():
    rng = np.random.default_rng(2)
    amb = make_ambient("euclidean", m=6)
    data = random_data(rng, amb, 2, 2)
    data.sigma = balance_for_equality(data.sigma, 2)
    dec = decompose(data)
    assert dec.lemma_equality
    assert abs(dec.lemma_slack) < 1e-9
    assert max(dec.trace_residuals) < 1e-9


# --- the general inequality ------------------------------------------------


AMBIENTS = [
    ("euclidean", {"m": 7}),
    ("real-space-form", {"m": 6, "c": -1.0}),
    ("kmu-space-form", {"m": 3, "kappa": 0.5, "mu": -1.0, "c": 1.7}),
    ("sasakian-space-form", {"m": 3, "c": -2.0}),
    ("non-sasakian-kmu", {"m": 3, "kappa": 0.2, "mu": 0.8}),
]


@pytest.mark.parametrize("kind,params", AMBIENTS)
def test_general_inequality_randomized(kind, params):
    rng = np.random.default_rng(3)
    amb = make_ambient(kind, **params)
    for _ in range(300):
        n1 = int(rng.integers(1, 3))
        n2 = int(rng.integers(1, 3))
        data = random_data(rng, amb, n1, n2)
        rep = general_inequality(data)
        assert rep.gap >= -1e-9


def test_zero_sigma_flat_equality():
    rng = np.random.default_rng(4)
    amb = make_ambient("euclidean", m=5)
    data = random_data(rng, amb, 1, 1, sigma_scale=0.0)
    rep = general_inequality(data)
    assert rep.lhs == 0.0 and rep.rhs == 0.0 and rep.equality


def test_equality_characterization_both_directions():
    rng = np.random.default_rng(5)
    amb = make_ambient("euclidean", m=7)
    for _ in range(100):
        data = random_data(rng, amb, 2, 2)
        data.sigma = balance_for_equality(data.sigma, 2)
        rep = general_inequality(data)
        assert abs(rep.gap) < 1e-8
        assert rep.equality
        assert rep.diagnostics["mixed_totally_geodesic"]
        assert rep.diagnostics["partial_mean_equal"]
        data.sigma[0, 0, 2] += 1e-2
        data.sigma[0, 2, 0] += 1e-2
        rep2 = general_inequality(data)
        assert rep2.gap >= 1e-5
        assert not rep2.equality
        assert not rep2.diagnostics["mixed_totally_geodesic"]


def test_sphere_chart_report():
    from warpcheck.immersion import sphere_in_euclidean

    rep = chart_inequality(sphere_in_euclidean(2), np.array([0.25, 0.6]))
    assert abs(rep.lhs - 1.0) < 1e-3
    assert abs(rep.rhs - 1.0) < 1e-3
    assert rep.equality
    assert rep.diagnostics["mixed_totally_geodesic"]
    assert rep.diagnostics["partial_mean_equal"]
    assert rep.extras["lhs_agreement"] < 1e-3


# --- contact specializations ----------------------------------------------


def _consistent_ctr_data(rng, amb, n1, n2):
    data = random_data(rng, amb, n1, n2, frame_kind="c-totally-real")
    data.sigma = force_xi_consistency(data.sigma, (data.tangent, data.normal), amb.frame)
    return data


def test_kmu_specialization_cross_check():
    rng = np.random.default_rng(6)
    amb = make_ambient("kmu-space-form", m=4, kappa=0.3, mu=-0.7, c=2.1)
    for _ in range(100):
        data = _consistent_ctr_data(rng, amb, 2, 2)
        rep = kmu_space_form_inequality(data)
        assert rep.extras["rhs_cross_residual"] < 1e-9
        assert rep.gap >= -1e-9


def test_kmu_requires_c_totally_real():
    rng = np.random.default_rng(7)
    amb = make_ambient("kmu-space-form", m=4, kappa=0.3, mu=-0.7, c=2.1)
    data = random_data(rng, amb, 2, 2)  # generic frame
    with pytest.raises(InvalidConfigurationError):
        kmu_space_form_inequality(data)


def test_sasakian_collapse():
    # with h = 0 the specialized rhs is exactly n^2/(4 n2)|H|^2 + n1 (c+3)/4
    rng = np.random.default_rng(8)
    c = -1.2
    amb = make_ambient("sasakian-space-form", m=4, c=c)
    for _ in range(20):
        data = _consistent_ctr_data(rng, amb, 2, 2)
        rep = kmu_space_form_inequality(data)
        assert abs(rep.rhs - (rep.mean_term + 2 * (c + 3.0) / 4.0)) < 1e-12


def test_non_sasakian_cross_check():
    rng = np.random.default_rng(9)
    amb = make_ambient("non-sasakian-kmu", m=4, kappa=0.3, mu=-0.7)
    for _ in range(100):
        data = _consistent_ctr_data(rng, amb, 2, 2)
        rep = non_sasakian_inequality(data)
        assert rep.extras["rhs_cross_residual"] < 1e-9
        assert rep.gap >= -1e-9


def test_non_sasakian_matches_space_form_on_constant_c():
    rng = np.random.default_rng(10)
    kappa = 0.25
    amb = make_ambient("non-sasakian-kmu", m=4, kappa=kappa, mu=kappa + 1.0)
    for _ in range(20):
        data = _consistent_ctr_data(rng, amb, 1, 2)
        rep_n = non_sasakian_inequality(data)
        rep_k = kmu_space_form_inequality(data, c=-2.0 * kappa - 1.0)
        assert abs(rep_n.rhs - rep_k.rhs) < 1e-9


def test_non_sasakian_equality_case():
    rng = np.random.default_rng(11)
    amb = make_ambient("non-sasakian-kmu", m=4, kappa=0.4, mu=0.9)
    for _ in range(50):
        data = random_data(rng, amb, 2, 2, frame_kind="dplus")
        data.sigma = balance_for_equality(data.sigma, 2)
        data.sigma = force_xi_consistency(data.sigma, (data.tangent, data.normal), amb.frame)
        rep = non_sasakian_inequality(data)
        assert abs(rep.gap) < 1e-8
        assert rep.diagnostics["mixed_totally_geodesic"]
        assert rep.diagnostics["partial_mean_equal"]


def test_non_sasakian_rejects_sasakian_parameters():
    rng = np.random.default_rng(12)
    amb = make_ambient("sasakian-space-form", m=3, c=0.5)
    data = _consistent_ctr_data(rng, amb, 1, 1)
    with pytest.raises(SingularParameterError):
        non_sasakian_inequality(data)


# --- obstructions ----------------------------------------------------------


def _minimal_sasakian_report(c):
    rng = np.random.default_rng(13)
    amb = make_ambient("sasakian-space-form", m=3, c=c)
    data = random_data(rng, amb, 1, 1, sigma_scale=0.0, frame_kind="c-totally-real")
    return kmu_space_form_inequality(data)


def test_obstruction_table():
    assert obstruction_check(_minimal_sasakian_report(-4.0), harmonic=True, minimal=True) == NONEXISTENCE
    assert (
        obstruction_check(_minimal_sasakian_report(-3.0), harmonic=True, minimal=True)
        == WARPED_PRODUCT_IMMERSION
    )
    assert (
        obstruction_check(_minimal_sasakian_report(-3.0), eigenvalue=0.5, minimal=True)
        == NONEXISTENCE
    )
    assert obstruction_check(_minimal_sasakian_report(1.0), harmonic=True, minimal=True) == UNOBSTRUCTED


def test_obstruction_eigenfunction_below_minus_three():
    # eigenvalue warping excludes minimal immersions whenever c <= -3
    for c in (-3.0, -4.0, -6.5):
        rep = _minimal_sasakian_report(c)
        assert obstruction_check(rep, eigenvalue=0.5, minimal=True) == NONEXISTENCE


def test_obstruction_eigenvalue_below_curvature_term():
    # positive curvature term above the eigenvalue leaves existence open
    rep = _minimal_sasakian_report(1.0)  # curvature term = n1 (c+3)/4 = 1
    assert obstruction_check(rep, eigenvalue=0.5, minimal=True) == UNOBSTRUCTED


def test_obstruction_flag_validation():
    rep = _minimal_sasakian_report(-3.0)
    with pytest.raises(InvalidConfigurationError):
        obstruction_check(rep, harmonic=True, eigenvalue=0.5, minimal=True)
    with pytest.raises(InvalidConfigurationError):
        obstruction_check(rep, minimal=True)
    with pytest.raises(InvalidConfigurationError):
        obstruction_check(rep, harmonic=True)  # not flagged minimal
    with pytest.raises(InvalidConfigurationError):
        obstruction_check(rep, eigenvalue=-1.0, minimal=True)


def test_obstruction_rejects_nonminimal_report():
    rng = np.random.default_rng(14)
    amb = make_ambient("sasakian-space-form", m=3, c=-4.0)
    data = _make_nonminimal(rng, amb)
    rep = kmu_space_form_inequality(data)
    with pytest.raises(InvalidConfigurationError):
        obstruction_check(rep, harmonic=True, minimal=True)


def _make_nonminimal(rng, amb):
    data = random_data(rng, amb, 1, 1, frame_kind="c-totally-real")
    data.sigma = force_xi_consistency(data.sigma, (data.tangent, data.normal), amb.frame)
    return data


def test_dplus_leaf_inequality():
    leaf = dplus_leaf(3, 0.5, 0.7, 1, 1)
    rep = non_sasakian_inequality(leaf)
    assert rep.gap >= -1e-9
    assert rep.extras["rhs_cross_residual"] < 1e-9

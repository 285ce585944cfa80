import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from warpcheck.errors import DegenerateInputError, InvalidInputError, NumericalDomainError
from warpcheck.numeric import (
    Tolerance,
    central_diff,
    cross_diff,
    gram_schmidt,
    second_diff,
    sym_eigen,
)


def test_tolerance_positive():
    with pytest.raises(InvalidInputError):
        Tolerance(algebraic=0.0)


def test_gram_schmidt_identity_passthrough():
    out = gram_schmidt([np.array([1.0, 0.0]), np.array([0.0, 1.0])])
    assert np.allclose(out[0], [1, 0]) and np.allclose(out[1], [0, 1])


def test_gram_schmidt_hand_example():
    out = gram_schmidt([np.array([2.0, 0.0]), np.array([1.0, 1.0])])
    assert np.allclose(out[0], [1, 0], atol=1e-12)
    assert np.allclose(out[1], [0, 1], atol=1e-12)


def test_gram_schmidt_dependent_raises():
    with pytest.raises(DegenerateInputError):
        gram_schmidt([np.array([1.0, 0.0]), np.array([2.0, 0.0])])


def test_gram_schmidt_custom_inner():
    g = np.diag([4.0, 9.0])
    inner = lambda u, v: float(u @ g @ v)
    out = gram_schmidt([np.array([1.0, 0.0]), np.array([1.0, 1.0])], inner=inner)
    for i, u in enumerate(out):
        for j, v in enumerate(out):
            assert abs(inner(u, v) - (i == j)) < 1e-10


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.integers(0, 2**31 - 1))
def test_gram_schmidt_orthonormality_property(dim, seed):
    rng = np.random.default_rng(seed)
    vecs = [rng.normal(size=dim) for _ in range(dim)]
    try:
        out = gram_schmidt(vecs)
    except DegenerateInputError:
        return  # nearly dependent draw
    mat = np.column_stack(out)
    assert np.max(np.abs(mat.T @ mat - np.eye(dim))) < 1e-10


def test_sym_eigen_identity():
    evals, _ = sym_eigen(np.eye(3))
    assert np.allclose(evals, [1, 1, 1])


def test_sym_eigen_diagonal_sorted():
    evals, _ = sym_eigen(np.diag([-1.0, 0.0, 1.0]))
    assert np.allclose(evals, [-1, 0, 1])


def test_sym_eigen_offdiagonal():
    evals, vecs = sym_eigen(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(evals, [-1, 1])
    assert np.max(np.abs(vecs.T @ vecs - np.eye(2))) < 1e-12


def test_sym_eigen_rejects_asymmetric():
    with pytest.raises(InvalidInputError):
        sym_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_sym_eigen_random_reconstruction():
    # module invariant: |mV - V Lambda| < 1e-9 up to dim 15, 10^3 trials
    rng = np.random.default_rng(42)
    for _ in range(1000):
        n = int(rng.integers(2, 16))
        a = rng.normal(size=(n, n))
        m = 0.5 * (a + a.T)
        evals, vecs = sym_eigen(m)
        assert np.max(np.abs(m @ vecs - vecs * evals)) < 1e-9
        assert np.max(np.abs(vecs @ np.diag(evals) @ vecs.T - m)) < 1e-10


def test_central_diff_quadratic():
    f = lambda x: float(x[0] ** 2)
    assert abs(central_diff(f, np.array([1.0]), 0) - 2.0) < 1e-9


def test_second_diff_cosine():
    f = lambda x: float(np.cos(x[0]))
    assert abs(second_diff(f, np.array([0.0]), 0) + 1.0) < 1e-6


def test_central_diff_constant_zero():
    f = lambda x: 3.5
    assert central_diff(f, np.array([0.7]), 0) == 0.0


def test_diff_exact_on_low_degree_polynomials():
    # exact up to 1e-9 with the default step for degree <= 2
    rng = np.random.default_rng(1)
    for _ in range(20):
        a, b, c = rng.normal(size=3)
        f = lambda x: float(a * x[0] ** 2 + b * x[0] + c)
        x = rng.normal(size=1)
        assert abs(central_diff(f, x, 0) - (2 * a * x[0] + b)) < 1e-9
        assert abs(second_diff(f, x, 0) - 2 * a) < 1e-5


def test_cross_diff_mixed_term():
    f = lambda x: float(x[0] * x[1] ** 2)
    val = cross_diff(f, np.array([0.4, 0.9]), 0, 1)
    assert abs(val - 2 * 0.9) < 1e-6


def test_non_finite_evaluation_raises():
    f = lambda x: float(np.log(x[0]))
    with np.errstate(divide="ignore", invalid="ignore"), pytest.raises(NumericalDomainError):
        central_diff(f, np.array([0.0]), 0)

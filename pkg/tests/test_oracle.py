import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ejspec import spectral
from ejspec.errors import DimensionError, NoConvergence, SingularError
from ejspec.operator import OperatorSpec, to_dense, truncate
from ejspec.oracle import LUFactor, eig_root, lu_factor, m_oracle, resolvent_norm, tridiag_solve


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 30), st.complex_numbers(max_magnitude=1.0), st.complex_numbers(max_magnitude=5.0))
def test_lu_reconstructs_shifted_matrix(n, a, z):
    tri = truncate(OperatorSpec.standard(a), n)
    try:
        lu = lu_factor(tri, z)
    except SingularError:
        return
    A = to_dense(tri) - z * np.eye(n)
    assert np.max(np.abs(lu.reconstruct() - A)) < 1e-12 * max(1, np.max(np.abs(A)))


def test_solve_examples():
    tri = truncate(OperatorSpec.standard(0.5), 4)
    x = tridiag_solve(tri, 1e6, np.ones(4))
    assert np.allclose(x, -1e-6 * np.ones(4), rtol=1e-5)
    one = truncate(OperatorSpec.standard(0.5), 1)
    assert tridiag_solve(one, 2.0, [4.0])[0] == pytest.approx(-2)
    with pytest.raises(SingularError):
        tridiag_solve(one, 0.0, [1.0])
    with pytest.raises(DimensionError):
        tridiag_solve(tri, 1.0, np.ones(3))


def test_singular_shift_detected():
    # J_2 has eigenvalues +-1
    with pytest.raises(SingularError):
        tridiag_solve(truncate(OperatorSpec.standard(0.5), 2), 1.0, [1.0, 0.0])


def test_solve_backward_error():
    rng = np.random.default_rng(3)
    n = 500
    tri = truncate(OperatorSpec.standard(0.3 + 0.6j), n)
    z = 1.7 - 0.2j
    b = rng.normal(size=n) + 1j * rng.normal(size=n)
    x = tridiag_solve(tri, z, b)
    A = to_dense(tri) - z * np.eye(n)
    assert np.linalg.norm(A @ x - b) < 1e-12 * np.linalg.norm(A, 2) * np.linalg.norm(x)


def test_adjoint_solve():
    n = 40
    tri = truncate(OperatorSpec.standard(0.4j), n)
    z = 0.3 + 1.2j
    b = np.arange(n) + 1j
    x = LUFactor(tri, z).solve(b, adjoint=True)
    A = to_dense(tri) - z * np.eye(n)
    assert np.allclose(A.conj().T @ x, b)


def test_m_oracle_converges_in_dimension():
    spec = OperatorSpec.standard(0.7 + 0.2j)
    z = 0.4 + 0.9j
    assert abs(m_oracle(spec, z, 2000) - m_oracle(spec, z, 4000)) < 1e-12


@pytest.mark.parametrize("spec", [OperatorSpec.standard(0.3 + 0.6j), OperatorSpec.tilde(0.5)])
def test_resolvent_norm_against_svd(spec):
    n = 120
    z = 0.8 + 0.3j
    A = to_dense(truncate(spec, n)) - z * np.eye(n)
    ref = 1 / np.linalg.svd(A, compute_uv=False)[-1]
    assert resolvent_norm(spec, z, n, tol=1e-12) == pytest.approx(ref, rel=1e-8)


def test_resolvent_norm_of_normal_operator():
    # alpha = 0.5 is self-adjoint: the norm is one over the distance to the spectrum
    spec = OperatorSpec.standard(0.5)
    z = 1.0 + 0.7j
    lam = np.array([spectral.eigenvalue(spec, N) for N in range(-10, 10)])
    ref = 1 / np.min(np.abs(lam - z))
    assert resolvent_norm(spec, z, 1000, tol=1e-6) == pytest.approx(ref, rel=0.02)


def test_resolvent_norm_near_eigenvalue():
    spec = OperatorSpec.standard(0.5j)
    lam = spectral.eigenvalue(spec, 0)
    assert resolvent_norm(spec, lam + 1e-6, 1000, tol=1e-6) > 1e5


def test_resolvent_norm_is_deterministic_and_sign_symmetric():
    a = 0.3 + 0.7j
    z = 2.0 + 0.5j
    x = resolvent_norm(OperatorSpec.standard(a), z, 400, 1e-4, seed=9)
    assert x == resolvent_norm(OperatorSpec.standard(a), z, 400, 1e-4, seed=9)
    assert x == resolvent_norm(OperatorSpec.standard(-a), z, 400, 1e-4, seed=9)


@pytest.mark.parametrize("a", [0.5, 0.4 + 0.2j, 0.5j])
def test_eig_root_converges_to_eigenvalue(a):
    spec = OperatorSpec.standard(a)
    for N in (0, 1, 2):
        lam = spectral.eigenvalue(spec, N)
        assert abs(eig_root(spec, 1000, lam + 0.05) - lam) < 1e-10


def test_eig_root_small_dimension():
    # J_2 has eigenvalues +-1
    assert eig_root(OperatorSpec.standard(0.5), 2, 0.8) == pytest.approx(1)


def test_eig_root_gives_up():
    with pytest.raises(NoConvergence):
        eig_root(OperatorSpec.standard(0.5), 50, 0.3 + 2j, max_iter=2)

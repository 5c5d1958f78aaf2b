import numpy as np
import pytest

import qisflow


def test_two_level_metric_and_sld():
    rho = np.diag([0.75, 0.25]).astype(complex)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    assert qisflow.qf_metric(rho, sx, sx) == pytest.approx(4.0, rel=1e-14)
    np.testing.assert_allclose(qisflow.sld(rho, sx), 2 * sx, atol=1e-14)
    assert qisflow.qf_metric(rho, sx, sx) == pytest.approx(4 * qisflow.r_metric(rho, sx, sx), rel=1e-12)


def test_spectral_decompose_sorts_ascending():
    h, theta = qisflow.spectral_decompose(np.diag([0.75, 0.25]).astype(complex))
    np.testing.assert_allclose(theta, [0.25, 0.75])
    np.testing.assert_allclose(h @ np.diag(theta) @ h.conj().T, np.diag([0.75, 0.25]), atol=1e-15)


def test_gradients_match_worked_values():
    np.testing.assert_allclose(qisflow.grad_kappa([0.5, 0.5], [1.0, 2.0]), [-0.125, 0.125], atol=1e-15)
    g = qisflow.grad_K(np.eye(2, dtype=complex) / 2, [1.0, -1.0])
    np.testing.assert_allclose(g, np.diag([0.25, -0.25]), atol=1e-15)
    g = qisflow.grad_general(np.eye(2, dtype=complex) / 2, np.diag([1.0, -1.0]).astype(complex))
    np.testing.assert_allclose(g, np.diag([0.5, -0.5]), atol=1e-15)


def test_isometry_and_lift():
    embedded, simplex = qisflow.check_isometry([0.2, 0.3, 0.5], [0.1, -0.3, 0.2], [0.4, 0.1, -0.5])
    assert abs(embedded - simplex) < 1e-12
    rho = np.diag([0.5, 0.3, 0.2]).astype(complex)
    xi = np.array([[0.1, 0.2j, 0], [-0.2j, -0.3, 0.1], [0, 0.1, 0.2]])
    phi, lift = qisflow.horizontal_lift(rho, xi)
    assert phi.shape == (4, 3)
    np.testing.assert_allclose((phi.conj().T @ lift + lift.conj().T @ phi) / 3, xi, atol=1e-12)
    np.testing.assert_allclose(phi @ lift.conj().T, lift @ phi.conj().T, atol=1e-12)


def test_solve_lp_worked_example():
    out = qisflow.solve_lp([3, 1, 4, 1.5, 9])
    assert out["vertex"] == 1
    assert out["objective"] == pytest.approx(1.0, rel=1e-6)
    assert out["stop_reason"] == "boundary_reached"


def test_trajectory_shapes_and_descent():
    params = qisflow.IntegrationParams(step=1e-2, t_max=1.0, record_every=1)
    out = qisflow.integrate_matrix(np.eye(3, dtype=complex) / 3, [1.0, -2.0, 0.5], params)
    assert out["states"].shape == (len(out["times"]), 3, 3)
    assert np.all(np.diff(out["potential"]) <= 1e-12)
    simplex = qisflow.integrate_simplex([1 / 3, 1 / 3, 1 / 3], [1.0, -2.0, 0.5], params)
    np.testing.assert_allclose(np.einsum("tjj->tj", out["states"]).real, simplex["states"], atol=1e-12)


def test_errors_map_to_exceptions():
    with pytest.raises(qisflow.ContractError):
        qisflow.qf_metric(np.eye(2, dtype=complex), np.zeros((2, 2)), np.zeros((2, 2)))
    with pytest.raises(qisflow.RegularityError):
        qisflow.simplex_metric([1.0, 0.0], [0.0, 0.0], [0.0, 0.0])
    with pytest.raises(ValueError):
        qisflow.IntegrationParams(step=-1.0)
    with pytest.raises(qisflow.Error):
        qisflow.run_suite("nope")


def test_verify_suite():
    assert all(c["passed"] for c in qisflow.run_suite("isometry", seed=3, count=50))

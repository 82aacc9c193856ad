import numpy as np
import pytest

from doublejets.actions import (act_L_velocity, act_P_double, is_rho_regular,
                                solve_transporter)
from doublejets.core import Dims, DoubleVelocity, Velocity, double_equal, is_holonomic, is_regular
from doublejets.groups import (JetGroupElement, PrincipalJetElement,
                               compose_P, identity_L, identity_P)
from doublejets.linalg import close, pivot_rows, scaled_error
from doublejets.oracle import rho_regular_fd
from doublejets.sampling import (double, group_element, holonomic_double,
                                 holonomic_element, principal_element,
                                 rng_from, velocity)


def test_act_L_identity_and_scaling():
    v = Velocity(Dims(1, 2), [0, 0], [[1], [2]])
    assert close(act_L_velocity(v, identity_L(1)).U, v.U)
    moved = act_L_velocity(v, JetGroupElement(1, [[3.0]]))
    # jet of gamma(phi(t)) with phi(t) = 3t scales the derivative by 3
    assert np.array_equal(moved.U, [[3.0], [6.0]])
    assert np.array_equal(moved.u, v.u)


def test_act_L_preserves_regularity():
    for t in range(50):
        rng = rng_from(21, t)
        v = velocity(rng, Dims(2, 4))
        g = group_element(rng, 2)
        assert is_regular(act_L_velocity(v, g))


def test_act_L_dimension_mismatch():
    v = Velocity(Dims(1, 2), [0, 0], [[1], [2]])
    with pytest.raises(ValueError):
        act_L_velocity(v, identity_L(2))


def test_act_P_identity_and_worked_case():
    dv = DoubleVelocity(Dims(1, 2), [0, 0], [[1], [2]], [[3], [4]], [[[5]], [[6]]])
    assert double_equal(act_P_double(dv, identity_P(1)), dv)
    p = PrincipalJetElement(1, [[2.0]], [[3.0]], [[[7.0]]])
    moved = act_P_double(dv, p)
    assert np.array_equal(moved.Ui, [[3.0], [6.0]])
    assert np.array_equal(moved.Uo, [[6.0], [8.0]])
    assert np.array_equal(moved.W.ravel(), [37.0, 50.0])


def test_act_P_right_action_law():
    for t in range(100):
        rng = rng_from(22, t)
        dv = double(rng, Dims(2, 4))
        p1 = principal_element(rng, 2)
        p2 = principal_element(rng, 2)
        two = act_P_double(act_P_double(dv, p1), p2)
        one = act_P_double(dv, compose_P(p1, p2))
        assert scaled_error(two.W, one.W) <= 1e-9
        assert scaled_error(two.Ui, one.Ui) <= 1e-9
        assert scaled_error(two.Uo, one.Uo) <= 1e-9


def test_act_P_holonomic_stays_holonomic():
    for t in range(50):
        rng = rng_from(23, t)
        dv = holonomic_double(rng, Dims(2, 4))
        p = holonomic_element(rng, 2)
        assert is_holonomic(act_P_double(dv, p), 1e-9)


def test_rho_regular_contains_tau_regular():
    for t in range(50):
        rng = rng_from(24, t)
        dv = double(rng, Dims(2, 4))  # rank(Uo) = m by construction
        assert is_rho_regular(dv)


def test_rho_regular_vertical_cases():
    const = DoubleVelocity(Dims(1, 2), [0, 0], [[1], [0]], [[0], [0]],
                           np.zeros((2, 1, 1)))
    assert not is_rho_regular(const)  # projected curve is constant
    rotating = DoubleVelocity(Dims(1, 2), [0, 0], [[1], [0]], [[0], [0]],
                              [[[0.0]], [[1.0]]])
    assert is_rho_regular(rotating)  # the plane itself rotates
    assert rho_regular_fd(rotating)
    assert not rho_regular_fd(const)
    tau_regular = DoubleVelocity(Dims(1, 2), [0, 0], [[1], [0]], [[4], [6]],
                                 np.zeros((2, 1, 1)))
    assert rho_regular_fd(tau_regular)


def test_rho_regular_requires_inner_regular():
    dv = DoubleVelocity(Dims(1, 2), [0, 0], [[0], [0]], [[1], [2]],
                        np.zeros((2, 1, 1)))
    with pytest.raises(ValueError):
        is_rho_regular(dv)


def test_solve_transporter_identity_and_roundtrip():
    for t in range(50):
        rng = rng_from(25, t)
        dv = double(rng, Dims(2, 4))
        I = pivot_rows([dv.Ui, dv.Uo], 2)
        p = solve_transporter(dv, dv, I)
        assert p is not None
        assert scaled_error(p.Aphi, np.eye(2)) <= 1e-9
        assert scaled_error(p.Asigma, np.eye(2)) <= 1e-9
        assert np.max(np.abs(p.B)) <= 1e-9
        p0 = principal_element(rng, 2)
        found = solve_transporter(dv, act_P_double(dv, p0), I)
        assert found is not None
        assert scaled_error(found.B, p0.B) <= 1e-9


def test_solve_transporter_rejects_off_orbit():
    rng = rng_from(26)
    dv = double(rng, Dims(2, 4))
    I = pivot_rows([dv.Ui, dv.Uo], 2)
    dv2 = act_P_double(dv, principal_element(rng, 2))
    row = next(i for i in range(4) if i not in I)
    W = dv2.W.copy()
    W[row, 0, 0] += 1.0
    bad = DoubleVelocity(dv2.dims, dv2.u, dv2.Ui, dv2.Uo, W)
    assert solve_transporter(dv, bad, I) is None


def test_solve_transporter_rejects_base_point_mismatch():
    rng = rng_from(27)
    dv = double(rng, Dims(2, 4))
    I = pivot_rows([dv.Ui, dv.Uo], 2)
    shifted = DoubleVelocity(dv.dims, dv.u + 1.0, dv.Ui, dv.Uo, dv.W)
    assert solve_transporter(dv, shifted, I) is None


def test_solve_transporter_singular_pivot_block():
    dv = DoubleVelocity(Dims(1, 2), [0, 0], [[0], [1]], [[1], [1]],
                        np.zeros((2, 1, 1)))
    with pytest.raises(ValueError):
        solve_transporter(dv, dv, (0,))

import numpy as np
import pytest

from doublejets.actions import act_L_velocity, act_P_double
from doublejets.core import (Dims, double_equal, exchange, inner_projection,
                             is_holonomic)
from doublejets.groups import JetGroupElement, PrincipalJetElement, identity_P
from doublejets.linalg import close, scaled_error
from doublejets.oracle import (BiPolyMap, PolyMap, act_oracle,
                               compose_second_order, double_jet_of, jet_of,
                               prolong, rho_regular_fd, swap_arguments,
                               to_bipoly)
from doublejets.sampling import (bipolymap, origin_polymap, polymap,
                                 principal_element, rng_from)


def test_jet_of_reads_value_and_jacobian():
    ident = PolyMap(Dims(2, 2), np.zeros(2), np.eye(2), np.zeros((2, 2, 2)))
    v = jet_of(ident)
    assert np.array_equal(v.u, np.zeros(2)) and np.array_equal(v.U, np.eye(2))
    g = PolyMap(Dims(1, 2), [0.0, 0.0], [[1.0], [0.0]], [[[0.0]], [[2.0]]])
    assert np.array_equal(jet_of(g).U, [[1.0], [0.0]])


def test_jet_of_chain_rule_against_linear_action():
    rng = rng_from(51)
    f = polymap(rng, Dims(2, 4))
    A = np.array([[2.0, 1.0], [0.0, 1.0]])
    # jet of f(A x), read off by central differences of the evaluated map
    e = np.eye(2)
    U = np.stack([0.5 * (f(A @ e[i]) - f(-(A @ e[i]))) for i in range(2)], axis=1)
    acted = act_L_velocity(jet_of(f), JetGroupElement(2, A))
    assert close(U, acted.U)


def test_double_jet_of_and_roundtrip():
    x = BiPolyMap(Dims(2, 2), np.zeros(2), np.eye(2), np.eye(2),
                  np.zeros((2, 2, 2)))
    dv = double_jet_of(x)
    assert np.array_equal(dv.Ui, np.eye(2)) and np.array_equal(dv.Uo, np.eye(2))
    rng = rng_from(52)
    y = bipolymap(rng, Dims(2, 3))
    assert double_equal(double_jet_of(to_bipoly(double_jet_of(y))), double_jet_of(y))


def test_prolong_quadratic_curve():
    g = PolyMap(Dims(1, 2), [0.0, 0.0], [[1.0], [0.0]], [[[0.0]], [[2.0]]])
    dv = prolong(g)
    assert np.array_equal(dv.Ui, [[1.0], [0.0]])
    assert np.array_equal(dv.Uo, dv.Ui)
    assert dv.W[1, 0, 0] == 2.0
    linear = PolyMap(Dims(1, 2), [1.0, 2.0], [[3.0], [4.0]], np.zeros((2, 1, 1)))
    assert np.max(np.abs(prolong(linear).W)) == 0.0


def test_prolong_always_holonomic():
    for t in range(100):
        rng = rng_from(53, t)
        g = polymap(rng, Dims(2, 4))
        dv = prolong(g)
        assert is_holonomic(dv)
        assert double_equal(exchange(dv), dv)
        v = jet_of(g)
        proj = inner_projection(dv)
        assert np.array_equal(proj.u, v.u) and np.array_equal(proj.U, v.U)


def test_act_oracle_identity_and_worked_case():
    x = BiPolyMap(Dims(1, 2), [0.0, 0.0], [[1.0], [2.0]], [[3.0], [4.0]],
                  [[[5.0]], [[6.0]]])
    same = act_oracle(x, identity_P(1))
    assert close(same.Pst, x.Pst) and close(same.Ps, x.Ps)
    p = PrincipalJetElement(1, [[2.0]], [[3.0]], [[[7.0]]])
    moved = act_oracle(x, p)
    assert np.array_equal(moved.Pst.ravel(), [37.0, 50.0])
    assert np.array_equal(moved.Ps, [[3.0], [6.0]])
    assert np.array_equal(moved.Pt, [[6.0], [8.0]])


def test_act_oracle_grounds_coordinate_action():
    for t in range(200):
        rng = rng_from(54, t)
        m = int(rng.integers(1, 4))
        x = bipolymap(rng, Dims(m, m + 2))
        p = principal_element(rng, m)
        assert scaled_error(double_jet_of(act_oracle(x, p)).W,
                            act_P_double(double_jet_of(x), p).W) <= 1e-9


def test_act_oracle_composition_consistency():
    for t in range(100):
        rng = rng_from(55, t)
        x = bipolymap(rng, Dims(2, 4))
        p1 = principal_element(rng, 2)
        p2 = principal_element(rng, 2)
        two = double_jet_of(act_oracle(act_oracle(x, p1), p2))
        from doublejets.groups import compose_P
        one = double_jet_of(act_oracle(x, compose_P(p1, p2)))
        assert scaled_error(two.W, one.W) <= 1e-9


def test_swap_arguments_matches_exchange():
    for t in range(100):
        rng = rng_from(56, t)
        x = bipolymap(rng, Dims(2, 4))
        assert double_equal(double_jet_of(swap_arguments(x)),
                            exchange(double_jet_of(x)), 0.0)


def test_compose_second_order_identity_and_worked_value():
    f1 = PolyMap(Dims(1, 1), [0.0], [[2.0]], [[[6.0]]])
    ident = PolyMap(Dims(1, 1), [0.0], [[1.0]], [[[0.0]]])
    assert close(compose_second_order(f1, ident).c1, f1.c1)
    assert close(compose_second_order(f1, ident).c2, f1.c2)
    f2 = PolyMap(Dims(1, 1), [0.0], [[3.0]], [[[4.0]]])
    h = compose_second_order(f1, f2)
    assert close(h.c1, [[6.0]])
    assert close(h.c2, [[[62.0]]])  # a1*b2 + b1*a2^2


def test_compose_second_order_associativity():
    for t in range(60):
        rng = rng_from(57, t)
        f1 = origin_polymap(rng, 2)
        f2 = origin_polymap(rng, 2)
        f3 = origin_polymap(rng, 2)
        left = compose_second_order(compose_second_order(f1, f2), f3)
        right = compose_second_order(f1, compose_second_order(f2, f3))
        assert scaled_error(left.c1, right.c1) <= 1e-9
        assert scaled_error(left.c2, right.c2) <= 1e-9


def test_compose_second_order_preconditions():
    f = PolyMap(Dims(1, 2), [0.0, 0.0], [[1.0], [0.0]], np.zeros((2, 1, 1)))
    with pytest.raises(ValueError):
        compose_second_order(f, f)
    shifted = PolyMap(Dims(1, 1), [1.0], [[1.0]], [[[0.0]]])
    ok = PolyMap(Dims(1, 1), [0.0], [[1.0]], [[[0.0]]])
    with pytest.raises(ValueError):
        compose_second_order(shifted, ok)


def test_rho_regular_fd_agrees_with_exact_test():
    agreements = 0
    for t in range(200):
        rng = rng_from(58, t)
        dims = Dims(2, 4)
        from doublejets.sampling import inner_regular_double, vertical_double
        dv = (inner_regular_double(rng, dims) if t % 2 == 0
              else vertical_double(rng, dims))
        from doublejets.actions import is_rho_regular
        if rho_regular_fd(dv) == is_rho_regular(dv):
            agreements += 1
    assert agreements == 200


def test_polymap_requires_symmetric_quadratic_part():
    c2 = np.zeros((2, 2, 2))
    c2[0, 0, 1] = 1.0
    with pytest.raises(ValueError):
        PolyMap(Dims(2, 2), np.zeros(2), np.eye(2), c2)

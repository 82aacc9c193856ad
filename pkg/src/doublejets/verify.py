"""Randomized verification suites with deterministic per-trial streams.

Each property is a function returning a per-trial error measure; a trial
fails when the error exceeds the tolerance.  Boolean properties report 0.0
on success and 1.0 on violation.  Trial t of property P draws from the
stream (seed, crc32(P), t), so results do not depend on execution order
and are reproducible byte for byte.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

from . import actions, contact, core, groups, oracle, sampling
from .core import Dims
from .linalg import inf_norm, pivot_rows, scaled_error, swap_last2

SUITE_ORDER = ("group-axioms", "exchange", "action", "freeness",
               "subgroup-char", "quotient-invariance", "decomposition",
               "oracle-equivalence")

MARGIN = 0.1  # separation margin for negative tests, per the integer sampling


@dataclass(frozen=True)
class PropertyResult:
    name: str
    trials: int
    failures: int
    max_error: float


def _trial_rng(seed: int, name: str, trial: int) -> np.random.Generator:
    return sampling.rng_from(seed, zlib.crc32(name.encode("ascii")), trial)


def _perr(a, b) -> float:
    return max(scaled_error(a.Aphi, b.Aphi), scaled_error(a.Asigma, b.Asigma),
               scaled_error(a.B, b.B))


def _dverr(a, b) -> float:
    return max(scaled_error(a.u, b.u), scaled_error(a.Ui, b.Ui),
               scaled_error(a.Uo, b.Uo), scaled_error(a.W, b.W))


def _dvdist(a, b) -> float:
    return max(inf_norm(a.u - b.u), inf_norm(a.Ui - b.Ui),
               inf_norm(a.Uo - b.Uo), inf_norm(a.W - b.W))


def _dcerr(a, b) -> float:
    if a.I != b.I:
        return 1.0
    return max(scaled_error(a.u, b.u), scaled_error(a.X, b.X),
               scaled_error(a.Y, b.Y), scaled_error(a.Z, b.Z))


def _qerr(a, b) -> float:
    if a.I != b.I:
        return 1.0
    return max(scaled_error(a.base.u, b.base.u), scaled_error(a.base.P, b.base.P),
               scaled_error(a.V, b.V))


def _nonidentity_principal(rng, m):
    e = groups.identity_P(m)
    while True:
        p = sampling.principal_element(rng, m)
        if _perr(p, e) >= MARGIN:
            return p


def _nonidentity_semiholonomic(rng, m):
    e = groups.identity_P(m)
    while True:
        p = sampling.semiholonomic_element(rng, m)
        if _perr(p, e) >= MARGIN:
            return p


# ---------------------------------------------------------------------------
# group-axioms


def p_associativity(m, n, rng, tol):
    p1 = sampling.principal_element(rng, m)
    p2 = sampling.principal_element(rng, m)
    p3 = sampling.principal_element(rng, m)
    left = groups.compose_P(groups.compose_P(p1, p2), p3)
    right = groups.compose_P(p1, groups.compose_P(p2, p3))
    return _perr(left, right)


def p_identity_law(m, n, rng, tol):
    p = sampling.principal_element(rng, m)
    e = groups.identity_P(m)
    return max(_perr(groups.compose_P(p, e), p), _perr(groups.compose_P(e, p), p))


def p_inverse_law(m, n, rng, tol):
    p = sampling.principal_element(rng, m)
    q = groups.inverse_P(p)
    e = groups.identity_P(m)
    return max(_perr(groups.compose_P(p, q), e), _perr(groups.compose_P(q, p), e),
               _perr(groups.inverse_P(q), p))


def p_linear_group_axioms(m, n, rng, tol):
    g1 = sampling.group_element(rng, m)
    g2 = sampling.group_element(rng, m)
    g3 = sampling.group_element(rng, m)
    e = groups.identity_L(m)
    assoc = scaled_error(groups.compose_L(groups.compose_L(g1, g2), g3).A,
                         groups.compose_L(g1, groups.compose_L(g2, g3)).A)
    ident = scaled_error(groups.compose_L(g1, e).A, g1.A)
    inv = scaled_error(groups.compose_L(g1, groups.inverse_L(g1)).A, e.A)
    return max(assoc, ident, inv)


def _semi_residual(p):
    return inf_norm(p.Aphi - p.Asigma)


def _holo_residual(p):
    return max(_semi_residual(p), inf_norm(p.B - swap_last2(p.B)))


def _curv_residual(p):
    return max(_semi_residual(p), inf_norm(p.B + swap_last2(p.B)))


def p_subgroup_closure(m, n, rng, tol):
    errs = []
    for sample, residual in ((sampling.semiholonomic_element, _semi_residual),
                             (sampling.holonomic_element, _holo_residual),
                             (sampling.curvature_element, _curv_residual)):
        a = sample(rng, m)
        b = sample(rng, m)
        errs.append(residual(groups.compose_P(a, b)))
        errs.append(residual(groups.inverse_P(a)))
    return max(errs)


def p_symmetrize_projection(m, n, rng, tol):
    p1 = sampling.semiholonomic_element(rng, m)
    p2 = sampling.semiholonomic_element(rng, m)
    v1 = groups.symmetrize_P(p1)
    idem = _perr(groups.symmetrize_P(v1), v1)
    hom = _perr(groups.symmetrize_P(groups.compose_P(p1, p2)),
                groups.compose_P(v1, groups.symmetrize_P(p2)))
    return max(idem, hom, _holo_residual(v1))


def p_factor_semiholonomic(m, n, rng, tol):
    p = sampling.semiholonomic_element(rng, m)
    h, c = groups.factor_semiholonomic(p)
    eye = np.eye(m)
    return max(_perr(groups.compose_P(h, c), p), _holo_residual(h),
               _curv_residual(c), inf_norm(c.Aphi - eye), inf_norm(c.Asigma - eye))


def p_embed_homomorphism(m, n, rng, tol):
    g1 = sampling.group_element(rng, m)
    g2 = sampling.group_element(rng, m)
    hom = _perr(groups.embed_L(groups.compose_L(g1, g2)),
                groups.compose_P(groups.embed_L(g1), groups.embed_L(g2)))
    back = scaled_error(groups.lambda_P(groups.embed_L(g1)).A, g1.A)
    return max(hom, back)


def p_second_order_roundtrip(m, n, rng, tol):
    p = sampling.holonomic_element(rng, m)
    q = groups.to_second_order(p)
    there = _perr(groups.from_second_order(q), p)
    q2 = groups.to_second_order(groups.from_second_order(q))
    back = max(scaled_error(q2.A, q.A), scaled_error(q2.S, q.S))
    return max(there, back)


def p_factor_principal(m, n, rng, tol):
    p = sampling.principal_element(rng, m)
    t, l = groups.factor_P(p)
    return max(_perr(groups.compose_P(t, l), p), inf_norm(t.Aphi - np.eye(m)),
               _perr(l, groups.embed_L(groups.lambda_P(p))))


# ---------------------------------------------------------------------------
# exchange


def p_exchange_involution(m, n, rng, tol):
    dv = sampling.raw_double(rng, Dims(m, n))
    return _dvdist(core.exchange(core.exchange(dv)), dv)


def p_exchange_P_involution(m, n, rng, tol):
    p = sampling.principal_element(rng, m)
    return _perr(groups.exchange_P(groups.exchange_P(p)), p)


def p_lambda_exchange_mu(m, n, rng, tol):
    p = sampling.principal_element(rng, m)
    return inf_norm(groups.lambda_P(groups.exchange_P(p)).A - groups.mu_P(p).A)


def p_projection_intertwining(m, n, rng, tol):
    dv = sampling.raw_double(rng, Dims(m, n))
    left = core.inner_projection(core.exchange(dv))
    right = core.outer_projection(dv)
    return max(inf_norm(left.u - right.u), inf_norm(left.U - right.U))


def p_holonomic_fixed_points(m, n, rng, tol):
    dims = Dims(m, n)
    pick = int(rng.integers(0, 3))
    dv = (sampling.holonomic_double(rng, dims) if pick == 0
          else sampling.semiholonomic_double(rng, dims) if pick == 1
          else sampling.raw_double(rng, dims))
    flag = core.is_holonomic(dv, tol)
    dist = _dvdist(core.exchange(dv), dv)
    return 0.0 if flag == (dist <= 2.0 * tol) else 1.0


def p_regularity_duality(m, n, rng, tol):
    dv = sampling.raw_double(rng, Dims(m, n))
    same = (core.is_inner_regular(dv, tol)
            == core.is_tau_regular(core.exchange(dv), tol))
    return 0.0 if same else 1.0


def p_exchange_semiholonomic_hom(m, n, rng, tol):
    p1 = sampling.semiholonomic_element(rng, m)
    p2 = sampling.semiholonomic_element(rng, m)
    return _perr(groups.exchange_P(groups.compose_P(p1, p2)),
                 groups.compose_P(groups.exchange_P(p1), groups.exchange_P(p2)))


# ---------------------------------------------------------------------------
# action


def p_velocity_right_action(m, n, rng, tol):
    v = sampling.velocity(rng, Dims(m, n))
    g1 = sampling.group_element(rng, m)
    g2 = sampling.group_element(rng, m)
    law = scaled_error(actions.act_L_velocity(actions.act_L_velocity(v, g1), g2).U,
                       actions.act_L_velocity(v, groups.compose_L(g1, g2)).U)
    ident = inf_norm(actions.act_L_velocity(v, groups.identity_L(m)).U - v.U)
    return max(law, ident)


def p_double_right_action(m, n, rng, tol):
    dv = sampling.raw_double(rng, Dims(m, n))
    p1 = sampling.principal_element(rng, m)
    p2 = sampling.principal_element(rng, m)
    law = _dverr(actions.act_P_double(actions.act_P_double(dv, p1), p2),
                 actions.act_P_double(dv, groups.compose_P(p1, p2)))
    ident = _dvdist(actions.act_P_double(dv, groups.identity_P(m)), dv)
    return max(law, ident)


def p_action_worked_m1(m, n, rng, tol):
    dv = core.DoubleVelocity(Dims(1, 2), [0.0, 0.0], [[1.0], [2.0]],
                             [[3.0], [4.0]], [[[5.0]], [[6.0]]])
    p = groups.PrincipalJetElement(1, [[2.0]], [[3.0]], [[[7.0]]])
    moved = actions.act_P_double(dv, p)
    want = core.DoubleVelocity(Dims(1, 2), [0.0, 0.0], [[3.0], [6.0]],
                               [[6.0], [8.0]], [[[37.0]], [[50.0]]])
    return _dverr(moved, want)


def p_contact_invariance(m, n, rng, tol):
    v = sampling.velocity(rng, Dims(m, n))
    g = sampling.group_element(rng, m)
    c1 = contact.contact_of(v, tol)
    c2 = contact.contact_of(actions.act_L_velocity(v, g), tol)
    return max(scaled_error(c1.u, c2.u), scaled_error(c1.P, c2.P))


def p_regularity_preserved(m, n, rng, tol):
    v = sampling.velocity(rng, Dims(m, n))
    g = sampling.group_element(rng, m)
    return 0.0 if core.is_regular(actions.act_L_velocity(v, g), tol) else 1.0


# ---------------------------------------------------------------------------
# freeness


def _rho_regular_sample(rng, dims):
    if int(rng.integers(0, 2)) == 0:
        return sampling.double(rng, dims)
    while True:
        dv = sampling.vertical_double(rng, dims)
        if actions.is_rho_regular(dv):
            return dv


def p_freeness_full_group(m, n, rng, tol):
    dv = _rho_regular_sample(rng, Dims(m, n))
    p = _nonidentity_principal(rng, m)
    return 0.0 if _dvdist(actions.act_P_double(dv, p), dv) > 0.5 else 1.0


def p_freeness_semiholonomic(m, n, rng, tol):
    dv = sampling.inner_regular_double(rng, Dims(m, n))
    p = _nonidentity_semiholonomic(rng, m)
    return 0.0 if _dvdist(actions.act_P_double(dv, p), dv) > 0.5 else 1.0


def p_transporter_identity(m, n, rng, tol):
    dv = sampling.double(rng, Dims(m, n))
    I = pivot_rows([dv.Ui, dv.Uo], m, tol)
    p = actions.solve_transporter(dv, dv, I, tol)
    return 1.0 if p is None else _perr(p, groups.identity_P(m))


def p_transporter_roundtrip(m, n, rng, tol):
    dv = sampling.double(rng, Dims(m, n))
    p0 = sampling.principal_element(rng, m)
    I = pivot_rows([dv.Ui, dv.Uo], m, tol)
    p = actions.solve_transporter(dv, actions.act_P_double(dv, p0), I, tol)
    return 1.0 if p is None else _perr(p, p0)


def p_transporter_rejection(m, n, rng, tol):
    dv = sampling.double(rng, Dims(m, n))
    p0 = sampling.principal_element(rng, m)
    I = pivot_rows([dv.Ui, dv.Uo], m, tol)
    dv2 = actions.act_P_double(dv, p0)
    row = next(i for i in range(n) if i not in I)
    W = dv2.W.copy()
    W[row, 0, 0] += 1.0
    bad = core.DoubleVelocity(dv2.dims, dv2.u, dv2.Ui, dv2.Uo, W)
    return 0.0 if actions.solve_transporter(dv, bad, I, tol) is None else 1.0


# ---------------------------------------------------------------------------
# subgroup-char


def p_semiholonomic_preserved(m, n, rng, tol):
    dv = sampling.semiholonomic_double(rng, Dims(m, n))
    p = sampling.semiholonomic_element(rng, m)
    moved = actions.act_P_double(dv, p)
    return inf_norm(moved.Ui - moved.Uo)


def p_semiholonomic_negative(m, n, rng, tol):
    dv = sampling.semiholonomic_double(rng, Dims(m, n))
    while True:
        p = sampling.principal_element(rng, m)
        if inf_norm(p.Aphi - p.Asigma) >= MARGIN:
            break
    moved = actions.act_P_double(dv, p)
    return 0.0 if inf_norm(moved.Ui - moved.Uo) >= MARGIN else 1.0


def p_holonomic_preserved(m, n, rng, tol):
    dv = sampling.holonomic_double(rng, Dims(m, n))
    p = sampling.holonomic_element(rng, m)
    moved = actions.act_P_double(dv, p)
    return max(inf_norm(moved.Ui - moved.Uo),
               inf_norm(moved.W - swap_last2(moved.W)))


def p_holonomic_negative(m, n, rng, tol):
    if m == 1:
        return 0.0  # no skew part in one dimension
    dv = sampling.holonomic_double(rng, Dims(m, n))
    while True:
        p = sampling.semiholonomic_element(rng, m)
        if inf_norm(p.B - swap_last2(p.B)) >= MARGIN:
            break
    moved = actions.act_P_double(dv, p)
    return 0.0 if inf_norm(moved.W - swap_last2(moved.W)) >= MARGIN else 1.0


def p_vertical_restriction(m, n, rng, tol):
    dims = Dims(m, n)
    dv = sampling.vertical_double(rng, dims)
    p = sampling.semiholonomic_element(rng, m)
    vert = inf_norm(actions.act_P_double(dv, p).Uo)
    sym_dv = core.DoubleVelocity(dims, dv.u, dv.Ui, dv.Uo,
                                 sampling.symmetric_mixed(rng, n, m))
    sym_moved = actions.act_P_double(sym_dv, sampling.holonomic_element(rng, m))
    sym = inf_norm(sym_moved.W - np.swapaxes(sym_moved.W, 1, 2))
    skew_dv = core.DoubleVelocity(dims, dv.u, dv.Ui, dv.Uo,
                                  sampling.skew_mixed(rng, n, m))
    skew_moved = actions.act_P_double(skew_dv, sampling.curvature_element(rng, m))
    skew = inf_norm(skew_moved.W + np.swapaxes(skew_moved.W, 1, 2))
    return max(vert, sym, skew)


# ---------------------------------------------------------------------------
# quotient-invariance


def p_vertical_quotient_invariance(m, n, rng, tol):
    dv = sampling.vertical_double(rng, Dims(m, n))
    p = sampling.semiholonomic_element(rng, m)
    q1 = contact.vertical_quotient(dv, tol)
    q2 = contact.vertical_quotient(actions.act_P_double(dv, p), tol)
    return _qerr(q1, q2)


def p_vertical_quotient_worked(m, n, rng, tol):
    dv = core.DoubleVelocity(Dims(1, 2), [0.0, 0.0], [[2.0], [3.0]],
                             [[0.0], [0.0]], [[[4.0]], [[10.0]]])
    q = contact.vertical_quotient(dv, tol)
    return max(abs(float(q.V[0, 0, 0]) - 1.0),
               scaled_error(q.base.P, [[1.0], [1.5]]))


def p_vertical_quotient_sym(m, n, rng, tol):
    dims = Dims(m, n)
    base = sampling.vertical_double(rng, dims)
    dv = core.DoubleVelocity(dims, base.u, base.Ui, base.Uo,
                             sampling.symmetric_mixed(rng, n, m))
    p = sampling.holonomic_element(rng, m)
    q1 = contact.vertical_quotient(dv, tol)
    q2 = contact.vertical_quotient(actions.act_P_double(dv, p), tol)
    kinds = 0.0 if q1.kind == "sym" and q2.kind == "sym" else 1.0
    return max(_qerr(q1, q2), kinds,
               scaled_error(q1.V, swap_last2(q1.V)),
               scaled_error(q2.V, swap_last2(q2.V)))


def p_vertical_quotient_alt(m, n, rng, tol):
    dims = Dims(m, n)
    base = sampling.vertical_double(rng, dims)
    dv = core.DoubleVelocity(dims, base.u, base.Ui, base.Uo,
                             sampling.skew_mixed(rng, n, m))
    p = sampling.curvature_element(rng, m)
    q1 = contact.vertical_quotient(dv, tol)
    q2 = contact.vertical_quotient(actions.act_P_double(dv, p), tol)
    return max(_qerr(q1, q2),
               scaled_error(q1.V, -swap_last2(q1.V)),
               scaled_error(q2.V, -swap_last2(q2.V)))


def p_vertical_quotient_twin(m, n, rng, tol):
    dv = sampling.vertical_double(rng, Dims(m, n))
    return _qerr(contact.vertical_quotient(dv, tol),
                 contact.vertical_quotient_by_action(dv, tol))


def p_split_exact_sequence(m, n, rng, tol):
    dims = Dims(m, n)
    dv = sampling.vertical_double(rng, dims)
    whole = contact.vertical_quotient(dv, tol)
    w_sym = 0.5 * (dv.W + swap_last2(dv.W))
    w_alt = dv.W - w_sym
    q_sym = contact.vertical_quotient(
        core.DoubleVelocity(dims, dv.u, dv.Ui, dv.Uo, w_sym), tol)
    q_alt = contact.vertical_quotient(
        core.DoubleVelocity(dims, dv.u, dv.Ui, dv.Uo, w_alt), tol)
    types = max(scaled_error(q_sym.V, swap_last2(q_sym.V)),
                scaled_error(q_alt.V, -swap_last2(q_alt.V)))
    s, a = contact.split_quotient(
        contact.QuotientVerticalVector(whole.base, whole.I, whole.V, "general"))
    return max(scaled_error(s.V, q_sym.V), scaled_error(a.V, q_alt.V), types)


def p_canon_orbit_invariance(m, n, rng, tol):
    dv = sampling.double(rng, Dims(m, n))
    p = sampling.principal_element(rng, m)
    d1 = contact.double_contact_of(dv, tol)
    d2 = contact.double_contact_of(actions.act_P_double(dv, p), tol)
    return _dcerr(d1, d2)


def p_canon_worked(m, n, rng, tol):
    dv = core.DoubleVelocity(Dims(1, 2), [0.0, 0.0], [[2.0], [3.0]],
                             [[4.0], [6.0]], [[[8.0]], [[14.0]]])
    d = contact.double_contact_of(dv, tol)
    return max(abs(float(d.X[0, 0]) - 1.5), abs(float(d.Y[0, 0]) - 1.5),
               abs(float(d.Z[0, 0, 0]) - 0.25),
               0.0 if d.I == (0,) else 1.0)


def p_constraint_characterization(m, n, rng, tol):
    dims = Dims(m, n)
    p = sampling.principal_element(rng, m)
    d_semi = contact.double_contact_of(
        actions.act_P_double(sampling.semiholonomic_double(rng, dims), p), tol)
    d_holo = contact.double_contact_of(
        actions.act_P_double(sampling.holonomic_double(rng, dims), p), tol)
    pos = max(inf_norm(d_semi.Y - d_semi.X), inf_norm(d_holo.Y - d_holo.X),
              inf_norm(d_holo.Z - swap_last2(d_holo.Z)))
    while True:  # an orbit with no semiholonomic representative
        cand = sampling.double(rng, dims)
        d0 = contact.double_contact_of(cand, tol)
        if inf_norm(d0.Y - d0.X) >= MARGIN:
            break
    d1 = contact.double_contact_of(actions.act_P_double(cand, p), tol)
    neg = 0.0 if not contact.is_semiholonomic_contact(d1, tol) else 1.0
    if m > 1:
        while True:  # semiholonomic orbit with curvature, never holonomic
            cand = sampling.semiholonomic_double(rng, dims)
            d0 = contact.double_contact_of(cand, tol)
            if inf_norm(d0.Z - swap_last2(d0.Z)) >= MARGIN:
                break
        d1 = contact.double_contact_of(actions.act_P_double(cand, p), tol)
        neg = max(neg, 0.0 if not contact.is_holonomic_contact(d1, tol) else 1.0)
    return max(0.0 if pos <= tol else 1.0, neg)


def p_canon_representative_roundtrip(m, n, rng, tol):
    dv = sampling.double(rng, Dims(m, n))
    d = contact.double_contact_of(dv, tol)
    return _dcerr(contact.double_contact_of(contact.representative(d), tol), d)


# ---------------------------------------------------------------------------
# decomposition


def p_split_semiholonomic(m, n, rng, tol):
    dv = sampling.semiholonomic_double(rng, Dims(m, n))
    h, k = core.split_semiholonomic(dv, tol)
    errs = [inf_norm(h.W - swap_last2(h.W)),
            inf_norm(k.K + swap_last2(k.K)),
            _dverr(core.affine_add_vertical(h, k, tol), dv),
            0.0 if core.is_holonomic(h, tol) else 1.0]
    if m == 1:
        errs.append(inf_norm(k.K))
    return max(errs)


def p_affine_vertical_laws(m, n, rng, tol):
    dims = Dims(m, n)
    dv = sampling.raw_double(rng, dims)
    base = core.inner_projection(dv)
    k1 = core.VerticalVector(base, sampling.ints(rng, n, m, m))
    k2 = core.VerticalVector(base, sampling.ints(rng, n, m, m))
    two_step = core.affine_add_vertical(core.affine_add_vertical(dv, k1, tol), k2, tol)
    one_step = core.affine_add_vertical(dv, core.VerticalVector(base, k1.K + k2.K), tol)
    zero = core.affine_add_vertical(dv, core.VerticalVector(base, np.zeros((n, m, m))), tol)
    return max(_dverr(two_step, one_step), _dvdist(zero, dv))


def p_decompose_roundtrip(m, n, rng, tol):
    dims = Dims(m, n)
    d = contact.double_contact_of(sampling.semiholonomic_double(rng, dims), tol)
    h, k = contact.decompose_contact(d, tol)
    errs = [_dcerr(contact.affine_add_contact(h, k, tol), d),
            0.0 if contact.is_holonomic_contact(h, tol) else 1.0]
    d_h = contact.double_contact_of(sampling.holonomic_double(rng, dims), tol)
    _, k_h = contact.decompose_contact(d_h, tol)
    errs.append(inf_norm(k_h.V))
    return max(errs)


def p_decompose_representative_independence(m, n, rng, tol):
    dims = Dims(m, n)
    dv = sampling.semiholonomic_double(rng, dims)
    h1, k1 = contact.decompose_contact(contact.double_contact_of(dv, tol), tol)
    dv_h, kv = core.split_semiholonomic(dv, tol)
    h2 = contact.double_contact_of(dv_h, tol)
    k2 = contact.vertical_quotient(core.as_vertical_double(kv), tol)
    errs = [_dcerr(h1, h2), scaled_error(k1.V, k2.V),
            0.0 if contact.contact_equal(k1.base, k2.base, tol) else 1.0,
            0.0 if k1.I == k2.I else 1.0]
    p = sampling.semiholonomic_element(rng, m)
    h3, k3 = contact.decompose_contact(
        contact.double_contact_of(actions.act_P_double(dv, p), tol), tol)
    errs.extend([_dcerr(h1, h3), scaled_error(k1.V, k3.V)])
    return max(errs)


def p_affine_contact_laws(m, n, rng, tol):
    dims = Dims(m, n)
    d = contact.double_contact_of(sampling.semiholonomic_double(rng, dims), tol)
    base = contact.contact_plane_of(d, tol)
    v1 = sampling.ints(rng, n - m, m, m)
    v2 = sampling.ints(rng, n - m, m, m)
    q1 = contact.QuotientVerticalVector(base, d.I, v1)
    q2 = contact.QuotientVerticalVector(base, d.I, v2)
    q12 = contact.QuotientVerticalVector(base, d.I, v1 + v2)
    two_step = contact.affine_add_contact(contact.affine_add_contact(d, q1, tol), q2, tol)
    one_step = contact.affine_add_contact(d, q12, tol)
    zero = contact.affine_add_contact(
        d, contact.QuotientVerticalVector(base, d.I, np.zeros((n - m, m, m))), tol)
    moved = contact.affine_add_contact(d, q1, tol)
    free = 0.0 if (inf_norm(v1) < MARGIN or _dcerr(moved, d) > tol) else 1.0
    return max(_dcerr(two_step, one_step), _dcerr(zero, d), free)


def p_holonomic_affine_closure(m, n, rng, tol):
    dims = Dims(m, n)
    d = contact.double_contact_of(sampling.holonomic_double(rng, dims), tol)
    base = contact.contact_plane_of(d, tol)
    raw = sampling.ints(rng, n - m, m, m)
    q_sym = contact.QuotientVerticalVector(base, d.I, 0.5 * (raw + swap_last2(raw)), "sym")
    stays = contact.affine_add_contact(d, q_sym, tol)
    errs = [0.0 if contact.is_holonomic_contact(stays, tol) else 1.0]
    upper = np.triu(np.ones((m, m)), k=1) * sampling.ints(rng, n - m, m, m)
    alt = upper - swap_last2(upper)
    q_alt = contact.QuotientVerticalVector(base, d.I, alt, "alt")
    bent = contact.affine_add_contact(d, q_alt, tol)
    _, k = contact.decompose_contact(bent, tol)
    errs.append(scaled_error(k.V, alt))
    return max(errs)


# ---------------------------------------------------------------------------
# oracle-equivalence


def p_action_oracle_agreement(m, n, rng, tol):
    x = sampling.bipolymap(rng, Dims(m, n))
    p = sampling.principal_element(rng, m)
    via_oracle = oracle.double_jet_of(oracle.act_oracle(x, p))
    via_coords = actions.act_P_double(oracle.double_jet_of(x), p)
    return _dverr(via_oracle, via_coords)


def p_oracle_composition_consistency(m, n, rng, tol):
    x = sampling.bipolymap(rng, Dims(m, n))
    p1 = sampling.principal_element(rng, m)
    p2 = sampling.principal_element(rng, m)
    two = oracle.act_oracle(oracle.act_oracle(x, p1), p2)
    one = oracle.act_oracle(x, groups.compose_P(p1, p2))
    return _dverr(oracle.double_jet_of(two), oracle.double_jet_of(one))


def p_oracle_exchange_consistency(m, n, rng, tol):
    x = sampling.bipolymap(rng, Dims(m, n))
    return _dvdist(oracle.double_jet_of(oracle.swap_arguments(x)),
                   core.exchange(oracle.double_jet_of(x)))


def p_prolong_holonomic(m, n, rng, tol):
    g = sampling.polymap(rng, Dims(m, n))
    dv = oracle.prolong(g)
    jet = oracle.jet_of(g)
    proj = core.inner_projection(dv)
    return max(0.0 if core.is_holonomic(dv, tol) else 1.0,
               _dvdist(core.exchange(dv), dv),
               inf_norm(proj.u - jet.u), inf_norm(proj.U - jet.U))


def p_second_order_transport(m, n, rng, tol):
    f1 = sampling.origin_polymap(rng, m)
    f2 = sampling.origin_polymap(rng, m)
    q1 = groups.SecondOrderJetElement(m, f1.c1, f1.c2)
    q2 = groups.SecondOrderJetElement(m, f2.c1, f2.c2)
    transported = groups.to_second_order(
        groups.compose_P(groups.from_second_order(q1), groups.from_second_order(q2)))
    composed = oracle.compose_second_order(f1, f2)
    return max(scaled_error(transported.A, composed.c1),
               scaled_error(transported.S, composed.c2))


def p_second_order_worked(m, n, rng, tol):
    p1 = groups.PrincipalJetElement(1, [[2.0]], [[2.0]], [[[6.0]]])
    p2 = groups.PrincipalJetElement(1, [[3.0]], [[3.0]], [[[4.0]]])
    q = groups.to_second_order(groups.compose_P(p1, p2))
    return max(abs(float(q.A[0, 0]) - 6.0), abs(float(q.S[0, 0, 0]) - 62.0))


def p_rho_fd_agreement(m, n, rng, tol):
    dims = Dims(m, n)
    dv = (sampling.inner_regular_double(rng, dims) if int(rng.integers(0, 2)) == 0
          else sampling.vertical_double(rng, dims))
    exact = actions.is_rho_regular(dv, tol)
    approx = oracle.rho_regular_fd(dv, tol=tol)
    if exact == approx:
        return 0.0
    # disagreement on a rank-decision boundary does not count
    coarse = actions.is_rho_regular(dv, tol * 100.0)
    fine = actions.is_rho_regular(dv, tol / 100.0)
    return 0.0 if coarse != fine else 1.0


# ---------------------------------------------------------------------------
# registry and runner

SUITES = {
    "group-axioms": (
        ("P-associativity", p_associativity, False),
        ("P-identity", p_identity_law, False),
        ("P-inverse", p_inverse_law, False),
        ("L-group-axioms", p_linear_group_axioms, False),
        ("subgroup-closure", p_subgroup_closure, False),
        ("symmetrize-projection", p_symmetrize_projection, False),
        ("factor-semiholonomic", p_factor_semiholonomic, False),
        ("embed-homomorphism", p_embed_homomorphism, False),
        ("second-order-roundtrip", p_second_order_roundtrip, False),
        ("factor-principal", p_factor_principal, False),
    ),
    "exchange": (
        ("exchange-involution", p_exchange_involution, False),
        ("exchange-P-involution", p_exchange_P_involution, False),
        ("lambda-exchange-mu", p_lambda_exchange_mu, False),
        ("projection-intertwining", p_projection_intertwining, False),
        ("holonomic-fixed-points", p_holonomic_fixed_points, False),
        ("regularity-duality", p_regularity_duality, False),
        ("exchange-semiholonomic-hom", p_exchange_semiholonomic_hom, False),
    ),
    "action": (
        ("velocity-right-action", p_velocity_right_action, False),
        ("double-right-action", p_double_right_action, False),
        ("action-worked-m1", p_action_worked_m1, True),
        ("contact-invariance", p_contact_invariance, False),
        ("regularity-preserved", p_regularity_preserved, False),
    ),
    "freeness": (
        ("freeness-full-group", p_freeness_full_group, False),
        ("freeness-semiholonomic", p_freeness_semiholonomic, False),
        ("transporter-identity", p_transporter_identity, False),
        ("transporter-roundtrip", p_transporter_roundtrip, False),
        ("transporter-rejection", p_transporter_rejection, False),
    ),
    "subgroup-char": (
        ("semiholonomic-preserved", p_semiholonomic_preserved, False),
        ("semiholonomic-negative", p_semiholonomic_negative, False),
        ("holonomic-preserved", p_holonomic_preserved, False),
        ("holonomic-negative", p_holonomic_negative, False),
        ("vertical-restriction", p_vertical_restriction, False),
    ),
    "quotient-invariance": (
        ("vertical-quotient-invariance", p_vertical_quotient_invariance, False),
        ("vertical-quotient-worked", p_vertical_quotient_worked, True),
        ("vertical-quotient-sym", p_vertical_quotient_sym, False),
        ("vertical-quotient-alt", p_vertical_quotient_alt, False),
        ("vertical-quotient-twin", p_vertical_quotient_twin, False),
        ("split-exact-sequence", p_split_exact_sequence, False),
        ("canon-orbit-invariance", p_canon_orbit_invariance, False),
        ("canon-worked", p_canon_worked, True),
        ("constraint-characterization", p_constraint_characterization, False),
        ("canon-representative-roundtrip", p_canon_representative_roundtrip, False),
    ),
    "decomposition": (
        ("split-semiholonomic", p_split_semiholonomic, False),
        ("affine-vertical-laws", p_affine_vertical_laws, False),
        ("decompose-roundtrip", p_decompose_roundtrip, False),
        ("decompose-representative-independence",
         p_decompose_representative_independence, False),
        ("affine-contact-laws", p_affine_contact_laws, False),
        ("holonomic-affine-closure", p_holonomic_affine_closure, False),
    ),
    "oracle-equivalence": (
        ("action-oracle-agreement", p_action_oracle_agreement, False),
        ("oracle-composition-consistency", p_oracle_composition_consistency, False),
        ("oracle-exchange-consistency", p_oracle_exchange_consistency, False),
        ("prolong-holonomic", p_prolong_holonomic, False),
        ("second-order-transport", p_second_order_transport, False),
        ("second-order-worked", p_second_order_worked, True),
        ("rho-fd-agreement", p_rho_fd_agreement, False),
    ),
}

SUITE_NAMES = tuple(SUITES.keys()) + ("all",)

ALL_PROPERTIES = {name: (fn, fixed)
                  for suite in SUITES.values()
                  for name, fn, fixed in suite}


def run_property(name: str, fn, m: int, n: int, trials: int, seed: int,
                 tol: float, fixed: bool = False) -> PropertyResult:
    count = 1 if fixed else trials
    failures = 0
    max_error = 0.0
    for t in range(count):
        err = float(fn(m, n, _trial_rng(seed, name, t), tol))
        max_error = max(max_error, err)
        if not err <= tol:
            failures += 1
    return PropertyResult(name, count, failures, max_error)


def run_suite(suite: str, m: int, n: int, trials: int, seed: int,
              tol: float) -> list[PropertyResult]:
    if suite == "all":
        out = []
        for name in SUITE_ORDER:
            out.extend(run_suite(name, m, n, trials, seed, tol))
        return out
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)}")
    return [run_property(name, fn, m, n, trials, seed, tol, fixed)
            for name, fn, fixed in SUITES[suite]]


def report(suite: str, m: int, n: int, trials: int, seed: int, tol: float) -> dict:
    """Run a suite and assemble the machine-readable report."""
    results = run_suite(suite, m, n, trials, seed, tol)
    return {
        "suite": suite,
        "trials": trials,
        "failures": sum(r.failures for r in results),
        "max_error": max((r.max_error for r in results), default=0.0),
        "seed": seed,
        "properties": [
            {"name": r.name, "trials": r.trials, "failures": r.failures,
             "max_error": r.max_error}
            for r in results
        ],
    }

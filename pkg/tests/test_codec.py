import json

import numpy as np
import pytest

from doublejets.codec import decode, encode
from doublejets.contact import contact_of, double_contact_of, vertical_quotient
from doublejets.core import Dims, Velocity, VerticalVector
from doublejets.groups import (JetGroupElement, PrincipalJetElement,
                               SecondOrderJetElement)
from doublejets.sampling import (double, rng_from, semiholonomic_double,
                                 vertical_double)


def roundtrip(value):
    return decode(json.loads(json.dumps(encode(value))))


def test_velocity_roundtrip_lossless_floats():
    v = Velocity(Dims(1, 2), [0.1, 1.0 / 3.0], [[1e-15], [2.0]])
    back = roundtrip(v)
    assert np.array_equal(back.u, v.u)
    assert np.array_equal(back.U, v.U)
    assert back.dims == v.dims


def test_double_velocity_roundtrip():
    rng = rng_from(61)
    dv = double(rng, Dims(2, 4))
    back = roundtrip(dv)
    assert np.array_equal(back.W, dv.W)
    assert np.array_equal(back.Ui, dv.Ui)


def test_vertical_vector_roundtrip():
    base = Velocity(Dims(1, 2), [0, 0], [[1], [2]])
    k = VerticalVector(base, [[[0.5]], [[-0.25]]], kind="general")
    back = roundtrip(k)
    assert np.array_equal(back.K, k.K)
    assert back.kind == "general"


def test_group_element_roundtrips():
    g = JetGroupElement(2, [[1.0, 2.0], [0.0, 1.0]])
    assert np.array_equal(roundtrip(g).A, g.A)
    p = PrincipalJetElement(1, [[2.0]], [[3.0]], [[[5.0]]])
    back = roundtrip(p)
    assert np.array_equal(back.B, p.B)
    q = SecondOrderJetElement(1, [[2.0]], [[[6.0]]])
    assert np.array_equal(roundtrip(q).S, q.S)


def test_contact_roundtrips():
    c = contact_of(Velocity(Dims(1, 3), [0, 0, 0], [[2], [4], [6]]))
    assert np.array_equal(roundtrip(c).P, c.P)
    rng = rng_from(62)
    d = double_contact_of(semiholonomic_double(rng, Dims(2, 4)))
    back = roundtrip(d)
    assert back.I == d.I
    assert np.array_equal(back.Z, d.Z)
    q = vertical_quotient(vertical_double(rng, Dims(2, 4)))
    backq = roundtrip(q)
    assert np.array_equal(backq.V, q.V)
    assert backq.kind == q.kind
    assert np.array_equal(backq.base.P, q.base.P)


def test_decode_rejects_unknown_schema():
    with pytest.raises(ValueError):
        decode({"m": 1, "bogus": []})
    with pytest.raises(ValueError):
        decode([1, 2, 3])


def test_encode_rejects_foreign_types():
    with pytest.raises(ValueError):
        encode({"m": 1})

"""JSON encoding and decoding for every value type.

Field names are fixed per type and the key set identifies the type, so a
decoded stream needs no explicit tags.  Encoding uses each value's
to_dict; floats round-trip losslessly through Python's json module.
"""

from __future__ import annotations

from .contact import ContactElement, DoubleContactElement, QuotientVerticalVector
from .core import DoubleVelocity, Velocity, VerticalVector
from .groups import JetGroupElement, PrincipalJetElement, SecondOrderJetElement

_BY_KEYS = {
    frozenset({"m", "n", "u", "U"}): Velocity,
    frozenset({"m", "n", "u", "Ui", "Uo", "W"}): DoubleVelocity,
    frozenset({"base", "K", "kind"}): VerticalVector,
    frozenset({"m", "A"}): JetGroupElement,
    frozenset({"m", "Aphi", "Asigma", "B"}): PrincipalJetElement,
    frozenset({"m", "A", "S"}): SecondOrderJetElement,
    frozenset({"m", "n", "u", "P"}): ContactElement,
    frozenset({"m", "n", "I", "u", "X", "Y", "Z"}): DoubleContactElement,
    frozenset({"base", "I", "V", "kind"}): QuotientVerticalVector,
}

VALUE_TYPES = tuple(_BY_KEYS.values())


def encode(value) -> dict:
    if not isinstance(value, VALUE_TYPES):
        raise ValueError(f"cannot encode value of type {type(value).__name__}")
    return value.to_dict()


def decode(obj: dict):
    """Reconstruct a value from its dict form, detecting the type from the
    exact key set."""
    if not isinstance(obj, dict):
        raise ValueError("expected a JSON object")
    cls = _BY_KEYS.get(frozenset(obj.keys()))
    if cls is None:
        raise ValueError(f"unrecognized value schema with keys {sorted(obj.keys())}")
    return cls.from_dict(obj)

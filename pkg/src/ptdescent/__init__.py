"""Descent along cospans in the fibration of points of finite groups with operations."""
from .actions import ActionDatum, validate_action
from .algebra import FiniteAlgebra, Homomorphism, Signature, StructureError, validate_algebra
from .cospan import Cospan
from .descent import (
    check_fully_faithful,
    check_ua_instance,
    cross_identity_check,
    essential_surjectivity_witness,
    extend_action,
    phi,
    validate_descent_datum,
)
from .points import Point

__all__ = [
    "ActionDatum", "Cospan", "FiniteAlgebra", "Homomorphism", "Point", "Signature",
    "StructureError", "check_fully_faithful", "check_ua_instance", "cross_identity_check",
    "essential_surjectivity_witness", "extend_action", "phi", "validate_action",
    "validate_algebra", "validate_descent_datum",
]
__version__ = "0.1.0"

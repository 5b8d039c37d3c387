"""Exact arithmetic for a computable model of Colombeau generalized numbers
and the quaternions over them."""

from gq.blocksets import BlockSet
from gq.config import get_order, set_order, working_order
from gq.errors import (
    GQError,
    IndeterminateAtPrecision,
    InexactDecision,
    IsUnit,
    NotAccumulating,
    NotInvertible,
    NotQPositive,
    NotQPositiveLeading,
    ZeroInput,
)
from gq.ghquat import GenQuaternion
from gq.gnum import GenScalar, alpha, chi
from gq.ideals import FgIdeal
from gq.puiseux import PuiseuxGerm

__all__ = [
    "BlockSet",
    "FgIdeal",
    "GQError",
    "GenQuaternion",
    "GenScalar",
    "IndeterminateAtPrecision",
    "InexactDecision",
    "IsUnit",
    "NotAccumulating",
    "NotInvertible",
    "NotQPositive",
    "NotQPositiveLeading",
    "PuiseuxGerm",
    "ZeroInput",
    "alpha",
    "chi",
    "get_order",
    "set_order",
    "working_order",
]

__version__ = "0.1.0"

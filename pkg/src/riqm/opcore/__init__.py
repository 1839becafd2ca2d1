"""Exact operator algebra over Cartesian position and momentum."""

from riqm.opcore.expr import OpExpr, UnsupportedExpression, commutator, to_json_text, to_text
from riqm.opcore.identities import (UnknownIdentity, check_identity, get_identity,
                                    identity_keys)
from riqm.opcore.spherical import build_planar_momentum, build_spherical_momentum
from riqm.opcore.tree import comm, inv, normal_order, num, sym

__all__ = [
    "OpExpr", "UnsupportedExpression", "UnknownIdentity", "build_planar_momentum",
    "build_spherical_momentum", "check_identity", "comm", "commutator", "get_identity",
    "identity_keys", "inv", "normal_order", "num", "sym", "to_json_text", "to_text",
]

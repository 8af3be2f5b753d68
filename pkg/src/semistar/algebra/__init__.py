"""Exact scalar arithmetic, subspace lattices, and ordered value groups."""

from .fields import AlgebraError, ExtensionField, PrimeField, Rationals
from .groups import (
    Segment,
    ValueGroup,
    segment_add,
    segment_colon,
    segment_intersect,
    segment_shift,
    segment_union,
)
from .linalg import (
    Subspace,
    subspace_intersect,
    subspace_product,
    subspace_scale,
    subspace_sum,
    transporter,
)

__all__ = [
    "AlgebraError",
    "ExtensionField",
    "PrimeField",
    "Rationals",
    "Segment",
    "Subspace",
    "ValueGroup",
    "segment_add",
    "segment_colon",
    "segment_intersect",
    "segment_shift",
    "segment_union",
    "subspace_intersect",
    "subspace_product",
    "subspace_scale",
    "subspace_sum",
    "transporter",
]

"""Counting generalized Reed-Solomon and MDS codes over small finite fields."""

from .gf import GF, FieldSpec, field_new, roots_of_quadratic
from .geom import INF
from .grscore import GrsParams, HyperconicParams, grs_generator
from .linalg import CodeKey, code_key

__all__ = [
    "GF", "FieldSpec", "field_new", "roots_of_quadratic", "INF",
    "GrsParams", "HyperconicParams", "grs_generator", "CodeKey", "code_key",
]
__version__ = "0.1.0"

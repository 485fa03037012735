"""Exact arithmetic foundation: rationals, real algebraic numbers, simple
real number fields, univariate tools and bivariate Laurent polynomials."""

from .fields import QQ, NFElement, NumberField, RationalField
from .algebraic import (
    AlgebraicReal,
    extend_with_root,
    field_join,
    isolate_real_roots,
    nf_isolate_real_roots,
    nf_root_to_algebraic,
)
from .bipoly import (
    BiPoly,
    divide_bipoly,
    divides_exactly,
    gcd_bipoly,
    grlex_key,
    is_monomial,
    is_squarefree_bipoly,
    squarefree_part_bipoly,
)
from . import upoly

__all__ = [
    "QQ",
    "NFElement",
    "NumberField",
    "RationalField",
    "AlgebraicReal",
    "extend_with_root",
    "field_join",
    "isolate_real_roots",
    "nf_isolate_real_roots",
    "nf_root_to_algebraic",
    "BiPoly",
    "divide_bipoly",
    "divides_exactly",
    "gcd_bipoly",
    "grlex_key",
    "is_monomial",
    "is_squarefree_bipoly",
    "squarefree_part_bipoly",
    "upoly",
]


def sign_of(e, field):
    """Exact sign of a field element under the real embedding."""
    return field.sign(field.coerce(e))

"""Exact resolution of singularities for planar polynomial constrained
differential systems delta(x,y) * (dx/dt, dy/dt) = (P, Q)."""

__version__ = "0.1.0"

from .algebra import QQ, AlgebraicReal, BiPoly, NumberField
from .system import (
    ConstrainedSystem,
    DivisorFlag,
    LogVectorField,
    auxiliary_field,
    from_matrix,
    to_log_basis,
    validate,
)
from .newton import (
    NewtonPolygon,
    graduation_level,
    is_controllable,
    is_newton_elementary,
    polygon,
    support_aux,
    weight_of,
)
from .transform import (
    TransformRecord,
    admissible,
    blowup,
    choose_shear,
    shear,
    translate,
    verify_pullback,
)
from .classify import (
    PointClass,
    classify_origin,
    corner_rule,
    divisor_candidates,
    persistent_point,
    semantic_elementary,
)
from .resolve import (
    Budget,
    BudgetExceeded,
    ResolutionTree,
    TreeNode,
    find_singular_points,
    resolve_global,
    resolve_local,
    termination_certificate,
)
from .lang import ParseError, SystemSource, parse_system
from .printing import print_system
from .export import export_tree, import_tree, plot_data

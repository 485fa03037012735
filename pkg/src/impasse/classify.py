"""Point classification: singular vs non-singular, elementary vs not, plus
divisor-point enumeration and the persistent-point multiplicity criterion.

The elementary verdict is decided on the Newton polygon of the auxiliary
field through support certificates that are sound in the given coordinate
frame:

  E1  (-1,0) or (0,-1) lies in the support: the point is off the impasse
      set and regular for the adjoint field;
  E2  the main vertex is (0,0), (0,-1) or (-1,0): with the main vertex at
      (0,0) the column -1 is empty, the linearization is triangular, and
      the point is a semi-hyperbolic equilibrium off the impasse set or a
      transversal crossing;
  E3  a single-vertex polygon in column 0 or -1: the final configuration
      in which the impasse set coincides with a phase curve or separatrix
      (the horizontal-segment family);
  E4  a single vertex at height <= 0.

The matching semantic oracle issues verdicts only when they are certified
by exact frame-robust computations, abstaining where the polygon criterion
would require an adapting change of coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    QQ,
    divide_bipoly,
    extend_with_root,
    nf_isolate_real_roots,
    nf_root_to_algebraic,
)
from .algebra import upoly as up
from .newton import is_newton_elementary, polygon, support_aux
from .system import DivisorFlag, auxiliary_field


class DegenerateRestriction(ValueError):
    """The impasse polynomial vanishes identically on a divisor axis."""


@dataclass(frozen=True)
class PointClass:
    elementary: bool
    reason: str | None          # NonSingular | SemiHyperbolicOffDelta |
                                # SeparatrixCoincidesDelta | HorizontalSegment
    height: int
    on_impasse: bool
    impasse_non_smooth: bool
    equilibrium: bool
    tangency: bool
    on_divisor: str             # none | ex | ey | corner

    @property
    def verdict(self):
        if self.elementary:
            return f"Elementary({self.reason})"
        return f"NotElementary(height={self.height})"

    def to_json(self):
        return {
            "elementary": self.elementary,
            "reason": self.reason,
            "height": self.height,
            "flags": {
                "on_impasse": self.on_impasse,
                "impasse_non_smooth": self.impasse_non_smooth,
                "equilibrium": self.equilibrium,
                "tangency": self.tangency,
                "on_divisor": self.on_divisor,
            },
        }


def _semantic_flags(sys):
    field = sys.coeff_field
    z = field.is_zero
    delta0 = sys.delta.coeff(0, 0)
    on_impasse = z(delta0)
    equilibrium = z(sys.P.coeff(0, 0)) and z(sys.Q.coeff(0, 0))
    dx, dy = sys.delta.partial(0), sys.delta.partial(1)
    non_smooth = on_impasse and z(dx.coeff(0, 0)) and z(dy.coeff(0, 0))
    xdelta = sys.P * dx + sys.Q * dy
    tangency = on_impasse and z(xdelta.coeff(0, 0))
    return on_impasse, non_smooth, equilibrium, tangency


def _divisor_tag(sys):
    return {DivisorFlag.NONE: "none", DivisorFlag.EX: "ex",
            DivisorFlag.EY: "ey", DivisorFlag.EXY: "corner"}[sys.divisor]


def classify_origin(sys):
    """Classify the origin of the chart by the auxiliary-field polygon.

    The verdict is the Newton-elementary criterion extended by the
    degenerate single-vertex rule; the flags are computed semantically.
    """
    poly = polygon(support_aux(sys))
    on_impasse, non_smooth, equilibrium, tangency = _semantic_flags(sys)

    elementary = is_newton_elementary(poly)
    if not elementary and poly.single_point and poly.main_vertex[0] in (-1, 0):
        # final configuration: no main segment to choose a weight from, the
        # impasse set rides a phase curve or separatrix (e.g. y xdot = 2x,
        # y ydot = -y); certified by the equivalence theorem's horizontal case
        elementary = True
    if sys.divisor is DivisorFlag.EXY and on_impasse:
        # a corner crossed by the impasse set always continues
        elementary = False

    if elementary:
        if equilibrium and on_impasse:
            reason = "SeparatrixCoincidesDelta"
        elif equilibrium:
            reason = "SemiHyperbolicOffDelta"
        elif on_impasse and tangency:
            reason = "HorizontalSegment"
        else:
            reason = "NonSingular"
    else:
        reason = None
    return PointClass(elementary, reason, poly.height, on_impasse, non_smooth,
                      equilibrium, tangency, _divisor_tag(sys))


def corner_rule(sys):
    """Classification at an Exy corner: continue whenever the impasse set
    passes through the corner, otherwise classify as usual (generically a
    hyperbolic corner equilibrium of the adjoint field)."""
    if sys.divisor is not DivisorFlag.EXY:
        raise ValueError("corner rule needs an Exy chart")
    return classify_origin(sys)


def is_singular_origin(sys):
    """Definition of a singularity: equilibrium, non-smooth impasse set, or
    tangency between the adjoint field and the impasse set."""
    on_impasse, non_smooth, equilibrium, tangency = _semantic_flags(sys)
    return equilibrium or non_smooth or tangency


@dataclass(frozen=True)
class Candidate:
    """A divisor point that may be non-elementary: its position along the
    divisor as an exact root, with the data needed to translate there."""

    algebraic: object           # AlgebraicReal
    factor: tuple               # squarefree annihilator over the chart field
    interval: tuple             # isolating rational interval
    axis: str                   # translation axis: y for Ex scans, x for Ey

    def __repr__(self):
        return f"Candidate({self.algebraic!r} on axis {self.axis})"


def divisor_candidates(sys, axis=None):
    """Roots along a flagged divisor axis where the chart may fail to be
    elementary: zeros of delta and of the adjoint field restricted to the
    divisor.  Includes the origin when it is a root; sorted ascending.

    For an Ex chart the scan runs in y over delta(0,y)*Q(0,y); for an Ey
    chart it runs in x over delta(x,0)*P(x,0).
    """
    field = sys.coeff_field
    if axis is None:
        if sys.divisor.has_x():
            axis = "y"
        elif sys.divisor.has_y():
            axis = "x"
        else:
            raise ValueError("no divisor axis to scan")
    if axis == "y":
        if not sys.divisor.has_x():
            raise ValueError("y-axis scan needs the Ex flag")
        drest = sys.delta.restrict_axis(0)
        frest = sys.Q.restrict_axis(0)
        if not frest:
            # whole divisor is a curve of equilibria: the non-elementary
            # points sit at the zeros of the normal dynamics instead
            frest = sys.a.restrict_axis(0)
    else:
        if not sys.divisor.has_y():
            raise ValueError("x-axis scan needs the Ey flag")
        drest = sys.delta.restrict_axis(1)
        frest = sys.P.restrict_axis(1)
        if not frest:
            frest = sys.b.restrict_axis(1)
    if not drest:
        raise DegenerateRestriction(
            "impasse polynomial vanishes on the divisor axis")
    g = up.umul(drest, frest, field) if frest else drest
    if up.udeg(g) < 1:
        return []
    out = []
    for (lo, hi), _mult, factor in nf_isolate_real_roots(g, field):
        ar = nf_root_to_algebraic(factor, lo, hi, field)
        out.append(Candidate(ar, factor, (lo, hi), axis))
    return out


@dataclass(frozen=True)
class PersistentPoint:
    xi: object                  # field element
    xi_algebraic: object        # AlgebraicReal
    beta: int                   # w2 // w1


def _main_level_series(sys, w):
    """The lowest quasi-homogeneous level, indexed by y-degree.

    Returns (C, A, L): coefficient lists (by y-degree, low first) of the
    main level of delta, of the a-component, and of lambda_n = b_n -
    (w2/w1)*a_n over the union support, exactly the data of the translation
    coefficients C_i, alpha_j, beta_j.
    """
    field = sys.coeff_field
    lv = lambda e: w.w1 * e[0] + w.w2 * e[1]
    d1 = min(lv(e) for e in sys.delta.terms)
    dX = min([lv(e) for e in sys.a.terms] + [lv(e) for e in sys.b.terms])

    def series(p, level, shift=0):
        out = {}
        for e, c in p.terms.items():
            if lv(e) == level:
                out[e[1] + shift] = out.get(e[1] + shift, field.zero) + c
        if not out:
            return ()
        n = max(out)
        lo = min(out)
        if lo < 0:
            raise ValueError("main level has negative y-degree after shift")
        return up.utrim([out.get(i, field.zero) for i in range(n + 1)], field)

    C = series(sys.delta, d1)
    A = series(sys.a, dX)
    ratio = Fraction(w.w2, w.w1)
    lam = {}
    for (m, n), c in sys.a.terms.items():
        if lv((m, n)) == dX:
            lam[n + 1] = lam.get(n + 1, field.zero) - c * ratio
    for (m, n), c in sys.b.terms.items():
        if lv((m, n)) == dX:
            lam[n + 1] = lam.get(n + 1, field.zero) + c
    if lam:
        top = max(lam)
        L = up.utrim([lam.get(i, field.zero) for i in range(top + 1)], field)
    else:
        L = ()
    return C, A, L, d1, dX


def persistent_point(sys, w):
    """Detect the unique divisor point where an x-direction blow-up would
    not decrease the height, by the multiplicity criterion on C_0, alpha_0
    and beta_{-1}: each must be a perfect power of a common linear factor
    (y - xi0) and the resulting height must equal the current height.

    Returns a PersistentPoint or None.  When it fires, w2/w1 is an integer
    (asserted): the admissible escape uses alpha = xi0, beta = w2/w1.
    """
    field = sys.coeff_field
    poly = polygon(support_aux(sys))
    if poly.single_point or poly.slope() == 0:
        return None
    C, A, L = _main_level_series(sys, w)[:3]

    def shape(p):
        """(xi, mult) when p = c*(y - xi)^deg; None for p == 0; False otherwise."""
        if not p:
            return None
        if up.udeg(p) == 0:
            return ("any", 0)
        sf = up.usquarefree_part(p, field)
        if up.udeg(sf) != 1:
            return False
        xi = -sf[0] / sf[1]
        lin = (-xi, field.one)
        q = p
        try:
            for _ in range(up.udeg(p)):
                q = up.udiv_exact(q, lin, field)
        except ArithmeticError:
            return False
        if up.udeg(q) != 0:
            return False
        return (xi, up.udeg(p))

    sC, sA, sL = shape(C), shape(A), shape(L)
    if sC is False or sA is False or sL is False:
        return None
    xi0 = None
    for s in (sC, sA, sL):
        if s is not None and s[0] != "any":
            if xi0 is None:
                xi0 = s[0]
            elif not field.is_zero(xi0 - s[0]):
                return None
    if xi0 is None or field.is_zero(xi0):
        return None

    mult_c = sC[1] if sC is not None else 0
    mult_a = sA[1] if sA is not None else None
    mult_l = sL[1] if sL is not None else None
    drop_a = mult_a if mult_a is not None else 10**9
    drop_l = (mult_l - 1) if mult_l is not None else 10**9
    height_at = mult_c + min(drop_a, drop_l)
    if height_at != poly.height:
        return None
    if w.w2 % w.w1 != 0:
        raise AssertionError("persistent point with non-integer w2/w1")
    xi_alg = _field_elem_to_algebraic(xi0, field)
    return PersistentPoint(xi0, xi_alg, w.w2 // w.w1)


def _field_elem_to_algebraic(xi, field):
    from .algebra import AlgebraicReal, RationalField

    if isinstance(field, RationalField):
        return AlgebraicReal.from_rational(xi)
    r = xi.as_rational()
    if r is not None:
        return AlgebraicReal.from_rational(r)
    lo, hi = _enclosure(xi, field)
    return nf_root_to_algebraic((-xi, field.one), lo, hi, field)


def _enclosure(xi, field):
    """A rational interval with xi strictly inside."""
    from .algebra.fields import _iv_horner

    while True:
        lo, hi = _iv_horner(field.reduce(xi.coeffs),
                            (field.theta.lo, field.theta.hi))
        pad = (hi - lo) / 2 + Fraction(1, 1000)
        a, b = lo - pad, hi + pad
        if field.sign(xi - a) > 0 and field.sign(b - xi) > 0:
            return a, b
        field.theta.refine()


def semantic_elementary(sys):
    """Frame-robust semantic verdict, or None when deciding elementarity
    would need a coordinate adaptation or a center-manifold computation.

    Certified cases: regular points off the impasse set; equilibria off the
    impasse set with triangular linear part (and the coordinate-free failure
    of semi-hyperbolicity); transversal crossings and tangencies in frames
    where the relevant products carry no cancellation; the invariant-impasse
    family when the impasse polynomial is y-aligned.
    """
    field = sys.coeff_field
    z = field.is_zero
    sgn = field.sign
    delta0 = sys.delta.coeff(0, 0)
    P00, Q00 = sys.P.coeff(0, 0), sys.Q.coeff(0, 0)
    equilibrium = z(P00) and z(Q00)
    # Jacobian of (P, Q) at the origin
    px, py = sys.a.coeff(0, 0), sys.a.coeff(-1, 1)
    qx, qy = sys.b.coeff(1, -1), sys.b.coeff(0, 0)
    tr = px + qy
    det = px * qy - py * qx

    if not z(delta0):
        if not equilibrium:
            return True
        semi = sgn(tr) != 0 or sgn(det) < 0
        if not semi:
            return False
        if sys.P.restrict_axis(0) == ():
            return True          # triangular: eigenvalues are (px, qy)
        return None              # needs an eigen-adapting change of frame

    dx, dy = sys.delta.partial(0), sys.delta.partial(1)
    if z(dx.coeff(0, 0)) and z(dy.coeff(0, 0)):
        return False             # impasse set not smooth at the point
    xdelta = sys.P * dx + sys.Q * dy
    invariant = divide_bipoly(xdelta, sys.delta) is not None
    y_aligned = sys.delta.restrict_axis(1) == ()    # y divides delta

    if not equilibrium:
        if not z(xdelta.coeff(0, 0)):
            # transversal crossing; certified when the frame shows it on
            # the polygon (no column -1 contributions, product nonzero)
            no_col_minus1 = (not sys.delta.restrict_axis(0)) or \
                (not sys.P.restrict_axis(0))
            if not z(dy.coeff(0, 0) * Q00) and no_col_minus1:
                return True
            return None
        if invariant:
            return True if y_aligned else None
        return False             # genuine tangency of finite contact
    semi = sgn(tr) != 0 or sgn(det) < 0
    if not semi:
        return False
    if invariant and y_aligned:
        return True
    return None

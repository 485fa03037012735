"""Constrained systems in one chart.

A diagonalized constrained system is delta(x,y)*(dx/dt) = P, delta*(dy/dt) = Q.
The adjoint field is stored in the logarithmic basis P = a*x, Q = b*y where a
and b are Laurent polynomials with a: e1 >= -1, e2 >= 0 and b: e1 >= 0,
e2 >= -1.  The divisor flag records which coordinate axes are exceptional
divisor components in the current chart; those axes must be invariant for the
adjoint field, which tightens the exponent bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum

from .algebra import QQ, BiPoly, gcd_bipoly, is_monomial, is_squarefree_bipoly


class DivisorFlag(Enum):
    NONE = "none"
    EX = "ex"          # {x = 0}
    EY = "ey"          # {y = 0}
    EXY = "exy"        # {x*y = 0}

    def has_x(self):
        return self in (DivisorFlag.EX, DivisorFlag.EXY)

    def has_y(self):
        return self in (DivisorFlag.EY, DivisorFlag.EXY)

    @staticmethod
    def make(x_axis, y_axis):
        if x_axis and y_axis:
            return DivisorFlag.EXY
        if x_axis:
            return DivisorFlag.EX
        if y_axis:
            return DivisorFlag.EY
        return DivisorFlag.NONE


@dataclass(frozen=True)
class LogVectorField:
    """Adjoint field X = (sum a x^m y^n) x d/dx + (sum b x^m y^n) y d/dy."""

    a: BiPoly
    b: BiPoly

    def __post_init__(self):
        for e1, e2 in self.a.terms:
            if e1 < -1 or e2 < 0:
                raise ValueError(f"a-component exponent {(e1, e2)} out of bounds")
        for e1, e2 in self.b.terms:
            if e1 < 0 or e2 < -1:
                raise ValueError(f"b-component exponent {(e1, e2)} out of bounds")
        if self.a.is_zero() and self.b.is_zero():
            raise ValueError("adjoint field must not vanish identically")

    @property
    def P(self):
        return self.a.shift(1, 0)

    @property
    def Q(self):
        return self.b.shift(0, 1)


@dataclass(frozen=True)
class ConstrainedSystem:
    """One chart of the triple (manifold, oriented foliation, impasse ideal)."""

    delta: BiPoly
    field: LogVectorField
    divisor: DivisorFlag = DivisorFlag.NONE
    trace: tuple = ()
    notes: tuple = ()

    def __post_init__(self):
        if self.delta.is_zero():
            raise ValueError("impasse polynomial must be nonzero")
        if self.delta.min_exp(0) < 0 or self.delta.min_exp(1) < 0:
            raise ValueError("impasse polynomial must have nonnegative exponents")

    @property
    def coeff_field(self):
        return self.delta.field

    @property
    def a(self):
        return self.field.a

    @property
    def b(self):
        return self.field.b

    @property
    def P(self):
        return self.field.P

    @property
    def Q(self):
        return self.field.Q

    def with_trace(self, entry):
        return ConstrainedSystem(self.delta, self.field, self.divisor,
                                 self.trace + (entry,), self.notes)

    def describe_field(self):
        return self.coeff_field.describe()


@dataclass(frozen=True)
class AuxField:
    """Componentwise product of delta with the logarithmic field."""

    a: BiPoly
    b: BiPoly


def to_log_basis(P, Q):
    """Write (P, Q) as a LogVectorField: a = P/x, b = Q/y."""
    if P.is_zero() and Q.is_zero():
        raise ValueError("cannot take the logarithmic basis of the zero field")
    return LogVectorField(P.shift(-1, 0), Q.shift(0, -1))


def auxiliary_field(sys):
    """The auxiliary vector field delta*X in the same logarithmic convention."""
    return AuxField(sys.delta * sys.a, sys.delta * sys.b)


class ZeroDeterminant(ValueError):
    pass


def from_matrix(A, F):
    """Diagonalize A(x)*xdot = F(x) through the adjugate of A.

    A is ((A11, A12), (A21, A22)) and F is (F1, F2), all BiPoly.  delta is
    the squarefree part of det A (dropped multiplicity recorded in notes);
    the field is adj(A)*F in logarithmic form; no divisor.
    """
    (a11, a12), (a21, a22) = A
    f1, f2 = F
    det = a11 * a22 - a12 * a21
    if det.is_zero():
        raise ZeroDeterminant("det A is identically zero")
    P = a22 * f1 - a12 * f2
    Q = a11 * f2 - a21 * f1
    notes = []
    from .algebra import squarefree_part_bipoly, divide_bipoly

    delta = squarefree_part_bipoly(det)
    dropped = divide_bipoly(det, delta)
    if dropped is not None and (dropped.total_degree() or 0) > 0:
        notes.append("dropped repeated factors of det A: " + repr(dropped))
    if delta.total_degree() == 0:
        notes.append("no impasse: det A is a nonzero constant")
    return ConstrainedSystem(delta, to_log_basis(P, Q), DivisorFlag.NONE,
                             notes=tuple(notes))


@dataclass(frozen=True)
class Diagnostic:
    code: str
    detail: str = ""

    def __str__(self):
        return f"{self.code}: {self.detail}" if self.detail else self.code


def _divisor_monomial_part(g, divisor):
    """Split a monomial gcd into the part supported on flagged axes and the rest."""
    ((e1, e2),) = g.terms.keys()
    ok = (e1 == 0 or divisor.has_x()) and (e2 == 0 or divisor.has_y())
    return ok


def validate(sys):
    """Structural diagnostics; an empty list means well formed."""
    out = []
    if not is_squarefree_bipoly(sys.delta):
        out.append(Diagnostic("NonSquarefreeImpasse", repr(sys.delta)))
    g = gcd_bipoly(sys.P, sys.Q)
    if not g.is_zero() and (g.total_degree() or 0) > 0:
        if not is_monomial(g):
            out.append(Diagnostic("CommonFactor", repr(g)))
        elif not _divisor_monomial_part(g, sys.divisor):
            out.append(Diagnostic("CommonFactor", f"monomial {g!r} off the flagged axes"))
    if (g.total_degree() or 0) > 0:
        h = gcd_bipoly(g, sys.delta)
        if not is_monomial(h) and (h.total_degree() or 0) > 0:
            out.append(Diagnostic("ImpasseSharesFactor", repr(h)))
    if sys.divisor.has_x():
        if any(e1 < 0 for e1, _ in sys.a.terms):
            out.append(Diagnostic("DivisorInvarianceViolation",
                                  "a-component has x-exponent -1 with Ex flagged"))
        if sys.delta.restrict_axis(0) == ():
            out.append(Diagnostic("DegenerateRestriction", "delta(0, y) vanishes"))
    if sys.divisor.has_y():
        if any(e2 < 0 for _, e2 in sys.b.terms):
            out.append(Diagnostic("DivisorInvarianceViolation",
                                  "b-component has y-exponent -1 with Ey flagged"))
        if sys.delta.restrict_axis(1) == ():
            out.append(Diagnostic("DegenerateRestriction", "delta(x, 0) vanishes"))
    return out

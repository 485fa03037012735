"""The four coordinate transformations of the resolution algorithm.

Each operation returns a fresh ConstrainedSystem together with a
TransformRecord describing the map and the exact monomial divisions applied,
so that verify_pullback can recheck every edge as a polynomial identity.

Conventions.  The blow-up in the x direction is (x, y) = (sign*t^w1, t^w2*u)
written back as (x, y); the pullback of delta is divided by its maximal
power of the exceptional variable (strict transform) and the field absorbs
the remaining share of the paper-exact total division by the main-level
value R.  The admissible change with parameters (alpha, beta) is the
coordinate change ybar = y - alpha*x^beta, i.e. the substitution
y -> y + alpha*x^beta on delta, P, Q with the matching correction on Q.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .algebra import BiPoly, QQ
from .newton import is_controllable, polygon, support_aux, weight_of, NoMainSegment
from .system import ConstrainedSystem, DivisorFlag, LogVectorField, to_log_basis


class NotControllable(ValueError):
    pass


class InexactDivision(ArithmeticError):
    """Internal invariant breach: a recorded monomial division failed."""


class HeightChanged(AssertionError):
    pass


class SlopeNotIncreased(AssertionError):
    pass


@dataclass(frozen=True)
class TransformRecord:
    kind: str          # shear | blowup | admissible | translate
    params: dict
    source: str | None = None
    target: str | None = None

    def with_ids(self, source, target):
        return replace(self, source=source, target=target)


def _cleanup(a, b, divisor):
    """Strip common monomial factors of (P, Q) supported on flagged axes.

    Removing x^cx*y^cy is only sound when it keeps the divisor axes
    invariant for the adjoint field, which pins cx (cy) to the smallest
    x-exponent (y-exponent) across both logarithmic components.
    """
    cx = cy = 0
    exps = list(a.terms) + list(b.terms)
    if not exps:
        return a, b, (0, 0)
    if divisor.has_x():
        cx = max(0, min(e[0] for e in exps))
    if divisor.has_y():
        cy = max(0, min(e[1] for e in exps))
    if cx or cy:
        a, b = a.shift(-cx, -cy), b.shift(-cx, -cy)
    return a, b, (cx, cy)


def shear(sys, lam):
    """Linear change x = xbar + lam*ybar; only off the divisor."""
    if sys.divisor is not DivisorFlag.NONE:
        raise ValueError("shear is only applied away from the divisor")
    field = sys.coeff_field
    lam = field.coerce(lam)
    delta = sys.delta.subst_x_shear(lam)
    Pn = (sys.P - sys.Q * lam).subst_x_shear(lam)
    Qn = sys.Q.subst_x_shear(lam)
    rec = TransformRecord("shear", {"lam": lam})
    out = ConstrainedSystem(delta, to_log_basis(Pn, Qn), DivisorFlag.NONE)
    return out, rec


def choose_shear(sys):
    """Smallest lambda in 1, -1, 2, -2, ... achieving controllability.

    The accepted shear puts the main vertex on the lowest total-degree level
    of the auxiliary field, which the shear leaves invariant.  Returns 0
    when the polygon is controllable as given.
    """
    poly = polygon(support_aux(sys))
    if is_controllable(poly):
        return sys.coeff_field.coerce(0)
    dmin = min(r + s for r, s in support_aux(sys))
    dmax = max(r + s for r, s in support_aux(sys))
    bound = (dmax + 2) * (dmax + 3)
    k = 1
    while k <= bound:
        for lam in (k, -k):
            cand, _ = shear(sys, lam)
            p2 = polygon(support_aux(cand))
            r0, s0 = p2.main_vertex
            if is_controllable(p2) and r0 + s0 == dmin:
                return sys.coeff_field.coerce(lam)
        k += 1
    raise AssertionError("no shear within the degree bound; input violates "
                         "the isolated-equilibria hypothesis")


def blowup(sys, w, axis, sign=1):
    """Directional weighted blow-up with strict transform of the impasse.

    axis 'x': (x, y) = (sign*t^w1, t^w2*u); axis 'y': (x, y) = (t*u^w1 ...)
    i.e. (x, y) = (u^w1*t, sign*u^w2) in the chart coordinates (t, u).
    delta is divided by the maximal exceptional power v; the logarithmic
    field by R - v, reproducing the paper-exact total division R.
    """
    field = sys.coeff_field
    poly = polygon(support_aux(sys))
    if not is_controllable(poly):
        raise NotControllable(f"main vertex {poly.main_vertex} not in column 0/-1")
    w1, w2, R = w.w1, w.w2, w.R
    exc = 0 if axis == "x" else 1

    delta_raw = sys.delta.subst_weighted(w1, w2, axis, sign)
    v = delta_raw.min_exp(exc)
    delta_new = delta_raw.shift(-v, 0) if exc == 0 else delta_raw.shift(0, -v)

    a_terms, b_terms = {}, {}
    inv_w = Fraction(1, w1 if axis == "x" else w2)
    ratio = Fraction(w2, w1) if axis == "x" else Fraction(w1, w2)
    for (m, n), c in sys.a.terms.items():
        exp = (m * w1 + n * w2, n) if axis == "x" else (m, m * w1 + n * w2)
        tw = -1 if (sign < 0 and (m if axis == "x" else n) % 2 != 0) else 1
        if axis == "x":
            a_terms[exp] = a_terms.get(exp, field.zero) + c * (inv_w * tw)
            b_terms[exp] = b_terms.get(exp, field.zero) - c * (ratio * tw)
        else:
            a_terms[exp] = a_terms.get(exp, field.zero) + c * tw
    for (m, n), c in sys.b.terms.items():
        exp = (m * w1 + n * w2, n) if axis == "x" else (m, m * w1 + n * w2)
        tw = -1 if (sign < 0 and (m if axis == "x" else n) % 2 != 0) else 1
        if axis == "x":
            b_terms[exp] = b_terms.get(exp, field.zero) + c * tw
        else:
            a_terms[exp] = a_terms.get(exp, field.zero) - c * (ratio * tw)
            b_terms[exp] = b_terms.get(exp, field.zero) + c * (inv_w * tw)
    a_new = BiPoly(field, a_terms)
    b_new = BiPoly(field, b_terms)

    fdiv = R - v
    mins = [p.min_exp(exc) for p in (a_new, b_new) if not p.is_zero()]
    if not mins:
        raise InexactDivision("field pullback vanished identically")
    if min(mins) < fdiv:
        raise InexactDivision(
            f"field pullback divisible only by power {min(mins)}, need {fdiv}")
    if exc == 0:
        a_new, b_new = a_new.shift(-fdiv, 0), b_new.shift(-fdiv, 0)
    else:
        a_new, b_new = a_new.shift(0, -fdiv), b_new.shift(0, -fdiv)

    divisor = DivisorFlag.make(True, sys.divisor.has_y()) if axis == "x" \
        else DivisorFlag.make(sys.divisor.has_x(), True)
    a_new, b_new, clean = _cleanup(a_new, b_new, divisor)
    rec = TransformRecord("blowup", {
        "axis": axis, "sign": sign, "w": (w1, w2), "R": R,
        "divide_delta": v, "divide_field": fdiv, "cleanup": clean,
    })
    out = ConstrainedSystem(delta_new, LogVectorField(a_new, b_new), divisor)
    return out, rec


def admissible(sys, alpha, beta):
    """Admissible change ybar = y - alpha*x^beta (beta a positive integer).

    Preserves the height of the polygon and strictly increases the slope of
    a non-horizontal main segment; both are asserted.  Keeps Ex invariant.
    """
    if beta < 1 or int(beta) != beta:
        raise ValueError("beta must be a positive integer")
    if sys.divisor.has_y():
        raise ValueError("admissible change would move the Ey divisor component")
    field = sys.coeff_field
    alpha = field.coerce(alpha)
    before = polygon(support_aux(sys))
    shift = BiPoly(field, {(int(beta), 0): alpha})
    delta = sys.delta.subst_y_plus(shift)
    Psub = sys.P.subst_y_plus(shift)
    Qsub = sys.Q.subst_y_plus(shift)
    corr = BiPoly(field, {(int(beta) - 1, 0): alpha * beta})
    Qn = Qsub - corr * Psub
    lf = to_log_basis(Psub, Qn)
    a_new, b_new, clean = _cleanup(lf.a, lf.b, sys.divisor)
    out = ConstrainedSystem(delta, LogVectorField(a_new, b_new), sys.divisor)

    after = polygon(support_aux(out))
    if after.height != before.height:
        raise HeightChanged(f"height {before.height} -> {after.height}")
    s_before, s_after = before.slope(), after.slope()
    if not field.is_zero(alpha) and s_before is not None and s_before != 0:
        if s_after is not None and not (s_after > s_before):
            raise SlopeNotIncreased(f"slope {s_before} -> {s_after}")
    rec = TransformRecord("admissible", {
        "alpha": alpha, "beta": int(beta), "cleanup": clean,
    })
    return out, rec


def translate(sys, xi, axis="y", xi_algebraic=None, parent_embedding=None):
    """Move the divisor point (0, xi) (axis 'y') or (xi, 0) (axis 'x') to
    the origin.  xi must already be an element of the coefficient field;
    callers extend the field first when needed and pass the embedding of the
    old field generator (parent_embedding) for replay and verification.
    """
    field = sys.coeff_field
    xi = field.coerce(xi)
    delta = sys.delta.subst_translate(xi, axis)
    Pn = sys.P.subst_translate(xi, axis)
    Qn = sys.Q.subst_translate(xi, axis)
    moved_off = not field.is_zero(xi)
    if axis == "y":
        divisor = DivisorFlag.make(sys.divisor.has_x(),
                                   sys.divisor.has_y() and not moved_off)
    else:
        divisor = DivisorFlag.make(sys.divisor.has_x() and not moved_off,
                                   sys.divisor.has_y())
    lf = to_log_basis(Pn, Qn)
    a_new, b_new, clean = _cleanup(lf.a, lf.b, divisor)
    out = ConstrainedSystem(delta, LogVectorField(a_new, b_new), divisor)

    if moved_off and axis == "y" and sys.divisor.has_x():
        before = polygon(support_aux(sys))
        after = polygon(support_aux(out))
        if after.height > before.height:
            raise HeightChanged(
                f"translation increased height {before.height} -> {after.height}")
        if after.main_vertex[0] != 0:
            raise AssertionError("main vertex left column 0 under translation")
    rec = TransformRecord("translate", {
        "xi": xi, "axis": axis, "cleanup": clean,
        "xi_algebraic": xi_algebraic, "parent_embedding": parent_embedding,
    })
    return out, rec


def map_system_field(sys, coeff_map, new_field):
    """Reinterpret a system in an extended coefficient field."""
    conv = lambda p: p.map_coeffs(coeff_map, new_field)
    return ConstrainedSystem(conv(sys.delta),
                             LogVectorField(conv(sys.a), conv(sys.b)),
                             sys.divisor, sys.trace, sys.notes)


def embedding_map(old_field, new_field, emb):
    """Coefficient map from old_field into new_field sending the old
    generator to the polynomial emb evaluated at the new generator."""
    from .algebra import RationalField

    if isinstance(old_field, RationalField):
        return new_field.coerce
    e1 = new_field.element(emb)

    def cmap(e):
        acc = new_field.zero
        for c in reversed(old_field.reduce(e.coeffs)):
            acc = acc * e1 + new_field.coerce(c)
        return acc

    return cmap


def _phi_of_record(rec, field):
    """The recorded map (new -> old) as a pair of BiPoly, plus m1, m2."""
    x = BiPoly(field, {(1, 0): 1})
    y = BiPoly(field, {(0, 1): 1})
    one = BiPoly.const(1, field)
    p = rec.params
    cx, cy = p.get("cleanup", (0, 0))
    m_clean = BiPoly(field, {(cx, cy): 1})
    if rec.kind == "shear":
        return (x + y * p["lam"], y), one, one
    if rec.kind == "admissible":
        phi = (x, y + BiPoly(field, {(p["beta"], 0): p["alpha"]}))
        return phi, one, m_clean
    if rec.kind == "translate":
        xi = p["xi"]
        phi = (x + xi, y) if p["axis"] == "x" else (x, y + xi)
        return phi, one, m_clean
    if rec.kind == "blowup":
        w1, w2 = p["w"]
        s = p["sign"]
        if p["axis"] == "x":
            phi = (BiPoly(field, {(w1, 0): s}), BiPoly(field, {(w2, 1): 1}))
            m1 = BiPoly(field, {(p["divide_delta"], 0): 1})
            m2 = BiPoly(field, {(p["divide_field"] + cx, cy): 1})
        else:
            phi = (BiPoly(field, {(1, w1): 1}), BiPoly(field, {(0, w2): s}))
            m1 = BiPoly(field, {(0, p["divide_delta"]): 1})
            m2 = BiPoly(field, {(cx, p["divide_field"] + cy): 1})
        return phi, m1, m2
    raise ValueError(f"unknown record kind {rec.kind!r}")


def _compose(poly, phi):
    """poly(phi_x, phi_y) for a polynomial-exponent poly."""
    field = poly.field
    acc = BiPoly.zero(field)
    px, py = phi
    pow_cache = {}

    def power(base_key, base, k):
        cache = pow_cache.setdefault(base_key, {0: BiPoly.const(1, field)})
        top = max(cache)
        while top < k:
            cache[top + 1] = cache[top] * base
            top += 1
        return cache[k]

    for (e1, e2), c in poly.items_sorted():
        if e1 < 0 or e2 < 0:
            raise ValueError("composition needs polynomial exponents")
        acc = acc + power("x", px, e1) * power("y", py, e2) * c
    return acc


def _jacobian(phi, field):
    px, py = phi
    return ((px.partial(0), px.partial(1)),
            (py.partial(0), py.partial(1)))


def verify_pullback(parent, child, rec):
    """Exact check of the recorded edge: delta_parent(Phi) = m1*delta_child
    and (X_parent(Phi)) = DPhi * (m2 * X_child) componentwise.

    Returns (ok, message); message names the failing identity.
    """
    field = child.coeff_field
    if parent.coeff_field is not field:
        emb = rec.params.get("parent_embedding")
        if emb is None:
            return False, "coefficient fields differ and no embedding recorded"
        parent = map_system_field(
            parent, embedding_map(parent.coeff_field, field, emb), field)
    phi, m1, m2 = _phi_of_record(rec, field)
    lhs_delta = _compose(parent.delta, phi)
    if not (lhs_delta - m1 * child.delta).is_zero():
        return False, "impasse pullback identity failed"
    (dxx, dxy), (dyx, dyy) = _jacobian(phi, field)
    Pc, Qc = m2 * child.P, m2 * child.Q
    lhs_P = _compose(parent.P, phi)
    lhs_Q = _compose(parent.Q, phi)
    if not (lhs_P - (dxx * Pc + dxy * Qc)).is_zero():
        return False, "x-component pullback identity failed"
    if not (lhs_Q - (dyx * Pc + dyy * Qc)).is_zero():
        return False, "y-component pullback identity failed"
    return True, ""

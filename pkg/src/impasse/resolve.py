"""The resolution driver: iterate weight selection, blow-ups in both
directions, divisor scanning, translation and the persistent-point escape,
producing a finite tree of charts whose leaves are certified elementary.

Chart plan per blow-up.  The positive x- and y-charts are always produced;
a negative chart is produced only when its weight component is even (for an
odd component the positive chart already covers both signs of the variable,
up to the coordinate flip that leaves all classification invariant).  The
y-direction chart contributes its origin, certified elementary immediately,
plus its divisor candidates classified in place; non-elementary y-chart
candidates are geometric duplicates of x-chart candidates and are left to
the sibling x-chart, with a note on the y-chart node.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import QQ, AlgebraicReal, extend_with_root, gcd_bipoly, isolate_real_roots
from .algebra import upoly as up
from .classify import (
    DegenerateRestriction,
    classify_origin,
    divisor_candidates,
    is_singular_origin,
    persistent_point,
)
from .newton import NoMainSegment, is_controllable, polygon, support_aux, weight_of
from .system import ConstrainedSystem, DivisorFlag
from .transform import (
    admissible,
    blowup,
    choose_shear,
    map_system_field,
    shear,
    translate,
    verify_pullback,
)


class EngineError(RuntimeError):
    """Internal invariant breach; indicates a bug, never expected input."""


class CertificateFailure(EngineError):
    pass


class PositiveDimensionalLocus(ValueError):
    """A defining system has a common curve, violating the standing
    hypotheses (isolated equilibria / isolated tangencies)."""


@dataclass
class Budget:
    max_depth: int = 25
    max_field_degree: int = 16


class BudgetExceeded(RuntimeError):
    def __init__(self, detail, partial=None):
        super().__init__(detail)
        self.detail = detail
        self.partial = partial


@dataclass
class TreeNode:
    chart_id: str
    system: ConstrainedSystem
    incoming: object            # TransformRecord or None at the root
    height: int
    slope: object               # Fraction or None
    children: list = dc_field(default_factory=list)
    certificate: object = None  # PointClass on leaves
    notes: tuple = ()

    @property
    def is_leaf(self):
        return not self.children

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass
class ResolutionTree:
    root: TreeNode
    stats: dict

    def leaves(self):
        return [n for n in self.root.walk() if n.is_leaf]


class _Builder:
    def __init__(self, budget, verify=True):
        self.budget = budget or Budget()
        self.verify = verify
        self.counter = 0
        self.stats = {"blowups": 0, "admissible": 0, "shears": 0,
                      "translations": 0, "max_depth": 0, "field_degrees": set()}
        self.root = None

    def new_node(self, sys, incoming):
        poly = polygon(support_aux(sys))
        node = TreeNode(f"n{self.counter}", sys, incoming, poly.height,
                        poly.slope())
        self.counter += 1
        return node

    def attach(self, parent, sys, rec):
        rec = rec.with_ids(parent.chart_id, f"n{self.counter}")
        child = self.new_node(sys.with_trace(rec.target), rec)
        parent.children.append(child)
        if self.verify:
            ok, msg = verify_pullback(parent.system, child.system, rec)
            if not ok:
                raise EngineError(f"pullback verification failed: {msg}")
        return child

    def fail(self, detail):
        raise BudgetExceeded(detail, partial=self.root)

    # -- the local strategy -------------------------------------------------

    def resolve_point(self, node, depth, adm_chain):
        self.stats["max_depth"] = max(self.stats["max_depth"], depth)
        sys = node.system
        poly = polygon(support_aux(sys))

        if not is_controllable(poly) and sys.divisor is DivisorFlag.NONE:
            lam = choose_shear(sys)
            if not sys.coeff_field.is_zero(lam):
                out, rec = shear(sys, lam)
                self.stats["shears"] += 1
                child = self.attach(node, out, rec)
                self.resolve_point(child, depth, adm_chain)
                return

        cls = classify_origin(sys)
        if cls.elementary:
            node.certificate = cls
            return

        try:
            w = weight_of(polygon(support_aux(sys)))
        except NoMainSegment as exc:
            raise EngineError(
                f"non-elementary chart without a usable main segment: {exc}")

        pp = persistent_point(sys, w)
        if pp is not None:
            cap = (sys.delta.total_degree() or 0) + \
                max(sys.P.total_degree() or 0, sys.Q.total_degree() or 0) + 1
            if adm_chain >= cap:
                self.fail(f"admissible chain exceeded cap {cap}")
            out, rec = admissible(sys, pp.xi, pp.beta)
            rec.params["xi_algebraic"] = pp.xi_algebraic
            self.stats["admissible"] += 1
            child = self.attach(node, out, rec)
            self.resolve_point(child, depth, adm_chain + 1)
            return

        if depth >= self.budget.max_depth:
            self.fail(f"blow-up depth cap {self.budget.max_depth} reached")

        plan = [("y", 1)] + ([("y", -1)] if w.w2 % 2 == 0 else []) + \
               [("x", 1)] + ([("x", -1)] if w.w1 % 2 == 0 else [])
        for axis, sign in plan:
            out, rec = blowup(sys, w, axis, sign)
            self.stats["blowups"] += 1
            chart = self.attach(node, out, rec)
            if axis == "y":
                cert = classify_origin(chart.system)
                if not cert.elementary:
                    raise EngineError(
                        "y-direction chart origin failed to be elementary")
                chart.certificate = cert
                self.scan_divisor(chart, depth + 1, recurse=False,
                                  parent_height=node.height)
            else:
                if chart.height >= node.height:
                    raise EngineError(
                        f"x-direction blow-up did not decrease the height "
                        f"({node.height} -> {chart.height})")
                self.scan_divisor(chart, depth + 1, recurse=True,
                                  parent_height=node.height)
                self.resolve_point(chart, depth + 1, 0)

    def scan_divisor(self, chart, depth, recurse, parent_height):
        sys = chart.system
        cands = divisor_candidates(sys)
        for cand in cands:
            zero_at = up.ueval(cand.factor, sys.coeff_field.coerce(0),
                               sys.coeff_field)
            if sys.coeff_field.is_zero(zero_at) and \
                    cand.interval[0] < 0 < cand.interval[1]:
                continue        # the chart origin itself
            ext = extend_with_root(sys.coeff_field, cand.factor,
                                   cand.interval[0], cand.interval[1])
            if ext.field.degree > self.budget.max_field_degree:
                self.fail(f"field degree {ext.field.degree} exceeds cap "
                          f"{self.budget.max_field_degree}")
            self.stats["field_degrees"].add(ext.field.degree)
            base = sys if ext.embedding is None else \
                map_system_field(sys, ext.coeff_map, ext.field)
            out, rec = translate(base, ext.xi, cand.axis,
                                 xi_algebraic=ext.xi_algebraic,
                                 parent_embedding=ext.embedding)
            self.stats["translations"] += 1
            cnode = self.attach(chart, out, rec)
            cls = classify_origin(cnode.system)
            if recurse:
                if cnode.height >= parent_height:
                    raise EngineError(
                        "divisor point kept the height without triggering "
                        "the persistent-point escape")
                if cls.elementary:
                    cnode.certificate = cls
                else:
                    self.resolve_point(cnode, depth, 0)
            else:
                if cls.elementary:
                    cnode.certificate = cls
                else:
                    chart.children.remove(cnode)
                    chart.notes += (
                        f"non-elementary divisor point at {cand.algebraic!r} "
                        f"resolved in the sibling x-direction chart",)


def resolve_local(sys, budget=None, verify=True):
    """Resolve the singularity of a constrained system at the origin."""
    builder = _Builder(budget, verify)
    root = builder.new_node(sys, None)
    builder.root = root
    builder.resolve_point(root, 0, 0)
    builder.stats["field_degrees"] = sorted(builder.stats["field_degrees"])
    builder.stats["nodes"] = builder.counter
    return ResolutionTree(root, builder.stats)


def resolve_global(items, budget=None, verify=True):
    """One local resolution per listed singular point.

    items is a list of (system, points) with each point a pair of exact
    coordinates (Fraction or AlgebraicReal); every point is moved to the
    origin by exact translations before resolving.
    """
    out = []
    for sys, points in items:
        for pt in points:
            out.append(resolve_local(_recenter(sys, pt), budget, verify))
    return out


def _recenter(sys, point):
    for axis, coord in zip(("x", "y"), point):
        field = sys.coeff_field
        if isinstance(coord, AlgebraicReal):
            r = coord.as_rational()
            if r is not None:
                coord = r
        if isinstance(coord, AlgebraicReal):
            fac = up.upoly([field.coerce(c) for c in coord.minpoly], field)
            ext = extend_with_root(field, fac, coord.lo, coord.hi)
            base = sys if ext.embedding is None else \
                map_system_field(sys, ext.coeff_map, ext.field)
            sys, _ = translate(base, ext.xi, axis, xi_algebraic=ext.xi_algebraic,
                               parent_embedding=ext.embedding)
        else:
            sys, _ = translate(sys, field.coerce(coord), axis)
    return sys


def find_singular_points(sys, box=None):
    """All singular points of a rational input system: equilibria of the
    adjoint field, non-smooth impasse points, and isolated tangencies
    (invariant impasse components contribute no tangency candidates).

    Exact elimination: a resultant in y, real root isolation in x, then the
    gcd of the y-specializations over each root's field.  Returns a list of
    (x, y) pairs of Fractions/AlgebraicReals, sorted, or raises
    PositiveDimensionalLocus when a defining system shares a curve.
    """
    if sys.coeff_field is not QQ:
        raise ValueError("singular-point search expects rational input")
    P, Q, delta = sys.P, sys.Q, sys.delta
    dx, dy = delta.partial(0), delta.partial(1)
    xdelta = P * dx + Q * dy
    tang = xdelta
    while not tang.is_zero():
        g = gcd_bipoly(delta, tang)
        if (g.total_degree() or 0) == 0:
            break
        q = _exact_quotient(tang, g)
        tang = q
    pts = []
    g_pq = gcd_bipoly(P, Q)
    if (g_pq.total_degree() or 0) > 0:
        raise PositiveDimensionalLocus(
            f"P and Q share the factor {g_pq!r}; equilibria are not isolated")
    pts += _common_zeros(P, Q)
    pts += _triple_zeros(delta, dx, dy)
    if not tang.is_zero():
        pts += _common_zeros(delta, tang)
    uniq = []
    for p in pts:
        if not any(_pt_eq(p, q) for q in uniq):
            uniq.append(p)
    if box is not None:
        a, b, c, d = box
        uniq = [p for p in uniq
                if _cmp_coord(p[0], a) >= 0 and _cmp_coord(p[0], b) <= 0
                and _cmp_coord(p[1], c) >= 0 and _cmp_coord(p[1], d) <= 0]
    uniq.sort(key=_pt_key)
    return uniq


def _exact_quotient(p, d):
    from .algebra import divide_bipoly

    q = divide_bipoly(p, d)
    if q is None:
        raise EngineError("inexact division while stripping invariant factors")
    return q


def _as_alg(v):
    if isinstance(v, AlgebraicReal):
        return v
    return AlgebraicReal.from_rational(v)


def _pt_eq(p, q):
    return _as_alg(p[0]).compare(_as_alg(q[0])) == 0 and \
        _as_alg(p[1]).compare(_as_alg(q[1])) == 0


def _cmp_coord(v, bound):
    from fractions import Fraction

    return _as_alg(v).compare(_as_alg(Fraction(bound)))


def _pt_key(p):
    return (float(_as_alg(p[0])), float(_as_alg(p[1])))


def _triple_zeros(delta, dx, dy):
    """Common real zeros of {delta, dx, dy} for squarefree delta.

    Since delta is squarefree, gcd(delta, dx, dy) is constant; any common
    factor of the partials is coprime to delta, so the locus splits into
    exact coprime subproblems.
    """
    if dx.is_zero() and dy.is_zero():
        return []
    if dx.is_zero():
        return _common_zeros(delta, dy)
    if dy.is_zero():
        return _common_zeros(delta, dx)
    h = gcd_bipoly(dx, dy)
    if (h.total_degree() or 0) == 0:
        return [p for p in _common_zeros(dx, dy) if _vanishes_at(delta, p)]
    pts = _common_zeros(delta, h)
    pts += _triple_zeros(delta, _exact_quotient(dx, h), _exact_quotient(dy, h))
    return pts


def _vanishes_at(poly, point):
    """Exact test poly(point) == 0 for algebraic coordinates."""
    sysf = QQ
    x, y = point
    if isinstance(x, AlgebraicReal) or isinstance(y, AlgebraicReal):
        from .algebra import field_join, NumberField

        jx, jy = _as_alg(x), _as_alg(y)
        theta, e1, e2 = field_join(jx, jy)
        if theta.is_rational():
            xv = _rat_of(e1, theta)
            yv = _rat_of(e2, theta)
            return poly.eval(xv, yv) == 0
        K = NumberField(theta)
        pv = poly.map_coeffs(K.coerce, K)
        return K.is_zero(pv.eval(K.element(e1), K.element(e2)))
    return poly.eval(x, y) == 0


def _rat_of(emb, theta):
    r = theta.as_rational()
    acc = 0
    for c in reversed(emb):
        acc = acc * r + c
    return acc


def _common_zeros(f, g):
    """Common real zeros of two coprime rational bivariate polynomials."""
    if f.is_zero() or g.is_zero():
        h = g if f.is_zero() else f
        raise PositiveDimensionalLocus(
            f"system ({f!r}, {g!r}) vanishes on the curve {h!r}")
    if f.degree(1) == 0 and g.degree(1) == 0:
        return []               # coprime pure-x pair: no common vertical line
    if f.degree(1) == 0:
        f, g = g, f
    if g.degree(1) == 0:
        pts = []
        for xr, _mult in isolate_real_roots(_as_xpoly(g)):
            r = xr.as_rational()
            if r is not None:
                field, xcoord, fy = QQ, r, _specialize_x(f, r, QQ)
            else:
                ext = extend_with_root(QQ, xr.minpoly, xr.lo, xr.hi)
                field, xcoord = ext.field, xr
                fy = _specialize_x(f, ext.xi, field)
            if up.udeg(fy) < 1:
                continue
            from .algebra import nf_isolate_real_roots, nf_root_to_algebraic

            for (lo, hi), _m, factor in nf_isolate_real_roots(fy, field):
                yr = nf_root_to_algebraic(factor, lo, hi, field)
                ry = yr.as_rational()
                pts.append((xcoord, ry if ry is not None else yr))
        return pts
    res = _resultant_y(f, g)
    if not res:
        raise PositiveDimensionalLocus(
            f"resultant of {f!r} and {g!r} vanishes identically")
    pts = []
    for xr, _mult in isolate_real_roots(res):
        r = xr.as_rational()
        if r is not None:
            fy = _specialize_x(f, r, QQ)
            gy = _specialize_x(g, r, QQ)
            field, xcoord = QQ, r
        else:
            ext = extend_with_root(QQ, xr.minpoly, xr.lo, xr.hi)
            field, xcoord = ext.field, xr
            fy = _specialize_x(f, ext.xi, field)
            gy = _specialize_x(g, ext.xi, field)
        h = up.ugcd(fy, gy, field)
        if up.udeg(h) < 1:
            continue
        from .algebra import nf_isolate_real_roots, nf_root_to_algebraic

        for (lo, hi), _m, factor in nf_isolate_real_roots(h, field):
            yr = nf_root_to_algebraic(factor, lo, hi, field)
            ry = yr.as_rational()
            pts.append((xcoord, ry if ry is not None else yr))
    return pts


def _resultant_y(f, g):
    """Res_y(f, g) as a univariate polynomial in x, by interpolation."""
    from fractions import Fraction

    dfy, dgy = f.degree(1), g.degree(1)
    dfx, dgx = f.degree(0), g.degree(0)
    bound = dfy * dgx + dgy * dfx + 1

    def ylead(p, dy):
        cs = {}
        for (e1, e2), c in p.terms.items():
            if e2 == dy:
                cs[e1] = c
        n = max(cs)
        return up.utrim([cs.get(i, QQ.zero) for i in range(n + 1)], QQ)

    lf, lg = ylead(f, dfy), ylead(g, dgy)
    samples = []
    x0 = 0
    while len(samples) < bound:
        xv = Fraction(x0)
        if up.ueval(lf, xv, QQ) != 0 and up.ueval(lg, xv, QQ) != 0:
            fv = _specialize_x(f, xv, QQ)
            gv = _specialize_x(g, xv, QQ)
            samples.append((xv, up.resultant(fv, gv, QQ)))
        x0 = -x0 + (1 if x0 <= 0 else 0)
    from .algebra.algebraic import _interp_resultant

    return _interp_resultant(samples)


def _as_xpoly(p):
    """A pure-x BiPoly as a univariate tuple over QQ."""
    row = {e1: c for (e1, e2), c in p.terms.items()}
    n = max(row)
    return up.utrim([row.get(i, QQ.zero) for i in range(n + 1)], QQ)


def _specialize_x(p, xv, field):
    """p(xv, y) as a univariate polynomial in y over the field."""
    cols = {}
    for (e1, e2), c in p.terms.items():
        cols.setdefault(e2, {})[e1] = c
    out = {}
    for e2, row in cols.items():
        acc = field.zero
        top = max(row)
        for i in range(top, -1, -1):
            acc = acc * field.coerce(xv) + field.coerce(row.get(i, 0))
        out[e2] = acc
    n = max(out)
    return up.utrim([out.get(i, field.zero) for i in range(n + 1)], field)


def termination_certificate(tree):
    """Per-path (height, slope) descent report; validates the invariant
    that heights strictly decrease at x-direction blow-ups and stay equal
    with strictly increasing slope across admissible escapes."""
    paths = []

    def walk(node, trail, parent):
        kind = node.incoming.kind if node.incoming else "root"
        entry = {"chart": node.chart_id, "edge": kind,
                 "height": node.height, "slope": node.slope}
        if node.incoming is not None:
            params = node.incoming.params
            if kind == "blowup":
                entry["axis"] = params["axis"]
                if params["axis"] == "x" and node.height >= parent.height:
                    raise CertificateFailure(
                        f"height did not drop at {node.chart_id}")
            if kind == "admissible":
                if node.height != parent.height:
                    raise CertificateFailure(
                        f"admissible step changed height at {node.chart_id}")
                if node.slope is not None and parent.slope is not None \
                        and not (node.slope > parent.slope):
                    raise CertificateFailure(
                        f"admissible step did not increase slope at "
                        f"{node.chart_id}")
        trail = trail + [entry]
        if node.is_leaf:
            if node.certificate is None or not node.certificate.elementary:
                raise CertificateFailure(
                    f"leaf {node.chart_id} lacks an elementary certificate")
            paths.append(trail)
        for child in node.children:
            walk(child, trail, node)

    walk(tree.root, [], None)
    return {"paths": paths, "leaves": len(paths)}

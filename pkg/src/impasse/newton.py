"""Support, Newton polygon, graduations, controllability and weights.

The polygon of a support S is the boundary of the convex envelope of
S + R^2_{>=0}.  Its segments are numbered left to right: gamma_0 is the
vertical ray above the main vertex v0 and gamma_{n+1} the horizontal ray;
the first proper segment gamma_1 is the main segment whose primitive inner
normal (w1, w2) is the blow-up weight.  All hull arithmetic is exact over
the integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .system import auxiliary_field


class NoMainSegment(ValueError):
    pass


@dataclass(frozen=True)
class Weight:
    w1: int
    w2: int
    R: int

    def __post_init__(self):
        if self.w1 < 1 or self.w2 < 1 or gcd(self.w1, self.w2) != 1:
            raise ValueError("weights must be coprime positive integers")

    def level(self, point):
        return self.w1 * point[0] + self.w2 * point[1]

    def slope(self):
        """Slope of the supporting line, -w1/w2."""
        return -Fraction(self.w1, self.w2)


@dataclass(frozen=True)
class NewtonPolygon:
    support: frozenset
    vertices: tuple            # hull vertices, left to right
    main_vertex: tuple         # v0 = (r0, s0)
    height: int                # s0

    @property
    def single_point(self):
        return len(self.vertices) == 1

    def segments(self):
        """Proper segments gamma_1..gamma_n as vertex pairs."""
        return list(zip(self.vertices, self.vertices[1:]))

    def main_segment(self):
        """(v0, v1) or None when the hull has a single vertex."""
        if self.single_point:
            return None
        return self.vertices[0], self.vertices[1]

    def weight(self):
        seg = self.main_segment()
        if seg is None:
            raise NoMainSegment("single-vertex polygon has no main segment")
        (r0, s0), (r1, s1) = seg
        dr, ds = r1 - r0, s1 - s0
        if ds == 0:
            raise NoMainSegment("main segment is horizontal")
        g = gcd(dr, -ds)
        w1, w2 = -ds // g, dr // g
        return Weight(w1, w2, w1 * r0 + w2 * s0)

    def slope(self):
        seg = self.main_segment()
        if seg is None:
            return None
        (r0, s0), (r1, s1) = seg
        return Fraction(s1 - s0, r1 - r0)

    def to_json(self):
        verts = list(self.vertices)
        data = {
            "support": sorted(self.support),
            "vertices": verts,
            "main_vertex": list(self.main_vertex),
            "height": self.height,
            "segments": [
                {"kind": "vertical", "at": list(verts[0])},
                *({"kind": "proper", "from": list(p), "to": list(q)}
                  for p, q in self.segments()),
                {"kind": "horizontal", "at": list(verts[-1])},
            ],
        }
        try:
            w = self.weight()
            data["main_line"] = {"w": [w.w1, w.w2], "R": w.R}
        except NoMainSegment:
            data["main_line"] = None
        return data


def support_aux(sys):
    """Support of the auxiliary field, cancellations already removed."""
    aux = auxiliary_field(sys)
    return frozenset(aux.a.terms) | frozenset(aux.b.terms)


def polygon(support):
    """Exact lower-left hull of support + R^2_{>=0}."""
    pts = sorted(set(map(tuple, support)))
    if not pts:
        raise ValueError("empty support has no polygon")
    # Pareto filter: drop points dominated componentwise by another
    best = {}
    for r, s in pts:
        if r not in best or s < best[r]:
            best[r] = s
    staircase = []
    cur = None
    for r in sorted(best):
        if cur is None or best[r] < cur:
            staircase.append((r, best[r]))
            cur = best[r]
    # lower convex hull of the strictly descending staircase
    hull = []
    for p in staircase:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (p[0] - x1) * (y2 - y1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    v0 = hull[0]
    return NewtonPolygon(frozenset(map(tuple, support)), tuple(hull), v0, v0[1])


def weight_of(poly):
    """Primitive inner normal of the main segment and its line value R."""
    return poly.weight()


def graduation_level(aux, w, d):
    """Terms of both components on the level line w1*r + w2*s = d."""
    from .system import AuxField
    from .algebra import BiPoly

    def pick(p):
        return BiPoly(p.field, {e: c for e, c in p.terms.items()
                                if w.w1 * e[0] + w.w2 * e[1] == d})

    return AuxField(pick(aux.a), pick(aux.b))


def is_controllable(poly):
    """Main vertex in column 0 or -1."""
    return poly.main_vertex[0] in (-1, 0)


def is_newton_elementary(poly):
    """The polygon criterion of the elementary/final configurations.

    True when the support meets {(0,-1), (-1,0)} (the point is regular and
    off the impasse set), when the main vertex is (0,0), (0,-1) or (-1,0)
    (semi-hyperbolic with triangular linear part, or a transversal
    crossing), or when the main segment is horizontal.  A single-vertex
    polygon has no proper main segment; it counts as horizontal only at
    height <= 0.  Single vertices in column 0 or -1 with positive height
    are settled by the classifier's degenerate-final rule, not here.

    A point (-1,0) in the support is always the main vertex, so only the
    (0,-1) membership genuinely extends the main-vertex clause; it is the
    configuration the equivalence theorem's proof derives from the support
    point (0,-1) directly.
    """
    if (0, -1) in poly.support or (-1, 0) in poly.support:
        return True
    if poly.main_vertex in ((0, 0), (0, -1), (-1, 0)):
        return True
    if poly.single_point:
        return poly.height <= 0
    return poly.slope() == 0

"""Sparse bivariate Laurent polynomials over an exact coefficient field.

A BiPoly is a map from integer exponent pairs (e1, e2) to nonzero field
coefficients.  Negative exponents are allowed; the logarithmic-basis bound
checks (e1 >= -1 and so on) live with the consumers, which keeps the
arithmetic total.  The zero polynomial is the empty map.
"""

from __future__ import annotations

from fractions import Fraction

from . import upoly as up
from .fields import QQ


def grlex_key(exp):
    """Graded lexicographic order with x > y."""
    return (exp[0] + exp[1], exp[0])


class BiPoly:
    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        clean = {}
        if terms:
            for exp, c in terms.items():
                c = field.coerce(c)
                if not field.is_zero(c):
                    clean[(int(exp[0]), int(exp[1]))] = c
        self.terms = clean

    @classmethod
    def zero(cls, field=QQ):
        return cls(field, {})

    @classmethod
    def const(cls, c, field=QQ):
        return cls(field, {(0, 0): c})

    @classmethod
    def monomial(cls, e1, e2, c=1, field=QQ):
        return cls(field, {(e1, e2): c})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def support(self):
        return frozenset(self.terms)

    def items_sorted(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def coeff(self, e1, e2):
        return self.terms.get((e1, e2), self.field.zero)

    def min_exp(self, axis):
        """Smallest exponent of x (axis 0) or y (axis 1); None when zero."""
        if not self.terms:
            return None
        return min(e[axis] for e in self.terms)

    def total_degree(self):
        return max((e[0] + e[1] for e in self.terms), default=None)

    def degree(self, axis):
        return max((e[axis] for e in self.terms), default=None)

    def _coerced(self, other):
        if isinstance(other, BiPoly):
            if other.field is not self.field:
                raise ValueError("mixed coefficient fields")
            return other
        return BiPoly(self.field, {(0, 0): other})

    def __add__(self, other):
        o = self._coerced(other)
        terms = dict(self.terms)
        for exp, c in o.terms.items():
            if exp in terms:
                s = terms[exp] + c
                if self.field.is_zero(s):
                    del terms[exp]
                else:
                    terms[exp] = s
            else:
                terms[exp] = c
        out = BiPoly.__new__(BiPoly)
        out.field, out.terms = self.field, terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = BiPoly.__new__(BiPoly)
        out.field = self.field
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-self._coerced(other))

    def __rsub__(self, other):
        return self._coerced(other) + (-self)

    def __mul__(self, other):
        o = self._coerced(other)
        field = self.field
        acc = {}
        for (a1, a2), c in self.terms.items():
            for (b1, b2), d in o.terms.items():
                exp = (a1 + b1, a2 + b2)
                if exp in acc:
                    acc[exp] = acc[exp] + c * d
                else:
                    acc[exp] = c * d
        return BiPoly(field, acc)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a BiPoly")
        out = BiPoly.const(1, self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("BiPoly is not hashable")

    def shift(self, d1, d2):
        """Multiply by x^d1 * y^d2 (either sign)."""
        out = BiPoly.__new__(BiPoly)
        out.field = self.field
        out.terms = {(e1 + d1, e2 + d2): c for (e1, e2), c in self.terms.items()}
        return out

    def map_coeffs(self, fn, new_field):
        return BiPoly(new_field, {e: fn(c) for e, c in self.terms.items()})

    def eval(self, x, y):
        """Exact evaluation; requires exponents >= 0 unless the value is invertible."""
        field = self.field
        x, y = field.coerce(x), field.coerce(y)
        acc = field.zero
        for (e1, e2), c in self.terms.items():
            acc = acc + c * _pow_signed(x, e1, field) * _pow_signed(y, e2, field)
        return acc

    def eval_float(self, x, y):
        f = self.field
        return sum(f.to_float(c) * (x ** e1) * (y ** e2)
                   for (e1, e2), c in self.terms.items())

    # -- substitutions used by the coordinate transformations --------------

    def subst_x_shear(self, lam):
        """x -> x + lam*y; requires polynomial x-exponents."""
        field = self.field
        lam = field.coerce(lam)
        out = BiPoly.zero(field)
        xly = BiPoly(field, {(1, 0): 1, (0, 1): lam})
        powers = {0: BiPoly.const(1, field)}
        for (e1, e2), c in self.items_sorted():
            if e1 < 0:
                raise ValueError("shear substitution needs x-exponents >= 0")
            if e1 not in powers:
                p = max(powers)
                while p < e1:
                    powers[p + 1] = powers[p] * xly
                    p += 1
            out = out + powers[e1].shift(0, e2) * c
        return out

    def subst_y_plus(self, other):
        """y -> y + g(x) for a pure-x polynomial g; x-exponents of g >= 0."""
        field = self.field
        out = BiPoly.zero(field)
        base = BiPoly(field, {(0, 1): 1}) + other
        powers = {0: BiPoly.const(1, field)}
        for (e1, e2), c in self.items_sorted():
            if e2 < 0:
                raise ValueError("substitution needs y-exponents >= 0")
            if e2 not in powers:
                p = max(powers)
                while p < e2:
                    powers[p + 1] = powers[p] * base
                    p += 1
            out = out + powers[e2].shift(e1, 0) * c
        return out

    def subst_translate(self, xi, axis):
        """y -> y + xi (axis 'y') or x -> x + xi (axis 'x'), xi in the field."""
        field = self.field
        xi = field.coerce(xi)
        out = {}
        if axis == "y":
            for e1, cs in self._columns(0).items():
                shifted = up.ucompose_shift(cs, xi, field)
                for j, c in enumerate(shifted):
                    if not field.is_zero(c):
                        out[(e1, j)] = out.get((e1, j), field.zero) + c
        else:
            for e2, cs in self._columns(1).items():
                shifted = up.ucompose_shift(cs, xi, field)
                for j, c in enumerate(shifted):
                    if not field.is_zero(c):
                        out[(j, e2)] = out.get((j, e2), field.zero) + c
        return BiPoly(self.field, out)

    def _columns(self, axis):
        """Group terms into univariate slices along the other axis."""
        cols = {}
        for (e1, e2), c in self.terms.items():
            key, pos = ((e1, e2) if axis == 0 else (e2, e1))
            if pos < 0:
                raise ValueError("translation needs polynomial exponents")
            cs = cols.setdefault(key, [])
            while len(cs) <= pos:
                cs.append(self.field.zero)
            cs[pos] = cs[pos] + c
        return {k: up.utrim(v, self.field) for k, v in cols.items()}

    def subst_weighted(self, w1, w2, axis, sign):
        """Directional weighted substitution of the blow-up map.

        axis 'x': (x, y) = (sign*t^w1, t^w2 * u) giving a BiPoly in (t, u);
        axis 'y': (x, y) = (t^w1 * u... ) symmetric form, see blowup().
        Works on Laurent exponents; the map on exponents is injective.
        """
        field = self.field
        out = {}
        for (k, l), c in self.terms.items():
            if axis == "x":
                exp = (k * w1 + l * w2, l)
                flip = (sign < 0 and k % 2 != 0)
            else:
                exp = (k, k * w1 + l * w2)
                flip = (sign < 0 and l % 2 != 0)
            out[exp] = -c if flip else c
        return BiPoly(field, out)

    def divide_monomial_exact(self, d1, d2):
        """Divide by x^d1 * y^d2; every exponent must stay integral (always) and
        the caller is responsible for meaning; this is just a shift."""
        return self.shift(-d1, -d2)

    def partial(self, axis):
        """Exact partial derivative; requires polynomial exponents on axis."""
        field = self.field
        out = {}
        for (e1, e2), c in self.terms.items():
            if axis == 0:
                if e1 == 0:
                    continue
                out[(e1 - 1, e2)] = c * e1
            else:
                if e2 == 0:
                    continue
                out[(e1, e2 - 1)] = c * e2
        return BiPoly(field, out)

    def restrict_axis(self, axis):
        """The univariate slice x=0 (axis 0 fixed) or y=0, as a upoly tuple.

        restrict_axis(0) returns delta(0, y) as coefficients in y.
        """
        field = self.field
        cols = {}
        for (e1, e2), c in self.terms.items():
            fixed, free = (e1, e2) if axis == 0 else (e2, e1)
            if fixed == 0:
                cols[free] = cols.get(free, field.zero) + c
        if not cols:
            return ()
        n = max(cols)
        if min(cols) < 0:
            raise ValueError("restriction has negative exponents")
        return up.utrim([cols.get(i, field.zero) for i in range(n + 1)], field)

    def to_qq(self):
        """Copy into QQ coefficients; fails if any coefficient is irrational."""
        out = {}
        for e, c in self.terms.items():
            out[e] = QQ.coerce(c) if not isinstance(c, (int, Fraction)) else Fraction(c)
        return BiPoly(QQ, out)

    def __repr__(self):
        from ..printing import format_bipoly

        return format_bipoly(self)


def _pow_signed(x, n, field):
    if n >= 0:
        out = field.one
        for _ in range(n):
            out = out * x
        return out
    return field.invert(_pow_signed(x, -n, field))


# -- gcd and squarefree machinery over F[x, y] ------------------------------


def _to_yrec(p, field):
    """BiPoly (polynomial exponents) as a dense list in y of upolys in x."""
    if not p.terms:
        return []
    dy = max(e2 for _, e2 in p.terms)
    rows = [dict() for _ in range(dy + 1)]
    for (e1, e2), c in p.terms.items():
        if e1 < 0 or e2 < 0:
            raise ValueError("gcd needs polynomial inputs")
        rows[e2][e1] = c
    out = []
    for row in rows:
        if row:
            n = max(row)
            out.append(up.utrim([row.get(i, field.zero) for i in range(n + 1)], field))
        else:
            out.append(())
    while out and not out[-1]:
        out.pop()
    return out


def _from_yrec(rows, field):
    terms = {}
    for j, cs in enumerate(rows):
        for i, c in enumerate(cs):
            if not field.is_zero(c):
                terms[(i, j)] = c
    return BiPoly(field, terms)


def _yrec_content(rows, field):
    g = ()
    for cs in rows:
        g = up.ugcd(g, cs, field)
    return g


def _yrec_scale_div(rows, d, field):
    return [up.udiv_exact(cs, d, field) if cs else () for cs in rows]


def _yrec_mul_upoly(rows, m, field):
    return [up.umul(cs, m, field) for cs in rows]


def _yrec_prem(f, g, field):
    """Pseudo-remainder of f by g in (F[x])[y]."""
    df, dg = len(f) - 1, len(g) - 1
    lead = g[-1]
    r = [tuple(cs) for cs in f]
    while len(r) - 1 >= dg and any(r):
        while r and not r[-1]:
            r.pop()
        if len(r) - 1 < dg:
            break
        c = r[-1]
        k = len(r) - 1 - dg
        r = _yrec_mul_upoly(r, lead, field)
        for i in range(dg + 1):
            idx = i + k
            r[idx] = up.usub(r[idx], up.umul(c, g[i], field), field)
        r.pop()
    while r and not r[-1]:
        r.pop()
    return r


def gcd_bipoly(u, v):
    """Greatest common divisor in F[x, y], normalized monic in grlex (x > y).

    gcd(0, v) = normalized v.  Inputs must have polynomial exponents.
    """
    if u.field is not v.field:
        raise ValueError("mixed coefficient fields")
    field = u.field
    if u.is_zero():
        return _grlex_normalize(v)
    if v.is_zero():
        return _grlex_normalize(u)

    f, g = _to_yrec(u, field), _to_yrec(v, field)
    if len(f) < len(g):
        f, g = g, f
    cf, cg = _yrec_content(f, field), _yrec_content(g, field)
    f = _yrec_scale_div(f, cf, field)
    g = _yrec_scale_div(g, cg, field)
    while True:
        r = _yrec_prem(f, g, field)
        if not r:
            break
        cr = _yrec_content(r, field)
        f, g = g, _yrec_scale_div(r, cr, field)
    if len(g) == 1:
        # gcd is a pure-x polynomial: the gcd of the contents times it
        base = up.ugcd(cf, cg, field)
        result = _from_yrec([up.umul(base, g[0], field)], field)
        return _grlex_normalize(result)
    content = up.ugcd(cf, cg, field)
    rows = _yrec_mul_upoly(g, content, field)
    return _grlex_normalize(_from_yrec(rows, field))


def _grlex_normalize(p):
    if p.is_zero():
        return p
    lead = max(p.terms, key=grlex_key)
    inv = p.field.invert(p.terms[lead])
    return BiPoly(p.field, {e: c * inv for e, c in p.terms.items()})


def divides_exactly(d, p):
    """Whether d divides p in F[x, y]; both with polynomial exponents."""
    q = divide_bipoly(p, d)
    return q is not None


def divide_bipoly(p, d):
    """Exact quotient p / d in F[x, y], or None when the division is inexact."""
    field = p.field
    if d.is_zero():
        return None
    if p.is_zero():
        return BiPoly.zero(field)
    rem = p
    quot = BiPoly.zero(field)
    dlead = max(d.terms, key=grlex_key)
    dcoef = d.terms[dlead]
    guard = len(p.terms) * (len(d.terms) + 2) + 16
    while not rem.is_zero():
        rlead = max(rem.terms, key=grlex_key)
        e = (rlead[0] - dlead[0], rlead[1] - dlead[1])
        if e[0] < 0 or e[1] < 0:
            return None
        c = rem.terms[rlead] * field.invert(dcoef)
        mono = BiPoly(field, {e: c})
        quot = quot + mono
        rem = rem - mono * d
        guard -= 1
        if guard < 0:
            return None
    return quot


def squarefree_part_bipoly(p):
    """Product of the distinct irreducible factors of a nonzero p in F[x, y]."""
    if p.is_zero():
        raise ValueError("squarefree part of zero")
    g = gcd_bipoly(gcd_bipoly(p, p.partial(0)), p.partial(1))
    q = divide_bipoly(p, g)
    if q is None:
        raise ArithmeticError("squarefree gcd did not divide")
    return _grlex_normalize(q)


def is_squarefree_bipoly(p):
    g = gcd_bipoly(gcd_bipoly(p, p.partial(0)), p.partial(1))
    return not g.is_zero() and g.total_degree() == 0


def is_monomial(p):
    return len(p.terms) <= 1

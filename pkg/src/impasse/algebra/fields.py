"""Coefficient fields: QQ and simple real extensions QQ(theta).

A field object supplies exact arithmetic hooks (coerce, is_zero, sign,
invert, abs_upper, to_float) consumed by the polynomial layers.  Elements of
QQ are plain Fractions; elements of a NumberField are NFElement residues,
polynomials in theta reduced modulo a squarefree minimal-polynomial
candidate.

The candidate modulus need not be irreducible.  Zero tests follow the
dynamic-evaluation idea: gcd the residue against the modulus and decide
whether theta is a root of the gcd by counting roots inside theta's
isolating interval.  Whenever a proper factor is discovered this way the
modulus is replaced by the factor that still vanishes at theta, so the
representation keeps shrinking toward the true minimal polynomial.
"""

from __future__ import annotations

from fractions import Fraction

from . import upoly as up


class RationalField:
    """The field QQ; elements are fractions.Fraction."""

    degree = 1
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, v):
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, NFElement):
            r = v.as_rational()
            if r is not None:
                return r
            raise TypeError("cannot coerce a proper field element into QQ")
        if isinstance(v, str):
            return Fraction(v)
        raise TypeError(f"cannot coerce {type(v).__name__} into QQ")

    def is_zero(self, e):
        return e == 0

    def sign(self, e):
        return (e > 0) - (e < 0)

    def invert(self, e):
        return 1 / e

    def abs_upper(self, e):
        return abs(e)

    def to_float(self, e):
        return float(e)

    def describe(self):
        return "QQ"

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def _iv_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _iv_mul(a, b):
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(ps), max(ps))


def _iv_horner(coeffs, iv):
    """Enclosure of sum(c_i * t^i) for t in iv; coeffs are Fractions."""
    acc = (Fraction(0), Fraction(0))
    for c in reversed(coeffs):
        acc = _iv_add(_iv_mul(acc, iv), (c, c))
    return acc


class NFElement:
    """Residue a_0 + a_1*theta + ... representing a real algebraic number."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)

    def _lift(self, other):
        if isinstance(other, NFElement):
            if other.field is not self.field:
                raise ValueError("mixed number fields")
            return other
        return NFElement(self.field, (Fraction(other),))

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return NFElement(self.field, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if not self.coeffs or not o.coeffs:
            return NFElement(self.field, ())
        prod = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    prod[i + j] += a * b
        return NFElement(self.field, self.field.reduce(prod))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self.field.invert(self._lift(other))

    def __rtruediv__(self, other):
        return self._lift(other) * self.field.invert(self)

    def __pow__(self, n):
        if n < 0:
            return self.field.invert(self) ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.field.is_zero(self - o)

    def __hash__(self):
        raise TypeError("NFElement is not hashable")

    def __bool__(self):
        return not self.field.is_zero(self)

    def as_rational(self):
        """The element as a Fraction if it is rational, else None."""
        cs = self.field.reduce(self.coeffs)
        if len(cs) == 0:
            return Fraction(0)
        if len(cs) == 1:
            return cs[0]
        if all(c == 0 for c in cs[1:]):
            return cs[0]
        if self.field.is_zero(NFElement(self.field, (Fraction(0),) + cs[1:])):
            return cs[0]
        return None

    def __repr__(self):
        cs = self.field.reduce(self.coeffs)
        if not cs:
            return "0"
        parts = []
        for i, c in enumerate(cs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*th" if c != 1 else "th")
            else:
                parts.append(f"{c}*th^{i}" if c != 1 else f"th^{i}")
        return " + ".join(parts) if parts else "0"


class NumberField:
    """QQ(theta) for a real algebraic theta with an isolating interval."""

    def __init__(self, theta):
        self.theta = theta
        m = up.upoly(theta.minpoly, QQ)
        self._modulus = up.umonic(m, QQ)

    @property
    def degree(self):
        return len(self._modulus) - 1

    @property
    def modulus(self):
        return self._modulus

    @property
    def zero(self):
        return NFElement(self, ())

    @property
    def one(self):
        return NFElement(self, (Fraction(1),))

    def gen(self):
        return NFElement(self, (Fraction(0), Fraction(1)))

    def element(self, coeffs):
        return NFElement(self, self.reduce([Fraction(c) for c in coeffs]))

    def coerce(self, v):
        if isinstance(v, NFElement):
            if v.field is not self:
                raise ValueError("mixed number fields")
            return v
        if isinstance(v, (int, Fraction)):
            return NFElement(self, (Fraction(v),))
        raise TypeError(f"cannot coerce {type(v).__name__} into {self!r}")

    def reduce(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        m = self._modulus
        d = len(m) - 1
        while len(cs) > d:
            c = cs.pop()
            if c:
                k = len(cs) - d
                for i in range(d):
                    cs[k + i] -= c * m[i]
        while cs and cs[-1] == 0:
            cs.pop()
        return tuple(cs)

    def _theta_is_root(self, g):
        """Whether theta is a root of g (g a nonzero divisor of the modulus)."""
        chain = up.sturm_chain(g, QQ)
        return up.sturm_count(chain, self.theta.lo, self.theta.hi, QQ) == 1

    def _split(self, g):
        """Shrink the modulus using a discovered proper factor g."""
        if self._theta_is_root(g):
            self._modulus = up.umonic(g, QQ)
            return True
        self._modulus = up.umonic(up.udiv_exact(self._modulus, g, QQ), QQ)
        return False

    def is_zero(self, e):
        cs = self.reduce(e.coeffs)
        if not cs:
            return True
        g = up.ugcd(cs, self._modulus, QQ)
        if up.udeg(g) == 0:
            return False
        return self._split(g)

    def invert(self, e):
        cs = self.reduce(e.coeffs)
        while True:
            if not cs:
                raise ZeroDivisionError("inverting zero field element")
            g, s, _ = _uxgcd(cs, self._modulus, QQ)
            if up.udeg(g) == 0:
                inv = up.uscale(s, 1 / g[0], QQ)
                return NFElement(self, self.reduce(inv))
            if self._split(g):
                raise ZeroDivisionError("inverting zero field element")
            cs = self.reduce(cs)

    def sign(self, e):
        if self.is_zero(e):
            return 0
        cs = self.reduce(e.coeffs)
        while True:
            lo, hi = _iv_horner(cs, (self.theta.lo, self.theta.hi))
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            self.theta.refine()

    def abs_upper(self, e):
        lo, hi = _iv_horner(self.reduce(e.coeffs), (self.theta.lo, self.theta.hi))
        return max(abs(lo), abs(hi))

    def to_float(self, e):
        cs = self.reduce(e.coeffs)
        while True:
            lo, hi = _iv_horner(cs, (self.theta.lo, self.theta.hi))
            if hi - lo <= Fraction(1, 10**17) * max(1, abs(lo)):
                return float((lo + hi) / 2)
            self.theta.refine()

    def describe(self):
        return {
            "minpoly": _print_zpoly(self._modulus),
            "interval": [str(self.theta.lo), str(self.theta.hi)],
        }

    def __repr__(self):
        return f"QQ(th) with th^{self.degree} root of {_print_zpoly(self._modulus)}"


def _uxgcd(f, g, field):
    """Extended gcd: returns (h, s, t) with s*f + t*g = h."""
    r0, r1 = f, g
    s0, s1 = (field.one,), ()
    t0, t1 = (), (field.one,)
    while r1:
        q, r = up.udivmod(r0, r1, field)
        r0, r1 = r1, r
        s0, s1 = s1, up.usub(s0, up.umul(q, s1, field), field)
        t0, t1 = t1, up.usub(t0, up.umul(q, t1, field), field)
    return r0, s0, t0


def _print_zpoly(f):
    """Integer-primitive rendering like '3*t^2-2', highest power first."""
    den = 1
    for c in f:
        den = den * c.denominator // _igcd(den, c.denominator)
    ints = [int(c * den) for c in f]
    g = 0
    for c in ints:
        g = _igcd(g, c)
    if g:
        ints = [c // g for c in ints]
    if ints and ints[-1] < 0:
        ints = [-c for c in ints]
    parts = []
    for i in range(len(ints) - 1, -1, -1):
        c = ints[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        elif i == 1:
            body = "t" if mag == 1 else f"{mag}*t"
        else:
            body = f"t^{i}" if mag == 1 else f"{mag}*t^{i}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+{body}" if c > 0 else f"-{body}")
    return "".join(parts) if parts else "0"


def _igcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)

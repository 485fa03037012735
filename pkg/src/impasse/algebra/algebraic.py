"""Real algebraic numbers as (squarefree minimal-polynomial candidate,
isolating interval) pairs, plus root isolation and primitive-element joins.

The candidate polynomial is squarefree over QQ but not necessarily
irreducible; every consumer pins the intended root with the interval, which
contains exactly one real root of the candidate and whose endpoints are not
roots.  Intervals only ever shrink, so refinement never changes the number
an AlgebraicReal denotes.
"""

from __future__ import annotations

from fractions import Fraction

from . import upoly as up
from .fields import QQ, NFElement, NumberField, _iv_horner, _uxgcd, _print_zpoly


class AlgebraicReal:
    """A real root of a squarefree rational polynomial, pinned by an interval."""

    __slots__ = ("minpoly", "lo", "hi", "_chain")

    def __init__(self, minpoly, lo, hi):
        f = up.upoly(minpoly, QQ)
        if up.udeg(f) < 1:
            raise ValueError("minimal polynomial must be nonconstant")
        self.minpoly = f
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        self._chain = None
        if up.ueval(f, self.lo, QQ) == 0 or up.ueval(f, self.hi, QQ) == 0:
            raise ValueError("interval endpoints must not be roots")
        if up.sturm_count(self._sturm(), self.lo, self.hi, QQ) != 1:
            raise ValueError("interval does not isolate exactly one root")

    @classmethod
    def from_rational(cls, q):
        q = Fraction(q)
        return cls((-q, Fraction(1)), q - 1, q + 1)

    def _sturm(self):
        if self._chain is None:
            self._chain = up.sturm_chain(self.minpoly, QQ)
        return self._chain

    def is_rational(self):
        return up.udeg(self.minpoly) == 1

    def as_rational(self):
        if self.is_rational():
            return -self.minpoly[0] / self.minpoly[1]
        return None

    def width(self):
        return self.hi - self.lo

    def refine(self):
        """Halve the isolating interval."""
        mid = (self.lo + self.hi) / 2
        if up.ueval(self.minpoly, mid, QQ) == 0:
            w = (self.hi - self.lo) / 8
            self.lo, self.hi = mid - w, mid + w
            return
        if up.sturm_count(self._sturm(), self.lo, mid, QQ) == 1:
            self.hi = mid
        else:
            self.lo = mid

    def refine_below(self, width):
        while self.hi - self.lo >= width:
            self.refine()

    def sign(self):
        if up.ueval(self.minpoly, Fraction(0), QQ) == 0 and self.lo < 0 < self.hi:
            return 0
        while self.lo < 0 < self.hi:
            self.refine()
        return 1 if self.lo >= 0 else -1

    def __float__(self):
        self.refine_below(Fraction(1, 10**17) * max(1, abs(self.lo)))
        return float((self.lo + self.hi) / 2)

    def compare(self, other):
        """Exact three-way comparison with another AlgebraicReal."""
        g = up.ugcd(self.minpoly, other.minpoly, QQ)
        gchain = up.sturm_chain(g, QQ) if up.udeg(g) >= 1 else None
        while True:
            if self.hi <= other.lo:
                return -1
            if other.hi <= self.lo:
                return 1
            if gchain is not None:
                a = max(self.lo, other.lo)
                b = min(self.hi, other.hi)
                a, b = _clear_endpoints(g, a, b)
                if a < b and up.sturm_count(gchain, a, b, QQ) > 0:
                    return 0
            self.refine()
            other.refine()

    def __lt__(self, other):
        return self.compare(_as_algebraic(other)) < 0

    def __le__(self, other):
        return self.compare(_as_algebraic(other)) <= 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, AlgebraicReal)):
            return self.compare(_as_algebraic(other)) == 0
        return NotImplemented

    def __hash__(self):
        raise TypeError("AlgebraicReal is not hashable")

    def describe(self):
        return {
            "minpoly": _print_zpoly(self.minpoly),
            "interval": [str(self.lo), str(self.hi)],
        }

    def __repr__(self):
        approx = float(self)
        return f"AlgebraicReal({_print_zpoly(self.minpoly)} ~ {approx:.6g})"


def _as_algebraic(v):
    if isinstance(v, AlgebraicReal):
        return v
    return AlgebraicReal.from_rational(Fraction(v))


def _clear_endpoints(g, a, b):
    """Nudge (a, b) inward until neither endpoint is a root of g."""
    step = (b - a) / 64
    while a < b and up.ueval(g, a, QQ) == 0:
        a += step
        step /= 2
    step = (b - a) / 64
    while a < b and up.ueval(g, b, QQ) == 0:
        b -= step
        step /= 2
    return a, b


def isolate_real_roots(f):
    """Distinct real roots of a nonzero rational polynomial, ascending.

    Returns [(AlgebraicReal, multiplicity)].  Each root's minimal-polynomial
    candidate is its squarefree (Yun) factor, so multiple roots of f of equal
    multiplicity share a candidate.
    """
    f = up.upoly(f, QQ)
    if not f:
        raise ValueError("cannot isolate roots of the zero polynomial")
    if up.udeg(f) == 0:
        return []
    decomp = up.usquarefree_decomposition(f, QQ)
    out = []
    for factor, mult in decomp:
        for lo, hi in up.isolate_intervals(factor, QQ):
            out.append((AlgebraicReal(factor, lo, hi), mult))
    out.sort(key=lambda rm: (rm[0].lo, rm[0].hi))
    for (r1, _), (r2, _) in zip(out, out[1:]):
        while r1.hi > r2.lo:
            r1.refine()
            r2.refine()
    return out


def _interp_resultant(samples):
    """Lagrange interpolation through [(x, value)] with Fraction data."""
    n = len(samples)
    acc = ()
    for i in range(n):
        xi, yi = samples[i]
        num = (Fraction(yi),)
        den = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            xj = samples[j][0]
            num = up.umul(num, (-xj, Fraction(1)), QQ)
            den *= xi - xj
        acc = up.uadd(acc, up.uscale(num, 1 / den, QQ), QQ)
    return acc


def resultant_shifted(m2, m1, k):
    """Res_t(m2(t), m1(y - k*t)) as a polynomial in y, by interpolation."""
    d1, d2 = up.udeg(m1), up.udeg(m2)
    need = d1 * d2 + 1
    samples = []
    y0 = 0
    while len(samples) < need:
        shifted = _compose_linear(m1, Fraction(y0), Fraction(-k))
        samples.append((Fraction(y0), up.resultant(m2, shifted, QQ)))
        y0 += 1
    return _interp_resultant(samples)


def _compose_linear(f, c0, c1):
    """f(c0 + c1*t) over QQ."""
    acc = ()
    lin = (c0, c1)
    for c in reversed(f):
        acc = up.uadd(up.umul(acc, lin, QQ), up.uconst(c, QQ), QQ)
    return acc


def field_join(a1, a2):
    """Primitive element for QQ(a1, a2).

    Returns (theta, emb1, emb2) where theta is an AlgebraicReal and emb1,
    emb2 are rational polynomials with emb_i(theta) = a_i.  Follows the
    classical resultant construction theta = a1 + k*a2 with the smallest
    natural k giving a squarefree candidate.
    """
    ident = (Fraction(0), Fraction(1))
    if a2.is_rational():
        q = a2.as_rational()
        if a1.is_rational():
            theta = _as_algebraic(a1.as_rational())
            return theta, (a1.as_rational(),), (q,)
        return a1, ident, (q,)
    if a1.is_rational():
        return a2, (a1.as_rational(),), ident
    if a1.compare(a2) == 0:
        return a1, ident, ident

    m1, m2 = a1.minpoly, a2.minpoly
    k = 1
    while True:
        cand = up.umonic(resultant_shifted(m2, m1, k), QQ)
        if up.udeg(up.ugcd(cand, up.uderiv(cand, QQ), QQ)) == 0:
            break
        k += 1
    # cand is squarefree with a1 + k*a2 among its roots
    chain = up.sturm_chain(cand, QQ)
    while True:
        lo = a1.lo + k * a2.lo
        hi = a1.hi + k * a2.hi
        if up.ueval(cand, lo, QQ) != 0 and up.ueval(cand, hi, QQ) != 0 and \
                up.sturm_count(chain, lo, hi, QQ) == 1:
            break
        a1.refine()
        a2.refine()
    theta = AlgebraicReal(cand, lo, hi)

    field = NumberField(theta)
    # a2's image: the unique common root of m2(u) and m1(theta - k*u)
    m2_k = [field.coerce(c) for c in m2]
    shifted = _nf_compose_linear(m1, field.gen(), field.coerce(-k), field)
    g = up.ugcd(up.utrim(m2_k, field), shifted, field)
    if up.udeg(g) != 1:
        raise ArithmeticError("primitive element gcd is not linear")
    e2 = -g[0] / g[1]
    e1 = field.gen() - k * e2
    emb1 = _nf_coeff_tuple(e1, field)
    emb2 = _nf_coeff_tuple(e2, field)
    _check_embedding(theta, emb1, a1)
    _check_embedding(theta, emb2, a2)
    return theta, emb1, emb2


def _nf_compose_linear(f, c0, c1, field):
    """f(c0 + c1*u) as a polynomial in u over the number field."""
    acc = ()
    lin = up.utrim((c0, c1), field)
    for c in reversed(f):
        acc = up.uadd(up.umul(acc, lin, field), up.uconst(c, field), field)
    return acc


def _nf_coeff_tuple(e, field):
    cs = field.reduce(e.coeffs)
    return tuple(cs) if cs else (Fraction(0),)


def _check_embedding(theta, emb, target):
    """Assert emb(theta) and target denote the same real number."""
    while True:
        lo, hi = _iv_horner(emb, (theta.lo, theta.hi))
        if hi < target.lo or lo > target.hi:
            raise ArithmeticError("embedding does not match the joined root")
        if hi - lo < (target.hi - target.lo) / 2:
            return
        theta.refine()


def nf_isolate_real_roots(f, field):
    """Distinct real roots of f over a NumberField (or QQ), ascending.

    Returns [((lo, hi), multiplicity, squarefree_factor)] with rational
    isolating intervals whose endpoints are not roots.  Signs are decided
    exactly in the field, so this works for reducible squarefree moduli too.
    """
    f = up.utrim(f, field)
    if not f:
        raise ValueError("cannot isolate roots of the zero polynomial")
    if up.udeg(f) == 0:
        return []
    decomp = up.usquarefree_decomposition(f, field)
    out = []
    for factor, mult in decomp:
        for lo, hi in up.isolate_intervals(factor, field):
            out.append(((lo, hi), mult, factor))
    out.sort(key=lambda t: t[0])
    return out


def nf_root_to_algebraic(factor, lo, hi, field):
    """Absolute AlgebraicReal for a root of `factor` over QQ(theta).

    factor is squarefree over the field with exactly one root in (lo, hi).
    The absolute minimal-polynomial candidate is the squarefree part of
    Res_t(modulus(t), lift(factor)(t, y)).
    """
    from .fields import RationalField

    if isinstance(field, RationalField):
        return AlgebraicReal(factor, lo, hi)
    modulus = field.modulus
    coeff_polys = [field.reduce(c.coeffs) for c in factor]
    deg_t = max((len(cp) - 1 for cp in coeff_polys if cp), default=0)
    dy = len(factor) - 1
    need = up.udeg(modulus) * dy + 1
    samples = []
    y0 = 0
    while len(samples) < need:
        spec = ()
        for j, cp in enumerate(coeff_polys):
            spec = up.uadd(spec, up.uscale(cp, Fraction(y0) ** j, QQ), QQ)
        if up.udeg(spec) == deg_t:
            samples.append((Fraction(y0), up.resultant(modulus, spec, QQ)))
        y0 += 1
    res = _interp_resultant(samples)
    if not res:
        raise ArithmeticError("vanishing norm resultant; unnormalized input")
    cand = up.usquarefree_part(res, QQ)
    chain = up.sturm_chain(cand, QQ)
    fchain = up.sturm_chain(factor, field)
    while True:
        a, b = _clear_endpoints(cand, lo, hi)
        if a < b and up.sturm_count(chain, a, b, QQ) == 1 and \
                up.ueval(cand, lo, QQ) != 0 and up.ueval(cand, hi, QQ) != 0:
            return AlgebraicReal(cand, lo, hi)
        mid = (lo + hi) / 2
        while field.is_zero(up.ueval(factor, mid, field)):
            mid = (lo + mid) / 2
        if up.sturm_count(fchain, lo, mid, field) == 1:
            hi = mid
        else:
            lo = mid


class Extension:
    """Result of adjoining a root: the containing field, a coefficient map
    from the old field, the root as a field element, the root as an
    absolute AlgebraicReal, and the embedding of the old generator (None
    when the field did not change, () when the old field was QQ)."""

    __slots__ = ("field", "coeff_map", "xi", "xi_algebraic", "embedding")

    def __init__(self, field, coeff_map, xi, xi_algebraic, embedding):
        self.field = field
        self.coeff_map = coeff_map
        self.xi = xi
        self.xi_algebraic = xi_algebraic
        self.embedding = embedding


def extend_with_root(field, factor, lo, hi):
    """Adjoin the root xi of `factor` in (lo, hi) to the coefficient field.

    factor is squarefree over `field` with exactly one real root in the
    interval.  Rational and already-in-field roots never enlarge the field.
    """
    from .fields import RationalField

    factor = up.utrim(factor, field)
    same = lambda xi, ar: Extension(field, (lambda e: e), xi, ar, None)
    if up.udeg(factor) == 1:
        xi = -factor[0] / factor[1]
        if isinstance(field, RationalField):
            return same(xi, AlgebraicReal.from_rational(xi))
        r = xi.as_rational()
        ar = AlgebraicReal.from_rational(r) if r is not None else \
            nf_root_to_algebraic(factor, lo, hi, field)
        return same(xi, ar)

    if isinstance(field, RationalField):
        for r in up.rational_roots(factor):
            if lo < r < hi:
                return same(r, AlgebraicReal.from_rational(r))
        ar = AlgebraicReal(factor, lo, hi)
        new_field = NumberField(ar)
        return Extension(new_field, new_field.coerce, new_field.gen(), ar, ())

    xi_abs = nf_root_to_algebraic(factor, lo, hi, field)
    # rational root of the absolute candidate that is exactly the factor root
    for r in up.rational_roots(xi_abs.minpoly):
        if lo < r < hi and field.is_zero(up.ueval(factor, r, field)):
            return same(field.coerce(r), AlgebraicReal.from_rational(r))
    # in-field root: the gcd of the two annihilators over the field is
    # linear exactly when xi already lies in QQ(theta)
    abs_in_field = up.upoly([field.coerce(c) for c in xi_abs.minpoly], field)
    g = up.ugcd(abs_in_field, factor, field)
    if up.udeg(g) == 1:
        xi = -g[0] / g[1]
        if field.sign(xi - lo) > 0 and field.sign(hi - xi) > 0:
            return same(xi, xi_abs)

    th_now = AlgebraicReal(field.modulus, field.theta.lo, field.theta.hi)
    theta, emb1, emb2 = field_join(th_now, xi_abs)
    new_field = NumberField(theta)
    e1 = new_field.element(emb1)

    def coeff_map(e, _field=field, _new=new_field, _e1=e1):
        acc = _new.zero
        for c in reversed(_field.reduce(e.coeffs)):
            acc = acc * _e1 + _new.coerce(c)
        return acc

    return Extension(new_field, coeff_map, new_field.element(emb2), xi_abs,
                     tuple(emb1))

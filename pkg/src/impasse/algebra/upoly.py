"""Univariate polynomial arithmetic over an exact field.

Polynomials are tuples of coefficients, low degree first, with no trailing
zeros.  Every function takes the coefficient field as an explicit argument so
the same code serves QQ (coefficients are Fraction) and real number fields
QQ(theta) (coefficients are NFElement).  The field object must provide
``zero``, ``one``, ``coerce``, ``is_zero``, ``sign``, ``invert`` and
``abs_upper``; see impasse.algebra.fields.
"""

from __future__ import annotations

from fractions import Fraction


def utrim(cs, field):
    cs = list(cs)
    while cs and field.is_zero(cs[-1]):
        cs.pop()
    return tuple(cs)


def upoly(cs, field):
    """Build a normalized polynomial from an iterable of raw coefficients."""
    return utrim([field.coerce(c) for c in cs], field)


def udeg(f):
    """Degree; -1 for the zero polynomial."""
    return len(f) - 1


def uconst(c, field):
    return utrim([field.coerce(c)], field)


def uadd(f, g, field):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else field.zero
        b = g[i] if i < len(g) else field.zero
        out.append(a + b)
    return utrim(out, field)


def uneg(f, field):
    return tuple(-c for c in f)


def usub(f, g, field):
    return uadd(f, uneg(g, field), field)


def uscale(f, c, field):
    c = field.coerce(c)
    if field.is_zero(c):
        return ()
    return utrim([a * c for a in f], field)


def umul(f, g, field):
    if not f or not g:
        return ()
    out = [field.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return utrim(out, field)


def udivmod(f, g, field):
    """Quotient and remainder; g must be nonzero."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = field.invert(g[-1])
    q = [field.zero] * max(0, len(f) - len(g) + 1)
    r = list(f)
    while len(r) >= len(g) and not all(field.is_zero(c) for c in r):
        while r and field.is_zero(r[-1]):
            r.pop()
        if len(r) < len(g):
            break
        c = r[-1] * inv_lead
        k = len(r) - len(g)
        q[k] = q[k] + c
        for i, b in enumerate(g):
            r[i + k] = r[i + k] - c * b
        r.pop()
    return utrim(q, field), utrim(r, field)


def udiv_exact(f, g, field):
    q, r = udivmod(f, g, field)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def umonic(f, field):
    if not f:
        return ()
    inv = field.invert(f[-1])
    return utrim([c * inv for c in f], field)


def ugcd(f, g, field):
    """Monic greatest common divisor via the Euclidean algorithm."""
    a, b = f, g
    while b:
        a, b = b, udivmod(a, b, field)[1]
    return umonic(a, field)


def uderiv(f, field):
    return utrim([f[i] * i for i in range(1, len(f))], field)


def ueval(f, x, field):
    x = field.coerce(x)
    acc = field.zero
    for c in reversed(f):
        acc = acc * x + c
    return acc


def ucompose_shift(f, s, field):
    """f(x + s) by Horner."""
    s = field.coerce(s)
    acc = ()
    for c in reversed(f):
        acc = uadd(umul(acc, (s, field.one), field), uconst(c, field), field)
    return acc


def usquarefree_part(f, field):
    """f / gcd(f, f'): the product of the distinct irreducible factors."""
    if not f:
        raise ValueError("squarefree part of the zero polynomial")
    g = ugcd(f, uderiv(f, field), field)
    return umonic(udiv_exact(f, g, field), field)


def usquarefree_decomposition(f, field):
    """Yun's algorithm: [(factor_i, i)] with f = lc * prod factor_i^i."""
    if not f:
        raise ValueError("decomposition of the zero polynomial")
    out = []
    fp = uderiv(f, field)
    a = ugcd(f, fp, field)
    b = udiv_exact(f, a, field)
    c = usub(udiv_exact(fp, a, field), uderiv(b, field), field)
    i = 1
    while udeg(b) > 0:
        p = ugcd(b, c, field)
        if udeg(p) > 0:
            out.append((p, i))
        b2 = udiv_exact(b, p, field)
        c = usub(udiv_exact(c, p, field), uderiv(b2, field), field)
        b = b2
        i += 1
    return out


def root_multiplicity(f, x, field):
    """Multiplicity of the field element x as a root of f."""
    m = 0
    lin = (-field.coerce(x), field.one)
    while f and field.is_zero(ueval(f, x, field)):
        f = udiv_exact(f, lin, field)
        m += 1
    return m


def sturm_chain(f, field):
    chain = [f, uderiv(f, field)]
    while chain[-1]:
        rem = udivmod(chain[-2], chain[-1], field)[1]
        if not rem:
            break
        chain.append(uneg(rem, field))
    return [p for p in chain if p]


def _sign_variations(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def sturm_count(chain, lo, hi, field):
    """Number of distinct real roots of chain[0] in (lo, hi]."""
    va = _sign_variations([field.sign(ueval(p, lo, field)) for p in chain])
    vb = _sign_variations([field.sign(ueval(p, hi, field)) for p in chain])
    return va - vb


def root_bound(f, field):
    """Rational B with all real roots of f in (-B, B) (Cauchy bound)."""
    if udeg(f) < 1:
        return Fraction(1)
    inv = field.invert(f[-1])
    b = Fraction(0)
    for c in f[:-1]:
        b = max(b, field.abs_upper(c * inv))
    return b + 1


def isolate_intervals(f, field):
    """Isolating rational intervals for the distinct real roots of f.

    f must be squarefree.  Returns a sorted list of (lo, hi) pairs of
    Fractions; each open interval contains exactly one root and neither
    endpoint is a root.
    """
    if udeg(f) < 1:
        return []
    chain = sturm_chain(f, field)
    bound = root_bound(f, field)
    lo, hi = -bound, bound
    while field.is_zero(ueval(f, lo, field)):
        lo -= 1
    while field.is_zero(ueval(f, hi, field)):
        hi += 1

    out = []
    stack = [(lo, hi, sturm_count(chain, lo, hi, field))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        while field.is_zero(ueval(f, mid, field)):
            mid = (a + mid) / 2
        nl = sturm_count(chain, a, mid, field)
        stack.append((a, mid, nl))
        stack.append((mid, b, n - nl))
    out.sort()
    return out


def resultant(f, g, field):
    """Resultant of f and g via the Euclidean remainder sequence."""
    if not f or not g:
        return field.zero
    m, n = udeg(f), udeg(g)
    if m == 0:
        return field.coerce(f[0] ** n)
    if n == 0:
        return field.coerce(g[0] ** m)
    if m < n:
        flip = field.one if (m * n) % 2 == 0 else -field.one
        return flip * resultant(g, f, field)
    r = udivmod(f, g, field)[1]
    if not r:
        return field.zero
    k = udeg(r)
    sign = field.one if (m * n) % 2 == 0 else -field.one
    return sign * (g[-1] ** (m - k)) * resultant(g, r, field)


def rational_roots(f):
    """All rational roots of a nonzero polynomial over QQ, with multiplicity 1+.

    Returns a sorted list of distinct Fractions.  Uses the rational root test
    on the primitive integer form.
    """
    from .fields import QQ

    f = utrim([Fraction(c) for c in f], QQ)
    if udeg(f) < 1:
        return []
    k = 0
    while QQ.is_zero(f[k]):
        k += 1
    roots = [Fraction(0)] if k > 0 else []
    g = f[k:]
    den = 1
    for c in g:
        den = den * c.denominator // _gcd_int(den, c.denominator)
    ints = [int(c * den) for c in g]
    content = 0
    for c in ints:
        content = _gcd_int(content, c)
    ints = [c // content for c in ints]
    lead, tail = ints[-1], ints[0]
    for p in _divisors(abs(tail)):
        for q in _divisors(abs(lead)):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if ueval(g, cand, QQ) == 0 and cand not in roots:
                    roots.append(cand)
    return sorted(roots)


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n):
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)

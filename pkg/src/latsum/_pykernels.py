"""Pure-Python hot kernels.

Reference implementation of the routines in ``_ckernels.pyx``; the two must
agree bit for bit.  Both work on scaled integers internally so that a single
Fraction normalisation happens per output value.
"""
from fractions import Fraction
from math import lcm

BACKEND = "python"


def _scaled(xs):
    den = 1
    for x in xs:
        den = lcm(den, x.denominator)
    return [x.numerator * (den // x.denominator) for x in xs], den


def series_mul(a, b, n):
    """First ``n`` coefficients of the product of two power series."""
    la = min(len(a), n)
    lb = min(len(b), n)
    if la == 0 or lb == 0:
        return [Fraction(0)] * n
    A, da = _scaled([Fraction(x) for x in a[:la]])
    B, db = _scaled([Fraction(x) for x in b[:lb]])
    den = da * db
    out = []
    for k in range(n):
        s = 0
        lo = k - lb + 1
        if lo < 0:
            lo = 0
        hi = k if k < la - 1 else la - 1
        for i in range(lo, hi + 1):
            s += A[i] * B[k - i]
        out.append(Fraction(s, den))
    return out


def linear_power(a, b, e, n):
    """First ``n`` coefficients of ``(a + b x)**e`` for an integer ``e >= 0``."""
    a = Fraction(a)
    b = Fraction(b)
    out = []
    binom = 1
    for k in range(n):
        if k > e:
            out.append(Fraction(0))
            continue
        out.append(binom * a ** (e - k) * b ** k)
        binom = binom * (e - k) // (k + 1)
    return out


def step_eval(terms, maxdeg, common, p, r):
    """Evaluate a prepared step polynomial at ``t = p / r`` (``r > 0``).

    ``terms`` holds ``(num, den, atoms)`` with ``atoms`` a tuple of
    ``(zeta, q, exponent)``; ``common`` is a common multiple of all ``den``.
    Returns the value as ``(numerator, denominator)``.
    """
    cache = {}
    total = 0
    for num, den, atoms in terms:
        val = num * (common // den)
        deg = 0
        for z, q, e in atoms:
            key = (z, q)
            x = cache.get(key)
            if x is None:
                x = (z * p) % (q * r)
                cache[key] = x
            val *= x ** e
            deg += e
        total += val * r ** (maxdeg - deg)
    return total, common * r ** maxdeg

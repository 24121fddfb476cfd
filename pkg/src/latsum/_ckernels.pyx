# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernels``; results are identical.

``series_mul`` switches to machine-word arithmetic when a bound on every
partial sum fits in 63 bits, and falls back to Python integers otherwise.
"""
from fractions import Fraction
from math import lcm

BACKEND = "compiled"

cdef long long _LIMIT = (1 << 62)


def _scaled(xs):
    den = 1
    for x in xs:
        den = lcm(den, x.denominator)
    return [x.numerator * (den // x.denominator) for x in xs], den


def series_mul(a, b, Py_ssize_t n):
    cdef Py_ssize_t la = min(len(a), n)
    cdef Py_ssize_t lb = min(len(b), n)
    cdef Py_ssize_t i, k, lo, hi
    cdef long long acc
    cdef long long[::1] CA, CB
    if la == 0 or lb == 0:
        return [Fraction(0)] * n
    A, da = _scaled([Fraction(x) for x in a[:la]])
    B, db = _scaled([Fraction(x) for x in b[:lb]])
    den = da * db
    ma = max(abs(x) for x in A)
    mb = max(abs(x) for x in B)
    out = []
    if ma < _LIMIT and mb < _LIMIT and ma * mb * min(la, lb) < _LIMIT:
        import array
        CA = array.array("q", A)
        CB = array.array("q", B)
        for k in range(n):
            acc = 0
            lo = k - lb + 1
            if lo < 0:
                lo = 0
            hi = k if k < la - 1 else la - 1
            for i in range(lo, hi + 1):
                acc += CA[i] * CB[k - i]
            out.append(Fraction(acc, den))
        return out
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


def linear_power(a, b, long e, Py_ssize_t n):
    cdef Py_ssize_t k
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


def step_eval(terms, long maxdeg, common, p, r):
    cdef dict cache = {}
    cdef long deg
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

"""Truncated power series with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .kernels import linear_power, series_mul

__all__ = [
    "bernoulli_number",
    "bernoulli_poly",
    "exp_series",
    "todd_series",
    "inv_linear_series",
    "linear_power",
    "series_mul",
]


@lru_cache(maxsize=None)
def _bernoulli_numbers(n: int) -> tuple:
    # B_1 = -1/2 convention, i.e. x / (e^x - 1) = sum B_k x^k / k!
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return tuple(B)


def bernoulli_number(n: int) -> Fraction:
    return _bernoulli_numbers(max(n, 1))[n]


@lru_cache(maxsize=None)
def bernoulli_poly(n: int) -> tuple:
    """Coefficients ``c_0..c_n`` of the Bernoulli polynomial ``B_n(t) = sum c_k t^k``."""
    if n < 0:
        raise ValueError("Bernoulli polynomials are indexed by n >= 0")
    B = _bernoulli_numbers(max(n, 1))
    return tuple(comb(n, k) * B[n - k] for k in range(n + 1))


def exp_series(c, n: int) -> list:
    """``exp(c x)`` to ``n`` terms."""
    c = Fraction(c)
    out = [Fraction(1)]
    for k in range(1, n):
        out.append(out[-1] * c / k)
    return out[:n]


def todd_series(b, n: int) -> list:
    """``(b x) / (exp(b x) - 1)`` to ``n`` terms."""
    b = Fraction(b)
    B = _bernoulli_numbers(max(n, 1))
    return [B[k] * b ** k / factorial(k) for k in range(n)]


def inv_linear_series(a, b, n: int) -> list:
    """``1 / (a + b x)`` to ``n`` terms, ``a != 0``."""
    a = Fraction(a)
    r = -Fraction(b) / a
    out = [1 / a]
    for _ in range(1, n):
        out.append(out[-1] * r)
    return out[:n]

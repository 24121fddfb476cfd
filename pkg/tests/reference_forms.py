"""Hand-coded closed forms for the square [0,4]^2, its four triangles and the
three-dimensional example cone.

Nothing here is computed by the library; the tests use these as golden
references.
"""
import math
from fractions import Fraction as F

from latsum.genfun import GenFun, MeroTerm, Polytope

L_VERTICAL = [(0, 1)]
Y = (0, 1)

# the square [0,4]^2 cut into four triangles
POLYTOPES = {
    "t1": Polytope(((4, 0), (F(5, 2), 4), (0, F(11, 3)))),
    "t2": Polytope(((0, 0), (4, 0), (0, F(11, 3)))),
    "t3": Polytope(((F(5, 2), 4), (4, 0), (4, 4))),
    "t4": Polytope(((F(5, 2), 4), (0, 4), (0, F(11, 3)))),
    "q": Polytope(((0, 0), (4, 0), (0, 4), (4, 4))),
}


def _t(c, a, w):
    return MeroTerm(F(c), a, (w,), (Y,))


# intermediate generating functions, L = R(0,1)
SQUARE_GENFUNS = {
    "t1": GenFun(2, (
        _t(1, (4, 0), (-1, F(8, 3))),
        _t(-1, (4, 0), (-1, F(11, 12))),
        _t(1, (3, F(8, 3)), (1, -F(8, 3))),
        _t(-1, (3, F(61, 15)), (1, F(2, 15))),
        _t(-1, (0, F(11, 3)), (1, -F(11, 12))),
        _t(1, (0, F(11, 3)), (1, F(2, 15))),
    )),
    "t2": GenFun(2, (
        _t(-1, (0, 0), (1, 0)),
        _t(-1, (4, 0), (-1, 0)),
        _t(1, (4, 0), (-1, F(11, 12))),
        _t(1, (0, F(11, 3)), (1, -F(11, 12))),
    )),
    "t3": GenFun(2, (
        _t(-1, (3, F(8, 3)), (1, -F(8, 3))),
        _t(1, (3, 4), (1, 0)),
        _t(-1, (4, 0), (-1, F(8, 3))),
        _t(1, (4, 4), (-1, 0)),
    )),
    "t4": GenFun(2, (
        _t(1, (2, 4), (-1, 0)),
        _t(-1, (2, F(59, 15)), (-1, -F(2, 15))),
        _t(1, (0, 4), (1, 0)),
        _t(-1, (0, F(11, 3)), (1, F(2, 15))),
    )),
    "q": GenFun(2, tuple(
        MeroTerm(F(sign), (k, b), (), (Y,)) for k in range(5) for sign, b in ((1, 4), (-1, 0))
    )),
}


def frac(x, q=1):
    """``{x}_q``."""
    x = F(x)
    return x - q * math.floor(x / q)


# Ehrhart quasi-polynomials, L = R(0,1), h = 1
SQUARE_QPS = {
    "t1": lambda t: F(21, 4) * t ** 2 - F(7, 8) * frac(4 * t) ** 2 - F(7, 10) * frac(-5 * t, 2)
    + F(7, 8) * frac(4 * t) + F(7, 20) * frac(-5 * t, 2) ** 2,
    "t2": lambda t: F(22, 3) * t ** 2 + F(11, 6) * t - F(11, 24) * frac(4 * t) ** 2 + F(11, 24) * frac(4 * t),
    "t3": lambda t: 3 * t ** 2 + (2 - 4 * frac(4 * t)) * t - F(1, 3) * frac(-5 * t, 2) ** 2
    + F(2, 3) * frac(-5 * t, 2) + F(4, 3) * frac(4 * t) ** 2 - F(4, 3) * frac(4 * t),
    "t4": lambda t: F(5, 12) * t ** 2 + F(1, 6) * t - F(1, 60) * frac(5 * t, 2) ** 2 + F(1, 30) * frac(5 * t, 2),
    "q": lambda t: 16 * t ** 2 + (4 - 4 * frac(4 * t)) * t,
}
SQUARE_QP_TEXT = {
    "t1": "21/4 t^2 - 7/8({4t}_1)^2 - 7/10{-5t}_2 + 7/8{4t}_1 + 7/20({-5t}_2)^2",
    "t2": "22/3 t^2 + 11/6 t - 11/24({4t}_1)^2 + 11/24{4t}_1",
    "t3": "3 t^2 + (2 - 4{4t}_1) t - 1/3({-5t}_2)^2 + 2/3{-5t}_2 + 4/3({4t}_1)^2 - 4/3{4t}_1",
    "t4": "5/12 t^2 + 1/6 t - 1/60({5t}_2)^2 + 1/30{5t}_2",
    "q": "16 t^2 + (4 - 4{4t}_1) t",
}
PERIODS = {"q": 1, "t1": 2}

# the simplicial cone used for the Brion-Vergne examples
EXAMPLE_CONE = ((-1, 0, 0), (-1, 2, 0), (-1, 0, 3))
EXAMPLE_L1 = [(0, 1, 1)]
EXAMPLE_L2 = [(1, 0, 0), (0, 1, 1)]

EXAMPLE_BV1 = [
    (1, ((-1, 0, 0), (-1, 2, 0), (0, 1, 1))),
    (-1, ((-1, 0, 0), (1, 0, -3), (0, 1, 1))),
    (1, ((-1, 2, 0), (-1, 0, 3), (0, -1, -1))),
]
EXAMPLE_BV2 = [
    (1, ((-1, 2, 0), (-1, 0, 0), (-5, 6, 6))),
    (-1, ((1, 0, -3), (-1, 0, 0), (-5, 6, 6))),
]


def short_formula_L1(s) -> GenFun:
    """Six-term formula for ``S^L(s + c)``, ``L = R(0,1,1)``."""
    a, b, c = (F(x) for x in s)

    def term(coeff, shifts, disc, cont):
        e = [a, b, c]
        for f, w in shifts:
            e = [x + f * y for x, y in zip(e, w)]
        return MeroTerm(F(coeff), tuple(e), tuple(disc), tuple(cont))

    w1, w2 = (0, F(2, 5), -F(3, 5)), (-1, 0, 3)
    return GenFun(3, (
        term(1, [(frac(3 * a - b + c), w1), (frac(a), w2)], [w1, w2], [(0, 1, 1)]),
        term(1, [(frac(a), (-1, 2, 0)), (frac(2 * a + b - c), (0, -F(2, 5), F(3, 5)))],
             [(-1, 2, 0), (0, -F(2, 5), F(3, 5))], [(0, 1, 1)]),
        term(-1, [(frac(3 * a - b + c), (0, 0, -1)), (frac(-a), (1, 0, -3))],
             [(0, 0, -1), (1, 0, -3)], [(0, -1, -1)]),
        term(1, [(frac(-b + c), (0, 0, -1)), (frac(-a), (1, 0, 0))],
             [(0, 0, -1), (1, 0, 0)], [(0, -1, -1)]),
        term(1, [(frac(-b + c), (0, 1, 0)), (frac(a), (-1, 0, 0))],
             [(0, 1, 0), (-1, 0, 0)], [(0, -1, -1)]),
        term(1, [(frac(a), (-1, 2, 0)), (frac(2 * a + b - c), (0, -1, 0))],
             [(-1, 2, 0), (0, -1, 0)], [(0, -1, -1)]),
    ))


def short_formula_L2(s) -> GenFun:
    """Two-term formula for ``S^L(s + c)``, ``L = R(1,0,0) + R(0,1,1)``."""
    a, b, c = (F(x) for x in s)
    f = frac(-b + c)
    cont = ((1, 0, 0), (-5, 6, 6))
    u, v = (-F(1, 2), 1, 0), (F(1, 3), 0, -1)
    return GenFun(3, (
        MeroTerm(F(-6), (a + f * u[0], b + f * u[1], c), (u,), cont),
        MeroTerm(F(6), (a + f * v[0], b, c - f), (v,), cont),
    ))

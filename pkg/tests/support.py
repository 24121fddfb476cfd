"""Helpers shared by the test modules."""
from fractions import Fraction as F

from latsum.genfun import laurent_along, moment_direction


def laurent_dict(f, xi, order):
    low, coeffs = laurent_along(f, xi, order)
    return {low + i: c for i, c in enumerate(coeffs) if c}


def same_series(f, g, order=6, xi=None):
    """Exact agreement of two generating functions along a common direction."""
    if xi is None:
        xi = moment_direction(f.edges() + g.edges(), f.dim)
    return laurent_dict(f, xi, order) == laurent_dict(g, xi, order)


def rand_rat(rng, lo=-6, hi=6, dens=(1, 2, 3, 4)):
    return F(rng.randint(lo * 4, hi * 4), 4) if dens is None else F(rng.randint(lo, hi), rng.choice(dens))


def times_one_minus_exp(f, edges):
    """``f * prod_w (1 - e^{<xi, w>})`` as a new generating function."""
    from latsum.genfun import GenFun

    terms = list(f.terms)
    for w in edges:
        terms = terms + [t.scaled(-1).translated(w) for t in terms]
    return GenFun(f.dim, tuple(terms))


def parallelepiped_points(gens):
    """Integer points ``sum lam_i w_i`` with ``0 <= lam_i < 1``, by scanning a box."""
    from itertools import product

    from latsum.exactlin import columns_to_matrix, solve

    d = len(gens)
    lo = [sum(min(0, g[i]) for g in gens) for i in range(d)]
    hi = [sum(max(0, g[i]) for g in gens) for i in range(d)]
    M = columns_to_matrix(gens)
    pts = []
    for x in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        lam = solve(M, x)
        if all(0 <= c < 1 for c in lam):
            pts.append(x)
    return pts


def exp_sum(points, d):
    from latsum.genfun import GenFun, MeroTerm

    return GenFun(d, tuple(MeroTerm(1, p) for p in points))

"""Brute-force intermediate sums by slicing and exact integration.

Deliberately naive and independent of the cone decomposition machinery: the
polytope is cut by every affine flat ``x + L`` through a lattice point, each
slice is triangulated and integrated exactly.  Only :mod:`latsum.exactlin`
is shared with the fast path.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Sequence

from .errors import DegenerateError, DimensionError, DomainError, UnboundedError
from .exactlin import (
    annihilator_lattice,
    affine_rank,
    det,
    dot,
    facets_from_vertices,
    inverse,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
    rat,
    rat_vec,
    solve,
    subspace_lattice,
    transpose,
    vsub,
)


def _vertices_of(p) -> list:
    verts = getattr(p, "vertices", p)
    return [rat_vec(v) for v in verts]


def vertices_from_facets(facets: Sequence) -> list:
    """Vertices of ``{x : <n, x> <= b}``; raises UnboundedError if not a polytope."""
    facets = [(rat_vec(n), rat(b)) for n, b in facets]
    if not facets:
        raise UnboundedError("no inequalities")
    d = len(facets[0][0])
    normals = [list(n) for n, _ in facets]
    if rank(normals) < d:
        raise UnboundedError("the inequalities leave a line free")
    for subset in combinations(range(len(facets)), d - 1):
        rows = [normals[i] for i in subset]
        if d > 1 and rank(rows) != d - 1:
            continue
        ns = nullspace(rows, d) if rows else nullspace([], d)
        for u in (ns[0], tuple(-x for x in ns[0])):
            if all(dot(n, u) <= 0 for n, _ in facets):
                raise UnboundedError("the inequalities define an unbounded set")
    pts = _enumerate_vertices([(n, b) for n, b in facets], d)
    if not pts:
        raise DimensionError("the inequalities are infeasible")
    return pts


# ---------------------------------------------------------------------------
# exact integration over simplices

def _complete_homogeneous(values: Sequence[Fraction], M: int) -> Fraction:
    # h_M via the recursion over the number of variables
    h = [Fraction(1)] + [Fraction(0)] * M
    for v in values:
        for m in range(1, M + 1):
            h[m] += v * h[m - 1]
    return h[M]


def simplex_integral(vertices: Sequence[Sequence], ell=None, M: int = 0, offset=0) -> Fraction:
    """``∫_Δ (offset + <ell, x>)^M dx`` over a full-dimensional simplex in ``R^k``."""
    verts = [rat_vec(v) for v in vertices]
    k = len(verts) - 1
    if k < 0 or any(len(v) != k for v in verts):
        raise DegenerateError("a k-simplex needs k+1 vertices in R^k")
    if k == 0:
        vol = Fraction(1)
    else:
        vol = abs(det([list(vsub(v, verts[0])) for v in verts[1:]])) / math.factorial(k)
        if vol == 0:
            raise DegenerateError("simplex vertices are affinely dependent")
    if M == 0:
        return vol
    ell = rat_vec(ell) if ell is not None else (Fraction(0),) * k
    values = [rat(offset) + dot(ell, v) for v in verts]
    return vol * Fraction(math.factorial(k) * math.factorial(M), math.factorial(M + k)) * \
        _complete_homogeneous(values, M)


# ---------------------------------------------------------------------------
# vertex enumeration and triangulation

def _enumerate_vertices(constraints: list, r: int) -> list:
    """Vertices of ``{u in R^r : <a, u> <= c}`` by brute force over tight subsets."""
    if r == 0:
        return [()] if all(c >= 0 for _, c in constraints) else []
    found = set()
    for subset in combinations(range(len(constraints)), r):
        A = [list(constraints[i][0]) for i in subset]
        if rank(A) != r:
            continue
        u = solve(A, [constraints[i][1] for i in subset])
        if all(dot(a, u) <= c for a, c in constraints):
            found.add(tuple(u))
    return sorted(found)


def triangulate(vertices: Sequence[Sequence], constraints: Sequence) -> list:
    """Fan triangulation from the lexicographically least vertex, recursively.

    ``constraints`` are the inequalities ``<a, u> <= c`` describing the
    polytope; faces are the vertex sets where some of them are tight.
    """
    verts = sorted(rat_vec(v) for v in vertices)
    dim = affine_rank(verts)
    return _fan(verts, dim, [(rat_vec(a), rat(c)) for a, c in constraints])


def _fan(verts: list, dim: int, constraints: list) -> list:
    if len(verts) == dim + 1:
        return [verts]
    apex = verts[0]
    faces = {}
    for a, c in constraints:
        if dot(a, apex) == c:
            continue
        face = tuple(v for v in verts if dot(a, v) == c)
        if face in faces or len(face) < dim:
            continue
        if affine_rank(list(face)) == dim - 1:
            faces[face] = None
    out = []
    for face in faces:
        for simplex in _fan(list(face), dim - 1, constraints):
            out.append([apex] + simplex)
    return out


def polytope_integral(p, ell=None, M: int = 0) -> Fraction:
    """``∫_p <ell, x>^M dx`` by triangulating a full-dimensional polytope."""
    verts = _vertices_of(p)
    d = len(verts[0])
    if affine_rank(verts) != d:
        raise DegenerateError("polytope is not full-dimensional")
    facets = facets_from_vertices(verts)
    total = Fraction(0)
    for simplex in triangulate(verts, facets):
        total += simplex_integral(simplex, ell, M)
    return total


# ---------------------------------------------------------------------------
# slicing

@dataclass(frozen=True)
class SliceDecomposition:
    """Projected lattice points hit by the polytope and the slice through each.

    Projected lattice points are identified with ``Z^k0`` through a basis of
    the saturated lattice ``L^perp ∩ Z^d``.  ``slices[i]`` is the vertex list,
    in ``L ∩ Z^d`` coordinates, of the slice over ``projected_points[i]``;
    ``offsets[i]`` and ``basis`` map those coordinates back:
    ``x = offsets[i] + sum u_j basis[j]``.
    """

    projected_points: tuple
    slices: tuple
    offsets: tuple
    basis: tuple
    constraints: tuple


class _Slicer:
    def __init__(self, vertices: list, L_basis: Sequence[Sequence]):
        self.vertices = vertices
        self.d = d = len(vertices[0])
        L = [rat_vec(v) for v in L_basis]
        if L and rank([list(v) for v in L]) != len(L):
            raise DimensionError("basis of L is linearly dependent")
        if any(len(v) != d for v in L):
            raise DimensionError("L lives in a different dimension")
        self.facets = facets_from_vertices(vertices)
        self.A = [tuple(Fraction(x) for x in row) for row in annihilator_lattice(L, d)] if len(L) < d else []
        self.B = [tuple(Fraction(x) for x in b) for b in subspace_lattice(L, d)]
        self.k0 = len(self.A)
        if self.k0:
            At = transpose(self.A)
            self.pinv = mat_mul(At, inverse(mat_mul(self.A, At)))

    def points(self) -> list:
        if not self.k0:
            return [()]
        images = [mat_vec(self.A, v) for v in self.vertices]
        ranges = []
        for i in range(self.k0):
            lo = min(img[i] for img in images)
            hi = max(img[i] for img in images)
            ranges.append(range(math.ceil(lo), math.floor(hi) + 1))
        return list(product(*ranges))

    def offset(self, y) -> tuple:
        if not self.k0:
            return (Fraction(0),) * self.d
        return mat_vec(self.pinv, [Fraction(v) for v in y])

    def constraints(self, x0) -> list:
        out = []
        for n, b in self.facets:
            a = tuple(dot(n, col) for col in self.B)
            out.append((a, b - dot(n, x0)))
        return out


def slice_polytope(p, L_basis: Sequence[Sequence], x: Sequence) -> tuple:
    """Slice ``p ∩ (x + L)`` for a point ``x`` of ``V``.

    Returns ``(vertices, constraints, x, basis)``: the slice is
    ``{x + sum u_j basis[j]}`` with ``u`` ranging over the polytope given by
    the vertices and constraints.  The basis is one of ``L ∩ Z^d``, so the
    standard Lebesgue measure in ``u`` is the lattice-normalised one.  An
    empty slice has no vertices.
    """
    s = _Slicer(_vertices_of(p), L_basis)
    x = rat_vec(x)
    if len(x) != s.d:
        raise DimensionError("point has the wrong dimension")
    cons = s.constraints(x)
    verts = _enumerate_vertices(cons, len(s.B))
    return verts, cons, x, tuple(s.B)


def slice_decomposition(p, L_basis: Sequence[Sequence]) -> SliceDecomposition:
    s = _Slicer(_vertices_of(p), L_basis)
    pts, slices, offsets, cons_all = [], [], [], []
    for y in s.points():
        x0 = s.offset(y)
        cons = s.constraints(x0)
        verts = _enumerate_vertices(cons, len(s.B))
        if verts:
            pts.append(tuple(y))
            slices.append(tuple(verts))
            offsets.append(x0)
            cons_all.append(tuple(cons))
    return SliceDecomposition(tuple(pts), tuple(slices), tuple(offsets), tuple(s.B), tuple(cons_all))


def _slice_integral(verts: list, cons: list, x0, basis, ell, M: int) -> Fraction:
    r = len(basis)
    if ell is None:
        ell = (Fraction(0),) * len(x0)
    c0 = dot(ell, x0)
    g = tuple(dot(ell, b) for b in basis)
    if r == 0:
        return c0 ** M if M else Fraction(1)
    if affine_rank(verts) < r:
        return Fraction(0)
    total = Fraction(0)
    for simplex in triangulate(verts, cons):
        total += simplex_integral(simplex, g, M, offset=c0)
    return total


def brute_intermediate_sum(p, L_basis: Sequence[Sequence], ell=None, M: int = 0, t=1) -> Fraction:
    """``S^L(t p, <ell, x>^M)`` by enumerating slices and integrating each."""
    t = rat(t)
    if t <= 0:
        raise DomainError("dilation factor must be positive")
    verts = [tuple(t * x for x in v) for v in _vertices_of(p)]
    if M and ell is None:
        raise DimensionError("a weight with M > 0 needs the linear form ell")
    ell = rat_vec(ell) if ell is not None else None
    dec = slice_decomposition(verts, L_basis)
    total = Fraction(0)
    for verts_u, cons, x0 in zip(dec.slices, dec.constraints, dec.offsets):
        total += _slice_integral(list(verts_u), list(cons), x0, dec.basis, ell, M)
    return total


def count_lattice_points(p, t=1) -> int:
    """``|t p ∩ Z^d|`` by scanning the bounding box."""
    t = rat(t)
    verts = [tuple(t * x for x in v) for v in _vertices_of(p)]
    facets = facets_from_vertices(verts)
    d = len(verts[0])
    ranges = [range(math.ceil(min(v[i] for v in verts)), math.floor(max(v[i] for v in verts)) + 1)
              for i in range(d)]
    return sum(1 for x in product(*ranges) if all(dot(n, x) <= b for n, b in facets))

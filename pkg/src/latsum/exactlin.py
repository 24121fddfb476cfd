"""Exact rational and integer linear algebra.

Vectors are tuples, matrices are lists of rows.  Entries are ``int`` or
:class:`fractions.Fraction`; nothing in here ever touches a float.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .errors import (
    DimensionError,
    RankError,
    SingularMatrixError,
    ZeroVectorError,
)

Rat = Fraction


# ---------------------------------------------------------------------------
# scalars and vectors

def rat(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused on purpose.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_rat(x) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(Fraction(x))


def rat_vec(v: Iterable) -> tuple:
    return tuple(rat(x) for x in v)


def int_vec(v: Iterable) -> tuple:
    out = []
    for x in v:
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError(f"{x} is not an integer")
        out.append(x.numerator)
    return tuple(out)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), 0)


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    return tuple(c * a for a in v)


def is_integral(v) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def common_denominator(entries: Iterable) -> int:
    den = 1
    for x in entries:
        den = lcm(den, Fraction(x).denominator)
    return den


def smallest_dilation(s: Sequence) -> int:
    """Smallest positive integer ``q`` with ``q * s`` integral."""
    return common_denominator(s)


def primitive(v: Sequence) -> tuple:
    """Primitive integer vector on the open ray through ``v``."""
    den = common_denominator(v)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ZeroVectorError("the zero vector has no primitive direction")
    return tuple(x // g for x in ints)


# ---------------------------------------------------------------------------
# matrices

def identity(n: int) -> list:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*A)]


def mat_mul(A, B) -> list:
    Bt = list(zip(*B))
    return [[dot(row, col) for col in Bt] for row in A]


def mat_vec(A, v) -> tuple:
    return tuple(dot(row, v) for row in A)


def columns_to_matrix(cols: Sequence[Sequence]) -> list:
    """Matrix whose columns are the given vectors."""
    return [list(row) for row in zip(*cols)]


def rref(A) -> tuple[list, list]:
    """Reduced row echelon form over Q.  Returns ``(R, pivot_columns)``."""
    R = [[Fraction(x) for x in row] for row in A]
    if not R:
        return R, []
    m, n = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def vectors_rank(vectors: Sequence[Sequence]) -> int:
    return rank([list(v) for v in vectors]) if vectors else 0


def det(A) -> Fraction:
    """Determinant by Gaussian elimination."""
    n = len(A)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in A):
        raise DimensionError("determinant of a non-square matrix")
    M = [[Fraction(x) for x in row] for row in A]
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            result = -result
        piv = M[c][c]
        result *= piv
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / piv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return result


def inverse(A) -> list:
    n = len(A)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in R]


def solve(A, b) -> tuple:
    """Unique solution of ``A x = b`` for square invertible ``A``."""
    n = len(A)
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return tuple(R[i][n] for i in range(n))


def coordinates_in_span(vectors: Sequence[Sequence], x: Sequence) -> Optional[tuple]:
    """Coefficients ``c`` with ``sum c_i vectors[i] == x``.

    The vectors must be linearly independent.  Returns ``None`` when ``x`` is
    not in their span.
    """
    k = len(vectors)
    if k == 0:
        return () if all(a == 0 for a in x) else None
    aug = [[vectors[j][i] for j in range(k)] + [x[i]] for i in range(len(x))]
    R, pivots = rref(aug)
    if k in pivots:
        return None
    if len(pivots) != k:
        raise RankError("spanning vectors are linearly dependent")
    return tuple(R[i][k] for i in range(k))


def nullspace(A, ncols: Optional[int] = None) -> list:
    """Rational basis of ``{x : A x = 0}``."""
    if not A:
        n = ncols or 0
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    n = len(A[0])
    R, pivots = rref(A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = -R[r][f]
        basis.append(tuple(x))
    return basis


def independent_rows(A) -> list:
    """A maximal linearly independent subset of the rows, in order."""
    kept = []
    for row in A:
        if vectors_rank(kept + [row]) > len(kept):
            kept.append(row)
    return kept


# ---------------------------------------------------------------------------
# integer lattices

def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _col_combine(M, i, j, a, b, c, e):
    """Columns (i, j) <- (a*col_i + b*col_j, c*col_i + e*col_j)."""
    for row in M:
        ci, cj = row[i], row[j]
        row[i] = a * ci + b * cj
        row[j] = c * ci + e * cj


def hnf(A) -> tuple[list, list]:
    """Column Hermite normal form.

    For an integer ``m x n`` matrix of full row rank returns ``(H, U)`` with
    ``U`` unimodular and ``A U = H``.  ``H`` is lower triangular in its first
    ``m`` columns with positive diagonal, ``0 <= H[i][j] < H[i][i]`` for
    ``j < i``, and zero in the remaining ``n - m`` columns.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    H = [[int(x) for x in row] for row in A]
    U = identity(n)
    if m > n:
        raise RankError("more rows than columns: cannot have full row rank")
    for i in range(m):
        for j in range(i + 1, n):
            b = H[i][j]
            if b == 0:
                continue
            a = H[i][i]
            g, x, y = xgcd(a, b)
            p, q = -b // g, a // g
            _col_combine(H, i, j, x, y, p, q)
            _col_combine(U, i, j, x, y, p, q)
        if H[i][i] == 0:
            raise RankError("matrix does not have full row rank")
        if H[i][i] < 0:
            for M in (H, U):
                for row in M:
                    row[i] = -row[i]
        piv = H[i][i]
        for j in range(i):
            f = H[i][j] // piv
            if f:
                for M in (H, U):
                    for row in M:
                        row[j] -= f * row[i]
    return H, U


def integer_kernel(A, ncols: int) -> list:
    """Basis of the lattice ``{x in Z^n : A x = 0}`` for a rational matrix ``A``.

    The returned lattice is saturated, i.e. it is all integer points of the
    rational kernel.
    """
    rows = independent_rows([list(r) for r in A])
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    ints = []
    for r in rows:
        den = common_denominator(r)
        ints.append([int(Fraction(x) * den) for x in r])
    _, U = hnf(ints)
    m = len(ints)
    return [tuple(U[i][j] for i in range(ncols)) for j in range(m, ncols)]


def subspace_lattice(L_basis: Sequence[Sequence], d: int) -> list:
    """Integer basis of ``span(L_basis) ∩ Z^d``."""
    if not L_basis:
        return []
    annihilator = nullspace([list(v) for v in L_basis], d)
    return integer_kernel([list(r) for r in annihilator], d)


def annihilator_lattice(L_basis: Sequence[Sequence], d: int) -> list:
    """Integer covectors spanning the lattice ``L^perp ∩ Z^d``.

    Because that lattice is saturated, ``x -> (<eta_i, x>)_i`` maps ``Z^d``
    onto ``Z^k``: these covectors are coordinates on the projected lattice.
    """
    return integer_kernel([list(v) for v in L_basis], d)


@dataclass(frozen=True)
class LatticeBasis:
    """A lattice given by basis columns ``numer / denom``.

    ``numer`` is stored row-major: ``numer[i][j]`` is coordinate ``i`` of basis
    vector ``j``.
    """

    numer: tuple
    denom: int = 1

    def __post_init__(self):
        g = self.denom
        for row in self.numer:
            for x in row:
                g = gcd(g, x)
        if g > 1:
            object.__setattr__(self, "numer", tuple(tuple(x // g for x in row) for row in self.numer))
            object.__setattr__(self, "denom", self.denom // g)
        if self.rank and vectors_rank(self.columns) != self.rank:
            raise RankError("lattice basis vectors are linearly dependent")

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "LatticeBasis":
        cols = [rat_vec(c) for c in cols]
        den = common_denominator(x for c in cols for x in c)
        if not cols:
            return cls((), den)
        numer = tuple(tuple(int(c[i] * den) for c in cols) for i in range(len(cols[0])))
        return cls(numer, den)

    @classmethod
    def standard(cls, d: int) -> "LatticeBasis":
        return cls(tuple(tuple(identity(d)[i]) for i in range(d)), 1)

    @property
    def ambient_dim(self) -> int:
        return len(self.numer)

    @property
    def rank(self) -> int:
        return len(self.numer[0]) if self.numer else 0

    @property
    def columns(self) -> list:
        return [tuple(Fraction(self.numer[i][j], self.denom) for i in range(self.ambient_dim))
                for j in range(self.rank)]

    def matrix(self) -> list:
        return [[Fraction(x, self.denom) for x in row] for row in self.numer]

    def coordinates(self, v) -> Optional[tuple]:
        return coordinates_in_span(self.columns, rat_vec(v))

    def contains(self, v) -> bool:
        c = self.coordinates(v)
        return c is not None and is_integral(c)

    def covolume(self) -> Fraction:
        """Volume of a fundamental cell (full-rank lattices only)."""
        if self.rank != self.ambient_dim:
            raise DimensionError("covolume needs a full-rank lattice")
        return abs(det(self.matrix()))


def lattice_from_generators(gens: Sequence[Sequence], dim: int) -> LatticeBasis:
    """Basis of the lattice generated by rational vectors spanning ``Q^dim``."""
    gens = [rat_vec(g) for g in gens]
    den = common_denominator(x for g in gens for x in g)
    A = [[int(g[i] * den) for g in gens] for i in range(dim)]
    H, _ = hnf(A)
    return LatticeBasis(tuple(tuple(row[:dim]) for row in H), den)


def projected_lattice(lam: LatticeBasis, L_basis: Sequence[Sequence],
                      complement_basis: Sequence[Sequence]) -> LatticeBasis:
    """Image of ``lam`` under projection onto ``span(complement)`` along ``L``.

    The result is expressed in coordinates with respect to
    ``complement_basis``.
    """
    d = lam.ambient_dim
    L_basis = [rat_vec(v) for v in L_basis]
    complement_basis = [rat_vec(v) for v in complement_basis]
    k = len(complement_basis)
    if k + len(L_basis) != d:
        raise DimensionError("L and its complement must have complementary dimensions")
    if k == 0:
        return LatticeBasis((), 1)
    chart = columns_to_matrix(complement_basis + L_basis)
    if det(chart) == 0:
        raise DimensionError("complement does not span a complement of L")
    inv = inverse(chart)
    images = [mat_vec(inv, b)[:k] for b in lam.columns]
    return lattice_from_generators(images, k)


def dual_basis(W) -> list:
    """Rows ``eta_i`` with ``<eta_i, w_j> = delta_ij`` where ``w_j`` are the columns of ``W``."""
    if any(len(row) != len(W) for row in W):
        raise SingularMatrixError("dual basis needs a square matrix")
    return inverse(W)


def dual_covectors(vectors: Sequence[Sequence]) -> list:
    """Dual basis of a list of basis vectors, as a list of covector tuples."""
    return [tuple(row) for row in dual_basis(columns_to_matrix(vectors))]


def lll_reduce(B, delta: Fraction = Fraction(3, 4)) -> list:
    """LLL-reduce the rows of an integer matrix of full row rank."""
    b = [[int(x) for x in row] for row in B]
    n = len(b)
    if n == 0:
        return []
    if rank(b) != n:
        raise RankError("LLL needs linearly independent rows")

    def gram_schmidt():
        bstar, mu, norms = [], [[Fraction(0)] * n for _ in range(n)], []
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = dot(b[i], bstar[j]) / norms[j]
                v = [a - mu[i][j] * c for a, c in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(dot(v, v))
        return mu, norms

    mu, norms = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                for i in range(j + 1):
                    mu[k][i] -= q * (mu[j][i] if i < j else 1)
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, norms = gram_schmidt()
            k = max(k - 1, 1)
    return b


# ---------------------------------------------------------------------------
# polytope facets

def affine_rank(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return vectors_rank([vsub(p, p0) for p in points[1:]])


def facets_from_vertices(vertices: Sequence[Sequence]) -> list:
    """Facet inequalities ``<n, x> <= b`` of a full-dimensional polytope.

    Brute force over ``d``-subsets of vertices; ``n`` is a primitive integer
    vector and ``b`` a Fraction.  Fine for the small inputs this library is
    meant for.
    """
    verts = [rat_vec(v) for v in vertices]
    d = len(verts[0])
    if affine_rank(verts) != d:
        raise DimensionError("polytope is not full-dimensional")
    facets = {}
    for subset in combinations(range(len(verts)), d):
        p0 = verts[subset[0]]
        diffs = [list(vsub(verts[i], p0)) for i in subset[1:]]
        if d > 1 and rank(diffs) != d - 1:
            continue
        ns = nullspace(diffs, d) if diffs else nullspace([], d)
        if len(ns) != 1:
            continue
        normal = primitive(ns[0])
        offset = dot(normal, p0)
        vals = [dot(normal, v) - offset for v in verts]
        if all(x <= 0 for x in vals):
            facets[normal] = offset
        elif all(x >= 0 for x in vals):
            facets[tuple(-x for x in normal)] = -offset
    return sorted(facets.items())

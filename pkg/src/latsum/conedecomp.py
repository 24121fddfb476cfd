"""Signed decompositions of simplicial cones.

All identities produced here hold between indicator functions modulo
indicators of polyhedra that contain a line (or, for the stellar
decomposition, modulo lower-dimensional cones).  Valuations that vanish on
such polyhedra, like every generating function in :mod:`latsum.genfun`, turn
them into exact equalities.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Sequence

from .errors import DimensionError, GenericityError, PatternError, RankError
from .exactlin import (
    columns_to_matrix,
    coordinates_in_span,
    det,
    inverse,
    lll_reduce,
    mat_vec,
    primitive,
    rat_vec,
    solve,
    vectors_rank,
    vsub,
)


@dataclass(frozen=True)
class SimplicialCone:
    """Cone spanned by linearly independent primitive integer generators."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        if not gens:
            raise DimensionError("a cone needs at least one generator")
        for g in gens:
            if tuple(primitive(g)) != g:
                raise ValueError(f"generator {g} is not a primitive integer vector")
        if vectors_rank(gens) != len(gens):
            raise RankError("cone generators are linearly dependent")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence]) -> "SimplicialCone":
        return cls(tuple(primitive(rat_vec(v)) for v in vectors))

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    @property
    def is_full(self) -> bool:
        return len(self.generators) == self.dim

    def index(self) -> int:
        """``|det|`` of the generator matrix: 1 exactly for unimodular cones."""
        if not self.is_full:
            raise DimensionError("index is defined for full-dimensional cones")
        return abs(int(det(columns_to_matrix(self.generators))))

    def is_unimodular(self) -> bool:
        return self.index() == 1

    def key(self):
        """Order-independent identity of the cone as a set."""
        return tuple(sorted(self.generators))


@dataclass(frozen=True)
class SignedAffineCone:
    sign: int
    vertex: tuple
    cone: SimplicialCone
    basis_subset: Optional[tuple] = None

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


@dataclass(frozen=True)
class SemiOpenCone:
    """``c(closed) + relint c(open)``."""

    closed_generators: tuple
    open_generators: tuple


def contains(k: SemiOpenCone, x: Sequence) -> bool:
    gens = list(k.closed_generators) + list(k.open_generators)
    coeffs = coordinates_in_span(gens, rat_vec(x))
    if coeffs is None:
        return False
    n = len(k.closed_generators)
    return all(c >= 0 for c in coeffs[:n]) and all(c > 0 for c in coeffs[n:])


def semiopen_partition(basis: Sequence[Sequence]) -> list:
    """The ``d + 1`` semi-open cones that partition ``V``.

    With ``u_{d+1} = -(u_1 + ... + u_d)``, cone ``i`` is
    ``c(u_1..u_{i-1}) + relint c(u_{i+1}..u_{d+1})``.
    """
    u = [tuple(Fraction(x) for x in v) for v in basis]
    d = len(u[0])
    if len(u) != d or vectors_rank(u) != d:
        raise RankError("semi-open partition needs a basis")
    u.append(tuple(-sum(v[i] for v in u) for i in range(d)))
    return [SemiOpenCone(tuple(u[:i]), tuple(u[i + 1:])) for i in range(d + 1)]


# ---------------------------------------------------------------------------
# primal Barvinok decomposition

def dim1_decompose(generators: Sequence[Sequence], v: Sequence) -> list:
    """One step of the extra-edge decomposition.

    ``v`` is expressed as ``sum lam_i w_i``; the cone on ``generators`` is
    written, modulo cones with lines, as a signed sum of cones in which one
    generator with ``lam_i != 0`` is replaced by ``+-v`` and some others are
    negated.  Positive coefficients are processed in decreasing index order,
    negative ones in increasing order.  Returns ``[(sign, generators), ...]``.
    """
    W = [tuple(g) for g in generators]
    d = len(W)
    lam = coordinates_in_span(W, rat_vec(v))
    if lam is None:
        raise DimensionError("extra vector is not in the span of the cone")
    pos = [i for i in range(d - 1, -1, -1) if lam[i] > 0]
    neg = [i for i in range(d) if lam[i] < 0]
    v = tuple(v)
    minus_v = tuple(-x for x in v)
    out = []
    for rank_i, i in enumerate(pos):
        gens = list(W)
        for j in pos[:rank_i]:
            gens[j] = tuple(-x for x in W[j])
        gens[i] = v
        out.append(((-1) ** rank_i, gens))
    r = len(neg)
    for rank_i, i in enumerate(neg):
        gens = list(W)
        for j in neg[rank_i + 1:]:
            gens[j] = tuple(-x for x in W[j])
        gens[i] = minus_v
        out.append(((-1) ** (r - 1 - rank_i), gens))
    return out


def _short_vector(W: list) -> tuple:
    """Integer vector ``v = sum lam_i w_i`` with ``max |lam_i| < 1``.

    Candidates come from an LLL-reduced basis of the lattice of coefficient
    vectors ``W^{-1} Z^d`` (scaled by ``|det W|``); the smallest in max-norm
    wins, ties broken lexicographically.  If no basis vector qualifies, small
    integer combinations of the reduced basis are searched; Minkowski's theorem
    guarantees one exists whenever the index exceeds 1.
    """
    d = len(W)
    M = columns_to_matrix(W)
    D = abs(det(M))
    adj = [[int(x * D) for x in row] for row in inverse(M)]
    # rows of adj^T generate D * W^{-1} Z^d
    basis = lll_reduce([[adj[i][j] for i in range(d)] for j in range(d)])

    def score(b):
        return (max(abs(x) for x in b), tuple(b))

    best = min((tuple(b) for b in basis), key=score)
    if max(abs(x) for x in best) >= D:
        found = None
        bound = 1
        while found is None:
            for coeffs in product(range(-bound, bound + 1), repeat=d):
                if not any(coeffs):
                    continue
                b = tuple(sum(c * basis[j][i] for j, c in enumerate(coeffs)) for i in range(d))
                if max(abs(x) for x in b) < D and (found is None or score(b) < score(found)):
                    found = b
            bound += 1
        best = found
    z = mat_vec(M, [Fraction(x, D) for x in best])
    return primitive(z)


def barvinok_decompose(cone: SimplicialCone, vertex: Optional[Sequence] = None) -> list:
    """Signed unimodular cones whose indicator sum equals the cone's modulo lines."""
    if not cone.is_full:
        raise DimensionError("Barvinok decomposition needs a full-dimensional cone")
    d = cone.dim
    vertex = rat_vec(vertex) if vertex is not None else tuple(Fraction(0) for _ in range(d))
    out = []
    stack = [(1, list(cone.generators))]
    while stack:
        sign, gens = stack.pop()
        if abs(det(columns_to_matrix(gens))) == 1:
            out.append(SignedAffineCone(sign, vertex, SimplicialCone(tuple(gens))))
            continue
        v = _short_vector(gens)
        children = dim1_decompose(gens, v)
        for s, g in reversed(children):
            stack.append((sign * s, g))
    return out


# ---------------------------------------------------------------------------
# decomposition with respect to a subspace

def _check_L(cone: SimplicialCone, L_basis) -> list:
    L = [rat_vec(b) for b in L_basis]
    if L and vectors_rank(L) != len(L):
        raise RankError("basis of L is linearly dependent")
    if L and len(L[0]) != cone.dim:
        raise DimensionError("L lives in a different dimension than the cone")
    return L


def enumerate_bases(cone: SimplicialCone, L_basis: Sequence[Sequence]) -> list:
    """All index sets ``sigma`` whose generators span a complement of ``L``."""
    L = _check_L(cone, L_basis)
    d = cone.dim
    k0 = d - len(L)
    W = cone.generators
    return [sigma for sigma in combinations(range(len(W)), k0)
            if det(columns_to_matrix([W[j] for j in sigma] + L)) != 0]


def quotient_coordinates(cone: SimplicialCone, L_basis, sigma: Sequence[int], x) -> tuple:
    """Coefficients ``a_j`` with ``x = sum_{j in sigma} a_j w_j  (mod L)``."""
    L = [rat_vec(b) for b in L_basis]
    W = cone.generators
    frame = [W[j] for j in sigma] + L
    coords = solve(columns_to_matrix(frame), rat_vec(x))
    return coords[:len(sigma)]


def _projection_into_L(cone: SimplicialCone, L, sigma, k: int) -> tuple:
    """``rho_sigma(w_k)``: projection onto ``L`` along the ``w_j``, ``j in sigma``."""
    W = cone.generators
    coords = quotient_coordinates(cone, L, sigma, W[k])
    proj = W[k]
    for c, j in zip(coords, sigma):
        proj = vsub(proj, tuple(c * x for x in W[j]))
    return proj


def generic_vector(cone: SimplicialCone, L_basis: Sequence[Sequence],
                   bases: Optional[list] = None, start: int = 0) -> tuple:
    """A lift to ``V`` of a vector ``a`` in ``V/L`` generic for ``(cone, L)``.

    ``a`` is taken on the moment curve ``(1, t, ..., t^{k0-1})`` in the
    coordinates of the first complementary basis, for ``t = start, start+1,
    ...``; the first ``t`` for which no Cramer coefficient vanishes wins.
    Because the coefficients are non-negative, ``a`` lies in the projection
    of the cone.
    """
    L = _check_L(cone, L_basis)
    d = cone.dim
    k0 = d - len(L)
    if bases is None:
        bases = enumerate_bases(cone, L)
    if k0 == 0:
        return tuple(Fraction(0) for _ in range(d))
    if not bases:
        raise DimensionError("no generator subset is complementary to L")
    W = cone.generators
    first = bases[0]
    t = start
    while True:
        coeffs = [Fraction(t) ** i for i in range(k0)]
        lift = tuple(sum(c * W[j][i] for c, j in zip(coeffs, first)) for i in range(d))
        if all(all(x != 0 for x in quotient_coordinates(cone, L, sigma, lift)) for sigma in bases):
            return lift
        t += 1


def brion_vergne_decompose(cone: SimplicialCone, L_basis: Sequence[Sequence],
                           a: Optional[Sequence] = None) -> list:
    """Signed cones, each with a face parallel to ``L``.

    For every complementary index set ``sigma`` the output cone has
    generators ``eps_j w_j`` (``j`` in ``sigma``, in order) followed by the
    primitive directions of ``rho_sigma(w_k)`` (``k`` not in ``sigma``), which
    span ``L``.  ``a`` is a lift of the generic vector; by default
    :func:`generic_vector` picks one.
    """
    if not cone.is_full:
        raise DimensionError("Brion-Vergne decomposition needs a full-dimensional cone")
    L = _check_L(cone, L_basis)
    d = cone.dim
    bases = enumerate_bases(cone, L)
    if a is None:
        a = generic_vector(cone, L, bases)
    a = rat_vec(a)
    W = cone.generators
    zero = tuple(Fraction(0) for _ in range(d))
    out = []
    for sigma in bases:
        coords = quotient_coordinates(cone, L, sigma, a)
        if any(c == 0 for c in coords):
            raise GenericityError(f"generic vector has a zero coefficient for basis {sigma}")
        signs = [1 if c > 0 else -1 for c in coords]
        gens = [tuple(s * x for x in W[j]) for s, j in zip(signs, sigma)]
        for k in range(len(W)):
            if k not in sigma:
                gens.append(primitive(_projection_into_L(cone, L, sigma, k)))
        eps = 1
        for s in signs:
            eps *= s
        out.append(SignedAffineCone(eps, zero, SimplicialCone(tuple(gens)), tuple(sigma)))
    return out


def stellar_decompose(cone: SimplicialCone, v: Sequence) -> list:
    """Stellar subdivision by ``v = w_1+..+w_r - (w_{s+1}+..+w_d)``.

    ``v`` must have coefficients in ``{-1, 0, 1}`` on the generators.  The
    result equals the cone modulo lower-dimensional cones: ``+c_i`` for
    coefficient 1 and ``-c_i`` for coefficient -1, where ``c_i`` replaces
    ``w_i`` by ``v``.
    """
    W = list(cone.generators)
    lam = coordinates_in_span(W, rat_vec(v))
    if lam is None or any(c not in (-1, 0, 1) for c in lam) or not any(lam):
        raise PatternError("extra vector must be a nonzero sum of generators with coefficients in {-1, 0, 1}")
    d = cone.dim
    zero = tuple(Fraction(0) for _ in range(d))
    vv = tuple(int(x) for x in v)
    out = []
    for i, c in enumerate(lam):
        if c == 0:
            continue
        gens = list(W)
        gens[i] = vv
        out.append(SignedAffineCone(int(c), zero, SimplicialCone.from_vectors(gens)))
    return out

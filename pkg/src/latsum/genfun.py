"""Intermediate generating functions of cones and polytopes.

A generating function is kept as a flat list of :class:`MeroTerm`, each of the
form

    coeff * e^{<xi, a>} / prod_w (1 - e^{<xi, w>}) / prod_v <xi, v>

with discrete edges ``w`` and continuous edges ``v``.  Such sums are only
evaluated through exact Laurent expansions along a line ``xi = tau * xi0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .conedecomp import SimplicialCone, barvinok_decompose, brion_vergne_decompose
from .errors import (
    DimensionError,
    IntegralityError,
    NonSimpleError,
    PoleCancellationError,
    RankError,
    SingularDirectionError,
)
from .exactlin import (
    LatticeBasis,
    columns_to_matrix,
    coordinates_in_span,
    det,
    dot,
    dual_covectors,
    facets_from_vertices,
    format_rat,
    inverse,
    is_integral,
    mat_vec,
    primitive,
    projected_lattice,
    rank,
    rat,
    rat_vec,
    solve,
    subspace_lattice,
    vectors_rank,
)
from .series import exp_series, series_mul, todd_series


# ---------------------------------------------------------------------------
# term types

@dataclass(frozen=True)
class MeroTerm:
    coeff: Fraction
    exponent: tuple
    discrete: tuple = ()
    continuous: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeff", rat(self.coeff))
        object.__setattr__(self, "exponent", rat_vec(self.exponent))
        object.__setattr__(self, "discrete", tuple(rat_vec(w) for w in self.discrete))
        object.__setattr__(self, "continuous", tuple(rat_vec(w) for w in self.continuous))
        for w in self.discrete + self.continuous:
            if len(w) != len(self.exponent):
                raise DimensionError("edge and exponent dimensions differ")
            if not any(w):
                raise DimensionError("edges of a term must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.exponent)

    def translated(self, s) -> "MeroTerm":
        """The term multiplied by ``e^{<xi, s>}``."""
        return MeroTerm(self.coeff, tuple(a + b for a, b in zip(self.exponent, rat_vec(s))),
                        self.discrete, self.continuous)

    def scaled(self, c) -> "MeroTerm":
        return MeroTerm(self.coeff * rat(c), self.exponent, self.discrete, self.continuous)

    def to_json(self) -> dict:
        return {
            "coeff": format_rat(self.coeff),
            "exponent": [format_rat(x) for x in self.exponent],
            "discrete": [[format_rat(x) for x in w] for w in self.discrete],
            "continuous": [[format_rat(x) for x in w] for w in self.continuous],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MeroTerm":
        return cls(rat(data["coeff"]), rat_vec(data["exponent"]),
                   tuple(rat_vec(w) for w in data.get("discrete", [])),
                   tuple(rat_vec(w) for w in data.get("continuous", [])))

    def render(self) -> str:
        def vec(v):
            return "(" + ",".join(format_rat(x) for x in v) + ")"

        parts = [f"e^<xi,{vec(self.exponent)}>"]
        parts += [f"(1 - e^<xi,{vec(w)}>)" for w in self.discrete]
        parts += [f"<xi,{vec(w)}>" for w in self.continuous]
        den = " ".join(parts[1:])
        body = parts[0] if not den else f"{parts[0]} / ({den})"
        return f"{format_rat(self.coeff)} * {body}"


@dataclass(frozen=True)
class ShortFormulaTerm:
    """One term ``gamma`` of the short formula, valid for every vertex ``s``.

    ``w`` is a basis of ``V``: ``w[:k0]`` are the discrete edges (rational
    vectors in general) and ``w[k0:]`` span ``L``.  ``eta[i]`` is the integral
    covector dual to ``w[i]`` for ``i < k0``.
    """

    alpha: int
    w: tuple
    eta: tuple
    k0: int

    @property
    def dim(self) -> int:
        return len(self.w)

    def shift(self, s) -> tuple:
        """``s^(gamma) = sum_{i<k0} {-<eta_i, s>} w_i``."""
        s = rat_vec(s)
        out = [Fraction(0)] * len(s)
        for eta, w in zip(self.eta, self.w[: self.k0]):
            x = -dot(eta, s)
            frac = x - math.floor(x)
            if frac:
                out = [o + frac * c for o, c in zip(out, w)]
        return tuple(out)

    def instantiate(self, s) -> MeroTerm:
        s = rat_vec(s)
        a = tuple(x + y for x, y in zip(s, self.shift(s)))
        return MeroTerm(Fraction(self.alpha), a, self.w[: self.k0], self.w[self.k0:])

    def check(self, L_basis: Sequence[Sequence] = ()) -> None:
        """Assert the structural invariants of the term."""
        d = self.dim
        if vectors_rank(self.w) != d:
            raise RankError("w is not a basis")
        for i, eta in enumerate(self.eta):
            if not is_integral(eta):
                raise IntegralityError(f"eta_{i} is not integral")
            for j, w in enumerate(self.w):
                if dot(eta, w) != (1 if i == j else 0):
                    raise IntegralityError(f"<eta_{i}, w_{j}> is not delta_ij")
        if L_basis:
            for w in self.w[self.k0:]:
                if coordinates_in_span([rat_vec(b) for b in L_basis], w) is None:
                    raise DimensionError("tail generator is not in L")

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "k0": self.k0,
            "w": [[format_rat(x) for x in v] for v in self.w],
            "eta": [[int(x) for x in v] for v in self.eta],
        }


@dataclass(frozen=True)
class GenFun:
    dim: int
    terms: tuple = ()

    def __post_init__(self):
        terms = tuple(self.terms)
        for t in terms:
            if t.dim != self.dim:
                raise DimensionError("term dimension does not match")
        object.__setattr__(self, "terms", terms)

    def __add__(self, other: "GenFun") -> "GenFun":
        if other.dim != self.dim:
            raise DimensionError("cannot add generating functions of different dimensions")
        return GenFun(self.dim, self.terms + other.terms)

    def __neg__(self) -> "GenFun":
        return GenFun(self.dim, tuple(t.scaled(-1) for t in self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def translated(self, s) -> "GenFun":
        return GenFun(self.dim, tuple(t.translated(s) for t in self.terms))

    def scaled(self, c) -> "GenFun":
        return GenFun(self.dim, tuple(t.scaled(c) for t in self.terms))

    def edges(self) -> list:
        seen = {}
        for t in self.terms:
            for w in t.discrete + t.continuous:
                seen[w] = None
        return list(seen)

    def to_json(self) -> dict:
        return {"dim": self.dim, "terms": [t.to_json() for t in self.terms]}

    @classmethod
    def from_json(cls, data: dict) -> "GenFun":
        return cls(int(data["dim"]), tuple(MeroTerm.from_json(t) for t in data["terms"]))

    def render(self) -> str:
        if not self.terms:
            return "0"
        return "\n".join(("+ " if i else "  ") + t.render() for i, t in enumerate(self.terms))


# ---------------------------------------------------------------------------
# polytopes

@dataclass(frozen=True)
class Polytope:
    """Full-dimensional polytope given by its vertices (facets optional)."""

    vertices: tuple
    facets: Optional[tuple] = None

    def __post_init__(self):
        verts = tuple(rat_vec(v) for v in self.vertices)
        if not verts:
            raise DimensionError("a polytope needs vertices")
        if len({len(v) for v in verts}) != 1:
            raise DimensionError("vertices have different dimensions")
        object.__setattr__(self, "vertices", verts)
        if self.facets is None:
            facets = facets_from_vertices(verts)
        else:
            facets = [(rat_vec(n), rat(b)) for n, b in self.facets]
        object.__setattr__(self, "facets", tuple(facets))
        d = self.dim
        for v in verts:
            tight = [n for n, b in self.facets if dot(n, v) == b]
            if any(dot(n, v) > b for n, b in self.facets):
                raise DimensionError(f"point {v} violates a facet inequality")
            if rank([list(n) for n in tight]) != d:
                raise DimensionError(f"point {tuple(map(format_rat, v))} is not a vertex")

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def dilate(self, t) -> "Polytope":
        t = rat(t)
        if t <= 0:
            raise DimensionError("dilation factor must be positive")
        return Polytope(tuple(tuple(t * x for x in v) for v in self.vertices),
                        tuple((n, t * b) for n, b in self.facets))

    def translate(self, s) -> "Polytope":
        s = rat_vec(s)
        return Polytope(tuple(tuple(x + y for x, y in zip(v, s)) for v in self.vertices),
                        tuple((n, b + dot(n, s)) for n, b in self.facets))

    def is_simple(self) -> bool:
        d = self.dim
        return all(sum(1 for n, b in self.facets if dot(n, v) == b) == d for v in self.vertices)

    def vertex_cones(self) -> list:
        """``[(s, cone of feasible directions at s), ...]`` for a simple polytope."""
        d = self.dim
        out = []
        for s in self.vertices:
            tight = [n for n, b in self.facets if dot(n, s) == b]
            if len(tight) != d:
                raise NonSimpleError(s, len(tight))
            A = [list(n) for n in tight]
            gens = []
            for i in range(d):
                rhs = [Fraction(0)] * d
                rhs[i] = Fraction(-1)
                gens.append(primitive(solve(A, rhs)))
            out.append((s, SimplicialCone(tuple(gens))))
        return out

    def to_json(self) -> dict:
        return {"vertices": [[format_rat(x) for x in v] for v in self.vertices]}


# ---------------------------------------------------------------------------
# building blocks

def _L_lattice(L_gens: Sequence[Sequence], d: int) -> list:
    return subspace_lattice([rat_vec(v) for v in L_gens], d)


def _lattice_volume(gens: Sequence[Sequence], lattice_basis: Sequence[Sequence]) -> Fraction:
    """Volume of the parallelepiped on ``gens`` in units of a basis of the same space."""
    if not gens:
        return Fraction(1)
    basis = [rat_vec(b) for b in lattice_basis]
    coords = []
    for g in gens:
        c = coordinates_in_span(basis, rat_vec(g))
        if c is None:
            raise DimensionError("generator is outside the lattice span")
        coords.append(c)
    return abs(det(columns_to_matrix(coords)))


def integral_genfun(s, generators: Sequence[Sequence], lattice: Optional[Sequence[Sequence]] = None) -> MeroTerm:
    """Integral of ``e^{<xi, x>}`` over ``s + cone(generators)``.

    ``lattice`` is a basis of ``L ∩ Lambda`` where ``L`` is the span of the
    generators; it defaults to ``L ∩ Z^d``.  The measure is the one for which a
    fundamental cell of that lattice has volume 1.
    """
    s = rat_vec(s)
    gens = [rat_vec(g) for g in generators]
    if gens and vectors_rank(gens) != len(gens):
        raise RankError("cone generators are linearly dependent")
    if lattice is None:
        lattice = _L_lattice(gens, len(s))
    vol = _lattice_volume(gens, lattice)
    return MeroTerm((-1) ** len(gens) * vol, s, (), tuple(gens))


def _in_lattice_coords(lattice: Optional[LatticeBasis], d: int):
    """Maps ``to_coords`` and ``from_coords`` for a full-rank lattice."""
    if lattice is None:
        return (lambda v: rat_vec(v)), (lambda v: rat_vec(v))
    if lattice.rank != d or lattice.ambient_dim != d:
        raise DimensionError("lattice must be full rank in V")
    B = lattice.matrix()
    Binv = inverse(B)
    return (lambda v: mat_vec(Binv, rat_vec(v))), (lambda v: mat_vec(B, rat_vec(v)))


def _unimodular_term(sign: int, s, gens) -> MeroTerm:
    """``S(s + c)`` for a unimodular cone with respect to ``Z^d``."""
    coords = solve(columns_to_matrix(gens), s)
    d = len(s)
    a = [Fraction(0)] * d
    for c, g in zip(coords, gens):
        k = math.ceil(c)
        if k:
            a = [x + k * y for x, y in zip(a, g)]
    return MeroTerm(Fraction(sign), tuple(a), tuple(tuple(Fraction(x) for x in g) for g in gens), ())


def discrete_genfun(s, cone: SimplicialCone, lattice: Optional[LatticeBasis] = None) -> GenFun:
    """Lattice point generating function of ``s + cone`` via Barvinok."""
    s = rat_vec(s)
    d = len(s)
    if not cone.is_full or cone.dim != d:
        raise DimensionError("discrete generating function needs a full-dimensional cone")
    to_c, from_c = _in_lattice_coords(lattice, d)
    local = SimplicialCone.from_vectors([to_c(g) for g in cone.generators])
    sl = to_c(s)
    terms = []
    for piece in barvinok_decompose(local):
        t = _unimodular_term(piece.sign, sl, piece.cone.generators)
        if lattice is not None:
            t = MeroTerm(t.coeff, from_c(t.exponent), tuple(from_c(w) for w in t.discrete), ())
        terms.append(t)
    return GenFun(d, tuple(terms))


def _face_parallel_terms(sign: int, comp: list, L_gens: list) -> list:
    """Short formula terms for ``S^L`` of a cone with a face parallel to ``L``.

    ``comp`` are the generators outside ``L`` and ``L_gens`` span ``L``; all
    with respect to the lattice ``Z^d``.
    """
    d = len((comp + L_gens)[0])
    k0 = len(comp)
    L_lat = _L_lattice(L_gens, d)
    vol = _lattice_volume(L_gens, L_lat)
    if vol.denominator != 1:
        raise IntegralityError("L-face volume is not an integer")
    base = sign * (-1) ** (d - k0) * int(vol)
    L_gens = [rat_vec(g) for g in L_gens]
    if k0 == 0:
        return [ShortFormulaTerm(base, tuple(L_gens), (), 0)]
    comp = [rat_vec(g) for g in comp]
    proj = projected_lattice(LatticeBasis.standard(d), L_gens, comp)
    B = proj.matrix()
    Binv = inverse(B)
    quotient_cone = SimplicialCone.from_vectors([tuple(Binv[i][j] for i in range(k0)) for j in range(k0)])
    out = []
    for piece in barvinok_decompose(quotient_cone):
        ws = []
        for u in piece.cone.generators:
            y = mat_vec(B, u)
            ws.append(tuple(sum(y[i] * comp[i][r] for i in range(k0)) for r in range(d)))
        eta = dual_covectors(ws + L_gens)[:k0]
        for e in eta:
            if not is_integral(e):
                raise IntegralityError("dual covector of a short formula term is not integral")
        out.append(ShortFormulaTerm(base * piece.sign, tuple(ws) + tuple(L_gens),
                                    tuple(tuple(int(x) for x in e) for e in eta), k0))
    return out


def parallel_face_genfun(s, cone: SimplicialCone, face: Sequence[int],
                         lattice: Optional[LatticeBasis] = None) -> GenFun:
    """``S^L(s + cone)`` where ``L`` is spanned by the generators indexed by ``face``."""
    s = rat_vec(s)
    d = len(s)
    if not cone.is_full or cone.dim != d:
        raise DimensionError("cone must be full-dimensional")
    face = sorted(set(face))
    if any(i < 0 or i >= d for i in face):
        raise DimensionError("face indices out of range")
    to_c, from_c = _in_lattice_coords(lattice, d)
    gens = [primitive(to_c(g)) for g in cone.generators]
    comp = [gens[i] for i in range(d) if i not in face]
    L_gens = [gens[i] for i in face]
    terms = _face_parallel_terms(1, comp, L_gens)
    out = []
    for t in terms:
        m = t.instantiate(to_c(s))
        out.append(MeroTerm(m.coeff, from_c(m.exponent), tuple(from_c(w) for w in m.discrete),
                            tuple(from_c(w) for w in m.continuous)))
    return GenFun(d, tuple(out))


def short_formula(cone: SimplicialCone, L_basis: Sequence[Sequence], a=None) -> list:
    """Short formula terms of ``S^L(s + cone)`` for a symbolic vertex ``s``."""
    if not cone.is_full:
        raise DimensionError("short formula needs a full-dimensional cone")
    L = [rat_vec(v) for v in L_basis]
    d = cone.dim
    k0 = d - len(L)
    out = []
    for piece in brion_vergne_decompose(cone, L, a):
        gens = list(piece.cone.generators)
        out.extend(_face_parallel_terms(piece.sign, gens[:k0], gens[k0:]))
    return out


def intermediate_genfun(s, cone: SimplicialCone, L_basis: Sequence[Sequence], symbolic: bool = False):
    """``S^L(s + cone)`` as a numeric :class:`GenFun`.

    With ``symbolic=True`` the list of ``(s, ShortFormulaTerm)`` pairs is
    returned instead.
    """
    s = rat_vec(s)
    terms = short_formula(cone, L_basis)
    if symbolic:
        return [(s, t) for t in terms]
    return GenFun(len(s), tuple(t.instantiate(s) for t in terms))


def polytope_genfun(p: Polytope, L_basis: Sequence[Sequence]) -> GenFun:
    """``S^L(p)`` by Brion's theorem: the sum over the vertex cones."""
    total = GenFun(p.dim)
    for s, cone in p.vertex_cones():
        total = total + intermediate_genfun(s, cone, L_basis)
    return total


def polytope_short_formula(p: Polytope, L_basis: Sequence[Sequence]) -> list:
    """``[(s, [ShortFormulaTerm, ...]), ...]`` over the vertices of ``p``."""
    return [(s, short_formula(cone, L_basis)) for s, cone in p.vertex_cones()]


# ---------------------------------------------------------------------------
# evaluation along a line

def moment_direction(edges: Sequence[Sequence], d: int, start: int = 1) -> tuple:
    """First ``(1, t, t^2, ...)``, ``t = start, start+1, ...``, not orthogonal to any edge."""
    edges = [rat_vec(w) for w in edges]
    t = start
    while True:
        xi = tuple(Fraction(t) ** i for i in range(d))
        if all(dot(xi, w) != 0 for w in edges):
            return xi
        t += 1


def _term_laurent(term: MeroTerm, xi0, n: int) -> tuple:
    """``(p, c)``: the term equals ``sum_k c[k] tau^(k - p)`` up to ``tau^(n - p - 1)``."""
    A = dot(xi0, term.exponent)
    Bs = [dot(xi0, w) for w in term.discrete]
    Cs = [dot(xi0, w) for w in term.continuous]
    if any(b == 0 for b in Bs) or any(c == 0 for c in Cs):
        raise SingularDirectionError("direction is orthogonal to an edge")
    series = exp_series(A, n)
    scalar = term.coeff * (-1) ** len(Bs)
    for b in Bs:
        series = series_mul(series, todd_series(b, n), n)
        scalar /= b
    for c in Cs:
        scalar /= c
    return len(Bs) + len(Cs), [scalar * x for x in series]


def laurent_along(f: GenFun, xi0, order: int) -> tuple:
    """Exact Laurent coefficients of ``f(tau * xi0)``.

    Returns ``(low, coeffs)`` with ``coeffs[k]`` the coefficient of
    ``tau^(low + k)``, for powers up to ``tau^order``.
    """
    xi0 = rat_vec(xi0)
    if len(xi0) != f.dim:
        raise DimensionError("direction has the wrong dimension")
    low = -max((len(t.discrete) + len(t.continuous) for t in f.terms), default=0)
    coeffs = [Fraction(0)] * (order - low + 1)
    for t in f.terms:
        p, c = _term_laurent(t, xi0, order + 1 + len(t.discrete) + len(t.continuous))
        for k, x in enumerate(c):
            power = k - p
            if power > order:
                break
            coeffs[power - low] += x
    return low, coeffs


def taylor_along(f: GenFun, xi0, order: int, regular: bool = True) -> list:
    """Coefficients of ``tau^0 .. tau^order`` of ``f(tau * xi0)``.

    With ``regular=True`` the negative powers must cancel, as they do for the
    generating function of a polytope; otherwise PoleCancellationError.
    """
    low, coeffs = laurent_along(f, xi0, order)
    poles = coeffs[: -low] if low < 0 else []
    if regular and any(poles):
        raise PoleCancellationError("negative powers of tau do not cancel")
    return coeffs[-low:] if low < 0 else coeffs


def taylor_series(f: GenFun, order: int, xi0=None, regular: bool = True) -> tuple:
    """``(xi0, coefficients)`` along a default non-singular direction."""
    if xi0 is None:
        xi0 = moment_direction(f.edges(), f.dim)
    return xi0, taylor_along(f, xi0, order, regular)

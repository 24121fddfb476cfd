"""Step polynomials and intermediate Ehrhart quasi-polynomials.

A step polynomial is a polynomial in atoms ``{zeta t}_q``, where
``{x}_q = x - q * floor(x / q)`` lies in ``[0, q)``.  The quasi-polynomial of
``S^L(t p, <ell, x>^M)`` is ``sum_m E_m(t) t^m`` with step-polynomial
coefficients ``E_m``, valid for every real ``t > 0``.
"""
from __future__ import annotations

import logging
import math
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional, Sequence

from .errors import DimensionError, DomainError, IntegralityError, PoleCancellationError
from .exactlin import dot, format_rat, rat, rat_vec, smallest_dilation
from .genfun import Polytope, moment_direction, polytope_short_formula
from .kernels import step_eval
from .series import bernoulli_poly, inv_linear_series, linear_power, series_mul

log = logging.getLogger(__name__)


def bernoulli(n: int) -> tuple:
    """Coefficients of ``B_n(t)``, constant term first."""
    return bernoulli_poly(n)


def frac_reduce(z: int, q_s: int) -> tuple:
    """``(zeta, q)`` with ``(1/q_s) {-z t}_{q_s} = (1/q) {zeta t}_q``.

    The pair is reduced by ``gcd(z, q_s)``; ``z = 0`` gives ``(0, 1)``, the
    zero atom.
    """
    z = rat(z)
    if z.denominator != 1:
        raise IntegralityError(f"{z} is not an integer")
    z = int(z)
    if q_s < 1:
        raise ValueError("q_s must be positive")
    if z == 0:
        return 0, 1
    g = math.gcd(z, q_s)
    return -z // g, q_s // g


# ---------------------------------------------------------------------------
# step polynomials

def _merge_atoms(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    exps = {}
    for z, q, e in a + b:
        exps[(z, q)] = exps.get((z, q), 0) + e
    return tuple((z, q, e) for (z, q), e in sorted(exps.items()))


@dataclass(frozen=True)
class StepMonomial:
    coeff: Fraction
    factors: tuple  # ((zeta, q, exponent), ...)


class StepPolynomial:
    """Finite sum of monomials ``c * prod ({zeta t}_q)^e``.

    Monomials are keyed by their sorted factor tuple; no fractional-part
    identities are applied, so two different-looking step polynomials can be
    equal as functions (see :meth:`is_identically_zero`).
    """

    __slots__ = ("_terms", "_prepared")

    def __init__(self, terms: Optional[dict] = None):
        self._terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}
        self._prepared = None

    @classmethod
    def constant(cls, c) -> "StepPolynomial":
        return cls({(): rat(c)})

    @classmethod
    def atom(cls, zeta: int, q: int, exponent: int = 1) -> "StepPolynomial":
        if q < 1:
            raise ValueError("atom modulus must be positive")
        if exponent == 0:
            return cls.constant(1)
        if zeta == 0:
            return cls()
        return cls({((int(zeta), int(q), int(exponent)),): Fraction(1)})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def monomials(self) -> list:
        return [StepMonomial(c, k) for k, c in sorted(self._terms.items(), key=_monomial_order)]

    def is_zero(self) -> bool:
        """Syntactic zero; see :meth:`is_identically_zero` for the functional test."""
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, StepPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"StepPolynomial({self.render()!r})"

    def __add__(self, other: "StepPolynomial") -> "StepPolynomial":
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return StepPolynomial(out)

    def __neg__(self) -> "StepPolynomial":
        return StepPolynomial({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "StepPolynomial") -> "StepPolynomial":
        return self + (-other)

    def scale(self, c) -> "StepPolynomial":
        c = rat(c)
        return StepPolynomial({k: c * v for k, v in self._terms.items()})

    def __mul__(self, other) -> "StepPolynomial":
        if not isinstance(other, StepPolynomial):
            return self.scale(other)
        out = {}
        for ka, va in self._terms.items():
            for kb, vb in other._terms.items():
                k = _merge_atoms(ka, kb)
                out[k] = out.get(k, 0) + va * vb
        return StepPolynomial(out)

    __rmul__ = __mul__

    def add_scaled(self, other: "StepPolynomial", c) -> None:
        """In-place ``self += c * other``."""
        c = rat(c)
        if not c:
            return
        for k, v in other._terms.items():
            x = self._terms.get(k, 0) + c * v
            if x:
                self._terms[k] = x
            else:
                self._terms.pop(k, None)
        self._prepared = None

    def degree(self) -> int:
        return max((sum(e for _, _, e in k) for k in self._terms), default=0)

    def atoms(self) -> list:
        return sorted({(z, q) for k in self._terms for z, q, _ in k})

    def period(self) -> int:
        return reduce(math.lcm, (q for _, q in self.atoms()), 1)

    def _prepare(self):
        if self._prepared is None:
            terms = tuple((v.numerator, v.denominator, k) for k, v in self._terms.items())
            common = reduce(math.lcm, (den for _, den, _ in terms), 1)
            self._prepared = (terms, self.degree(), common)
        return self._prepared

    def evaluate(self, t) -> Fraction:
        t = rat(t)
        terms, maxdeg, common = self._prepare()
        if not terms:
            return Fraction(0)
        num, den = step_eval(terms, maxdeg, common, t.numerator, t.denominator)
        return Fraction(num, den)

    def breakpoints(self) -> list:
        """Jump points in ``[0, period]``: between them every atom is affine."""
        P = self.period()
        pts = {Fraction(0), Fraction(P)}
        for z, q in self.atoms():
            n = abs(z) * P // q
            pts.update(Fraction(q * k, abs(z)) for k in range(n + 1))
        return sorted(pts)

    def is_identically_zero(self) -> bool:
        """Exact test that the step polynomial vanishes for every real ``t``.

        On each open interval between breakpoints the function is a
        polynomial of degree at most ``degree()``, so that many plus one
        sample points decide it; the breakpoints are checked separately.
        Periodicity in ``t`` with the period does the rest.
        """
        if not self._terms:
            return True
        D = self.degree()
        pts = self.breakpoints()
        for a in pts:
            if self.evaluate(a):
                return False
        for a, b in zip(pts, pts[1:]):
            for j in range(1, D + 2):
                if self.evaluate(a + (b - a) * j / (D + 2)):
                    return False
        return True

    def to_json(self) -> list:
        return [{"coeff": format_rat(m.coeff),
                 "atoms": [{"zeta": z, "q": q, "exp": e} for z, q, e in m.factors]}
                for m in self.monomials()]

    @classmethod
    def from_json(cls, data: list) -> "StepPolynomial":
        out = cls()
        for mono in data:
            p = cls.constant(rat(mono["coeff"]))
            for a in mono.get("atoms", []):
                p = p * cls.atom(int(a["zeta"]), int(a["q"]), int(a["exp"]))
            out = out + p
        return out

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for m in self.monomials():
            atoms = "".join(_render_atom(z, q, e) for z, q, e in m.factors)
            c = m.coeff
            mag = abs(c)
            if atoms:
                body = atoms if mag == 1 else f"{format_rat(mag)}{atoms}"
            else:
                body = format_rat(mag)
            pieces.append(("-" if c < 0 else "+", body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


def _monomial_order(item):
    key, _ = item
    return (sum(e for _, _, e in key), key)


def _render_atom(z: int, q: int, e: int) -> str:
    if z == 1:
        inner = "t"
    elif z == -1:
        inner = "-t"
    else:
        inner = f"{z}t"
    atom = f"{{{inner}}}_{q}"
    return f"({atom})^{e}" if e > 1 else atom


# ---------------------------------------------------------------------------
# quasi-polynomials

class QuasiPolynomial:
    """``sum_m E_m(t) t^m`` for real ``t > 0``."""

    def __init__(self, coeffs: Optional[dict] = None, degree: Optional[int] = None):
        self.coeffs = {int(m): p for m, p in (coeffs or {}).items() if p}
        top = max(self.coeffs, default=0)
        self.degree = top if degree is None else max(int(degree), top)

    def coefficient(self, m: int) -> StepPolynomial:
        return self.coeffs.get(m, StepPolynomial())

    @property
    def period(self) -> int:
        return qp_period(self)

    def evaluate(self, t) -> Fraction:
        return qp_eval(self, t)

    def __add__(self, other: "QuasiPolynomial") -> "QuasiPolynomial":
        return qp_add(self, other)

    def __neg__(self) -> "QuasiPolynomial":
        return QuasiPolynomial({m: -p for m, p in self.coeffs.items()}, self.degree)

    def __sub__(self, other: "QuasiPolynomial") -> "QuasiPolynomial":
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, QuasiPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs and self.degree == other.degree

    def __repr__(self):
        return f"QuasiPolynomial({self.render()!r})"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "period": self.period,
            "coeffs": {str(m): self.coeffs[m].to_json() for m in sorted(self.coeffs)},
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuasiPolynomial":
        coeffs = {int(m): StepPolynomial.from_json(v) for m, v in data.get("coeffs", {}).items()}
        return cls(coeffs, data.get("degree"))

    def render(self) -> str:
        """Human readable form such as ``16 t^2 + (4 - 4{4t}_1) t``."""
        parts = []
        for m in sorted(self.coeffs, reverse=True):
            p = self.coeffs[m]
            power = "" if m == 0 else (" t" if m == 1 else f" t^{m}")
            mons = p.monomials()
            if len(mons) == 1:
                text = p.render()
                neg = text.startswith("-")
                body = text[1:] if neg else text
                if m and body == "1":
                    body = ""
                    power = power.lstrip()
                parts.append(("-" if neg else "+", body + power))
            else:
                parts.append(("+", f"({p.render()}){power}"))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def qp_eval(qp: QuasiPolynomial, t) -> Fraction:
    t = rat(t)
    if t <= 0:
        raise DomainError("quasi-polynomials are evaluated at t > 0 only")
    return sum((p.evaluate(t) * t ** m for m, p in qp.coeffs.items()), Fraction(0))


def qp_add(a: QuasiPolynomial, b: QuasiPolynomial) -> QuasiPolynomial:
    coeffs = dict(a.coeffs)
    for m, p in b.coeffs.items():
        coeffs[m] = coeffs[m] + p if m in coeffs else p
    return QuasiPolynomial(coeffs, max(a.degree, b.degree))


def qp_sum(qps: Iterable[QuasiPolynomial]) -> QuasiPolynomial:
    return reduce(qp_add, qps, QuasiPolynomial())


def qp_period(qp: QuasiPolynomial) -> int:
    return reduce(math.lcm, (p.period() for p in qp.coeffs.values()), 1)


# ---------------------------------------------------------------------------
# the intermediate Ehrhart algorithm

def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _bernoulli_step(n: int, zeta: int, q: int) -> StepPolynomial:
    """``B_n({zeta t}_q / q)`` as a step polynomial."""
    coeffs = bernoulli_poly(n)
    if zeta == 0:
        return StepPolynomial.constant(coeffs[0])
    out = StepPolynomial()
    for k, c in enumerate(coeffs):
        if c:
            out.add_scaled(StepPolynomial.atom(zeta, q, k), c / Fraction(q) ** k)
    return out


def _vertex_contribution(s, terms, ell, eta_dir, M):
    """Coefficients and pole parts contributed by one vertex.

    Returns ``(coeffs, poles)``: ``coeffs[i]`` is the step polynomial
    multiplying ``t^i``; ``poles[(i, k)]`` the coefficient of ``eps^-k``.
    """
    d = len(s)
    q_s = smallest_dilation(s)
    coeffs = defaultdict(StepPolynomial)
    poles = defaultdict(StepPolynomial)
    fact_M = math.factorial(M)
    a_s = dot(ell, s)
    b_s = dot(eta_dir, s)
    for term in terms:
        k0 = term.k0
        atoms = [frac_reduce(q_s * dot(eta, s), q_s) for eta in term.eta]
        a = [dot(ell, w) for w in term.w]
        b = [dot(eta_dir, w) for w in term.w]
        zero = [j for j in range(d) if a[j] == 0]
        p = len(zero)
        N = p + 1
        den = [Fraction(1)]
        for j in zero:
            den[0] /= b[j]
        for j in range(d):
            if a[j] != 0:
                den = series_mul(den, inv_linear_series(a[j], b[j], N), N)
        scalar = fact_M * (-1) ** k0 * term.alpha
        pow_w = {}
        bern = {}
        for i in range(M + d + 1):
            s_pow = [x / math.factorial(i) for x in linear_power(a_s, b_s, i, N)]
            base = series_mul(den, s_pow, N)
            for n in _compositions(M - i + d, k0):
                series = base
                for j, nj in enumerate(n):
                    if (j, nj) not in pow_w:
                        pow_w[(j, nj)] = [x / math.factorial(nj) for x in linear_power(a[j], b[j], nj, N)]
                    series = series_mul(series, pow_w[(j, nj)], N)
                if not any(series):
                    continue
                step = StepPolynomial.constant(scalar)
                for j, nj in enumerate(n):
                    if (j, nj) not in bern:
                        bern[(j, nj)] = _bernoulli_step(nj, *atoms[j])
                    step = step * bern[(j, nj)]
                coeffs[i].add_scaled(step, series[p])
                for k in range(p):
                    poles[(i, p - k)].add_scaled(step, series[k])
    return dict(coeffs), dict(poles)


def _vertex_job(args):
    return _vertex_contribution(*args)


def ehrhart_qp(p: Polytope, L_basis: Sequence[Sequence], ell=None, M: int = 0,
               check_poles: bool = True, jobs: int = 1) -> QuasiPolynomial:
    """Quasi-polynomial ``t -> S^L(t p, <ell, x>^M)`` for real ``t > 0``."""
    d = p.dim
    L = [rat_vec(v) for v in L_basis]
    if M < 0:
        raise DimensionError("M must be non-negative")
    if ell is None:
        if M:
            raise DimensionError("a weight with M > 0 needs the linear form ell")
        ell = (0,) * d
    ell = rat_vec(ell)
    if len(ell) != d:
        raise DimensionError("ell has the wrong dimension")
    data = polytope_short_formula(p, L)
    edges = [w for _, terms in data for t in terms for w in t.w]
    eta_dir = moment_direction(edges, d)
    log.debug("deformation direction %s", eta_dir)
    tasks = [(s, terms, ell, eta_dir, M) for s, terms in data]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_vertex_job, tasks))
    else:
        parts = [_vertex_job(task) for task in tasks]
    coeffs = defaultdict(StepPolynomial)
    poles = defaultdict(StepPolynomial)
    for c, pl in parts:
        for i, step in c.items():
            coeffs[i].add_scaled(step, 1)
        for key, step in pl.items():
            poles[key].add_scaled(step, 1)
    if check_poles:
        for (i, k), step in sorted(poles.items()):
            if not step.is_identically_zero():
                raise PoleCancellationError(f"eps^-{k} part of the t^{i} coefficient does not cancel")
    return QuasiPolynomial(dict(coeffs), d + M)


def pole_parts(p: Polytope, L_basis: Sequence[Sequence], ell=None, M: int = 0) -> dict:
    """The raw ``eps``-pole step polynomials, keyed by ``(t-power, pole order)``.

    Useful for auditing the cancellation that :func:`ehrhart_qp` asserts.
    """
    d = p.dim
    ell = rat_vec(ell) if ell is not None else (Fraction(0),) * d
    data = polytope_short_formula(p, [rat_vec(v) for v in L_basis])
    edges = [w for _, terms in data for t in terms for w in t.w]
    eta_dir = moment_direction(edges, d)
    poles = defaultdict(StepPolynomial)
    for s, terms in data:
        _, pl = _vertex_contribution(s, terms, ell, eta_dir, M)
        for key, step in pl.items():
            poles[key].add_scaled(step, 1)
    return dict(poles)


def sample_points(n: int, upper=4) -> list:
    """``n`` deterministic rationals in ``(0, upper]`` with assorted denominators.

    The list opens with a few hand-picked values (small unit fractions,
    integers, quarter steps) before the generated ones.
    """
    upper = rat(upper)
    anchors = [Fraction(1, 7), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(1),
               Fraction(5, 4), Fraction(5, 2), Fraction(17, 5)]
    out = [t for t in anchors if t <= upper][:n]
    seen = set(out)
    k = 0
    dens = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)
    while len(out) < n:
        den = dens[k % len(dens)]
        num = (k * 37 + 11) % int(upper * den * 4) + 1
        t = Fraction(num, den * 4) if (k // len(dens)) % 2 else Fraction(num, den)
        if 0 < t <= upper and t not in seen:
            seen.add(t)
            out.append(t)
        k += 1
    return out

"""Exact intermediate sums over rational polytopes.

``S^L(p, h)`` sums, over the lattice points ``x`` of the projection of ``p``
along a rational subspace ``L``, the integral of ``h`` over the slice
``p ∩ (x + L)``.  It interpolates between counting lattice points
(``L = 0``) and integration (``L = V``).  This package computes its
generating function and its quasi-polynomial behaviour under real dilation.
"""
from .conedecomp import SimplicialCone, barvinok_decompose, brion_vergne_decompose
from .ehrhart import QuasiPolynomial, StepPolynomial, ehrhart_qp, qp_eval, qp_sum
from .errors import LatsumError
from .genfun import GenFun, MeroTerm, Polytope, ShortFormulaTerm, polytope_genfun, short_formula
from .oracle import brute_intermediate_sum

__version__ = "0.1.0"

__all__ = [
    "GenFun",
    "LatsumError",
    "MeroTerm",
    "Polytope",
    "QuasiPolynomial",
    "ShortFormulaTerm",
    "SimplicialCone",
    "StepPolynomial",
    "barvinok_decompose",
    "brion_vergne_decompose",
    "brute_intermediate_sum",
    "ehrhart_qp",
    "polytope_genfun",
    "qp_eval",
    "qp_sum",
    "short_formula",
]

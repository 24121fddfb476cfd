import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latsum.errors import DimensionError, DomainError, IntegralityError
from latsum.ehrhart import (
    QuasiPolynomial,
    StepPolynomial,
    bernoulli,
    ehrhart_qp,
    frac_reduce,
    pole_parts,
    qp_add,
    qp_eval,
    qp_period,
    qp_sum,
    sample_points,
)
from latsum.genfun import Polytope
from latsum.oracle import brute_intermediate_sum, polytope_integral
from reference_forms import L_VERTICAL, PERIODS, POLYTOPES, SQUARE_QPS, frac

INTERVAL = Polytope(((0,), (1,)))


@pytest.fixture(scope="module")
def square_qps():
    return {k: ehrhart_qp(p, L_VERTICAL) for k, p in POLYTOPES.items()}


def test_bernoulli_polynomials():
    assert bernoulli(0) == (1,)
    assert bernoulli(1) == (F(-1, 2), 1)
    assert bernoulli(2) == (F(1, 6), -1, 1)


def test_frac_reduce():
    assert frac_reduce(0, 3) == (0, 1)
    assert frac_reduce(-5, 2) == (5, 2)
    assert frac_reduce(4, 1) == (-4, 1)
    assert frac_reduce(6, 4) == (-3, 2)
    with pytest.raises(IntegralityError):
        frac_reduce(F(1, 2), 2)


@given(st.integers(-30, 30), st.integers(1, 12), st.fractions(min_value=0, max_value=20, max_denominator=15))
def test_frac_reduce_identity(z, qs, t):
    zeta, q = frac_reduce(z, qs)
    assert frac(-z * t, qs) / qs == (frac(zeta * t, q) / q if zeta else 0)


def test_step_polynomial_fractional_identity():
    x = StepPolynomial.atom(4, 1)
    y = StepPolynomial.atom(-4, 1)
    identity = x * x - y * y - (x - y)
    assert not identity.is_zero()
    assert identity.is_identically_zero()
    assert not (x - y).is_identically_zero()


def test_step_polynomial_evaluate_and_period():
    p = StepPolynomial.atom(-5, 2, 2).scale(F(7, 20)) + StepPolynomial.constant(1)
    assert p.evaluate(F(1, 2)) == F(7, 20) * frac(F(-5, 2), 2) ** 2 + 1
    assert p.period() == 2


@pytest.mark.parametrize("name", sorted(SQUARE_QPS))
def test_square_pieces_qp(square_qps, name):
    qp = square_qps[name]
    for t in sample_points(40):
        assert qp_eval(qp, t) == SQUARE_QPS[name](t)


def test_t2_coefficients(square_qps):
    qp = square_qps["t2"]
    assert qp.coefficient(2) == StepPolynomial.constant(F(22, 3))
    assert qp.coefficient(1) == StepPolynomial.constant(F(11, 6))


def test_square_render(square_qps):
    assert square_qps["q"].render() == "16 t^2 + (4 - 4{4t}_1) t"


def test_interval_real_dilation():
    qp = ehrhart_qp(INTERVAL, [])
    for t in sample_points(30):
        assert qp_eval(qp, t) == t + 1 - frac(t)
    assert qp.render() == "t + (1 - {t}_1)"


def test_qp_eval_examples(square_qps):
    assert qp_eval(square_qps["t2"], 1) == F(55, 6)
    assert qp_eval(square_qps["q"], 1) == 20
    assert qp_eval(square_qps["q"], F(1, 4)) == 2
    for bad in (0, -1, F(-1, 2)):
        with pytest.raises(DomainError):
            qp_eval(square_qps["q"], bad)


def test_qp_arithmetic(square_qps):
    q = square_qps["q"]
    assert q + QuasiPolynomial() == q
    diff = q - q
    assert all(qp_eval(diff, t) == 0 for t in sample_points(10))
    total = qp_sum(square_qps[k] for k in ("t1", "t2", "t3", "t4"))
    assert all(qp_eval(total, t) == qp_eval(q, t) for t in sample_points(40))
    assert qp_add(q, q).evaluate(1) == 40


def test_periods(square_qps):
    for name, period in PERIODS.items():
        assert qp_period(square_qps[name]) == period
    lattice_square = Polytope(((0, 0), (1, 0), (0, 1), (1, 1)))
    assert ehrhart_qp(lattice_square, [(1, 0), (0, 1)]).period == 1


def test_leading_coefficient_is_volume(square_qps):
    assert square_qps["q"].coefficient(2) == StepPolynomial.constant(16)
    assert square_qps["t2"].coefficient(2) == StepPolynomial.constant(F(22, 3))
    for qp in square_qps.values():
        assert max(qp.coeffs) <= 2


@pytest.mark.parametrize("name", sorted(POLYTOPES))
def test_periodicity(square_qps, name):
    qp = square_qps[name]
    P = qp.period
    rng = random.Random(7)
    for _ in range(50):
        t = F(rng.randint(1, 400), rng.randint(1, 60))
        for m, step in qp.coeffs.items():
            assert step.evaluate(t) == step.evaluate(t + P)


def test_pole_parts_cancel_with_pole_producing_form():
    p = POLYTOPES["t1"]
    poles = pole_parts(p, L_VERTICAL, ell=(1, 0))
    assert poles
    assert all(step.is_identically_zero() for step in poles.values())
    qp = ehrhart_qp(p, L_VERTICAL, ell=(1, 0))
    assert all(qp_eval(qp, t) == SQUARE_QPS["t1"](t) for t in sample_points(10))


def test_integration_specialisation():
    p = POLYTOPES["t4"]
    V = [(1, 0), (0, 1)]
    ell = (1, 2)
    for M in (0, 1, 2):
        qp = ehrhart_qp(p, V, ell, M)
        vol = polytope_integral(p, ell, M)
        for t in (F(1, 3), 1, F(5, 2)):
            assert qp_eval(qp, t) == t ** (2 + M) * vol


@pytest.mark.parametrize("M", [0, 1, 2])
def test_weighted_against_oracle(M):
    p = POLYTOPES["t3"]
    qp = ehrhart_qp(p, L_VERTICAL, (2, -1), M)
    for t in (F(1, 7), F(2, 3), F(5, 4), 2):
        assert qp_eval(qp, t) == brute_intermediate_sum(p, L_VERTICAL, (2, -1), M, t)


def test_weight_needs_linear_form():
    with pytest.raises(DimensionError):
        ehrhart_qp(INTERVAL, [], None, 2)


def test_parallel_jobs_same_result(square_qps):
    assert ehrhart_qp(POLYTOPES["t1"], L_VERTICAL, jobs=2) == square_qps["t1"]


def test_json_round_trip(square_qps):
    for qp in square_qps.values():
        data = json.loads(json.dumps(qp.to_json()))
        assert QuasiPolynomial.from_json(data) == qp
        assert data["period"] == qp.period

import math

import numpy as np
import pytest

from tails.axioms import check_tail_axioms
from tails.epsilon import EpsilonCondition, min_T_lower, solve_epsilon_lower, solve_epsilon_upper
from tails.factory import TailFactory
from tails.families import CustomTail, ExponentialTail, PolynomialTail, StretchedExponentialTail
from tails.inverse import condition_value, tail_inverse
from utils.errors import InfeasibleError


def test_eval_examples(exp_tail, poly2_tail):
    assert exp_tail.eval(0.0) == 1.0
    assert exp_tail.eval(math.log(2)) == pytest.approx(0.5, rel=1e-15)
    assert poly2_tail.eval(2.0) == pytest.approx(0.25, rel=1e-15)


def test_eval_rejects_negative_arguments(exp_tail):
    with pytest.raises(ValueError):
        exp_tail.eval(-0.1)
    with pytest.raises(ValueError):
        exp_tail.eval(np.array([0.0, -1.0]))


def test_eval_is_vectorised(exp_tail):
    u = np.array([0.0, 1.0, 2.0])
    assert np.allclose(exp_tail.eval(u), np.exp(-u))
    assert np.allclose(exp_tail.deriv(u), -np.exp(-u))


@pytest.mark.parametrize("tail", [ExponentialTail(), PolynomialTail(1.0), PolynomialTail(2.0),
                                  StretchedExponentialTail(0.5), StretchedExponentialTail(2.0),
                                  StretchedExponentialTail(3.0)])
def test_builtin_normalisation(tail):
    assert tail.value_at_zero == pytest.approx(1.0, abs=1e-14)
    assert tail.slope_at_zero == pytest.approx(-1.0, abs=1e-12)


def test_stretched_alpha_two_closed_form(stretched2_tail):
    u = np.linspace(0.0, 5.0, 11)
    assert np.allclose(stretched2_tail.eval(u), np.exp(-u - u * u / 2.0), rtol=1e-12)
    assert stretched2_tail.beta == pytest.approx(2.0 / math.e, rel=1e-6)


def test_inverse_examples(exp_tail, poly2_tail):
    assert tail_inverse(exp_tail, 0.5) == pytest.approx(math.log(2), rel=1e-10)
    assert tail_inverse(exp_tail, math.exp(-3.0)) == pytest.approx(3.0, rel=1e-10)
    assert tail_inverse(exp_tail, 1.0) == 0.0
    assert tail_inverse(poly2_tail, 1.0) == 0.0


@pytest.mark.parametrize("tail", [ExponentialTail(), PolynomialTail(2.0), StretchedExponentialTail(2.0)])
def test_inverse_round_trip(tail):
    for u in np.concatenate([[0.0], np.geomspace(1e-3, 20.0, 40)]):
        back = tail_inverse(tail, tail.eval(u))
        assert back == pytest.approx(u, rel=1e-8, abs=1e-12)


@pytest.mark.parametrize("tail", [ExponentialTail(), PolynomialTail(3.0), StretchedExponentialTail(1.5)])
def test_bisection_matches_closed_form(tail):
    for eps in (0.9, 0.3, 1e-3, 1e-8):
        assert tail_inverse(tail, eps) == pytest.approx(tail.inverse_exact(eps), rel=1e-8)


def test_inverse_domain(exp_tail):
    with pytest.raises(ValueError):
        tail_inverse(exp_tail, 0.0)
    with pytest.raises(ValueError):
        tail_inverse(exp_tail, 1.5)


@pytest.mark.parametrize("tail", [ExponentialTail(), PolynomialTail(2.0), StretchedExponentialTail(2.0),
                                  StretchedExponentialTail(0.5)])
def test_builtin_tails_pass_axioms(tail):
    report = check_tail_axioms(tail)
    assert report.passed, report.failures()
    assert report.worst_violation <= 1e-9


def test_unshifted_gaussian_fails_endpoint_slope():
    phi = CustomTail(lambda u: np.exp(-u * u), lambda u: -2.0 * u * np.exp(-u * u), beta=2.0, name="exp(-u^2)")
    report = check_tail_axioms(phi)
    assert not report.passed
    assert "endpoint_slope" in report.failures()
    assert report.get("endpoint_slope").worst_violation == pytest.approx(0.5)


def test_understated_beta_fails_smoothness():
    phi = CustomTail(lambda u: np.exp(-u), lambda u: -np.exp(-u), beta=0.5, name="exp-wrong-beta")
    assert "beta_smooth" in check_tail_axioms(phi).failures()


def test_solve_epsilon_upper_example(exp_tail):
    eps = solve_epsilon_upper(exp_tail, EpsilonCondition(gamma=0.1, eta=0.5, T=1000))
    assert eps == pytest.approx(0.296, abs=2e-3)
    assert condition_value(exp_tail, eps) >= 5.0 * (1 - 1e-9)
    assert condition_value(exp_tail, eps) == pytest.approx(5.0, rel=1e-5)


def test_solve_epsilon_upper_cap(exp_tail):
    gamma = math.sqrt(math.log(2) ** 2 / 0.5 / 0.5)
    eps = solve_epsilon_upper(exp_tail, EpsilonCondition(gamma=gamma, eta=0.5, T=1))
    assert eps == 0.5


def test_solve_epsilon_upper_polynomial_matches_scan(poly2_tail):
    eps = solve_epsilon_upper(poly2_tail, EpsilonCondition(gamma=0.1, eta=0.5, T=1000))
    grid = np.geomspace(1e-6, 0.5, 200001)
    g = poly2_tail.inverse_exact(grid) ** 2 / grid
    scan = grid[g >= 5.0].max()
    assert eps == pytest.approx(scan, rel=1e-3)


def test_solve_epsilon_lower_threshold(exp_tail):
    cap = 1.0 / 256.0
    threshold = condition_value(exp_tail, cap)
    assert threshold == pytest.approx(math.log(256) ** 2 * 256, rel=1e-10)
    T = math.ceil(threshold)
    eps = solve_epsilon_lower(exp_tail, EpsilonCondition(gamma=1.0, eta=1.0, T=T, side="lower"))
    assert eps == cap


def test_solve_epsilon_lower_infeasible_reports_min_T(exp_tail):
    T = math.ceil(condition_value(exp_tail, 1.0 / 256.0))
    with pytest.raises(InfeasibleError) as info:
        solve_epsilon_lower(exp_tail, EpsilonCondition(gamma=1.0, eta=1.0, T=T // 2, side="lower"))
    assert info.value.min_T == min_T_lower(exp_tail, 1.0, 1.0, 1.0 / 256.0)
    assert info.value.min_T == T


def test_solve_epsilon_lower_tightest(exp_tail):
    cond = EpsilonCondition(gamma=1.0, eta=1.0, T=20000, side="lower")
    tight = solve_epsilon_lower(exp_tail, cond, tightest=True)
    assert tight < 1.0 / 256.0
    assert condition_value(exp_tail, tight) <= 20000 * (1 + 1e-9)
    assert condition_value(exp_tail, tight) == pytest.approx(20000, rel=1e-4)


def test_epsilon_condition_validation():
    with pytest.raises(ValueError):
        EpsilonCondition(gamma=0.0, eta=0.5, T=10)
    with pytest.raises(ValueError):
        EpsilonCondition(gamma=0.1, eta=0.5, T=0)
    with pytest.raises(ValueError):
        EpsilonCondition(gamma=0.1, eta=0.5, T=10, side="middle")


def test_factory():
    assert isinstance(TailFactory.create_tail({"family": "exponential"}), ExponentialTail)
    poly = TailFactory.create_tail({"family": "polynomial", "alpha": 2})
    assert poly.beta == pytest.approx(1.5)
    with pytest.raises(ValueError):
        TailFactory.create_tail({"family": "polynomial"})
    with pytest.raises(ValueError):
        TailFactory.create_tail({"family": "gaussian"})
    with pytest.raises(ValueError):
        TailFactory.create_tail({"family": "exponential", "beta": 0.5})
    assert set(TailFactory.get_available_families()) == {"exponential", "polynomial", "stretched_exponential"}


@pytest.mark.parametrize("tail", [ExponentialTail(), PolynomialTail(2.0), StretchedExponentialTail(2.0)],
                         ids=lambda t: t.describe())
def test_condition_value_strictly_decreasing(tail):
    eps = np.geomspace(1e-12, 0.999 * tail.value_at_zero, 200)
    g = np.array([condition_value(tail, e) for e in eps])
    assert np.all(np.isfinite(g)) and np.all(g > 0)
    assert np.all(np.diff(g) < 0)

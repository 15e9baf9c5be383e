import math

import numpy as np
import pytest

from losses.extensions import make_linear_extension, make_quadratic_extension
from losses.factory import LossFactory
from losses.membership import check_loss_class
from losses.standard import make_hinge, make_logistic, make_squared_hinge
from tails.families import CustomTail, ExponentialTail, PolynomialTail, StretchedExponentialTail
from utils.errors import AxiomError


def test_quadratic_extension_examples(quad_ext, exp_tail):
    assert quad_ext.eval(-1.0) == pytest.approx(2.5)
    assert quad_ext.eval(0.0) == exp_tail.value_at_zero
    assert quad_ext.deriv(0.0) == exp_tail.slope_at_zero
    assert quad_ext.eval(2.0) == pytest.approx(math.exp(-2.0), rel=1e-15)
    assert quad_ext.beta == exp_tail.beta


def test_linear_extension_examples(lin_ext):
    assert lin_ext.eval(-2.0) == pytest.approx(3.0)
    assert lin_ext.eval(0.0) == 1.0
    assert lin_ext.eval(math.log(2)) == pytest.approx(0.5, rel=1e-15)
    u = np.linspace(-10, 10, 201)
    assert np.all(np.abs(lin_ext.deriv(u)) <= 1.0)


@pytest.mark.parametrize("tail", [ExponentialTail(), PolynomialTail(2.0), StretchedExponentialTail(2.0)],
                         ids=lambda t: t.describe())
def test_extension_growth_far_left(tail):
    x = -1e3
    quad = make_quadratic_extension(tail)
    lin = make_linear_extension(tail)
    assert 1.0 <= quad.eval(x) / (0.5 * quad.beta * x * x) <= 1.01
    assert 1.0 <= lin.eval(x) / (abs(tail.slope_at_zero) * abs(x)) <= 1.01
    assert quad.eval(x) / lin.eval(x) > 100.0


def test_logistic_examples(logistic):
    assert logistic.eval(0.0) == pytest.approx(math.log(2), rel=1e-15)
    assert logistic.deriv(0.0) == pytest.approx(-0.5)
    assert logistic.eval(5.0) <= math.exp(-5.0)
    assert logistic.max_step() == pytest.approx(2.0)


def test_scalar_in_scalar_out(logistic):
    assert isinstance(logistic.eval(1.0), float)
    assert logistic.eval(np.array([0.0, 1.0])).shape == (2,)


def test_grad_bound_gap_nonpositive(quad_ext):
    u = np.linspace(-10, 30, 1001)
    assert np.all(quad_ext.grad_bound_gap(u) <= 1e-12)


@pytest.mark.parametrize("tail", [ExponentialTail(), PolynomialTail(2.0), StretchedExponentialTail(2.0)])
@pytest.mark.parametrize("make", [make_quadratic_extension, make_linear_extension])
def test_extensions_are_class_members(tail, make):
    report = check_loss_class(make(tail), tail)
    assert report.passed, report.failures()
    assert report.worst_violation <= 1e-9


def test_logistic_member_for_exponential_tail(exp_tail, logistic):
    report = check_loss_class(logistic, exp_tail)
    assert report.passed, report.failures()


def test_hinge_fails_smoothness_at_one(exp_tail):
    report = check_loss_class(make_hinge(), exp_tail)
    assert not report.passed
    assert "beta_smooth" in report.failures()
    assert report.get("beta_smooth").at == pytest.approx(1.0, abs=0.05)


def test_squared_hinge_is_not_strictly_decreasing(exp_tail):
    report = check_loss_class(make_squared_hinge(), exp_tail)
    assert "strictly_decreasing" in report.failures()


def test_membership_report_lists_checks(exp_tail, quad_ext):
    names = [c.name for c in check_loss_class(quad_ext, exp_tail).checks]
    assert names == ["nonnegative", "convex", "beta_smooth", "strictly_decreasing", "dominated_by_tail",
                     "self_bounded_gradient", "pair_inequality", "finite_difference"]


def test_extension_requires_certified_tail():
    bad = CustomTail(lambda u: np.exp(-u * u), lambda u: -2.0 * u * np.exp(-u * u), beta=2.0)
    with pytest.raises(AxiomError):
        make_quadratic_extension(bad)


def test_factory(exp_tail):
    assert LossFactory.create_loss("quadratic_extension", exp_tail).kind == "quadratic_extension"
    assert LossFactory.create_loss("logistic").beta == pytest.approx(0.25)
    assert LossFactory.create_loss("hinge").describe() == "custom(hinge)"
    with pytest.raises(ValueError):
        LossFactory.create_loss("linear_extension")
    with pytest.raises(ValueError):
        LossFactory.create_loss("probit", exp_tail)

import math

import numpy as np
import pytest

from bounds import BoundReport
from bounds.lemmas import (norm_bound, norm_report, opt_error_bound, opt_error_report, reference_point,
                           sgd_empirical_bound, sgd_empirical_report, sgd_regret_bound,
                           sgd_regret_delivered_bound)
from bounds.lower import lower_bound_bigT, lower_bound_smallT, lower_risk_bound
from bounds.upper import rademacher_gap_bound, upper_risk_bound
from instances.risk import empirical_risk
from instances.sampling import sample_dataset
from losses.extensions import make_quadratic_extension
from tails.epsilon import EpsilonCondition, solve_epsilon_upper
from tails.families import ExponentialTail, PolynomialTail, StretchedExponentialTail
from tails.inverse import tail_inverse

FAMILIES = [ExponentialTail(), PolynomialTail(2.0), StretchedExponentialTail(2.0)]


def test_reference_point_norm(exp_tail):
    w = reference_point(exp_tail, 0.1, 0.5, [1.0, 0.0])
    assert float(np.linalg.norm(w)) == pytest.approx(math.log(2) / 0.1, rel=1e-10)
    assert float(np.linalg.norm(w)) == pytest.approx(6.9315, abs=1e-4)
    assert np.array_equal(reference_point(exp_tail, 0.1, 1.0, [0.0, 1.0]), np.zeros(2))


def test_reference_point_needs_unit_witness(exp_tail):
    with pytest.raises(ValueError):
        reference_point(exp_tail, 0.1, 0.5, [2.0, 0.0])


def test_reference_point_has_small_empirical_risk(exp_tail, quad_ext, big_t):
    eps = 0.01
    w = reference_point(exp_tail, big_t.effective_gamma, eps, big_t.unit_witness)
    for seed in range(5):
        data = sample_dataset(big_t, 70, seed=seed)
        assert empirical_risk(w, quad_ext, data) <= eps * (1 + 1e-8)


def test_norm_bound_examples():
    assert norm_bound(2.0, 0.5, 0.1, 100) == pytest.approx(4.0 + 2.0 * math.sqrt(5.0), rel=1e-15)
    assert norm_bound(0.0, 0.5, 0.0, 1) == 0.0
    with pytest.raises(ValueError):
        norm_bound(2.0, 0.5, 0.1, 0)
    report = norm_report(2.0, 0.5, 0.1, 100)
    assert report.value == pytest.approx(8.4721, abs=1e-4)
    assert set(report.terms) == {"reference", "growth"}


def test_opt_error_examples():
    assert opt_error_bound(6.93, 0.5, 0.296, 1000) == pytest.approx(0.688, abs=1e-3)
    assert opt_error_bound(0.0, 0.5, 0.0, 10) == 0.0
    a = opt_error_report(3.0, 0.5, 0.0, 100).terms["distance"]
    b = opt_error_report(3.0, 0.5, 0.0, 200).terms["distance"]
    assert b == a / 2


def test_rademacher_gap_example():
    value = rademacher_gap_bound(0.0, 1.0, 1.0, 1.0, 100, 0.1, K=1e5)
    expected = 1e5 * (math.log(100) ** 3 / 100 + math.log(10) / 100)
    assert value == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("field,bigger", [("emp_risk", 0.2), ("b", 2.0), ("beta", 2.0), ("radius", 2.0)])
def test_rademacher_gap_monotone(field, bigger):
    base = {"emp_risk": 0.1, "b": 1.0, "beta": 1.0, "radius": 1.0}
    args = dict(base, **{field: bigger})
    assert rademacher_gap_bound(n=100, delta=0.1, **args) >= rademacher_gap_bound(n=100, delta=0.1, **base)
    assert rademacher_gap_bound(n=100, delta=0.01, **base) >= rademacher_gap_bound(n=100, delta=0.1, **base)


def test_upper_risk_example(exp_tail):
    report = upper_risk_bound(exp_tail, 0.1, 0.5, 1000, 10 ** 4, 0.1, K=1e5)
    eps = report.diagnostics["eps"]
    assert eps == pytest.approx(0.296, abs=2e-3)
    assert eps == solve_epsilon_upper(exp_tail, EpsilonCondition(gamma=0.1, eta=0.5, T=1000))
    u = tail_inverse(exp_tail, eps)
    assert report.terms["optimization"] == pytest.approx(4 * 1e5 * u * u / (0.01 * 0.5 * 1000), rel=1e-12)
    assert all(v > 0 for v in report.terms.values())
    assert report.value == pytest.approx(math.fsum(report.terms.values()))
    assert report.diagnostics["rademacher_chain"] > 0


def test_upper_risk_generalization_vanishes_with_n(exp_tail):
    small = upper_risk_bound(exp_tail, 0.1, 0.5, 1000, 10 ** 4, 0.1)
    large = upper_risk_bound(exp_tail, 0.1, 0.5, 1000, 10 ** 12, 0.1)
    assert large.terms["optimization"] == small.terms["optimization"]
    assert large.terms["generalization"] < small.terms["generalization"] / 1e6


def test_upper_risk_rejects_bad_delta(exp_tail):
    with pytest.raises(ValueError):
        upper_risk_bound(exp_tail, 0.1, 0.5, 1000, 100, 1.0)


@pytest.mark.parametrize("phi", FAMILIES, ids=lambda p: p.describe())
def test_upper_bound_dominates_lower_bound(phi):
    loss = make_quadratic_extension(phi)
    eta = loss.max_step()
    checked = 0
    for gamma in (0.01, 0.05, 0.125):
        for T in (10, 10 ** 3, 10 ** 5, 10 ** 7):
            for n in (35, 10 ** 3, 10 ** 6):
                lower = lower_risk_bound(phi, gamma, eta, T, n, beta=loss.beta)
                if not lower.feasible:
                    continue
                upper = upper_risk_bound(phi, gamma, eta, T, n, 0.1, beta=loss.beta)
                assert upper.value >= lower.value, (gamma, T, n, upper.value, lower.value)
                checked += 1
    assert checked > 0


# ε small enough that ηγ²T ≤ g(ε) for every T below
@pytest.mark.parametrize("phi,eps,horizons", [
    (FAMILIES[0], 1e-3, (10, 10 ** 3, 10 ** 5, 10 ** 7)),
    (FAMILIES[1], 1e-3, (10, 10 ** 3, 10 ** 5, 10 ** 7)),
    (FAMILIES[2], 1e-3, (10, 10 ** 3, 10 ** 5, 10 ** 6)),
], ids=lambda v: v.describe() if hasattr(v, "describe") else None)
def test_upper_risk_terms_nonincreasing_in_T_at_fixed_eps(phi, eps, horizons):
    reports = [upper_risk_bound(phi, 1.0 / 16.0, 0.5, T, 1000, 0.1, eps=eps) for T in horizons]
    assert all(r.feasible for r in reports)
    assert all(r.diagnostics["eps"] == eps for r in reports)
    for name in ("optimization", "generalization", "cross"):
        values = [r.terms[name] for r in reports]
        assert all(b <= a for a, b in zip(values, values[1:])), (name, values)


@pytest.mark.parametrize("phi", FAMILIES, ids=lambda p: p.describe())
def test_upper_risk_nonincreasing_in_n(phi):
    values = [upper_risk_bound(phi, 1.0 / 16.0, 0.5, 1000, n, 0.1).value for n in (35, 10 ** 3, 10 ** 5, 10 ** 8)]
    assert all(b <= a for a, b in zip(values, values[1:])), values


def test_upper_risk_fixed_eps(exp_tail):
    solved = upper_risk_bound(exp_tail, 0.1, 0.5, 1000, 10 ** 4, 0.1)
    pinned = upper_risk_bound(exp_tail, 0.1, 0.5, 1000, 10 ** 4, 0.1, eps=solved.diagnostics["eps"])
    assert pinned.feasible
    assert pinned.value == pytest.approx(solved.value, rel=1e-12)
    # ε = 1/2 gives g(ε) = 2 ln²2 ≈ 0.96 < ηγ²T = 5
    too_loose = upper_risk_bound(exp_tail, 0.1, 0.5, 1000, 10 ** 4, 0.1, eps=0.5)
    assert not too_loose.feasible
    assert "exceeds" in too_loose.reason
    with pytest.raises(ValueError):
        upper_risk_bound(exp_tail, 0.1, 0.5, 1000, 10 ** 4, 0.1, eps=0.75)


def test_big_t_lower_example(exp_tail):
    gamma, n = 1.0 / 16.0, 70
    report = lower_bound_bigT(exp_tail, gamma, 0.5, 10 ** 7, n, beta=1.0, eps=1.0 / 256.0)
    expected = math.log(2) ** 2 / (120 * math.e * 1152 * gamma ** 2 * n)
    assert report.feasible
    assert report.value == pytest.approx(expected, rel=1e-9)


def test_big_t_lower_infeasible_cases(exp_tail):
    too_big = lower_bound_bigT(exp_tail, 1.0 / 16.0, 0.5, 10 ** 7, 70, beta=1.0, eps=1.0 / 64.0)
    assert not too_big.feasible
    assert "128*eps" in too_big.reason
    assert not lower_bound_bigT(exp_tail, 1.0 / 16.0, 0.5, 10 ** 7, 34, beta=1.0).feasible
    short = lower_bound_bigT(exp_tail, 1.0 / 16.0, 0.5, 100, 70, beta=1.0)
    assert not short.feasible
    assert short.diagnostics["min_T"] > 100


def test_small_t_lower_decreases_with_T(exp_tail):
    a = lower_bound_smallT(exp_tail, 1.0 / 16.0, 0.5, 1000, eps=1.0 / 16.0)
    b = lower_bound_smallT(exp_tail, 1.0 / 16.0, 0.5, 10000, eps=1.0 / 16.0)
    assert a.value == pytest.approx(math.log(2) ** 2 / (1152 * (1 / 256) * 1000 * 0.5), rel=1e-9)
    assert b.value == pytest.approx(a.value / 10, rel=1e-12)


def test_combined_lower_bound_is_max(exp_tail):
    report = lower_risk_bound(exp_tail, 1.0 / 16.0, 0.5, 10 ** 7, 70, beta=1.0,
                              eps_big=1.0 / 256.0, eps_small=1.0 / 16.0)
    assert report.combine == "max"
    assert report.value == max(report.branches["big_t"].value, report.branches["small_t"].value)
    assert report.to_dict()["branches"]["big_t"]["feasible"]


def test_sgd_empirical_examples():
    assert sgd_empirical_bound(0.0, 0.5, 0.0, 100, 1.0, 0.1) == 0.0
    no_log = sgd_empirical_report(6.93, 0.5, 0.05, 10 ** 4, 1.0, 1.0)
    assert no_log.terms["concentration"] == 0.0
    assert no_log.value == pytest.approx(6.93 ** 2 / (0.5 * 10 ** 4) + 0.15, rel=1e-12)
    full = sgd_empirical_report(6.93, 0.5, 0.05, 10 ** 4, 1.0, 0.1)
    b = 0.15 + 16 * 6.93 ** 2 + 16 * 0.5 * 0.05 * 10 ** 4
    assert full.terms["concentration"] == pytest.approx(8 * b * math.log(10) / 10 ** 4, rel=1e-12)
    with pytest.raises(ValueError):
        sgd_empirical_bound(1.0, 0.5, 0.1, 100, 1.0, 0.0)


def test_sgd_regret_forms():
    assert sgd_regret_bound(2.0, 0.5, 100) == pytest.approx(4.0 / 100.0)
    assert sgd_regret_delivered_bound(2.0, 0.5, 100) == pytest.approx(8.0 / 100.0)


def test_report_rejects_negative_terms():
    with pytest.raises(ValueError):
        BoundReport("norm", {}, {"a": -1.0})
    with pytest.raises(ValueError):
        BoundReport("mystery", {}, {})
    empty = BoundReport.infeasible("lower_risk_bigT", {}, "no")
    assert empty.value == 0.0 and not empty.feasible

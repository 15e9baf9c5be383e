import math

import numpy as np
import pytest

from instances.sampling import sample_dataset, sample_datasets, stack_counts
from optimizers import StepRecorder, check_step_size
from optimizers.diagnostics import empirical_gradient, grad_norm_check
from optimizers.gd import run_gd, run_gd_batch
from optimizers.sgd import INDEX_CHUNK, run_sgd, run_sgd_batch


def test_gd_first_step(logistic, single_point_data):
    traj = run_gd(logistic, single_point_data, eta=0.5, T=2)
    assert traj.final_model.tolist() == [0.25, 0.0]
    assert traj.steps.tolist() == [1, 2]
    assert traj.emp_risks[0] == pytest.approx(math.log(2))


def test_gd_single_iterate_is_zero(quad_ext, big_t):
    data = sample_dataset(big_t, 20, seed=1)
    traj = run_gd(quad_ext, data, eta=0.5, T=1)
    assert np.array_equal(traj.final_model, np.zeros(3))
    assert traj.final_emp_risk == 1.0
    assert traj.max_increase == 0.0


def test_gd_descent(quad_ext, big_t):
    data = sample_dataset(big_t, 70, seed=5)
    traj = run_gd(quad_ext, data, eta=0.5, T=500)
    assert traj.max_increase <= 1e-12
    assert np.all(np.diff(traj.emp_risks) <= 1e-12)
    assert traj.final_emp_risk < traj.emp_risks[0]


def test_gd_record_every(quad_ext, big_t):
    data = sample_dataset(big_t, 70, seed=5)
    traj = run_gd(quad_ext, data, eta=0.5, T=25, record_every=10)
    assert traj.steps.tolist() == [1, 11, 21, 25]
    assert traj.emp_risks[-1] == traj.final_emp_risk


def test_gd_batch_rows_match_single_runs(quad_ext, big_t):
    seeds = [11, 12, 13, 14]
    datasets = sample_datasets(big_t, 70, seeds)
    batch = run_gd_batch(quad_ext, big_t, stack_counts(datasets), eta=0.5, T=300, seeds=seeds)
    for data, traj in zip(datasets, batch):
        single = run_gd(quad_ext, data, eta=0.5, T=300)
        assert np.array_equal(traj.final_model, single.final_model)
        assert traj.final_emp_risk == single.final_emp_risk
        assert traj.seed == data.seed


def test_gd_rejects_large_step(quad_ext, single_point_data):
    with pytest.raises(ValueError):
        run_gd(quad_ext, single_point_data, eta=0.6, T=10)
    with pytest.raises(ValueError):
        run_gd(quad_ext, single_point_data, eta=0.5, T=0)


def test_check_step_size_boundary():
    check_step_size(0.5, 1.0)
    with pytest.raises(ValueError):
        check_step_size(0.0, 1.0)
    with pytest.raises(ValueError):
        check_step_size(0.51, 1.0)


def test_sgd_on_one_point_follows_gd(logistic, single_point_data):
    gd = run_gd(logistic, single_point_data, eta=1.0, T=50, keep_iterates=True)
    sgd = run_sgd(logistic, single_point_data, eta=1.0, T=50, seed=3)
    assert np.array_equal(sgd.last_iterate, gd.final_model)
    assert np.allclose(sgd.final_model, gd.iterates.mean(axis=0), rtol=1e-12, atol=0)


def test_sgd_is_deterministic(quad_ext, big_t):
    data = sample_dataset(big_t, 70, seed=2)
    a = run_sgd(quad_ext, data, eta=0.5, T=INDEX_CHUNK + 100, seed=9)
    b = run_sgd(quad_ext, data, eta=0.5, T=INDEX_CHUNK + 100, seed=9)
    c = run_sgd(quad_ext, data, eta=0.5, T=INDEX_CHUNK + 100, seed=10)
    assert np.array_equal(a.final_model, b.final_model)
    assert a.loss_sum == b.loss_sum
    assert not np.array_equal(a.final_model, c.final_model)


def test_sgd_batch_rows_match_single_runs(quad_ext, big_t):
    seeds = [21, 22, 23]
    datasets = sample_datasets(big_t, 70, seeds)
    reference = 10.0 * big_t.w_star
    batch = run_sgd_batch(quad_ext, datasets, eta=0.5, T=400, seeds=seeds, reference=reference)
    for data, seed, traj in zip(datasets, seeds, batch):
        single = run_sgd(quad_ext, data, eta=0.5, T=400, seed=seed, reference=reference)
        assert np.array_equal(traj.final_model, single.final_model)
        assert traj.reference_loss_sum == single.reference_loss_sum


def test_sgd_regret_on_realised_sequence(quad_ext, big_t):
    data = sample_dataset(big_t, 70, seed=4)
    reference = 20.0 * big_t.w_star
    T, eta = 2000, 0.5
    traj = run_sgd(quad_ext, data, eta=eta, T=T, seed=4, reference=reference)
    regret = (traj.loss_sum - traj.reference_loss_sum) / T
    assert regret <= float(reference @ reference) / (eta * T) + 1e-9


def test_sgd_needs_matching_seeds(quad_ext, big_t):
    data = sample_dataset(big_t, 10, seed=1)
    with pytest.raises(ValueError):
        run_sgd_batch(quad_ext, [data, data], eta=0.5, T=5, seeds=[1])


def test_step_recorder_rejects_bad_stride():
    with pytest.raises(ValueError):
        StepRecorder(10, record_every=0)


def test_empirical_gradient_and_self_bound(logistic, single_point_data):
    assert empirical_gradient(np.zeros(2), logistic, single_point_data).tolist() == [-0.5, 0.0]
    gap = grad_norm_check(logistic, single_point_data, np.zeros(2))
    assert gap == pytest.approx(0.25 - 0.5 * math.log(2), rel=1e-12)
    assert gap == pytest.approx(-0.0966, abs=1e-4)


def test_self_bound_holds_along_gd(quad_ext, big_t):
    data = sample_dataset(big_t, 70, seed=8)
    traj = run_gd(quad_ext, data, eta=0.5, T=100, keep_iterates=True)
    for w in traj.iterates:
        assert grad_norm_check(quad_ext, data, w) <= 1e-12

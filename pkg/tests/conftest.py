import os
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))
os.environ.setdefault("SEPGD_QUIET", "1")
os.environ.setdefault("SEPGD_NO_GRID", "1")

from instances import Dataset, DiscreteDistribution  # noqa: E402
from instances.hard import make_bigT_instance, make_smallT_instance  # noqa: E402
from losses.extensions import make_linear_extension, make_quadratic_extension  # noqa: E402
from losses.standard import make_logistic  # noqa: E402
from tails.families import ExponentialTail, PolynomialTail, StretchedExponentialTail  # noqa: E402


@pytest.fixture
def exp_tail():
    return ExponentialTail()


@pytest.fixture
def poly2_tail():
    return PolynomialTail(2.0)


@pytest.fixture
def stretched2_tail():
    return StretchedExponentialTail(2.0)


@pytest.fixture
def quad_ext(exp_tail):
    return make_quadratic_extension(exp_tail)


@pytest.fixture
def lin_ext(exp_tail):
    return make_linear_extension(exp_tail)


@pytest.fixture
def logistic():
    return make_logistic()


@pytest.fixture
def big_t():
    return make_bigT_instance(1.0 / 16.0, 70)


@pytest.fixture
def small_t(exp_tail):
    return make_smallT_instance(1.0 / 16.0, 1.0 / 16.0, 0.5, 200, phi=exp_tail)


@pytest.fixture
def single_point():
    """Distribution on the single example z = (1, 0)."""
    return DiscreteDistribution(support=[[1.0, 0.0]], probs=[1.0], w_star=[1.0, 0.0], gamma=1.0, name="point")


@pytest.fixture
def single_point_data(single_point):
    return Dataset.from_indices(single_point, [0], seed=0)


def write_yaml(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

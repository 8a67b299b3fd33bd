import math

import numpy as np
import pytest
from scipy import integrate

from xyent.errors import QuadratureNonConvergence
from xyent.quadrature import GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, integrate_family


def test_rule_weights_sum_to_interval_length():
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert np.count_nonzero(GAUSS_WEIGHTS) == 7


@pytest.mark.parametrize("degree", [0, 5, 13, 22])
def test_kronrod_exact_for_polynomials(degree):
    exact = (1 - (-1) ** (degree + 1)) / (degree + 1)
    assert np.dot(KRONROD_WEIGHTS, NODES ** degree) == pytest.approx(exact, abs=1e-14)


def test_family_matches_scipy_on_oscillatory_integrands():
    ks = np.arange(0, 25)

    def f(x):
        return np.cos(np.outer(ks, x)) * np.exp(-x)[None, :]

    values, err = integrate_family(f, 0.0, math.pi, 1e-12, max_panels=4096)
    for k, v in zip(ks, values):
        ref, _ = integrate.quad(lambda x: math.cos(k * x) * math.exp(-x), 0, math.pi,
                                epsabs=1e-13, limit=200)
        assert v == pytest.approx(ref, abs=1e-11)
    assert np.all(err <= 1e-12)


def test_kink_converges():
    values, _ = integrate_family(lambda x: np.abs(x - 1.0)[None, :], 0.0, 3.0, 1e-10, 2048)
    assert values[0] == pytest.approx(0.5 + 2.0, abs=1e-10)


def test_budget_exhaustion_raises():
    with pytest.raises(QuadratureNonConvergence):
        integrate_family(lambda x: np.sign(x - 1.2345)[None, :], 0.0, 3.0, 1e-14, max_panels=20)

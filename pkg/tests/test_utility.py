# Copyright 2020 Lorna Authors. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#   you may not use this file except in compliance with the License.
#   You may obtain a copy of the License at
#
#       http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================
import math

import numpy as np
import pytest

from riskpoa.utility import ConcaveTransform
from riskpoa.utility import Infeasible
from riskpoa.utility import Lottery
from riskpoa.utility import UtilityModel
from riskpoa.utility import cap_valuation
from riskpoa.utility import check_normalization
from riskpoa.utility import eval_utility
from riskpoa.utility import make_utility_model
from riskpoa.utility import mean_minus_std
from riskpoa.utility import relaxation_constant
from riskpoa.utility import variance_adjusted

seed = 0


def test_quasilinear_pays_value_minus_price():
    assert eval_utility(UtilityModel.quasilinear(1.0), 1.0, 0.9) == pytest.approx(0.1, abs=1e-15)


@pytest.mark.parametrize("vx,p,expected", [
    (1.0, 1.0, 0.0),
    (1.0, 0.5, -math.expm1(-0.5) / -math.expm1(-1.0)),
    (1.0, 0.0, 1.0),
    (2.0, 1.0, 2.0 * -math.expm1(-1.0) / -math.expm1(-2.0)),
])
def test_scaled_exponential(vx, p, expected):
    model = UtilityModel.scaled(ConcaveTransform.exponential(), vx)
    assert eval_utility(model, vx, p) == pytest.approx(expected, abs=1e-12)


def test_scaled_exponential_losing_bid_uses_reference_value():
    model = UtilityModel.scaled(ConcaveTransform.exponential(), 1.0)
    expected = (1.0 - math.exp(0.5)) / -math.expm1(-1.0)
    assert eval_utility(model, 0.0, 0.5) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(-1.0265, abs=1e-4)


def test_scaled_utility_without_positive_value_is_a_domain_error():
    model = UtilityModel.scaled(ConcaveTransform.exponential(), 0.0)
    with pytest.raises(ValueError):
        model(0.0, 0.5)
    assert model(0.0, 0.0) == 0.0


def test_budget_violation_is_infeasible():
    model = UtilityModel.budgeted(UtilityModel.quasilinear(2.0), 1.0)
    assert model(2.0, 1.5) is Infeasible.INFEASIBLE
    assert model(2.0, 1.0) == pytest.approx(1.0)
    assert model.evaluate(2.0, 1.5) == -np.inf


def test_non_finite_payment_is_rejected():
    with pytest.raises(ValueError):
        UtilityModel.quasilinear(1.0)(1.0, float("nan"))


@pytest.mark.parametrize("kind,slope", [("linear", 1.0), ("exponential", 1.0), ("piecewise", 1.0),
                                        ("piecewise", 3.0)])
def test_transforms_are_monotone(kind, slope):
    grid = np.linspace(-5.0, 5.0, 1001)
    assert ConcaveTransform(kind, slope=slope).is_monotone(grid)


def test_piecewise_transform_is_continuous_at_zero():
    h = ConcaveTransform.piecewise(4.0)
    assert h(0.0) == 0.0
    assert h(-0.5) == -2.0
    assert h(0.5) == 0.5
    assert h.left_slope_at_zero() == 4.0


def test_piecewise_slope_below_one_is_rejected():
    with pytest.raises(ValueError):
        ConcaveTransform.piecewise(0.5)


def test_tabulated_transform_interpolates():
    h = ConcaveTransform.tabulated([(-1.0, -2.0), (0.0, 0.0), (1.0, 0.5)])
    assert h(-0.5) == pytest.approx(-1.0)
    assert h(0.5) == pytest.approx(0.25)
    assert h(2.0) == pytest.approx(1.0)
    assert h.left_slope_at_zero() == pytest.approx(2.0)


def test_linear_transform_reproduces_quasilinear():
    rng = np.random.default_rng(seed)
    values = rng.uniform(0.1, 3.0, size=200)
    payments = rng.uniform(0.0, 6.0, size=200)
    for v, p in zip(values, payments):
        scaled = UtilityModel.scaled(ConcaveTransform.linear(), float(v))
        assert scaled(float(v), float(p)) == pytest.approx(v - p, abs=1e-12)


def test_quasilinear_is_normalized():
    report = check_normalization(UtilityModel.quasilinear(), [0.5, 1.0, 2.0], np.linspace(0.0, 4.0, 64))
    assert report.passed


def test_exponential_is_normalized():
    model = UtilityModel.scaled(ConcaveTransform.exponential(), 1.0)
    report = check_normalization(model, [0.5, 1.0, 2.0], np.linspace(0.0, 4.0, 64))
    assert report.passed
    assert report.checked == 3 * 64


def test_overcharging_utility_is_reported():
    report = check_normalization(lambda v, p: v - 2.0 * p, [1.0], np.linspace(0.0, 2.0, 9))
    assert not report.passed
    assert report.violation["property"] == "u>=v-p"


def test_normalization_grid_must_cover_twice_the_value():
    with pytest.raises(ValueError):
        check_normalization(UtilityModel.quasilinear(), [1.0], np.linspace(0.0, 1.0, 8))


@pytest.mark.parametrize("block", range(10))
def test_random_transforms_are_normalized(block):
    for trial in range(100 * block, 100 * (block + 1)):
        rng = np.random.default_rng(trial)
        kind = "exponential" if trial % 2 else "piecewise"
        model = make_utility_model(kind, 1.0, slope=float(rng.uniform(1.0, 5.0)))
        v_grid = np.sort(rng.uniform(0.05, 3.0, size=4))
        p_grid = np.concatenate([[0.0], np.sort(rng.uniform(0.0, 2.0 * v_grid.max(), size=30)), [2.0 * v_grid.max()]])
        report = check_normalization(model, v_grid, p_grid)
        assert report.passed, (trial, report.violation)


def test_relaxation_constant_is_one_for_normalized_models():
    model = UtilityModel.scaled(ConcaveTransform.exponential(), 1.0)
    assert relaxation_constant(model, [0.5, 1.0, 2.0], np.linspace(0.0, 4.0, 33)) == 1.0


def test_relaxation_constant_of_a_damped_utility():
    constant = relaxation_constant(lambda v, p: 0.5 * (v - p), [1.0, 2.0], np.linspace(0.0, 4.0, 17))
    assert constant == pytest.approx(0.5)


@pytest.mark.parametrize("v,budget,expected", [
    (5.0, 3.0, 3.0),
    (2.0, float("inf"), 2.0),
    ((7.0, 3.0), (4.0, 4.0), (4.0, 3.0)),
])
def test_cap_valuation(v, budget, expected):
    assert cap_valuation(v, budget) == expected


def test_cap_valuation_rejects_negative_budgets():
    with pytest.raises(ValueError):
        cap_valuation(1.0, -1.0)


@pytest.mark.parametrize("probs,values,gamma,expected", [
    ([0.5, 0.5], [1.0, 0.0], 1.0, 0.0),
    ([1.0], [5.0], 0.7, 5.0),
    ([0.5, 0.5], [1.0, 0.0], 0.0, 0.5),
])
def test_variance_adjusted(probs, values, gamma, expected):
    assert variance_adjusted(Lottery(probs, values), gamma) == expected


def test_variance_adjusted_is_non_increasing_in_gamma():
    rng = np.random.default_rng(seed)
    probs = rng.dirichlet(np.ones(6))
    values = rng.normal(size=6)
    lottery = Lottery(probs / probs.sum(), values)
    adjusted = [variance_adjusted(lottery, g) for g in np.linspace(0.0, 1.0, 11)]
    assert np.all(np.diff(adjusted) <= 1e-15)


def test_lottery_probabilities_must_sum_to_one():
    with pytest.raises(ValueError):
        Lottery([0.5, 0.4], [1.0, 0.0])


def test_mean_minus_std_vectorises_over_leading_axes():
    probs = np.array([[0.5, 0.5], [1.0, 0.0]])
    values = np.array([[1.0, 0.0], [3.0, 100.0]])
    np.testing.assert_allclose(mean_minus_std(probs, values, 1.0), [0.0, 3.0])


def test_expected_exponential_matches_pointwise_evaluation():
    model = UtilityModel.scaled(ConcaveTransform.exponential(), 2.0)
    probs = np.array([0.25, 0.75])
    vx = np.array([2.0, 0.0])
    p = np.array([0.5, 0.5])
    direct = probs @ model.evaluate(vx, p)
    assert model.expected(probs, vx, p) == pytest.approx(direct, abs=1e-12)


def test_expected_exponential_stays_finite_for_huge_payments():
    model = UtilityModel.scaled(ConcaveTransform.exponential(), 1.0)
    value = model.expected(np.array([1.0, 0.0]), np.array([1.0, 0.0]), np.array([0.0, 1000.0]))
    assert value == pytest.approx(1.0)

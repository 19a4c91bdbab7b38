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

from riskpoa.mechanisms import OutcomeRecord
from riskpoa.utility import ConcaveTransform
from riskpoa.utility import Infeasible
from riskpoa.utility import UtilityModel
from riskpoa.utility import make_utility_model
from riskpoa.welfare import check_welfare_doubling
from riskpoa.welfare import liquid_welfare
from riskpoa.welfare import optimal_welfare
from riskpoa.welfare import single_item_outcomes
from riskpoa.welfare import social_welfare
from riskpoa.welfare import unit_demand_outcomes
from riskpoa.welfare import value_welfare
from riskpoa.welfare import welfare_report
from riskpoa.welfare.welfare import _best_payment

seed = 0


def exponential(v):
    return UtilityModel.scaled(ConcaveTransform.exponential(), v)


def exponential_opt(v):
    """ max_p h(v - p) v / h(v) + p, attained where e^(p - v) = h(v) / v. """
    h = -math.expm1(-v)
    return v / h - 1.0 + v + math.log(h / v)


def test_outcome_spaces():
    assert single_item_outcomes(2) == [(1, 0), (0, 1), (0, 0)]
    outcomes = unit_demand_outcomes(2)
    assert len(outcomes) == 7
    assert (0, 0) not in outcomes and (0, 1) in outcomes and (None, None) in outcomes


@pytest.mark.parametrize("models,outcome,expected", [
    ([UtilityModel.quasilinear(1.0), UtilityModel.quasilinear(2.0)],
     OutcomeRecord((0, 1), (0.0, 1.5), 1.0), 2.0),
    ([UtilityModel.quasilinear(1.0), UtilityModel.quasilinear(2.0)],
     OutcomeRecord((0, 1), (1.0, 2.0), 1.0), 2.0),
    ([exponential(1.0), exponential(2.0)],
     OutcomeRecord((0, 1), (0.0, 1.0), 1.0), 1.0 + 2.0 * -math.expm1(-1.0) / -math.expm1(-2.0)),
])
def test_social_welfare(models, outcome, expected):
    assert social_welfare(models, outcome) == pytest.approx(expected, abs=1e-12)


def test_scaled_social_welfare_example_value():
    sw = social_welfare([exponential(1.0), exponential(2.0)], OutcomeRecord((0, 1), (0.0, 1.0), 1.0))
    assert sw == pytest.approx(2.4621, abs=1e-4)


def test_social_welfare_propagates_budget_violations():
    models = [UtilityModel.budgeted(UtilityModel.quasilinear(2.0), 1.0), UtilityModel.quasilinear(1.0)]
    assert social_welfare(models, OutcomeRecord((1, 0), (1.5, 0.0), 1.0)) is Infeasible.INFEASIBLE


def test_quasilinear_optimum_gives_the_item_to_the_highest_value():
    result = optimal_welfare([UtilityModel.quasilinear(1.0), UtilityModel.quasilinear(2.0)], single_item_outcomes(2))
    assert result.value == pytest.approx(2.0, abs=1e-12)
    assert result.allocation == (0, 1)


def test_exponential_optimum_matches_closed_form():
    result = optimal_welfare([exponential(1.0), exponential(2.0)], single_item_outcomes(2))
    assert result.value == pytest.approx(exponential_opt(2.0), abs=1e-9)
    assert 2.0 <= result.value <= 4.0
    assert result.allocation == (0, 1)
    assert 0.0 <= result.resolution_gap < 1e-5


def test_best_payment_refines_inside_the_grid_cell():
    # the grid optimum of u + p sits one cell away from e^(p - v) = h(v) / v
    v = 1.0
    p_star = v + math.log(-math.expm1(-v) / v)
    value, p, raw = _best_payment(exponential(v), v, np.inf, 8)
    assert p == pytest.approx(p_star, abs=1e-6)
    assert value == pytest.approx(exponential_opt(v), abs=1e-12)
    assert value >= raw

    _, p, _ = _best_payment(exponential(v), v, np.inf, 8, refine=False)
    assert p in np.linspace(0.0, v, 8)


def test_best_payment_respects_budget_and_cap():
    value, p, _ = _best_payment(exponential(1.0), 1.0, 0.25, 64)
    assert 0.0 <= p <= 0.25
    assert value == pytest.approx(float(exponential(1.0).evaluate(1.0, 0.25)) + 0.25, abs=1e-9)
    value, _, _ = _best_payment(UtilityModel.quasilinear(2.0), 2.0, np.inf, 64, cap=0.5)
    assert value == pytest.approx(0.5, abs=1e-12)
    value, p, raw = _best_payment(UtilityModel.quasilinear(0.0), 0.0, np.inf, 64)
    assert (value, p, raw) == (0.0, 0.0, 0.0)


def test_optimum_of_an_empty_outcome_space_is_an_error():
    with pytest.raises(ValueError):
        optimal_welfare([UtilityModel.quasilinear(1.0)], [])
    with pytest.raises(ValueError):
        value_welfare([UtilityModel.quasilinear(1.0)], [])


@pytest.mark.parametrize("budgets,expected", [
    ((np.inf, np.inf), 2.0),
    ((1.0, 0.5), 1.0),
    ((0.0, 0.0), 0.0),
])
def test_liquid_welfare(budgets, expected):
    models = [UtilityModel.budgeted(UtilityModel.quasilinear(v), b) for v, b in zip((1.0, 2.0), budgets)]
    result = liquid_welfare(models, single_item_outcomes(2))
    assert result.value == pytest.approx(expected, abs=1e-12)


def test_liquid_welfare_is_bounded_by_budgets_and_capped_optimum():
    rng = np.random.default_rng(seed)
    for _ in range(20):
        values = rng.uniform(0.1, 2.0, size=3)
        budgets = rng.uniform(0.0, 2.0, size=3)
        models = [UtilityModel.budgeted(exponential(float(v)), float(b)) for v, b in zip(values, budgets)]
        liquid = liquid_welfare(models, single_item_outcomes(3), 128).value
        capped = [exponential(float(min(v, b))) if min(v, b) > 0.0 else UtilityModel.quasilinear(0.0)
                  for v, b in zip(values, budgets)]
        assert liquid <= budgets.sum() + 1e-9
        assert liquid <= optimal_welfare(capped, single_item_outcomes(3), 128).value + 1e-9


def test_quasilinear_instances_have_opt_equal_to_opt_hat():
    models = [UtilityModel.quasilinear(v) for v in (0.3, 0.9, 0.6)]
    report = check_welfare_doubling(models, single_item_outcomes(3))
    assert report.passed
    assert report.opt == pytest.approx(report.opt_hat, abs=1e-12)


@pytest.mark.parametrize("block", range(10))
def test_welfare_doubling_on_random_instances(block):
    for trial in range(100 * block, 100 * (block + 1)):
        rng = np.random.default_rng(trial)
        kind = "exponential" if trial % 2 else "piecewise"
        values = rng.uniform(0.05, 3.0, size=int(rng.integers(1, 4)))
        models = [make_utility_model(kind, float(v), slope=float(rng.uniform(1.0, 4.0))) for v in values]
        report = check_welfare_doubling(models, single_item_outcomes(len(values)), 128)
        assert report.passed, (trial, report.violation)
        assert report.opt >= report.opt_hat - 1e-9


def test_welfare_report():
    models = [UtilityModel.quasilinear(1.0), UtilityModel.quasilinear(2.0)]
    report = welfare_report(models, OutcomeRecord((1, 0), (0.5, 0.0), 1.0), single_item_outcomes(2))
    assert report.sw == pytest.approx(1.0)
    assert report.value_welfare == 1.0
    assert report.opt == pytest.approx(2.0)
    assert report.opt_hat == 2.0
    assert "liquid_opt" not in report.to_dict()


def test_welfare_report_of_budgeted_models_has_liquid_welfare():
    models = [UtilityModel.budgeted(UtilityModel.quasilinear(v), 0.5) for v in (1.0, 2.0)]
    report = welfare_report(models, OutcomeRecord((0, 1), (0.0, 0.5), 1.0), single_item_outcomes(2))
    assert report.to_dict()["liquid_opt"] == pytest.approx(0.5)

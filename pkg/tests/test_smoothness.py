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
import numpy as np
import pytest

from riskpoa.mechanisms import MechanismSpec
from riskpoa.smoothness import CustomTable
from riskpoa.smoothness import GridInstance
from riskpoa.smoothness import HalfValueTopBidder
from riskpoa.smoothness import SmoothnessParams
from riskpoa.smoothness import TruthfulBid
from riskpoa.smoothness import UniformTopBidder
from riskpoa.smoothness import WeakSmoothnessParams
from riskpoa.smoothness import ZeroBid
from riskpoa.smoothness import budget_transfer_check
from riskpoa.smoothness import build_deviation
from riskpoa.smoothness import certify_smoothness
from riskpoa.smoothness import certify_weak_smoothness
from riskpoa.smoothness import check_nonneg_deviation_utility
from riskpoa.smoothness import poa_bound
from riskpoa.smoothness import risk_transfer
from riskpoa.smoothness import weak_poa_bound
from riskpoa.utility import UtilityModel
from riskpoa.utility import make_utility_model

values = [0.2, 0.6, 1.0]
bids = np.linspace(0.0, 1.0, 6)


def instance(kind, models=None, n_players=2):
    models = models or [UtilityModel.quasilinear() for _ in range(n_players)]
    return GridInstance(MechanismSpec(kind, n_players), models, [values] * n_players, bids)


@pytest.mark.parametrize("params,expected", [
    (SmoothnessParams(0.5, 1.0), 0.5),
    (SmoothnessParams(1.0, 0.0), 1.0),
    (SmoothnessParams(0.5, 2.0), 0.25),
])
def test_poa_bound(params, expected):
    assert poa_bound(params) == expected
    assert params.bound() == expected


def test_weak_poa_bound():
    assert weak_poa_bound(WeakSmoothnessParams(1.0, 0.0, 1.0)) == 0.5
    assert WeakSmoothnessParams.from_smoothness(SmoothnessParams(0.5, 2.0)).bound() == 0.25


def test_params_must_be_finite_and_non_negative():
    with pytest.raises(ValueError):
        SmoothnessParams(-0.5, 1.0)
    with pytest.raises(ValueError):
        SmoothnessParams(0.5, float("inf"))
    with pytest.raises(ValueError):
        WeakSmoothnessParams(1.0, 0.0, float("nan"))
    with pytest.raises(ValueError):
        poa_bound(SmoothnessParams(0.0, 1.0))


def test_risk_transfer_halves_lambda_on_every_application():
    params = SmoothnessParams(1.0, 1.0)
    assert risk_transfer(params) == SmoothnessParams(0.5, 1.0)
    assert risk_transfer(risk_transfer(params)) == SmoothnessParams(0.25, 1.0)
    assert risk_transfer(params, relaxation=0.5) == SmoothnessParams(0.25, 0.5)
    with pytest.raises(ValueError):
        risk_transfer(params, relaxation=0.0)


def test_deviation_rules():
    profile = (0.4, 1.0)
    actions, probs = HalfValueTopBidder()(profile, 1, None, bids)
    assert actions.tolist() == [0.5] and probs.tolist() == [1.0]
    assert HalfValueTopBidder()(profile, 0, None, bids)[0].tolist() == [0.0]
    assert TruthfulBid()(profile, 0, None, bids)[0].tolist() == [0.4]
    assert ZeroBid()(profile, 1, None, bids)[0].tolist() == [0.0]

    grid = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
    actions, probs = UniformTopBidder()((0.6, 0.3), 0, None, grid)
    np.testing.assert_allclose(actions, [0.125, 0.375, 0.55])
    np.testing.assert_allclose(probs, [0.25 / 0.6, 0.25 / 0.6, 0.1 / 0.6])
    assert probs.sum() == pytest.approx(1.0, abs=1e-15)


def test_custom_deviation_tables():
    table = CustomTable({(0, 0.5): [(0.0, 0.25), (1.0, 0.75)]})
    actions, probs = table((1.0, 1.0), 0, 0.5, bids)
    assert actions.tolist() == [0.0, 1.0] and probs.tolist() == [0.25, 0.75]
    with pytest.raises(ValueError):
        table((1.0, 1.0), 1, 0.5, bids)
    with pytest.raises(AssertionError):
        CustomTable(lambda v, i, a, g: ([0.0], [0.5]))((1.0, 1.0), 0, 0.0, bids)
    with pytest.raises(ValueError):
        build_deviation("bid-shading")


def test_first_price_is_half_one_smooth():
    certificate = certify_smoothness(instance("first-price"), HalfValueTopBidder(), SmoothnessParams(0.5, 1.0))
    assert certificate.certified
    assert certificate.min_slack >= 0.0
    assert certificate.grid["n_profiles"] == 36


def test_all_pay_is_half_one_smooth_under_the_uniform_deviation():
    certificate = certify_smoothness(instance("all-pay"), UniformTopBidder(), SmoothnessParams(0.5, 1.0))
    assert certificate.certified


def test_all_pay_is_not_one_zero_smooth():
    certificate = certify_smoothness(instance("all-pay"), HalfValueTopBidder(), SmoothnessParams(1.0, 0.0))
    assert not certificate.certified
    assert certificate.min_slack < 0.0
    example = certificate.counterexample
    assert example["lhs"] < example["rhs"]
    assert "counterexample" in certificate.to_dict()


def test_second_price_is_weakly_smooth_under_truthful_bidding():
    certificate = certify_weak_smoothness(instance("second-price"), TruthfulBid(),
                                          WeakSmoothnessParams(1.0, 0.0, 1.0))
    assert certificate.certified
    assert certificate.params == {"lambda": 1.0, "mu1": 0.0, "mu2": 1.0}


def test_nonnegative_deviation_utility():
    assert check_nonneg_deviation_utility(instance("first-price"), HalfValueTopBidder()).passed
    report = check_nonneg_deviation_utility(instance("all-pay"), HalfValueTopBidder())
    assert not report.passed
    assert report.violation["utility"] < 0.0


def test_transferred_parameters_certify_risk_averse_first_price():
    models = [make_utility_model("exponential", 1.0) for _ in range(2)]
    params = risk_transfer(SmoothnessParams(0.5, 1.0))
    certificate = certify_smoothness(instance("first-price", models), HalfValueTopBidder(), params,
                                     benchmark="risk", n_payments=128)
    assert certificate.certified
    assert certificate.params == {"lambda": 0.25, "mu": 1.0}


def test_unknown_benchmark():
    with pytest.raises(ValueError):
        certify_smoothness(instance("first-price"), HalfValueTopBidder(), SmoothnessParams(0.5, 1.0),
                           benchmark="revenue")


def test_budget_transfer_against_liquid_welfare():
    models = [make_utility_model("quasilinear", 1.0, budget=0.6) for _ in range(2)]
    report = budget_transfer_check(instance("first-price", models), HalfValueTopBidder(),
                                   SmoothnessParams(0.5, 1.0), n_payments=128)
    assert report.certified
    assert report.params == {"lambda": 0.25, "mu": 1.0}
    assert report.to_dict()["certificate"]["certified"]


def test_budget_transfer_reports_negative_deviation_utility():
    models = [make_utility_model("quasilinear", 1.0, budget=0.6) for _ in range(2)]
    report = budget_transfer_check(instance("all-pay", models), HalfValueTopBidder(), SmoothnessParams(1.0, 0.0))
    assert not report.certified
    assert report.reason == "negative deviation utility"
    assert report.certificate is None

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

from riskpoa.constructions import AllPayLowerBoundInstance
from riskpoa.constructions import TwoItemInstance
from riskpoa.constructions import beta_bid
from riskpoa.constructions import bounded_slope_poa_bound
from riskpoa.constructions import expected_value
from riskpoa.constructions import g_prime
from riskpoa.constructions import g_value
from riskpoa.constructions import get_instance
from riskpoa.constructions import quasilinear_allpay_beta
from riskpoa.constructions import uniform_density
from riskpoa.constructions import verify_allpay_lower_bound
from riskpoa.constructions import verify_correlated_zero_welfare
from riskpoa.constructions import verify_two_item

m = 8.0


def test_type_distribution_integrates_to_one():
    instance = get_instance(m)
    assert instance.total_mass() == 1
    assert float(instance.cdf(m)) == pytest.approx(1.0, abs=1e-15)
    t = np.array([0.5, 0.75, 1.0, 3.0, m])
    np.testing.assert_allclose(instance.cdf(t) + instance.sf(t), 1.0, atol=1e-15)
    # continuous across the density jump
    assert float(instance.cdf(1.0 - 1e-12)) == pytest.approx(float(instance.cdf(1.0)), abs=1e-10)


def test_support_is_enforced():
    instance = get_instance(m)
    with pytest.raises(ValueError):
        instance.pdf(0.25)
    with pytest.raises(ValueError):
        instance.cdf(m + 1.0)
    with pytest.raises(ValueError):
        AllPayLowerBoundInstance(5.0)
    with pytest.raises(ValueError):
        AllPayLowerBoundInstance(m, c_variant="tight")


def test_stable_integrand_matches_the_textbook_form():
    instance = get_instance(m)
    t = np.array([0.6, 0.9, 1.5, 4.0, 7.0])
    np.testing.assert_allclose(instance.integrand(t), instance.naive_integrand(t), rtol=1e-12)


@pytest.mark.parametrize("x", [0.6, 0.9, 1.0, 1.5, 4.0])
def test_tabulated_beta_matches_adaptive_quadrature(x):
    instance = get_instance(m)
    assert float(instance.beta(x)) == pytest.approx(beta_bid(x, m), abs=1e-7)


def test_beta_is_increasing_and_invertible():
    instance = get_instance(m)
    x = np.linspace(0.5, 7.5, 30)
    b = instance.beta(x)
    assert b[0] == 0.0
    assert np.all(np.diff(b) > 0.0)
    np.testing.assert_allclose(instance.beta_inverse(b), x, atol=1e-9)


@pytest.mark.parametrize("x,fraction", [(0.8, 0.5), (2.0, 0.3), (2.0, 1.2), (5.0, 0.9)])
def test_g_prime_matches_finite_differences(x, fraction):
    y = fraction * float(get_instance(m).beta(x))
    h = 1e-5
    numeric = (g_value(x, y + h, m) - g_value(x, y - h, m)) / (2.0 * h)
    assert float(g_prime(x, y, m)) == pytest.approx(float(numeric), abs=1e-6)


@pytest.mark.parametrize("x", [0.8, 2.0, 5.0])
def test_beta_satisfies_the_first_order_condition(x):
    instance = get_instance(m)
    y = float(instance.beta(x))
    assert float(g_prime(x, y, m)) == pytest.approx(0.0, abs=1e-7)
    assert float(g_prime(x, 0.5 * y, m)) > 0.0


def test_player3_loses_by_bidding():
    instance = get_instance(m)
    bids = np.linspace(0.0, instance.beta_max, 201)[1:]
    assert np.all(instance.player3_utility(bids) < 0.0)
    assert float(instance.player3_utility(np.zeros(1))[0]) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(ValueError):
        instance.player3_utility(np.array([-0.1]))


def test_allpay_lower_bound_on_coarse_grids():
    report = verify_allpay_lower_bound(m, grid_values=20, grid_bids=20, player3_bids=100)
    assert report.passed, report.failures
    assert report.ratio_lower == pytest.approx(math.log(m / 2.0) / 12.0, abs=1e-15)
    assert report.sw_eq <= report.sw_chain
    assert report.opt_lower == pytest.approx(math.log(4.0) / 3.0, abs=1e-15)
    assert report.c == pytest.approx(16.0 * report.opt_lower * m * m, rel=1e-15)
    assert set(report.to_dict()) >= {"M", "bne_max_regret", "sw_eq", "ratio_lower", "C", "passed"}


def test_allpay_checks_reach_the_top_of_the_bid_range():
    instance = get_instance(m)
    report = verify_allpay_lower_bound(m, grid_values=20, grid_bids=20, player3_bids=100)
    grids = report.grids
    # beta jumps from about 4.45 to about 6 over the last percent of the support
    assert grids["top_value"] == instance.x_max == m
    assert grids["top_bid"] == pytest.approx(instance.beta_max, abs=1e-12)
    assert grids["top_player3_bid"] == pytest.approx(instance.beta_max, abs=1e-12)
    assert float(instance.beta(0.99 * m)) < instance.beta_max - 1.0
    assert report.stationarity_gap <= 1e-3
    assert report.sw_eq <= report.sw_chain <= report.sw_upper_bound == 4.0
    assert report.to_dict()["sw_upper_bound"] == 4.0


def test_allpay_value_grid_follows_the_steep_tail():
    instance = get_instance(1000.0)
    report = verify_allpay_lower_bound(1000.0, grid_values=10, grid_bids=20, player3_bids=100)
    assert report.passed, report.failures
    assert report.grids["top_value"] == instance.x_max
    assert report.grids["top_bid"] == pytest.approx(instance.beta_max, abs=1e-12)
    assert instance.beta_max > 20.0


def test_reduced_variant_uses_the_smaller_slope():
    main = get_instance(m)
    reduced = get_instance(m, "reduced")
    assert reduced.c == pytest.approx(main.c - m * m, rel=1e-12)


def test_lower_bound_ratio_grows_with_m():
    ratios = [get_instance(x).v3 / 4.0 for x in (8.0, 1000.0, 100000.0)]
    assert ratios == sorted(ratios)
    assert ratios[-1] > 0.9


@pytest.mark.parametrize("gamma", [0.25, 0.5, 1.0])
def test_two_item_opt_out_equilibrium(gamma):
    report = verify_two_item(gamma)
    assert report.passed
    assert report.c == pytest.approx(4.0 / gamma ** 2 + 3.0, abs=1e-12)
    assert report.u2_participate < 0.0
    assert report.sw_eq == pytest.approx(0.01, abs=1e-15)
    assert report.opt_exact == pytest.approx(report.c + 0.01, abs=1e-12)


def test_two_item_ratio_at_full_variance_aversion():
    assert verify_two_item(1.0).ratio == pytest.approx(700.0, rel=1e-12)


def test_two_item_parameters_are_validated():
    with pytest.raises(ValueError):
        TwoItemInstance(0.0, 0.01)
    with pytest.raises(ValueError):
        TwoItemInstance(0.5, 0.0)


def test_two_item_mix_is_a_distribution():
    mix = TwoItemInstance(0.5, 0.01).player1_mix()
    assert mix.sum() == pytest.approx(1.0, abs=1e-15)
    assert mix[2] == 0.0


@pytest.mark.parametrize("gamma,welfare", [(1.0, 0.0), (0.0, 1.0), (0.5, 0.5)])
def test_correlated_zero_welfare(gamma, welfare):
    report = verify_correlated_zero_welfare(gamma)
    assert report.passed
    assert report.max_regret == 0.0
    assert report.sw == pytest.approx(welfare, abs=1e-15)
    if gamma == 1.0:
        assert report.utilities == [0.0, 0.0]


def test_correlated_zero_welfare_rejects_gamma_outside_the_unit_interval():
    with pytest.raises(ValueError):
        verify_correlated_zero_welfare(1.5)


def test_bounded_slope_bound():
    assert bounded_slope_poa_bound(1.0) == 8.0
    assert bounded_slope_poa_bound(3.0) == 16.0
    with pytest.warns(UserWarning):
        assert bounded_slope_poa_bound(0.5) == 6.0
    with pytest.raises(ValueError):
        bounded_slope_poa_bound(-1.0)


def test_quasilinear_allpay_beta_for_uniform_values():
    density = uniform_density()
    assert quasilinear_allpay_beta(density, 1.0) == pytest.approx(0.5, abs=1e-12)
    assert quasilinear_allpay_beta(density, 0.5) == pytest.approx(0.125, abs=1e-12)
    assert expected_value(density, 0.0, 1.0) == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(ValueError):
        quasilinear_allpay_beta(density, -0.5)

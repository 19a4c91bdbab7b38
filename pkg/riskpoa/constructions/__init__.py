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
from .allpay_instance import AllPayLowerBoundInstance
from .allpay_instance import AllPayReport
from .allpay_instance import F_cdf
from .allpay_instance import beta_bid
from .allpay_instance import beta_inverse
from .allpay_instance import f_density
from .allpay_instance import g_prime
from .allpay_instance import g_value
from .allpay_instance import get_instance
from .allpay_instance import player3_utility
from .allpay_instance import verify_allpay_lower_bound
from .bounds import bounded_slope_poa_bound
from .bounds import expected_value
from .bounds import quasilinear_allpay_beta
from .bounds import uniform_density
from .correlated import CorrelatedZeroWelfareReport
from .correlated import alternating_bids
from .correlated import alternating_bids_game
from .correlated import verify_correlated_zero_welfare
from .two_item import TwoItemInstance
from .two_item import TwoItemReport
from .two_item import verify_two_item

__all__ = [
    "AllPayLowerBoundInstance",
    "AllPayReport",
    "F_cdf",
    "beta_bid",
    "beta_inverse",
    "f_density",
    "g_prime",
    "g_value",
    "get_instance",
    "player3_utility",
    "verify_allpay_lower_bound",
    "bounded_slope_poa_bound",
    "expected_value",
    "quasilinear_allpay_beta",
    "uniform_density",
    "CorrelatedZeroWelfareReport",
    "alternating_bids",
    "alternating_bids_game",
    "verify_correlated_zero_welfare",
    "TwoItemInstance",
    "TwoItemReport",
    "verify_two_item",
]

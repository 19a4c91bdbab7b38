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
from dataclasses import dataclass

from riskpoa.equilibria import CompleteInfoGame
from riskpoa.equilibria import CorrelatedDist
from riskpoa.equilibria import ce_regret
from riskpoa.equilibria import expected_utility
from riskpoa.mechanisms import MechanismSpec
from riskpoa.mechanisms import SECOND_PRICE
from riskpoa.mechanisms import UNIFORM
from riskpoa.utility import UtilityModel


@dataclass
class CorrelatedZeroWelfareReport:
    gamma: float
    max_regret: float
    sw: float
    utilities: list
    certified: bool
    passed: bool

    def to_dict(self):
        return dict(gamma=self.gamma, max_regret=self.max_regret, sw=self.sw,
                    utilities=self.utilities, certified=self.certified, passed=self.passed)


def alternating_bids_game():
    """ Second price, two bidders of value 1, bids in {0, 1}, uniform ties. """
    models = [UtilityModel.quasilinear(1.0), UtilityModel.quasilinear(1.0)]
    return CompleteInfoGame(MechanismSpec(SECOND_PRICE, 2, UNIFORM), models, [[0.0, 1.0], [0.0, 1.0]])


def alternating_bids():
    """ Exactly one bidder bids 1, each with probability 1/2. """
    return CorrelatedDist([(1.0, 0.0), (0.0, 1.0)], [0.5, 0.5])


def verify_correlated_zero_welfare(gamma=1.0):
    """ The alternating-bids distribution is a correlated equilibrium for every
    gamma; under full variance aversion (gamma = 1) each bidder's objective is
    1/2 - 1/2 = 0, so its welfare is exactly 0 although both values are 1. """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}.")
    game = alternating_bids_game()
    dist = alternating_bids()
    report = ce_regret(game, dist, gamma)
    utilities = [expected_utility(game, dist, i, gamma=gamma).value for i in range(2)]
    certified = report.max_regret == 0.0
    passed = certified
    if gamma == 1.0:
        passed = passed and report.welfare == 0.0
    elif gamma == 0.0:
        passed = passed and report.welfare == 1.0
    return CorrelatedZeroWelfareReport(gamma=gamma, max_regret=report.max_regret, sw=report.welfare,
                                       utilities=utilities, certified=certified, passed=passed)

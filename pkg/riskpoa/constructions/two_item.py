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
from dataclasses import dataclass

import numpy as np

from riskpoa.equilibria import CompleteInfoGame
from riskpoa.equilibria import CorrelatedDist
from riskpoa.equilibria import cce_regret
from riskpoa.equilibria import expected_utility
from riskpoa.mechanisms import ITEM1
from riskpoa.mechanisms import ITEM2
from riskpoa.mechanisms import MechanismSpec
from riskpoa.mechanisms import OPT_OUT
from riskpoa.mechanisms import TWO_ITEM
from riskpoa.utility import UtilityModel
from riskpoa.welfare import value_welfare

ACTIONS = [float(ITEM1), float(ITEM2), float(OPT_OUT)]


@dataclass
class TwoItemInstance:
    gamma: float
    eps1: float

    def __post_init__(self):
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in (0, 1], got {self.gamma}.")
        if not self.eps1 > 0.0:
            raise ValueError(f"eps1 must be positive, got {self.eps1}.")

    @property
    def c(self):
        return 4.0 / self.gamma ** 2 + 3.0

    @property
    def q(self):
        return self.c - 1.0

    def game(self):
        models = [UtilityModel.quasilinear((self.eps1, self.eps1)), UtilityModel.quasilinear((self.c, 1.0))]
        return CompleteInfoGame(MechanismSpec(TWO_ITEM, 2), models, [ACTIONS, ACTIONS])

    def player1_mix(self):
        return np.array([(self.q - 1.0) / self.q, 1.0 / self.q, 0.0])

    def participation_closed_form(self):
        c, q, gamma = self.c, self.q, self.gamma
        return (c + q - 1.0) / q - gamma * math.sqrt((c - 1.0) ** 2 * (q - 1.0) / q ** 2)

    def participation_simplified(self):
        return 2.0 - self.gamma * math.sqrt(self.c - 2.0)


@dataclass
class TwoItemReport:
    gamma: float
    c: float
    q: float
    u2_participate: float
    u2_closed_form: float
    u2_enumerated: float
    ne_certified: bool
    ne_regret: float
    sw_eq: float
    opt: float
    opt_exact: float
    ratio: float
    passed: bool

    def to_dict(self):
        return dict(gamma=self.gamma, c=self.c, q=self.q, u2_participate=self.u2_participate,
                    u2_closed_form=self.u2_closed_form, u2_enumerated=self.u2_enumerated,
                    ne_certified=self.ne_certified, ne_regret=self.ne_regret, sw_eq=self.sw_eq,
                    opt=self.opt, opt_exact=self.opt_exact, ratio=self.ratio, passed=self.passed)


def verify_two_item(gamma, eps1=0.01):
    """ Variance-averse player 2 opts out of a free lottery over two items.

    Player 1 (values eps1, eps1) names item 1 with probability (q-1)/q and
    item 2 otherwise; player 2 (values c, 1) would receive the other item.
    With q = c - 1 and c = 4/gamma^2 + 3 participation is worth
    2 - gamma sqrt(c - 2) < 0, so opting out is a best response and the
    equilibrium welfare is eps1 against an optimum of c.
    """
    instance = TwoItemInstance(gamma, eps1)
    game = instance.game()
    participate = CorrelatedDist.product(game, [instance.player1_mix(), [1.0, 0.0, 0.0]])
    enumerated = expected_utility(game, participate, 1, gamma=gamma).value

    equilibrium = CorrelatedDist.product(game, [instance.player1_mix(), [0.0, 0.0, 1.0]])
    report = cce_regret(game, equilibrium, gamma)
    simplified = instance.participation_simplified()
    closed = instance.participation_closed_form()
    ne_certified = report.max_regret <= 1e-12
    passed = (ne_certified and abs(closed - enumerated) <= 1e-12 and abs(closed - simplified) <= 1e-12
              and simplified < 0.0)
    return TwoItemReport(gamma=gamma, c=instance.c, q=instance.q, u2_participate=simplified,
                         u2_closed_form=closed, u2_enumerated=enumerated, ne_certified=ne_certified,
                         ne_regret=report.max_regret, sw_eq=report.welfare, opt=instance.c,
                         opt_exact=value_welfare(game.models, game.outcome_space()),
                         ratio=instance.c / report.welfare, passed=passed)

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
from .game import AnalyticBid
from .game import BayesStrategy
from .game import CompleteInfoGame
from .game import ContinuousBids
from .game import CorrelatedDist
from .game import DiscreteBids
from .game import DiscretizedBayesianGame
from .game import PayoffTables
from .game import outcome_values
from .learning import LearningResult
from .learning import learn_hedge
from .learning import learn_regret_matching
from .poa import GameFamily
from .poa import PoAResult
from .poa import empirical_poa
from .poa import make_game_family
from .regret import RegretReport
from .regret import UtilityEstimate
from .regret import WelfareBoundReport
from .regret import bne_regret
from .regret import cce_regret
from .regret import conditional_regret
from .regret import ce_regret
from .regret import deviation_gains
from .regret import expected_utility
from .regret import expected_welfare
from .regret import external_regret
from .regret import internal_regret
from .regret import welfare_bound_check

__all__ = [
    "AnalyticBid",
    "BayesStrategy",
    "CompleteInfoGame",
    "ContinuousBids",
    "CorrelatedDist",
    "DiscreteBids",
    "DiscretizedBayesianGame",
    "PayoffTables",
    "outcome_values",
    "LearningResult",
    "learn_hedge",
    "learn_regret_matching",
    "GameFamily",
    "PoAResult",
    "empirical_poa",
    "make_game_family",
    "RegretReport",
    "UtilityEstimate",
    "WelfareBoundReport",
    "bne_regret",
    "cce_regret",
    "conditional_regret",
    "ce_regret",
    "deviation_gains",
    "expected_utility",
    "expected_welfare",
    "external_regret",
    "internal_regret",
    "welfare_bound_check",
]

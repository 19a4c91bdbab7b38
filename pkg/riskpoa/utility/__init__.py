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
from .lottery import Lottery
from .lottery import mean_minus_std
from .lottery import variance_adjusted
from .model import Infeasible
from .model import UtilityModel
from .model import cap_valuation
from .model import eval_utility
from .model import make_utility_model
from .normalization import NormalizationReport
from .normalization import check_normalization
from .normalization import relaxation_constant
from .transform import ConcaveTransform

__all__ = [
    "Lottery",
    "mean_minus_std",
    "variance_adjusted",
    "Infeasible",
    "UtilityModel",
    "cap_valuation",
    "eval_utility",
    "make_utility_model",
    "NormalizationReport",
    "check_normalization",
    "relaxation_constant",
    "ConcaveTransform",
]

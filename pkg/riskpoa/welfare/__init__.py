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
from .welfare import DoublingReport
from .welfare import OptimumResult
from .welfare import WelfareReport
from .welfare import check_welfare_doubling
from .welfare import liquid_welfare
from .welfare import optimal_welfare
from .welfare import single_item_outcomes
from .welfare import social_welfare
from .welfare import unit_demand_outcomes
from .welfare import value_welfare
from .welfare import welfare_report

__all__ = [
    "DoublingReport",
    "OptimumResult",
    "WelfareReport",
    "check_welfare_doubling",
    "liquid_welfare",
    "optimal_welfare",
    "single_item_outcomes",
    "social_welfare",
    "unit_demand_outcomes",
    "value_welfare",
    "welfare_report",
]

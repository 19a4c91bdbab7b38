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
from .certify import Certificate
from .certify import GridInstance
from .certify import NonnegReport
from .certify import certify_smoothness
from .certify import certify_weak_smoothness
from .certify import check_nonneg_deviation_utility
from .deviation import CustomTable
from .deviation import DeviationGenerator
from .deviation import HalfValueTopBidder
from .deviation import TruthfulBid
from .deviation import UniformTopBidder
from .deviation import ZeroBid
from .deviation import build_deviation
from .params import SmoothnessParams
from .params import WeakSmoothnessParams
from .params import poa_bound
from .params import weak_poa_bound
from .transfer import BudgetTransferReport
from .transfer import budget_transfer_check
from .transfer import risk_transfer

__all__ = [
    "Certificate",
    "GridInstance",
    "NonnegReport",
    "certify_smoothness",
    "certify_weak_smoothness",
    "check_nonneg_deviation_utility",
    "CustomTable",
    "DeviationGenerator",
    "HalfValueTopBidder",
    "TruthfulBid",
    "UniformTopBidder",
    "ZeroBid",
    "build_deviation",
    "SmoothnessParams",
    "WeakSmoothnessParams",
    "poa_bound",
    "weak_poa_bound",
    "BudgetTransferReport",
    "budget_transfer_check",
    "risk_transfer",
]

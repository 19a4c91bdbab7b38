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
from .auction import ALL_PAY
from .auction import FIRST_PRICE
from .auction import ITEM1
from .auction import ITEM2
from .auction import LOWEST_INDEX
from .auction import NO_ITEM
from .auction import OPT_OUT
from .auction import SECOND_PRICE
from .auction import TWO_ITEM
from .auction import UNIFORM
from .auction import AllPay
from .auction import FirstPrice
from .auction import Mechanism
from .auction import MechanismSpec
from .auction import OutcomeRecord
from .auction import SecondPrice
from .auction import SingleItemAuction
from .auction import TwoItemPreference
from .auction import build_mechanism
from .auction import run_mechanism
from .payment import OverbiddingReport
from .payment import check_pointwise_no_overbidding
from .payment import reachable_payments
from .payment import willingness_to_pay

__all__ = [
    "ALL_PAY",
    "FIRST_PRICE",
    "ITEM1",
    "ITEM2",
    "LOWEST_INDEX",
    "NO_ITEM",
    "OPT_OUT",
    "SECOND_PRICE",
    "TWO_ITEM",
    "UNIFORM",
    "AllPay",
    "FirstPrice",
    "Mechanism",
    "MechanismSpec",
    "OutcomeRecord",
    "SecondPrice",
    "SingleItemAuction",
    "TwoItemPreference",
    "build_mechanism",
    "run_mechanism",
    "OverbiddingReport",
    "check_pointwise_no_overbidding",
    "reachable_payments",
    "willingness_to_pay",
]

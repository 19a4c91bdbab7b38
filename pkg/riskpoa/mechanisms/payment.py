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
from dataclasses import field

import numpy as np
import torch

from .auction import NO_ITEM


def _opponent_profiles(mechanism, player, action, bid_grid):
    grid = torch.as_tensor(np.asarray(bid_grid, dtype=np.float64), device=mechanism.device)
    n = mechanism.n_players
    if n == 1:
        return torch.full((1, 1), float(action), dtype=torch.float64, device=mechanism.device)
    others = torch.cartesian_prod(*[grid] * (n - 1)).reshape(-1, n - 1)
    own = torch.full((others.shape[0], 1), float(action), dtype=torch.float64, device=mechanism.device)
    return torch.cat([others[:, :player], own, others[:, player:]], dim=1)


def reachable_payments(mechanism, player, action, bid_grid):
    """ {allocation code: max payment} over every opponent profile on the grid. """
    bids = _opponent_profiles(mechanism, player, action, bid_grid)
    worst = {}
    for prob, code, pay in mechanism.branches(bids):
        prob, code, pay = prob[:, player], code[:, player], pay[:, player]
        for x in torch.unique(code[prob > 0]).tolist():
            mask = (prob > 0) & (code == x)
            worst[x] = max(worst.get(x, -np.inf), float(pay[mask].max()))
    return worst


def willingness_to_pay(mechanism, player, action, allocation, bid_grid):
    """ W_i(a_i, x): the most action `a_i` can ever be charged given allocation x.

    Args:
        mechanism (Mechanism): The rule.
        player (int): Index i.
        action (float): Own action a_i.
        allocation: Allocation code of player i (1/0 for a single item, an
            item index or None for the two-item mechanism).
        bid_grid (sequence): Opponent action grid.

    Raises:
        ValueError: if no opponent profile on the grid yields `allocation`.
    """
    code = NO_ITEM if allocation is None else int(allocation)
    worst = reachable_payments(mechanism, player, action, bid_grid)
    if code not in worst:
        raise ValueError(f"Allocation {allocation} is unreachable for player {player} "
                         f"with action {action} on the opponent grid.")
    return worst[code]


@dataclass
class OverbiddingReport:
    passed: bool
    violation: dict = field(default_factory=dict)


def check_pointwise_no_overbidding(mechanism, support, valuations, bid_grid=None):
    """ W_i(a_i, x) <= v_i(x) for every support action and reachable allocation.

    Args:
        support (list): Per player, the actions played with positive probability.
        valuations (list): Per player a value (single item) or per-item values.
        bid_grid (sequence): Opponent grid, defaults to the union of the supports.
    """
    if bid_grid is None:
        bid_grid = sorted({float(a) for actions in support for a in actions})
    for i, actions in enumerate(support):
        for action in actions:
            for code, payment in sorted(reachable_payments(mechanism, i, action, bid_grid).items()):
                if np.ndim(valuations[i]) == 0:
                    value = float(valuations[i]) * (code > 0)
                else:
                    value = 0.0 if code == NO_ITEM else float(valuations[i][code])
                if payment > value + 1e-12:
                    return OverbiddingReport(False, dict(player=i, action=float(action), allocation=code,
                                                         willingness_to_pay=payment, value=value))
    return OverbiddingReport(True)

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
from abc import ABC
from abc import abstractmethod
from dataclasses import dataclass
from typing import List
from typing import Tuple

import numpy as np
import torch

FIRST_PRICE = "first-price"
SECOND_PRICE = "second-price"
ALL_PAY = "all-pay"
TWO_ITEM = "two-item"
supported_kinds = [FIRST_PRICE, SECOND_PRICE, ALL_PAY, TWO_ITEM]

UNIFORM = "uniform"
LOWEST_INDEX = "lowest-index"
supported_tie_breaks = [UNIFORM, LOWEST_INDEX]

# actions of the two-item preference mechanism
ITEM1 = 0
ITEM2 = 1
OPT_OUT = 2
NO_ITEM = -1


@dataclass(frozen=True)
class MechanismSpec:
    kind: str = FIRST_PRICE
    n_players: int = 2
    tie_break: str = UNIFORM

    def __post_init__(self):
        if self.kind not in supported_kinds:
            raise ValueError(f"Unknown mechanism kind: {self.kind}")
        if self.tie_break not in supported_tie_breaks:
            raise ValueError(f"Unknown tie-break policy: {self.tie_break}")
        if self.n_players < 1:
            raise ValueError(f"A mechanism needs at least one player, got {self.n_players}.")
        if self.kind == TWO_ITEM and self.n_players != 2:
            raise ValueError("The two-item preference mechanism has exactly two players.")


@dataclass(frozen=True)
class OutcomeRecord:
    allocation: tuple
    payments: tuple
    probability: float = 1.0

    def to_dict(self):
        return {"allocation": list(self.allocation), "payments": list(self.payments),
                "probability": self.probability}


class Mechanism(ABC):
    """ Allocation and payment rule over batches of action profiles.

    `branches` is the primitive: for a (batch, n) tensor of actions it lists the
    tie-break branches each player can end up in as (probability, allocation
    code, payment) tensors of shape (batch, n). Everything else (expected
    allocations, exhaustive outcome lists, lotteries) is derived from it.
    """
    single_item = True

    def __init__(self, spec: MechanismSpec, device="cpu"):
        self.spec = spec
        self.n_players = spec.n_players
        self.tie_break = spec.tie_break
        self.device = torch.device(device)

    def _as_bids(self, bids) -> torch.Tensor:
        bids = torch.as_tensor(bids, dtype=torch.float64, device=self.device)
        if bids.dim() == 1:
            bids = bids.unsqueeze(0)
        if bids.shape[-1] != self.n_players:
            raise ValueError(f"Wrong arity: expected {self.n_players} actions per profile, "
                             f"got {bids.shape[-1]}.")
        return bids

    @abstractmethod
    def branches(self, bids) -> List[Tuple[torch.Tensor, torch.Tensor, torch.Tensor]]:
        raise NotImplementedError()

    def run(self, bids) -> Tuple[torch.Tensor, torch.Tensor]:
        """ Expected (allocations, payments) per profile, ties in expectation. """
        allocations, payments = None, None
        for prob, code, pay in self.branches(bids):
            alloc = prob * (code > 0).to(prob.dtype) if self.single_item else prob * code.to(prob.dtype)
            allocations = alloc if allocations is None else allocations + alloc
            payments = prob * pay if payments is None else payments + prob * pay
        return allocations, payments

    def outcomes(self, profile) -> List[OutcomeRecord]:
        """ The full outcome distribution of one profile. """
        records = self._joint_events(self.branches(self._as_bids(profile)))
        assert abs(sum(r.probability for r in records) - 1.0) <= 1e-12 * self.n_players, \
            "Outcome probabilities must sum to 1."
        return records

    @abstractmethod
    def _joint_events(self, branches) -> List[OutcomeRecord]:
        raise NotImplementedError()


class SingleItemAuction(Mechanism, ABC):
    """ Highest bid wins the item; subclasses fix who pays what. """

    def _as_bids(self, bids):
        bids = super()._as_bids(bids)
        if (bids < 0).any():
            raise ValueError(f"Negative bid in profile: {bids[(bids < 0).any(dim=-1)][0].tolist()}")
        return bids

    @abstractmethod
    def win_price(self, bids, highest_other):
        raise NotImplementedError()

    @abstractmethod
    def lose_price(self, bids):
        raise NotImplementedError()

    def win_probabilities(self, bids):
        top = bids.max(dim=-1, keepdim=True).values
        is_top = (bids == top).to(bids.dtype)
        if self.tie_break == UNIFORM:
            return is_top / is_top.sum(dim=-1, keepdim=True)
        first = torch.cumsum(is_top, dim=-1) == 1
        return (is_top.bool() & first).to(bids.dtype)

    def highest_other(self, bids):
        n = bids.shape[-1]
        if n == 1:
            return torch.zeros_like(bids)
        eye = torch.eye(n, dtype=torch.bool, device=bids.device)
        others = bids.unsqueeze(-2).expand(*bids.shape[:-1], n, n).masked_fill(eye, -np.inf)
        return others.max(dim=-1).values

    def branches(self, bids):
        bids = self._as_bids(bids)
        win = self.win_probabilities(bids)
        pay_win = self.win_price(bids, self.highest_other(bids))
        pay_lose = self.lose_price(bids)
        ones = torch.ones_like(bids, dtype=torch.long)
        return [(win, ones, pay_win), (1.0 - win, torch.zeros_like(ones), pay_lose)]

    def _joint_events(self, branches):
        (win, _, pay_win), (_, _, pay_lose) = branches
        win, pay_win, pay_lose = win[0].tolist(), pay_win[0].tolist(), pay_lose[0].tolist()
        events = []
        for j, prob in enumerate(win):
            if prob <= 0.0:
                continue
            allocation = tuple(1 if i == j else 0 for i in range(self.n_players))
            payments = tuple(pay_win[i] if i == j else pay_lose[i] for i in range(self.n_players))
            events.append(OutcomeRecord(allocation, payments, prob))
        return events


class FirstPrice(SingleItemAuction):
    def win_price(self, bids, highest_other):
        return bids.clone()

    def lose_price(self, bids):
        return torch.zeros_like(bids)


class SecondPrice(SingleItemAuction):
    def win_price(self, bids, highest_other):
        return torch.clamp(highest_other, min=0.0)

    def lose_price(self, bids):
        return torch.zeros_like(bids)


class AllPay(SingleItemAuction):
    def win_price(self, bids, highest_other):
        return bids.clone()

    def lose_price(self, bids):
        return bids.clone()


class TwoItemPreference(Mechanism):
    """ Player 1 takes the item she names, player 2 the remaining one unless she opts out.

    Actions are ITEM1, ITEM2 or OPT_OUT for both players; an opted-out player 1
    leaves player 2 the item player 2 names. Nobody pays.
    """
    single_item = False

    def _as_bids(self, bids):
        bids = super()._as_bids(bids)
        valid = (bids == ITEM1) | (bids == ITEM2) | (bids == OPT_OUT)
        if not valid.all():
            raise ValueError(f"Invalid two-item action in {bids.tolist()}, "
                             f"expected {ITEM1}, {ITEM2} or {OPT_OUT}.")
        return bids

    def branches(self, bids):
        actions = self._as_bids(bids).long()
        first, second = actions[..., 0], actions[..., 1]
        first_item = torch.where(first == OPT_OUT, torch.full_like(first, NO_ITEM), first)
        remaining = torch.where(first == OPT_OUT, second, 1 - first)
        second_item = torch.where(second == OPT_OUT, torch.full_like(second, NO_ITEM), remaining)
        codes = torch.stack([first_item, second_item], dim=-1)
        ones = torch.ones(codes.shape, dtype=torch.float64, device=codes.device)
        return [(ones, codes, torch.zeros_like(ones))]

    def run(self, bids):
        (_, codes, payments), = self.branches(bids)
        allocations = torch.zeros(*codes.shape, 2, dtype=torch.float64, device=codes.device)
        for item in (ITEM1, ITEM2):
            allocations[..., item] = (codes == item).to(torch.float64)
        return allocations, payments

    def _joint_events(self, branches):
        (_, codes, payments), = branches
        allocation = tuple(None if c == NO_ITEM else int(c) for c in codes[0].tolist())
        return [OutcomeRecord(allocation, tuple(payments[0].tolist()), 1.0)]


def build_mechanism(spec: MechanismSpec, device="cpu") -> Mechanism:
    if spec.kind == FIRST_PRICE:
        return FirstPrice(spec, device)
    elif spec.kind == SECOND_PRICE:
        return SecondPrice(spec, device)
    elif spec.kind == ALL_PAY:
        return AllPay(spec, device)
    return TwoItemPreference(spec, device)


def run_mechanism(mechanism, profile, exhaustive=True, seed=None):
    """ Outcome of one action profile.

    Args:
        mechanism (Mechanism or MechanismSpec): The rule to run.
        profile (sequence): One action per player.
        exhaustive (bool): Return the whole tie-break distribution. Otherwise a
            single outcome is drawn with `np.random.default_rng(seed)`.

    Returns:
        list of OutcomeRecord if exhaustive, else one OutcomeRecord with probability 1.
    """
    if isinstance(mechanism, MechanismSpec):
        mechanism = build_mechanism(mechanism)
    records = mechanism.outcomes(profile)
    if exhaustive:
        return records
    rng = np.random.default_rng(seed)
    probs = np.array([r.probability for r in records])
    pick = records[int(rng.choice(len(records), p=probs / probs.sum()))]
    return OutcomeRecord(pick.allocation, pick.payments, 1.0)

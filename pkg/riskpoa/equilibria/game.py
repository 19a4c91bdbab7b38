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
from typing import Callable
from typing import Optional

import numpy as np
import torch

from riskpoa.mechanisms import ALL_PAY
from riskpoa.mechanisms import FIRST_PRICE
from riskpoa.mechanisms import LOWEST_INDEX
from riskpoa.mechanisms import NO_ITEM
from riskpoa.mechanisms import Mechanism
from riskpoa.mechanisms import MechanismSpec
from riskpoa.mechanisms import build_mechanism
from riskpoa.welfare import single_item_outcomes
from riskpoa.welfare import unit_demand_outcomes
from riskpoa.welfare import value_welfare


def outcome_values(model, codes):
    """ Map allocation codes from `Mechanism.branches` to v(x) of `model`. """
    codes = np.asarray(codes)
    out = np.zeros(codes.shape, dtype=np.float64)
    for code in np.unique(codes):
        out[codes == code] = model.value_of(None if code == NO_ITEM else int(code))
    return out


def _profiles(grids, device):
    tensors = [torch.as_tensor(g, dtype=torch.float64, device=device) for g in grids]
    if len(tensors) == 1:
        return tensors[0].reshape(-1, 1)
    return torch.cartesian_prod(*tensors).reshape(-1, len(tensors))


def _lotteries(mechanism, profiles):
    """ (probs, codes, payments), each of shape (batch, n, branches). """
    branches = mechanism.branches(profiles)
    probs = torch.stack([b[0] for b in branches], dim=-1).cpu().numpy()
    codes = torch.stack([b[1] for b in branches], dim=-1).cpu().numpy()
    pays = torch.stack([b[2] for b in branches], dim=-1).cpu().numpy()
    return probs, codes, pays


def _as_mechanism(mechanism, device):
    if isinstance(mechanism, MechanismSpec):
        return build_mechanism(mechanism, device)
    assert isinstance(mechanism, Mechanism), f"Expected a Mechanism, got {type(mechanism)}."
    return mechanism


def _check_grid(grid, name, start_at_zero):
    grid = np.asarray(grid, dtype=np.float64).ravel()
    if grid.size == 0:
        raise ValueError(f"{name} must be non-empty.")
    assert np.all(np.diff(grid) > 0), f"{name} must be sorted ascending without repeats."
    if start_at_zero:
        assert grid[0] == 0.0, f"{name} must start at 0, got {grid[0]}."
    return grid


@dataclass
class PayoffTables:
    """ Per-profile outcome lotteries of a complete-information game.

    Lottery arrays have shape `game.shape + (n, branches)`; expectation arrays
    `game.shape + (n,)`.
    """
    probs: np.ndarray
    utility: np.ndarray
    payments: np.ndarray
    expected: np.ndarray
    expected_payment: np.ndarray


class CompleteInfoGame(object):
    def __init__(self, mechanism, models, action_grids, device="cpu"):
        """ A finite game: one utility model and one action grid per player.

        Args:
            mechanism (Mechanism or MechanismSpec): The allocation/payment rule.
            models (list of UtilityModel): Fixed types, one per player.
            action_grids (list of array_like): Sorted action grids.
            device (str): Torch device the mechanism runs on. (default="cpu")
        """
        self.mechanism = _as_mechanism(mechanism, device)
        self.n_players = self.mechanism.n_players
        if len(models) != self.n_players or len(action_grids) != self.n_players:
            raise ValueError(f"Need {self.n_players} models and action grids, "
                             f"got {len(models)} and {len(action_grids)}.")
        self.models = list(models)
        self.grids = [_check_grid(g, f"Action grid of player {i}", False) for i, g in enumerate(action_grids)]
        self.shape = tuple(len(g) for g in self.grids)
        self._tables = None

    @property
    def tables(self) -> PayoffTables:
        if self._tables is None:
            self._tables = self._build_tables()
        return self._tables

    def _build_tables(self):
        probs, codes, pays = _lotteries(self.mechanism, _profiles(self.grids, self.mechanism.device))
        utility = np.empty_like(probs)
        expected = np.empty(probs.shape[:2], dtype=np.float64)
        for i, model in enumerate(self.models):
            vx = outcome_values(model, codes[:, i])
            utility[:, i] = model.evaluate(vx, pays[:, i])
            expected[:, i] = model.expected(probs[:, i], vx, pays[:, i])
        expected_payment = (probs * pays).sum(axis=-1)
        k = probs.shape[-1]
        n = self.n_players
        return PayoffTables(probs=probs.reshape(self.shape + (n, k)),
                            utility=utility.reshape(self.shape + (n, k)),
                            payments=pays.reshape(self.shape + (n, k)),
                            expected=expected.reshape(self.shape + (n,)),
                            expected_payment=expected_payment.reshape(self.shape + (n,)))

    def outcome_space(self):
        if self.mechanism.single_item:
            return single_item_outcomes(self.n_players)
        return unit_demand_outcomes(self.n_players)

    def opt_hat(self):
        return value_welfare(self.models, self.outcome_space())

    def index_of(self, player, action):
        grid = self.grids[player]
        k = int(np.searchsorted(grid, action))
        for j in (k, k - 1):
            if 0 <= j < grid.size and abs(grid[j] - action) <= 1e-12 * max(1.0, abs(action)):
                return j
        raise ValueError(f"Action {action} is not on the grid of player {player}.")


class CorrelatedDist(object):
    def __init__(self, profiles, probs):
        """ A distribution over action profiles, stored sparsely. """
        self.profiles = [tuple(float(a) for a in profile) for profile in profiles]
        self.probs = np.asarray(probs, dtype=np.float64).ravel()
        if len(self.profiles) != self.probs.size:
            raise ValueError(f"{len(self.profiles)} profiles but {self.probs.size} probabilities.")
        if np.any(self.probs < 0.0) or abs(self.probs.sum() - 1.0) > 1e-9:
            raise ValueError(f"Profile probabilities must be non-negative and sum to 1, "
                             f"got sum {self.probs.sum()}.")

    @classmethod
    def point_mass(cls, profile):
        return cls([profile], [1.0])

    @classmethod
    def from_tensor(cls, game, joint):
        joint = np.asarray(joint, dtype=np.float64)
        assert joint.shape == game.shape, f"Joint shape {joint.shape} does not match game {game.shape}."
        joint = joint / joint.sum()
        index = np.argwhere(joint > 0.0)
        profiles = [tuple(game.grids[i][k] for i, k in enumerate(idx)) for idx in index]
        return cls(profiles, joint[tuple(index.T)])

    @classmethod
    def product(cls, game, mixed):
        """ Independent play of per-player mixed strategies over the game grids. """
        joint = np.ones(())
        for strategy in mixed:
            joint = np.multiply.outer(joint, np.asarray(strategy, dtype=np.float64))
        return cls.from_tensor(game, joint)

    def to_tensor(self, game):
        joint = np.zeros(game.shape, dtype=np.float64)
        for profile, prob in zip(self.profiles, self.probs):
            if len(profile) != game.n_players:
                raise ValueError(f"Profile {profile} has the wrong arity for {game.n_players} players.")
            joint[tuple(game.index_of(i, a) for i, a in enumerate(profile))] += prob
        return joint

    def to_dict(self):
        return {"profiles": [list(p) for p in self.profiles], "probs": self.probs.tolist()}


class DiscreteBids(object):
    """ A finitely supported bid distribution. """

    def __init__(self, values, probs):
        values = np.asarray(values, dtype=np.float64).ravel()
        probs = np.asarray(probs, dtype=np.float64).ravel()
        self.values, inverse = np.unique(values, return_inverse=True)
        self.probs = np.bincount(inverse.ravel(), weights=probs, minlength=self.values.size)
        self._cum = np.concatenate([[0.0], np.cumsum(self.probs)])

    def p_below(self, b):
        return self._cum[np.searchsorted(self.values, b, side="left")]

    def p_tie(self, b):
        b = np.asarray(b, dtype=np.float64)
        left = np.searchsorted(self.values, b, side="left")
        right = np.searchsorted(self.values, b, side="right")
        return self._cum[right] - self._cum[left]

    def p_above(self, b):
        return 1.0 - self._cum[np.searchsorted(self.values, b, side="right")]


class ContinuousBids(object):
    """ An atomless bid distribution given by its cdf and survival function. """

    def __init__(self, cdf, sf):
        self.cdf = cdf
        self.sf = sf

    def p_below(self, b):
        return self.cdf(np.asarray(b, dtype=np.float64))

    def p_tie(self, b):
        return np.zeros(np.shape(b))

    def p_above(self, b):
        return self.sf(np.asarray(b, dtype=np.float64))


@dataclass
class AnalyticBid:
    """ A closed-form bid function, evaluated off the bid grid. """
    fn: Callable
    inverse: Optional[Callable] = None

    def __call__(self, values):
        return self.fn(values)


class BayesStrategy(object):
    def __init__(self, per_player):
        """ Type-to-action maps, one entry per player.

        An entry is a vector of bids (pure, one per type grid point), a
        (types, bids) matrix of probabilities over the player's bid grid
        (mixed) or an AnalyticBid.
        """
        self.per_player = list(per_player)

    def _entry(self, game, player):
        entry = self.per_player[player]
        if isinstance(entry, AnalyticBid):
            return entry
        entry = np.asarray(entry, dtype=np.float64)
        n_types = len(game.type_grids[player])
        if entry.ndim == 1:
            assert entry.size == n_types, \
                f"Pure strategy of player {player} has {entry.size} bids for {n_types} types."
        else:
            assert entry.shape == (n_types, game.bid_grids[player].size), \
                f"Mixed strategy of player {player} has shape {entry.shape}."
            assert np.allclose(entry.sum(axis=1), 1.0, atol=1e-9), \
                f"Mixed strategy rows of player {player} must sum to 1."
        return entry

    def bids_for_type(self, game, player, t):
        """ (bids, probs) the strategy plays at type grid index `t`. """
        entry = self._entry(game, player)
        if isinstance(entry, AnalyticBid):
            return np.atleast_1d(entry(np.asarray(game.type_grids[player][t]))).astype(np.float64), np.ones(1)
        if entry.ndim == 1:
            return entry[t:t + 1], np.ones(1)
        support = entry[t] > 0.0
        return game.bid_grids[player][support], entry[t][support]

    def bid_distribution(self, game, player):
        """ The unconditional bid distribution of `player` as seen by opponents. """
        entry = self._entry(game, player)
        if isinstance(entry, AnalyticBid) and game.type_cdf[player] is not None:
            if entry.inverse is None:
                raise ValueError(f"Continuous types of player {player} need the inverse bid function.")
            return ContinuousBids(lambda b: game.type_cdf[player](entry.inverse(b)),
                                  lambda b: game.type_sf[player](entry.inverse(b)))
        probs = game.type_probs[player]
        if isinstance(entry, AnalyticBid):
            return DiscreteBids(entry(game.type_grids[player]), probs)
        if entry.ndim == 1:
            return DiscreteBids(entry, probs)
        return DiscreteBids(game.bid_grids[player], probs @ entry)


class DiscretizedBayesianGame(object):
    def __init__(self, mechanism, models, type_grids, type_probs, bid_grids,
                 type_cdf=None, type_sf=None, device="cpu"):
        """ Independent private types on grids, bids on grids.

        Args:
            mechanism (Mechanism or MechanismSpec): The allocation/payment rule.
            models (list of UtilityModel): Utility shape per player; the type
                sets the valuation through `with_valuation`.
            type_grids (list): Per player the type values (scalars, or per-item
                tuples for unit-demand mechanisms).
            type_probs (list of array_like): Probability of each type point.
            bid_grids (list of array_like): Sorted bid grids starting at 0.
            type_cdf (list of callable or None): Continuous type cdf per player;
                opponents bidding an AnalyticBid are then evaluated against it
                exactly instead of against the type grid.
            type_sf (list of callable or None): Matching survival functions.
        """
        self.mechanism = _as_mechanism(mechanism, device)
        self.n_players = self.mechanism.n_players
        n = self.n_players
        if not (len(models) == len(type_grids) == len(type_probs) == len(bid_grids) == n):
            raise ValueError(f"Need one model, type grid, type distribution and bid grid per player ({n}).")
        self.models = list(models)
        self.type_grids = [np.asarray(g, dtype=np.float64) for g in type_grids]
        self.type_probs = []
        for i, probs in enumerate(type_probs):
            probs = np.asarray(probs, dtype=np.float64).ravel()
            if probs.size != len(self.type_grids[i]):
                raise ValueError(f"Player {i} has {len(self.type_grids[i])} types but {probs.size} probabilities.")
            if np.any(probs < 0.0) or abs(probs.sum() - 1.0) > 1e-9:
                raise ValueError(f"Type probabilities of player {i} must sum to 1, got {probs.sum()}.")
            self.type_probs.append(probs)
        start_at_zero = self.mechanism.single_item
        self.bid_grids = [_check_grid(g, f"Bid grid of player {i}", start_at_zero) for i, g in enumerate(bid_grids)]
        self.type_cdf = list(type_cdf) if type_cdf is not None else [None] * n
        self.type_sf = list(type_sf) if type_sf is not None else [None] * n

    def model_for(self, player, t):
        value = self.type_grids[player][t]
        return self.models[player].with_valuation(tuple(value) if np.ndim(value) else float(value))

    def interim_lotteries(self, strategy, player, bids):
        """ Outcome lotteries of `player` bidding each of `bids` against `strategy`.

        Returns (probs, codes, payments), each of shape (len(bids), outcomes).
        """
        bids = np.asarray(bids, dtype=np.float64).ravel()
        opponents = [strategy.bid_distribution(self, j) for j in range(self.n_players) if j != player]
        if all(isinstance(d, DiscreteBids) for d in opponents):
            return self._enumerated_lotteries(opponents, player, bids)
        return self._marginal_lotteries(opponents, player, bids)

    def _enumerated_lotteries(self, opponents, player, bids):
        n, device = self.n_players, self.mechanism.device
        if opponents:
            others = _profiles([d.values for d in opponents], device)
            weight = np.ones(1)
            for d in opponents:
                weight = np.multiply.outer(weight, d.probs).ravel()
        else:
            others = torch.zeros((1, 0), dtype=torch.float64, device=device)
            weight = np.ones(1)
        q = others.shape[0]
        own = torch.as_tensor(bids, dtype=torch.float64, device=device).repeat_interleave(q).unsqueeze(1)
        others = others.repeat(bids.size, 1)
        profiles = torch.cat([others[:, :player], own, others[:, player:]], dim=1)
        probs, codes, pays = _lotteries(self.mechanism, profiles)
        k = probs.shape[-1]
        probs = probs[:, player].reshape(bids.size, q, k) * weight[None, :, None]
        return (probs.reshape(bids.size, -1),
                codes[:, player].reshape(bids.size, -1),
                pays[:, player].reshape(bids.size, -1))

    def _marginal_lotteries(self, opponents, player, bids):
        kind = self.mechanism.spec.kind
        if kind not in (FIRST_PRICE, ALL_PAY):
            raise ValueError(f"Continuous opponent bids are supported for first-price and all-pay, not {kind}.")
        index = [j for j in range(self.n_players) if j != player]
        below = np.stack([d.p_below(bids) for d in opponents])
        tie = np.stack([d.p_tie(bids) for d in opponents])
        above = np.stack([d.p_above(bids) for d in opponents])
        if self.mechanism.tie_break == LOWEST_INDEX or not np.any(tie > 0.0):
            # an opponent blocks the win by bidding above, or by tying with a lower index
            fail = np.stack([above[k] + (tie[k] if index[k] < player else 0.0) for k in range(len(index))])
            with np.errstate(divide="ignore"):
                log_ok = np.log1p(-np.minimum(fail, 1.0)).sum(axis=0)
            win, lose = np.exp(log_ok), -np.expm1(log_ok)
        else:
            # distribution of the number of tied opponents given nobody bids above
            ties = np.zeros((len(index) + 1, bids.size))
            ties[0] = 1.0
            for k in range(len(index)):
                shifted = np.zeros_like(ties)
                shifted[1:] = ties[:-1] * tie[k]
                ties = ties * below[k] + shifted
            share = 1.0 / (1.0 + np.arange(len(index) + 1))
            win = (ties * share[:, None]).sum(axis=0)
            lose = 1.0 - win
        lose_pay = bids if kind == ALL_PAY else np.zeros_like(bids)
        probs = np.stack([win, lose], axis=-1)
        codes = np.stack([np.ones(bids.size, dtype=np.int64), np.zeros(bids.size, dtype=np.int64)], axis=-1)
        pays = np.stack([bids, lose_pay], axis=-1)
        return probs, codes, pays

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
from collections import namedtuple
from dataclasses import dataclass
from dataclasses import field
from typing import Optional

import numpy as np
import torch

from riskpoa.utility import mean_minus_std
from .game import AnalyticBid
from .game import BayesStrategy
from .game import CompleteInfoGame
from .game import CorrelatedDist
from .game import outcome_values

UtilityEstimate = namedtuple("UtilityEstimate", ["value", "sem"])


@dataclass
class RegretReport:
    max_regret: float
    coarse_regret: float
    welfare: float
    details: list = field(default_factory=list)
    weighted_regret: Optional[float] = None

    def to_dict(self):
        out = {"max_regret": self.max_regret, "coarse_regret": self.coarse_regret,
               "welfare": self.welfare, "details": self.details}
        if self.weighted_regret is not None:
            out["weighted_regret"] = self.weighted_regret
        return out


@dataclass
class WelfareBoundReport:
    passed: bool
    welfare: float
    bound: float
    opt_hat: float
    slack: float

    def to_dict(self):
        return {"passed": self.passed, "welfare": self.welfare, "bound": self.bound,
                "opt_hat": self.opt_hat, "slack": self.slack}


def _player_axis(array, player, ndim):
    """ Move the player's action axis first and flatten the opponents. """
    moved = np.moveaxis(array, player, 0)
    return moved.reshape(moved.shape[0], -1, *array.shape[ndim:])


def _joint(game, dist):
    if isinstance(dist, CorrelatedDist):
        return dist.to_tensor(game)
    joint = np.asarray(dist, dtype=np.float64)
    assert joint.shape == game.shape, f"Joint shape {joint.shape} does not match game {game.shape}."
    return joint


def deviation_gains(joint, utility, player):
    """ gains[a, a'] = sum over a_-i of D(a, a_-i) (u(a', a_-i) - u(a, a_-i)).

    `joint` may hold unnormalised counts; gains scale with it.
    """
    d = _player_axis(joint, player, joint.ndim)
    u = _player_axis(utility, player, joint.ndim)
    m = d @ u.T
    return m - np.diag(m)[:, None]


def internal_regret(game, joint):
    """ max over players and swaps a -> a' of the probability-weighted gain. """
    joint = joint / joint.sum()
    worst = 0.0
    for i in range(game.n_players):
        worst = max(worst, float(deviation_gains(joint, game.tables.expected[..., i], i).max()))
    return worst


def conditional_regret(game, joint):
    """ max over players and recommendations a with P(a) > 0 of the best swap
    gain conditional on a, not weighted by P(a). """
    joint = joint / joint.sum()
    worst = 0.0
    for i in range(game.n_players):
        gains = deviation_gains(joint, game.tables.expected[..., i], i)
        marginal = _player_axis(joint, i, joint.ndim).sum(axis=1)
        support = marginal > 0.0
        worst = max(worst, float((gains[support] / marginal[support, None]).max()))
    return worst


def external_regret(game, joint):
    """ max over players of the best fixed deviation against the joint. """
    joint = joint / joint.sum()
    worst = 0.0
    for i in range(game.n_players):
        gains = deviation_gains(joint, game.tables.expected[..., i], i)
        worst = max(worst, float(gains.sum(axis=0).max()))
    return worst


def _lottery_objective(probs, values, gamma):
    return mean_minus_std(probs.reshape(probs.shape[0], -1), values.reshape(values.shape[0], -1), gamma)


def _conditional_objectives(game, joint, player, gamma):
    """ (k, k) table: objective of a' conditional on recommendation a, and P(a). """
    t = game.tables
    ndim = len(game.shape)
    d = _player_axis(joint, player, ndim)
    marginal = d.sum(axis=1)
    if gamma == 0:
        u = _player_axis(t.expected[..., player], player, ndim)
        with np.errstate(invalid="ignore", divide="ignore"):
            table = (d @ u.T) / marginal[:, None]
        return table, marginal
    lp = _player_axis(t.probs[..., player, :], player, ndim)
    lu = _player_axis(t.utility[..., player, :], player, ndim)
    table = np.full((marginal.size, marginal.size), np.nan)
    for a in np.flatnonzero(marginal > 0.0):
        cond = d[a] / marginal[a]
        table[a] = _lottery_objective(cond[None, :, None] * lp, lu, gamma)
    return table, marginal


def _current_objective(game, joint, player, gamma):
    t = game.tables
    if gamma == 0:
        return float((joint * t.expected[..., player]).sum())
    probs = joint[..., None] * t.probs[..., player, :]
    return float(mean_minus_std(probs.ravel(), t.utility[..., player, :].ravel(), gamma))


def _coarse_objectives(game, joint, player, gamma):
    t = game.tables
    ndim = len(game.shape)
    marginal = _player_axis(joint, player, ndim).sum(axis=0)
    if gamma == 0:
        u = _player_axis(t.expected[..., player], player, ndim)
        return u @ marginal
    lp = _player_axis(t.probs[..., player, :], player, ndim)
    lu = _player_axis(t.utility[..., player, :], player, ndim)
    return _lottery_objective(marginal[None, :, None] * lp, lu, gamma)


def expected_welfare(game, dist, gamma=0.0):
    """ Sum of (variance-adjusted) utilities plus expected payments under `dist`. """
    joint = _joint(game, dist)
    paid = float((joint[..., None] * game.tables.expected_payment).sum())
    return sum(_current_objective(game, joint, i, gamma) for i in range(game.n_players)) + paid


def _coarse_regret(game, joint, gamma):
    worst = 0.0
    for i in range(game.n_players):
        current = _current_objective(game, joint, i, gamma)
        worst = max(worst, float(np.max(_coarse_objectives(game, joint, i, gamma))) - current)
    return worst


def ce_regret(game: CompleteInfoGame, dist, gamma=0.0):
    """ Correlated-equilibrium regret of `dist`.

    For every player and recommended action a with P(a) > 0 the conditional
    objective (expectation, or E - gamma * std when gamma > 0) of every grid
    action is compared with that of a. `max_regret` is the largest conditional
    gain over all players and recommendations, however rare; `weighted_regret`
    multiplies each gain by P(a) and equals `internal_regret` when gamma = 0.
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}.")
    joint = _joint(game, dist)
    joint = joint / joint.sum()
    details, worst, weighted = [], 0.0, 0.0
    for i in range(game.n_players):
        table, marginal = _conditional_objectives(game, joint, i, gamma)
        for a in np.flatnonzero(marginal > 0.0):
            gains = table[a] - table[a, a]
            best = int(np.argmax(gains))
            regret = max(float(gains[best]), 0.0)
            worst = max(worst, regret)
            weighted = max(weighted, float(marginal[a]) * regret)
            details.append(dict(player=i, action=float(game.grids[i][a]), probability=float(marginal[a]),
                                regret=regret, best_deviation=float(game.grids[i][best])))
    return RegretReport(max_regret=worst, coarse_regret=_coarse_regret(game, joint, gamma),
                        welfare=expected_welfare(game, joint, gamma), details=details,
                        weighted_regret=weighted)


def cce_regret(game: CompleteInfoGame, dist, gamma=0.0):
    """ Coarse regret: the best fixed deviation of each player against `dist`. """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}.")
    joint = _joint(game, dist)
    details = []
    for i in range(game.n_players):
        objectives = _coarse_objectives(game, joint, i, gamma)
        best = int(np.argmax(objectives))
        regret = max(float(objectives[best]) - _current_objective(game, joint, i, gamma), 0.0)
        details.append(dict(player=i, regret=regret, best_deviation=float(game.grids[i][best])))
    coarse = max(d["regret"] for d in details)
    return RegretReport(max_regret=coarse, coarse_regret=coarse,
                        welfare=expected_welfare(game, joint, gamma), details=details)


def _interim_objectives(model, lotteries, gamma):
    probs, codes, pays = lotteries
    vx = outcome_values(model, codes)
    if gamma == 0:
        return model.expected(probs, vx, pays), (probs * pays).sum(axis=-1)
    return mean_minus_std(probs, model.evaluate(vx, pays), gamma), (probs * pays).sum(axis=-1)


def bne_regret(game, strategy: BayesStrategy, gamma=0.0, players=None, relative=False):
    """ Interim regret of `strategy` per player and type grid point.

    The current objective of each type is compared with the best bid on the
    player's bid grid. With `relative` every regret is divided by the largest
    type value of its player.
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}.")
    players = range(game.n_players) if players is None else players
    details, worst, welfare = [], 0.0, 0.0
    for i in players:
        grid = game.bid_grids[i]
        scale = float(np.max(game.type_grids[i])) if relative else 1.0
        # lotteries of grid bids do not depend on the own type
        grid_lotteries = game.interim_lotteries(strategy, i, grid)
        for t in range(len(game.type_grids[i])):
            model = game.model_for(i, t)
            bids, weights = strategy.bids_for_type(game, i, t)
            objectives, _ = _interim_objectives(model, grid_lotteries, gamma)
            own, paid = _interim_objectives(model, game.interim_lotteries(strategy, i, bids), gamma)
            current = float(weights @ own)
            best = int(np.argmax(objectives))
            regret = max(float(objectives[best]) - current, 0.0) / scale
            worst = max(worst, regret)
            welfare += game.type_probs[i][t] * (current + float(weights @ paid))
            details.append(dict(player=i, type=t, value=np.asarray(game.type_grids[i][t]).tolist(),
                                current=current, best=float(objectives[best]),
                                best_bid=float(grid[best]), regret=regret))
    return RegretReport(max_regret=worst, coarse_regret=worst, welfare=welfare, details=details)


def expected_utility(game, strategy, player, conditioning=None, mode="exact", seed=None,
                     n_samples=100000, gamma=0.0):
    """ Expected objective of `player` under a correlated or Bayesian strategy.

    Args:
        game (CompleteInfoGame or DiscretizedBayesianGame): The game.
        strategy (CorrelatedDist or BayesStrategy): The candidate.
        player (int): Index i.
        conditioning (tuple or None): ("action", a_i) for a correlated
            distribution, ("type", type index) for a Bayesian strategy.
        mode (str): "exact" enumerates the support, "monte-carlo" averages
            `n_samples` draws from `np.random.default_rng(seed)`. Tie-breaks
            are always taken in expectation.
        gamma (float): Standard-deviation weight; exact mode only.

    Returns:
        UtilityEstimate(value, sem), sem = 0 in exact mode.
    """
    if mode not in ("exact", "monte-carlo"):
        raise ValueError(f"Unknown evaluation mode: {mode}")
    if mode == "monte-carlo" and gamma != 0:
        raise ValueError("Variance-adjusted objectives are evaluated exactly.")
    if isinstance(strategy, CorrelatedDist):
        return _correlated_utility(game, strategy, player, conditioning, mode, seed, n_samples, gamma)
    return _bayes_utility(game, strategy, player, conditioning, mode, seed, n_samples, gamma)


def _correlated_utility(game, dist, player, conditioning, mode, seed, n_samples, gamma):
    joint = dist.to_tensor(game)
    if conditioning is not None:
        kind, action = conditioning
        if kind != "action":
            raise ValueError(f"A correlated distribution conditions on own actions, not {kind}.")
        a = game.index_of(player, action)
        mask = np.zeros(game.shape[player], dtype=bool)
        mask[a] = True
        shape = [1] * len(game.shape)
        shape[player] = -1
        joint = joint * mask.reshape(shape)
        if joint.sum() <= 0.0:
            raise ValueError(f"Conditioning event a_{player} = {action} has probability 0.")
        joint = joint / joint.sum()
    if mode == "exact":
        return UtilityEstimate(_current_objective(game, joint, player, gamma), 0.0)
    rng = np.random.default_rng(seed)
    flat = joint.ravel()
    draws = rng.choice(flat.size, size=n_samples, p=flat / flat.sum())
    values = game.tables.expected[..., player].ravel()[draws]
    return UtilityEstimate(float(values.mean()), float(values.std(ddof=1) / np.sqrt(n_samples)))


def _bayes_utility(game, strategy, player, conditioning, mode, seed, n_samples, gamma):
    if conditioning is not None and conditioning[0] != "type":
        raise ValueError(f"A Bayesian strategy conditions on own types, not {conditioning[0]}.")
    own_types = [conditioning[1]] if conditioning is not None else range(len(game.type_grids[player]))
    if mode == "exact":
        total = 0.0
        for t in own_types:
            bids, weights = strategy.bids_for_type(game, player, t)
            objectives, _ = _interim_objectives(game.model_for(player, t),
                                                game.interim_lotteries(strategy, player, bids), gamma)
            prob = 1.0 if conditioning is not None else game.type_probs[player][t]
            total += prob * float(weights @ objectives)
        return UtilityEstimate(total, 0.0)

    rng = np.random.default_rng(seed)
    if conditioning is not None:
        types = np.full(n_samples, conditioning[1])
    else:
        types = rng.choice(len(game.type_grids[player]), size=n_samples, p=game.type_probs[player])
    columns = []
    for j in range(game.n_players):
        if j == player:
            columns.append(_sample_bids(game, strategy, j, types, rng))
            continue
        if isinstance(strategy.per_player[j], AnalyticBid) and game.type_cdf[j] is not None:
            raise ValueError("Monte-Carlo evaluation needs discrete opponent types.")
        draws = rng.choice(len(game.type_grids[j]), size=n_samples, p=game.type_probs[j])
        columns.append(_sample_bids(game, strategy, j, draws, rng))
    profiles = torch.as_tensor(np.stack(columns, axis=1), dtype=torch.float64, device=game.mechanism.device)
    branches = game.mechanism.branches(profiles)
    probs = np.stack([b[0][:, player].cpu().numpy() for b in branches], axis=-1)
    codes = np.stack([b[1][:, player].cpu().numpy() for b in branches], axis=-1)
    pays = np.stack([b[2][:, player].cpu().numpy() for b in branches], axis=-1)
    values = np.empty(n_samples)
    for t in np.unique(types):
        model = game.model_for(player, t)
        rows = types == t
        values[rows] = model.expected(probs[rows], outcome_values(model, codes[rows]), pays[rows])
    return UtilityEstimate(float(values.mean()), float(values.std(ddof=1) / np.sqrt(n_samples)))


def _sample_bids(game, strategy, player, types, rng):
    out = np.empty(types.size)
    for t in np.unique(types):
        rows = np.flatnonzero(types == t)
        bids, weights = strategy.bids_for_type(game, player, t)
        out[rows] = bids[rng.choice(bids.size, size=rows.size, p=weights / weights.sum())]
    return out


def welfare_bound_check(game, dist, params, report=None, atol=1e-9):
    """ Welfare of `dist` against bound * OPT-hat - n * coarse regret.

    `params` is a SmoothnessParams or WeakSmoothnessParams; `report` a
    RegretReport of `dist` (computed when missing).
    """
    if report is None:
        report = ce_regret(game, dist)
    bound = params.bound()
    opt_hat = game.opt_hat()
    slack = game.n_players * report.coarse_regret
    passed = report.welfare >= bound * opt_hat - slack - atol
    return WelfareBoundReport(passed=bool(passed), welfare=report.welfare, bound=bound,
                              opt_hat=opt_hat, slack=slack)

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
import itertools
from dataclasses import dataclass
from dataclasses import field
from typing import Optional

import numpy as np
import torch

from riskpoa.equilibria.game import _as_mechanism
from riskpoa.equilibria.game import _lotteries
from riskpoa.equilibria.game import _profiles
from riskpoa.equilibria.game import outcome_values
from riskpoa.mechanisms import reachable_payments
from riskpoa.utility import UtilityModel
from riskpoa.welfare import liquid_welfare
from riskpoa.welfare import optimal_welfare
from riskpoa.welfare import single_item_outcomes
from riskpoa.welfare import unit_demand_outcomes
from riskpoa.welfare import value_welfare
from .params import SmoothnessParams
from .params import WeakSmoothnessParams

supported_benchmarks = ["value", "risk", "liquid"]


@dataclass
class GridInstance:
    """ A mechanism, per-player utility shapes, type grids and one action grid.

    Type profiles are the product of `value_grids`; action profiles the
    `n`-fold product of `bid_grid`. `deviation_values` optionally replaces the
    valuations the deviation rule sees (budget-capped values, for example).
    """
    mechanism: object
    models: list
    value_grids: list
    bid_grid: np.ndarray
    device: str = "cpu"
    deviation_values: Optional[object] = None

    def __post_init__(self):
        self.mechanism = _as_mechanism(self.mechanism, self.device)
        self.bid_grid = np.asarray(self.bid_grid, dtype=np.float64)
        if self.bid_grid.size == 0 or any(len(g) == 0 for g in self.value_grids):
            raise ValueError("Certification grids must be non-empty.")
        if len(self.models) != self.mechanism.n_players or len(self.value_grids) != self.mechanism.n_players:
            raise ValueError(f"Need one model and value grid per player ({self.mechanism.n_players}).")

    @property
    def n_players(self):
        return self.mechanism.n_players

    def type_profiles(self):
        return itertools.product(*[list(g) for g in self.value_grids])

    def models_for(self, valuations):
        return [m.with_valuation(tuple(v) if np.ndim(v) else float(v)) for m, v in zip(self.models, valuations)]

    def outcome_space(self):
        if self.mechanism.single_item:
            return single_item_outcomes(self.n_players)
        return unit_demand_outcomes(self.n_players)

    def grid_spec(self):
        return {"n_bids": int(self.bid_grid.size), "bid_max": float(self.bid_grid.max()),
                "n_values": [len(g) for g in self.value_grids],
                "n_profiles": int(self.bid_grid.size ** self.n_players)}


@dataclass
class Certificate:
    certified: bool
    params: dict
    grid: dict
    min_slack: float
    counterexample: Optional[dict] = None

    def to_dict(self):
        out = {"certified": self.certified, "params": self.params, "grid": self.grid,
               "min_slack": self.min_slack}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class NonnegReport:
    passed: bool
    checked: int = 0
    violation: dict = field(default_factory=dict)


class _ProfileScan(object):
    """ Lotteries of every action profile and of every unilateral deviation. """

    def __init__(self, instance):
        self.instance = instance
        self.mechanism = instance.mechanism
        self.grid = instance.bid_grid
        n, k = instance.n_players, instance.bid_grid.size
        self.profiles = _profiles([self.grid] * n, self.mechanism.device)
        self.probs, self.codes, self.pays = _lotteries(self.mechanism, self.profiles)
        self.index = np.array(list(itertools.product(range(k), repeat=n)), dtype=np.int64).reshape(-1, n)
        self.opponents = []
        for i in range(n):
            rest = np.delete(self.index, i, axis=1)
            self.opponents.append(np.ravel_multi_index(rest.T, (k,) * (n - 1)) if n > 1
                                  else np.zeros(len(self.index), dtype=np.int64))
        self._cache = {}

    def deviation_lottery(self, player, action):
        key = (player, float(action))
        if key not in self._cache:
            n = self.instance.n_players
            device = self.mechanism.device
            if n > 1:
                others = _profiles([self.grid] * (n - 1), device)
            else:
                others = torch.zeros((1, 0), dtype=torch.float64, device=device)
            own = torch.full((others.shape[0], 1), float(action), dtype=torch.float64, device=device)
            profiles = torch.cat([others[:, :player], own, others[:, player:]], dim=1)
            probs, codes, pays = _lotteries(self.mechanism, profiles)
            self._cache[key] = (probs[:, player], codes[:, player], pays[:, player])
        return self._cache[key]

    def payment_sum(self):
        return (self.probs * self.pays).sum(axis=(-1, -2))

    def willingness_sum(self):
        """ E over tie-breaks of sum_i W_i(a_i, x_i) for every profile. """
        total = np.zeros(len(self.index))
        for i in range(self.instance.n_players):
            for a, action in enumerate(self.grid):
                worst = reachable_payments(self.mechanism, i, action, self.grid)
                rows = self.index[:, i] == a
                probs, codes = self.probs[rows, i], self.codes[rows, i]
                w = np.zeros(probs.shape)
                for code, payment in worst.items():
                    w[codes == code] = payment
                total[rows] += np.where(probs > 0.0, probs * w, 0.0).sum(axis=-1)
        return total

    def deviation_utility(self, model, valuations, player, dev):
        """ E[u_i(a*_i(theta, a_i), a_-i)] for every profile. """
        shown = self.instance.deviation_values
        seen = valuations if shown is None else shown(valuations)
        out = np.empty(len(self.index))
        groups = range(self.grid.size) if dev.uses_own_action else [None]
        for a in groups:
            own = self.grid[a] if a is not None else None
            actions, weights = dev(seen, player, own, self.grid)
            value = np.zeros(self.grid.size ** (self.instance.n_players - 1))
            for action, weight in zip(actions, weights):
                probs, codes, pays = self.deviation_lottery(player, action)
                value = value + weight * model.expected(probs, outcome_values(model, codes), pays)
            rows = slice(None) if a is None else self.index[:, player] == a
            out[rows] = value[self.opponents[player][rows]]
        return out


def _benchmark(instance, models, benchmark, n_payments):
    if benchmark == "value":
        return value_welfare(models, instance.outcome_space())
    elif benchmark == "risk":
        return optimal_welfare(models, instance.outcome_space(), n_payments).value
    elif benchmark == "liquid":
        return liquid_welfare(models, instance.outcome_space(), n_payments).value
    raise ValueError(f"Unknown benchmark: {benchmark}")


def certify_weak_smoothness(instance: GridInstance, dev, params: WeakSmoothnessParams, benchmark="value",
                            n_payments=512, atol=1e-9):
    """ Scan sum_i u_i(a*_i, a_-i) >= lam OPT - mu1 sum_i p_i - mu2 sum_i W_i over the grids.

    Every type profile is combined with every action profile; the first
    violating pair is returned as the counterexample, otherwise the smallest
    slack is recorded.
    """
    if benchmark not in supported_benchmarks:
        raise ValueError(f"Unknown benchmark: {benchmark}")
    scan = _ProfileScan(instance)
    paid = scan.payment_sum()
    wtp = scan.willingness_sum() if params.mu2 != 0.0 else None

    min_slack = np.inf
    for valuations in instance.type_profiles():
        models = instance.models_for(valuations)
        lhs = sum(scan.deviation_utility(m, valuations, i, dev) for i, m in enumerate(models))
        rhs = params.lam * _benchmark(instance, models, benchmark, n_payments) - params.mu1 * paid
        if wtp is not None:
            rhs = rhs - params.mu2 * wtp
        slack = lhs - rhs
        bad = np.flatnonzero(slack < -atol)
        if bad.size:
            p = int(bad[0])
            example = dict(valuations=[np.asarray(v).tolist() for v in valuations],
                           profile=scan.grid[scan.index[p]].tolist(),
                           lhs=float(lhs[p]), rhs=float(rhs[p]), slack=float(slack[p]))
            return Certificate(False, params.to_dict(), instance.grid_spec(), float(slack[p]), example)
        min_slack = min(min_slack, float(slack.min()))
    return Certificate(True, params.to_dict(), instance.grid_spec(), min_slack)


def certify_smoothness(instance: GridInstance, dev, params: SmoothnessParams, benchmark="value",
                       n_payments=512, atol=1e-9):
    """ (lambda, mu)-smoothness on the grids, the weak check with mu2 = 0. """
    certificate = certify_weak_smoothness(instance, dev, WeakSmoothnessParams.from_smoothness(params),
                                          benchmark, n_payments, atol)
    certificate.params = params.to_dict()
    return certificate


def check_nonneg_deviation_utility(instance: GridInstance, dev, atol=1e-12):
    """ Quasilinear utility of every support action of the deviation is >= 0
    against every opponent profile on the grid. """
    scan = _ProfileScan(instance)
    shown = instance.deviation_values
    checked = 0
    for valuations in instance.type_profiles():
        seen = valuations if shown is None else shown(valuations)
        for i, v in enumerate(valuations):
            model = UtilityModel.quasilinear(tuple(v) if np.ndim(v) else float(v))
            owns = scan.grid if dev.uses_own_action else [None]
            for own in owns:
                actions, _ = dev(seen, i, own, scan.grid)
                for action in actions:
                    probs, codes, pays = scan.deviation_lottery(i, action)
                    utility = model.expected(probs, outcome_values(model, codes), pays)
                    checked += utility.size
                    worst = int(np.argmin(utility))
                    if utility[worst] < -atol:
                        others = list(itertools.product(scan.grid.tolist(), repeat=instance.n_players - 1))
                        return NonnegReport(False, checked, dict(
                            valuations=[np.asarray(x).tolist() for x in valuations], player=i,
                            action=float(action), opponents=list(others[worst]),
                            utility=float(utility[worst])))
    return NonnegReport(True, checked)

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

import numpy as np

supported = ["half-value-top-bidder", "uniform-top-bidder", "truthful", "zero-bid"]


def _top_player(valuations):
    values = [float(np.max(v)) for v in valuations]
    return int(np.argmax(values)), max(values)


class DeviationGenerator(ABC):
    """ Randomised deviation a*_i(theta, a_i) with an explicit finite support.

    Calling the generator returns (actions, probabilities) for one player.
    `uses_own_action` tells certifiers whether the rule reads a_i at all.
    """
    name = "deviation"
    uses_own_action = False

    @abstractmethod
    def __call__(self, valuations, player, own_action, grid):
        raise NotImplementedError()


class HalfValueTopBidder(DeviationGenerator):
    """ The highest-value player bids half her value, everyone else bids 0. """
    name = "half-value-top-bidder"

    def __call__(self, valuations, player, own_action, grid):
        top, value = _top_player(valuations)
        return np.array([value / 2.0 if player == top else 0.0]), np.ones(1)


class UniformTopBidder(DeviationGenerator):
    """ The highest-value player bids uniformly on [0, v_h], everyone else 0.

    Against opponents on `grid` the uniform bid is represented exactly by the
    midpoints of the grid cells inside [0, v_h], weighted by cell width.
    """
    name = "uniform-top-bidder"

    def __call__(self, valuations, player, own_action, grid):
        top, value = _top_player(valuations)
        if player != top or value <= 0.0:
            return np.zeros(1), np.ones(1)
        grid = np.asarray(grid, dtype=np.float64)
        edges = np.unique(np.concatenate([[0.0], grid[(grid > 0.0) & (grid < value)], [value]]))
        return (edges[:-1] + edges[1:]) / 2.0, np.diff(edges) / value


class TruthfulBid(DeviationGenerator):
    name = "truthful"

    def __call__(self, valuations, player, own_action, grid):
        return np.array([float(np.max(valuations[player]))]), np.ones(1)


class ZeroBid(DeviationGenerator):
    name = "zero-bid"

    def __call__(self, valuations, player, own_action, grid):
        return np.zeros(1), np.ones(1)


class CustomTable(DeviationGenerator):
    def __init__(self, rule):
        """ A user deviation: either a callable with the generator signature or
        a dict {(player, own_action): [(action, probability), ...]}. """
        self.rule = rule
        self.name = "custom"
        self.uses_own_action = True

    def __call__(self, valuations, player, own_action, grid):
        if callable(self.rule):
            actions, probs = self.rule(valuations, player, own_action, grid)
        else:
            key = (player, float(own_action))
            if key not in self.rule:
                raise ValueError(f"Custom deviation table has no entry for {key}.")
            actions, probs = zip(*self.rule[key])
        actions = np.asarray(actions, dtype=np.float64)
        probs = np.asarray(probs, dtype=np.float64)
        assert abs(probs.sum() - 1.0) <= 1e-12, f"Deviation probabilities sum to {probs.sum()}."
        return actions, probs


def build_deviation(name):
    if name == "half-value-top-bidder":
        return HalfValueTopBidder()
    elif name == "uniform-top-bidder":
        return UniformTopBidder()
    elif name == "truthful":
        return TruthfulBid()
    elif name == "zero-bid":
        return ZeroBid()
    raise ValueError(f"Unknown deviation: {name}")

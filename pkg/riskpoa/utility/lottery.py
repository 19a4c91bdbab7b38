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
import numpy as np


class Lottery(object):
    def __init__(self, probs, values):
        """ Finite lottery over quasilinear utility values (money). """
        self.probs = np.asarray(probs, dtype=np.float64).ravel()
        self.values = np.asarray(values, dtype=np.float64).ravel()
        assert self.probs.shape == self.values.shape, \
            f"Lottery has {self.probs.size} probabilities but {self.values.size} values."
        if np.any(self.probs < 0.0) or abs(self.probs.sum() - 1.0) > 1e-12:
            raise ValueError(f"Lottery probabilities must be non-negative and sum to 1, "
                             f"got sum {self.probs.sum()}.")

    @classmethod
    def deterministic(cls, value):
        return cls([1.0], [value])

    def mean(self):
        return float(self.probs @ self.values)


def mean_minus_std(probs, values, gamma, axis=-1):
    """ E[l] - gamma * sqrt(Var[l]) over `axis`, vectorised over the others.

    Var is the centred second moment; zero-probability outcomes never
    contribute.
    """
    probs = np.asarray(probs, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    with np.errstate(invalid="ignore"):
        first = np.where(probs > 0.0, probs * values, 0.0).sum(axis=axis)
    if gamma == 0:
        return first
    with np.errstate(invalid="ignore", over="ignore"):
        spread = values - np.expand_dims(first, axis)
        var = np.where(probs > 0.0, probs * spread * spread, 0.0).sum(axis=axis)
    return first - gamma * np.sqrt(var)


def variance_adjusted(lottery, gamma):
    """ E[l] - gamma * std(l), the lottery value of the variance-averse player. """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}.")
    return float(mean_minus_std(lottery.probs, lottery.values, gamma))

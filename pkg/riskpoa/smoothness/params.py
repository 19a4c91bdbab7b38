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
import math
from dataclasses import dataclass


def _check(name, value):
    if not math.isfinite(value) or value < 0.0:
        raise ValueError(f"{name} must be finite and non-negative, got {value}.")


@dataclass(frozen=True)
class SmoothnessParams:
    lam: float
    mu: float

    def __post_init__(self):
        _check("lambda", self.lam)
        _check("mu", self.mu)

    def bound(self):
        return poa_bound(self)

    def to_dict(self):
        return {"lambda": self.lam, "mu": self.mu}


@dataclass(frozen=True)
class WeakSmoothnessParams:
    lam: float
    mu1: float
    mu2: float

    def __post_init__(self):
        _check("lambda", self.lam)
        _check("mu1", self.mu1)
        _check("mu2", self.mu2)

    @classmethod
    def from_smoothness(cls, params: SmoothnessParams):
        return cls(params.lam, params.mu, 0.0)

    def bound(self):
        return weak_poa_bound(self)

    def to_dict(self):
        return {"lambda": self.lam, "mu1": self.mu1, "mu2": self.mu2}


def poa_bound(params: SmoothnessParams):
    """ Efficiency guaranteed by (lambda, mu)-smoothness: lambda / max{1, mu}. """
    if params.lam <= 0.0:
        raise ValueError(f"lambda must be positive, got {params.lam}.")
    return params.lam / max(1.0, params.mu)


def weak_poa_bound(params: WeakSmoothnessParams):
    """ lambda / (mu2 + max{mu1, 1}), valid under no-overbidding. """
    if params.lam <= 0.0:
        raise ValueError(f"lambda must be positive, got {params.lam}.")
    return params.lam / (params.mu2 + max(params.mu1, 1.0))

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
import warnings

import numpy as np

from riskpoa.solver import adaptive_simpson


def bounded_slope_poa_bound(c):
    """ PoA bound 4(C + 1) of all-pay auctions when the transform's slope below
    zero is at most C. """
    if c < 0.0:
        raise ValueError(f"Slope bound must be non-negative, got {c}.")
    if c < 1.0:
        warnings.warn(f"WARNING: slope bound C = {c} < 1 is an extrapolation, concave transforms have C >= 1.")
    return 4.0 * (c + 1.0)


def quasilinear_allpay_beta(density, x, lower=0.0, tol=1e-10):
    """ Symmetric quasilinear all-pay equilibrium bid, the integral of t f(t) on [lower, x]. """
    if x < lower:
        raise ValueError(f"x = {x} lies below the support start {lower}.")
    return adaptive_simpson(lambda t: t * density(t), lower, x, tol)[0]


def expected_value(density, lower, upper, tol=1e-10):
    return adaptive_simpson(lambda t: t * density(t), lower, upper, tol)[0]


def uniform_density(lower=0.0, upper=1.0):
    width = upper - lower
    return lambda t: np.where((t >= lower) & (t <= upper), 1.0 / width, 0.0)

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


def bid_grid(n_bids, bid_max=1.0, geometric=False, extra=None):
    """ Sorted bid grid on [0, bid_max] starting at 0.

    The geometric variant spaces points as bid_max * geomspace(1e-6, 1) so
    that small bids are resolved finely. `extra` points are merged in.
    """
    if n_bids < 2:
        raise ValueError(f"A bid grid needs at least 2 points, got {n_bids}.")
    if not bid_max > 0.0:
        raise ValueError(f"bid_max must be positive, got {bid_max}.")
    if geometric:
        grid = np.concatenate([[0.0], bid_max * np.geomspace(1e-6, 1.0, n_bids - 1)])
    else:
        grid = np.linspace(0.0, bid_max, n_bids)
    if extra is not None:
        grid = np.concatenate([grid, np.asarray(extra, dtype=np.float64).ravel()])
    return np.unique(grid)


def value_grid(n_values, value_min, value_max):
    if n_values < 1:
        raise ValueError(f"A value grid needs at least 1 point, got {n_values}.")
    if n_values == 1 or value_min == value_max:
        return np.array([float(value_max)])
    return np.linspace(value_min, value_max, n_values)

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


def bisect_increasing(f, y, lo, hi, xtol=0.0, max_iter=200):
    """ Solve f(x) = y for a non-decreasing, vectorised f by bisection.

    Args:
        f (callable): numpy array -> numpy array, non-decreasing on [lo, hi].
        y (array_like): Targets.
        lo (array_like): Lower brackets, f(lo) <= y.
        hi (array_like): Upper brackets, f(hi) >= y.
        xtol (float): Stop once every bracket is narrower than this. With the
            default 0 the loop runs until brackets stop shrinking in float64.
        max_iter (int): Iteration cap. (default=200)

    Returns:
        numpy array of roots, the midpoint of the final bracket.
    """
    y = np.asarray(y, dtype=np.float64)
    lo = np.broadcast_to(np.asarray(lo, dtype=np.float64), y.shape).copy()
    hi = np.broadcast_to(np.asarray(hi, dtype=np.float64), y.shape).copy()
    assert np.all(lo <= hi), "Bisection needs lo <= hi."

    for _ in range(max_iter):
        mid = (lo + hi) / 2.0
        width = hi - lo
        if np.all(width <= xtol) or np.all((mid == lo) | (mid == hi)):
            break
        below = f(mid) < y
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return (lo + hi) / 2.0

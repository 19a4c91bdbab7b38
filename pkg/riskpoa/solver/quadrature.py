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

import numpy as np


def adaptive_simpson(f, a, b, tol=1e-8, max_depth=50):
    """ Adaptive Simpson integration of a scalar function.

    Args:
        f (callable): Integrand, float -> float.
        a (float): Lower bound.
        b (float): Upper bound.
        tol (float): Absolute error tolerance. (default=1e-8)
        max_depth (int): Maximum bisection depth of any panel. (default=50)

    Returns:
        (value, error_estimate)

    Raises:
        ValueError: if a panel hits `max_depth` before meeting its share of `tol`
            or the integrand is not finite.
    """
    if a == b:
        return 0.0, 0.0
    if a > b:
        value, error = adaptive_simpson(f, b, a, tol, max_depth)
        return -value, error

    failed = []

    def _simpson(fa, fm, fb, h):
        return h / 3.0 * (fa + 4.0 * fm + fb)

    def _adaptive(lo, hi, flo, fmid, fhi, whole, depth, eps):
        mid = (lo + hi) / 2.0
        h = (hi - lo) / 4.0
        fl = f((lo + mid) / 2.0)
        fr = f((mid + hi) / 2.0)
        left = _simpson(flo, fl, fmid, h)
        right = _simpson(fmid, fr, fhi, h)
        delta = (left + right - whole) / 15.0
        if not math.isfinite(delta):
            failed.append((lo, hi))
            return left + right, math.inf
        if abs(delta) <= eps:
            # Richardson extrapolation
            return left + right + delta, abs(delta)
        if depth >= max_depth:
            failed.append((lo, hi))
            return left + right + delta, abs(delta)
        lv, le = _adaptive(lo, mid, flo, fl, fmid, left, depth + 1, eps / 2.0)
        rv, re = _adaptive(mid, hi, fmid, fr, fhi, right, depth + 1, eps / 2.0)
        return lv + rv, le + re

    fa, fb = f(a), f(b)
    fm = f((a + b) / 2.0)
    whole = _simpson(fa, fm, fb, (b - a) / 2.0)
    value, error = _adaptive(a, b, fa, fm, fb, whole, 0, tol)
    if failed or not math.isfinite(value):
        raise ValueError(f"Quadrature tolerance {tol} not reached on [{a}, {b}] "
                         f"(error estimate {error}, {len(failed)} unresolved panels).")
    return value, error


def fixed_simpson(f, a, b, n=1_000_000):
    """ Composite Simpson rule with `n` panels, `f` vectorised over numpy arrays. """
    if n % 2:
        n += 1
    x = np.linspace(a, b, n + 1)
    y = f(x)
    h = (b - a) / n
    return h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum())


_legendre_cache = {}


def gauss_legendre(f, a, b, order=20):
    """ Fixed-order Gauss-Legendre rule on [a, b], broadcast over array bounds.

    The rule is a smooth function of its bounds, which keeps inverse searches
    built on top of it free of adaptive-refinement jitter.
    """
    if order not in _legendre_cache:
        _legendre_cache[order] = np.polynomial.legendre.leggauss(order)
    nodes, weights = _legendre_cache[order]
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    half = (b - a) / 2.0
    center = (a + b) / 2.0
    x = center[..., None] + half[..., None] * nodes
    return half * (f(x) * weights).sum(axis=-1)

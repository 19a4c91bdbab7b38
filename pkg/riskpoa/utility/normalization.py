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
from dataclasses import field

import numpy as np


@dataclass
class NormalizationReport:
    passed: bool
    checked: int = 0
    violation: dict = field(default_factory=dict)


def _as_callable(model):
    if callable(getattr(model, "evaluate", None)):
        return lambda v, p: float(model.evaluate(v, p))
    return lambda v, p: float(model(v, p))


def check_normalization(model, v_grid, p_grid, atol=1e-9):
    """ Scan the normalization properties of a utility on a (v, p) grid.

    `model` is a UtilityModel or any callable u(v, p). For every v the scan
    checks u(v, 0) = v and u(v, v) = 0, then walks the p-grid upwards checking
    that u does not increase in p, that u >= v - p for p <= v and u <= v - p
    beyond v. The first failing point is returned in the report.
    """
    v_grid = np.asarray(v_grid, dtype=np.float64).ravel()
    p_grid = np.sort(np.asarray(p_grid, dtype=np.float64).ravel())
    if v_grid.size == 0 or p_grid.size == 0:
        raise ValueError("Normalization grids must be non-empty.")
    if not (np.all(np.isfinite(v_grid)) and np.all(np.isfinite(p_grid))):
        raise ValueError("Normalization grids must be finite.")
    if p_grid[0] > 0.0 or p_grid[-1] < 2.0 * v_grid.max() - 1e-12:
        raise ValueError(f"p-grid must span [0, {2.0 * v_grid.max()}], "
                         f"got [{p_grid[0]}, {p_grid[-1]}].")

    u = _as_callable(model)
    checked = 0
    for v in v_grid:
        tol = atol * max(1.0, abs(v))
        previous = None
        for p in p_grid:
            value = u(v, p)
            checked += 1
            if previous is not None and value > previous + tol:
                return NormalizationReport(False, checked, dict(property="monotone", v=v, p=p, u=value))
            if p <= v and value < v - p - tol:
                return NormalizationReport(False, checked, dict(property="u>=v-p", v=v, p=p, u=value))
            if p > v and value > v - p + tol:
                return NormalizationReport(False, checked, dict(property="u<=v-p", v=v, p=p, u=value))
            previous = value
        at_zero = u(v, 0.0)
        if abs(at_zero - v) > tol:
            return NormalizationReport(False, checked, dict(property="u(v,0)=v", v=v, p=0.0, u=at_zero))
        at_value = u(v, v)
        if abs(at_value) > tol:
            return NormalizationReport(False, checked, dict(property="u(v,v)=0", v=v, p=v, u=at_value))
    return NormalizationReport(True, checked)


def relaxation_constant(model, v_grid, p_grid):
    """ Largest C <= 1 with u(v, p) >= C (v - p) for all grid points 0 <= p < v. """
    u = _as_callable(model)
    ratios = [1.0]
    for v in np.asarray(v_grid, dtype=np.float64).ravel():
        for p in np.asarray(p_grid, dtype=np.float64).ravel():
            if 0.0 <= p < v:
                ratios.append(u(v, p) / (v - p))
    constant = min(ratios)
    if constant <= 0.0:
        raise ValueError(f"Utility is not relaxed-normalized on the grid (C = {constant}).")
    return float(constant)

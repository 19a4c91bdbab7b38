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

# Check all kinds are supported
supported = ["linear", "exponential", "piecewise", "tabulated"]


class ConcaveTransform(object):
    def __init__(self, kind="exponential", slope=1.0, knots=None):
        """ Concave non-decreasing transform h of the quasilinear term.

        Args:
            kind (str): One of `linear`, `exponential` (h(x) = 1 - e^-x),
                `piecewise` (h(x) = x for x >= 0, slope * x below 0) or
                `tabulated` (monotone piecewise-linear through `knots`).
            slope (float): Left slope C of the piecewise kind. (default=1.0)
            knots (list): (x, h(x)) pairs of the tabulated kind, sorted by x.
        """
        assert kind in supported, f"Unsupported transform kind `{kind}`, expected one of {supported}."
        self.kind = kind
        self.slope = float(slope)
        self.knots = None

        if kind == "piecewise" and self.slope < 1.0:
            raise ValueError(f"Piecewise transform needs slope C >= 1, got {self.slope}.")
        if kind == "tabulated":
            if knots is None or len(knots) < 2:
                raise ValueError("Tabulated transform needs at least two (x, h(x)) knots.")
            knots = np.asarray(knots, dtype=np.float64)
            if np.any(np.diff(knots[:, 0]) <= 0):
                raise ValueError("Tabulated knots must have strictly increasing x.")
            if np.any(np.diff(knots[:, 1]) < 0):
                raise ValueError("Tabulated knots must be non-decreasing in h(x).")
            self.knots = knots

    @classmethod
    def linear(cls):
        return cls("linear")

    @classmethod
    def exponential(cls):
        return cls("exponential")

    @classmethod
    def piecewise(cls, slope):
        return cls("piecewise", slope=slope)

    @classmethod
    def tabulated(cls, knots):
        return cls("tabulated", knots=knots)

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        if self.kind == "linear":
            out = x.copy()
        elif self.kind == "exponential":
            with np.errstate(over="ignore"):
                out = -np.expm1(-x)
        elif self.kind == "piecewise":
            out = np.where(x >= 0.0, x, self.slope * x)
        else:
            xs, hs = self.knots[:, 0], self.knots[:, 1]
            out = np.interp(x, xs, hs)
            # continue the end segments linearly outside the table
            left = hs[0] + (x - xs[0]) * (hs[1] - hs[0]) / (xs[1] - xs[0])
            right = hs[-1] + (x - xs[-1]) * (hs[-1] - hs[-2]) / (xs[-1] - xs[-2])
            out = np.where(x < xs[0], left, np.where(x > xs[-1], right, out))
        return out if out.ndim else float(out)

    def left_slope_at_zero(self):
        if self.kind in ("linear", "exponential"):
            return 1.0
        elif self.kind == "piecewise":
            return self.slope
        xs, hs = self.knots[:, 0], self.knots[:, 1]
        i = int(np.clip(np.searchsorted(xs, 0.0) - 1, 0, len(xs) - 2))
        return float((hs[i + 1] - hs[i]) / (xs[i + 1] - xs[i]))

    def is_monotone(self, grid):
        grid = np.sort(np.asarray(grid, dtype=np.float64))
        return bool(np.all(np.diff(self(grid)) >= 0.0))

    def to_dict(self):
        out = {"kind": self.kind}
        if self.kind == "piecewise":
            out["slope"] = self.slope
        if self.kind == "tabulated":
            out["knots"] = self.knots.tolist()
        return out

    def __repr__(self):
        return f"ConcaveTransform({self.to_dict()})"

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
from enum import Enum

import numpy as np

from .transform import ConcaveTransform


class Infeasible(Enum):
    """ Utility of a payment above the budget, semantically minus infinity. """
    INFEASIBLE = "infeasible"


class UtilityModel(object):
    def __init__(self, variant="quasilinear", valuation=1.0, transform=None, inner=None,
                 budget=np.inf, allow_zero_value=False):
        """ A player's utility over (allocation value, payment).

        Args:
            variant (str): `quasilinear`, `scaled` (normalized risk averse,
                u = h(v(x) - p) * v(x) / h(v(x))) or `budgeted`.
            valuation (float or tuple): The player's value for the item, or one
                value per item for unit-demand outcomes.
            transform (ConcaveTransform): h of the scaled variant.
            inner (UtilityModel): The wrapped model of the budgeted variant.
            budget (float or tuple): Budget per outcome of the budgeted variant.
            allow_zero_value (bool): Evaluate the scaled variant with a zero
                reference value as -p times the left slope of h at 0 instead of
                raising.
        """
        if variant not in ("quasilinear", "scaled", "budgeted"):
            raise ValueError(f"Unknown utility variant: {variant}")
        if variant == "scaled" and transform is None:
            raise ValueError("Scaled risk-averse utility needs a transform.")
        if variant == "budgeted":
            if inner is None:
                raise ValueError("Budgeted utility needs an inner model.")
            valuation = inner.valuation
        self.variant = variant
        self.valuation = valuation
        self.transform = transform
        self.inner = inner
        self.budget = budget
        self.allow_zero_value = allow_zero_value

    @classmethod
    def quasilinear(cls, valuation=1.0):
        return cls("quasilinear", valuation)

    @classmethod
    def scaled(cls, transform, valuation=1.0, allow_zero_value=False):
        return cls("scaled", valuation, transform=transform, allow_zero_value=allow_zero_value)

    @classmethod
    def budgeted(cls, inner, budget):
        return cls("budgeted", inner=inner, budget=budget)

    @property
    def reference_value(self):
        """ max_x v(x): the scale used on outcomes the player values at 0. """
        return float(np.max(self.valuation))

    def value_of(self, allocation):
        """ v(x) for an allocation as stored in OutcomeRecord: 1/0 for a single
        item, an item index or None for unit-demand outcomes. """
        if np.ndim(self.valuation) == 0:
            return float(self.valuation) * float(allocation or 0)
        if allocation is None:
            return 0.0
        return float(self.valuation[allocation])

    def budget_of(self, allocation):
        if np.ndim(self.budget) == 0:
            return float(self.budget)
        if allocation is None:
            return float(np.max(self.budget))
        return float(self.budget[allocation])

    def with_valuation(self, valuation):
        """ Same utility shape for another type. """
        if self.variant == "budgeted":
            return UtilityModel.budgeted(self.inner.with_valuation(valuation), self.budget)
        return UtilityModel(self.variant, valuation, transform=self.transform,
                            allow_zero_value=self.allow_zero_value)

    def __call__(self, vx, p, budget=None):
        """ Scalar evaluation; returns Infeasible.INFEASIBLE above the budget. """
        if not np.isfinite(p):
            raise ValueError(f"Payment must be finite, got {p}.")
        if self.variant == "budgeted":
            limit = self.budget if budget is None else budget
            if np.ndim(limit) != 0:
                raise ValueError("Pass the outcome budget explicitly for per-item budgets.")
            if p > limit:
                return Infeasible.INFEASIBLE
            return self.inner(vx, p)
        return float(self.evaluate(vx, p))

    def evaluate(self, vx, p, budget=None):
        """ Vectorised evaluation; infeasible payments map to -inf. """
        vx = np.asarray(vx, dtype=np.float64)
        p = np.asarray(p, dtype=np.float64)
        if self.variant == "quasilinear":
            return vx - p
        if self.variant == "budgeted":
            limit = self.budget if budget is None else budget
            inner = self.inner.evaluate(vx, p)
            return np.where(p <= limit, inner, -np.inf)

        h = self.transform
        reference = self.reference_value
        scale = np.where(vx > 0.0, vx, reference)
        if reference <= 0.0:
            bad = (vx <= 0.0) & (p != 0.0)
            if np.any(bad) and not self.allow_zero_value:
                raise ValueError(f"Scaled risk-averse utility is undefined for v(x) = 0 "
                                 f"and p != 0 (reference value {reference}).")
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = h(vx - p) * scale / h(scale)
        out = np.where(scale > 0.0, out, -p * h.left_slope_at_zero())
        return out

    def expected(self, probs, vx, p):
        """ Expected utility of outcome lotteries, outcomes on the last axis.

        Zero-probability outcomes never contribute. Scaled exponential models
        take the log-sum-exp route, which stays finite for payments far beyond
        the exponent range of float64.
        """
        probs = np.asarray(probs, dtype=np.float64)
        vx = np.asarray(vx, dtype=np.float64)
        p = np.asarray(p, dtype=np.float64)
        if (self.variant == "scaled" and self.transform.kind == "exponential"
                and self.reference_value > 0.0):
            scale = np.where(vx > 0.0, vx, self.reference_value)
            weight = scale / -np.expm1(-scale)
            with np.errstate(divide="ignore"):
                log_terms = np.log(probs * weight) + (p - vx)
            log_terms = np.where(probs > 0.0, log_terms, -np.inf)
            with np.errstate(over="ignore"):
                tail = np.exp(np.logaddexp.reduce(log_terms, axis=-1))
            return (probs * weight).sum(axis=-1) - tail

        u = self.evaluate(vx, p)
        with np.errstate(invalid="ignore"):
            terms = np.where(probs > 0.0, probs * u, 0.0)
        return terms.sum(axis=-1)

    def to_dict(self):
        out = {"variant": self.variant, "valuation": self.valuation}
        if self.variant == "scaled":
            out["transform"] = self.transform.to_dict()
        if self.variant == "budgeted":
            out["inner"] = self.inner.to_dict()
            out["budget"] = self.budget
        return out

    def __repr__(self):
        return f"UtilityModel({self.to_dict()})"


def eval_utility(model, vx, p):
    """ u(x, p) of `model` at allocation value v(x) and payment p. """
    return model(vx, p)


def cap_valuation(v, budget):
    """ min{v(x), B(x)} pointwise, keeping the shape of `v`. """
    if np.any(np.asarray(v, dtype=np.float64) < 0.0) or np.any(np.asarray(budget, dtype=np.float64) < 0.0):
        raise ValueError(f"Valuations and budgets must be non-negative, got {v} and {budget}.")
    capped = np.minimum(np.asarray(v, dtype=np.float64), np.asarray(budget, dtype=np.float64))
    if isinstance(v, tuple):
        return tuple(float(x) for x in capped)
    if isinstance(v, list):
        return [float(x) for x in capped]
    return capped if capped.ndim else float(capped)


def make_utility_model(kind, valuation, slope=1.0, knots=None, budget=None):
    """ Build a model from the `[utility]` config vocabulary. """
    if kind == "quasilinear":
        model = UtilityModel.quasilinear(valuation)
    elif kind in ("exponential", "piecewise", "linear", "tabulated"):
        model = UtilityModel.scaled(ConcaveTransform(kind, slope=slope, knots=knots), valuation)
    else:
        raise ValueError(f"Unknown utility kind: {kind}")
    if budget is not None and np.all(np.isfinite(budget)):
        model = UtilityModel.budgeted(model, budget)
    return model

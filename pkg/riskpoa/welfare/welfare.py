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
import itertools
from dataclasses import dataclass
from dataclasses import field
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from riskpoa.utility import Infeasible


@dataclass
class WelfareReport:
    sw: float
    value_welfare: float
    opt: float
    opt_hat: float
    liquid_opt: Optional[float] = None

    def to_dict(self):
        out = {"sw": self.sw, "value_welfare": self.value_welfare, "opt": self.opt, "opt_hat": self.opt_hat}
        if self.liquid_opt is not None:
            out["liquid_opt"] = self.liquid_opt
        return out


@dataclass
class OptimumResult:
    value: float
    allocation: tuple
    payments: tuple
    resolution_gap: float = 0.0


@dataclass
class DoublingReport:
    passed: bool
    opt: float
    opt_hat: float
    violation: dict = field(default_factory=dict)


def single_item_outcomes(n_players):
    """ Every allocation of one item among `n_players`, including no sale. """
    outcomes = [tuple(1 if i == j else 0 for i in range(n_players)) for j in range(n_players)]
    outcomes.append(tuple(0 for _ in range(n_players)))
    return outcomes


def unit_demand_outcomes(n_players, n_items=2):
    """ Every assignment of distinct items (or nothing) to unit-demand players. """
    outcomes = []
    for assignment in itertools.product([None] + list(range(n_items)), repeat=n_players):
        items = [x for x in assignment if x is not None]
        if len(items) == len(set(items)):
            outcomes.append(assignment)
    return outcomes


def _budget_of(model, allocation):
    return model.budget_of(allocation) if model.variant == "budgeted" else np.inf


def _base(model):
    return model.inner if model.variant == "budgeted" else model


def social_welfare(models, outcome):
    """ Sum of utilities plus sum of payments of one outcome.

    Returns Infeasible.INFEASIBLE as soon as one payment breaks its budget.
    """
    total = 0.0
    for model, allocation, payment in zip(models, outcome.allocation, outcome.payments):
        vx = model.value_of(allocation)
        if model.variant == "budgeted":
            u = model(vx, payment, budget=model.budget_of(allocation))
        else:
            u = model(vx, payment)
        if u is Infeasible.INFEASIBLE:
            return Infeasible.INFEASIBLE
        total += u + payment
    return total


def _best_payment(model, vx, budget, n_payments, cap=None, refine=True, xatol=1e-10):
    """ max over p in [0, min(v(x), B(x))] of u + p, or of min(u + p, cap). """
    inner = _base(model)
    upper = min(vx, budget)
    if upper <= 0.0:
        value = float(inner.evaluate(vx, 0.0))
        return (min(value, cap) if cap is not None else value), 0.0, value

    def surplus(p):
        value = float(inner.evaluate(vx, p)) + p
        return min(value, cap) if cap is not None else value

    grid = np.linspace(0.0, upper, n_payments)
    values = inner.evaluate(vx, grid) + grid
    if cap is not None:
        values = np.minimum(values, cap)
    k = int(np.argmax(values))
    raw = float(values[k])
    if not refine:
        return raw, float(grid[k]), raw
    lo, hi = float(grid[max(k - 1, 0)]), float(grid[min(k + 1, n_payments - 1)])
    if hi <= lo:
        return raw, float(grid[k]), raw
    result = minimize_scalar(lambda p: -surplus(p), bounds=(lo, hi), method="bounded",
                             options={"xatol": xatol})
    p, value = float(result.x), -float(result.fun)
    # the bounded search never evaluates the bracket ends
    if value < raw:
        p, value = float(grid[k]), raw
    return value, p, raw


def _scan(models, outcomes, n_payments, liquid=False, refine=True):
    if len(outcomes) == 0:
        raise ValueError("Outcome space is empty.")
    best = None
    for allocation in outcomes:
        total, payments = 0.0, []
        for model, x in zip(models, allocation):
            vx = model.value_of(x)
            budget = _budget_of(model, x)
            cap = budget if liquid else None
            value, p, _ = _best_payment(model, vx, budget, n_payments, cap=cap, refine=refine)
            total += value
            payments.append(p)
        if best is None or total > best.value:
            best = OptimumResult(total, tuple(allocation), tuple(payments))
    return best


def optimal_welfare(models, outcomes, n_payments=512):
    """ OPT = max over outcomes and payments of u + p summed over players.

    Payments are searched on [0, v_i(x)] (above v_i(x) the normalization already
    caps u + p at v_i(x)) with `n_payments` grid points per player, then refined
    by a bounded scalar search inside the bracketing cell. `resolution_gap` is
    the distance to the plain grid optimum at twice the resolution.
    """
    best = _scan(models, outcomes, n_payments)
    check = _scan(models, outcomes, 2 * n_payments, refine=False)
    best.resolution_gap = abs(best.value - check.value)
    return best


def value_welfare(models, outcomes):
    """ OPT-hat = max over outcomes of the summed values. """
    if len(outcomes) == 0:
        raise ValueError("Outcome space is empty.")
    return max(sum(m.value_of(x) for m, x in zip(models, allocation)) for allocation in outcomes)


def liquid_welfare(models, outcomes, n_payments=512):
    """ max over outcomes and payments of sum_i min{u_i + p_i, B_i(x)}. """
    return _scan(models, outcomes, n_payments, liquid=True)


def check_welfare_doubling(models, outcomes, n_payments=512, atol=1e-9):
    """ OPT-hat <= OPT <= 2 OPT-hat on one instance. """
    opt = optimal_welfare(models, outcomes, n_payments).value
    opt_hat = value_welfare(models, outcomes)
    if opt > 2.0 * opt_hat + atol:
        return DoublingReport(False, opt, opt_hat, dict(bound="opt<=2*opt_hat", excess=opt - 2.0 * opt_hat))
    if opt < opt_hat - atol:
        return DoublingReport(False, opt, opt_hat, dict(bound="opt>=opt_hat", excess=opt_hat - opt))
    return DoublingReport(True, opt, opt_hat)


def welfare_report(models, outcome, outcomes, n_payments=512):
    sw = social_welfare(models, outcome)
    value = sum(m.value_of(x) for m, x in zip(models, outcome.allocation))
    liquid = None
    if any(m.variant == "budgeted" for m in models):
        liquid = liquid_welfare(models, outcomes, n_payments).value
    return WelfareReport(sw=sw if sw is not Infeasible.INFEASIBLE else -np.inf,
                         value_welfare=value,
                         opt=optimal_welfare(models, outcomes, n_payments).value,
                         opt_hat=value_welfare(models, outcomes),
                         liquid_opt=liquid)

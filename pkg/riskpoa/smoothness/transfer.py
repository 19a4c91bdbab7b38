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
from typing import Optional

import numpy as np

from riskpoa.utility import UtilityModel
from riskpoa.utility import cap_valuation
from .certify import Certificate
from .certify import GridInstance
from .certify import certify_smoothness
from .certify import check_nonneg_deviation_utility
from .params import SmoothnessParams


def risk_transfer(params: SmoothnessParams, relaxation=1.0):
    """ Quasilinear (lam, mu) to (C lam / 2, C mu) for normalized risk-averse
    utilities; C = 1 unless the utilities are only relaxed-normalized.

    Not idempotent: every application halves lambda again.
    """
    if not 0.0 < relaxation <= 1.0:
        raise ValueError(f"Relaxation constant must lie in (0, 1], got {relaxation}.")
    return SmoothnessParams(relaxation * params.lam / 2.0, relaxation * params.mu)


@dataclass
class BudgetTransferReport:
    certified: bool
    params: dict
    reason: str = ""
    certificate: Optional[Certificate] = None

    def to_dict(self):
        out = {"certified": self.certified, "params": self.params, "reason": self.reason}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        return out


def _budgets_of(model):
    return model.budget if model.variant == "budgeted" else np.inf


def _check_capping_closed(instance):
    for i, model in enumerate(instance.models):
        budget = _budgets_of(model)
        for value in instance.value_grids[i]:
            if np.ndim(value) > 1:
                raise ValueError(f"Valuation class of player {i} is not closed under capping: "
                                 f"only single-item and unit-demand valuations are supported.")
            if np.ndim(budget) and np.shape(budget) != np.shape(value):
                raise ValueError(f"Budgets {budget} of player {i} do not match valuation {value}.")


def budget_transfer_check(instance: GridInstance, dev, params: SmoothnessParams, relaxation=1.0,
                          n_payments=512, atol=1e-9):
    """ Smoothness against the liquid-welfare benchmark under budgets.

    The deviation rule sees budget-capped valuations. It must give the capped
    quasilinear instance non-negative utility; then the transferred parameters
    are certified with OPT replaced by liquid welfare.
    """
    _check_capping_closed(instance)
    budgets = [_budgets_of(m) for m in instance.models]

    def capped(valuations):
        return tuple(cap_valuation(v, b) for v, b in zip(valuations, budgets))

    transferred = risk_transfer(params, relaxation)
    capped_instance = GridInstance(instance.mechanism, [UtilityModel.quasilinear() for _ in instance.models],
                                   [[cap_valuation(v, budgets[i]) for v in g] for i, g in enumerate(instance.value_grids)],
                                   instance.bid_grid, instance.device)
    nonneg = check_nonneg_deviation_utility(capped_instance, dev)
    if not nonneg.passed:
        return BudgetTransferReport(False, transferred.to_dict(), reason="negative deviation utility")

    budgeted = GridInstance(instance.mechanism, instance.models, instance.value_grids, instance.bid_grid,
                            instance.device, deviation_values=capped)
    certificate = certify_smoothness(budgeted, dev, transferred, benchmark="liquid",
                                     n_payments=n_payments, atol=atol)
    return BudgetTransferReport(certificate.certified, transferred.to_dict(),
                                reason="" if certificate.certified else "smoothness violated",
                                certificate=certificate)

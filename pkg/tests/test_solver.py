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
import pytest
import torch

from riskpoa.solver import ConstantLR
from riskpoa.solver import CosineDecayLR
from riskpoa.solver import Hedge
from riskpoa.solver import InverseSqrtLR
from riskpoa.solver import adaptive_simpson
from riskpoa.solver import bisect_increasing
from riskpoa.solver import build_lr_scheduler
from riskpoa.solver import fixed_simpson
from riskpoa.solver import gauss_legendre


@pytest.mark.parametrize("f,a,b,expected", [
    (lambda t: t * t, 0.0, 1.0, 1.0 / 3.0),
    (math.exp, 0.0, 1.0, math.e - 1.0),
    (lambda t: 1.0 / (1.0 + t * t), 0.0, 1.0, math.pi / 4.0),
    (math.sin, math.pi, 0.0, -2.0),
])
def test_adaptive_simpson(f, a, b, expected):
    value, error = adaptive_simpson(f, a, b, tol=1e-12)
    assert value == pytest.approx(expected, abs=1e-10)
    assert error >= 0.0


def test_adaptive_simpson_rejects_non_finite_integrands():
    with pytest.raises(ValueError):
        adaptive_simpson(lambda t: 1.0 / t if t > 0.0 else math.inf, 0.0, 1.0)


def test_fixed_rules_agree_with_closed_forms():
    assert fixed_simpson(np.exp, 0.0, 1.0, n=1001) == pytest.approx(math.e - 1.0, abs=1e-12)
    np.testing.assert_allclose(gauss_legendre(np.cos, 0.0, np.array([0.5, 1.0, 2.0])),
                               np.sin([0.5, 1.0, 2.0]), atol=1e-14)


def test_bisection_inverts_a_monotone_function():
    y = np.array([0.0, 0.25, 1.0, 8.0])
    x = bisect_increasing(lambda t: t ** 3, y, 0.0, 2.0)
    np.testing.assert_allclose(x, np.cbrt(y), atol=1e-15)


def test_hedge_moves_log_weights_along_the_utility():
    logits = torch.zeros(2, dtype=torch.float64, requires_grad=True)
    optimizer = Hedge([logits], lr=0.5)
    logits.grad = torch.tensor([1.0, 0.0], dtype=torch.float64)
    optimizer.step()
    np.testing.assert_allclose(logits.detach().numpy(), [0.0, -0.5])
    probs = Hedge.probabilities(logits.detach()).numpy()
    assert probs[0] == pytest.approx(1.0 / (1.0 + math.exp(-0.5)), abs=1e-15)
    with pytest.raises(ValueError):
        Hedge([logits], lr=0.0)


def test_schedules():
    logits = torch.zeros(3, dtype=torch.float64, requires_grad=True)
    optimizer = Hedge([logits], lr=0.1)

    InverseSqrtLR(optimizer, 0.1).step(3)
    assert optimizer.param_groups[0]["lr"] == pytest.approx(0.05, abs=1e-15)
    ConstantLR(optimizer, 0.1, warmup=10).step(10)
    assert optimizer.param_groups[0]["lr"] == pytest.approx(0.1, abs=1e-15)
    ConstantLR(optimizer, 0.1, warmup=10).step(0)
    assert optimizer.param_groups[0]["lr"] == pytest.approx(1e-4, abs=1e-15)

    cosine = CosineDecayLR(optimizer, 100, 0.1, 0)
    cosine.step(0)
    assert optimizer.param_groups[0]["lr"] == pytest.approx(0.1, abs=1e-15)
    cosine.step(100)
    assert optimizer.param_groups[0]["lr"] == pytest.approx(0.001, abs=1e-15)


def test_multistep_schedule_decays_at_the_milestones():
    logits = torch.zeros(3, dtype=torch.float64, requires_grad=True)
    optimizer = Hedge([logits], lr=0.1)
    scheduler = build_lr_scheduler("multistep", optimizer, 0.1, 8)
    for iters in range(8):
        scheduler.step(iters)
    assert optimizer.param_groups[0]["lr"] == pytest.approx(0.001, rel=1e-9)
    with pytest.raises(ValueError):
        build_lr_scheduler("step", optimizer, 0.1, 8)

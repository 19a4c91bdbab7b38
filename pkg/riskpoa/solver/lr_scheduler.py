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
from bisect import bisect_right
from typing import List

import torch

_LRScheduler = getattr(torch.optim.lr_scheduler, "LRScheduler",
                       torch.optim.lr_scheduler._LRScheduler)


def warmup_factor(iters: int, warmup: int, start: float = 0.001) -> float:
    """ Linear ramp from `start` to 1 over the first `warmup` iterations. """
    if iters >= warmup:
        return 1.0
    alpha = iters / warmup
    return start * (1.0 - alpha) + alpha


class HedgeLR(object):
    """ Base of the iteration-indexed schedules.

    `step(iters)` writes `lr(iters)` into every param group of the learner, so
    it is called once per round before `optimizer.step()`.
    """

    def __init__(self, optimizer, lr, warmup=0):
        if lr <= 0.0:
            raise ValueError(f"Invalid learning rate: {lr}")
        if warmup < 0:
            raise ValueError(f"Invalid warmup: {warmup}")
        self.optimizer = optimizer
        self.lr = lr
        self.warmup = warmup

    def lr_at(self, iters):
        raise NotImplementedError

    def step(self, iters):
        lr = self.lr_at(iters)
        for param_group in self.optimizer.param_groups:
            param_group["lr"] = lr


class ConstantLR(HedgeLR):
    def lr_at(self, iters):
        return self.lr * warmup_factor(iters, self.warmup)


class InverseSqrtLR(HedgeLR):
    """ lr / sqrt(t + 1), the anytime no-regret step size of Hedge. """

    def lr_at(self, iters):
        return self.lr * warmup_factor(iters, self.warmup) / math.sqrt(iters + 1)


class CosineDecayLR(HedgeLR):
    def __init__(self, optimizer, max_iters, lr, warmup=0):
        """ Cosine decay of the Hedge step size over a whole learning run.

        Args:
            optimizer (riskpoa.solver.Hedge): The learner whose step size is driven.
            max_iters (int): The number of rounds of the run.
            lr (float): Peak learning rate, reached after warmup.
            warmup (int): Rounds of linear ramp up to `lr`, 0 disables it.

        Example:
            >>> optimizer = Hedge([logits], lr=0.1)
            >>> scheduler = CosineDecayLR(optimizer, 10000, 0.1, 100)
            >>> for iters in range(10000):
            >>>     scheduler.step(iters)
        """
        super(CosineDecayLR, self).__init__(optimizer, lr, warmup)
        self.max_iters = max_iters
        self.lr_end = lr * 0.01

    def lr_at(self, iters):
        if iters < self.warmup:
            return self.lr * (iters + 1) / self.warmup
        progress = min((iters - self.warmup) / max(self.max_iters - self.warmup, 1), 1.0)
        return self.lr_end + 0.5 * (self.lr - self.lr_end) * (1.0 + math.cos(progress * math.pi))


class WarmupMultiStepLR(_LRScheduler):
    def __init__(self, optimizer, milestones: List[int], gamma: float = 0.1, warmup_iters: int = 0,
                 last_epoch: int = -1):
        """ Step decay by `gamma` at every milestone, as a torch scheduler.

        torch schedulers count their own steps, so `last_epoch` is the round
        index here and `step()` is called once per round after the first.
        """
        if list(milestones) != sorted(milestones):
            raise ValueError(f"Milestones should be a list of increasing integers. Got {milestones}")
        self.milestones = list(milestones)
        self.gamma = gamma
        self.warmup_iters = warmup_iters
        super().__init__(optimizer, last_epoch)

    def get_lr(self) -> List[float]:
        factor = warmup_factor(self.last_epoch, self.warmup_iters)
        decay = self.gamma ** bisect_right(self.milestones, self.last_epoch)
        return [base_lr * factor * decay for base_lr in self.base_lrs]

    def step(self, iters=None):
        if iters is None or iters > 0:
            super().step()


def build_lr_scheduler(name, optimizer, lr, iterations, warmup=0):
    """ Schedule factory keyed by the `learner.schedule` config field.

    Every returned object exposes `step(iters)`. `multistep` decays tenfold at
    half and at three quarters of the run.
    """
    if name == "constant":
        return ConstantLR(optimizer, lr, warmup)
    elif name == "inverse-sqrt":
        return InverseSqrtLR(optimizer, lr, warmup)
    elif name == "cosine":
        return CosineDecayLR(optimizer, iterations, lr, warmup)
    elif name == "multistep":
        for param_group in optimizer.param_groups:
            param_group["lr"] = lr
        return WarmupMultiStepLR(optimizer, [iterations // 2, (3 * iterations) // 4], warmup_iters=warmup)
    raise ValueError(f"Unknown learning rate schedule: {name}")

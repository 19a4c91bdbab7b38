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
import torch
from torch.optim import Optimizer


class Hedge(Optimizer):
    def __init__(self, params, lr=0.1):
        """ Multiplicative-weights (Hedge) update written as a torch optimizer.

        Each parameter is a vector of log-weights over a finite action set. The
        caller stores the observed utility vector in `param.grad`; `step()` moves
        the log-weights up along it, so the mixed strategy is
        `softmax(log_weights)` and the usual lr schedulers drive the step size.

        Args:
            params (iterable): Log-weight tensors, one per player.
            lr (float): Learning rate (the Hedge temperature). (default=0.1)

        Example:
            >>> logits = torch.zeros(11, dtype=torch.float64)
            >>> optimizer = Hedge([logits], lr=0.05)
            >>> logits.grad = utility_vector
            >>> optimizer.step()
        """
        if lr <= 0.0:
            raise ValueError(f"Invalid learning rate: {lr}")
        super(Hedge, self).__init__(params, dict(lr=lr))

    @torch.no_grad()
    def step(self, closure=None):
        loss = None
        if closure is not None:
            with torch.enable_grad():
                loss = closure()
        for group in self.param_groups:
            for p in group["params"]:
                if p.grad is None:
                    continue
                p.add_(p.grad, alpha=group["lr"])
                # keep log-weights centred, softmax is shift invariant
                p.sub_(p.max())
        return loss

    @staticmethod
    def probabilities(log_weights):
        return torch.softmax(log_weights, dim=-1)

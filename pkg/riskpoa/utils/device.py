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
import os
import random
import time

import numpy as np
import torch


def init_seeds(seed=0):
    """ Seed every global generator an experiment may touch.

    Learners and samplers take their own seeded generators; the global state
    is seeded so ad-hoc sampling in scripts stays reproducible too.
    """
    random.seed(seed)
    np.random.seed(seed)
    torch.manual_seed(seed)
    # payoff tables are float64, deterministic kernels keep reruns bit-identical
    torch.use_deterministic_algorithms(True, warn_only=True)


def select_device(device="cpu"):
    # device = "cpu", "" (first CUDA device if any) or a CUDA index such as "0"
    device = (device or "").strip().lower()
    if device == "cpu":
        print("Using CPU for payoff tables\n")
        return "cpu"
    if device:
        assert device.isdigit(), f"Invalid device {device}, expected `cpu` or a CUDA index"
        os.environ["CUDA_VISIBLE_DEVICES"] = device
        assert torch.cuda.is_available(), f"CUDA unavailable, invalid device {device} requested"

    if not torch.cuda.is_available():
        print("Using CPU for payoff tables\n")
        return "cpu"
    x = torch.cuda.get_device_properties(0)
    print(f"Using CUDA for payoff tables\n\t+ device:0 (name=`{x.name}`, "
          f"total_memory={int(x.total_memory / 1024 ** 2)}MB)\n")
    return "cuda:0"


def time_synchronized():
    if torch.cuda.is_available():
        torch.cuda.synchronize()
    return time.time()

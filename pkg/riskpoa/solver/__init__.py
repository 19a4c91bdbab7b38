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
from .hedge import Hedge
from .lr_scheduler import ConstantLR
from .lr_scheduler import CosineDecayLR
from .lr_scheduler import InverseSqrtLR
from .lr_scheduler import WarmupMultiStepLR
from .lr_scheduler import build_lr_scheduler
from .quadrature import adaptive_simpson
from .quadrature import fixed_simpson
from .quadrature import gauss_legendre
from .search import bisect_increasing

__all__ = [
    "Hedge",
    "ConstantLR",
    "CosineDecayLR",
    "InverseSqrtLR",
    "WarmupMultiStepLR",
    "build_lr_scheduler",
    "adaptive_simpson",
    "fixed_simpson",
    "gauss_legendre",
    "bisect_increasing",
]

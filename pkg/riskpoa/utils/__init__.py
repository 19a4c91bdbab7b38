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
from .cli import ArgumentParser
from .cli import EXIT_FALSIFIED
from .cli import EXIT_PASS
from .cli import EXIT_UNCERTIFIED
from .cli import EXIT_USAGE
from .cli import load_config
from .cli import output_path
from .common import save_csv
from .common import save_json
from .device import init_seeds
from .device import select_device
from .device import time_synchronized
from .grids import bid_grid
from .grids import value_grid

__all__ = [
    "ArgumentParser",
    "EXIT_FALSIFIED",
    "EXIT_PASS",
    "EXIT_UNCERTIFIED",
    "EXIT_USAGE",
    "load_config",
    "output_path",
    "save_csv",
    "save_json",
    "init_seeds",
    "select_device",
    "time_synchronized",
    "bid_grid",
    "value_grid",
]

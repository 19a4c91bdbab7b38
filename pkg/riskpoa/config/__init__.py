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
from .parse_experiment import ExperimentConfig
from .parse_experiment import config_hash
from .parse_experiment import parse_experiment_config
from .parse_experiment import validate_config

__all__ = [
    "ExperimentConfig",
    "config_hash",
    "parse_experiment_config",
    "validate_config",
]

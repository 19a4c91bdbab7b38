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
import argparse
import os
import sys

from riskpoa.config import ExperimentConfig
from riskpoa.config import parse_experiment_config
from riskpoa.config import validate_config

EXIT_PASS = 0
EXIT_USAGE = 1
EXIT_FALSIFIED = 2
EXIT_UNCERTIFIED = 3


class ArgumentParser(argparse.ArgumentParser):
    """ argparse parser whose usage errors exit with EXIT_USAGE. """

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_config(path, task, overrides):
    """ Built-in defaults < config file < command line flags, validated.

    Args:
        path (str): Optional `*.cfg`/`*.json` config.
        task (str): Task name recorded in the `[experiment]` block.
        overrides (list): (block, key, value) triples from the flags; None values are skipped.
    """
    config = parse_experiment_config(path) if path else ExperimentConfig()
    config.override("experiment", "task", task)
    for block, key, value in overrides:
        config.override(block, key, value)
    return validate_config(config)


def output_path(config, name):
    folder = config.get("experiment", "out") or "outputs"
    return os.path.join(folder, name)

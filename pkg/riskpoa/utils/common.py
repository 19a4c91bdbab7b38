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
import json
import os

import numpy as np

from riskpoa import __version__
from riskpoa.config import config_hash


def _plain(value):
    """ JSON-safe copy: numpy scalars and arrays become Python floats and lists. """
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        if not np.isfinite(value):
            return str(value)
        return value
    return value


def _prepare(path):
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)


def save_json(report, path, config=None):
    """ Write a report with the tool version and config hash embedded.

    Floats use Python's shortest round-trip repr, non-finite values are
    written as strings.
    """
    document = {"version": __version__, "config_hash": config_hash(config) if config is not None else None}
    document.update(_plain(report.to_dict() if hasattr(report, "to_dict") else report))
    _prepare(path)
    with open(path, "w", newline="\n") as f:
        json.dump(document, f, indent=2, sort_keys=True, allow_nan=False)
        f.write("\n")
    return path


def save_csv(rows, columns, path, config=None):
    """ Comma separated table with a `# riskpoa <version> config <hash>` line above the header. """
    digest = config_hash(config) if config is not None else "none"
    table = np.asarray(rows, dtype=np.float64).reshape(-1, len(columns))
    _prepare(path)
    np.savetxt(path, table, fmt="%.17g", delimiter=",", newline="\n",
               header=f"# riskpoa {__version__} config {digest}\n" + ",".join(columns), comments="")
    return path

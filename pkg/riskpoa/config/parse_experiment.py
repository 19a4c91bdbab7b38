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
import hashlib
import json
import os
from decimal import Decimal
from decimal import InvalidOperation

SCHEMA_VERSION = 1

# Check all fields are supported
supported = {
    "experiment": ["version", "task", "seed", "out", "device"],
    "mechanism": ["kind", "tie_break"],
    "utility": ["kind", "slope", "gamma", "knots", "budget"],
    "grid": ["bids", "values", "payments", "bid_max", "geometric"],
    "learner": ["source", "iterations", "lr", "schedule", "warmup", "epsilon", "checkpoints",
                "prior", "prior_weight"],
    "smoothness": ["lambda", "mu", "mu1", "mu2", "deviation", "benchmark", "relaxation"],
    "instance": ["m", "tol", "grid_values", "grid_bids", "extra_bids", "c_variant", "players", "n",
                 "family", "value_min", "value_max", "values", "eps1", "threshold"],
}

defaults = {
    "experiment": {"version": 1, "seed": 0, "out": "", "device": "cpu"},
    "mechanism": {"kind": "first-price", "tie_break": "uniform"},
    "utility": {"kind": "quasilinear", "slope": 1.0, "gamma": 0.0},
    "grid": {"bids": 11, "values": 5, "payments": 512, "bid_max": 1.0, "geometric": 0},
    "learner": {"source": "regret-matching", "iterations": 10000, "lr": 0.1, "schedule": "inverse-sqrt",
                "warmup": 0, "checkpoints": 10, "prior": "none", "prior_weight": 0.0},
    "smoothness": {"deviation": "half-value-top-bidder", "benchmark": "value", "relaxation": 1.0},
    "instance": {"m": 8, "tol": 1e-8, "grid_values": 200, "grid_bids": 100, "extra_bids": 2000,
                 "c_variant": "main", "players": 2, "n": 10, "value_min": 0.5, "value_max": 1.0,
                 "eps1": 0.01, "threshold": 1e-3},
}

supported_tasks = ["allpay-lower-bound", "zero-welfare-ce", "two-item", "welfare-doubling", "normalization",
                   "learn", "poa-sweep", "certify"]


def _parse_value(value):
    """ Decimal for numbers, a list for comma separated values, str otherwise. """
    value = value.strip()
    if "," in value:
        return [_parse_value(x) for x in value.split(",") if x.strip()]
    try:
        number = Decimal(value)
    except InvalidOperation:
        return value
    return value if number.is_nan() else number


def _resolve(path):
    # path may be "cfgs/allpay.cfg", "allpay.cfg", "allpay" or a .json document
    if not path.endswith(".cfg") and not path.endswith(".json"):
        path += ".cfg"
    if not os.path.exists(path) and os.path.exists("cfgs" + os.sep + path):
        path = "cfgs" + os.sep + path
    return path


def _read_blocks(path):
    with open(path, "r") as f:
        lines = f.read().split("\n")
    lines = [x.strip() for x in lines]
    lines = [x for x in lines if x and not x.startswith("#")]
    blocks = {}
    block = None
    for line in lines:
        if line.startswith("["):  # This marks the start of a new block
            block = line[1:-1].strip()
            assert block not in blocks, f"Duplicate block [{block}] in {path}."
            blocks[block] = {}
        else:
            assert block is not None, f"Field outside of any block in {path}: `{line}`."
            key, value = line.split("=", 1)
            blocks[block][key.strip()] = _parse_value(value)
    return blocks


def _read_json(path):
    with open(path, "r") as f:
        blocks = json.load(f, parse_float=Decimal, parse_int=Decimal)
    assert isinstance(blocks, dict), f"{path} must hold a JSON object of blocks."
    return blocks


def _to_decimal(value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return value
    return Decimal(repr(value)) if isinstance(value, float) else Decimal(value)


def _to_python(value):
    if isinstance(value, list):
        return [_to_python(x) for x in value]
    if isinstance(value, Decimal):
        text = str(value)
        if value.is_finite() and "." not in text and "e" not in text.lower():
            return int(value)
        return float(value)
    return value


class ExperimentConfig(object):
    """ Blocks of `key = value` fields; numbers are kept as Decimal until read. """

    def __init__(self, blocks=None, path=""):
        self.blocks = {name: dict(fields) for name, fields in (blocks or {}).items()}
        self.path = path

    def get(self, block, key, default=None):
        """ A field converted to int/float/str, falling back to the built-in default. """
        fields = self.blocks.get(block, {})
        if key in fields:
            return _to_python(fields[key])
        return defaults.get(block, {}).get(key, default)

    def get_float(self, block, key, default=None):
        value = self.get(block, key, default)
        return None if value is None else float(value)

    def get_int(self, block, key, default=None):
        value = self.get(block, key, default)
        return None if value is None else int(value)

    def get_list(self, block, key, default=None):
        value = self.get(block, key, default)
        if value is None:
            return None
        return value if isinstance(value, list) else [value]

    def override(self, block, key, value):
        """ Command line flags win over the file; None leaves the field alone. """
        if value is None:
            return
        assert key in supported[block], f"Unsupported field {key} in block [{block}]."
        if isinstance(value, (list, tuple)) and len(value) == 1:
            value = value[0]
        if isinstance(value, (list, tuple)):
            value = [_to_decimal(x) for x in value]
        else:
            value = _to_decimal(value)
        self.blocks.setdefault(block, {})[key] = value

    def canonical(self):
        def encode(value):
            if isinstance(value, list):
                return [encode(x) for x in value]
            if isinstance(value, Decimal):
                return str(value)
            return value

        return {block: {k: encode(v) for k, v in fields.items()} for block, fields in self.blocks.items()}

    def to_dict(self):
        return {block: {k: _to_python(v) for k, v in fields.items()} for block, fields in self.blocks.items()}


def parse_experiment_config(path):
    """ Parse a `*.cfg` block file or a `*.json` document into an ExperimentConfig. """
    path = _resolve(path)
    blocks = _read_json(path) if path.endswith(".json") else _read_blocks(path)

    unsupported_block_list = [b for b in blocks if b not in supported]
    assert not any(unsupported_block_list), f"Unsupported blocks {unsupported_block_list} in {path}."
    unsupported_field_list = [f"{b}.{k}" for b, fields in blocks.items() for k in fields if k not in supported[b]]
    assert not any(unsupported_field_list), f"Unsupported fields {unsupported_field_list} in {path}."

    return ExperimentConfig(blocks, path)


def config_hash(config):
    """ First 16 hex digits of the SHA-256 of the canonical JSON rendering. """
    canonical = config.canonical() if isinstance(config, ExperimentConfig) else config
    text = json.dumps(canonical, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def _check_range(name, value, low=None, high=None, low_open=False):
    if value is None:
        return
    values = value if isinstance(value, list) else [value]
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ValueError(f"{name} must be numeric, got `{v}`.")
        if low is not None and (v <= low if low_open else v < low):
            raise ValueError(f"{name} = {v} must be {'>' if low_open else '>='} {low}.")
        if high is not None and v > high:
            raise ValueError(f"{name} = {v} must be <= {high}.")


def validate_config(config: ExperimentConfig):
    """ Range-check every numeric field that is present before anything runs. """
    version = config.get("experiment", "version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"Unsupported config version {version}, expected {SCHEMA_VERSION}.")
    task = config.get("experiment", "task")
    if task is not None and task not in supported_tasks:
        raise ValueError(f"Unknown task: {task}")

    _check_range("utility.gamma", config.get("utility", "gamma"), 0.0, 1.0)
    _check_range("utility.slope", config.get("utility", "slope"), 0.0, low_open=True)
    _check_range("grid.bids", config.get("grid", "bids"), 1.0)
    _check_range("grid.values", config.get("grid", "values"), 1.0)
    _check_range("grid.payments", config.get("grid", "payments"), 2.0)
    _check_range("grid.bid_max", config.get("grid", "bid_max"), 0.0, low_open=True)
    _check_range("learner.iterations", config.get("learner", "iterations"), 0.0, low_open=True)
    _check_range("learner.lr", config.get("learner", "lr"), 0.0, low_open=True)
    _check_range("learner.warmup", config.get("learner", "warmup"), 0.0)
    _check_range("learner.prior_weight", config.get("learner", "prior_weight"), 0.0)
    _check_range("learner.epsilon", config.get("learner", "epsilon"), 0.0)
    _check_range("smoothness.lambda", config.get("smoothness", "lambda"), 0.0, low_open=True)
    _check_range("smoothness.mu", config.get("smoothness", "mu"), 0.0)
    _check_range("smoothness.mu1", config.get("smoothness", "mu1"), 0.0)
    _check_range("smoothness.mu2", config.get("smoothness", "mu2"), 0.0)
    _check_range("smoothness.relaxation", config.get("smoothness", "relaxation"), 0.0, 1.0, low_open=True)
    _check_range("instance.m", config.get("instance", "m"), 5.0, low_open=True)
    _check_range("instance.tol", config.get("instance", "tol"), 0.0, low_open=True)
    _check_range("instance.grid_values", config.get("instance", "grid_values"), 2.0)
    _check_range("instance.grid_bids", config.get("instance", "grid_bids"), 2.0)
    _check_range("instance.extra_bids", config.get("instance", "extra_bids"), 1.0)
    _check_range("instance.players", config.get("instance", "players"), 1.0)
    _check_range("instance.n", config.get("instance", "n"), 1.0)
    _check_range("instance.value_min", config.get("instance", "value_min"), 0.0)
    _check_range("instance.values", config.get("instance", "values"), 0.0)
    _check_range("instance.eps1", config.get("instance", "eps1"), 0.0, low_open=True)
    if config.get_float("instance", "value_min") > config.get_float("instance", "value_max"):
        raise ValueError("instance.value_min must not exceed instance.value_max.")
    if config.get("instance", "c_variant") not in ("main", "reduced"):
        raise ValueError(f"Unknown C variant: {config.get('instance', 'c_variant')}")
    return config

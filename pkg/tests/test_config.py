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
from decimal import Decimal

import pytest

from riskpoa.config import ExperimentConfig
from riskpoa.config import config_hash
from riskpoa.config import parse_experiment_config
from riskpoa.config import validate_config

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def cfg(name):
    return os.path.join(ROOT, "cfgs", name)


def write(path, text):
    with open(path, "w") as f:
        f.write(text)
    return str(path)


def test_parse_block_file():
    config = parse_experiment_config(cfg("two-item.cfg"))
    assert config.get("experiment", "task") == "two-item"
    assert config.get_list("utility", "gamma") == [0.25, 0.5, 1]
    assert config.get_float("instance", "eps1") == 0.01
    assert isinstance(config.blocks["instance"]["eps1"], Decimal)
    validate_config(config)


def test_every_shipped_config_is_valid():
    for name in sorted(os.listdir(os.path.join(ROOT, "cfgs"))):
        if name.endswith(".cfg"):
            validate_config(parse_experiment_config(cfg(name)))


def test_defaults_fill_missing_fields():
    config = ExperimentConfig()
    assert config.get("grid", "bids") == 11
    assert config.get_float("learner", "prior_weight") == 0.0
    assert config.get("smoothness", "lambda") is None
    assert config.get("smoothness", "mu", 0.0) == 0.0


def test_numbers_keep_their_type(tmp_path):
    path = write(tmp_path / "numbers.cfg", "[learner]\niterations = 100\nprior_weight = 1e9\nlr = 0.05\n"
                                         "[experiment]\nout = nan\n")
    config = parse_experiment_config(path)
    assert config.get("learner", "iterations") == 100
    assert isinstance(config.get("learner", "iterations"), int)
    assert config.get("learner", "prior_weight") == 1e9
    assert config.get("learner", "lr") == 0.05
    assert config.get("experiment", "out") == "nan"


@pytest.mark.parametrize("text", [
    "[grid]\nbids = 11\nresolution = 3\n",
    "[network]\nbids = 11\n",
    "[grid]\nbids = 11\n[grid]\nvalues = 3\n",
    "bids = 11\n",
])
def test_unsupported_layouts_are_rejected(tmp_path, text):
    with pytest.raises(AssertionError):
        parse_experiment_config(write(tmp_path / "bad.cfg", text))


def test_json_documents_hash_like_block_files(tmp_path):
    blocks = write(tmp_path / "exp.cfg", "[experiment]\nversion = 1\ntask = two-item\n"
                                         "[utility]\ngamma = 0.25, 0.5\n")
    document = write(tmp_path / "exp.json", json.dumps({"experiment": {"version": 1, "task": "two-item"},
                                                        "utility": {"gamma": [0.25, 0.5]}}))
    a = parse_experiment_config(blocks)
    b = parse_experiment_config(document)
    assert a.to_dict() == b.to_dict()
    assert config_hash(a) == config_hash(b)
    assert len(config_hash(a)) == 16


def test_overrides_change_the_hash_only_when_the_value_changes(tmp_path):
    path = write(tmp_path / "exp.cfg", "[utility]\ngamma = 0.5\n")
    config = parse_experiment_config(path)
    digest = config_hash(config)
    config.override("utility", "gamma", 0.5)
    assert config_hash(config) == digest
    config.override("utility", "gamma", [0.5])
    assert config_hash(config) == digest
    config.override("utility", "gamma", None)
    assert config_hash(config) == digest
    config.override("utility", "gamma", 0.75)
    assert config_hash(config) != digest
    with pytest.raises(AssertionError):
        config.override("utility", "colour", 1)


@pytest.mark.parametrize("block,key,value", [
    ("experiment", "version", 2),
    ("experiment", "task", "verify-everything"),
    ("instance", "m", 4),
    ("utility", "gamma", 1.5),
    ("learner", "iterations", 0),
    ("smoothness", "lambda", 0),
    ("smoothness", "relaxation", 1.5),
    ("instance", "value_min", 2.0),
    ("instance", "c_variant", "tight"),
    ("utility", "gamma", "high"),
])
def test_validation_rejects_out_of_range_fields(block, key, value):
    config = ExperimentConfig()
    config.override(block, key, value)
    with pytest.raises(ValueError):
        validate_config(config)

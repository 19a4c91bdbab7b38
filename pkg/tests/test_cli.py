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

import pytest

import certify
import learn
import verify

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load(path):
    with open(path) as f:
        return json.load(f)


def test_two_item_passes_and_writes_reports(tmp_path):
    out = str(tmp_path)
    assert verify.main(["--task", "two-item", "--gamma", "0.5", "1", "--out", out]) == 0
    report = load(os.path.join(out, "two_item_gamma1.json"))
    assert report["passed"]
    assert report["ratio"] == pytest.approx(700.0, rel=1e-12)
    assert len(report["config_hash"]) == 16
    assert os.path.exists(os.path.join(out, "two_item_gamma0.5.json"))


def test_two_item_without_positive_gamma_is_a_usage_error(tmp_path):
    assert verify.main(["--task", "two-item", "--out", str(tmp_path)]) == 1


def test_allpay_precondition_is_a_usage_error(tmp_path):
    assert verify.main(["--m", "4", "--out", str(tmp_path)]) == 1


def test_unknown_flags_exit_with_usage_code():
    with pytest.raises(SystemExit) as e:
        verify.main(["--task", "first-price-bne"])
    assert e.value.code == 1


def test_missing_config_file_is_a_usage_error(tmp_path):
    assert verify.main(["--config", str(tmp_path / "missing.cfg")]) == 1


def test_zero_welfare_ce(tmp_path):
    assert verify.main(["--task", "zero-welfare-ce", "--gamma", "1", "--out", str(tmp_path)]) == 0
    report = load(os.path.join(str(tmp_path), "zero_welfare_ce.json"))
    assert report["sw"] == 0.0 and report["max_regret"] == 0.0


def test_normalization_and_welfare_doubling(tmp_path):
    out = str(tmp_path)
    assert verify.main(["--task", "normalization", "--utility", "quasilinear", "exponential",
                        "--payments", "64", "--out", out]) == 0
    assert load(os.path.join(out, "normalization.json"))["passed"]
    assert verify.main(["--task", "welfare-doubling", "--utility", "exponential", "piecewise", "--slope", "2",
                        "--n", "4", "--payments", "64", "--out", out]) == 0
    with open(os.path.join(out, "welfare_doubling.csv")) as f:
        lines = f.read().splitlines()
    assert lines[0].startswith("# riskpoa ")
    assert lines[1] == "instance_id,opt,opt_hat,ratio"
    assert len(lines) == 6


def test_reports_are_reproducible(tmp_path):
    out = str(tmp_path)
    args = ["--task", "welfare-doubling", "--utility", "exponential", "--n", "3", "--payments", "32",
            "--seed", "7", "--out", out]
    path = os.path.join(out, "welfare_doubling.csv")
    assert verify.main(args) == 0
    with open(path) as f:
        first = f.read()
    assert verify.main(args) == 0
    with open(path) as f:
        assert f.read() == first


def test_learn_rejects_zero_iterations(tmp_path):
    assert learn.main(["--iters", "0", "--out", str(tmp_path)]) == 1


def test_learn_certifies_on_the_unweighted_conditional_regret(tmp_path):
    out = str(tmp_path)
    code = learn.main(["--values", "1", "0.6", "--bids", "3", "--iters", "2000", "--epsilon", "0.2",
                       "--out", out])
    report = load(os.path.join(out, "learn.json"))
    assert code == (0 if report["max_regret"] <= 0.2 else 3)
    assert report["certified"] == (code == 0)
    assert report["weighted_regret"] <= report["max_regret"]
    assert report["learning"]["regret_bound"] == pytest.approx(report["max_regret"], abs=1e-9)
    assert os.path.exists(os.path.join(out, "learn_trace.csv"))


def test_learn_reports_uncertified_runs(tmp_path):
    code = learn.main(["--values", "1", "0.6", "--bids", "3", "--iters", "5", "--epsilon", "0",
                       "--out", str(tmp_path)])
    assert code in (0, 3)
    assert load(os.path.join(str(tmp_path), "learn.json"))["certified"] == (code == 0)


def test_learn_warm_started_at_the_alternating_distribution(tmp_path):
    out = str(tmp_path)
    code = learn.main(["--config", os.path.join(ROOT, "cfgs", "learn-zero-welfare.cfg"), "--iters", "10",
                       "--out", out])
    assert code == 0
    report = load(os.path.join(out, "learn.json"))
    assert report["prior_regret"] == 0.0
    assert report["prior_welfare"] == 0.0
    assert report["welfare"] == pytest.approx(0.0, abs=1e-6)


def test_certify_exit_codes(tmp_path):
    out = str(tmp_path)
    assert certify.main(["--config", os.path.join(ROOT, "cfgs", "certify-all-pay-falsified.cfg"),
                         "--grid", "6", "3", "--out", out]) == 2
    report = load(os.path.join(out, "certificate.json"))
    assert not report["certified"]
    assert "counterexample" in report
    assert certify.main(["--mechanism", "first-price", "--lambda", "0.5", "--mu", "1",
                         "--grid", "6", "3", "--out", out]) == 0
    assert load(os.path.join(out, "certificate.json"))["certified"]


def test_certify_transfer_and_usage_errors(tmp_path):
    out = str(tmp_path)
    assert certify.main(["--mechanism", "first-price", "--utility", "exponential", "--lambda", "0.5", "--mu", "1",
                         "--transfer", "--grid", "6", "3", "--out", out]) == 0
    assert load(os.path.join(out, "certificate.json"))["params"] == {"lambda": 0.25, "mu": 1.0}
    assert certify.main(["--mechanism", "all-pay", "--lambda", "0.5", "--mu", "1", "--transfer",
                         "--grid", "6", "3", "--out", out]) == 2
    assert certify.main(["--mechanism", "first-price", "--grid", "6", "3", "--out", out]) == 1
    assert certify.main(["--mechanism", "third-price", "--lambda", "0.5", "--out", out]) == 1


@pytest.mark.parametrize("flag", [["--transfer"], ["--budget", "0.5"]])
def test_transfers_from_weak_smoothness_are_usage_errors(tmp_path, flag):
    out = str(tmp_path)
    assert certify.main(["--mechanism", "first-price", "--lambda", "0.5", "--mu1", "1", "--mu2", "0.5",
                         "--grid", "6", "3", "--out", out] + flag) == 1
    assert not os.path.exists(os.path.join(out, "certificate.json"))

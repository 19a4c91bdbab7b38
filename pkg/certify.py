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
import sys

from riskpoa.mechanisms import MechanismSpec
from riskpoa.smoothness import GridInstance
from riskpoa.smoothness import SmoothnessParams
from riskpoa.smoothness import WeakSmoothnessParams
from riskpoa.smoothness import budget_transfer_check
from riskpoa.smoothness import build_deviation
from riskpoa.smoothness import certify_smoothness
from riskpoa.smoothness import certify_weak_smoothness
from riskpoa.smoothness import check_nonneg_deviation_utility
from riskpoa.smoothness import risk_transfer
from riskpoa.utility import make_utility_model
from riskpoa.utils import ArgumentParser
from riskpoa.utils import EXIT_FALSIFIED
from riskpoa.utils import EXIT_PASS
from riskpoa.utils import EXIT_USAGE
from riskpoa.utils import bid_grid
from riskpoa.utils import init_seeds
from riskpoa.utils import load_config
from riskpoa.utils import output_path
from riskpoa.utils import save_json
from riskpoa.utils import select_device
from riskpoa.utils import time_synchronized
from riskpoa.utils import value_grid


def build_instance(config, device="cpu"):
    n_players = config.get_int("instance", "players")
    values = value_grid(config.get_int("grid", "values"), config.get_float("instance", "value_min"),
                        config.get_float("instance", "value_max"))
    bids = bid_grid(config.get_int("grid", "bids"), config.get_float("grid", "bid_max"),
                    bool(config.get_int("grid", "geometric")))
    budget = config.get_float("utility", "budget")
    model = make_utility_model(config.get("utility", "kind"), 1.0, slope=config.get_float("utility", "slope"),
                               budget=budget)
    spec = MechanismSpec(config.get("mechanism", "kind"), n_players, config.get("mechanism", "tie_break"))
    return GridInstance(spec, [model] * n_players, [values] * n_players, bids, device)


def build_params(config):
    lam = config.get_float("smoothness", "lambda")
    if lam is None:
        raise ValueError("smoothness.lambda is required, pass --lambda.")
    if config.get("smoothness", "mu1") is not None or config.get("smoothness", "mu2") is not None:
        return WeakSmoothnessParams(lam, config.get_float("smoothness", "mu1", 0.0),
                                    config.get_float("smoothness", "mu2", 0.0))
    return SmoothnessParams(lam, config.get_float("smoothness", "mu", 0.0))


def check_transfer_start(config, params, transfer):
    """ Both transfers start from (lambda, mu)-smoothness. """
    if not isinstance(params, WeakSmoothnessParams):
        return
    if config.get("utility", "budget") is not None:
        raise ValueError("The budget transfer starts from (lambda, mu)-smoothness, drop --mu1/--mu2.")
    if transfer:
        raise ValueError("The risk transfer starts from (lambda, mu)-smoothness, drop --mu1/--mu2.")


def certify(config, transfer, device):
    instance = build_instance(config, device)
    params = build_params(config)
    check_transfer_start(config, params, transfer)
    dev = build_deviation(config.get("smoothness", "deviation"))
    benchmark = config.get("smoothness", "benchmark")
    relaxation = config.get_float("smoothness", "relaxation")
    n_payments = config.get_int("grid", "payments")
    print(f"Certifying {instance.mechanism.spec.kind} with {params} on {instance.grid_spec()}")

    start_time = time_synchronized()
    if config.get("utility", "budget") is not None:
        report = budget_transfer_check(instance, dev, params, relaxation, n_payments)
        certificate = report.certificate
    elif transfer:
        nonneg = check_nonneg_deviation_utility(instance, dev)
        if not nonneg.passed:
            print(f"Deviation has negative quasilinear utility: {nonneg.violation}")
            save_json(dict(certified=False, reason="negative deviation utility", violation=nonneg.violation),
                      output_path(config, "certificate.json"), config)
            return EXIT_FALSIFIED
        report = certificate = certify_smoothness(instance, dev, risk_transfer(params, relaxation), "risk", n_payments)
    elif isinstance(params, WeakSmoothnessParams):
        report = certificate = certify_weak_smoothness(instance, dev, params, benchmark, n_payments)
    else:
        report = certificate = certify_smoothness(instance, dev, params, benchmark, n_payments)
    print(f"Scanned in {time_synchronized() - start_time:.1f}s.")

    if report.certified:
        print(f"Certified, smallest slack {certificate.min_slack:.6g}")
    elif certificate is not None and certificate.counterexample is not None:
        print(f"Falsified at {certificate.counterexample}")
    else:
        print(f"Falsified: {report.reason}")
    save_json(report, output_path(config, "certificate.json"), config)
    return EXIT_PASS if report.certified else EXIT_FALSIFIED


def main(argv=None):
    parser = ArgumentParser()
    parser.add_argument("--config", type=str, default="",
                        help="Experiment config, `*.cfg` under cfgs/ or a JSON document. (default=none)")
    parser.add_argument("--mechanism", type=str, default=None,
                        help="first-price, second-price or all-pay. (default=first-price)")
    parser.add_argument("--tie-break", type=str, default=None, help="uniform or lowest-index. (default=uniform)")
    parser.add_argument("--deviation", type=str, default=None,
                        help="half-value-top-bidder, uniform-top-bidder, truthful or zero-bid. "
                             "(default=half-value-top-bidder)")
    parser.add_argument("--lambda", dest="lam", type=float, default=None, help="Smoothness lambda > 0.")
    parser.add_argument("--mu", type=float, default=None, help="Smoothness mu >= 0. (default=0)")
    parser.add_argument("--mu1", type=float, default=None, help="Weak smoothness mu1 >= 0.")
    parser.add_argument("--mu2", type=float, default=None, help="Weak smoothness mu2 >= 0.")
    parser.add_argument("--benchmark", type=str, default=None, help="value, risk or liquid. (default=value)")
    parser.add_argument("--utility", type=str, default=None,
                        help="quasilinear, exponential, piecewise or linear. (default=quasilinear)")
    parser.add_argument("--slope", type=float, default=None, help="Slope C of the piecewise transform. (default=1)")
    parser.add_argument("--budget", type=float, default=None, help="Budget of every player. (default=none)")
    parser.add_argument("--transfer", action="store_true",
                        help="Certify the risk-averse parameters derived from (lambda, mu).")
    parser.add_argument("--relaxation", type=float, default=None,
                        help="Relaxed normalization constant C in (0, 1]. (default=1)")
    parser.add_argument("--players", type=int, default=None, help="Number of players. (default=2)")
    parser.add_argument("--grid", type=int, nargs=2, default=None, metavar=("BIDS", "VALUES"),
                        help="Bid and value grid sizes. (default=11 5)")
    parser.add_argument("--bid-max", type=float, default=None, help="Largest bid. (default=1)")
    parser.add_argument("--value-min", type=float, default=None, help="Smallest value. (default=0.5)")
    parser.add_argument("--value-max", type=float, default=None, help="Largest value. (default=1)")
    parser.add_argument("--device", type=str, default=None, help="cpu or a cuda device id. (default=cpu)")
    parser.add_argument("--out", type=str, default=None, help="Output folder. (default=outputs)")
    args = parser.parse_args(argv)

    print(args)

    bids, values = args.grid if args.grid is not None else (None, None)
    try:
        config = load_config(args.config, "certify", [
            ("mechanism", "kind", args.mechanism),
            ("mechanism", "tie_break", args.tie_break),
            ("smoothness", "deviation", args.deviation),
            ("smoothness", "lambda", args.lam),
            ("smoothness", "mu", args.mu),
            ("smoothness", "mu1", args.mu1),
            ("smoothness", "mu2", args.mu2),
            ("smoothness", "benchmark", args.benchmark),
            ("smoothness", "relaxation", args.relaxation),
            ("utility", "kind", args.utility),
            ("utility", "slope", args.slope),
            ("utility", "budget", args.budget),
            ("instance", "players", args.players),
            ("instance", "value_min", args.value_min),
            ("instance", "value_max", args.value_max),
            ("grid", "bids", bids),
            ("grid", "values", values),
            ("grid", "bid_max", args.bid_max),
            ("experiment", "device", args.device),
            ("experiment", "out", args.out),
        ])
        check_transfer_start(config, build_params(config), args.transfer)
        build_deviation(config.get("smoothness", "deviation"))
        build_instance(config)
    except (AssertionError, ValueError, OSError) as e:
        print(f"ERROR: {e}")
        return EXIT_USAGE
    init_seeds(config.get_int("experiment", "seed"))
    device = select_device(config.get("experiment", "device"))

    return certify(config, args.transfer, device)


if __name__ == "__main__":
    sys.exit(main())

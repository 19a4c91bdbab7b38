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

import numpy as np
from tqdm import tqdm

from riskpoa.constructions import verify_allpay_lower_bound
from riskpoa.constructions import verify_correlated_zero_welfare
from riskpoa.constructions import verify_two_item
from riskpoa.utility import check_normalization
from riskpoa.utility import make_utility_model
from riskpoa.utility import relaxation_constant
from riskpoa.utils import ArgumentParser
from riskpoa.utils import EXIT_FALSIFIED
from riskpoa.utils import EXIT_PASS
from riskpoa.utils import EXIT_USAGE
from riskpoa.utils import init_seeds
from riskpoa.utils import load_config
from riskpoa.utils import output_path
from riskpoa.utils import save_csv
from riskpoa.utils import save_json
from riskpoa.utils import time_synchronized
from riskpoa.utils import value_grid
from riskpoa.welfare import check_welfare_doubling
from riskpoa.welfare import single_item_outcomes

supported_tasks = ["allpay-lower-bound", "zero-welfare-ce", "two-item", "welfare-doubling", "normalization"]


def allpay_lower_bound(config):
    ms = [float(m) for m in config.get_list("instance", "m")]
    rows = []
    passed = True
    for m in ms:
        start_time = time_synchronized()
        report = verify_allpay_lower_bound(m,
                                           tol=config.get_float("instance", "tol"),
                                           grid_values=config.get_int("instance", "grid_values"),
                                           grid_bids=config.get_int("instance", "grid_bids"),
                                           player3_bids=config.get_int("instance", "extra_bids"),
                                           threshold=config.get_float("instance", "threshold"),
                                           c_variant=config.get("instance", "c_variant"))
        print(f"M={m:g}: bne regret {report.bne_max_regret:.3g}, "
              f"player 3 max utility {report.player3_max_utility:.3g}, "
              f"ratio lower bound {report.ratio_lower:.6f}, direct ratio {report.ratio_direct:.6f} "
              f"({time_synchronized() - start_time:.1f}s)")
        for failure in report.failures:
            print(f"\t- FAILED: {failure}")
        save_json(report, output_path(config, f"allpay_M{m:g}.json"), config)
        rows.append([m, 4.0 * report.ratio_lower, report.ratio_lower, report.bne_max_regret])
        passed = passed and report.passed

    if len(ms) > 1:
        if np.any(np.diff([r[2] for r in rows]) <= 0.0):
            print("Ratio lower bound is not increasing in M.")
            passed = False
        save_csv(rows, ["M", "v3", "ratio_lower", "bne_regret"], output_path(config, "allpay_sweep.csv"), config)
    return EXIT_PASS if passed else EXIT_FALSIFIED


def zero_welfare_ce(config):
    report = verify_correlated_zero_welfare(config.get_float("utility", "gamma"))
    print(f"gamma={report.gamma}: ce regret {report.max_regret!r}, welfare {report.sw!r}, "
          f"utilities {report.utilities}")
    save_json(report, output_path(config, "zero_welfare_ce.json"), config)
    return EXIT_PASS if report.passed else EXIT_FALSIFIED


def two_item(config):
    passed = True
    for gamma in config.get_list("utility", "gamma"):
        report = verify_two_item(float(gamma), config.get_float("instance", "eps1"))
        print(f"gamma={report.gamma}: c={report.c:g}, u2 closed form {report.u2_closed_form:.15g}, "
              f"enumerated {report.u2_enumerated:.15g}, NE certified {report.ne_certified}, "
              f"ratio {report.ratio:.6g}")
        save_json(report, output_path(config, f"two_item_gamma{float(gamma):g}.json"), config)
        passed = passed and report.passed
    return EXIT_PASS if passed else EXIT_FALSIFIED


def welfare_doubling(config):
    rng = np.random.default_rng(config.get_int("experiment", "seed"))
    kinds = config.get_list("utility", "kind")
    n_players = config.get_int("instance", "players")
    low, high = config.get_float("instance", "value_min"), config.get_float("instance", "value_max")
    n_payments = config.get_int("grid", "payments")
    outcomes = single_item_outcomes(n_players)

    rows, failures = [], []
    pbar = tqdm(range(config.get_int("instance", "n")))
    for k in pbar:
        kind = kinds[k % len(kinds)]
        values = rng.uniform(low, high, size=n_players)
        models = [make_utility_model(kind, float(v), slope=config.get_float("utility", "slope")) for v in values]
        report = check_welfare_doubling(models, outcomes, n_payments)
        rows.append([k, report.opt, report.opt_hat, report.opt / report.opt_hat])
        if not report.passed:
            failures.append(dict(instance=k, kind=kind, values=values.tolist(), **report.violation))
        pbar.set_description(f"failures {len(failures)}")

    ratios = [r[3] for r in rows]
    print(f"{len(rows)} instances, {len(failures)} failures, OPT/OPT-hat in [{min(ratios):.6f}, {max(ratios):.6f}]")
    save_csv(rows, ["instance_id", "opt", "opt_hat", "ratio"], output_path(config, "welfare_doubling.csv"), config)
    save_json(dict(instances=len(rows), failures=failures, max_ratio=max(ratios)),
              output_path(config, "welfare_doubling.json"), config)
    return EXIT_PASS if not failures else EXIT_FALSIFIED


def normalization(config):
    value_max = config.get_float("instance", "value_max")
    v_grid = value_grid(config.get_int("grid", "values"), config.get_float("instance", "value_min"), value_max)
    p_grid = np.linspace(0.0, 2.0 * value_max, config.get_int("grid", "payments"))
    results = {}
    passed = True
    for kind in config.get_list("utility", "kind"):
        model = make_utility_model(kind, 1.0, slope=config.get_float("utility", "slope"))
        report = check_normalization(model, v_grid, p_grid)
        constant = relaxation_constant(model, v_grid, p_grid)
        print(f"{kind}: {'pass' if report.passed else 'FAIL'} ({report.checked} points), relaxation C={constant:.6f}")
        if not report.passed:
            print(f"\t- {report.violation}")
        results[kind] = dict(passed=report.passed, checked=report.checked, violation=report.violation,
                             relaxation=constant)
        passed = passed and report.passed
    save_json(dict(passed=passed, models=results), output_path(config, "normalization.json"), config)
    return EXIT_PASS if passed else EXIT_FALSIFIED


def main(argv=None):
    parser = ArgumentParser()
    parser.add_argument("--task", type=str, default="allpay-lower-bound", choices=supported_tasks,
                        help="Which construction or check to verify. (default=allpay-lower-bound)")
    parser.add_argument("--config", type=str, default="",
                        help="Experiment config, `*.cfg` under cfgs/ or a JSON document. (default=none)")
    parser.add_argument("--m", type=float, nargs="+", default=None,
                        help="Value range bound(s) M > 5 of the all-pay instance. (default=8)")
    parser.add_argument("--tol", type=float, default=None, help="Quadrature tolerance. (default=1e-8)")
    parser.add_argument("--grid-values", type=int, default=None,
                        help="Value points per region of the bidder type grid. (default=200)")
    parser.add_argument("--grid-bids", type=int, default=None,
                        help="Bid points scanned per type. (default=100)")
    parser.add_argument("--extra-bids", type=int, default=None,
                        help="Bids of player 3 checked for negative utility. (default=2000)")
    parser.add_argument("--c-variant", type=str, default=None, choices=["main", "reduced"],
                        help="Slope formula of player 3. (default=main)")
    parser.add_argument("--gamma", type=float, nargs="+", default=None,
                        help="Variance aversion level(s) in [0, 1]. (default=0)")
    parser.add_argument("--eps1", type=float, default=None,
                        help="Item values of player 1 in the two-item instance. (default=0.01)")
    parser.add_argument("--utility", type=str, nargs="+", default=None,
                        help="Utility kind(s): quasilinear, exponential, piecewise, linear. (default=quasilinear)")
    parser.add_argument("--slope", type=float, default=None, help="Slope C of the piecewise transform. (default=1)")
    parser.add_argument("--n", type=int, default=None, help="Number of random instances. (default=10)")
    parser.add_argument("--players", type=int, default=None, help="Players per instance. (default=2)")
    parser.add_argument("--payments", type=int, default=None, help="Payment grid size. (default=512)")
    parser.add_argument("--seed", type=int, default=None, help="Random seed. (default=0)")
    parser.add_argument("--out", type=str, default=None, help="Output folder. (default=outputs)")
    args = parser.parse_args(argv)

    print(args)

    try:
        config = load_config(args.config, args.task, [
            ("instance", "m", args.m),
            ("instance", "tol", args.tol),
            ("instance", "grid_values", args.grid_values),
            ("instance", "grid_bids", args.grid_bids),
            ("instance", "extra_bids", args.extra_bids),
            ("instance", "c_variant", args.c_variant),
            ("instance", "eps1", args.eps1),
            ("instance", "n", args.n),
            ("instance", "players", args.players),
            ("utility", "gamma", args.gamma),
            ("utility", "kind", args.utility),
            ("utility", "slope", args.slope),
            ("grid", "payments", args.payments),
            ("experiment", "seed", args.seed),
            ("experiment", "out", args.out),
        ])
        if args.task == "two-item" and min(config.get_list("utility", "gamma")) <= 0.0:
            raise ValueError("The two-item instance needs gamma > 0, pass --gamma.")
    except (AssertionError, ValueError, OSError) as e:
        print(f"ERROR: {e}")
        return EXIT_USAGE
    init_seeds(config.get_int("experiment", "seed"))

    if args.task == "allpay-lower-bound":
        return allpay_lower_bound(config)
    elif args.task == "zero-welfare-ce":
        return zero_welfare_ce(config)
    elif args.task == "two-item":
        return two_item(config)
    elif args.task == "welfare-doubling":
        return welfare_doubling(config)
    return normalization(config)


if __name__ == "__main__":
    sys.exit(main())

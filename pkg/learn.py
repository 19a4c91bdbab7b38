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
import warnings

import numpy as np

from riskpoa.constructions import bounded_slope_poa_bound
from riskpoa.equilibria import CompleteInfoGame
from riskpoa.equilibria import CorrelatedDist
from riskpoa.equilibria import cce_regret
from riskpoa.equilibria import ce_regret
from riskpoa.equilibria import empirical_poa
from riskpoa.equilibria import learn_hedge
from riskpoa.equilibria import learn_regret_matching
from riskpoa.equilibria import make_game_family
from riskpoa.equilibria import welfare_bound_check
from riskpoa.mechanisms import MechanismSpec
from riskpoa.smoothness import SmoothnessParams
from riskpoa.utility import make_utility_model
from riskpoa.utils import ArgumentParser
from riskpoa.utils import EXIT_FALSIFIED
from riskpoa.utils import EXIT_PASS
from riskpoa.utils import EXIT_UNCERTIFIED
from riskpoa.utils import EXIT_USAGE
from riskpoa.utils import bid_grid
from riskpoa.utils import init_seeds
from riskpoa.utils import load_config
from riskpoa.utils import output_path
from riskpoa.utils import save_csv
from riskpoa.utils import save_json
from riskpoa.utils import select_device
from riskpoa.utils import time_synchronized

supported_tasks = ["learn", "poa-sweep"]
supported_priors = ["none", "alternating"]


def build_game(config, device="cpu"):
    values = [float(v) for v in config.get_list("instance", "values", [1.0, 1.0])]
    models = [make_utility_model(config.get("utility", "kind"), v, slope=config.get_float("utility", "slope"))
              for v in values]
    spec = MechanismSpec(config.get("mechanism", "kind"), len(values), config.get("mechanism", "tie_break"))
    grid = bid_grid(config.get_int("grid", "bids"), config.get_float("grid", "bid_max"),
                    bool(config.get_int("grid", "geometric")))
    return CompleteInfoGame(spec, models, [grid] * len(values), device)


def alternating_prior(game):
    """ One bidder at the top of the grid, the other at 0, each with probability 1/2. """
    assert game.n_players == 2, f"The alternating prior needs 2 players, got {game.n_players}."
    top = float(game.grids[0][-1])
    return CorrelatedDist([(top, 0.0), (0.0, top)], [0.5, 0.5])


def learn(config, device):
    game = build_game(config, device)
    source = config.get("learner", "source")
    gamma = config.get_float("utility", "gamma")
    seed = config.get_int("experiment", "seed")
    iterations = config.get_int("learner", "iterations")
    value_max = max(float(v) for v in config.get_list("instance", "values", [1.0]))
    epsilon = config.get_float("learner", "epsilon", 1e-3 * value_max)
    prior_name = config.get("learner", "prior")
    if prior_name not in supported_priors:
        raise ValueError(f"Unknown prior: {prior_name}")
    prior = alternating_prior(game) if prior_name == "alternating" else None

    start_time = time_synchronized()
    if source == "regret-matching":
        run = learn_regret_matching(game, iterations, seed=seed, checkpoints=config.get_int("learner", "checkpoints"),
                                    prior=prior, prior_weight=config.get_float("learner", "prior_weight"),
                                    progress=True)
        report = ce_regret(game, run.dist, gamma)
    elif source == "hedge":
        if prior is not None:
            warnings.warn("WARNING: Hedge ignores the warm start prior.")
        run = learn_hedge(game, iterations, lr=config.get_float("learner", "lr"),
                          schedule=config.get("learner", "schedule"), warmup=config.get_int("learner", "warmup"),
                          seed=seed, checkpoints=config.get_int("learner", "checkpoints"), progress=True)
        report = cce_regret(game, run.dist, gamma)
    else:
        raise ValueError(f"Unknown equilibrium source: {source}")
    print(f"Learned in {time_synchronized() - start_time:.1f}s.")

    certified = report.max_regret <= epsilon
    result = dict(source=source, gamma=gamma, epsilon=epsilon, certified=certified, max_regret=report.max_regret,
                  weighted_regret=report.weighted_regret, coarse_regret=report.coarse_regret,
                  welfare=report.welfare, opt_hat=game.opt_hat(), learning=run.to_dict())
    if prior is not None:
        prior_report = ce_regret(game, prior, gamma)
        result.update(prior_regret=prior_report.max_regret, prior_welfare=prior_report.welfare)
        print(f"Warm start: regret {prior_report.max_regret!r}, welfare {prior_report.welfare!r}")
    if config.get("smoothness", "lambda") is not None:
        params = SmoothnessParams(config.get_float("smoothness", "lambda"), config.get_float("smoothness", "mu", 0.0))
        bound = welfare_bound_check(game, run.dist, params)
        result["welfare_bound"] = bound.to_dict()
        print(f"Welfare {bound.welfare:.6f} vs bound {bound.bound:.6f} * OPT-hat {bound.opt_hat:.6f} "
              f"- slack {bound.slack:.3g}: {'pass' if bound.passed else 'FAIL'}")
        if certified and not bound.passed:
            save_json(result, output_path(config, "learn.json"), config)
            return EXIT_FALSIFIED

    print(f"{source}: regret {report.max_regret:.3g} (epsilon {epsilon:.3g}), welfare {report.welfare:.6f}")
    trace = [[r["iteration"], r["internal_regret"], r["conditional_regret"], r["external_regret"], r["welfare"]]
             for r in run.trace]
    save_csv(trace, ["iteration", "internal_regret", "conditional_regret", "external_regret", "welfare"],
             output_path(config, "learn_trace.csv"), config)
    save_json(result, output_path(config, "learn.json"), config)
    return EXIT_PASS if certified else EXIT_UNCERTIFIED


def poa_sweep(config):
    family_name = config.get("instance", "family", "first-price-quasilinear")
    slope = config.get_float("utility", "slope")
    family = make_game_family(family_name,
                              n_players=config.get_int("instance", "players"),
                              value_min=config.get_float("instance", "value_min"),
                              value_max=config.get_float("instance", "value_max"),
                              n_bids=config.get_int("grid", "bids"),
                              slope=slope,
                              tie_break=config.get("mechanism", "tie_break"))
    source = config.get("learner", "source")
    learner = {}
    if source == "hedge":
        learner = dict(lr=config.get_float("learner", "lr"), schedule=config.get("learner", "schedule"),
                       warmup=config.get_int("learner", "warmup"))
    result = empirical_poa(family, source, n_instances=config.get_int("instance", "n"),
                           seed=config.get_int("experiment", "seed"),
                           iterations=config.get_int("learner", "iterations"),
                           epsilon=config.get_float("learner", "epsilon"),
                           n_payments=config.get_int("grid", "payments"), progress=True,
                           checkpoints=config.get_int("learner", "checkpoints"), **learner)

    summary = dict(family=family_name, certified=len(result.rows), excluded=result.excluded,
                   max_ratio=result.max_ratio)
    print(f"{family_name}: {len(result.rows)} certified, {result.excluded} excluded, max ratio {result.max_ratio:.6f}")
    exit_code = EXIT_PASS if result.rows else EXIT_UNCERTIFIED
    if family.mechanism == "all-pay" and result.rows:
        bound = bounded_slope_poa_bound(slope if family.utility == "piecewise" else 1.0)
        summary["slope_bound"] = bound
        print(f"Bounded slope PoA bound 4(C+1) = {bound:g}")
        if np.isfinite(result.max_ratio) and result.max_ratio > bound:
            exit_code = EXIT_FALSIFIED
    save_csv(result.table(), list(result.columns), output_path(config, "poa_sweep.csv"), config)
    save_json(summary, output_path(config, "poa_sweep.json"), config)
    return exit_code


def main(argv=None):
    parser = ArgumentParser()
    parser.add_argument("--task", type=str, default="learn", choices=supported_tasks,
                        help="Learn one game or sweep a random family. (default=learn)")
    parser.add_argument("--config", type=str, default="",
                        help="Experiment config, `*.cfg` under cfgs/ or a JSON document. (default=none)")
    parser.add_argument("--mechanism", type=str, default=None,
                        help="first-price, second-price or all-pay. (default=first-price)")
    parser.add_argument("--tie-break", type=str, default=None, help="uniform or lowest-index. (default=uniform)")
    parser.add_argument("--utility", type=str, default=None,
                        help="quasilinear, exponential, piecewise or linear. (default=quasilinear)")
    parser.add_argument("--slope", type=float, default=None, help="Slope C of the piecewise transform. (default=1)")
    parser.add_argument("--gamma", type=float, default=None,
                        help="Variance aversion used to certify the run. (default=0)")
    parser.add_argument("--values", type=float, nargs="+", default=None,
                        help="One value per player. (default=1 1)")
    parser.add_argument("--bids", type=int, default=None, help="Bid grid size. (default=11)")
    parser.add_argument("--bid-max", type=float, default=None, help="Largest bid. (default=1)")
    parser.add_argument("--source", type=str, default=None, help="regret-matching or hedge. (default=regret-matching)")
    parser.add_argument("--iters", type=int, default=None, help="Learning iterations. (default=10000)")
    parser.add_argument("--lr", type=float, default=None, help="Hedge learning rate. (default=0.1)")
    parser.add_argument("--schedule", type=str, default=None,
                        help="Hedge schedule: constant, inverse-sqrt, cosine, multistep. (default=inverse-sqrt)")
    parser.add_argument("--epsilon", type=float, default=None,
                        help="Regret accepted as certified. (default=1e-3 * max value)")
    parser.add_argument("--prior", type=str, default=None, help="Warm start: none or alternating. (default=none)")
    parser.add_argument("--prior-weight", type=float, default=None, help="Pseudo-rounds of the prior. (default=0)")
    parser.add_argument("--family", type=str, default=None,
                        help="Game family of the sweep. (default=first-price-quasilinear)")
    parser.add_argument("--n", type=int, default=None, help="Instances in the sweep. (default=10)")
    parser.add_argument("--players", type=int, default=None, help="Players per sweep instance. (default=2)")
    parser.add_argument("--seed", type=int, default=None, help="Random seed. (default=0)")
    parser.add_argument("--device", type=str, default=None, help="cpu or a cuda device id. (default=cpu)")
    parser.add_argument("--out", type=str, default=None, help="Output folder. (default=outputs)")
    args = parser.parse_args(argv)

    print(args)

    try:
        config = load_config(args.config, args.task, [
            ("mechanism", "kind", args.mechanism),
            ("mechanism", "tie_break", args.tie_break),
            ("utility", "kind", args.utility),
            ("utility", "slope", args.slope),
            ("utility", "gamma", args.gamma),
            ("instance", "values", args.values),
            ("instance", "family", args.family),
            ("instance", "n", args.n),
            ("instance", "players", args.players),
            ("grid", "bids", args.bids),
            ("grid", "bid_max", args.bid_max),
            ("learner", "source", args.source),
            ("learner", "iterations", args.iters),
            ("learner", "lr", args.lr),
            ("learner", "schedule", args.schedule),
            ("learner", "epsilon", args.epsilon),
            ("learner", "prior", args.prior),
            ("learner", "prior_weight", args.prior_weight),
            ("experiment", "seed", args.seed),
            ("experiment", "device", args.device),
            ("experiment", "out", args.out),
        ])
        if args.task == "learn":
            build_game(config)  # rejects unknown mechanisms, utilities and bad grids
    except (AssertionError, ValueError, OSError) as e:
        print(f"ERROR: {e}")
        return EXIT_USAGE
    init_seeds(config.get_int("experiment", "seed"))
    device = select_device(config.get("experiment", "device"))

    if args.task == "learn":
        return learn(config, device)
    return poa_sweep(config)


if __name__ == "__main__":
    sys.exit(main())

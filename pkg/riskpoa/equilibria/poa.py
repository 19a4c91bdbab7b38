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
import warnings
from dataclasses import dataclass
from dataclasses import field

import numpy as np
from tqdm import tqdm

from riskpoa.mechanisms import MechanismSpec
from riskpoa.mechanisms import UNIFORM
from riskpoa.utility import make_utility_model
from riskpoa.welfare import optimal_welfare
from .game import CompleteInfoGame
from .learning import learn_hedge
from .learning import learn_regret_matching
from .regret import cce_regret
from .regret import ce_regret

supported_sources = ["regret-matching", "hedge"]


@dataclass
class GameFamily:
    """ Random single-item instances: i.i.d. uniform values, a shared bid grid. """
    mechanism: str = "first-price"
    utility: str = "quasilinear"
    n_players: int = 2
    value_min: float = 0.5
    value_max: float = 1.0
    n_bids: int = 11
    slope: float = 1.0
    tie_break: str = UNIFORM

    def __post_init__(self):
        if self.n_players < 1:
            raise ValueError(f"A game family needs at least one player, got {self.n_players}.")
        if not 0.0 <= self.value_min <= self.value_max:
            raise ValueError(f"Need 0 <= value_min <= value_max, got {self.value_min}, {self.value_max}.")
        if self.n_bids < 2:
            raise ValueError(f"Bid grids need at least 2 points, got {self.n_bids}.")

    def sample(self, rng):
        values = rng.uniform(self.value_min, self.value_max, size=self.n_players)
        models = [make_utility_model(self.utility, float(v), slope=self.slope) for v in values]
        grid = np.linspace(0.0, self.value_max, self.n_bids)
        spec = MechanismSpec(self.mechanism, self.n_players, self.tie_break)
        return CompleteInfoGame(spec, models, [grid] * self.n_players)


def make_game_family(name, **kwargs):
    """ Named families used by the sweeps; keyword arguments override fields. """
    presets = {
        "first-price-quasilinear": dict(mechanism="first-price", utility="quasilinear"),
        "first-price-exponential": dict(mechanism="first-price", utility="exponential"),
        "all-pay-quasilinear": dict(mechanism="all-pay", utility="quasilinear"),
        "all-pay-piecewise": dict(mechanism="all-pay", utility="piecewise"),
        "second-price-quasilinear": dict(mechanism="second-price", utility="quasilinear"),
        "single-bidder": dict(mechanism="first-price", utility="quasilinear", n_players=1),
    }
    if name not in presets:
        raise ValueError(f"Unknown game family: {name}")
    fields = dict(presets[name])
    fields.update({k: v for k, v in kwargs.items() if v is not None})
    return GameFamily(**fields)


@dataclass
class PoAResult:
    rows: list = field(default_factory=list)
    max_ratio: float = float("nan")
    excluded: int = 0

    columns = ("instance_id", "sw_eq", "opt", "opt_hat", "ratio")

    def table(self):
        return np.array([[r[c] for c in self.columns] for r in self.rows], dtype=np.float64).reshape(-1, 5)


def empirical_poa(family: GameFamily, source="regret-matching", n_instances=10, seed=0,
                  iterations=10000, epsilon=None, n_payments=512, progress=False, **learner):
    """ Learn equilibria on random instances and compare them with OPT.

    Runs whose regret (the conditional regret of `ce_regret` for regret
    matching, the external regret for Hedge) exceeds `epsilon`, by default 1e-3 times the largest possible value, are
    excluded with a warning.

    Returns:
        PoAResult with one row (instance_id, sw_eq, opt, opt_hat, ratio) per
        certified instance and the worst ratio OPT / sw_eq among them.
    """
    if source not in supported_sources:
        raise ValueError(f"Unknown equilibrium source: {source}")
    if n_instances <= 0:
        raise ValueError(f"n_instances must be positive, got {n_instances}.")
    epsilon = 1e-3 * family.value_max if epsilon is None else epsilon
    rng = np.random.default_rng(seed)

    result = PoAResult()
    for k in tqdm(range(n_instances), disable=not progress):
        game = family.sample(rng)
        run_seed = int(rng.integers(2 ** 31))
        if source == "regret-matching":
            run = learn_regret_matching(game, iterations, seed=run_seed, **learner)
            report = ce_regret(game, run.dist)
        else:
            run = learn_hedge(game, iterations, seed=run_seed, **learner)
            report = cce_regret(game, run.dist)
        if report.max_regret > epsilon:
            warnings.warn(f"WARNING: instance {k} not certified (regret {report.max_regret:.3g} > "
                          f"{epsilon:.3g}), excluded from the sweep.")
            result.excluded += 1
            continue
        opt = optimal_welfare(game.models, game.outcome_space(), n_payments).value
        sw = report.welfare
        ratio = opt / sw if sw > 0.0 else float("inf")
        result.rows.append(dict(instance_id=k, sw_eq=sw, opt=opt, opt_hat=game.opt_hat(), ratio=ratio))
    if result.rows:
        result.max_ratio = max(r["ratio"] for r in result.rows)
    return result

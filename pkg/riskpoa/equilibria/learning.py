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
from dataclasses import dataclass
from dataclasses import field
from typing import Optional

import numpy as np
import torch
from tqdm import tqdm

from riskpoa.solver import Hedge
from riskpoa.solver import build_lr_scheduler
from .game import CompleteInfoGame
from .game import CorrelatedDist
from .regret import conditional_regret
from .regret import expected_welfare
from .regret import external_regret
from .regret import internal_regret


@dataclass
class LearningResult:
    """ Empirical play of a learning run.

    `regret_bound` is the regret of the empirical joint distribution under the
    notion the run is certified with: the unweighted conditional swap regret
    of `ce_regret` for regret matching, the external regret for Hedge. Both
    come from the play counts. `internal_regret` is the probability-weighted
    swap regret that regret matching drives to zero.
    """
    dist: CorrelatedDist
    joint: np.ndarray
    regret_bound: float
    iterations: int
    seed: int
    trace: list = field(default_factory=list)
    mixed: Optional[list] = None
    internal_regret: Optional[float] = None

    def to_dict(self):
        out = {"iterations": self.iterations, "seed": self.seed, "regret_bound": self.regret_bound,
               "internal_regret": self.internal_regret,
               "dist": self.dist.to_dict(), "trace": self.trace}
        if self.mixed is not None:
            out["mixed"] = [m.tolist() for m in self.mixed]
        return out


def _checkpoints(iterations, checkpoints):
    marks = set(np.linspace(1, iterations, max(int(checkpoints), 1)).astype(int).tolist())
    marks.add(iterations)
    return marks


def _record(game, counts, iteration):
    joint = counts / counts.sum()
    return dict(iteration=iteration,
                internal_regret=internal_regret(game, counts),
                conditional_regret=conditional_regret(game, counts),
                external_regret=external_regret(game, counts),
                welfare=expected_welfare(game, joint))


def _stationary(positive):
    """ Fixed point p = p Q of the regret-proportional transition matrix Q. """
    k = positive.shape[0]
    positive = positive.copy()
    np.fill_diagonal(positive, 0.0)
    totals = positive.sum(axis=1)
    mu = totals.max()
    if mu <= 0.0:
        return np.full(k, 1.0 / k)
    transition = positive / mu
    transition[np.diag_indices(k)] = 1.0 - totals / mu
    system = np.vstack([transition.T - np.eye(k), np.ones((1, k))])
    target = np.zeros(k + 1)
    target[-1] = 1.0
    p = np.linalg.lstsq(system, target, rcond=None)[0]
    p = np.clip(p, 0.0, None)
    return p / p.sum()


def _utility_vector(table, profile, player):
    index = list(profile)
    index[player] = slice(None)
    return table[tuple(index) + (player,)]


def learn_regret_matching(game: CompleteInfoGame, iterations, seed=0, checkpoints=10,
                          prior=None, prior_weight=0.0, progress=False):
    """ Internal regret matching; the empirical joint play approximates a CE.

    Each player keeps a swap-regret matrix R[j, k], plays the stationary
    distribution of the chain that moves from j to k in proportion to R+[j, k]
    and, after the realised profile, adds p(j) * (u(k, a_-i) - u(j, a_-i)).

    Args:
        game (CompleteInfoGame): Finite game, utilities in expectation over ties.
        iterations (int): Number of rounds, > 0.
        seed (int): Seed of the private `np.random.default_rng`.
        checkpoints (int): Trace entries spread over the run. (default=10)
        prior (CorrelatedDist): Optional warm start, counted as `prior_weight`
            pseudo-rounds of play in the empirical distribution.
        progress (bool): Show a tqdm bar.
    """
    if iterations <= 0:
        raise ValueError(f"iterations must be positive, got {iterations}.")
    rng = np.random.default_rng(seed)
    table = game.tables.expected
    regrets = [np.zeros((k, k)) for k in game.shape]
    counts = np.zeros(game.shape)
    if prior is not None:
        counts += prior_weight * prior.to_tensor(game)
    marks = _checkpoints(iterations, checkpoints)

    trace = []
    pbar = tqdm(range(1, iterations + 1), disable=not progress)
    for t in pbar:
        strategies = [_stationary(np.maximum(r, 0.0)) for r in regrets]
        profile = tuple(int(rng.choice(k, p=s)) for k, s in zip(game.shape, strategies))
        counts[profile] += 1.0
        for i, strategy in enumerate(strategies):
            u = _utility_vector(table, profile, i)
            regrets[i] += strategy[:, None] * (u[None, :] - u[:, None])
        if t in marks:
            trace.append(_record(game, counts, t))
            pbar.set_description(f"internal regret {trace[-1]['internal_regret']:.5f}")

    joint = counts / counts.sum()
    return LearningResult(dist=CorrelatedDist.from_tensor(game, joint), joint=joint,
                          regret_bound=conditional_regret(game, counts), iterations=iterations,
                          seed=seed, trace=trace, internal_regret=internal_regret(game, counts))


def learn_hedge(game: CompleteInfoGame, iterations, lr=0.1, schedule="inverse-sqrt", warmup=0,
                seed=0, checkpoints=10, progress=False):
    """ Independent Hedge learners; the empirical joint play approximates a CCE.

    Every player updates on the full utility vector against the realised
    opponent actions. Returns the empirical joint distribution, the average
    mixed strategies and an external-regret trace.
    """
    if iterations <= 0:
        raise ValueError(f"iterations must be positive, got {iterations}.")
    generator = torch.Generator().manual_seed(seed)
    table = torch.as_tensor(game.tables.expected, dtype=torch.float64)
    logits = [torch.zeros(k, dtype=torch.float64, requires_grad=True) for k in game.shape]
    optimizer = Hedge(logits, lr=lr)
    scheduler = build_lr_scheduler(schedule, optimizer, lr, iterations, warmup)
    counts = np.zeros(game.shape)
    average = [np.zeros(k) for k in game.shape]
    marks = _checkpoints(iterations, checkpoints)

    trace = []
    pbar = tqdm(range(1, iterations + 1), disable=not progress)
    for t in pbar:
        with torch.no_grad():
            probs = [Hedge.probabilities(p) for p in logits]
        profile = tuple(int(torch.multinomial(p, 1, generator=generator)) for p in probs)
        counts[profile] += 1.0
        for i, p in enumerate(probs):
            average[i] += p.numpy()
            logits[i].grad = _utility_vector(table, profile, i).clone()
        scheduler.step(t - 1)
        optimizer.step()
        if t in marks:
            trace.append(_record(game, counts, t))
            pbar.set_description(f"external regret {trace[-1]['external_regret']:.5f}")

    joint = counts / counts.sum()
    return LearningResult(dist=CorrelatedDist.from_tensor(game, joint), joint=joint,
                          regret_bound=external_regret(game, counts), iterations=iterations,
                          seed=seed, trace=trace, mixed=[a / iterations for a in average])

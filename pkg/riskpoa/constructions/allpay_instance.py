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
import math
from dataclasses import dataclass
from dataclasses import field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from riskpoa.equilibria import AnalyticBid
from riskpoa.equilibria import BayesStrategy
from riskpoa.equilibria import DiscretizedBayesianGame
from riskpoa.equilibria import bne_regret
from riskpoa.mechanisms import ALL_PAY
from riskpoa.mechanisms import LOWEST_INDEX
from riskpoa.mechanisms import MechanismSpec
from riskpoa.solver import adaptive_simpson
from riskpoa.solver import bisect_increasing
from riskpoa.solver import gauss_legendre
from riskpoa.utility import ConcaveTransform
from riskpoa.utility import UtilityModel


class AllPayLowerBoundInstance(object):
    def __init__(self, m, tol=1e-8, c_variant="main"):
        """ Three-player all-pay auction whose equilibrium welfare stays bounded
        while the optimum grows like ln(M).

        Players 1 and 2 are exponential risk-averse with i.i.d. values of
        density 2(1 - (M - 1) eps) on [1/2, 1) and eps = 1/M^2 on [1, M], and
        bid beta(v). Player 3 has the fixed value v3 = ln(M/2)/3, a piecewise
        linear transform of slope C below zero, and bids 0.

        Args:
            m (float): M, must exceed 5.
            tol (float): Absolute tolerance of the adaptive quadrature.
            c_variant (str): `main` for C = 16 v3 M^2, `reduced` for
                C = (16 v3 - 1) M^2.
        """
        m = float(m)
        if not m > 5.0:
            raise ValueError(f"M must exceed 5, got {m}.")
        if c_variant not in ("main", "reduced"):
            raise ValueError(f"Unknown C variant: {c_variant}")
        self.m = m
        self.tol = tol
        self.c_variant = c_variant
        self.eps = 1.0 / (m * m)
        # F(1), the mass of [1/2, 1)
        self.low = 1.0 - (m - 1.0) * self.eps
        self.v3 = math.log(m / 2.0) / 3.0
        self.c = 16.0 * self.v3 * m * m if c_variant == "main" else (16.0 * self.v3 - 1.0) * m * m
        assert abs(self.low + self.eps * (m - 1.0) - 1.0) <= 1e-12, "Type density must integrate to 1."
        assert self.c >= 32.0 * self.v3, f"Slope C = {self.c} below 32 v3."
        self._build_table()

    def total_mass(self):
        """ Integral of the density as an exact rational in M. """
        m = Fraction(self.m)
        eps = 1 / (m * m)
        return 2 * (1 - (m - 1) * eps) * Fraction(1, 2) + eps * (m - 1)

    def _check_support(self, t):
        t = np.asarray(t, dtype=np.float64)
        if np.any(t < 0.5) or np.any(t > self.m) or np.any(np.isnan(t)):
            raise ValueError(f"t must lie in [1/2, {self.m}], got values in [{t.min()}, {t.max()}].")
        return t

    def pdf(self, t):
        t = self._check_support(t)
        return np.where(t < 1.0, 2.0 * self.low, self.eps)

    def cdf(self, t):
        t = self._check_support(t)
        return np.where(t < 1.0, 2.0 * self.low * (t - 0.5), self.low + self.eps * (t - 1.0))

    def sf(self, t):
        t = self._check_support(t)
        return np.where(t < 1.0, 1.0 - 2.0 * self.low * (t - 0.5), self.eps * (self.m - t))

    def integrand(self, t):
        """ f(t)(1 - e^-t) / (F(t) e^-t + 1 - F(t)), finite for every t. """
        return self.pdf(t) * -np.expm1(-t) / (self.cdf(t) * np.exp(-t) + self.sf(t))

    def naive_integrand(self, t):
        with np.errstate(over="ignore", invalid="ignore"):
            return self.pdf(t) * np.expm1(t) / (self.cdf(t) + self.sf(t) * np.exp(t))

    def _build_table(self):
        m = self.m
        knee = min(60.0, (1.0 + m) / 2.0)
        floor = max(1e-9 * m, 1e-12)
        gaps = (m - knee) * 0.8 ** np.arange(int(math.log(floor / (m - knee)) / math.log(0.8)) + 1)
        anchors = [np.linspace(0.5, 1.0, 11), np.arange(1.0, knee, 0.25), m - gaps]
        # beta(M) is finite only while e^-M still dominates eps (M - t) near M
        if math.exp(-m) / self.eps >= floor:
            anchors.append([m])
        self.anchors = np.unique(np.concatenate(anchors))
        segments = gauss_legendre(self.integrand, self.anchors[:-1], self.anchors[1:])
        self.cumulative = np.concatenate([[0.0], np.cumsum(segments)])
        self.x_max = float(self.anchors[-1])
        self.beta_max = float(self.cumulative[-1])

    def beta(self, x):
        """ beta on arrays: tabulated segment sums plus one Gauss-Legendre panel. """
        x = np.asarray(x, dtype=np.float64)
        if np.any(x < 0.5) or np.any(x > self.x_max):
            raise ValueError(f"x must lie in [1/2, {self.x_max}] for M = {self.m}.")
        k = np.clip(np.searchsorted(self.anchors, x, side="right") - 1, 0, self.anchors.size - 2)
        return self.cumulative[k] + gauss_legendre(self.integrand, self.anchors[k], x)

    def beta_bid(self, x):
        """ beta(x) by adaptive Simpson, split at the density jump. """
        if not 0.5 <= x <= self.m:
            raise ValueError(f"x must lie in [1/2, {self.m}], got {x}.")
        if x <= 1.0:
            return adaptive_simpson(self.integrand, 0.5, x, self.tol)[0]
        head = adaptive_simpson(self.integrand, 0.5, 1.0, self.tol / 2.0)[0]
        return head + adaptive_simpson(self.integrand, 1.0, x, self.tol / 2.0)[0]

    def beta_inverse(self, y):
        y = np.asarray(y, dtype=np.float64)
        if np.any(y < 0.0) or np.any(y > self.beta_max):
            raise ValueError(f"y must lie in [0, {self.beta_max}], got values in [{y.min()}, {y.max()}].")
        return bisect_increasing(self.beta, y, 0.5, self.x_max)

    def clipped_inverse(self, b):
        return self.beta_inverse(np.clip(np.asarray(b, dtype=np.float64), 0.0, self.beta_max))

    def g_value(self, x, y):
        """ Expected utility of type x bidding y against beta, as a function of y. """
        x = self._check_type(x)
        z = self.beta_inverse(y)
        return x * np.exp(y) * self.cdf(z) + x * -np.expm1(y) / -np.expm1(-x)

    def g_prime(self, x, y):
        x = self._check_type(x)
        z = self.beta_inverse(y)
        return x * np.exp(y) * (np.exp(-z) - np.exp(-x)) / (-np.expm1(-x) * -np.expm1(-z))

    def _check_type(self, x):
        x = np.asarray(x, dtype=np.float64)
        if np.any(x <= 0.5) or np.any(x > self.m):
            raise ValueError(f"x must lie in (1/2, {self.m}].")
        return x

    def bidder_model(self, x):
        return UtilityModel.scaled(ConcaveTransform.exponential(), float(x))

    def player3_model(self):
        return UtilityModel.scaled(ConcaveTransform.piecewise(self.c), self.v3)

    def player3_utility(self, b3):
        """ Expected utility of player 3 bidding b3 while players 1 and 2 play beta. """
        b3 = np.asarray(b3, dtype=np.float64)
        if np.any(b3 < 0.0):
            raise ValueError("Player 3 bids must be non-negative.")
        z = self.clipped_inverse(b3)
        with np.errstate(divide="ignore"):
            log_win = 2.0 * np.log1p(-np.minimum(self.sf(z), 1.0))
        probs = np.stack([np.exp(log_win), -np.expm1(log_win)], axis=-1)
        values = np.stack([np.full(b3.shape, self.v3), np.zeros(b3.shape)], axis=-1)
        return self.player3_model().expected(probs, values, np.stack([b3, b3], axis=-1))

    def equilibrium_welfare(self):
        """ E[SW] with players 1, 2 on beta and player 3 at 0, by quadrature. """
        def density(x):
            b = self.beta(x)
            utility = x / -np.expm1(-x) * (1.0 - np.exp(b) * (self.cdf(x) * np.exp(-x) + self.sf(x)))
            return self.pdf(x) * (utility + b)
        return 2.0 * float(gauss_legendre(density, self.anchors[:-1], self.anchors[1:]).sum())

    def _tail(self, lo):
        """ Integral of 1 - F(t)^2 over [lo, M]. """
        total = 0.0
        if lo < 1.0:
            total += float(gauss_legendre(lambda t: self.sf(t) * (2.0 - self.sf(t)), lo, 1.0))
        span = self.m - max(lo, 1.0)
        return total + self.eps * span ** 2 - self.eps ** 2 * span ** 3 / 3.0

    def expected_max_value(self, with_player3=False):
        start = max(self.v3, 0.5) if with_player3 else 0.5
        return start + self._tail(start)


@lru_cache(maxsize=8)
def get_instance(m, c_variant="main", tol=1e-8):
    return AllPayLowerBoundInstance(m, tol, c_variant)


def f_density(t, m):
    return get_instance(float(m)).pdf(t)


def F_cdf(t, m):
    return get_instance(float(m)).cdf(t)


def beta_bid(x, m, tol=1e-8):
    return get_instance(float(m), tol=tol).beta_bid(x)


def beta_inverse(y, m):
    return get_instance(float(m)).beta_inverse(y)


def g_value(x, y, m):
    return get_instance(float(m)).g_value(x, y)


def g_prime(x, y, m):
    return get_instance(float(m)).g_prime(x, y)


def player3_utility(b3, m, tol=1e-8):
    return get_instance(float(m), tol=tol).player3_utility(b3)


@dataclass
class AllPayReport:
    m: float
    grids: dict
    bne_max_regret: float
    stationarity_gap: float
    player3_max_utility: float
    player3_regret: float
    sw_eq: float
    sw_chain: float
    opt_lower: float
    opt_hat: float
    ratio_lower: float
    ratio_direct: float
    c: float
    passed: bool
    failures: list = field(default_factory=list)
    sw_upper_bound: float = 4.0

    def to_dict(self):
        return dict(M=self.m, grids=self.grids, bne_max_regret=self.bne_max_regret,
                    stationarity_gap=self.stationarity_gap,
                    player3_max_utility=self.player3_max_utility, player3_regret=self.player3_regret,
                    sw_eq=self.sw_eq, sw_chain=self.sw_chain, sw_upper_bound=self.sw_upper_bound,
                    opt_lower=self.opt_lower, opt_hat=self.opt_hat, ratio_lower=self.ratio_lower,
                    ratio_direct=self.ratio_direct, C=self.c, passed=self.passed, failures=self.failures)


def _value_grid(instance, n_values):
    low = np.linspace(0.5, 1.0, n_values, endpoint=False)
    high = np.geomspace(1.0, instance.x_max, n_values)
    # beta climbs like -ln(M - t) next to M, the table anchors resolve that tail
    tail = instance.anchors[instance.anchors >= 1.0]
    values = np.unique(np.concatenate([low, high, tail]))
    return values[values <= instance.x_max]


def _cell_probs(instance, values):
    edges = np.concatenate([[0.5], (values[1:] + values[:-1]) / 2.0, [instance.m]])
    probs = np.diff(instance.cdf(edges))
    return probs / probs.sum()


def _stationarity_gap(instance, values):
    """ Largest |g'(x, beta(x))| / (x e^beta(x)) over the interior types. """
    x = values[values > 0.5]
    y = instance.beta(x)
    return float(np.max(np.abs(instance.g_prime(x, y)) / (x * np.exp(y))))


def verify_allpay_lower_bound(m, tol=1e-8, grid_values=200, grid_bids=100, player3_bids=2000,
                              threshold=1e-3, c_variant="main"):
    """ Check the unbounded-PoA all-pay construction at one M.

    1. beta is an interim best response for players 1 and 2 on a value x bid
       grid running up to the top tabulated type and beta_max (relative
       regret <= `threshold`), and g'(x, beta(x)) vanishes on the value grid;
    2. every positive bid of player 3 up to beta_max has negative expected
       utility, so bidding 0 is optimal (higher bids win no more often);
    3. equilibrium welfare stays below 2 E[max(v1, v2)] <= 4 while OPT >= v3.
    """
    instance = get_instance(float(m), c_variant, tol)
    values = _value_grid(instance, grid_values)
    top_bid = instance.beta_max
    bids = np.unique(np.concatenate([[0.0], instance.beta(values), np.linspace(0.0, top_bid, grid_bids)]))
    bids3 = np.unique(np.concatenate([np.linspace(0.0, top_bid, player3_bids + 1), instance.beta(values)]))

    game = DiscretizedBayesianGame(
        MechanismSpec(ALL_PAY, 3, LOWEST_INDEX),
        [instance.bidder_model(1.0), instance.bidder_model(1.0), instance.player3_model()],
        [values, values, np.array([instance.v3])],
        [_cell_probs(instance, values), _cell_probs(instance, values), np.ones(1)],
        [bids, bids, bids3],
        type_cdf=[instance.cdf, instance.cdf, None],
        type_sf=[instance.sf, instance.sf, None])
    beta = AnalyticBid(instance.beta, instance.clipped_inverse)
    strategy = BayesStrategy([beta, beta, np.zeros(1)])

    bidders = bne_regret(game, strategy, players=[0, 1], relative=True)
    third = bne_regret(game, strategy, players=[2])
    p3 = instance.player3_utility(bids3[1:])
    stationarity = _stationarity_gap(instance, values)

    sw_eq = instance.equilibrium_welfare()
    sw_chain = 2.0 * instance.expected_max_value()
    opt_hat = instance.expected_max_value(with_player3=True)
    failures = []
    if bidders.max_regret > threshold:
        failures.append(f"beta regret {bidders.max_regret} above {threshold}")
    if stationarity > threshold:
        failures.append(f"g'(x, beta(x)) = {stationarity} relative to x e^beta(x), above {threshold}")
    if not np.all(p3 < 0.0):
        failures.append(f"player 3 bid {float(bids3[1:][np.argmax(p3)])} has utility {float(p3.max())} >= 0")
    if sw_eq > sw_chain + 1e-9:
        failures.append(f"equilibrium welfare {sw_eq} above 2 E[max(v1, v2)] = {sw_chain}")
    if max(sw_eq, sw_chain) > AllPayReport.sw_upper_bound:
        failures.append(f"welfare chain {sw_eq} <= {sw_chain} exceeds {AllPayReport.sw_upper_bound}")
    return AllPayReport(m=instance.m,
                        grids=dict(n_values=int(values.size), n_bids=int(bids.size),
                                   n_player3_bids=int(bids3.size), tol=tol, top_value=float(values[-1]),
                                   top_bid=float(bids[-1]), top_player3_bid=float(bids3[-1]),
                                   x_max=instance.x_max, beta_max=instance.beta_max),
                        stationarity_gap=stationarity,
                        bne_max_regret=bidders.max_regret,
                        player3_max_utility=float(p3.max()),
                        player3_regret=third.max_regret,
                        sw_eq=sw_eq, sw_chain=sw_chain,
                        opt_lower=instance.v3, opt_hat=opt_hat,
                        ratio_lower=instance.v3 / 4.0, ratio_direct=opt_hat / sw_eq,
                        c=instance.c, passed=not failures, failures=failures)

"""Seeded Monte Carlo wealth simulation and martingale-regime checks.

Wealth evolves multiplicatively, W(I) = W(I-1) * (1 + F*Z(I)); the product
form is algebraically identical to the additive random-walk form but avoids
cancellation. Path k draws from the substream (seed, k), so results are
bitwise reproducible regardless of chunking, thread count, or evaluation
order. For large runs full paths are not stored; running maxima and
checkpoint snapshots are tracked online instead.

The regime statements are verified at the level where they are literally
true: the drift of log-wealth has the sign of U(F, p). The exact one-step
conditional expectation ratio E[W(I+1)|W(I)] / W(I) = 1 + F(2p-1) exceeds 1
for any F > 0 when p > 1/2, and is exposed here as errata evidence.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    ApproximationDomainError,
    DegenerateGameError,
    DomainError,
    ResourceGuardError,
)
from .utility_kelly import utility

# hard ceiling on paths * N
MAX_TOTAL_STEPS = 10**9

# full paths are kept only below this many stored values
_STORE_PATHS_LIMIT = 2_000_000

_CHUNK = 4096


@dataclass(frozen=True)
class SimConfig:
    """A reproducible Monte Carlo run: game, stake, horizon, and seeding."""

    w0: float
    p: float
    F: float
    N: int
    paths: int
    seed: int
    checkpoints: tuple[int, ...] = ()
    store_paths: bool | None = None
    threads: int = 1

    def __post_init__(self) -> None:
        if not (self.w0 > 0.0):
            raise DomainError(f"initial wealth {self.w0!r} must be positive")
        if not (0.0 <= self.p <= 1.0):
            raise DomainError(f"probability {self.p!r} outside [0, 1]")
        if not (0.0 <= self.F <= 1.0):
            raise DomainError(f"stake fraction {self.F!r} outside [0, 1]")
        if self.N < 1 or self.paths < 1:
            raise DomainError("N and paths must both be at least 1")
        if self.threads < 1:
            raise DomainError(f"thread count {self.threads!r} must be at least 1")
        for c in self.checkpoints:
            if not (1 <= c <= self.N):
                raise DomainError(f"checkpoint {c!r} outside 1..{self.N}")

    def resolved_checkpoints(self) -> tuple[int, ...]:
        if self.checkpoints:
            return tuple(sorted(set(self.checkpoints)))
        quarters = {max(1, self.N // 4), max(1, self.N // 2), max(1, 3 * self.N // 4), self.N}
        return tuple(sorted(quarters))

    def resolved_store_paths(self) -> bool:
        if self.store_paths is not None:
            return self.store_paths
        return self.paths * (self.N + 1) <= _STORE_PATHS_LIMIT


@dataclass(frozen=True)
class TrajectoryBatch:
    """Simulated wealth paths plus the online summaries every check needs."""

    config: SimConfig
    final_wealth: np.ndarray  # (paths,)
    wins: np.ndarray  # (paths,) win count per path
    running_max: np.ndarray  # (paths,) max of W(0..N)
    ruined: np.ndarray  # (paths,) bool, wealth absorbed at 0
    checkpoints: tuple[int, ...]
    checkpoint_wealth: np.ndarray  # (paths, len(checkpoints))
    checkpoint_running_max: np.ndarray  # (paths, len(checkpoints))
    wealth: np.ndarray | None = None  # (paths, N+1) when stored
    log_increments: np.ndarray | None = None  # (paths, N) when stored

    @property
    def log_growth_per_trial(self) -> np.ndarray:
        """Per-path mean log increment; -inf on ruined paths."""
        cfg = self.config
        losses = cfg.N - self.wins
        if cfg.F == 1.0:
            out = np.where(self.ruined, -np.inf, self.wins * math.log(2.0))
        elif cfg.F == 0.0:
            out = np.zeros(cfg.paths)
        else:
            out = self.wins * math.log1p(cfg.F) + losses * math.log1p(-cfg.F)
        return out / cfg.N


@dataclass(frozen=True)
class WealthStats:
    mean_final: float
    var_final: float
    vol_final: float
    mean_log_growth: float
    se_log_growth: float
    running_max: np.ndarray
    n_ruined: int


@dataclass(frozen=True)
class DriftCheck:
    empirical_drift: float
    se: float
    theory: float
    z_score: float
    excluded_ruined: int


@dataclass(frozen=True)
class DoobDecomposition:
    """Martingale part M(I) = W(I) * g^(-I) and deterministic drift A(I)."""

    checkpoints: tuple[int, ...]
    martingale_part: np.ndarray  # (paths, len(checkpoints))
    drift: np.ndarray  # (len(checkpoints),)
    growth_factor: float
    martingale_full: np.ndarray | None = None  # (paths, N+1) when paths stored


def _simulate_chunk(config: SimConfig, start: int, stop: int, cps: np.ndarray, out: dict) -> None:
    """Simulate paths [start, stop); write results into preallocated slots."""
    n = stop - start
    u = np.empty((n, config.N))
    for i in range(n):
        rng = np.random.default_rng((config.seed, start + i))
        u[i] = rng.random(config.N)
    z = np.where(u < config.p, 1, -1)
    factors = 1.0 + config.F * z
    sl = slice(start, stop)
    if out["wealth"] is not None:
        with np.errstate(divide="ignore"):
            out["log_inc"][sl] = np.log(factors)
    # fold w0 into the first step so cumprod performs the literal recursion
    # W(I) = W(I-1) * (1 + F Z(I)) with one rounding per step
    factors[:, 0] *= config.w0
    wealth = np.cumprod(factors, axis=1)
    out["final"][sl] = wealth[:, -1]
    out["wins"][sl] = (z > 0).sum(axis=1)
    runmax = np.maximum.accumulate(wealth, axis=1)
    out["runmax"][sl] = np.maximum(config.w0, runmax[:, -1])
    out["ruined"][sl] = wealth[:, -1] == 0.0
    out["cp_wealth"][sl] = wealth[:, cps - 1]
    out["cp_runmax"][sl] = np.maximum(config.w0, runmax[:, cps - 1])
    if out["wealth"] is not None:
        out["wealth"][sl, 0] = config.w0
        out["wealth"][sl, 1:] = wealth


def simulate(config: SimConfig) -> TrajectoryBatch:
    """Run the configured batch of independent trajectories.

    Reproducibility contract: identical config (seed included) yields a
    bitwise-identical batch for any thread count, because every path has
    its own substream and reductions read preallocated, ordered arrays.
    """
    if config.paths * config.N > MAX_TOTAL_STEPS:
        raise ResourceGuardError(
            f"{config.paths} paths x {config.N} steps exceeds {MAX_TOTAL_STEPS}"
        )
    cps = np.asarray(config.resolved_checkpoints(), dtype=int)
    store = config.resolved_store_paths()
    out = {
        "final": np.empty(config.paths),
        "wins": np.empty(config.paths, dtype=np.int64),
        "runmax": np.empty(config.paths),
        "ruined": np.empty(config.paths, dtype=bool),
        "cp_wealth": np.empty((config.paths, len(cps))),
        "cp_runmax": np.empty((config.paths, len(cps))),
        "wealth": np.empty((config.paths, config.N + 1)) if store else None,
        "log_inc": np.empty((config.paths, config.N)) if store else None,
    }
    bounds = [(s, min(s + _CHUNK, config.paths)) for s in range(0, config.paths, _CHUNK)]
    if config.threads == 1:
        for s, e in bounds:
            _simulate_chunk(config, s, e, cps, out)
    else:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            futures = [
                pool.submit(_simulate_chunk, config, s, e, cps, out) for s, e in bounds
            ]
            for f in futures:
                f.result()
    return TrajectoryBatch(
        config=config,
        final_wealth=out["final"],
        wins=out["wins"],
        running_max=out["runmax"],
        ruined=out["ruined"],
        checkpoints=tuple(int(c) for c in cps),
        checkpoint_wealth=out["cp_wealth"],
        checkpoint_running_max=out["cp_runmax"],
        wealth=out["wealth"],
        log_increments=out["log_inc"],
    )


def conditional_growth_factor(p: float, F: float) -> float:
    """Exact one-step ratio E[W(I+1) | W(I)] / W(I) = 1 + F(2p - 1)."""
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"probability {p!r} outside [0, 1]")
    if not (0.0 <= F <= 1.0):
        raise DomainError(f"stake fraction {F!r} outside [0, 1]")
    return p * (1.0 + F) + (1.0 - p) * (1.0 - F)


def one_step_martingale_ratio(p: float, F: float) -> float:
    """Closed-form E[M(I+1)|path]/M(I): equals 1 identically."""
    g = conditional_growth_factor(p, F)
    if g == 0.0:
        raise DegenerateGameError("growth factor is zero; cannot normalize")
    return (p * (1.0 + F) + (1.0 - p) * (1.0 - F)) / g


def expected_wealth_linear(config: SimConfig) -> float:
    """Closed form w0 * (1 + F(2p-1))^N for E[W(N)]."""
    return config.w0 * (1.0 + config.F * (2.0 * config.p - 1.0)) ** config.N


def expected_wealth_product(config: SimConfig) -> tuple[float, bool]:
    """w0 * (1+pF)^N (1-qF)^N with an approximation flag.

    The factorized form treats the win and loss counts as independent;
    under the complementary model it deviates from the exact expectation,
    so the flag is always True and the gap is a reported erratum.
    """
    q = 1.0 - config.p
    value = config.w0 * ((1.0 + config.p * config.F) * (1.0 - q * config.F)) ** config.N
    return value, True


def expected_wealth_exponential(config: SimConfig) -> float:
    """Small-stake exponential estimate w0 * exp(N F (p - q))."""
    if config.F > 0.1:
        raise ApproximationDomainError(
            f"exponential estimate requires F <= 0.1, got {config.F!r}"
        )
    return config.w0 * math.exp(config.N * config.F * (2.0 * config.p - 1.0))


def expected_wealth_enumeration(config: SimConfig) -> float:
    """Exact E[W(N)] by summation over the binomial win count; the oracle."""
    from .bernoulli_core import ENUMERATION_GUARD, BinomialSpec, pmf_array

    if config.N + 1 > ENUMERATION_GUARD:
        raise ResourceGuardError(f"enumeration over {config.N + 1} terms exceeds guard")
    spec = BinomialSpec(N=config.N, p=config.p)
    probs = pmf_array(spec)
    alpha = np.arange(config.N + 1, dtype=float)
    w = config.w0 * (1.0 + config.F) ** alpha * (1.0 - config.F) ** (config.N - alpha)
    return float(np.dot(probs, w))


def wealth_stats(batch: TrajectoryBatch) -> WealthStats:
    """Empirical mean/variance/volatility plus log-growth rate with its SE."""
    final = batch.final_wealth
    mean_final = float(np.mean(final))
    var_final = float(np.var(final, ddof=1)) if final.size > 1 else 0.0
    rates = batch.log_growth_per_trial[~batch.ruined]
    n = rates.size
    mean_rate = float(np.mean(rates)) if n else float("nan")
    se_rate = float(np.std(rates, ddof=1) / math.sqrt(n)) if n > 1 else float("nan")
    return WealthStats(
        mean_final=mean_final,
        var_final=var_final,
        vol_final=math.sqrt(var_final),
        mean_log_growth=mean_rate,
        se_log_growth=se_rate,
        running_max=batch.running_max,
        n_ruined=int(np.count_nonzero(batch.ruined)),
    )


def log_drift_check(batch: TrajectoryBatch) -> DriftCheck:
    """Empirical per-trial log drift against the closed-form U(F, p).

    Ruined full-stake paths have no finite log and are excluded with a
    count; requires at least 100 surviving paths for a meaningful SE.
    """
    cfg = batch.config
    rates = batch.log_growth_per_trial[~batch.ruined]
    excluded = int(np.count_nonzero(batch.ruined))
    if rates.size < 100:
        raise DomainError(
            f"drift check needs >= 100 surviving paths, got {rates.size}"
        )
    theory = utility(cfg.F, cfg.p)
    empirical = float(np.mean(rates))
    se = float(np.std(rates, ddof=1) / math.sqrt(rates.size))
    if se == 0.0:
        z = 0.0 if empirical == theory else math.inf
    else:
        z = (empirical - theory) / se
    return DriftCheck(
        empirical_drift=empirical, se=se, theory=theory, z_score=z, excluded_ruined=excluded
    )


def ruin_probability_full_stake(p: float, N: int) -> float:
    """Probability 1 - p^N that an all-in strategy hits zero within N bets."""
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"probability {p!r} outside [0, 1]")
    if N < 1:
        raise DomainError(f"trial count {N!r} must be at least 1")
    return 1.0 - p**N


def doob_bound(config: SimConfig, lam: float) -> float:
    """Maximal-inequality ceiling min(1, E[W(N)] / lambda) on P(sup W >= lambda)."""
    if not (lam > 0.0):
        raise DomainError(f"threshold {lam!r} must be positive")
    return min(1.0, expected_wealth_linear(config) / lam)


def empirical_sup_prob(batch: TrajectoryBatch, lam: float) -> float:
    """Fraction of paths whose running maximum reaches lambda."""
    if not (lam > 0.0):
        raise DomainError(f"threshold {lam!r} must be positive")
    return float(np.mean(batch.running_max >= lam))


def doob_decompose(batch: TrajectoryBatch) -> DoobDecomposition:
    """Split the growth-regime process into martingale part and drift.

    M(I) = W(I) * (1 + F(2p-1))^(-I) and A(I) = w0 * (1 + F(2p-1))^I - w0.
    The decomposition identity is verified at the expectation level: the
    cross-path mean of M(I) stays flat at w0.
    """
    cfg = batch.config
    # F = 0 sits on the regime boundary (U = 0) and degenerates to M = w0, A = 0
    if cfg.p <= 0.5 or utility(cfg.F, cfg.p) < 0.0:
        raise DomainError(
            "decomposition is scoped to the growth regime (p > 1/2, U(F, p) >= 0)"
        )
    g = conditional_growth_factor(cfg.p, cfg.F)
    if g == 0.0:
        raise DegenerateGameError("growth factor is zero; cannot normalize")
    cps = np.asarray(batch.checkpoints, dtype=float)
    mart = batch.checkpoint_wealth * g ** (-cps)
    drift = cfg.w0 * g**cps - cfg.w0
    full = None
    if batch.wealth is not None:
        steps = np.arange(cfg.N + 1, dtype=float)
        full = batch.wealth * g ** (-steps)
    return DoobDecomposition(
        checkpoints=batch.checkpoints,
        martingale_part=mart,
        drift=drift,
        growth_factor=g,
        martingale_full=full,
    )

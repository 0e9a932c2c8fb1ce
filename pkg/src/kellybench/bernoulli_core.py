"""Binomial game primitives.

Parameters of the biased binary game, the binomial PMF and its moments,
covariance models for the win/loss counts, one-step Markov transition
probabilities, moment-generating functions, and reproducible outcome
sampling.

Two covariance models coexist on purpose. The independent model treats the
win and loss counts as uncorrelated (COV = 0, net-win variance 2Np(1-p));
the complementary model enforces losses = N - wins and computes the exact
covariance by enumeration. Both are exposed so the discrepancy can be
measured instead of silently resolved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
from scipy.special import logsumexp
from scipy.stats import binom as _binom

from .errors import DomainError, ResourceGuardError

# Max number of terms any direct-summation oracle is allowed to touch.
ENUMERATION_GUARD = 10**6

# exp argument beyond which a float64 overflows
_EXP_OVERFLOW = 709.0


@dataclass(frozen=True)
class GameParams:
    """The biased binary game: win probability p, with q and edge derived."""

    p: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.p <= 1.0) or math.isnan(self.p):
            raise DomainError(f"win probability {self.p!r} outside [0, 1]")

    @property
    def q(self) -> float:
        return 1.0 - self.p

    @property
    def edge(self) -> float:
        return self.p - self.q


@dataclass(frozen=True)
class BinomialSpec:
    """N independent trials with per-trial success probability p."""

    N: int
    p: float

    def __post_init__(self) -> None:
        if not isinstance(self.N, (int, np.integer)) or self.N < 1:
            raise DomainError(f"trial count {self.N!r} must be a positive integer")
        if not (0.0 <= self.p <= 1.0) or math.isnan(self.p):
            raise DomainError(f"success probability {self.p!r} outside [0, 1]")


@dataclass(frozen=True)
class TrialCounts:
    """Win/loss tally for one realized game; losses are complementary."""

    U: int
    V: int
    N: int

    def __post_init__(self) -> None:
        if self.U < 0 or self.V < 0:
            raise DomainError("win and loss counts must be nonnegative")
        if self.U + self.V != self.N:
            raise DomainError(f"counts U={self.U}, V={self.V} do not sum to N={self.N}")


@dataclass(frozen=True)
class OutcomeSequence:
    """A realized +1/-1 outcome path with the substream that generated it."""

    outcomes: np.ndarray
    substream: tuple[int, ...]

    def __post_init__(self) -> None:
        vals = np.unique(self.outcomes)
        if not np.all(np.isin(vals, (-1, 1))):
            raise DomainError("outcomes must all be -1 or +1")


class CovarianceModel(Enum):
    """How the win and loss counts are assumed to relate."""

    PAPER_INDEPENDENT = "paper_independent"
    COMPLEMENTARY = "complementary"


@dataclass(frozen=True)
class Moments:
    mean: float
    variance: float
    volatility: float


def make_game(p: float) -> GameParams:
    """Build game parameters, rejecting p outside [0, 1]."""
    return GameParams(p=float(p))


def log_pmf_array(spec: BinomialSpec) -> np.ndarray:
    """log P(U = alpha) for alpha = 0..N, evaluated in log-space.

    Stays finite for N up to the guard; endpoints p = 0 and p = 1 carry
    exact degenerate mass. Delegates to the saddle-point evaluation of the
    binomial log-PMF, which keeps every term at ~1e-15 relative accuracy
    (a hand-rolled log-gamma sum loses ~100x that).
    """
    N, p = spec.N, spec.p
    if p == 0.0 or p == 1.0:
        out = np.full(N + 1, -np.inf)
        out[N if p == 1.0 else 0] = 0.0
        return out
    return _binom.logpmf(np.arange(N + 1), N, p)


def pmf(spec: BinomialSpec, alpha: int) -> float:
    """P(U = alpha) = C(N, alpha) p^alpha (1-p)^(N-alpha), log-space evaluated."""
    if not (0 <= alpha <= spec.N):
        raise DomainError(f"count alpha={alpha!r} outside 0..{spec.N}")
    N, p = spec.N, spec.p
    if p == 0.0:
        return 1.0 if alpha == 0 else 0.0
    if p == 1.0:
        return 1.0 if alpha == N else 0.0
    return float(_binom.pmf(alpha, N, p))


def pmf_array(spec: BinomialSpec) -> np.ndarray:
    """P(U = alpha) for alpha = 0..N as probabilities (not logs)."""
    N, p = spec.N, spec.p
    if p == 0.0 or p == 1.0:
        out = np.zeros(N + 1)
        out[N if p == 1.0 else 0] = 1.0
        return out
    return _binom.pmf(np.arange(N + 1), N, p)


def pmf_normalization(spec: BinomialSpec) -> float:
    """Sum of the PMF over its full support; equals 1 within 1e-12 by contract."""
    return float(pmf_array(spec).sum())


def moments(spec: BinomialSpec) -> Moments:
    """Mean Np, variance Np(1-p) and volatility of the win count."""
    mean = spec.N * spec.p
    variance = spec.N * spec.p * (1.0 - spec.p)
    return Moments(mean=mean, variance=variance, volatility=math.sqrt(variance))


def _enumerated_count_moments(N: int, p: float) -> tuple[float, float, float]:
    """(E[U], E[U^2], E[U(N-U)]) by direct summation over the support."""
    if N + 1 > ENUMERATION_GUARD:
        raise ResourceGuardError(f"enumeration over {N + 1} terms exceeds guard")
    probs = pmf_array(BinomialSpec(N=N, p=p))
    alpha = np.arange(N + 1, dtype=float)
    eu = float(np.dot(alpha, probs))
    eu2 = float(np.dot(alpha * alpha, probs))
    euv = float(np.dot(alpha * (N - alpha), probs))
    return eu, eu2, euv


def covariance_uv(N: int, p: float, model: CovarianceModel) -> float:
    """Covariance of the win and loss counts under the chosen model.

    The independent model returns 0; the complementary model enumerates
    COV(U, N-U) exactly.
    """
    BinomialSpec(N=N, p=p)  # validate
    if model is CovarianceModel.PAPER_INDEPENDENT:
        return 0.0
    eu, _, euv = _enumerated_count_moments(N, p)
    ev = N - eu
    return euv - eu * ev


def net_wins_variance(N: int, p: float, model: CovarianceModel) -> float:
    """Variance of the net win count U - V under the chosen model."""
    BinomialSpec(N=N, p=p)  # validate
    if model is CovarianceModel.PAPER_INDEPENDENT:
        return 2.0 * N * p * (1.0 - p)
    eu, eu2, _ = _enumerated_count_moments(N, p)
    # U - V = 2U - N, so VAR = 4 VAR(U); kept in enumerated form on purpose
    var_u = eu2 - eu * eu
    return 4.0 * var_u


def transition_prob(params: GameParams, from_wins: int, to_wins: int) -> float:
    """One-step Markov transition probability of the win count."""
    if to_wins == from_wins + 1:
        return params.p
    if to_wins == from_wins:
        return params.q
    raise DomainError(
        f"impossible one-step transition from {from_wins} to {to_wins} wins"
    )


def log_mgf(spec: BinomialSpec, xi: float) -> float:
    """log E[exp(xi U)] = N log(1 - p + p exp(xi)), safe for large N*xi."""
    if not math.isfinite(xi):
        raise DomainError(f"mgf argument {xi!r} must be finite")
    p = spec.p
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return spec.N * xi
    return spec.N * float(np.logaddexp(math.log1p(-p), math.log(p) + xi))


def mgf(spec: BinomialSpec, xi: float) -> float:
    """E[exp(xi U)] in closed form (1 - p + p exp(xi))^N."""
    lm = log_mgf(spec, xi)
    if lm > _EXP_OVERFLOW:
        raise ResourceGuardError(
            f"mgf overflows float64 at N={spec.N}, xi={xi}; use log_mgf"
        )
    return math.exp(lm)


def mgf_bruteforce(spec: BinomialSpec, xi: float) -> float:
    """E[exp(xi U)] by direct summation over the PMF; the oracle for mgf()."""
    if not math.isfinite(xi):
        raise DomainError(f"mgf argument {xi!r} must be finite")
    if spec.N + 1 > ENUMERATION_GUARD:
        raise ResourceGuardError(f"direct sum over {spec.N + 1} terms exceeds guard")
    alpha = np.arange(spec.N + 1)
    log_terms = xi * alpha + log_pmf_array(spec)
    total = float(logsumexp(log_terms))
    if total > _EXP_OVERFLOW:
        raise ResourceGuardError("brute-force mgf overflows float64; use log_mgf")
    return math.exp(total)


def sample_outcomes(
    params: GameParams, N: int, substream: int | Sequence[int]
) -> OutcomeSequence:
    """Draw N i.i.d. outcomes in {-1, +1}, +1 with probability p.

    The substream identifier fully determines the sequence: the same
    identifier always reproduces the same outcomes, bit for bit, and
    distinct identifiers give statistically independent streams.
    """
    if N < 1:
        raise DomainError(f"trial count {N!r} must be at least 1")
    key = (substream,) if isinstance(substream, (int, np.integer)) else tuple(substream)
    rng = np.random.default_rng(key)
    u = rng.random(N)
    outcomes = np.where(u < params.p, 1, -1).astype(np.int8)
    return OutcomeSequence(outcomes=outcomes, substream=tuple(int(k) for k in key))

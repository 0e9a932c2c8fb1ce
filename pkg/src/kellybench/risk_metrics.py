"""Linearized wealth approximations, variance estimates, fractional staking.

The published variance estimate inherits the independent-counts assumption
(net-win variance 2Np(1-p)); the enumeration oracle here makes no such
assumption. Both numbers are always reported side by side, with their
ratio, instead of arbitrating between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import ApproximationDomainError, DomainError
from .bernoulli_core import BinomialSpec, TrialCounts, log_pmf_array
from .utility_kelly import kelly_fraction, utility

# enumeration oracle cap for the variance report
VARIANCE_ORACLE_GUARD = 10**4

# guard on the stake for the binomial-series wealth expansion
WEALTH_APPROX_MAX_F = 0.2


@dataclass(frozen=True)
class VarianceReport:
    """Published estimates next to the exact enumeration value."""

    paper_estimate: float  # 2 w0^2 N p(1-p) F^2
    paper_linear: float  # 2 w0^2 N p(1-p), the F^2-free form also published
    oracle_exact: float | None  # exact Var[W(N)], None beyond the guard
    ratio: float | None  # oracle / paper_estimate


@dataclass(frozen=True)
class VolatilityReport:
    paper: float
    oracle: float | None


@dataclass(frozen=True)
class FractionalKellyPlan:
    """Growth/volatility trade-off of staking a multiplier f of full Kelly."""

    f: float
    F_K: float
    F_frac: float
    growth_full: float
    growth_frac: float
    vol_full: float
    vol_frac: float


@dataclass(frozen=True)
class TradeoffRow:
    f: float
    F: float
    expected_wealth: float
    volatility: float
    utility: float


def wealth_approx(w0: float, F: float, counts: TrialCounts, order: int = 2) -> float:
    """Series expansion of w0 (1+F)^U (1-F)^V in powers of the stake.

    Order 1: w0 (1 + F(U-V)). Order 2 adds F^2 (U(U-1)/2 - V(V-1)/2).
    The published order-2 form omits the -F^2 U V cross term of the full
    product expansion, so its remainder is O(F^2), not O(F^3); halving F
    cuts the error roughly 4x. See the `wealth-series` verification claim.
    """
    if not (w0 > 0.0):
        raise DomainError(f"initial wealth {w0!r} must be positive")
    if not (0.0 <= F <= WEALTH_APPROX_MAX_F):
        raise ApproximationDomainError(
            f"wealth expansion requires 0 <= F <= {WEALTH_APPROX_MAX_F}, got {F!r}"
        )
    if order not in (1, 2):
        raise DomainError(f"expansion order must be 1 or 2, got {order!r}")
    U, V = counts.U, counts.V
    value = 1.0 + F * (U - V)
    if order == 2:
        value += F * F * (U * (U - 1) / 2.0 - V * (V - 1) / 2.0)
    return w0 * value


def _log_wealth_moments(w0: float, N: int, p: float, F: float) -> tuple[float, float]:
    """(log E[W], log E[W^2]) under Binomial(N, p), in log-space."""
    spec = BinomialSpec(N=N, p=p)
    logp = log_pmf_array(spec)
    alpha = np.arange(N + 1, dtype=float)
    with np.errstate(divide="ignore"):
        log_w = (
            math.log(w0)
            + alpha * (math.log1p(F) if F < 1.0 else math.log(2.0))
            + (N - alpha) * (math.log1p(-F) if F > 0.0 else 0.0)
        )
    if F == 1.0:
        # all-loss factor is 0: only the all-win term survives in W > 0
        log_w = np.where(alpha == N, math.log(w0) + N * math.log(2.0), -np.inf)
    m1 = float(logsumexp(logp + log_w))
    m2 = float(logsumexp(logp + 2.0 * log_w))
    return m1, m2


def variance_report(w0: float, N: int, p: float, F: float) -> VarianceReport:
    """Published variance estimates with the exact enumeration alongside."""
    if not (w0 > 0.0):
        raise DomainError(f"initial wealth {w0!r} must be positive")
    if not (0.0 <= F <= 1.0) or not (0.0 <= p <= 1.0):
        raise DomainError(f"invalid stake {F!r} or probability {p!r}")
    # w0^2 multiplies last so the estimates scale exactly with initial wealth
    w0sq = w0 * w0
    base = 2.0 * N * p * (1.0 - p) * w0sq
    paper_estimate = 2.0 * N * p * (1.0 - p) * F * F * w0sq
    if N + 1 > VARIANCE_ORACLE_GUARD + 1:
        return VarianceReport(
            paper_estimate=paper_estimate, paper_linear=base, oracle_exact=None, ratio=None
        )
    if F == 0.0 or p in (0.0, 1.0):
        oracle = 0.0
    else:
        m1, m2 = _log_wealth_moments(w0, N, p, F)
        # Var = E[W^2] - E[W]^2 = E[W]^2 * expm1(log E[W^2] - 2 log E[W])
        oracle = math.exp(2.0 * m1) * math.expm1(m2 - 2.0 * m1)
    ratio = oracle / paper_estimate if paper_estimate > 0.0 else None
    return VarianceReport(
        paper_estimate=paper_estimate, paper_linear=base, oracle_exact=oracle, ratio=ratio
    )


def volatility_report(w0: float, N: int, p: float, F: float) -> VolatilityReport:
    """Square roots of the corresponding variance entries."""
    rep = variance_report(w0, N, p, F)
    oracle = math.sqrt(rep.oracle_exact) if rep.oracle_exact is not None else None
    return VolatilityReport(paper=math.sqrt(rep.paper_estimate), oracle=oracle)


def fractional_plan(
    p: float, f: float, N: int = 1000, w0: float = 1000.0
) -> FractionalKellyPlan:
    """Stake f * F_K for f in [1/2, 1): slower growth, smaller volatility."""
    if not (0.5 <= f < 1.0):
        raise DomainError(f"fractional multiplier {f!r} outside [1/2, 1)")
    if p <= 0.5:
        raise DomainError(f"fractional staking requires p > 1/2, got {p!r}")
    fk = kelly_fraction(p)
    ff = f * fk
    return FractionalKellyPlan(
        f=f,
        F_K=fk,
        F_frac=ff,
        growth_full=utility(fk, p),
        growth_frac=utility(ff, p),
        vol_full=volatility_report(w0, N, p, fk).paper,
        vol_frac=volatility_report(w0, N, p, ff).paper,
    )


def tradeoff_table(
    p: float, f_grid: list[float], N: int, w0: float
) -> list[TradeoffRow]:
    """One row per multiplier f: stake, expected wealth, volatility, growth."""
    if not f_grid:
        raise DomainError("multiplier grid must be non-empty")
    fk = kelly_fraction(p)
    rows = []
    for f in f_grid:
        if not (0.0 < f <= 1.0):
            raise DomainError(f"multiplier {f!r} outside (0, 1]")
        F = f * fk
        expected = w0 * (1.0 + F * (2.0 * p - 1.0)) ** N
        vol = volatility_report(w0, N, p, F).paper
        rows.append(
            TradeoffRow(f=f, F=F, expected_wealth=expected, volatility=vol, utility=utility(F, p))
        )
    return rows

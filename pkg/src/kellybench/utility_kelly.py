"""Log-growth utility of a fixed-fraction staking strategy.

The utility U(F, p) = p log(1+F) + q log(1-F) is the expected per-trial
log growth of wealth when a fraction F is staked each trial. This module
houses its derivatives, the Kelly critical point F_K = 2p - 1, the
break-even root F* of U = 0, the small-stake series approximation of F*,
the sign-based regime classification of the unit interval, and the
dominance of higher win probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    DegenerateGameError,
    DomainError,
    KellyBenchError,
    NoEdgeError,
    SeriesInvalidError,
)

# guard distance from the F = 1 singularity for bracketing and curves
DELTA = 1e-12

# default |U| tolerance for the break-even root
ROOT_TOL = 1e-12

# default dead-band for sign classification; U is computed to ~1e-15
# relative accuracy and the root is located to 1e-12
ZERO_TOL = 1e-10

_MAX_BISECT = 200

NEG_INFINITY = float("-inf")


class Regime(Enum):
    GROWTH_SUBMARTINGALE = "growth_submartingale"
    BREAK_EVEN_MARTINGALE = "break_even_martingale"
    DECAY_SUPERMARTINGALE = "decay_supermartingale"


@dataclass(frozen=True)
class RegimeLabel:
    tag: Regime
    utility_value: float


@dataclass(frozen=True)
class Derivatives:
    first: float
    second: float


@dataclass(frozen=True)
class SeriesApprox:
    """Small-stake series estimate of the break-even root: 2 F_K + epsilon."""

    approx: float
    epsilon: float


@dataclass(frozen=True)
class RegimePartition:
    """Critical stake fractions partitioning [0, 1] for a given game."""

    f_kelly: float
    f_star: float
    f_star_approx: float
    epsilon: float
    p: float


def _check_fp(F: float, p: float) -> None:
    if not (0.0 <= F <= 1.0) or math.isnan(F):
        raise DomainError(f"stake fraction {F!r} outside [0, 1]")
    if not (0.0 <= p <= 1.0) or math.isnan(p):
        raise DomainError(f"probability {p!r} outside [0, 1]")


def utility(F: float, p: float) -> float:
    """Expected per-trial log growth p log(1+F) + (1-p) log(1-F).

    F = 1 returns the -infinity sentinel (total loss on the first losing
    trial) unless the game is deterministic (p = 1), where the 0*log(0)
    convention leaves p log(2).
    """
    _check_fp(F, p)
    q = 1.0 - p
    if F == 1.0:
        return p * math.log(2.0) if q == 0.0 else NEG_INFINITY
    win = p * math.log1p(F) if p > 0.0 else 0.0
    loss = q * math.log1p(-F) if q > 0.0 else 0.0
    return win + loss


def utility_derivatives(F: float, p: float) -> Derivatives:
    """First and second F-derivatives of the utility; the second is < 0."""
    _check_fp(F, p)
    if F == 1.0:
        raise DomainError("derivatives are undefined at F = 1")
    q = 1.0 - p
    first = p / (1.0 + F) - q / (1.0 - F)
    second = -p / (1.0 + F) ** 2 - q / (1.0 - F) ** 2
    return Derivatives(first=first, second=second)


def kelly_fraction(p: float) -> float:
    """The utility-maximising stake p - q = 2p - 1; refuses losing games."""
    if math.isnan(p) or p > 1.0:
        raise DomainError(f"probability {p!r} outside [0, 1]")
    if p < 0.5:
        raise NoEdgeError(
            f"p={p!r} gives no positive edge; the game is not played"
        )
    return p - (1.0 - p)


def f_star(p: float, tol: float = ROOT_TOL) -> float:
    """Break-even stake: the root of U(F, p) = 0 in (F_K, 1), by bisection.

    Bisection is guaranteed by the bracket U(F_K + delta) > 0 and
    U(1 - delta) < 0; Newton is avoided because U' blows up near F = 1.
    """
    if tol <= 0.0:
        raise DomainError(f"tolerance {tol!r} must be positive")
    if p <= 0.5:
        raise NoEdgeError(f"break-even root requires p > 1/2, got {p!r}")
    if p >= 1.0:
        raise DegenerateGameError(
            f"p={p!r}: utility is positive on all of [0, 1), no break-even root"
        )
    lo = kelly_fraction(p) + DELTA
    hi = 1.0 - DELTA
    if utility(hi, p) >= 0.0:
        # root closer to 1 than float64 can resolve (p extremely high)
        raise DegenerateGameError(
            f"p={p!r}: break-even root is not representable below 1 - {DELTA}"
        )
    mid = 0.5 * (lo + hi)
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        um = utility(mid, p)
        if abs(um) <= tol:
            return mid
        if um > 0.0:
            lo = mid
        else:
            hi = mid
    raise KellyBenchError(f"bisection failed to reach |U| <= {tol} for p={p!r}")


def f_star_approx(p: float) -> SeriesApprox:
    """Series estimate 2 F_K + F_K^3 / (3/8 - F_K^2) of the break-even stake."""
    if p < 0.5 or p > 1.0:
        raise NoEdgeError(f"series approximation requires p >= 1/2, got {p!r}")
    fk = p - (1.0 - p)
    if fk * fk >= 0.375:
        raise SeriesInvalidError(
            f"F_K={fk!r} outside the series validity region F_K^2 < 3/8"
        )
    epsilon = fk**3 / (0.375 - fk * fk)
    return SeriesApprox(approx=2.0 * fk + epsilon, epsilon=epsilon)


def classify(F: float, p: float, zero_tol: float = ZERO_TOL) -> RegimeLabel:
    """Label the stake by the sign of the log-wealth drift U(F, p)."""
    u = utility(F, p)
    if u > zero_tol:
        tag = Regime.GROWTH_SUBMARTINGALE
    elif u < -zero_tol:
        tag = Regime.DECAY_SUPERMARTINGALE
    else:
        tag = Regime.BREAK_EVEN_MARTINGALE
    return RegimeLabel(tag=tag, utility_value=u)


def utility_dominance(F: float, p: float, p_hat: float) -> float:
    """U(F, p) - U(F, p_hat) for p > p_hat > 1/2; strictly positive."""
    if not (p > p_hat > 0.5):
        raise DomainError(
            f"dominance requires p > p_hat > 1/2, got p={p!r}, p_hat={p_hat!r}"
        )
    if not (0.0 < F < 1.0):
        raise DomainError(f"stake fraction {F!r} outside (0, 1)")
    return (p - p_hat) * math.log1p(F) + (p_hat - p) * math.log1p(-F)


def utility_curve(p: float, grid_points: int) -> tuple[np.ndarray, np.ndarray]:
    """Uniform grid of (F, U(F, p)) over [0, 1]; the F = 1 endpoint carries
    the -infinity sentinel."""
    if grid_points < 2:
        raise DomainError(f"grid needs at least 2 points, got {grid_points!r}")
    _check_fp(0.0, p)
    fs = np.linspace(0.0, 1.0, grid_points)
    us = np.array([utility(float(f), p) for f in fs])
    return fs, us


def regime_partition(p: float, tol: float = ROOT_TOL) -> RegimePartition:
    """All critical fractions of the game in one report."""
    series = f_star_approx(p)
    return RegimePartition(
        f_kelly=kelly_fraction(p),
        f_star=f_star(p, tol=tol),
        f_star_approx=series.approx,
        epsilon=series.epsilon,
        p=p,
    )

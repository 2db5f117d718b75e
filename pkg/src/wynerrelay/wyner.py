"""Per-cell sum-rates of the circular cellular uplink model.

A hop with gains (local, cross) has frequency response
H(f) = local + 2*cross*cos(2*pi*f), and the per-cell sum-rate of the
infinite ring at SNR rho is the integral over f in [0, 1) of
log2(1 + rho*H(f)^2). The waterfilled variant optimizes the transmit
spectrum under the same average power. Finite rings of M cells have a
circulant channel matrix whose eigenvalues are H(m/M), which gives an
exact cross-check oracle for the integrals.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

import numpy as np

from .model import LagGains, SystemConfig, QuadratureConfig, DEFAULT_QUADRATURE
from .numerics import (BracketError, ConvergenceError, bisect_monotone,
                       integrate_periodic, integrate_periodic_report,
                       uniform_grid)

_LN2 = math.log(2.0)

# Below this response magnitude 1/H^2 is treated as infinite, so the
# waterfilling clamp zeroes the subchannel instead of overflowing.
_POLE_GUARD = 1e-150


def channel_response(lag: LagGains, f):
    """H(f) = local + 2*cross*cos(2*pi*f); sign is irrelevant downstream."""
    f = np.asarray(f, dtype=np.float64)
    response = lag.local + 2.0 * lag.cross * np.cos(2.0 * np.pi * f)
    return float(response) if response.ndim == 0 else response


def _rate_samples(lag: LagGains, rho: float, f) -> np.ndarray:
    h = np.asarray(channel_response(lag, f), dtype=np.float64)
    return np.log1p(rho * np.square(h)) / _LN2


def _check_snr(rho, allow_zero: bool) -> float:
    if isinstance(rho, bool) or not isinstance(rho, numbers.Real):
        raise ValueError(f"SNR must be a real number, got {rho!r}")
    rho = float(rho)
    if not math.isfinite(rho) or rho < 0.0 or (rho == 0.0 and not allow_zero):
        kind = "nonnegative" if allow_zero else "positive"
        raise ValueError(f"SNR must be finite and {kind}, got {rho}")
    return rho


def rate_mcp(lag: LagGains, rho, quadrature: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Per-cell sum-rate of the infinite ring with a flat transmit spectrum."""
    rho = _check_snr(rho, allow_zero=True)
    return integrate_periodic(lambda f: _rate_samples(lag, rho, f), quadrature)


def rate_mcp_finite(lag: LagGains, rho, cells: int) -> float:
    """Exact per-cell sum-rate of the M-cell ring.

    The M-cell circular channel matrix is circulant with eigenvalues
    H(m/M), so the rate is the plain average of log2(1 + rho*H(m/M)^2).
    """
    rho = _check_snr(rho, allow_zero=True)
    if isinstance(cells, bool) or not isinstance(cells, numbers.Integral):
        raise ValueError(f"cell count must be an integer, got {cells!r}")
    cells = int(cells)
    if cells < 3:
        raise ValueError(f"a ring needs at least 3 cells, got {cells}")
    return float(np.mean(_rate_samples(lag, rho, uniform_grid(cells))))


@dataclass(frozen=True)
class WaterfillSolution:
    """Water level, achieved rate, and the power the level actually spends."""

    level: float
    rate: float
    spent_power: float


def _inverse_response_power(lag: LagGains, f) -> np.ndarray:
    h = np.asarray(channel_response(lag, f), dtype=np.float64)
    inverse = np.full(h.shape, np.inf)
    safe = np.abs(h) >= _POLE_GUARD
    inverse[safe] = 1.0 / np.square(h[safe])
    return inverse


def waterfill(lag: LagGains, rho,
              quadrature: QuadratureConfig = DEFAULT_QUADRATURE) -> WaterfillSolution:
    """Waterfilled per-cell sum-rate over the hop's spatial spectrum.

    Solves for the water level nu with integral of (nu - 1/H^2)+ equal to
    rho, then integrates log2(1 + (nu - 1/H^2)+ H^2). The level is found by
    bisection; the constraint integral is pinned to the grid certified by
    the doubling quadrature so the reported spent_power carries no
    re-discretization noise.
    """
    rho = _check_snr(rho, allow_zero=False)
    if lag.local == 0.0 and lag.cross == 0.0:
        raise ValueError("waterfilling needs a response that is not identically zero")

    def spent_integrand(level):
        return lambda f: np.maximum(level - _inverse_response_power(lag, f), 0.0)

    # Grow the upper level bracket until the constraint is exceeded. The
    # converged report also fixes the grid that resolves the clamp boundary.
    upper = max(rho, 1.0)
    doublings = 0
    spent_upper, points = integrate_periodic_report(spent_integrand(upper), quadrature)
    while spent_upper < rho:
        doublings += 1
        if doublings > 1024:
            raise BracketError(
                f"water level exceeded {upper} without spending {rho}; "
                "the response is too close to identically zero")
        upper *= 2.0
        spent_upper, points = integrate_periodic_report(spent_integrand(upper), quadrature)

    while True:
        inverse = _inverse_response_power(lag, uniform_grid(points))

        def spent_pinned(level):
            return float(np.mean(np.maximum(level - inverse, 0.0)))

        while spent_pinned(upper) < rho:
            doublings += 1
            if doublings > 1024:
                raise BracketError(
                    f"water level exceeded {upper} without spending {rho}")
            upper *= 2.0
        root = bisect_monotone(spent_pinned, 0.0, upper, target=rho, tol=1e-13)
        level = root.location
        # Certify the grid at the solved level the same way the doubling
        # quadrature certifies its own pairs: every second grid point is
        # exactly the half-resolution grid.
        coarse = float(np.mean(np.maximum(level - inverse[::2], 0.0)))
        spent = spent_pinned(level)
        if abs(spent - coarse) < quadrature.rel_tol * max(1.0, abs(spent)):
            break
        if points >= quadrature.max_points:
            raise ConvergenceError(
                f"waterfilling constraint grid did not settle within "
                f"{quadrature.max_points} points", best_estimate=level)
        points *= 2

    rate = integrate_periodic(
        lambda f: np.log1p(np.maximum(
            level * np.square(np.asarray(channel_response(lag, f))) - 1.0,
            0.0)) / _LN2,
        quadrature)
    return WaterfillSolution(level=level, rate=rate, spent_power=spent)


def upper_bound(config: SystemConfig,
                quadrature: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Cut-set-style cap: the weaker of the two hops, each at its best.

    The receiver-side hop is taken at the flat-spectrum rate; the
    relay-side hop gets the waterfilling benefit of full cooperation.
    """
    uplink = rate_mcp(config.first_lag, config.rho1, quadrature)
    downlink = waterfill(config.second_lag, config.rho2, quadrature).rate
    return min(uplink, downlink)

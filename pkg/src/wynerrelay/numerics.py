"""Quadrature and root-finding kernels shared by the rate computations.

Every integral in this package runs over one period of a smooth periodic
integrand, where the uniform-grid trapezoid rule converges spectrally. The
grid average over n equispaced points is also, bit for bit, the eigenvalue
average of the corresponding n-cell circular model, which the finite-ring
cross-checks rely on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import QuadratureConfig, DEFAULT_QUADRATURE


class ConvergenceError(ArithmeticError):
    """An iterative scheme ran out of budget before reaching tolerance."""

    def __init__(self, message: str, best_estimate: float):
        super().__init__(message)
        self.best_estimate = best_estimate


class BracketError(ValueError):
    """A root bracket could not be established or made no sense."""


@dataclass(frozen=True)
class BracketedRoot:
    """Result of a bisection solve."""

    location: float
    residual: float
    iterations: int


def uniform_grid(points: int) -> np.ndarray:
    """Equispaced abscissae k/points for k = 0 .. points-1."""
    if points < 1:
        raise ValueError(f"grid needs at least one point, got {points}")
    return np.arange(points, dtype=np.float64) / points


def _grid_average(integrand, points: int) -> float:
    values = np.broadcast_to(np.asarray(integrand(uniform_grid(points)),
                                        dtype=np.float64), (points,))
    if not np.all(np.isfinite(values)):
        bad = int(np.argmin(np.isfinite(values)))
        raise ValueError(
            f"integrand is not finite at f = {bad}/{points} = {bad / points}")
    return float(np.mean(values))


def integrate_periodic_report(integrand, quadrature: QuadratureConfig = DEFAULT_QUADRATURE):
    """Integrate over one period; return (value, points) at convergence.

    The integrand must accept a float64 array of abscissae in [0, 1) and
    broadcast to its shape. Grids double from initial_points; convergence
    means successive estimates within rel_tol * max(1, |estimate|).
    """
    points = quadrature.initial_points
    estimate = _grid_average(integrand, points)
    while points < quadrature.max_points:
        points *= 2
        refined = _grid_average(integrand, points)
        if abs(refined - estimate) < quadrature.rel_tol * max(1.0, abs(refined)):
            return refined, points
        estimate = refined
    raise ConvergenceError(
        f"quadrature did not settle within {quadrature.max_points} points",
        best_estimate=estimate)


def integrate_periodic(integrand, quadrature: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    value, _ = integrate_periodic_report(integrand, quadrature)
    return value


def bisect_monotone(func, lo: float, hi: float, target: float = 0.0,
                    tol: float = 1e-12, max_iterations: int = 200) -> BracketedRoot:
    """Solve func(x) = target for monotone func on [lo, hi] by bisection.

    The direction of monotonicity is inferred from the endpoint values.
    Stops when the residual magnitude drops to tol or the bracket width
    falls below tol * max(1, |midpoint|). The endpoints are tried first so
    an exact boundary solution costs no iterations.
    """
    if not lo < hi:
        raise BracketError(f"bracket [{lo}, {hi}] is empty")

    def offset(x: float) -> float:
        value = func(x)
        if not np.isfinite(value):
            raise ValueError(f"function evaluated to {value} at x = {x}")
        return value - target

    f_lo = offset(lo)
    if abs(f_lo) <= tol:
        return BracketedRoot(location=lo, residual=f_lo, iterations=0)
    f_hi = offset(hi)
    if abs(f_hi) <= tol:
        return BracketedRoot(location=hi, residual=f_hi, iterations=0)
    if f_lo < 0.0 < f_hi:
        orient = 1.0
    elif f_hi < 0.0 < f_lo:
        orient = -1.0
    else:
        raise BracketError(
            f"target {target} is not straddled on [{lo}, {hi}]: "
            f"endpoint values {f_lo + target} and {f_hi + target}")
    mid = 0.5 * (lo + hi)
    f_mid = offset(mid)
    for iteration in range(1, max_iterations + 1):
        if abs(f_mid) <= tol or (hi - lo) < tol * max(1.0, abs(mid)):
            return BracketedRoot(location=mid, residual=f_mid, iterations=iteration)
        if orient * f_mid < 0.0:
            lo = mid
        else:
            hi = mid
        mid = 0.5 * (lo + hi)
        f_mid = offset(mid)
    raise ConvergenceError(
        f"bisection exhausted {max_iterations} iterations on [{lo}, {hi}]",
        best_estimate=mid)

"""Amplify-and-forward relaying: achievable rate, relay power, gain solve.

Each relay scales its previous received sample by a common gain g and
retransmits one symbol later. Because every relay also hears its two
neighbors' relays, the relay output power is a geometric-series buildup
that stays finite only while 2*mu*g < 1. The achievable rate integrand is
the per-subchannel SINR of the equivalent two-hop channel after the base
stations jointly process the ring.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

import numpy as np

from .model import SystemConfig, QuadratureConfig, DEFAULT_QUADRATURE
from .numerics import bisect_monotone, integrate_periodic, uniform_grid

# The Monte Carlo oracle simulates a fixed ring: 64 cells, unit relay
# delay, which is plenty for wrap effects to vanish at mu <= 0.8.
RING_CELLS = 64


def _check_gain(gain, mu: float) -> float:
    if isinstance(gain, bool) or not isinstance(gain, numbers.Real):
        raise ValueError(f"relay gain must be a real number, got {gain!r}")
    gain = float(gain)
    if not math.isfinite(gain) or gain < 0.0:
        raise ValueError(f"relay gain must be finite and nonnegative, got {gain}")
    if mu > 0.0 and 2.0 * mu * gain >= 1.0:
        raise ValueError(
            f"relay gain {gain} is outside the stable region: "
            f"2*mu*g = {2.0 * mu * gain} must stay below 1")
    return gain


def relay_output_power(gain, config: SystemConfig) -> float:
    """Steady-state transmit power of one relay at amplification `gain`.

    The inter-relay echo acts as a spatial first-order feedback with
    per-mode coefficient 2*mu*g*cos(2*pi*f); averaging the resulting
    geometric buildup over modes gives

        (P*beta^2 + noise1) * g^2 / sqrt(1 - (2*mu*g)^2)
        + 4*P*alpha^2 * g^2 / (sqrt(1 - (2*mu*g)^2) + 1 - (2*mu*g)^2),

    strictly increasing in g and unbounded as g approaches 1/(2*mu).
    """
    gain = _check_gain(gain, config.mu)
    k = 2.0 * config.mu * gain
    settle = (1.0 - k) * (1.0 + k)
    root = math.sqrt(settle)
    direct = (config.power_p * config.beta ** 2 + config.noise1) * gain ** 2 / root
    adjacent = 4.0 * config.power_p * config.alpha ** 2 * gain ** 2 / (root + settle)
    return direct + adjacent


@dataclass(frozen=True)
class AfGainSolution:
    """Relay gain meeting the power budget, with the achieved power."""

    gain: float
    output_power: float
    residual: float


def optimal_gain(config: SystemConfig) -> AfGainSolution:
    """Gain at which the relays spend exactly their power budget.

    Full power is rate-optimal for this scheme, so the solve targets
    output power Q. Without inter-relay echo the power law is a plain
    quadratic in g and the root is closed-form; otherwise the monotone
    power curve is bisected inside its stable region.
    """
    target = config.power_q
    if config.mu == 0.0:
        scale = (config.power_p * config.beta ** 2
                 + 2.0 * config.power_p * config.alpha ** 2 + config.noise1)
        gain = math.sqrt(target / scale)
    else:
        ceiling = (1.0 - 1e-12) / (2.0 * config.mu)
        root = bisect_monotone(lambda g: relay_output_power(g, config),
                               0.0, ceiling, target=target, tol=1e-13)
        gain = root.location
    achieved = relay_output_power(gain, config)
    return AfGainSolution(gain=gain, output_power=achieved,
                          residual=achieved - target)


def _af_samples(config: SystemConfig, gain: float, f) -> np.ndarray:
    c = np.cos(2.0 * np.pi * np.asarray(f, dtype=np.float64))
    first = config.beta + 2.0 * config.alpha * c
    second = config.gamma + 2.0 * config.eta * c
    echo = 2.0 * gain * config.mu * c

    signal = config.power_p * gain ** 2 * np.square(first) * np.square(second)
    relay_noise = config.noise1 * gain ** 2 * np.square(second)
    floor = config.noise2 * (1.0 + np.square(echo))
    # The two radicands are assembled from factored differences so they
    # stay nonnegative in floating point; the clamp only absorbs roundoff.
    minus = relay_noise + config.noise2 * np.square(1.0 - echo)
    plus = relay_noise + config.noise2 * np.square(1.0 + echo)
    rad_noise = minus * plus
    rad_total = (signal + minus) * (signal + plus)
    low = min(float(np.min(rad_noise)), float(np.min(rad_total)))
    if low < -1e-12:
        raise ArithmeticError(f"SINR radicand fell to {low}; gain outside domain?")
    rad_noise = np.maximum(rad_noise, 0.0)
    rad_total = np.maximum(rad_total, 0.0)

    numerator = signal + floor + relay_noise + np.sqrt(rad_total)
    denominator = floor + relay_noise + np.sqrt(rad_noise)
    return np.log2(numerator / denominator)


def af_rate(config: SystemConfig, gain,
            quadrature: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Per-cell achievable sum-rate of the scheme at the given relay gain."""
    gain = _check_gain(gain, config.mu)
    return integrate_periodic(lambda f: _af_samples(config, gain, f), quadrature)


def af_rate_finite(config: SystemConfig, gain, cells: int) -> float:
    """Average of the same per-subchannel rate over an M-cell ring's modes."""
    gain = _check_gain(gain, config.mu)
    if isinstance(cells, bool) or not isinstance(cells, numbers.Integral):
        raise ValueError(f"cell count must be an integer, got {cells!r}")
    cells = int(cells)
    if cells < 3:
        raise ValueError(f"a ring needs at least 3 cells, got {cells}")
    return float(np.mean(_af_samples(config, gain, uniform_grid(cells))))


@dataclass(frozen=True)
class MonteCarloPower:
    """Sample estimate of the relay output power from a ring simulation."""

    mean_power: float
    std_error: float
    symbols: int


def simulate_relay_power(config: SystemConfig, gain, *, symbols: int = 1 << 20,
                         seed=1234, warmup: int = 1000) -> MonteCarloPower:
    """Simulate the 64-cell AF ring and measure the relay transmit power.

    Mobiles send fresh circularly symmetric Gaussian symbols each step;
    every relay retransmits its previously received sample scaled by
    `gain` (unit delay). The first `warmup` symbols are discarded, then
    at least `symbols` further symbols are averaged. The standard error
    comes from 64 sequential batch means, which are effectively
    independent because the echo correlation dies off in a few steps.
    """
    gain = _check_gain(gain, config.mu)
    if symbols < 1:
        raise ValueError(f"need at least one symbol, got {symbols}")
    rng = np.random.default_rng(seed)
    cells = RING_CELLS
    warmup_steps = (int(warmup) + cells - 1) // cells
    batches = 64
    # Round the measured steps up to a whole number of equal batches.
    wanted = (int(symbols) + cells - 1) // cells
    steps = ((wanted + batches - 1) // batches) * batches

    def ring_noise(power):
        scale = math.sqrt(power / 2.0)
        return scale * (rng.standard_normal(cells)
                        + 1j * rng.standard_normal(cells))

    received = np.zeros(cells, dtype=np.complex128)
    step_means = np.empty(steps, dtype=np.float64)
    for step in range(warmup_steps + steps):
        relayed = gain * received
        mobile = ring_noise(config.power_p)
        received = (config.beta * mobile
                    + config.alpha * (np.roll(mobile, 1) + np.roll(mobile, -1))
                    + config.mu * (np.roll(relayed, 1) + np.roll(relayed, -1))
                    + ring_noise(config.noise1))
        if step >= warmup_steps:
            step_means[step - warmup_steps] = np.mean(
                np.square(relayed.real) + np.square(relayed.imag))
    batch_means = step_means.reshape(batches, -1).mean(axis=1)
    return MonteCarloPower(
        mean_power=float(np.mean(step_means)),
        std_error=float(np.std(batch_means, ddof=1) / math.sqrt(batches)),
        symbols=steps * cells)

"""Per-cell sum-rates on the circular uplink, waterfilling, upper bound."""

import math

import numpy as np
import pytest

from wynerrelay import (
    BracketError,
    LagGains,
    QuadratureConfig,
    channel_response,
    integrate_periodic,
    parse_config,
    rate_mcp,
    rate_mcp_finite,
    uniform_grid,
    upper_bound,
    waterfill,
)

TIGHT = QuadratureConfig(initial_points=64, max_points=2**22, rel_tol=1e-12)

# Discrete waterfilling on a 2^20 uniform subchannel grid, frozen from a
# sort-and-fill reference run for lag (cross 0.2, local 1) at SNR 100.
ORACLE_WATERFILL_RATE = 6.5394457146247245
ORACLE_WATERFILL_LEVEL = 101.29891601330945


def discrete_waterfill(lag, rho, samples=2**20):
    """Sort-and-fill waterfilling over a finite subchannel grid."""
    gains = channel_response(lag, uniform_grid(samples)) ** 2
    floors = np.sort(1.0 / gains)
    counts = np.arange(1, samples + 1)
    # Each subchannel carries measure 1/samples, so the power budget on
    # the grid is samples * rho.
    levels = (samples * rho + np.cumsum(floors)) / counts
    active = int(np.nonzero(levels > floors)[0][-1]) + 1
    level = levels[active - 1]
    powers = np.maximum(level - 1.0 / gains, 0.0)
    rate = float(np.mean(np.log2(1.0 + powers * gains)))
    return level, rate


class TestChannelResponse:
    def test_no_interference(self):
        assert channel_response(LagGains(local=1.0, cross=0.0), 0.37) == 1.0

    def test_peak_at_zero_frequency(self):
        assert channel_response(LagGains(local=1.0, cross=0.2), 0.0) == pytest.approx(1.4, abs=1e-15)

    def test_band_edge_null(self):
        assert channel_response(LagGains(local=1.0, cross=0.5), 0.5) == 0.0

    def test_vector_evaluation(self):
        lag = LagGains(local=1.0, cross=0.2)
        grid = uniform_grid(16)
        values = channel_response(lag, grid)
        assert values.shape == (16,)
        assert values[0] == pytest.approx(1.4, abs=1e-15)


class TestRateMcp:
    def test_flat_channel(self):
        rate = rate_mcp(LagGains(local=1.0, cross=0.0), 10.0)
        assert rate == pytest.approx(math.log2(11.0), abs=1e-14)

    def test_zero_snr(self):
        assert rate_mcp(LagGains(local=1.0, cross=0.2), 0.0) == 0.0

    def test_matches_finite_ring(self):
        lag = LagGains(local=1.0, cross=0.2)
        assert rate_mcp(lag, 10.0) == pytest.approx(rate_mcp_finite(lag, 10.0, 4096), abs=1e-9)

    def test_strictly_increasing_in_snr(self):
        lag = LagGains(local=1.0, cross=0.2)
        rates = [rate_mcp(lag, rho) for rho in (0.0, 1.0, 10.0, 100.0, 1000.0)]
        assert all(lo < hi for lo, hi in zip(rates, rates[1:]))

    def test_rejects_negative_snr(self):
        with pytest.raises(ValueError):
            rate_mcp(LagGains(local=1.0, cross=0.2), -1.0)

    def test_sign_flip_symmetry(self):
        # The rate only consumes H^2, so negating the local gain before
        # squaring must leave the integral unchanged.
        lag = LagGains(local=1.0, cross=0.2)

        def negated(x):
            response = -1.0 + 0.4 * np.cos(2.0 * np.pi * x)
            return np.log1p(10.0 * response**2) / math.log(2.0)

        assert integrate_periodic(negated, TIGHT) == pytest.approx(
            rate_mcp(lag, 10.0, TIGHT), rel=1e-10
        )


class TestRateMcpFinite:
    def test_flat_ring(self):
        rate = rate_mcp_finite(LagGains(local=1.0, cross=0.0), 10.0, 7)
        assert rate == pytest.approx(math.log2(11.0), rel=1e-14)

    def test_three_cell_closed_form(self):
        # cos(2*pi/3) = -1/2 puts both off-peak eigenvalues at 0.8.
        rate = rate_mcp_finite(LagGains(local=1.0, cross=0.2), 10.0, 3)
        expected = (math.log2(1.0 + 10.0 * 1.96) + 2.0 * math.log2(1.0 + 10.0 * 0.64)) / 3.0
        assert rate == pytest.approx(expected, rel=1e-12)

    def test_converges_to_integral(self):
        lag = LagGains(local=1.0, cross=0.2)
        exact = rate_mcp(lag, 10.0)
        errors = [abs(rate_mcp_finite(lag, 10.0, 2**k) - exact) for k in range(6, 13)]
        assert errors[-1] <= 1e-9
        # The spectrum decays so fast the sequence reaches machine noise
        # immediately; allow two ulps so the plateau still counts as shrinking.
        assert all(nxt <= cur + 1e-15 for cur, nxt in zip(errors, errors[1:]))

    def test_rejects_small_ring(self):
        with pytest.raises(ValueError):
            rate_mcp_finite(LagGains(local=1.0, cross=0.2), 10.0, 2)

    def test_trapezoid_circulant_identity(self):
        # Pinning the adaptive grid to N points must reproduce the N-cell
        # ring average bit for bit: same samples, same reduction.
        lag = LagGains(local=1.0, cross=0.2)
        pinned = QuadratureConfig(initial_points=2048, max_points=4096, rel_tol=1e-10)
        assert rate_mcp(lag, 10.0, pinned) == rate_mcp_finite(lag, 10.0, 4096)


class TestWaterfill:
    def test_flat_channel_unit_gain(self):
        solution = waterfill(LagGains(local=1.0, cross=0.0), 10.0)
        assert solution.level == pytest.approx(11.0, abs=1e-9)
        assert solution.rate == pytest.approx(math.log2(11.0), abs=1e-9)
        assert solution.spent_power == pytest.approx(10.0, abs=1e-9)

    def test_flat_channel_strong_gain(self):
        solution = waterfill(LagGains(local=2.0, cross=0.0), 10.0)
        assert solution.level == pytest.approx(10.25, abs=1e-9)
        assert solution.rate == pytest.approx(math.log2(41.0), abs=1e-9)

    def test_matches_discrete_oracle(self):
        lag = LagGains(local=1.0, cross=0.2)
        level, rate = discrete_waterfill(lag, 100.0)
        assert level == pytest.approx(ORACLE_WATERFILL_LEVEL, rel=1e-9)
        assert rate == pytest.approx(ORACLE_WATERFILL_RATE, rel=1e-9)
        solution = waterfill(lag, 100.0)
        assert solution.rate == pytest.approx(ORACLE_WATERFILL_RATE, abs=1e-6)

    def test_constraint_residual_near_pole(self):
        # local = cross * 2 zeroes the response inside the band; the
        # clamped integrand must still meet the power constraint.
        solution = waterfill(LagGains(local=1.0, cross=0.6), 31.6227766)
        assert solution.spent_power == pytest.approx(31.6227766, abs=1e-9)

    def test_dominates_no_waterfilling(self):
        for cross in (0.0, 0.3, 0.6):
            lag = LagGains(local=1.0, cross=cross)
            assert waterfill(lag, 20.0).rate >= rate_mcp(lag, 20.0) - 1e-12

    def test_strictly_increasing_in_snr(self):
        lag = LagGains(local=1.0, cross=0.2)
        rates = [waterfill(lag, rho).rate for rho in (1.0, 10.0, 100.0)]
        assert rates[0] < rates[1] < rates[2]

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            waterfill(LagGains(local=1.0, cross=0.2), 0.0)
        with pytest.raises(ValueError):
            waterfill(LagGains(local=0.0, cross=0.0), 10.0)


class TestUpperBound:
    @staticmethod
    def config(**overrides):
        mapping = {
            "alpha": 0.2,
            "beta": 1.0,
            "gamma": 1.0,
            "eta": 0.2,
            "mu": 0.4,
            "power_p": 10.0,
            "power_q": 10.0,
            "noise1": 1.0,
            "noise2": 1.0,
        }
        mapping.update(overrides)
        return parse_config(mapping)

    def test_symmetric_config_picks_uplink_arm(self):
        config = self.config()
        assert upper_bound(config) == rate_mcp(config.first_lag, config.rho1)

    def test_strong_relay_limit(self):
        config = self.config(power_q=1e7)
        limit = rate_mcp(LagGains(local=1.0, cross=0.2), 10.0)
        assert upper_bound(config) == pytest.approx(limit, abs=1e-6)

    def test_below_both_arms(self):
        config = self.config(power_q=100.0, eta=0.4)
        bound = upper_bound(config)
        assert bound <= rate_mcp(config.first_lag, config.rho1)
        assert bound <= waterfill(config.second_lag, config.rho2).rate

"""Parameter sweeps over the rate schemes, with stable tabular output.

A sweep varies one quantity along a uniform grid, evaluates the selected
schemes at every grid point, and collects the results into a table whose
serialized form is byte-stable: the same sweep emits identical bytes
regardless of worker count or scheme order given by the caller.
"""

from __future__ import annotations

import json
import math
import numbers
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from .af import af_rate, af_rate_finite, optimal_gain, relay_output_power, \
    simulate_relay_power
from .cf import cf_solve
from .model import (ConfigError, SystemConfig, QuadratureConfig,
                    DEFAULT_QUADRATURE, DEFAULT_CONFIG_MAPPING, PACKAGE_VERSION,
                    config_to_mapping, db_to_linear, parse_config,
                    _require_finite)
from .wyner import rate_mcp, rate_mcp_finite, upper_bound, waterfill

SCHEME_ORDER = ("cf", "af", "af_mu0", "upper_bound")
AXES = ("mu", "power_p", "power_q", "rho1_db", "rho2_db")

# Ring size for the finite-model cross-check columns behind --oracle.
ORACLE_RING = 4096


class SchemeError(RuntimeError):
    """A scheme computation failed; the message names the scheme."""


def canonical_schemes(schemes) -> tuple:
    requested = set(schemes)
    unknown = sorted(requested - set(SCHEME_ORDER))
    if unknown:
        raise ConfigError(f"unknown scheme(s): {', '.join(map(str, unknown))}")
    if not requested:
        raise ConfigError("at least one scheme is required")
    return tuple(name for name in SCHEME_ORDER if name in requested)


@dataclass(frozen=True)
class SweepSpec:
    """One swept quantity, its grid, the base system, and the schemes."""

    axis: str
    start: float
    stop: float
    points: int
    base: SystemConfig
    schemes: tuple = SCHEME_ORDER

    def __post_init__(self):
        if self.axis not in AXES:
            raise ConfigError(
                f"axis must be one of {', '.join(AXES)}, got {self.axis!r}")
        object.__setattr__(self, "start", _require_finite("start", self.start))
        object.__setattr__(self, "stop", _require_finite("stop", self.stop))
        if not self.start < self.stop:
            raise ConfigError(
                f"sweep needs start < stop, got [{self.start}, {self.stop}]")
        if isinstance(self.points, bool) or \
                not isinstance(self.points, numbers.Integral) or self.points < 2:
            raise ConfigError(f"points must be an integer >= 2, got {self.points!r}")
        object.__setattr__(self, "points", int(self.points))
        object.__setattr__(self, "schemes", canonical_schemes(self.schemes))
        for value in axis_values(self):
            try:
                config_at(self, value)
            except ConfigError as exc:
                raise ConfigError(f"axis {self.axis} = {value} is invalid: {exc}") from exc


def axis_values(spec: SweepSpec) -> list:
    span = spec.stop - spec.start
    return [spec.start + span * (index / (spec.points - 1))
            for index in range(spec.points)]


def config_at(spec: SweepSpec, value: float) -> SystemConfig:
    if spec.axis == "rho1_db":
        return replace(spec.base, power_p=spec.base.noise1 * db_to_linear(value))
    if spec.axis == "rho2_db":
        return replace(spec.base, power_q=spec.base.noise2 * db_to_linear(value))
    return replace(spec.base, **{spec.axis: value})


def run_point(config: SystemConfig, schemes,
              quadrature: QuadratureConfig = DEFAULT_QUADRATURE, *,
              diagnostics: bool = False) -> dict:
    """Evaluate the selected schemes at one operating point.

    Returns a name-to-value map in canonical scheme order; with
    diagnostics, solver internals (fixed-point location, relay gain,
    residuals) follow the scheme columns.
    """
    schemes = canonical_schemes(schemes)
    rates = {}
    extras = {}
    for name in schemes:
        try:
            if name == "cf":
                solution = cf_solve(config, quadrature)
                rates[name] = solution.rate
                extras["cf_r_star"] = solution.r_star
                extras["cf_residual"] = solution.residual
            elif name == "af":
                gain = optimal_gain(config)
                rates[name] = af_rate(config, gain.gain, quadrature)
                extras["af_gain"] = gain.gain
                extras["af_power_residual"] = gain.residual
            elif name == "af_mu0":
                quiet = replace(config, mu=0.0)
                gain = optimal_gain(quiet)
                rates[name] = af_rate(quiet, gain.gain, quadrature)
                extras["af_mu0_gain"] = gain.gain
            else:
                rates[name] = upper_bound(config, quadrature)
        except (ValueError, ArithmeticError) as exc:
            raise SchemeError(f"{name}: {exc}") from exc
    if diagnostics:
        rates.update(extras)
    return rates


def oracle_entries(config: SystemConfig, schemes, quadrature: QuadratureConfig,
                   seed, index: int) -> dict:
    """Finite-ring and Monte Carlo cross-checks for the selected schemes.

    Every cross-check column comes with the signed gap to the value the
    sweep reports, so disagreement is visible in the table itself.
    """
    schemes = canonical_schemes(schemes)
    entries = {}
    try:
        if "cf" in schemes:
            solution = cf_solve(config, quadrature)
            quantized = config.rho1 * (1.0 - 2.0 ** (-solution.r_star))
            finite = rate_mcp_finite(config.first_lag, quantized, ORACLE_RING)
            entries["cf_oracle"] = finite
            entries["cf_oracle_delta"] = finite - solution.rate
        if "af" in schemes:
            gain = optimal_gain(config)
            finite = af_rate_finite(config, gain.gain, ORACLE_RING)
            entries["af_oracle"] = finite
            entries["af_oracle_delta"] = finite - af_rate(config, gain.gain, quadrature)
            simulated = simulate_relay_power(config, gain.gain, seed=[seed, index])
            entries["af_sim_power"] = simulated.mean_power
            entries["af_sim_se"] = simulated.std_error
            entries["af_sim_delta"] = (simulated.mean_power
                                       - relay_output_power(gain.gain, config))
        if "af_mu0" in schemes:
            quiet = replace(config, mu=0.0)
            gain = optimal_gain(quiet)
            finite = af_rate_finite(quiet, gain.gain, ORACLE_RING)
            entries["af_mu0_oracle"] = finite
            entries["af_mu0_oracle_delta"] = finite - af_rate(quiet, gain.gain, quadrature)
        if "upper_bound" in schemes:
            uplink = rate_mcp_finite(config.first_lag, config.rho1, ORACLE_RING)
            downlink = waterfill(config.second_lag, config.rho2, quadrature).rate
            finite = min(uplink, downlink)
            entries["upper_bound_oracle"] = finite
            entries["upper_bound_oracle_delta"] = finite - upper_bound(config, quadrature)
    except (ValueError, ArithmeticError) as exc:
        raise SchemeError(f"oracle: {exc}") from exc
    return entries


@dataclass(frozen=True)
class SweepTable:
    """Axis values plus one column per scheme (and optional extras)."""

    axis: str
    axis_values: tuple
    columns: dict
    metadata: dict = field(default_factory=dict)


def _validate_table(table: SweepTable, schemes) -> None:
    points = len(table.axis_values)
    for name, column in table.columns.items():
        if len(column) != points:
            raise SchemeError(
                f"column {name} has {len(column)} values for {points} points")
        for value in column:
            if not math.isfinite(value):
                raise SchemeError(f"column {name} holds a non-finite value: {value!r}")
        if name in SCHEME_ORDER and min(column) < 0.0:
            raise SchemeError(f"scheme column {name} went negative: {min(column)}")
    if "cf" in schemes and "upper_bound" in schemes:
        for cf_value, bound in zip(table.columns["cf"], table.columns["upper_bound"]):
            if cf_value > bound:
                raise SchemeError(
                    f"cf column {cf_value} exceeds its upper bound {bound}")


def run_sweep(spec: SweepSpec, quadrature: QuadratureConfig = DEFAULT_QUADRATURE,
              *, jobs: int = 1, diagnostics: bool = False, oracle: bool = False,
              seed: int = 1234) -> SweepTable:
    """Evaluate the sweep, optionally across threads; output order is grid order."""
    if jobs < 1:
        raise ConfigError(f"jobs must be at least 1, got {jobs}")
    values = axis_values(spec)
    configs = [config_at(spec, value) for value in values]

    def evaluate(index: int) -> dict:
        try:
            point = run_point(configs[index], spec.schemes, quadrature,
                              diagnostics=diagnostics)
            if oracle:
                point.update(oracle_entries(configs[index], spec.schemes,
                                            quadrature, seed, index))
            return point
        except SchemeError as exc:
            raise SchemeError(f"at {spec.axis} = {values[index]:.12g}: {exc}") from exc

    if jobs == 1:
        results = [evaluate(index) for index in range(spec.points)]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(evaluate, range(spec.points)))

    columns = {name: tuple(point[name] for point in results) for name in results[0]}
    metadata = {
        "axis": spec.axis,
        "start": spec.start,
        "stop": spec.stop,
        "points": spec.points,
        "schemes": list(spec.schemes),
        "base_config": config_to_mapping(spec.base),
        "quadrature": {
            "initial_points": quadrature.initial_points,
            "max_points": quadrature.max_points,
            "rel_tol": quadrature.rel_tol,
        },
        "version": PACKAGE_VERSION,
    }
    if oracle:
        metadata["oracle_seed"] = seed
        metadata["oracle_ring_cells"] = ORACLE_RING
    table = SweepTable(axis=spec.axis, axis_values=tuple(values),
                       columns=columns, metadata=metadata)
    _validate_table(table, spec.schemes)
    return table


def emit(table: SweepTable, format: str = "csv") -> bytes:
    """Serialize a table; identical tables serialize to identical bytes."""
    if format == "csv":
        lines = ["axis," + ",".join(table.columns)]
        for row, axis_value in enumerate(table.axis_values):
            cells = [f"{axis_value:.12g}"]
            cells += [f"{column[row]:.12g}" for column in table.columns.values()]
            lines.append(",".join(cells))
        return ("\n".join(lines) + "\n").encode("ascii")
    if format == "json":
        document = {
            "metadata": table.metadata,
            "axis_values": list(table.axis_values),
            "columns": {name: list(column) for name, column in table.columns.items()},
        }
        return (json.dumps(document, sort_keys=True, indent=2) + "\n").encode("ascii")
    raise ConfigError(f"format must be 'csv' or 'json', got {format!r}")


def figure_spec(name: str) -> SweepSpec:
    """Preset sweeps reproducing the reference operating regimes.

    fig3 sweeps the inter-relay gain at fixed powers; fig4 and fig5 sweep
    the uplink power in dB at symmetric and asymmetric hop gains, with the
    echo-free relay rate alongside for contrast.
    """
    base = parse_config(DEFAULT_CONFIG_MAPPING)
    if name == "fig3":
        return SweepSpec(axis="mu", start=0.0, stop=0.8, points=17,
                         base=replace(base, mu=0.0),
                         schemes=("cf", "af", "upper_bound"))
    if name == "fig4":
        return SweepSpec(axis="rho1_db", start=-10.0, stop=30.0, points=21,
                         base=replace(base, mu=0.8),
                         schemes=("cf", "af", "af_mu0", "upper_bound"))
    if name == "fig5":
        return SweepSpec(axis="rho1_db", start=-10.0, stop=30.0, points=21,
                         base=replace(base, mu=0.8, alpha=0.6),
                         schemes=("cf", "af", "af_mu0", "upper_bound"))
    raise ConfigError(f"unknown figure {name!r}; choose fig3, fig4, or fig5")

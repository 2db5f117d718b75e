"""Domain types and configuration handling for the relay ring rate library.

Channel gains are real amplitude gains. Transmit and noise powers are linear
quantities; the two transmit powers may alternatively be given in dB when a
configuration is read from a key-value mapping (see parse_config). Every rate
produced by this package is in bits per channel use.
"""

from __future__ import annotations

import json
import math
import numbers
from dataclasses import dataclass, fields

PACKAGE_VERSION = "0.1.0"


class ConfigError(ValueError):
    """A configuration mapping or field failed validation."""


def db_to_linear(value_db: float) -> float:
    """Convert a power quantity from dB to its linear value."""
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    """Convert a positive linear power quantity to dB."""
    if value <= 0.0:
        raise ValueError("dB conversion requires a positive value")
    return 10.0 * math.log10(value)


def _require_finite(name: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ConfigError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True)
class LagGains:
    """Amplitude gains of one hop of the two-hop ring.

    The hop's frequency response is local + 2*cross*cos(2*pi*f), where
    `local` is the in-cell gain and `cross` the gain toward each of the two
    adjacent cells.
    """

    local: float
    cross: float

    def __post_init__(self):
        for name in ("local", "cross"):
            value = _require_finite(name, getattr(self, name))
            if value < 0.0:
                raise ConfigError(f"{name} must be nonnegative, got {value}")
            object.__setattr__(self, name, value)


# Sign and positivity rules per field. Either transmit power may be zero
# (silent uplink and silent relays are both meaningful limits); the two
# noise floors must stay strictly positive.
_NONNEGATIVE = ("alpha", "beta", "gamma", "eta", "mu", "power_p", "power_q")
_POSITIVE = ("noise1", "noise2")


@dataclass(frozen=True)
class SystemConfig:
    """Complete description of the two-hop ring system.

    alpha:   MT to adjacent-cell RT amplitude gain
    beta:    MT to local RT amplitude gain
    gamma:   RT to local BS amplitude gain
    eta:     RT to adjacent-cell BS amplitude gain
    mu:      RT to adjacent-cell RT (inter-relay) amplitude gain
    power_p: MT transmit power, linear
    power_q: RT transmit power budget, linear
    noise1:  RT-side noise power, linear
    noise2:  BS-side noise power, linear
    """

    alpha: float
    beta: float
    gamma: float
    eta: float
    mu: float
    power_p: float
    power_q: float
    noise1: float
    noise2: float

    def __post_init__(self):
        for name in _NONNEGATIVE:
            value = _require_finite(name, getattr(self, name))
            if value < 0.0:
                raise ConfigError(f"{name} must be nonnegative, got {value}")
            object.__setattr__(self, name, value)
        for name in _POSITIVE:
            value = _require_finite(name, getattr(self, name))
            if value <= 0.0:
                raise ConfigError(f"{name} must be positive, got {value}")
            object.__setattr__(self, name, value)

    @property
    def rho1(self) -> float:
        """SNR of the MT-to-RT hop: P over the RT noise floor."""
        return self.power_p / self.noise1

    @property
    def rho2(self) -> float:
        """SNR of the RT-to-BS hop: Q over the BS noise floor."""
        return self.power_q / self.noise2

    @property
    def first_lag(self) -> LagGains:
        return LagGains(local=self.beta, cross=self.alpha)

    @property
    def second_lag(self) -> LagGains:
        return LagGains(local=self.gamma, cross=self.eta)


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class QuadratureConfig:
    """Resolution and convergence policy for the periodic quadrature.

    The grid starts at initial_points samples and doubles until successive
    estimates agree to rel_tol (relative above magnitude one, absolute
    below), giving up beyond max_points.
    """

    initial_points: int = 64
    max_points: int = 2 ** 22
    rel_tol: float = 1e-10

    def __post_init__(self):
        for name in ("initial_points", "max_points"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, numbers.Integral):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.initial_points < 8 or not _is_power_of_two(self.initial_points):
            raise ConfigError(
                f"initial_points must be a power of two >= 8, got {self.initial_points}")
        if self.max_points < self.initial_points or not _is_power_of_two(self.max_points):
            raise ConfigError(
                "max_points must be a power of two >= initial_points, "
                f"got {self.max_points}")
        rel_tol = _require_finite("rel_tol", self.rel_tol)
        if not 0.0 < rel_tol < 1.0:
            raise ConfigError(f"rel_tol must lie in (0, 1), got {rel_tol}")
        object.__setattr__(self, "rel_tol", rel_tol)


DEFAULT_QUADRATURE = QuadratureConfig()

_GAIN_KEYS = ("alpha", "beta", "gamma", "eta", "mu")
_NOISE_KEYS = ("noise1", "noise2")
_POWER_KEYS = {"power_p": "P_dB", "power_q": "Q_dB"}

# The stock operating point used when the CLI is given no configuration.
DEFAULT_CONFIG_MAPPING = {
    "alpha": 0.2,
    "beta": 1.0,
    "gamma": 1.0,
    "eta": 0.2,
    "mu": 0.4,
    "P_dB": 10.0,
    "Q_dB": 20.0,
    "noise1": 1.0,
    "noise2": 1.0,
}


def parse_config(source) -> SystemConfig:
    """Build a SystemConfig from a flat key-value mapping.

    Gains and noise powers are linear. Each transmit power is given either
    linearly (power_p, power_q) or in dB (P_dB, Q_dB); supplying both forms
    of the same power is an error, as are unknown keys, missing keys, and
    non-finite values. Error messages name the offending key.
    """
    entries = dict(source)
    known = set(_GAIN_KEYS) | set(_NOISE_KEYS)
    known |= set(_POWER_KEYS) | set(_POWER_KEYS.values())
    unknown = sorted(set(map(str, entries)) - known)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")

    kwargs = {}
    for key in _GAIN_KEYS + _NOISE_KEYS:
        if key not in entries:
            raise ConfigError(f"missing config key '{key}'")
        kwargs[key] = _require_finite(key, entries[key])
    for linear_key, db_key in _POWER_KEYS.items():
        if linear_key in entries and db_key in entries:
            raise ConfigError(
                f"config keys '{linear_key}' and '{db_key}' both present; "
                "give the power in exactly one form")
        if linear_key in entries:
            kwargs[linear_key] = _require_finite(linear_key, entries[linear_key])
        elif db_key in entries:
            kwargs[linear_key] = db_to_linear(_require_finite(db_key, entries[db_key]))
        else:
            raise ConfigError(f"missing config key '{linear_key}' (or '{db_key}')")
    return SystemConfig(**kwargs)


def config_to_mapping(config: SystemConfig) -> dict:
    """Flat all-linear mapping accepted by parse_config; round-trips exactly."""
    return {f.name: getattr(config, f.name) for f in fields(config)}


def load_mapping(path) -> dict:
    """Read a JSON object file into a flat mapping (not yet validated)."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            document = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ConfigError(f"config file {path} must hold a single JSON object")
    return document


def load_config(path) -> SystemConfig:
    """Read a JSON object file and parse it as a configuration."""
    return parse_config(load_mapping(path))

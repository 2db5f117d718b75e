"""Configuration parsing and validation."""

import json
import math

import pytest

from wynerrelay import (
    ConfigError,
    LagGains,
    QuadratureConfig,
    SystemConfig,
    config_to_mapping,
    db_to_linear,
    linear_to_db,
    load_config,
    load_mapping,
    parse_config,
)


def stock_mapping(**overrides):
    mapping = {
        "alpha": 0.2,
        "beta": 1.0,
        "gamma": 1.0,
        "eta": 0.2,
        "mu": 0.4,
        "power_p": 10.0,
        "power_q": 100.0,
        "noise1": 1.0,
        "noise2": 1.0,
    }
    mapping.update(overrides)
    return mapping


class TestDecibels:
    def test_known_values(self):
        assert db_to_linear(0.0) == 1.0
        assert db_to_linear(10.0) == pytest.approx(10.0, rel=1e-15)
        assert db_to_linear(20.0) == pytest.approx(100.0, rel=1e-15)
        assert linear_to_db(1.0) == 0.0

    def test_round_trip(self):
        for db in (-30.0, -3.0, 0.0, 7.5, 10.0, 33.0, 60.0):
            assert linear_to_db(db_to_linear(db)) == pytest.approx(db, abs=1e-12)
        for lin in (1e-3, 0.5, 1.0, 42.0, 1e6):
            assert db_to_linear(linear_to_db(lin)) == pytest.approx(lin, rel=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            linear_to_db(0.0)
        with pytest.raises(ValueError):
            linear_to_db(-1.0)


class TestLagGains:
    def test_fields(self):
        lag = LagGains(local=1.0, cross=0.2)
        assert lag.local == 1.0
        assert lag.cross == 0.2

    def test_coerces_to_float(self):
        lag = LagGains(local=1, cross=0)
        assert isinstance(lag.local, float)
        assert isinstance(lag.cross, float)

    def test_rejects_negative(self):
        with pytest.raises(ConfigError):
            LagGains(local=-0.1, cross=0.2)
        with pytest.raises(ConfigError):
            LagGains(local=1.0, cross=-0.2)

    def test_rejects_non_finite(self):
        with pytest.raises(ConfigError):
            LagGains(local=math.inf, cross=0.2)
        with pytest.raises(ConfigError):
            LagGains(local=math.nan, cross=0.2)

    def test_frozen(self):
        lag = LagGains(local=1.0, cross=0.2)
        with pytest.raises(AttributeError):
            lag.local = 2.0


class TestSystemConfig:
    def test_derived_snrs(self):
        config = parse_config(stock_mapping(noise1=2.0, noise2=4.0))
        assert config.rho1 == pytest.approx(5.0, rel=1e-15)
        assert config.rho2 == pytest.approx(25.0, rel=1e-15)

    def test_lag_views(self):
        config = parse_config(stock_mapping())
        assert config.first_lag == LagGains(local=1.0, cross=0.2)
        assert config.second_lag == LagGains(local=1.0, cross=0.2)
        assert config.first_lag.local == config.beta
        assert config.second_lag.cross == config.eta

    def test_zero_powers_allowed(self):
        assert parse_config(stock_mapping(power_p=0.0)).rho1 == 0.0
        assert parse_config(stock_mapping(power_q=0.0)).rho2 == 0.0

    def test_rejects_negative_relay_power(self):
        with pytest.raises(ConfigError, match="power_q"):
            parse_config(stock_mapping(power_q=-1.0))

    def test_rejects_zero_noise(self):
        for key in ("noise1", "noise2"):
            with pytest.raises(ConfigError, match=key):
                parse_config(stock_mapping(**{key: 0.0}))


class TestParseConfig:
    def test_db_form(self):
        mapping = stock_mapping()
        del mapping["power_p"], mapping["power_q"]
        mapping["P_dB"] = 10.0
        mapping["Q_dB"] = 20.0
        config = parse_config(mapping)
        assert config.power_p == pytest.approx(10.0, rel=1e-15)
        assert config.power_q == pytest.approx(100.0, rel=1e-15)

    def test_zero_db_is_unit_power(self):
        mapping = stock_mapping()
        del mapping["power_p"]
        mapping["P_dB"] = 0.0
        assert parse_config(mapping).power_p == 1.0

    def test_negative_power_names_offending_key(self):
        with pytest.raises(ConfigError, match="power_p"):
            parse_config(stock_mapping(power_p=-1.0))

    def test_both_forms_rejected(self):
        mapping = stock_mapping()
        mapping["P_dB"] = 10.0
        with pytest.raises(ConfigError, match="power_p"):
            parse_config(mapping)

    def test_missing_key_named(self):
        mapping = stock_mapping()
        del mapping["mu"]
        with pytest.raises(ConfigError, match="mu"):
            parse_config(mapping)

    def test_unknown_key_named(self):
        with pytest.raises(ConfigError, match="wavelength"):
            parse_config(stock_mapping(wavelength=3.0))

    def test_rejects_non_numeric(self):
        with pytest.raises(ConfigError, match="mu"):
            parse_config(stock_mapping(mu="0.4"))
        with pytest.raises(ConfigError, match="mu"):
            parse_config(stock_mapping(mu=True))

    def test_rejects_non_finite(self):
        with pytest.raises(ConfigError, match="alpha"):
            parse_config(stock_mapping(alpha=math.inf))

    def test_round_trip_identity(self):
        config = parse_config(stock_mapping(alpha=0.35, mu=0.7, power_p=3.5))
        assert parse_config(config_to_mapping(config)) == config


class TestQuadratureConfig:
    def test_defaults(self):
        quad = QuadratureConfig()
        assert quad.initial_points == 64
        assert quad.max_points == 2**22
        assert quad.rel_tol == 1e-10

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ConfigError):
            QuadratureConfig(initial_points=48)
        with pytest.raises(ConfigError):
            QuadratureConfig(max_points=3_000_000)

    def test_rejects_too_small(self):
        with pytest.raises(ConfigError):
            QuadratureConfig(initial_points=4)

    def test_rejects_max_below_initial(self):
        with pytest.raises(ConfigError):
            QuadratureConfig(initial_points=256, max_points=128)

    def test_rejects_bad_tolerance(self):
        for tol in (0.0, 1.0, -1e-9, math.nan):
            with pytest.raises(ConfigError):
                QuadratureConfig(rel_tol=tol)


class TestLoadConfig:
    def test_load_json_file(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps(stock_mapping()))
        assert load_config(path) == parse_config(stock_mapping())

    def test_load_mapping_preserves_keys(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"P_dB": 10.0}))
        assert load_mapping(path) == {"P_dB": 10.0}

    def test_rejects_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError):
            load_mapping(path)

    def test_rejects_non_object(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[1, 2, 3]")
        with pytest.raises(ConfigError):
            load_mapping(path)

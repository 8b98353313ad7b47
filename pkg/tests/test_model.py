import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tlab.model import (
    ConfigError, Coupling, Damping, ModeState, SystemConfig, Tau,
    assemble_generator, config_text, dissipation_rate, hermitian_energy,
    parse_config_text,
)

from conftest import random_config, random_state


def _cfg(**kw):
    base = dict(k1=1.0, k2=1.0, k3=2.0, k4=1.0, k5=1.0, gamma=1.0,
                tau=Tau.TAU1, damping=Damping.TYPE_III,
                coupling=Coupling.FIRST_ORDER)
    base.update(kw)
    return SystemConfig(**base)


class TestConfigValidation:
    def test_positive_coefficients_required(self):
        for key in ("k1", "k2", "k3", "k4", "k5"):
            with pytest.raises(ConfigError):
                _cfg(**{key: 0.0})
            with pytest.raises(ConfigError):
                _cfg(**{key: -1.0})

    def test_gamma_nonzero(self):
        with pytest.raises(ConfigError):
            _cfg(gamma=0.0)

    def test_chi_and_stability(self):
        assert _cfg(k2=1.0, k3=2.0).chi == 1.0
        assert _cfg(k2=1.0, k3=2.0).stable
        assert not _cfg(k2=1.5, k3=1.5).stable
        # near-equal within tolerance counts as chi = 0
        assert not _cfg(k2=1.0, k3=1.0 + 1e-14).stable
        # other thermal placements are always stable
        assert _cfg(k2=1.5, k3=1.5, tau=Tau.TAU2).stable
        assert _cfg(k2=1.5, k3=1.5, tau=Tau.TAU3).stable

    def test_equal_speeds(self):
        assert _cfg(k1=1.0, k2=1.0, k3=1.0).equal_speeds
        assert not _cfg(k1=1.0, k2=1.0, k3=1.0 + 1e-6).equal_speeds
        assert _cfg(k1=2.0, k2=2.0, k3=2.0 + 1e-13).equal_speeds

    def test_alpha_bounds(self):
        cfg = _cfg(k1=0.5, k2=3.0)
        assert cfg.alpha1 == 0.25
        assert cfg.alpha2 == 1.5


class TestConfigParsing:
    def test_round_trip(self, rng):
        for _ in range(20):
            cfg = random_config(rng)
            assert parse_config_text(config_text(cfg)) == cfg

    def test_unknown_key_reports_line(self):
        with pytest.raises(ConfigError, match="line 3"):
            parse_config_text("k1 = 1\nk2 = 1\nwhat = 7\n")

    def test_duplicate_key(self):
        text = config_text(_cfg()) + "\nk1 = 2.0\n"
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config_text(text)

    def test_missing_key(self):
        with pytest.raises(ConfigError, match="k5"):
            parse_config_text("k1=1\nk2=1\nk3=2\nk4=1\ngamma=1\n"
                              "tau=1\ndamping=type3\ncoupling=first\n")

    def test_comments_and_blanks_ignored(self):
        text = "# comment\n\n" + config_text(_cfg())
        assert parse_config_text(text) == _cfg()


class TestGenerator:
    def test_matches_componentwise_rhs(self, rng):
        for _ in range(60):
            cfg = random_config(rng)
            xi = float(rng.uniform(-3.0, 3.0))
            s = random_state(rng)
            lhs = assemble_generator(cfg, xi).a @ s
            rhs = oracles.mode_rhs(cfg, xi, s)
            assert np.allclose(lhs, rhs, rtol=0, atol=1e-13)

    def test_eta_row_example(self):
        cfg = _cfg()
        a = assemble_generator(cfg, 1.0).a
        expected = np.array([0, -1j, 0, 0, 0, 0, 1j, -1.0])
        assert np.allclose(a[7], expected)

    def test_decomposition_consistent(self, rng):
        cfg = random_config(rng)
        xi = 1.7
        gm = assemble_generator(cfg, xi)
        recombined = -(-xi ** 2 * gm.a2 + 1j * xi * gm.a1 + gm.a0)
        assert np.allclose(gm.a, recombined)


class TestEnergy:
    def test_energy_matches_oracle(self, rng):
        for _ in range(30):
            cfg = random_config(rng)
            s = random_state(rng)
            h = hermitian_energy(cfg)
            assert h(s) == pytest.approx(oracles.energy(cfg, s), rel=1e-14)

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 2 ** 32 - 1),
           xi=st.floats(-5.0, 5.0, allow_nan=False))
    def test_dissipation_identity(self, seed, xi):
        """Lie derivative of the energy is exactly the damping term."""
        rng = np.random.default_rng(seed)
        cfg = random_config(rng)
        s = random_state(rng)
        a = assemble_generator(cfg, xi).a
        h = hermitian_energy(cfg).matrix
        drift = a.conj().T @ h + h @ a
        lie = oracles.quadratic_form(drift, s)
        expected = dissipation_rate(cfg, xi, s)
        scale = max(abs(expected), 1.0)
        assert abs(lie - expected) <= 1e-12 * scale

    def test_conserved_at_zero_frequency_type3(self, rng):
        cfg = random_config(rng, damping=Damping.TYPE_III)
        s = random_state(rng)
        assert dissipation_rate(cfg, 0.0, s) == 0.0

    def test_damped_at_zero_frequency_frictional(self, rng):
        cfg = random_config(rng, damping=Damping.FRICTIONAL)
        s = np.zeros(8, complex)
        s[7] = 1.0
        assert dissipation_rate(cfg, 0.0, s) == pytest.approx(-cfg.k5)


class TestModeState:
    def test_rejects_nonfinite(self):
        bad = np.array([np.nan] + [0.0] * 7, dtype=complex)
        with pytest.raises(ValueError):
            ModeState(values=bad, xi=1.0)

    def test_values_are_copied_and_frozen(self, rng):
        raw = random_state(rng)
        state = ModeState(values=raw, xi=1.0)
        raw[0] = 99.0
        assert state.values[0] != 99.0
        with pytest.raises(ValueError):
            state.values[0] = 0.0

"""Tests for threshold configuration"""

import pytest

from conductive_corner_lab.errors import ConfigError
from conductive_corner_lab.interfaces import CheckStatus


class TestLabThresholds:
    """Tests for LabThresholds dataclass"""

    def test_default_values(self):
        """Default values are set correctly"""
        from conductive_corner_lab.config.thresholds import LabThresholds

        config = LabThresholds()
        assert config.theta_inv == 1e-4
        assert config.theta_adm == 1e-3
        assert config.angle_denominator == 10**6
        assert config.warn_margin == 10.0

    def test_custom_values(self):
        """Custom values can be set"""
        from conductive_corner_lab.config.thresholds import LabThresholds

        config = LabThresholds(theta_inv=1e-3, tau_max=1024.0)
        assert config.theta_inv == 1e-3
        assert config.tau_max == 1024.0

    def test_tau_grid(self):
        """Default grid is 16, 32, ..., 4096"""
        from conductive_corner_lab.config.thresholds import LabThresholds

        grid = LabThresholds().tau_grid()
        assert grid[0] == 16.0
        assert grid[-1] == 4096.0
        assert len(grid) == 9

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"theta_inv": 0.0},
            {"angle_denominator": 1},
            {"tau_min": 100.0, "tau_max": 10.0},
            {"tau_ratio": 1.0},
            {"fit_r_squared": 1.5},
        ],
    )
    def test_invalid_values_raise(self, kwargs):
        """Out-of-range thresholds raise ConfigError"""
        from conductive_corner_lab.config.thresholds import LabThresholds

        with pytest.raises(ConfigError):
            LabThresholds(**kwargs)


class TestLoadThresholds:
    """Tests for load_thresholds"""

    def test_bundled_defaults(self):
        """The bundled YAML matches the dataclass defaults"""
        from conductive_corner_lab.config.thresholds import LabThresholds, load_thresholds

        assert load_thresholds() == LabThresholds()

    def test_flat_file_with_overrides(self, tmp_path):
        """Flat mappings load; keyword overrides win; None overrides are ignored"""
        from conductive_corner_lab.config.thresholds import load_thresholds

        path = tmp_path / "t.yaml"
        path.write_text("theta_inv: 1.0e-3\ntau_max: 512.0\n")
        config = load_thresholds(path, theta_inv=1e-5, tau_min=None)
        assert config.theta_inv == 1e-5
        assert config.tau_max == 512.0
        assert config.tau_min == 16.0

    def test_unknown_key_raises(self, tmp_path):
        """Typos are reported"""
        from conductive_corner_lab.config.thresholds import load_thresholds

        path = tmp_path / "t.yaml"
        path.write_text("thresholds:\n  theta_invv: 1.0\n")
        with pytest.raises(ConfigError, match="theta_invv"):
            load_thresholds(path)

    def test_invalid_yaml_raises(self, tmp_path):
        """Broken YAML is a ConfigError"""
        from conductive_corner_lab.config.thresholds import load_thresholds

        path = tmp_path / "t.yaml"
        path.write_text("theta_inv: [1.0\n")
        with pytest.raises(ConfigError):
            load_thresholds(path)

    def test_missing_file_raises(self, tmp_path):
        """A missing file is a ConfigError"""
        from conductive_corner_lab.config.thresholds import load_thresholds

        with pytest.raises(ConfigError):
            load_thresholds(tmp_path / "missing.yaml")


class TestInvisibilityStatus:
    """Tests for invisibility_status"""

    @pytest.fixture
    def config(self):
        from conductive_corner_lab.config.thresholds import LabThresholds

        return LabThresholds(theta_inv=1e-4, warn_margin=10.0)

    def test_large_norm_returns_pass(self, config):
        """A clearly visible scatterer returns PASS"""
        from conductive_corner_lab.config.thresholds import invisibility_status

        assert invisibility_status(0.1, 1.0, config) == CheckStatus.PASS

    def test_near_threshold_returns_warn(self, config):
        """Within warn_margin of the threshold returns WARN"""
        from conductive_corner_lab.config.thresholds import invisibility_status

        assert invisibility_status(5e-4, 1.0, config) == CheckStatus.WARN

    def test_small_norm_returns_fail(self, config):
        """Below theta_inv times the reference returns FAIL"""
        from conductive_corner_lab.config.thresholds import invisibility_status

        assert invisibility_status(5e-5, 1.0, config) == CheckStatus.FAIL

    def test_reference_scales_threshold(self, config):
        """The threshold is relative to the incident amplitude"""
        from conductive_corner_lab.config.thresholds import invisibility_status

        assert invisibility_status(5e-5, 0.01, config) == CheckStatus.PASS


class TestBuildReason:
    """Tests for build_reason"""

    def test_fail_reason_never_certifies(self):
        """FAIL reasons call the point a candidate only"""
        from conductive_corner_lab.config.thresholds import build_reason

        reason = build_reason(1e-6, 1.0, CheckStatus.FAIL)
        assert reason.startswith("[FAIL]")
        assert "candidate near-invisibility" in reason
        assert "cannot certify" in reason

    def test_pass_reason(self):
        """PASS reasons carry the norm only"""
        from conductive_corner_lab.config.thresholds import build_reason

        reason = build_reason(0.5, 1.0, CheckStatus.PASS)
        assert "||u_inf||=5.000e-01" in reason
        assert "candidate" not in reason

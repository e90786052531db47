"""
Tests for engine settings
"""

import pytest

from mgcolor.config import (
    EngineSettings,
    Strategy,
    get_settings,
    load_settings,
    reset_settings,
    set_settings,
)
from mgcolor.errors import ConfigError


@pytest.fixture
def clean_env(monkeypatch):
    """Remove MGCOLOR_* variables from the environment"""
    for name in [
        "MGCOLOR_CONFIG",
        "MGCOLOR_SOLVER_BUDGET",
        "MGCOLOR_ORACLE_BUDGET",
        "MGCOLOR_GAMMA_MAX_SUBSET",
        "MGCOLOR_STRATEGY",
        "MGCOLOR_LOG_LEVEL",
    ]:
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setattr("mgcolor.config.load_dotenv", lambda: False)
    return monkeypatch


class TestEngineSettings:
    """Tests for EngineSettings"""

    def test_defaults(self):
        """Test default values"""
        settings = EngineSettings()
        assert settings.strategy is Strategy.CASES_FIRST
        assert settings.gamma_max_subset is None
        assert settings.trace_indent == 2

    def test_log_level_normalized(self):
        """Test level names are upper-cased"""
        assert EngineSettings(log_level="debug").log_level == "DEBUG"

    def test_validation(self):
        """Test invalid values are rejected"""
        with pytest.raises(ValueError):
            EngineSettings(solver_budget=0)
        with pytest.raises(ValueError):
            EngineSettings(log_level="LOUD")


class TestLoadSettings:
    """Tests for load_settings"""

    def test_yaml_file(self, clean_env, tmp_path):
        """Test values from a YAML file"""
        path = tmp_path / "settings.yaml"
        path.write_text("oracle_budget: 10\nstrategy: oracle-only\n")
        settings = load_settings(str(path))
        assert settings.oracle_budget == 10
        assert settings.strategy is Strategy.ORACLE_ONLY

    def test_environment_wins(self, clean_env, tmp_path):
        """Test environment variables override the file"""
        path = tmp_path / "settings.yaml"
        path.write_text("solver_budget: 10\n")
        clean_env.setenv("MGCOLOR_SOLVER_BUDGET", "20")
        assert load_settings(str(path)).solver_budget == 20

    def test_config_variable(self, clean_env, tmp_path):
        """Test MGCOLOR_CONFIG points at the file"""
        path = tmp_path / "settings.yaml"
        path.write_text("trace_indent: 0\n")
        clean_env.setenv("MGCOLOR_CONFIG", str(path))
        assert load_settings().trace_indent == 0

    def test_bad_file(self, clean_env, tmp_path):
        """Test unreadable and invalid files"""
        with pytest.raises(ConfigError):
            load_settings(str(tmp_path / "absent.yaml"))
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError):
            load_settings(str(path))
        path.write_text("strategy: guess\n")
        with pytest.raises(ConfigError):
            load_settings(str(path))


class TestFactory:
    """Tests for get_settings / set_settings"""

    def test_cached(self, clean_env):
        """Test the settings object is shared"""
        assert get_settings() is get_settings()

    def test_set_and_reset(self, clean_env):
        """Test replacing and forgetting the settings"""
        custom = EngineSettings(solver_budget=5)
        set_settings(custom)
        assert get_settings() is custom
        reset_settings()
        assert get_settings().solver_budget == 2_000_000


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

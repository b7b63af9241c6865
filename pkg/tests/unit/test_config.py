"""
Unit tests for configuration management.
"""

import pytest
from pydantic import ValidationError

from src.config import Settings, get_settings, reset_settings


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    """Run from an empty directory with no toolkit variables set."""
    monkeypatch.chdir(tmp_path)
    for name in Settings.model_fields:
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


class TestSettings:
    """Test the Settings class."""

    def test_defaults(self, clean_env):
        """Test default values."""
        settings = Settings()

        assert settings.LOG_LEVEL == "WARNING"
        assert settings.LOG_JSON is True
        assert settings.DEFAULT_DIALECT == "plain"
        assert settings.MERGE_SET_VARS is False
        assert settings.ORACLE_MAX_ASSIGNMENTS == 1_000_000
        assert settings.MAX_VN_RANK == 5
        assert settings.FREYD_MAX_MORPHISMS == 5
        assert settings.MAX_CONE_CANDIDATES == 2_000_000
        assert settings.MAX_CARRIER == 12
        assert settings.ENUMERATION_MAX_MORPHISMS == 6
        assert settings.JOBS == 1
        assert settings.SEED == 0

    def test_environment_override(self, clean_env):
        """Test values read from the environment."""
        clean_env.setenv("LOG_LEVEL", "debug")
        clean_env.setenv("DEFAULT_DIALECT", " LStar ")
        clean_env.setenv("MAX_VN_RANK", "3")
        clean_env.setenv("MERGE_SET_VARS", "true")

        settings = Settings()

        assert settings.LOG_LEVEL == "DEBUG"
        assert settings.DEFAULT_DIALECT == "lstar"
        assert settings.MAX_VN_RANK == 3
        assert settings.MERGE_SET_VARS is True

    def test_env_file(self, clean_env, tmp_path):
        """Test values read from a .env file in the working directory."""
        (tmp_path / ".env").write_text("SEED=42\nJOBS=4\n", encoding="utf-8")

        settings = Settings()

        assert settings.SEED == 42
        assert settings.JOBS == 4

    def test_invalid_log_level(self, clean_env):
        """Test that an unknown log level is rejected."""
        clean_env.setenv("LOG_LEVEL", "VERBOSE")

        with pytest.raises(ValidationError) as exc_info:
            Settings()
        assert "Invalid log level" in str(exc_info.value)

    def test_invalid_dialect(self, clean_env):
        """Test that an unknown dialect is rejected."""
        clean_env.setenv("DEFAULT_DIALECT", "nf")

        with pytest.raises(ValidationError) as exc_info:
            Settings()
        assert "Invalid dialect" in str(exc_info.value)

    @pytest.mark.parametrize(
        "name, value",
        [
            ("MAX_VN_RANK", "6"),
            ("MAX_VN_RANK", "-1"),
            ("FREYD_MAX_MORPHISMS", "0"),
            ("FREYD_MAX_MORPHISMS", "9"),
            ("MAX_CARRIER", "21"),
            ("ENUMERATION_MAX_MORPHISMS", "9"),
            ("ORACLE_MAX_ASSIGNMENTS", "0"),
            ("JOBS", "0"),
        ],
    )
    def test_caps_out_of_range(self, clean_env, name, value):
        """Test that feasibility caps outside their range are rejected."""
        clean_env.setenv(name, value)

        with pytest.raises(ValidationError):
            Settings()

    def test_freyd_cap_above_enumeration_cap(self, clean_env):
        """Test the warning when the Freyd cap exceeds the enumeration cap."""
        clean_env.setenv("FREYD_MAX_MORPHISMS", "7")
        clean_env.setenv("ENUMERATION_MAX_MORPHISMS", "4")

        with pytest.warns(UserWarning, match="FREYD_MAX_MORPHISMS=7"):
            settings = Settings()
        assert settings.FREYD_MAX_MORPHISMS == 7

    def test_case_sensitive(self, clean_env):
        """Test that lowercase variable names are ignored."""
        clean_env.setenv("seed", "9")

        assert Settings().SEED == 0


class TestSettingsSingleton:
    """Test get_settings and reset_settings."""

    def test_singleton(self, clean_env):
        """Test that get_settings returns the same instance."""
        assert get_settings() is get_settings()

    def test_reset(self, clean_env):
        """Test that reset_settings reloads from the environment."""
        first = get_settings()
        clean_env.setenv("SEED", "5")

        assert get_settings().SEED == first.SEED
        reset_settings()
        second = get_settings()
        assert second is not first
        assert second.SEED == 5

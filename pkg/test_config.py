#!/usr/bin/env python3
"""
Tests for the settings file, environment overrides and the resolved run configuration.
"""

import json

import pytest

from src.config.config_manager import ConfigManager, RunConfig
from src.config.constants import DEFAULT_SETTINGS, MODE_EXACT, MODE_FLOAT


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("BRATTELIKIT_MODE", raising=False)


def test_defaults_without_a_settings_file(tmp_path):
    manager = ConfigManager(str(tmp_path / "missing.json"))
    settings = manager.load_settings()
    assert settings == DEFAULT_SETTINGS
    config = manager.run_config()
    assert config.depth == 8 and config.max_shift == 60 and config.n_terms == 100
    assert config.epsilon is None and config.mu is None


def test_settings_file_and_overrides(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"depth": 5, "mode": MODE_EXACT, "colour": "blue"}))
    manager = ConfigManager(str(path))
    settings = manager.load_settings()
    assert settings["depth"] == 5 and settings["mode"] == MODE_EXACT
    assert "colour" not in settings, "unknown keys are ignored"
    config = manager.run_config(depth=7, eta=None)
    assert config.depth == 7, "explicit overrides beat the settings file"
    assert config.eta == DEFAULT_SETTINGS["eta"]


def test_save_and_reload(tmp_path):
    manager = ConfigManager(str(tmp_path / "nested" / "settings.json"))
    manager.save_settings(dict(DEFAULT_SETTINGS, window_depth=4))
    assert manager.load_settings()["window_depth"] == 4


def test_environment_mode_wins(tmp_path, monkeypatch):
    monkeypatch.setenv("BRATTELIKIT_MODE", MODE_EXACT)
    manager = ConfigManager(str(tmp_path / "s.json"))
    assert manager.load_settings()["mode"] == MODE_EXACT
    assert manager.run_config(mode=MODE_FLOAT).mode == MODE_EXACT

    monkeypatch.setenv("BRATTELIKIT_MODE", "quantum")
    assert manager.load_settings()["mode"] == DEFAULT_SETTINGS["mode"]


def test_invalid_values_are_rejected(tmp_path):
    manager = ConfigManager(str(tmp_path / "s.json"))
    with pytest.raises(ValueError):
        manager.run_config(mode="decimal")
    with pytest.raises(ValueError):
        manager.run_config(order_policy="zigzag")
    with pytest.raises(ValueError):
        RunConfig.from_dict({"depth": 0})


def test_run_config_to_dict():
    config = RunConfig.from_dict({"seed": 11})
    doc = config.to_dict()
    assert doc["seed"] == 11
    assert set(doc) == set(DEFAULT_SETTINGS)
    assert RunConfig.from_dict(doc) == config


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

"""
Configuration management for Bratteli Kit.
"""

import os
import json
from dataclasses import dataclass, asdict, fields
from typing import Any, Dict, Optional

from ..config.constants import (
    DEFAULT_SETTINGS, SUPPORTED_EXTENSIONS, SUPPORTED_MODES, SUPPORTED_POLICIES,
)
from ..utils.logging_config import LOGGER


@dataclass(frozen=True)
class RunConfig:
    """Resolved run parameters; recorded verbatim into every output document."""
    mode: str
    tol: float
    geometry_tol: float
    depth: int
    max_shift: int
    window_depth: int
    n_terms: int
    seed: int
    output_dir: str
    eta: float
    epsilon: Optional[float]
    mu: Optional[float]
    cone_depth: int
    metamour_cap: int
    extension: str
    order_policy: str
    strict: bool
    log_level: str

    def __post_init__(self):
        if self.mode not in SUPPORTED_MODES:
            raise ValueError(f"mode must be one of {sorted(SUPPORTED_MODES)}, got {self.mode!r}")
        if self.extension not in SUPPORTED_EXTENSIONS:
            raise ValueError(f"extension must be one of {sorted(SUPPORTED_EXTENSIONS)}, got {self.extension!r}")
        if self.order_policy not in SUPPORTED_POLICIES:
            raise ValueError(f"order_policy must be one of {sorted(SUPPORTED_POLICIES)}, got {self.order_policy!r}")
        if self.depth < 1 or self.window_depth < 1:
            raise ValueError("depth and window_depth must be positive")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        merged = DEFAULT_SETTINGS.copy()
        merged.update({k: v for k, v in data.items() if k in DEFAULT_SETTINGS})
        return cls(**{f.name: merged[f.name] for f in fields(cls)})


class ConfigManager:
    """Simple configuration manager for storing and loading settings."""

    def __init__(self, config_file: Optional[str] = None):
        if config_file:
            self.config_file = os.path.abspath(config_file)
            self.config_dir = os.path.dirname(self.config_file)
        else:
            self.config_dir = os.path.join(os.path.expanduser("~"), ".brattelikit_config")
            self.config_file = os.path.join(self.config_dir, "settings.json")
        self.default_settings = DEFAULT_SETTINGS.copy()

    def load_settings(self) -> Dict[str, Any]:
        """Load settings from config file, return defaults if file doesn't exist."""
        settings = self.default_settings.copy()
        try:
            if os.path.exists(self.config_file):
                with open(self.config_file, 'r') as f:
                    loaded = json.load(f)
                unknown = sorted(set(loaded) - set(settings))
                if unknown:
                    LOGGER.warning(f"Ignoring unknown settings keys: {unknown}")
                settings.update({k: v for k, v in loaded.items() if k in settings})
        except Exception as e:
            LOGGER.warning(f"Failed to load settings: {e}")

        env_mode = os.environ.get("BRATTELIKIT_MODE")
        if env_mode:
            if env_mode in SUPPORTED_MODES:
                LOGGER.debug(f"BRATTELIKIT_MODE overrides mode: {env_mode}")
                settings['mode'] = env_mode
            else:
                LOGGER.warning(f"Ignoring BRATTELIKIT_MODE={env_mode!r}")
        return settings

    def save_settings(self, settings: Dict[str, Any]) -> None:
        """Save settings to config file."""
        try:
            os.makedirs(self.config_dir, exist_ok=True)
            with open(self.config_file, 'w') as f:
                json.dump(settings, f, indent=2, sort_keys=True)
            LOGGER.info(f"Settings saved to {self.config_file}")
        except Exception as e:
            LOGGER.error(f"Failed to save settings: {e}")

    def run_config(self, **overrides: Any) -> RunConfig:
        """Settings file, then env override, then explicit (non-None) overrides."""
        settings = self.load_settings()
        env_mode = os.environ.get("BRATTELIKIT_MODE")
        for key, value in overrides.items():
            if value is None or key not in settings:
                continue
            if key == 'mode' and env_mode in SUPPORTED_MODES:
                # the environment variable wins over a flag-provided mode
                continue
            settings[key] = value
        return RunConfig.from_dict(settings)

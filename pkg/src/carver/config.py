"""Layered application configuration.

Precedence, lowest to highest: built-in defaults, JSON config file,
environment variables, CLI flags. The API key itself never appears in any
layer; only the NAME of the environment variable holding it is configurable,
and the key is read from the process environment at request time.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping

from .errors import MissingFixtureError
from .provider import LiveProvider, Provider, ProviderConfig, RecordingProvider, ReplayProvider

PROVIDER_KINDS = ("live", "replay", "record")


@dataclass(frozen=True)
class AppConfig:
    provider: ProviderConfig = field(default_factory=ProviderConfig)
    provider_kind: str = "live"
    top_n: int = 3
    tolerance: float = 0.03
    k: int = 5
    prompt_path: str | None = None
    fixture_dir: str | None = None
    port: int = 8650
    root: str = "."

    def __post_init__(self) -> None:
        if self.provider_kind not in PROVIDER_KINDS:
            raise ValueError(f"provider must be one of {', '.join(PROVIDER_KINDS)}; got {self.provider_kind!r}")
        if self.top_n < 1:
            raise ValueError("top_n must be >= 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not (0.0 <= self.tolerance < 1.0):
            raise ValueError("tolerance must be in [0, 1)")

    def system_preamble(self) -> str | None:
        if self.prompt_path is None:
            return None
        return Path(self.prompt_path).read_text(encoding="utf-8")


# key -> (converter, belongs to ProviderConfig?)
_FIELDS: dict[str, tuple[Callable[[Any], Any], bool]] = {
    "endpoint": (str, True),
    "model": (str, True),
    "temperature": (float, True),
    "iterations": (int, True),
    "max_parallel": (int, True),
    "timeout": (float, True),
    "api_key_env": (str, True),
    "provider": (str, False),
    "top_n": (int, False),
    "tolerance": (float, False),
    "k": (int, False),
    "port": (int, False),
    "fixtures": (str, False),
    "prompt": (str, False),
    "root": (str, False),
}

_ENV_VARS = {
    "CARVER_ENDPOINT": "endpoint",
    "CARVER_MODEL": "model",
    "CARVER_TEMPERATURE": "temperature",
    "CARVER_ITERATIONS": "iterations",
    "CARVER_MAX_PARALLEL": "max_parallel",
    "CARVER_TIMEOUT": "timeout",
    "CARVER_API_KEY_ENV": "api_key_env",
    "CARVER_PROVIDER": "provider",
    "CARVER_TOP_N": "top_n",
    "CARVER_TOLERANCE": "tolerance",
    "CARVER_K": "k",
    "CARVER_PORT": "port",
    "CARVER_FIXTURES": "fixtures",
    "CARVER_PROMPT": "prompt",
    "CARVER_ROOT": "root",
}

# settings-dict key -> ProviderConfig attribute
_PROVIDER_ATTR = {"model": "model_name"}
# settings-dict key -> AppConfig attribute
_APP_ATTR = {"provider": "provider_kind", "fixtures": "fixture_dir", "prompt": "prompt_path"}


def load_config(
    config_path: str | Path | None = None,
    env: Mapping[str, str] | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> AppConfig:
    """Merge the four layers into an AppConfig. `overrides` holds CLI values
    keyed like the config file; None values are ignored."""
    env = os.environ if env is None else env
    settings: dict[str, Any] = {}

    if config_path is not None:
        data = json.loads(Path(config_path).read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise ValueError(f"config file {config_path} must hold a JSON object")
        for key, value in data.items():
            if key not in _FIELDS:
                raise ValueError(f"unknown config key {key!r} in {config_path}")
            settings[key] = value

    for var, key in _ENV_VARS.items():
        if var in env and env[var] != "":
            settings[key] = env[var]

    if overrides:
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in _FIELDS:
                raise ValueError(f"unknown override {key!r}")
            settings[key] = value

    provider_kwargs: dict[str, Any] = {}
    app_kwargs: dict[str, Any] = {}
    for key, value in settings.items():
        convert, is_provider = _FIELDS[key]
        try:
            converted = convert(value)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"bad value for {key!r}: {value!r} ({exc})") from exc
        if is_provider:
            provider_kwargs[_PROVIDER_ATTR.get(key, key)] = converted
        else:
            app_kwargs[_APP_ATTR.get(key, key)] = converted

    return AppConfig(provider=ProviderConfig(**provider_kwargs), **app_kwargs)


def make_provider(config: AppConfig) -> Provider:
    if config.provider_kind == "replay":
        if not config.fixture_dir:
            raise MissingFixtureError("(unset)", "replay provider needs a fixture directory")
        return ReplayProvider(config.fixture_dir)
    if config.provider_kind == "record":
        if not config.fixture_dir:
            raise MissingFixtureError("(unset)", "recording provider needs a fixture directory")
        return RecordingProvider(LiveProvider(), config.fixture_dir)
    return LiveProvider()

"""Configuration management for adegraph."""
import copy
import json
import os
import sys
import tomllib
from pathlib import Path
from typing import Any, Dict, Iterator, Tuple

from .errors import ConfigError


CURRENT_CONFIG_VERSION = 1
CONFIG_FILENAME = "adegraph.toml"

DEFAULT_CONFIG = {
    "version": CURRENT_CONFIG_VERSION,
    "limits": {
        "canonical_max_vertices": 10,
        "cycle_max_vertices": 12,
        "miner_max_vertices": 9,
        "embedding_max_rotations": 200000,
    },
    "search": {
        "max_depth": 25,
        "max_expansions": 20000,
        "default_mode": "t",
    },
    "oracle": {
        "max_n": 6,
        "certificate_trials": 1000,
        "seed": 20240501,
    },
    "output": {
        "json_indent": 2,
    },
}

# Smallest accepted value per integer key; keys not listed may be any int.
_INT_MINIMUMS = {
    ("limits", "canonical_max_vertices"): 1,
    ("limits", "cycle_max_vertices"): 3,
    ("limits", "miner_max_vertices"): 1,
    ("limits", "embedding_max_rotations"): 1,
    ("search", "max_depth"): 0,
    ("search", "max_expansions"): 0,
    ("oracle", "max_n"): 1,
    ("oracle", "certificate_trials"): 0,
    ("output", "json_indent"): 0,
}

# Largest accepted value per integer key.
_INT_MAXIMUMS = {
    ("limits", "canonical_max_vertices"): 10,
    ("limits", "miner_max_vertices"): 10,
}


def _merge_configs(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Recursively merge configuration dictionaries."""
    result = copy.deepcopy(base)
    for key, value in overrides.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = _merge_configs(result[key], value)
        else:
            result[key] = value
    return result


def _known_keys(config: Dict[str, Any]) -> Iterator[Tuple[str, str]]:
    for section, values in config.items():
        if isinstance(values, dict):
            for key in values:
                yield section, key


def unknown_keys(user_config: Dict[str, Any]) -> list[str]:
    """Dotted names in a user config that adegraph does not read."""
    found = []
    for section, values in user_config.items():
        if section not in DEFAULT_CONFIG:
            found.append(section)
        elif isinstance(values, dict) and isinstance(DEFAULT_CONFIG[section], dict):
            found.extend(f"{section}.{key}" for key in values if key not in DEFAULT_CONFIG[section])
    return found


def validate_config(config: Dict[str, Any]) -> None:
    """Raise ConfigError for values the engine cannot run with."""
    from .policies import MODES

    for section, key in _known_keys(DEFAULT_CONFIG):
        section_values = config.get(section)
        if not isinstance(section_values, dict):
            raise ConfigError(f"[{section}] must be a table")
        value = section_values.get(key)
        name = f"{section}.{key}"
        if (section, key) == ("search", "default_mode"):
            if value not in MODES:
                raise ConfigError(f"{name} = {value!r} is not one of: {', '.join(MODES)}")
            continue
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{name} must be an integer, got {value!r}")
        minimum = _INT_MINIMUMS.get((section, key))
        if minimum is not None and value < minimum:
            raise ConfigError(f"{name} must be at least {minimum}, got {value}")
        maximum = _INT_MAXIMUMS.get((section, key))
        if maximum is not None and value > maximum:
            raise ConfigError(f"{name} must be at most {maximum}, got {value}")


def get_platform_config_dir() -> Path:
    """Return the platform-specific config directory (never CWD)."""
    if os.name == "nt":
        appdata = os.getenv("APPDATA")
        if appdata:
            return Path(appdata) / "adegraph"
    elif sys.platform == "darwin":
        return Path.home() / "Library" / "Application Support" / "adegraph"
    xdg = os.getenv("XDG_CONFIG_HOME", str(Path.home() / ".config"))
    return Path(xdg) / "adegraph"


def _config_dirs() -> list[Path]:
    """Return config directories, highest priority first."""
    return [Path.cwd(), get_platform_config_dir()]


def _find_config_path() -> Path | None:
    for directory in _config_dirs():
        config_path = directory / CONFIG_FILENAME
        if config_path.exists():
            return config_path
    return None


def get_config_path() -> Path | None:
    """Return the resolved config file path, if any."""
    return _find_config_path()


def _read_config_file(config_path: Path) -> Dict[str, Any]:
    with open(config_path, "rb") as f:
        user_config = tomllib.load(f)

    for name in unknown_keys(user_config):
        print(f"[WARN] Ignoring unknown config key {name} in {config_path}", file=sys.stderr)

    config = _merge_configs(DEFAULT_CONFIG, user_config)
    version = config.get("version", 0)
    if version > CURRENT_CONFIG_VERSION:
        print(
            f"[ERR] Config version {version} is newer than this adegraph "
            f"installation (max: {CURRENT_CONFIG_VERSION}).",
            file=sys.stderr,
        )
        raise SystemExit(1)
    if version < CURRENT_CONFIG_VERSION:
        # no schema change before version 1
        config["version"] = CURRENT_CONFIG_VERSION
    validate_config(config)
    return config


def load_config(
    path: Path | None = None,
    *,
    quiet: bool = False,
    raise_on_error: bool = False,
) -> Dict[str, Any]:
    """Load configuration with fallback defaults.

    Args:
        path: Optional explicit config path. If omitted, auto-discovery is used.
        quiet: Suppress non-error informational logs.
        raise_on_error: Re-raise parsing, loading and validation errors instead of falling back.
    """
    config_path = path if path is not None else _find_config_path()
    if not config_path:
        if not quiet:
            print(f"[INFO] No {CONFIG_FILENAME} found, using defaults")
        return copy.deepcopy(DEFAULT_CONFIG)

    try:
        config = _read_config_file(config_path)
    except SystemExit:
        raise
    except Exception as e:
        if raise_on_error:
            raise
        print(f"[WARN] Failed to load config from {config_path}: {e}", file=sys.stderr)
        if not quiet:
            print("[INFO] Using default configuration")
        return copy.deepcopy(DEFAULT_CONFIG)

    if not quiet:
        print(f"[INFO] Loaded config from: {config_path}")
    return config


def _toml_value(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, str):
        # JSON string escapes are valid TOML basic-string escapes
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_toml_value(v) for v in value) + "]"
    return str(value)


def save_config(path: Path, config_dict: Dict[str, Any]) -> None:
    """Save configuration to TOML file."""
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = ["# adegraph configuration", ""]
    tables = {k: v for k, v in config_dict.items() if isinstance(v, dict)}
    # top-level scalars must precede the first table header
    lines.extend(f"{k} = {_toml_value(v)}" for k, v in config_dict.items() if k not in tables)
    for section, values in tables.items():
        lines.extend(["", f"[{section}]"])
        lines.extend(f"{k} = {_toml_value(v)}" for k, v in values.items())
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"[OK] Configuration saved to: {path}")

"""Tests for configuration loading and serialization."""
import pathlib

import pytest

from adegraph import config as config_module
from adegraph.config import CURRENT_CONFIG_VERSION
from adegraph.errors import ConfigError
from adegraph.reducer import SearchLimits


class _FakePosixPath(pathlib.PurePosixPath):
    @classmethod
    def cwd(cls):
        return cls("/work")

    @classmethod
    def home(cls):
        return cls("/home/tester")


def test_merge_configs_is_recursive():
    base = {"a": {"x": 1, "y": 2}, "b": 1}
    overrides = {"a": {"y": 9}, "b": 5}
    result = config_module._merge_configs(base, overrides)
    assert result == {"a": {"x": 1, "y": 9}, "b": 5}


def test_merge_configs_does_not_mutate_defaults():
    merged = config_module._merge_configs(config_module.DEFAULT_CONFIG, {"search": {"max_depth": 3}})
    assert merged["search"]["max_depth"] == 3
    assert config_module.DEFAULT_CONFIG["search"]["max_depth"] == 25


def test_find_config_path_uses_first_existing_dir(monkeypatch, tmp_path):
    first = tmp_path / "first"
    second = tmp_path / "second"
    first.mkdir()
    second.mkdir()
    (second / "adegraph.toml").write_text("[search]\nmax_depth = 5\n", encoding="utf-8")

    monkeypatch.setattr(config_module, "_config_dirs", lambda: [first, second])
    assert config_module._find_config_path() == second / "adegraph.toml"


def test_find_config_path_returns_none_when_missing(monkeypatch, tmp_path):
    only = tmp_path / "only"
    only.mkdir()
    monkeypatch.setattr(config_module, "_config_dirs", lambda: [only])
    assert config_module._find_config_path() is None


def test_get_config_path_proxies_find(monkeypatch, tmp_path):
    target = tmp_path / "adegraph.toml"
    monkeypatch.setattr(config_module, "_find_config_path", lambda: target)
    assert config_module.get_config_path() == target


def test_load_config_without_file_uses_defaults(monkeypatch):
    monkeypatch.setattr(config_module, "_find_config_path", lambda: None)
    loaded = config_module.load_config(quiet=True)
    assert loaded["search"]["default_mode"] == "t"
    assert loaded["limits"]["canonical_max_vertices"] == 10
    assert loaded["oracle"]["seed"] == 20240501


def test_load_config_merges_partial_sections(tmp_path):
    conf = tmp_path / "adegraph.toml"
    conf.write_text("[search]\nmax_expansions = 50\n", encoding="utf-8")
    loaded = config_module.load_config(path=conf, quiet=True)
    assert loaded["search"]["max_expansions"] == 50
    assert loaded["search"]["max_depth"] == 25


def test_load_config_invalid_file_falls_back_when_not_strict(tmp_path):
    invalid = tmp_path / "adegraph.toml"
    invalid.write_text("[search\nmax_depth=1\n", encoding="utf-8")
    loaded = config_module.load_config(path=invalid, quiet=True, raise_on_error=False)
    assert loaded["search"]["max_depth"] == 25


def test_load_config_invalid_file_raises_when_strict(tmp_path):
    invalid = tmp_path / "adegraph.toml"
    invalid.write_text("[search\nmax_depth=1\n", encoding="utf-8")
    with pytest.raises(Exception):
        config_module.load_config(path=invalid, quiet=True, raise_on_error=True)


def test_load_config_prints_loaded_path_when_not_quiet(tmp_path, capsys):
    conf = tmp_path / "adegraph.toml"
    conf.write_text("[output]\njson_indent = 4\n", encoding="utf-8")
    loaded = config_module.load_config(path=conf, quiet=False)
    out = capsys.readouterr().out
    assert loaded["output"]["json_indent"] == 4
    assert "Loaded config from" in out


def test_load_config_invalid_file_prints_default_notice_when_not_quiet(tmp_path, capsys):
    invalid = tmp_path / "adegraph.toml"
    invalid.write_text("[search\n", encoding="utf-8")
    config_module.load_config(path=invalid, quiet=False, raise_on_error=False)
    captured = capsys.readouterr()
    assert "Using default configuration" in captured.out
    assert "[WARN]" in captured.err


def test_load_config_no_file_prints_defaults_notice(monkeypatch, capsys):
    monkeypatch.setattr(config_module, "_find_config_path", lambda: None)
    config_module.load_config(quiet=False)
    out = capsys.readouterr().out
    assert "No adegraph.toml found, using defaults" in out


def test_save_config_writes_sections_and_types(tmp_path):
    path = tmp_path / "adegraph.toml"
    content = {
        "search": {"max_depth": 12, "default_mode": "tprime"},
        "output": {"json_indent": 2},
    }
    config_module.save_config(path, content)

    raw = path.read_text(encoding="utf-8")
    assert "[search]" in raw
    assert 'default_mode = "tprime"' in raw
    assert "max_depth = 12" in raw


def test_save_config_round_trips_defaults(tmp_path):
    path = tmp_path / "adegraph.toml"
    config_module.save_config(path, config_module.DEFAULT_CONFIG)

    raw = path.read_text(encoding="utf-8")
    assert raw.index("version = 1") < raw.index("[limits]")
    loaded = config_module.load_config(path=path, quiet=True, raise_on_error=True)
    assert loaded == config_module.DEFAULT_CONFIG


@pytest.mark.parametrize(
    "os_name, platform, env, expected",
    [
        ("nt", "win32", {"APPDATA": "C:/Users/me/AppData/Roaming"}, "C:/Users/me/AppData/Roaming/adegraph"),
        ("nt", "win32", {"APPDATA": None, "XDG_CONFIG_HOME": "/tmp/xdg"}, "/tmp/xdg/adegraph"),
        ("posix", "darwin", {}, "/home/tester/Library/Application Support/adegraph"),
        ("posix", "linux", {"XDG_CONFIG_HOME": "/tmp/xdg"}, "/tmp/xdg/adegraph"),
        ("posix", "linux", {"XDG_CONFIG_HOME": None}, "/home/tester/.config/adegraph"),
    ],
)
def test_config_dirs_per_platform(monkeypatch, os_name, platform, env, expected):
    monkeypatch.setattr(config_module.os, "name", os_name, raising=False)
    monkeypatch.setattr(config_module.sys, "platform", platform, raising=False)
    monkeypatch.setattr(config_module, "Path", _FakePosixPath)
    for key, value in env.items():
        if value is None:
            monkeypatch.delenv(key, raising=False)
        else:
            monkeypatch.setenv(key, value)
    assert config_module._config_dirs() == [_FakePosixPath("/work"), _FakePosixPath(expected)]


def test_config_older_version_is_stamped_current(tmp_path):
    conf = tmp_path / "adegraph.toml"
    conf.write_text("version = 0\n[search]\nmax_depth = 3\n", encoding="utf-8")
    loaded = config_module.load_config(path=conf, quiet=True, raise_on_error=True)
    assert loaded["version"] == CURRENT_CONFIG_VERSION
    assert loaded["search"]["max_depth"] == 3


def test_config_future_version_raises(tmp_path, capsys):
    conf = tmp_path / "adegraph.toml"
    conf.write_text("version = 999\n[search]\nmax_depth = 3\n", encoding="utf-8")
    with pytest.raises(SystemExit):
        config_module.load_config(path=conf, quiet=True)
    assert "newer than this adegraph installation" in capsys.readouterr().err


def test_search_limits_from_config():
    cfg = config_module._merge_configs(
        config_module.DEFAULT_CONFIG,
        {"search": {"max_depth": 7, "max_expansions": 99}, "limits": {"canonical_max_vertices": 8}},
    )
    limits = SearchLimits.from_config(cfg)
    assert limits.max_depth == 7
    assert limits.max_expansions == 99
    assert limits.canonical_max_vertices == 8
    assert limits.miner_max_vertices == 9


def test_validate_config_accepts_defaults():
    config_module.validate_config(config_module.DEFAULT_CONFIG)


@pytest.mark.parametrize(
    "overrides, match",
    [
        ({"search": {"default_mode": "greedy"}}, "default_mode"),
        ({"search": {"max_depth": -1}}, "at least 0"),
        ({"limits": {"cycle_max_vertices": 2}}, "at least 3"),
        ({"output": {"json_indent": "wide"}}, "must be an integer"),
        ({"oracle": {"max_n": True}}, "must be an integer"),
        ({"limits": 5}, "must be a table"),
        ({"limits": {"canonical_max_vertices": 11}}, "at most 10"),
        ({"limits": {"miner_max_vertices": 12}}, "at most 10"),
    ],
)
def test_validate_config_rejects_bad_values(overrides, match):
    cfg = config_module._merge_configs(config_module.DEFAULT_CONFIG, overrides)
    with pytest.raises(ConfigError, match=match):
        config_module.validate_config(cfg)


def test_load_config_out_of_range_value_falls_back(tmp_path, capsys):
    conf = tmp_path / "adegraph.toml"
    conf.write_text('[search]\ndefault_mode = "greedy"\nmax_depth = 4\n', encoding="utf-8")
    loaded = config_module.load_config(path=conf, quiet=True)
    assert loaded["search"]["default_mode"] == "t"
    assert loaded["search"]["max_depth"] == 25
    assert "default_mode" in capsys.readouterr().err
    with pytest.raises(ConfigError):
        config_module.load_config(path=conf, quiet=True, raise_on_error=True)


def test_unknown_keys_are_reported_but_loaded_config_is_valid(tmp_path, capsys):
    conf = tmp_path / "adegraph.toml"
    conf.write_text("[search]\nmax_depth = 4\nbeam = 3\n[render]\ncolor = true\n", encoding="utf-8")
    loaded = config_module.load_config(path=conf, quiet=True)
    err = capsys.readouterr().err
    assert loaded["search"]["max_depth"] == 4
    assert "search.beam" in err
    assert "render" in err
    assert config_module.unknown_keys({"version": 1, "search": {"max_depth": 1}}) == []


def test_save_config_quotes_strings_and_lists(tmp_path):
    path = tmp_path / "adegraph.toml"
    config_module.save_config(path, {"search": {"default_mode": 'a"b'}, "extra": {"sizes": [1, 2]}})
    raw = path.read_text(encoding="utf-8")
    assert 'default_mode = "a\\"b"' in raw
    assert "sizes = [1, 2]" in raw


def test_validate_config_accepts_upper_bounds():
    cfg = config_module._merge_configs(
        config_module.DEFAULT_CONFIG,
        {"limits": {"canonical_max_vertices": 10, "miner_max_vertices": 10}},
    )
    config_module.validate_config(cfg)


def test_load_config_rejects_oversized_miner_limit(tmp_path):
    conf = tmp_path / "adegraph.toml"
    conf.write_text("[limits]\nminer_max_vertices = 11\n", encoding="utf-8")
    with pytest.raises(ConfigError, match="miner_max_vertices must be at most 10"):
        config_module.load_config(path=conf, quiet=True, raise_on_error=True)
    assert config_module.load_config(path=conf, quiet=True)["limits"]["miner_max_vertices"] == 9

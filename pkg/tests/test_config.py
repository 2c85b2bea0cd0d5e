"""Tests for floerkit.config."""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

from floerkit.config import Settings, load_settings
from floerkit.errors import ConfigError

if TYPE_CHECKING:
    from pathlib import Path

_VARS = (
    "FLOERKIT_NODE_LIMIT",
    "FLOERKIT_MAX_DOUBLINGS",
    "FLOERKIT_FLIP_SEED",
    "FLOERKIT_FLIP_ATTEMPTS",
    "FLOERKIT_UPSILON_DENOMINATOR",
)


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    # registered first so teardown also clears values loaded from .env
    for name in _VARS:
        monkeypatch.setenv(name, "")
        monkeypatch.delenv(name)


class TestLoadSettings:
    def test_defaults(self) -> None:
        assert load_settings(use_dotenv=False) == Settings()
        assert Settings().node_limit == 2_000_000

    def test_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("FLOERKIT_FLIP_SEED", "7")
        monkeypatch.setenv("FLOERKIT_UPSILON_DENOMINATOR", " 4 ")
        settings = load_settings(use_dotenv=False)
        assert settings.flip_seed == 7
        assert settings.upsilon_denominator == 4

    def test_blank_is_default(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("FLOERKIT_NODE_LIMIT", "")
        assert load_settings(use_dotenv=False).node_limit == 2_000_000

    def test_not_an_integer(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("FLOERKIT_NODE_LIMIT", "lots")
        with pytest.raises(ConfigError, match="FLOERKIT_NODE_LIMIT"):
            load_settings(use_dotenv=False)

    def test_out_of_range(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("FLOERKIT_UPSILON_DENOMINATOR", "0")
        with pytest.raises(ConfigError):
            load_settings(use_dotenv=False)

    def test_dotenv_file(self, monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
        """Values in .env apply, but the real environment wins."""
        (tmp_path / ".env").write_text(
            "FLOERKIT_MAX_DOUBLINGS=2\nFLOERKIT_FLIP_SEED=3\n", encoding="utf-8"
        )
        monkeypatch.chdir(tmp_path)
        monkeypatch.setenv("FLOERKIT_FLIP_SEED", "9")
        settings = load_settings()
        assert settings.max_doublings == 2
        assert settings.flip_seed == 9

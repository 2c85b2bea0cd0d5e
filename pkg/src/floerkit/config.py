"""Runtime settings read from the environment (and an optional ``.env`` file).

Recognised variables::

    FLOERKIT_NODE_LIMIT           lattice enumeration budget (default 2000000)
    FLOERKIT_MAX_DOUBLINGS        adaptive window doublings (default 4)
    FLOERKIT_FLIP_SEED            seed for the flip map search (default 0)
    FLOERKIT_FLIP_ATTEMPTS        random candidates tried by find_flip (default 4096)
    FLOERKIT_UPSILON_DENOMINATOR  default sampling denominator for Upsilon (default 8)
"""

from __future__ import annotations

import os

from dotenv import find_dotenv, load_dotenv
from loguru import logger
from pydantic import BaseModel, Field

from floerkit.errors import ConfigError

_ENV_PREFIX = "FLOERKIT_"


class Settings(BaseModel):
    """Effective configuration for one invocation."""

    node_limit: int = Field(default=2_000_000, ge=1)
    max_doublings: int = Field(default=4, ge=0)
    flip_seed: int = 0
    flip_attempts: int = Field(default=4096, ge=0)
    upsilon_denominator: int = Field(default=8, ge=1)

    model_config = {"frozen": True}


def _read_int(name: str) -> int | None:
    raw = os.environ.get(_ENV_PREFIX + name.upper())
    if raw is None or not raw.strip():
        return None
    try:
        return int(raw.strip())
    except ValueError:
        raise ConfigError(f"{_ENV_PREFIX}{name.upper()} must be an integer, got {raw!r}") from None


def load_settings(*, use_dotenv: bool = True) -> Settings:
    """Build :class:`Settings` from ``.env`` (if present) and the process environment.

    Real environment variables win over values in ``.env``.
    """
    if use_dotenv:
        path = find_dotenv(usecwd=True)
        if path:
            load_dotenv(path, override=False)
            logger.debug(f"Loaded settings file {path}")

    values: dict[str, int] = {}
    for name in Settings.model_fields:
        value = _read_int(name)
        if value is not None:
            values[name] = value
    try:
        return Settings(**values)
    except ValueError as e:
        raise ConfigError(str(e)) from None

"""
Runtime settings, resolved from CLI flags, then the environment, then defaults.
"""

import logging
import os
from pathlib import Path
from typing import Any, Mapping, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

from arrkit_topology import Budget

DEFAULT_CACHE_DIR = Path.home() / ".cache" / "arrkit"
DEFAULT_BUDGET = 1 << 25

ENV_CACHE_DIR = "ARR_CACHE_DIR"
ENV_JOBS = "ARR_JOBS"
ENV_BUDGET = "ARR_BUDGET"
ENV_LOG_LEVEL = "ARR_LOG_LEVEL"


class Settings(BaseModel):
    cache_dir: Path = DEFAULT_CACHE_DIR
    use_cache: bool = True
    jobs: int = Field(default=1, ge=1)
    budget: int = Field(default=DEFAULT_BUDGET, ge=1)
    seed: int = 0
    log_level: str = "WARNING"
    progress: bool = False

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if value not in logging.getLevelNamesMapping():
            raise ValueError(f"Unknown log level {value!r}")
        return value

    def to_budget(self) -> Budget:
        return Budget(points=self.budget, jobs=self.jobs, progress=self.progress)


def load_settings(overrides: Optional[Mapping[str, Any]] = None, env_file: Optional[Path] = None) -> Settings:
    """
    Build Settings from a .env file, the ARR_* environment and explicit overrides.

    Overrides whose value is None are ignored, so argparse namespaces can be
    passed through unchanged.
    """
    load_dotenv(env_file)
    values: dict = {}
    if os.getenv(ENV_CACHE_DIR):
        values["cache_dir"] = Path(os.environ[ENV_CACHE_DIR]).expanduser()
    if os.getenv(ENV_JOBS):
        values["jobs"] = os.environ[ENV_JOBS]
    if os.getenv(ENV_BUDGET):
        values["budget"] = os.environ[ENV_BUDGET]
    if os.getenv(ENV_LOG_LEVEL):
        values["log_level"] = os.environ[ENV_LOG_LEVEL]
    for key, value in (overrides or {}).items():
        if value is not None and key in Settings.model_fields:
            values[key] = value
    return Settings(**values)

import logging
import os
from dataclasses import dataclass, replace

from dotenv import find_dotenv, load_dotenv

from .errors import ConfigurationError

DEFAULT_BUDGET = 2 ** 26
DEFAULT_SEED = 20240601
DEFAULT_JOBS = 1
DEFAULT_TRIALS = 1000
DEFAULT_LOG_LEVEL = "WARNING"


@dataclass(frozen=True)
class Settings:
    """
    Run-wide settings shared by the CLI and the verification suite.

    Attributes:
        budget (int): Maximum number of candidate evaluations an exhaustive search may spend.
        seed (int): Seed for every randomized trial.
        jobs (int): Worker processes used by the async classification entry points.
        trials (int): Randomized cases per property check.
        log_level (str): Name of the logging level.
    """
    budget: int = DEFAULT_BUDGET
    seed: int = DEFAULT_SEED
    jobs: int = DEFAULT_JOBS
    trials: int = DEFAULT_TRIALS
    log_level: str = DEFAULT_LOG_LEVEL

    def override(self, **kwargs) -> "Settings":
        """Return a copy with every non-None keyword replacing the stored value."""
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


def _int_from_env(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw, 0)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got '{raw}'")
    if value < minimum:
        raise ConfigurationError(f"{name} must be >= {minimum}, got {value}")
    return value


def load_settings() -> Settings:
    """
    Build Settings from the environment, reading a .env file found from the working directory first.

    Recognised variables: NOTT_BUDGET, NOTT_SEED, NOTT_JOBS, NOTT_TRIALS, NOTT_LOG_LEVEL.

    Returns:
        Settings: The loaded settings; unset variables keep their defaults.

    Raises:
        ConfigurationError: If a variable is set to an invalid value.
    """
    load_dotenv(find_dotenv(usecwd=True))
    log_level = os.getenv("NOTT_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
    if not isinstance(logging.getLevelName(log_level), int):
        raise ConfigurationError(f"NOTT_LOG_LEVEL is not a logging level: '{log_level}'")
    return Settings(
        budget=_int_from_env("NOTT_BUDGET", DEFAULT_BUDGET, 1),
        seed=_int_from_env("NOTT_SEED", DEFAULT_SEED, 0),
        jobs=_int_from_env("NOTT_JOBS", DEFAULT_JOBS, 1),
        trials=_int_from_env("NOTT_TRIALS", DEFAULT_TRIALS, 1),
        log_level=log_level,
    )

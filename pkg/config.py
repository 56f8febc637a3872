import os
import logging
from dataclasses import dataclass

from dotenv import load_dotenv

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('config')

# Pick up a local .env file if there is one
load_dotenv()


@dataclass(frozen=True)
class Settings:
    """
    Search budgets and resource caps, read from the environment.

    Every randomized search and every memoizing structure takes its limits from
    here unless the caller passes explicit values.
    """
    search_budget: int = 200
    max_rank: int = 4
    seed_grid_points: int = 2000
    series_memo_limit: int = 20000
    monomial_limit: int = 1_000_000
    lie_support_limit: int = 200_000
    log_level: str = "INFO"


def _int_from_env(name: str, default: int) -> int:
    """
    Read a positive integer from the environment.

    Args:
        name: Environment variable name
        default: Value used when the variable is unset or malformed

    Returns:
        The parsed integer
    """
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default
    if value < 1:
        logger.warning(f"Ignoring non-positive {name}={value}, using {default}")
        return default
    return value


def get_settings() -> Settings:
    """Build the current settings from the environment."""
    return Settings(
        search_budget=_int_from_env("PF_BUDGET", Settings.search_budget),
        max_rank=_int_from_env("PF_MAX_RANK", Settings.max_rank),
        seed_grid_points=_int_from_env("PF_SEED_GRID", Settings.seed_grid_points),
        series_memo_limit=_int_from_env("PF_SERIES_MEMO_LIMIT", Settings.series_memo_limit),
        monomial_limit=_int_from_env("PF_MONOMIAL_LIMIT", Settings.monomial_limit),
        lie_support_limit=_int_from_env("PF_LIE_SUPPORT_LIMIT", Settings.lie_support_limit),
        log_level=os.getenv("PF_LOG_LEVEL", Settings.log_level).upper(),
    )

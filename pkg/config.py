"""Runtime configuration read from the environment (and an optional .env file)."""

import os

from dotenv import load_dotenv

load_dotenv()

LOG_LEVEL = os.getenv("RAAG_LOG_LEVEL", "WARNING")

# selftest defaults; the CLI flags override these
SELFTEST_BUDGET = int(os.getenv("RAAG_SELFTEST_BUDGET", "1"))
SELFTEST_WORKERS = int(os.getenv("RAAG_SELFTEST_WORKERS", "1"))


def k_check_override() -> int | None:
    """Return the ray validation bound from RAAG_K_CHECK, if set."""
    value = os.getenv("RAAG_K_CHECK")
    if not value:
        return None
    return int(value)

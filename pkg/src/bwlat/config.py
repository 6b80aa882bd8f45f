"""
Configuration and path management for bwlat.
Holds resource caps, output locations and environment overrides.
"""

from pathlib import Path
import logging
import os

# Set up logging
logger = logging.getLogger(__name__)

# Base directory (project root)
BASE_DIR = Path(__file__).resolve().parent.parent.parent

# Core directories
SRC_DIR = BASE_DIR / "src"
SCRIPTS_DIR = BASE_DIR / "scripts"
OUTPUT_DIR = BASE_DIR / "output"

# Output subdirectories
LATTICES_DIR = OUTPUT_DIR / "lattices"
CODES_DIR = OUTPUT_DIR / "codes"
CERTIFICATES_DIR = OUTPUT_DIR / "certificates"
CACHE_DIR = OUTPUT_DIR / "cache"

# Resource caps
MAX_BW_LEVEL = 8
MAX_STREAM_LEVEL = 6
MAX_SVP_RANK = 24
MAX_EXHAUSTIVE_CODE_DIM = 24
MAX_DOT_EXPONENT_LEVEL = 4
MAX_LOWER_GROUP_LEVEL = 4
MAX_RANK = 256
MAX_SURVEY_B = 3
MAX_AVOIDING_ATTEMPTS = 2000
MAX_BERNOULLI_INDEX = 200
MAX_MASS_DIMENSION = 256
MAX_MINKOWSKI_DIMENSION = 512

# Chunk size for vectorized membership checks
MEMBERSHIP_CHUNK = 1 << 16

# Randomness
DEFAULT_SEED = 0

# Environment overrides
ENV_MAX_RANK = "BWLAT_MAX_RANK"
ENV_N_JOBS = "BWLAT_N_JOBS"


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}; using {default}")
        return default


def get_max_rank() -> int:
    """Rank cap for constructions, overridable by BWLAT_MAX_RANK."""
    return _env_int(ENV_MAX_RANK, MAX_RANK)


def get_n_jobs() -> int:
    """Worker count for joblib pools, overridable by BWLAT_N_JOBS."""
    return max(1, _env_int(ENV_N_JOBS, 1))


def ensure_dirs_exist() -> None:
    """Create all output directories if they don't exist."""
    directories = [
        OUTPUT_DIR,
        LATTICES_DIR,
        CODES_DIR,
        CERTIFICATES_DIR,
        CACHE_DIR,
    ]

    for directory in directories:
        directory.mkdir(parents=True, exist_ok=True)


def validate_paths() -> dict:
    """Validate output locations and environment overrides and return status."""
    status = {
        "base_dir": BASE_DIR.exists(),
        "output": OUTPUT_DIR.exists(),
        "lattices": LATTICES_DIR.exists(),
        "certificates": CERTIFICATES_DIR.exists(),
        "max_rank": get_max_rank() > 0,
    }
    return status

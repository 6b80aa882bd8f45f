"""
On-disk cache of built lattices (joblib pickles under CACHE_DIR).
"""

from pathlib import Path
from typing import Optional
import logging

import joblib

from ..barnes_wall import BWLattice, build_bw, check_bw_level
from ..config import CACHE_DIR

# Set up logging
logger = logging.getLogger(__name__)


def bw_cache_path(d: int, cache_dir: Optional[Path] = None) -> Path:
    return (cache_dir or CACHE_DIR) / f"bw{d}.joblib"


def load_bw_with_fallback(d: int, cache_dir: Optional[Path] = None) -> BWLattice:
    """
    Load BW_d from the cache, building and caching it when missing or unreadable.

    Args:
        d: Barnes-Wall level
        cache_dir: Cache directory (optional, uses config default)

    Returns:
        The Barnes-Wall lattice

    Raises:
        ResourceCap: Above MAX_BW_LEVEL or the configured rank cap, cached or not
    """
    check_bw_level(d)
    path = bw_cache_path(d, cache_dir)
    if path.exists():
        try:
            cached = joblib.load(path)
            if isinstance(cached, BWLattice) and cached.d == d:
                logger.info(f"Loaded BW_{d} from {path}")
                return cached
            logger.warning(f"Cache entry {path} holds something else; rebuilding")
        except Exception as e:
            logger.warning(f"Failed to load cached BW_{d}: {e}")

    l = build_bw(d)
    path.parent.mkdir(parents=True, exist_ok=True)
    joblib.dump(l, path)
    logger.info(f"Cached BW_{d} at {path}")
    return l

"""
Shared fixtures: built lattices are session-scoped since construction
dominates test time.
"""

import sys
from pathlib import Path

import pytest

# Add the src directory to Python path
src_path = Path(__file__).resolve().parent.parent / "src"
sys.path.insert(0, str(src_path))

from bwlat.barnes_wall import build_bw  # noqa: E402
from bwlat.washtenaw import TwoSpecialLattice, minimal_washtenawization  # noqa: E402


@pytest.fixture(scope="session")
def bw():
    cache = {}

    def get(d: int):
        if d not in cache:
            cache[d] = build_bw(d)
        return cache[d]

    return get


@pytest.fixture(scope="session")
def washtenaw_bw3(bw):
    return minimal_washtenawization(TwoSpecialLattice.from_bw(bw(3)))


@pytest.fixture(scope="session")
def desk_ypsilanti():
    from bwlat.ypsilanti import desk_scale_ypsilanti

    return desk_scale_ypsilanti(seed=42)

"""
bwlat: Barnes-Wall lattice workbench

Exact construction and verification of Barnes-Wall lattices, their sultry
twists, minimal vectors and frames, Washtenawization gluings, Ypsilanti
even unimodular lattices and the mass-formula asymptotics around them.
"""

__version__ = "1.0.0"
__author__ = "bwlat Team"

from .config import BASE_DIR, OUTPUT_DIR, ensure_dirs_exist, validate_paths
from .errors import BwlatError
from .lattice_core import ScaledLattice
from .gf2_codes import BinaryCode
from .barnes_wall import BWLattice, build_bw, duality_level, minimal_vector_count
from .minimal_vectors import minimal_vectors_structural, verify_structural
from .e8_frames import e8_frame_orbits
from .quadratic_f2 import QuadraticSpaceF2, avoiding_maps_survey, sample_avoiding_map
from .washtenaw import (
    TwoSpecialLattice,
    is_two_special,
    washtenaw_data,
    washtenaw_series,
    washtenawize,
)
from .ypsilanti import build_ypsilanti, desk_scale_ypsilanti, smv_separation_check
from .asymptotics import mass, minkowski_bound, omega_plus_order, upsilon

__all__ = [
    "BASE_DIR",
    "OUTPUT_DIR",
    "ensure_dirs_exist",
    "validate_paths",
    "BwlatError",
    "ScaledLattice",
    "BinaryCode",
    "BWLattice",
    "build_bw",
    "duality_level",
    "minimal_vector_count",
    "minimal_vectors_structural",
    "verify_structural",
    "e8_frame_orbits",
    "QuadraticSpaceF2",
    "avoiding_maps_survey",
    "sample_avoiding_map",
    "TwoSpecialLattice",
    "is_two_special",
    "washtenaw_data",
    "washtenaw_series",
    "washtenawize",
    "build_ypsilanti",
    "desk_scale_ypsilanti",
    "smv_separation_check",
    "mass",
    "minkowski_bound",
    "omega_plus_order",
    "upsilon",
]

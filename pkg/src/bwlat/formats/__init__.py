"""
File formats for lattices, codes, minimal-vector streams and Ypsilanti certificates.
"""

from .lattice_file import (
    format_code,
    format_lattice,
    parse_code,
    parse_lattice,
    read_code,
    read_lattice,
    write_code,
    write_lattice,
)
from .mv_stream import read_mv_stream, write_mv_stream

__all__ = [
    "format_code",
    "format_lattice",
    "parse_code",
    "parse_lattice",
    "read_code",
    "read_lattice",
    "write_code",
    "write_lattice",
    "read_mv_stream",
    "write_mv_stream",
]

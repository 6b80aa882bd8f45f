"""
Plain-text lattice and code files.

Lattice file:
    lattice <rank> <ambient_dim> <denom_exp>
    <rank lines of ambient_dim integers>
    [gram
     <rank lines of rank integers: B B^T of the integer rows>]

Code file:
    code <n> <k>
    <k lines of n characters from {0, 1}; character i is bit i>
"""

from pathlib import Path
from typing import List, Optional, Sequence, Union
import logging

from ..errors import FormatError, InvalidParameter
from ..exact_algebra import IntMatrix
from ..gf2_codes import BinaryCode, bits_from_string, bits_to_string
from ..lattice_core import ScaledLattice

# Set up logging
logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _ints(line: str, expected: int, what: str) -> List[int]:
    try:
        values = [int(tok) for tok in line.split()]
    except ValueError:
        raise FormatError(f"Non-integer entry in {what}: {line.strip()!r}")
    if len(values) != expected:
        raise FormatError(f"Expected {expected} integers in {what}, got {len(values)}")
    return values


def _content_lines(text: str) -> List[str]:
    return [ln for ln in text.splitlines() if ln.strip()]


def format_lattice(l: ScaledLattice, include_gram: bool = False) -> str:
    lines = [f"lattice {l.rank} {l.ambient_dim} {l.denom_exp}"]
    for row in l.basis.to_rows():
        lines.append(" ".join(str(x) for x in row))
    if include_gram:
        lines.append("gram")
        for row in l.gram_int.to_rows():
            lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_lattice_lines(lines: Sequence[str]) -> tuple:
    """
    Parse a lattice block from the start of `lines`.

    Returns:
        (lattice, number of lines consumed)

    Raises:
        FormatError: On a malformed header, row or a gram block that does not match
    """
    if not lines:
        raise FormatError("Empty lattice file")
    header = lines[0].split()
    if len(header) != 4 or header[0] != "lattice":
        raise FormatError(f"Bad lattice header: {lines[0].strip()!r}")
    try:
        rank, ambient, denom_exp = (int(x) for x in header[1:])
    except ValueError:
        raise FormatError(f"Bad lattice header: {lines[0].strip()!r}")
    if rank < 0 or ambient < rank or denom_exp < 0:
        raise FormatError(f"Inconsistent lattice header: rank {rank}, ambient {ambient}, exponent {denom_exp}")
    if len(lines) < 1 + rank:
        raise FormatError(f"Lattice file ends after {len(lines) - 1} of {rank} rows")
    rows = [_ints(lines[1 + i], ambient, f"basis row {i}") for i in range(rank)]
    try:
        lattice = ScaledLattice(IntMatrix.from_rows(rows, cols=ambient) if rows else IntMatrix(0, ambient, ()), denom_exp)
    except InvalidParameter as e:
        raise FormatError(f"Invalid lattice data: {e}")
    used = 1 + rank

    if used < len(lines) and lines[used].strip() == "gram":
        if len(lines) < used + 1 + rank:
            raise FormatError("Gram block is truncated")
        gram = [_ints(lines[used + 1 + i], rank, f"gram row {i}") for i in range(rank)]
        if gram != lattice.gram_int.to_rows():
            raise FormatError("Gram block does not match the basis")
        used += 1 + rank
    return lattice, used


def parse_lattice(text: str) -> ScaledLattice:
    lines = _content_lines(text)
    lattice, used = parse_lattice_lines(lines)
    if used != len(lines):
        raise FormatError(f"Unexpected trailing content: {lines[used].strip()!r}")
    return lattice


def write_lattice(l: ScaledLattice, path: PathLike, include_gram: bool = False) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_lattice(l, include_gram))
    logger.info(f"Wrote rank-{l.rank} lattice to {path}")
    return path


def read_lattice(path: PathLike) -> ScaledLattice:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Lattice file not found: {path}")
    return parse_lattice(path.read_text())


def format_code(code: BinaryCode) -> str:
    lines = [f"code {code.length} {code.dimension}"]
    lines.extend(bits_to_string(g, code.length) for g in code.generators)
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> BinaryCode:
    """
    Raises:
        FormatError: On a malformed header or rows, or dependent rows
    """
    lines = _content_lines(text)
    if not lines:
        raise FormatError("Empty code file")
    header = lines[0].split()
    if len(header) != 3 or header[0] != "code":
        raise FormatError(f"Bad code header: {lines[0].strip()!r}")
    try:
        n, k = int(header[1]), int(header[2])
    except ValueError:
        raise FormatError(f"Bad code header: {lines[0].strip()!r}")
    rows = [ln.strip() for ln in lines[1:]]
    if len(rows) != k:
        raise FormatError(f"Expected {k} code rows, got {len(rows)}")
    try:
        vectors = []
        for r in rows:
            if len(r) != n:
                raise FormatError(f"Code row {r!r} has length {len(r)}, expected {n}")
            vectors.append(bits_from_string(r))
        return BinaryCode(n, tuple(vectors))
    except InvalidParameter as e:
        raise FormatError(f"Invalid code data: {e}")


def write_code(code: BinaryCode, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_code(code))
    logger.info(f"Wrote [{code.length}, {code.dimension}] code to {path}")
    return path


def read_code(path: PathLike) -> BinaryCode:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Code file not found: {path}")
    return parse_code(path.read_text())

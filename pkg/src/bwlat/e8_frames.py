"""
Frames of E8 and their d-invariants relative to L[1].

E8 is modelled as the code lattice over an orthogonal basis x_1..x_8 of
norm 2 (x_i = e_2i + e_2i+1 in Z^16). In this model L[1] is spanned by the
x_i +- x_j and 1/2 (x_1 + ... + x_8), so it does not depend on the chosen
[8,4,4] code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple
import logging

import numpy as np

from .errors import InvalidParameter, NotBetween
from .gf2_codes import BinaryCode
from .lattice_core import ScaledLattice, is_sublattice, lattice_from_code, quotient_rank

# Set up logging
logger = logging.getLogger(__name__)

STANDARD_CODE = ("11111111", "11110000", "11001100", "10101010")
TWISTED_CODE = ("11111111", "01111000", "00011110", "01001011")

H = Fraction(1, 2)

# Frame representatives in x-coordinates
F1 = [[1 if j == i else 0 for j in range(8)] for i in range(8)]

F2 = [[1 if j == i else 0 for j in range(8)] for i in range(4, 8)] + [
    [H, H, H, H, 0, 0, 0, 0],
    [H, H, -H, -H, 0, 0, 0, 0],
    [H, -H, H, -H, 0, 0, 0, 0],
    [H, -H, -H, H, 0, 0, 0, 0],
]

F3 = [
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, H, H, H, H, 0, 0],
    [0, 0, H, H, -H, -H, 0, 0],
    [0, 0, 0, 0, H, -H, H, -H],
    [0, 0, 0, 0, H, -H, -H, H],
    [0, 0, H, -H, 0, 0, H, H],
    [0, 0, H, -H, 0, 0, -H, -H],
]

F4 = [
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, H, H, H, H, 0, 0, 0],
    [0, 0, 0, H, -H, H, H, 0],
    [0, -H, 0, 0, H, 0, H, H],
    [0, H, -H, 0, 0, -H, H, 0],
    [0, 0, H, -H, 0, 0, H, -H],
    [0, H, 0, -H, 0, H, 0, H],
    [0, 0, H, 0, -H, -H, 0, H],
]


def x_coordinates_to_ambient(rows: Sequence[Sequence[Fraction]]) -> Tuple[np.ndarray, int]:
    """Map rows in x-coordinates to integer rows of Z^16 at exponent 1."""
    out = np.zeros((len(rows), 16), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, a in enumerate(row):
            v = Fraction(a) * 2
            if v.denominator != 1:
                raise InvalidParameter(f"Entry {a} is not a half-integer")
            out[i, 2 * j] = out[i, 2 * j + 1] = int(v)
    return out, 1


def e8_model(code_rows: Sequence[str] = STANDARD_CODE) -> ScaledLattice:
    return lattice_from_code(1, BinaryCode.from_strings(list(code_rows)))


def e8_first_twist() -> ScaledLattice:
    """span(x_i +- x_j) + 1/2 sum x_i, at exponent 1 in Z^16."""
    rows = []
    for i in range(8):
        for j in range(i + 1, 8):
            for s in (1, -1):
                x = [0] * 8
                x[i], x[j] = 2, 2 * s
                rows.append(x)
    rows.append([1] * 8)
    ambient, _ = x_coordinates_to_ambient([[Fraction(a, 2) for a in r] for r in rows])
    return ScaledLattice.from_generators(ambient.tolist(), 1, ambient_dim=16)


def frame_d_invariant(frame, frame_denom_exp: int, l: ScaledLattice, m: ScaledLattice) -> int:
    """
    Dimension of (span(F) + M) / M inside L / M.

    Args:
        frame: Integer rows at frame_denom_exp
        frame_denom_exp: Denominator exponent of the frame rows
        l: The lattice containing the frame
        m: A lattice with 2L <= M <= L

    Raises:
        NotBetween: If M is not between 2L and L
    """
    if not (is_sublattice(m, l) and is_sublattice(l.scaled(1), m)):
        raise NotBetween("M must satisfy 2L <= M <= L")
    return quotient_rank(l, m, np.asarray(frame), frame_denom_exp)


@dataclass(frozen=True)
class FrameRecord:
    name: str
    vectors: np.ndarray
    denom_exp: int
    is_frame: bool
    d_invariant: int


@dataclass(frozen=True)
class E8FrameReport:
    frames: Tuple[FrameRecord, ...]

    @property
    def d_invariants(self) -> Tuple[int, ...]:
        return tuple(f.d_invariant for f in self.frames)

    @property
    def all_frames(self) -> bool:
        return all(f.is_frame for f in self.frames)

    @property
    def distinguished(self) -> bool:
        return len(set(self.d_invariants)) == len(self.frames)


def is_norm2_frame(vectors: np.ndarray, denom_exp: int, l: ScaledLattice) -> bool:
    """Eight pairwise orthogonal norm-2 lattice vectors."""
    v = np.asarray(vectors, dtype=np.int64)
    g = v @ v.T
    target = 2 << (2 * denom_exp)
    if len(v) != 8 or not np.all(np.diag(g) == target):
        return False
    if np.any(g[~np.eye(len(v), dtype=bool)] != 0):
        return False
    return bool(np.all(l.oracle.contains(v, denom_exp)))


def e8_frame_orbits() -> E8FrameReport:
    """The four frame orbits of E8 with d-invariants 1, 2, 3, 4."""
    first = e8_first_twist()
    records = []
    for name, rows, code in (
        ("F1", F1, STANDARD_CODE),
        ("F2", F2, STANDARD_CODE),
        ("F3", F3, STANDARD_CODE),
        ("F4", F4, TWISTED_CODE),
    ):
        l = e8_model(code)
        vectors, e = x_coordinates_to_ambient(rows)
        ok = is_norm2_frame(vectors, e, l)
        dinv = frame_d_invariant(vectors, e, l, first)
        logger.info(f"E8 frame {name}: frame={ok}, d-invariant {dinv}")
        records.append(FrameRecord(name, vectors, e, ok, dinv))
    return E8FrameReport(tuple(records))


__all__ = [
    "FrameRecord",
    "E8FrameReport",
    "e8_model",
    "e8_first_twist",
    "x_coordinates_to_ambient",
    "frame_d_invariant",
    "is_norm2_frame",
    "e8_frame_orbits",
]

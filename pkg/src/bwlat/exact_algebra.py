"""
Exact integer and rational linear algebra.

Everything here works on arbitrary-precision Python integers. The heavy
lifting (determinants, inverses, Hermite and Smith normal forms) is
delegated to sympy's DomainMatrix over ZZ and QQ.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple
import logging

import numpy as np
from sympy import factorint
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form, invariant_factors

from .errors import InvalidParameter, SingularMatrix

# Set up logging
logger = logging.getLogger(__name__)

ExactRational = Fraction


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise InvalidParameter(f"Negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise InvalidParameter(
                f"IntMatrix of shape {self.rows}x{self.cols} "
                f"needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        row_list = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            if not row_list:
                raise InvalidParameter("Column count required for an empty matrix")
            cols = len(row_list[0])
        for r in row_list:
            if len(r) != cols:
                raise InvalidParameter(f"Ragged row of length {len(r)}, expected {cols}")
        return cls(len(row_list), cols, tuple(x for r in row_list for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls.from_rows(
            [[int(values[i]) if i == j else 0 for j in range(n)] for i in range(n)], cols=n
        )

    @classmethod
    def from_domain(cls, dm: DomainMatrix) -> "IntMatrix":
        r, c = dm.shape
        return cls.from_rows([[int(x) for x in row] for row in dm.to_list()], cols=c) if r else cls(0, c, ())

    @classmethod
    def from_numpy(cls, arr: np.ndarray) -> "IntMatrix":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise InvalidParameter(f"Expected a 2-d array, got shape {arr.shape}")
        return cls.from_rows(arr.tolist(), cols=arr.shape[1])

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)], cols=self.rows
        )

    def to_domain(self) -> DomainMatrix:
        return DomainMatrix(
            [[ZZ(x) for x in self.row(i)] for i in range(self.rows)],
            (self.rows, self.cols),
            ZZ,
        )

    def to_numpy(self, dtype=object) -> np.ndarray:
        arr = np.array(self.entries, dtype=dtype)
        return arr.reshape(self.rows, self.cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InvalidParameter(f"Shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        if self.rows == 0 or other.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix.from_domain(self.to_domain() * other.to_domain())

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(k * x for x in self.entries))

    def stack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise InvalidParameter(f"Cannot stack {self.cols} and {other.cols} columns")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def content(self) -> int:
        """gcd of all entries (0 for the zero matrix)."""
        return reduce(gcd, (abs(x) for x in self.entries), 0)


@dataclass(frozen=True)
class SnfResult:
    """Invariant factors d1 | d2 | ... | dk (zeros, if any, at the end)."""

    invariant_factors: Tuple[int, ...]

    @property
    def nontrivial(self) -> Tuple[int, ...]:
        """Factors greater than one: the invariants of the finite cokernel part."""
        return tuple(f for f in self.invariant_factors if f > 1)

    @property
    def order(self) -> int:
        """Product of the nonzero factors."""
        out = 1
        for f in self.invariant_factors:
            if f:
                out *= f
        return out

    @property
    def rank(self) -> int:
        return sum(1 for f in self.invariant_factors if f)


def _divisor_chain(factors: Sequence[int]) -> Tuple[int, ...]:
    """Canonical invariant-factor chain of the group sum Z/f over the given f."""
    nonzero = [abs(int(f)) for f in factors if f]
    zeros = len(factors) - len(nonzero)
    k = len(nonzero)
    chain = [1] * k
    exponents = {}
    for f in nonzero:
        for p, e in factorint(f).items():
            exponents.setdefault(p, []).append(e)
    for p, es in exponents.items():
        es.sort()
        # largest exponents go to the end of the chain
        for offset, e in enumerate(reversed(es)):
            chain[k - 1 - offset] *= p ** e
    return tuple(chain) + (0,) * zeros


def determinant(m: IntMatrix) -> int:
    """Exact determinant (fraction-free elimination inside sympy)."""
    if not m.is_square():
        raise InvalidParameter(f"Determinant of non-square {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return 1
    return int(m.to_domain().det())


def smith_normal_form(m: IntMatrix) -> SnfResult:
    """
    Invariant factors of an integer matrix.

    For square nonsingular input the determinant D is computed first; a
    unimodular matrix short-circuits to all ones, otherwise the Hermite form
    modulo D keeps entries below D before the Smith reduction.

    Args:
        m: Integer matrix

    Returns:
        SnfResult with the divisor chain of m
    """
    if m.rows == 0 or m.cols == 0:
        return SnfResult(())

    dm = m.to_domain()
    if m.is_square():
        det = abs(int(dm.det()))
        if det == 1:
            return SnfResult((1,) * m.rows)
        if det != 0:
            logger.debug(f"SNF of {m.rows}x{m.cols} matrix via HNF modulo {det}")
            w = hermite_normal_form(dm.transpose(), D=ZZ(det))
            factors = [int(x) for x in invariant_factors(w)]
            return SnfResult(_divisor_chain(factors))

    factors = [int(x) for x in invariant_factors(dm)]
    return SnfResult(_divisor_chain(factors))


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of row vectors given as integer bitmasks."""
    pivots = {}
    rank = 0
    for v in rows:
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                rank += 1
                break
    return rank


def rows_to_bitmasks(m: IntMatrix) -> List[int]:
    """Reduce each row modulo 2 and pack it as a bitmask (bit j = column j)."""
    masks = []
    for i in range(m.rows):
        v = 0
        for j, x in enumerate(m.row(i)):
            if x & 1:
                v |= 1 << j
        masks.append(v)
    return masks


def rank_mod2(m: IntMatrix) -> int:
    """Rank of the matrix reduced modulo 2."""
    return gf2_rank(rows_to_bitmasks(m))


def hnf_span(rows: IntMatrix, modulus: Optional[int] = None) -> IntMatrix:
    """
    Row-style Hermite basis of the integer row span.

    The returned basis is lower triangular when the span has full rank:
    basis row j has its pivot in column j and no entries to the right.

    Args:
        rows: Generating vectors as matrix rows
        modulus: Optional positive multiple of the span's determinant; only
            valid when the span has full rank in the ambient space

    Returns:
        Canonical basis rows of the span (empty when rows span 0)
    """
    if rows.rows == 0 or rows.content() == 0:
        return IntMatrix(0, rows.cols, ())

    a = rows.to_domain().transpose()
    if modulus is None and rows.is_square():
        det = abs(int(a.det()))
        if det:
            modulus = det
    if modulus is not None and rows.rows >= rows.cols:
        w = hermite_normal_form(a, D=ZZ(modulus), check_rank=True)
    else:
        w = hermite_normal_form(a)
    return IntMatrix.from_domain(w.transpose())


def rational_matrix(m: IntMatrix) -> List[List[Fraction]]:
    return [[Fraction(x) for x in m.row(i)] for i in range(m.rows)]


def rational_inverse(m: IntMatrix) -> List[List[Fraction]]:
    """
    Exact inverse of a square integer matrix.

    Raises:
        SingularMatrix: If the determinant is zero
    """
    if not m.is_square():
        raise InvalidParameter(f"Inverse of non-square {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return []
    q = m.to_domain().convert_to(QQ)
    if q.det() == 0:
        raise SingularMatrix(f"Matrix of size {m.rows} is singular")
    inv = q.inv()
    return [[Fraction(int(x.numerator), int(x.denominator)) for x in row] for row in inv.to_list()]


def integer_inverse(m: IntMatrix) -> Tuple[IntMatrix, int]:
    """Return (N, den) with m^-1 = N / den and den > 0 minimal."""
    inv = rational_inverse(m)
    den = 1
    for row in inv:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    num = IntMatrix.from_rows([[int(x * den) for x in row] for row in inv], cols=m.cols)
    return num, den


def rational_rows_to_scaled(rows: Sequence[Sequence[Fraction]]) -> Tuple[List[List[int]], int]:
    """Clear denominators: return integer rows and the common denominator."""
    den = 1
    for r in rows:
        for x in r:
            x = Fraction(x)
            den = den * x.denominator // gcd(den, x.denominator)
    return [[int(Fraction(x) * den) for x in r] for r in rows], den


def rational_matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [
        [sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(cols)]
        for i in range(len(a))
    ]


__all__ = [
    "ExactRational",
    "IntMatrix",
    "SnfResult",
    "determinant",
    "smith_normal_form",
    "gf2_rank",
    "rows_to_bitmasks",
    "rank_mod2",
    "hnf_span",
    "rational_matrix",
    "rational_inverse",
    "integer_inverse",
    "rational_rows_to_scaled",
    "rational_matmul",
]

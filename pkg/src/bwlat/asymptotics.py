"""
Exact counting formulas: the Siegel mass of even unimodular lattices,
dominant terms of logarithms, the Ypsilanti lower-bound coefficient, the
Minkowski bound on finite subgroups of GL(n, Q) and orders of orthogonal
groups over GF(q).

All values are exact rationals or integers; floats appear only when a
table is rendered.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple
import logging
import math

import sympy

from .config import MAX_BERNOULLI_INDEX, MAX_MASS_DIMENSION, MAX_MINKOWSKI_DIMENSION
from .errors import InvalidDimension, InvalidParameter, OutOfRange

# Set up logging
logger = logging.getLogger(__name__)

TABLE_DIGITS = 10
TABLE_ROWS = tuple(range(1, 11))


@lru_cache(maxsize=None)
def bernoulli_classical(m: int) -> Fraction:
    """Classical Bernoulli number B_m (B_2 = 1/6, B_4 = -1/30)."""
    if m < 0 or m > 2 * MAX_BERNOULLI_INDEX:
        raise InvalidParameter(f"Bernoulli index {m} outside 0..{2 * MAX_BERNOULLI_INDEX}")
    b = sympy.bernoulli(m)
    return Fraction(int(b.p), int(b.q))


def bernoulli(j: int) -> Fraction:
    """
    Bernoulli number in Serre's convention: B_j = |B_2j| (B_1 = 1/6, B_2 = 1/30).

    Args:
        j: Index, 1 <= j <= MAX_BERNOULLI_INDEX

    Raises:
        InvalidParameter: If j is out of range
    """
    if j < 1 or j > MAX_BERNOULLI_INDEX:
        raise InvalidParameter(f"Bernoulli index {j} outside 1..{MAX_BERNOULLI_INDEX}")
    return abs(bernoulli_classical(2 * j))


@dataclass(frozen=True)
class MassValue:
    n: int
    value: Fraction

    def __post_init__(self) -> None:
        if self.n % 8 or self.value <= 0:
            raise InvalidDimension(f"Mass values need n divisible by 8 and a positive value, got n={self.n}")

    @property
    def log10(self) -> float:
        return math.log10(self.value.numerator) - math.log10(self.value.denominator)

    def __str__(self) -> str:
        return str(self.value)


def mass(n: int) -> MassValue:
    """
    Mass of the genus of even unimodular lattices of rank n.

    mass(n) = B_2k / (8k) * prod_{j=1}^{4k-1} B_j / (4j), k = n / 8.

    Raises:
        InvalidDimension: If n is not a positive multiple of 8 up to MAX_MASS_DIMENSION
    """
    if n <= 0 or n % 8 or n > MAX_MASS_DIMENSION:
        raise InvalidDimension(f"Mass needs a positive multiple of 8 up to {MAX_MASS_DIMENSION}, got {n}")
    k = n // 8
    value = bernoulli(2 * k) / (8 * k)
    for j in range(1, 4 * k):
        value *= bernoulli(j) / (4 * j)
    logger.debug(f"mass({n}) has denominator of {value.denominator.bit_length()} bits")
    return MassValue(n, value)


def mass_table(ns: Iterable[int]) -> List[MassValue]:
    return [mass(n) for n in ns]


@dataclass(frozen=True)
class DominantTerm:
    """
    a0 * log2(x)^a1 * 2^(a2 x) * x^a3.

    Only the shape and the leading coefficient are recorded; two terms of
    the same shape compare by coefficient.
    """

    a0: Fraction
    a1: int
    a2: Fraction
    a3: int

    @property
    def shape(self) -> Tuple[int, Fraction, int]:
        return (self.a1, self.a2, self.a3)

    def ratio(self, other: "DominantTerm") -> Fraction:
        if self.shape != other.shape:
            raise InvalidParameter(f"Dominant terms of shapes {self.shape} and {other.shape} do not compare")
        return Fraction(self.a0) / Fraction(other.a0)

    def __str__(self) -> str:
        parts = [str(self.a0)]
        if self.a1:
            parts.append("log2(x)" if self.a1 == 1 else f"log2(x)^{self.a1}")
        if self.a2:
            parts.append(f"2^({self.a2} x)")
        if self.a3:
            parts.append("x" if self.a3 == 1 else f"x^{self.a3}")
        return " * ".join(parts)


def upsilon(q: Fraction) -> Fraction:
    """
    upsilon(q) = 2 - 2q + 3/2 q^2.

    Raises:
        OutOfRange: If q is not in (0, 1/2]
    """
    q = Fraction(q)
    if not 0 < q <= Fraction(1, 2):
        raise OutOfRange(f"q must lie in (0, 1/2], got {q}")
    return 2 - 2 * q + Fraction(3, 2) * q * q


def dtl_mass(n: int = 0) -> DominantTerm:
    """DTL of mass(n): 1/4 log2(n) n^2."""
    return DominantTerm(Fraction(1, 4), 1, Fraction(0), 2)


def dtl_upsilon_lower(d: int, j: int) -> DominantTerm:
    """Lower bound for the DTL of the number of Ypsilanti j-cousins of rank n = 2^d."""
    if d < 1 or j < 1:
        raise InvalidParameter(f"Need d >= 1 and j >= 1, got d={d}, j={j}")
    return DominantTerm(upsilon(Fraction(1, 2 ** j)) / 16, 1, Fraction(0), 2)


def dtl_minkowski(n: int = 0) -> DominantTerm:
    """DTL of the Minkowski bound f(n): n log2(n). Displayed only."""
    return DominantTerm(Fraction(1), 1, Fraction(0), 1)


def dtl_stabilizer(a: int, b: int) -> Fraction:
    """1/2 a(3a - 1) + 2(b - a)b."""
    if not 0 <= a <= b:
        raise InvalidParameter(f"Need 0 <= a <= b, got a={a}, b={b}")
    return Fraction(a * (3 * a - 1), 2) + 2 * (b - a) * b


def arbitrary_dimension_coefficient(j: int) -> Fraction:
    """
    Supremum of the constants c reached by j in arbitrary dimension:
    any c with 64c < 2 - q + 3/2 q^2, q = 2^-j.
    """
    if j < 1:
        raise InvalidParameter(f"j must be positive, got {j}")
    q = Fraction(1, 2 ** j)
    return (2 - q + Fraction(3, 2) * q * q) / 64


def minimal_j_for_coefficient(c: Fraction, max_j: int = 64) -> int:
    """Smallest j with 2 - q + 3/2 q^2 > 64c.

    Raises:
        OutOfRange: If c is not in [0, 1/32)
    """
    c = Fraction(c)
    if not 0 <= c < Fraction(1, 32):
        raise OutOfRange(f"c must lie in [0, 1/32), got {c}")
    for j in range(1, max_j + 1):
        if arbitrary_dimension_coefficient(j) > c:
            return j
    raise OutOfRange(f"No j <= {max_j} reaches c = {c}")


def minkowski_exponent(n: int, q: int) -> int:
    """A(n, q) = sum_{i >= 0} floor(n / (q^i (q - 1)))."""
    total = 0
    step = q - 1
    while step <= n:
        total += n // step
        step *= q
    return total


def minkowski_bound(n: int) -> int:
    """
    f(n) = prod over primes q <= n + 1 of q^A(n, q); every finite subgroup
    of GL(n, Q) has order dividing f(n).

    Raises:
        InvalidParameter: If n is outside 1..MAX_MINKOWSKI_DIMENSION
    """
    if n < 1 or n > MAX_MINKOWSKI_DIMENSION:
        raise InvalidParameter(f"n must lie in 1..{MAX_MINKOWSKI_DIMENSION}, got {n}")
    out = 1
    for q in sympy.primerange(2, n + 2):
        out *= int(q) ** minkowski_exponent(n, int(q))
    return out


def omega_plus_order(n: int, q: int) -> int:
    """
    |Omega^+(2n, q)| = q^(n(n-1)) (q^n - 1) prod_{i=1}^{n-1} (q^(2i) - 1) for q a power of 2.

    The full isometry group O^+(2n, q) has twice this order.
    """
    if n < 1:
        raise InvalidParameter(f"n must be positive, got {n}")
    if q < 2 or len(sympy.factorint(q)) != 1:
        raise InvalidParameter(f"q must be a prime power, got {q}")
    out = q ** (n * (n - 1)) * (q ** n - 1)
    for i in range(1, n):
        out *= q ** (2 * i) - 1
    return out


def render_decimal(x: Fraction, digits: int = TABLE_DIGITS) -> str:
    """x to `digits` significant digits, half up, without a leading zero (".5000000000")."""
    x = Fraction(x)
    if x == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(x.numerator) / Decimal(x.denominator)
        step = Decimal(1).scaleb(d.adjusted() - digits + 1)
        text = format(d.quantize(step, rounding=ROUND_HALF_UP), "f")
    if text.startswith("0."):
        text = text[1:]
    return text


def upsilon_table(js: Sequence[int] = TABLE_ROWS) -> List[Tuple[int, Fraction, Fraction, Fraction]]:
    """Rows (j, q, upsilon(q), ratio of the lower bound to DTL(mass))."""
    rows = []
    for j in js:
        q = Fraction(1, 2 ** j)
        ratio = dtl_upsilon_lower(1, j).ratio(dtl_mass())
        rows.append((j, q, upsilon(q), ratio))
    return rows


def render_table(rows=None) -> str:
    if rows is None:
        rows = upsilon_table()
    lines = ["j q upsilon(q) ratio"]
    for j, q, u, ratio in rows:
        lines.append(f"{j} {render_decimal(q)} {render_decimal(u)} {render_decimal(ratio)}")
    return "\n".join(lines)


__all__ = [
    "DominantTerm",
    "MassValue",
    "bernoulli",
    "bernoulli_classical",
    "mass",
    "mass_table",
    "upsilon",
    "dtl_mass",
    "dtl_upsilon_lower",
    "dtl_minkowski",
    "dtl_stabilizer",
    "arbitrary_dimension_coefficient",
    "minimal_j_for_coefficient",
    "minkowski_exponent",
    "minkowski_bound",
    "omega_plus_order",
    "render_decimal",
    "upsilon_table",
    "render_table",
]

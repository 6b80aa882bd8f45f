"""
Binary linear codes and affine subspaces of F_2^d.

Codewords are Python integers used as bit vectors: bit i is coordinate i.
Exhaustive enumeration is the minimum-weight oracle, so dimensions are
capped (see config.MAX_EXHAUSTIVE_CODE_DIM).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple
import logging

import numpy as np

from .config import MAX_EXHAUSTIVE_CODE_DIM
from .errors import InvalidParameter, TooLarge

# Set up logging
logger = logging.getLogger(__name__)

# Popcount lookup for uint8 views of uint64 codeword arrays
_POPCOUNT8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


def weight(v: int) -> int:
    return bin(v).count("1")


def parity(v: int) -> int:
    return weight(v) & 1


def reduced_basis(vectors: Iterable[int]) -> Tuple[int, ...]:
    """
    Reduced row echelon basis of the span of the given bit vectors.

    The pivot of a row is its lowest set bit; every pivot column is zero in
    all other rows. The result is unique for a given span and sorted by
    pivot.
    """
    rows: List[int] = []
    for v in vectors:
        for r in rows:
            low = r & -r
            if v & low:
                v ^= r
        if v:
            low = v & -v
            rows = [r ^ v if r & low else r for r in rows]
            rows.append(v)
    return tuple(sorted(rows, key=lambda r: r & -r))


def pivots(basis: Sequence[int]) -> Tuple[int, ...]:
    return tuple((r & -r).bit_length() - 1 for r in basis)


def nullspace(rows: Sequence[int], n: int) -> Tuple[int, ...]:
    """Basis of {v in F_2^n : v . r = 0 for every r in rows}."""
    basis = reduced_basis(rows)
    piv = pivots(basis)
    piv_set = set(piv)
    out = []
    for free in range(n):
        if free in piv_set:
            continue
        v = 1 << free
        for p, r in zip(piv, basis):
            if (r >> free) & 1:
                v |= 1 << p
        out.append(v)
    return reduced_basis(out)


@dataclass(frozen=True)
class BinaryCode:
    """Binary linear code of a given length, stored by a reduced generator basis."""

    length: int
    generators: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.length < 0:
            raise InvalidParameter(f"Negative code length {self.length}")
        basis = reduced_basis(self.generators)
        if len(basis) != len(self.generators):
            raise InvalidParameter("Generators of a BinaryCode must be linearly independent")
        for g in self.generators:
            if g >> self.length:
                raise InvalidParameter(f"Generator {g:b} longer than code length {self.length}")
        object.__setattr__(self, "generators", basis)

    @classmethod
    def span(cls, length: int, vectors: Iterable[int]) -> "BinaryCode":
        return cls(length, reduced_basis(vectors))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BinaryCode":
        if not rows:
            raise InvalidParameter("Need at least one row to infer the code length")
        n = len(rows[0])
        return cls.span(n, (bits_from_string(r) for r in rows))

    @classmethod
    def full(cls, length: int) -> "BinaryCode":
        return cls(length, tuple(1 << i for i in range(length)))

    @classmethod
    def zero(cls, length: int) -> "BinaryCode":
        return cls(length, ())

    @property
    def dimension(self) -> int:
        return len(self.generators)

    def to_strings(self) -> List[str]:
        return [bits_to_string(g, self.length) for g in self.generators]

    def contains(self, v: int) -> bool:
        for r in self.generators:
            if v & (r & -r):
                v ^= r
        return v == 0

    def contains_code(self, other: "BinaryCode") -> bool:
        return other.length == self.length and all(self.contains(g) for g in other.generators)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryCode):
            return NotImplemented
        return self.length == other.length and self.generators == other.generators

    def __hash__(self) -> int:
        return hash((self.length, self.generators))

    def codewords(self) -> Iterator[int]:
        """All 2^k codewords in Gray-code order, starting at 0."""
        k = self.dimension
        if k > MAX_EXHAUSTIVE_CODE_DIM:
            raise TooLarge(f"Code dimension {k} exceeds exhaustive cap {MAX_EXHAUSTIVE_CODE_DIM}")
        word = 0
        yield word
        for i in range(1, 1 << k):
            bit = (i & -i).bit_length() - 1
            word ^= self.generators[bit]
            yield word

    def codeword_array(self) -> np.ndarray:
        """All codewords as a uint64 array (length must be at most 64)."""
        if self.length > 64:
            raise TooLarge(f"Code length {self.length} does not fit a 64-bit word")
        if self.dimension > MAX_EXHAUSTIVE_CODE_DIM:
            raise TooLarge(f"Code dimension {self.dimension} exceeds exhaustive cap")
        words = np.zeros(1, dtype=np.uint64)
        for g in self.generators:
            words = np.concatenate([words, words ^ np.uint64(g)])
        return words

    def weight_distribution(self) -> Dict[int, int]:
        if self.length <= 64:
            words = self.codeword_array()
            weights = _POPCOUNT8[words.view(np.uint8)].reshape(-1, 8).sum(axis=1)
            values, counts = np.unique(weights, return_counts=True)
            return {int(w): int(c) for w, c in zip(values, counts)}
        dist: Dict[int, int] = {}
        for w in self.codewords():
            dist[weight(w)] = dist.get(weight(w), 0) + 1
        return dist

    def min_weight(self) -> Optional[int]:
        dist = self.weight_distribution()
        nonzero = [w for w in dist if w > 0]
        return min(nonzero) if nonzero else None

    def direct_sum(self, other: "BinaryCode") -> "BinaryCode":
        shifted = [g << self.length for g in other.generators]
        return BinaryCode.span(self.length + other.length, list(self.generators) + shifted)

    def extend(self) -> "BinaryCode":
        """Append an overall parity bit."""
        return BinaryCode.span(
            self.length + 1, (g | (parity(g) << self.length) for g in self.generators)
        )


def bits_from_string(s: str) -> int:
    s = s.strip()
    if any(ch not in "01" for ch in s):
        raise InvalidParameter(f"Bit string {s!r} has characters outside 0/1")
    return sum(1 << i for i, ch in enumerate(s) if ch == "1")


def bits_to_string(v: int, n: int) -> str:
    return "".join("1" if (v >> i) & 1 else "0" for i in range(n))


@dataclass(frozen=True)
class CodeProperties:
    min_weight: Optional[int]
    is_doubly_even: bool
    is_self_orthogonal: bool
    is_indecomposable: bool
    decomposition_partition: Tuple[FrozenSet[int], ...]


def _check_r(r: int) -> None:
    if r < 2:
        raise InvalidParameter(f"r must be at least 2, got {r}")


def simplex(r: int) -> BinaryCode:
    """Simplex code: row space of the Hamming parity-check matrix."""
    _check_r(r)
    n = (1 << r) - 1
    # column c (0-based) of the parity-check matrix is the binary form of c+1
    rows = []
    for i in range(r):
        rows.append(sum(1 << c for c in range(n) if ((c + 1) >> i) & 1))
    return BinaryCode.span(n, rows)


def hamming(r: int) -> BinaryCode:
    """Hamming code [2^r-1, 2^r-1-r, 3]."""
    _check_r(r)
    n = (1 << r) - 1
    parity_check = simplex(r)
    return BinaryCode(n, nullspace(parity_check.generators, n))


def extended_hamming(r: int) -> BinaryCode:
    """Extended Hamming code [2^r, 2^r-r-1, 4]."""
    return hamming(r).extend()


def annihilator(c: BinaryCode) -> BinaryCode:
    """Dual code under the standard GF(2) pairing."""
    return BinaryCode(c.length, nullspace(c.generators, c.length))


def extended_simplex(r: int) -> BinaryCode:
    """Extended simplex code [2^r, r+1, 2^(r-1)], the annihilator of the extended Hamming code."""
    return annihilator(extended_hamming(r))


def decomposition_partition(c: BinaryCode) -> Tuple[FrozenSet[int], ...]:
    """
    Finest coordinate partition along which the code splits as a direct sum.

    Rows of the reduced echelon basis never straddle two summands, so the
    blocks are the connected components of rows under support overlap.
    Coordinates outside every support form singleton blocks.
    """
    components: List[Tuple[int, FrozenSet[int]]] = []
    for g in c.generators:
        support = g
        merged = []
        for mask, coords in components:
            if mask & support:
                support |= mask
            else:
                merged.append((mask, coords))
        coords = frozenset(i for i in range(c.length) if (support >> i) & 1)
        merged.append((support, coords))
        components = merged
    used = 0
    for mask, _ in components:
        used |= mask
    blocks = [coords for _, coords in components]
    blocks.extend(frozenset([i]) for i in range(c.length) if not (used >> i) & 1)
    return tuple(sorted(blocks, key=min))


def is_self_orthogonal(c: BinaryCode) -> bool:
    gens = c.generators
    return all(parity(a & b) == 0 for a in gens for b in gens)


def is_doubly_even(c: BinaryCode) -> bool:
    if c.dimension <= MAX_EXHAUSTIVE_CODE_DIM and c.length <= 64:
        return all(w % 4 == 0 for w in c.weight_distribution())
    # a self-orthogonal code spanned by doubly even words is doubly even
    return is_self_orthogonal(c) and all(weight(g) % 4 == 0 for g in c.generators)


def code_properties(c: BinaryCode) -> CodeProperties:
    """
    Minimum weight, doubly-evenness, self-orthogonality and decomposition.

    Raises:
        TooLarge: If the dimension is beyond exhaustive enumeration
    """
    if c.dimension > MAX_EXHAUSTIVE_CODE_DIM:
        raise TooLarge(f"Code dimension {c.dimension} exceeds exhaustive cap {MAX_EXHAUSTIVE_CODE_DIM}")
    partition = decomposition_partition(c)
    return CodeProperties(
        min_weight=c.min_weight(),
        is_doubly_even=is_doubly_even(c),
        is_self_orthogonal=is_self_orthogonal(c),
        is_indecomposable=c.dimension > 0 and len(partition) == 1,
        decomposition_partition=partition,
    )


def is_admissible_gluing_code(c: BinaryCode) -> bool:
    """Doubly even, self-orthogonal and indecomposable."""
    return (
        c.dimension > 0
        and is_self_orthogonal(c)
        and is_doubly_even(c)
        and len(decomposition_partition(c)) == 1
    )


@dataclass(frozen=True)
class AffineSubspace:
    """basepoint + span(direction_basis) inside F_2^ambient_dim."""

    ambient_dim: int
    basepoint: int
    direction_basis: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(reduced_basis(self.direction_basis)) != len(self.direction_basis):
            raise InvalidParameter("Direction vectors of an affine subspace must be independent")

    @property
    def dimension(self) -> int:
        return len(self.direction_basis)

    def points(self) -> List[int]:
        """Points ordered by local coordinate c: point(c) = base + sum c_i u_i."""
        pts = [self.basepoint]
        for u in self.direction_basis:
            pts = pts + [p ^ u for p in pts]
        return pts

    def contains(self, x: int) -> bool:
        v = x ^ self.basepoint
        for r in reduced_basis(self.direction_basis):
            if v & (r & -r):
                v ^= r
        return v == 0

    def indicator(self) -> int:
        return sum(1 << p for p in self.points())


def linear_subspaces(d: int, a: int) -> Iterator[Tuple[int, ...]]:
    """Every a-dimensional subspace of F_2^d once, as its reduced echelon basis."""
    if a == 0:
        yield ()
        return
    for piv in combinations(range(d), a):
        # free positions of row i: columns above its pivot that are not pivots
        free = [[c for c in range(piv[i] + 1, d) if c not in piv] for i in range(a)]
        total = sum(len(f) for f in free)
        for fill in range(1 << total):
            rows = []
            k = 0
            for i in range(a):
                row = 1 << piv[i]
                for c in free[i]:
                    if (fill >> k) & 1:
                        row |= 1 << c
                    k += 1
                rows.append(row)
            yield tuple(rows)


def affine_subspaces(d: int, a: int) -> Iterator[AffineSubspace]:
    """Every a-dimensional affine subspace of F_2^d exactly once."""
    if a < 0 or a > d:
        return
    for basis in linear_subspaces(d, a):
        piv_mask = sum(r & -r for r in basis)
        others = [c for c in range(d) if not (piv_mask >> c) & 1]
        for sel in range(1 << len(others)):
            base = sum(1 << c for j, c in enumerate(others) if (sel >> j) & 1)
            yield AffineSubspace(d, base, basis)


def count_affine_subspaces(d: int, a: int) -> int:
    if a < 0 or a > d:
        return 0
    num, den = 1, 1
    for i in range(a):
        num *= (1 << (d - i)) - 1
        den *= (1 << (a - i)) - 1
    return (num // den) << (d - a)


def code_from_affine_codim2(d: int) -> BinaryCode:
    """
    Code on F_2^d spanned by indicators of codimension-2 affine subspaces.

    Coordinate x of the code is the point x of F_2^d read as an integer.
    """
    if d < 2:
        raise InvalidParameter(f"d must be at least 2, got {d}")
    n = 1 << d
    vectors = []
    for a, b in combinations(range(1, n), 2):
        for alpha in (0, 1):
            for beta in (0, 1):
                vectors.append(
                    sum(1 << x for x in range(n) if parity(a & x) == alpha and parity(b & x) == beta)
                )
    return BinaryCode.span(n, vectors)


_SIGN_CODES: Dict[int, BinaryCode] = {}


def sign_code(a: int) -> BinaryCode:
    """
    Sign code C_A of an a-dimensional affine subspace in local coordinates.

    Intersections of A with codimension-2 flats span the full space for
    a <= 1 and the codimension-2 code of A itself otherwise.
    """
    if a not in _SIGN_CODES:
        _SIGN_CODES[a] = BinaryCode.full(1 << a) if a < 2 else code_from_affine_codim2(a)
    return _SIGN_CODES[a]


def indecomposable_doubly_even(t: int) -> BinaryCode:
    """
    Indecomposable doubly even self-orthogonal code of length 2^t.

    For t=3 this is the extended Hamming code. For larger t, 2^(t-3) blocks of
    [8,4,4] codes are glued by v, the sum of the weight-2 vectors on the
    first two coordinates of each block: keep the words of the block sum
    orthogonal to v and add v.
    """
    if t < 3:
        raise InvalidParameter(f"t must be at least 3, got {t}")
    h = extended_hamming(3)
    if t == 3:
        return h
    blocks = 1 << (t - 3)
    gens = [g << (8 * i) for i in range(blocks) for g in h.generators]
    v = sum(0b11 << (8 * i) for i in range(blocks))
    odd = [g for g in gens if parity(g & v)]
    pivot = odd[0]
    kept = [g ^ pivot if parity(g & v) else g for g in gens if g != pivot]
    return BinaryCode.span(8 * blocks, kept + [v])


def is_affine_subspace(points: Iterable[int]) -> bool:
    """True iff the point set equals p + span of its differences."""
    pts = set(points)
    if not pts:
        return False
    size = len(pts)
    if size & (size - 1):
        return False
    p0 = min(pts)
    basis = reduced_basis(p ^ p0 for p in pts)
    return (1 << len(basis)) == size


def meets_hyperplanes_evenly(points: Iterable[int], d: int) -> bool:
    """Every affine hyperplane of F_2^d meets the set in 0, |S| or |S|/2 points."""
    pts = list(set(points))
    size = len(pts)
    allowed = {0, size, size // 2} if size % 2 == 0 else {0, size}
    for a in range(1, 1 << d):
        inside = sum(1 for p in pts if parity(a & p) == 0)
        if inside not in allowed or (size - inside) not in allowed:
            return False
    return True


__all__ = [
    "BinaryCode",
    "AffineSubspace",
    "CodeProperties",
    "weight",
    "parity",
    "reduced_basis",
    "pivots",
    "nullspace",
    "bits_from_string",
    "bits_to_string",
    "hamming",
    "extended_hamming",
    "simplex",
    "extended_simplex",
    "annihilator",
    "code_properties",
    "decomposition_partition",
    "is_self_orthogonal",
    "is_doubly_even",
    "is_admissible_gluing_code",
    "linear_subspaces",
    "affine_subspaces",
    "count_affine_subspaces",
    "code_from_affine_codim2",
    "sign_code",
    "indecomposable_doubly_even",
    "is_affine_subspace",
    "meets_hyperplanes_evenly",
]

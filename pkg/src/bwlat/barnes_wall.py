"""
Barnes-Wall lattices by the recursive doubling construction.

Level d lives in Z^(2^d) scaled by a power of two. The fourvolution F
rotates consecutive coordinate pairs, (a, b) -> (-b, a), at every level, so
the twist L[k] = L(1-F)^k has a cheap pairwise implementation. Level d is
built from the previous level M with r = duality level of M as

    L_d = {(a, b) : a, b in M[-r], a - b in M[1-r]},

with basis rows (c, c) for c in a basis of M[-r] and (0, b) for b in a
basis of M[1-r].
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from .config import MAX_BW_LEVEL, MAX_LOWER_GROUP_LEVEL, get_max_rank
from .enumeration import certified_short_vectors
from .exact_algebra import IntMatrix, determinant
from .errors import (
    InvalidParameter,
    NoDualityLevel,
    NotAnIsometry,
    NotInvariant,
    ResourceCap,
    TooLarge,
)
from .lattice_core import (
    Involution,
    ScaledLattice,
    discriminant_invariants,
    dual_lattice,
    eigenlattice,
    intersect,
    lattice_sum,
    restrict_to_coordinates,
    same_lattice,
)

# Set up logging
logger = logging.getLogger(__name__)


def twist_rows(rows: np.ndarray, k: int, denom_exp: int) -> Tuple[np.ndarray, int]:
    """
    Apply (1-F)^k to integer row vectors given at denominator exponent denom_exp.

    Uses (1-F)^2 = -2F, so only one pairwise step is ever applied; the rest
    is a power-of-two rescaling. Returns the new rows and exponent.
    """
    a, b = divmod(k, 2)
    out = np.asarray(rows)
    e = denom_exp - a
    if e < 0:
        out = out * (1 << (-e))
        e = 0
    if b:
        x = out[..., 0::2]
        y = out[..., 1::2]
        new = np.empty_like(out)
        new[..., 0::2] = x + y
        new[..., 1::2] = y - x
        out = new
    return out, e


def _twist_lattice(l: ScaledLattice, k: int) -> ScaledLattice:
    arr, e = twist_rows(l.basis.to_numpy(object), k, l.denom_exp)
    return ScaledLattice(IntMatrix.from_numpy(arr), e).normalized()


@dataclass(frozen=True)
class Fourvolution:
    """Isometry f with f^2 = -1, acting on row vectors from the right."""

    matrix: IntMatrix

    def __post_init__(self) -> None:
        m = self.matrix
        if not m.is_square():
            raise InvalidParameter("Fourvolution matrix must be square")
        a = m.to_numpy(np.int64)
        ident = np.eye(m.rows, dtype=np.int64)
        if not np.array_equal(a @ a, -ident):
            raise InvalidParameter("Matrix does not square to -1")
        if not np.array_equal(a @ a.T, ident):
            raise NotAnIsometry("Fourvolution matrix is not orthogonal")

    @classmethod
    def standard(cls, n: int) -> "Fourvolution":
        """Rotation (a, b) -> (-b, a) on each consecutive coordinate pair."""
        if n % 2:
            raise InvalidParameter(f"Standard fourvolution needs even dimension, got {n}")
        entries = [0] * (n * n)
        for i in range(0, n, 2):
            entries[i * n + i + 1] = 1
            entries[(i + 1) * n + i] = -1
        return cls(IntMatrix(n, n, tuple(entries)))

    @cached_property
    def is_standard(self) -> bool:
        return self.matrix == Fourvolution.standard(self.matrix.rows).matrix

    def one_minus(self) -> IntMatrix:
        n = self.matrix.rows
        return IntMatrix(
            n, n, tuple((1 if i == j else 0) - self.matrix[i, j] for i in range(n) for j in range(n))
        )

    def preserves(self, l: ScaledLattice) -> bool:
        return same_lattice(l.transform(self.matrix), l)


def sultry_twist(l, f: Optional[Fourvolution], k: int) -> ScaledLattice:
    """
    The twist L[k] = L(1-f)^k, using (1+f)/2 as the inverse of 1-f for k < 0.

    Args:
        l: BWLattice or ScaledLattice
        f: Fourvolution preserving l (None means the lattice's own)
        k: Twist exponent

    Raises:
        NotInvariant: If f does not preserve l
    """
    if isinstance(l, BWLattice):
        if f is None or f.matrix == l.fourvolution.matrix:
            return l.twist(k)
        l = l.lattice
    if f is None:
        raise InvalidParameter("A fourvolution is required for a plain lattice")
    if not f.preserves(l):
        raise NotInvariant("Fourvolution does not preserve the lattice")
    if f.is_standard:
        return _twist_lattice(l, k)
    a, b = divmod(k, 2)
    out = l.scaled(a)
    if b:
        out = out.transform(f.one_minus())
    return out


def _block_diag(blocks: Sequence[IntMatrix]) -> IntMatrix:
    n = sum(b.rows for b in blocks)
    entries = [0] * (n * n)
    off = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                entries[(off + i) * n + off + j] = b[i, j]
        off += b.rows
    return IntMatrix(n, n, tuple(entries))


def _signed_identity(n: int, first: int, second: int) -> IntMatrix:
    half = n // 2
    return IntMatrix.diagonal([first] * half + [second] * half)


def _half_swap(n: int, sign: int) -> IntMatrix:
    """(x, y) -> (sign*y, sign*x)."""
    half = n // 2
    entries = [0] * (n * n)
    for i in range(half):
        entries[i * n + half + i] = sign
        entries[(half + i) * n + i] = sign
    return IntMatrix(n, n, tuple(entries))


@dataclass(frozen=True, eq=False)
class BWLattice:
    """A Barnes-Wall lattice together with its recursive construction data."""

    d: int
    lattice: ScaledLattice
    duality_level: int
    fourvolution: Fourvolution
    lower_generators: Tuple[IntMatrix, ...]
    child: Optional["BWLattice"] = None
    _twists: Dict[int, ScaledLattice] = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def construction_level(self) -> int:
        """The r used in the doubling step: the duality level of the child."""
        return self.child.duality_level if self.child is not None else 0

    @property
    def minimum(self) -> int:
        return 1 << (self.d // 2)

    def twist(self, k: int) -> ScaledLattice:
        if k == 0:
            return self.lattice
        if k not in self._twists:
            self._twists[k] = _twist_lattice(self.lattice, k)
        return self._twists[k]

    # Involutions of the doubling step

    def _involution(self, matrix: IntMatrix) -> Involution:
        if self.child is None:
            raise InvalidParameter("The base level has no doubling involutions")
        return Involution(matrix)

    @cached_property
    def t1(self) -> Involution:
        return self._involution(_signed_identity(self.rank, -1, 1))

    @cached_property
    def t2(self) -> Involution:
        return self._involution(_signed_identity(self.rank, 1, -1))

    @cached_property
    def t12(self) -> Involution:
        return self._involution(_half_swap(self.rank, -1))

    @cached_property
    def t12_prime(self) -> Involution:
        return self._involution(_half_swap(self.rank, 1))

    # Pieces of the doubling step, embedded in the full ambient space

    def piece(self, name: str, k: int) -> ScaledLattice:
        """
        One of the constituents M1[k], M2[k], M12[k] (diagonal) or M12'[k]
        (antidiagonal) of the doubling step.
        """
        if self.child is None:
            raise InvalidParameter("The base level has no constituents")
        m = self.child.twist(k)
        n = m.ambient_dim
        rows = m.basis.to_rows()
        if name == "M1":
            out = [r + [0] * n for r in rows]
        elif name == "M2":
            out = [[0] * n + r for r in rows]
        elif name == "M12":
            out = [r + r for r in rows]
        elif name == "M12'":
            out = [r + [-x for x in r] for r in rows]
        else:
            raise InvalidParameter(f"Unknown constituent {name!r}")
        return ScaledLattice(IntMatrix.from_rows(out, cols=2 * n), m.denom_exp)


def _base_level() -> BWLattice:
    swap = IntMatrix.from_rows([[0, 1], [1, 0]])
    flip = IntMatrix.diagonal([-1, 1])
    return BWLattice(
        d=1,
        lattice=ScaledLattice.standard(2),
        duality_level=0,
        fourvolution=Fourvolution.standard(2),
        lower_generators=(flip, swap),
    )


def check_bw_level(d: int) -> None:
    """
    Raises:
        InvalidParameter: Below level 1
        ResourceCap: Above MAX_BW_LEVEL or the configured rank cap
    """
    if d < 1:
        raise InvalidParameter(f"Level must be at least 1, got {d}")
    if d > MAX_BW_LEVEL or (1 << d) > get_max_rank():
        raise ResourceCap(f"BW level {d} (rank {1 << d}) exceeds the configured cap")


def build_bw(d: int) -> BWLattice:
    """
    Build BW_d by repeated doubling from Z^2 with the rotation fourvolution.

    Args:
        d: Level (rank 2^d)

    Returns:
        BWLattice with its construction data

    Raises:
        ResourceCap: Above MAX_BW_LEVEL or the configured rank cap
    """
    check_bw_level(d)
    return _build_bw(d)


@lru_cache(maxsize=None)
def _build_bw(d: int) -> BWLattice:
    if d == 1:
        return _base_level()

    child = build_bw(d - 1)
    r = child.duality_level
    c = child.twist(-r)
    b = child.twist(1 - r)
    e = max(c.denom_exp, b.denom_exp)
    n = child.rank
    rows = [row + row for row in c.rows_at(e)]
    rows += [[0] * n + row for row in b.rows_at(e)]
    lattice = ScaledLattice(IntMatrix.from_rows(rows, cols=2 * n), e).normalized()

    generators = tuple(_block_diag([g, g]) for g in child.lower_generators)
    generators += (_signed_identity(2 * n, -1, 1), _half_swap(2 * n, 1))

    logger.info(f"Built BW level {d}: rank {2 * n}, denominator 2^{lattice.denom_exp}")
    return BWLattice(
        d=d,
        lattice=lattice,
        duality_level=(d + 1) % 2,
        fourvolution=Fourvolution.standard(2 * n),
        lower_generators=generators,
        child=child,
    )


def duality_level(l: BWLattice) -> int:
    """
    The r in {0, 1} with L* = L[-r].

    Raises:
        NoDualityLevel: If neither twist matches the dual
    """
    dual = dual_lattice(l.lattice)
    for r in (0, 1):
        if same_lattice(dual, l.twist(-r)):
            return r
    raise NoDualityLevel(f"Dual of BW level {l.d} is neither L nor L[-1]")


def minimal_vector_count(d: int) -> int:
    """Number of minimal vectors of BW_d: (2^d+2)(2^(d-1)+2)...(2+2), and 2 at d=0."""
    if d < 0:
        raise InvalidParameter(f"Level must be nonnegative, got {d}")
    if d == 0:
        return 2
    out = 1
    for i in range(1, d + 1):
        out *= (1 << i) + 2
    return out


def minimal_vector_type_counts(d: int) -> Tuple[int, int, int]:
    """
    Counts of minimal vectors of types 1, 2 and 3 at level d >= 2.

    Type 1 lies in M1[1-r], type 2 in M2[1-r], and type 3 has both halves
    minimal in M[-r].
    """
    if d < 2:
        raise InvalidParameter(f"Type counts need d >= 2, got {d}")
    prev = minimal_vector_count(d - 1)
    return prev, prev, (1 << d) * prev


def classify_minimal_vectors(vectors: np.ndarray) -> Tuple[int, int, int]:
    """Type counts of minimal vectors by which half carries them."""
    arr = np.asarray(vectors)
    half = arr.shape[1] // 2
    first = np.any(arr[:, :half] != 0, axis=1)
    second = np.any(arr[:, half:] != 0, axis=1)
    return (
        int(np.sum(first & ~second)),
        int(np.sum(second & ~first)),
        int(np.sum(first & second)),
    )


@dataclass(frozen=True)
class GenerationReport:
    three_quarter: bool
    two_quarter: bool
    commutator_dense: bool

    @property
    def all_hold(self) -> bool:
        return self.three_quarter and self.two_quarter and self.commutator_dense


def _anchored_sum(parts: Sequence[ScaledLattice]) -> ScaledLattice:
    """
    Sum of lattices whose first two parts together have full rank.

    The stacked bases of the first two parts give a full-rank sublattice of
    the sum, so its determinant is a valid Hermite modulus.
    """
    a, b = parts[0], parts[1]
    e = max(a.denom_exp, b.denom_exp)
    rows = a.rows_at(e) + b.rows_at(e)
    n = a.ambient_dim
    if len(rows) == n:
        stacked = IntMatrix.from_rows(rows, cols=n)
        if determinant(stacked) != 0:
            anchor = ScaledLattice(stacked, e)
            return lattice_sum(anchor, *parts[2:]) if len(parts) > 2 else anchor.normalized()
    return lattice_sum(*parts)


def _image(l: ScaledLattice, matrix: IntMatrix) -> ScaledLattice:
    prod = l.basis @ matrix
    rows = [r for r in prod.to_rows() if any(r)]
    return ScaledLattice.from_generators(rows, l.denom_exp, ambient_dim=l.ambient_dim)


def _minus_identity(t: Involution, sign: int) -> IntMatrix:
    n = t.matrix.rows
    return IntMatrix(
        n, n, tuple(t.matrix[i, j] + (sign if i == j else 0) for i in range(n) for j in range(n))
    )


def generation_checks(l: BWLattice) -> GenerationReport:
    """
    Three-quarter generation, two-quarter generation and commutator density.

    three_quarter: any three of M1[1-r], M2[1-r], M12[-r], M12'[-r] span L.
    two_quarter: L+(t1) + L+(t12) = L.
    commutator_dense: L(t1-1) + L(t1+1) + L(t12-1) = L[1].
    """
    if l.child is None:
        raise InvalidParameter("Generation checks need a doubled level (d >= 2)")
    r = l.construction_level
    pieces = [
        l.piece("M1", 1 - r),
        l.piece("M2", 1 - r),
        l.piece("M12", -r),
        l.piece("M12'", -r),
    ]
    three = all(
        same_lattice(_anchored_sum([pieces[i] for i in subset]), l.lattice)
        for subset in combinations(range(4), 3)
    )

    plus1 = eigenlattice(l.lattice, l.t1, 1)
    plus12 = eigenlattice(l.lattice, l.t12, 1)
    two = same_lattice(_anchored_sum([plus1, plus12]), l.lattice)

    images = [
        _image(l.lattice, _minus_identity(l.t1, -1)),
        _image(l.lattice, _minus_identity(l.t1, 1)),
        _image(l.lattice, _minus_identity(l.t12, -1)),
    ]
    dense = same_lattice(_anchored_sum(images), l.twist(1))
    logger.info(f"Generation checks at level {l.d}: 3/4={three}, 2/4={two}, dense={dense}")
    return GenerationReport(three, two, dense)


def twist_compatibility(l: BWLattice, j: int) -> bool:
    """M_i[1-r] cap L[j] = M_i[1-r+j] for both halves."""
    if l.child is None:
        raise InvalidParameter("Twist compatibility needs a doubled level (d >= 2)")
    r = l.construction_level
    n = l.child.rank
    target = l.child.twist(1 - r + j)
    base = l.child.twist(1 - r)
    lj = l.twist(j)
    for coords in (range(n), range(n, 2 * n)):
        restricted = restrict_to_coordinates(lj, list(coords))
        if not same_lattice(intersect(base, restricted), target):
            return False
    return True


@dataclass(frozen=True)
class LowerGroupReport:
    order: int
    expected_order: int
    center_order: int
    squares_central: bool
    commutators_central: bool
    trivial_on_quotient: bool

    @property
    def is_extraspecial_like(self) -> bool:
        return (
            self.order == self.expected_order
            and self.center_order == 2
            and self.squares_central
            and self.commutators_central
        )


def lower_group_closure(l: BWLattice, cap: Optional[int] = None) -> LowerGroupReport:
    """
    Close the lower generators under multiplication and test the group shape.

    Raises:
        TooLarge: Beyond MAX_LOWER_GROUP_LEVEL or when the closure exceeds cap
    """
    if l.d > MAX_LOWER_GROUP_LEVEL:
        raise TooLarge(f"Lower group closure is capped at level {MAX_LOWER_GROUP_LEVEL}")
    expected = 1 << (1 + 2 * l.d)
    cap = cap if cap is not None else 4 * expected
    n = l.rank
    gens = [g.to_numpy(np.int64) for g in l.lower_generators]
    ident = np.eye(n, dtype=np.int64)
    minus = -ident

    seen = {ident.tobytes(): ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = g @ s
            key = h.tobytes()
            if key not in seen:
                seen[key] = h
                queue.append(h)
                if len(seen) > cap:
                    raise TooLarge(f"Lower group closure exceeded {cap} elements")
    elements = list(seen.values())
    logger.info(f"Lower group at level {l.d}: {len(elements)} elements")

    def central(x: np.ndarray) -> bool:
        return np.array_equal(x, ident) or np.array_equal(x, minus)

    center = [z for z in elements if all(np.array_equal(z @ s, s @ z) for s in gens)]
    squares = all(central(x @ x) for x in elements)
    commutators = all(
        central(a @ b @ a.T @ b.T)
        for a in gens
        for b in gens
    )

    basis = l.lattice.basis.to_numpy(object)
    oracle = l.twist(1).oracle
    trivial = True
    for s in gens:
        diff = basis.dot(s.astype(object)) - basis
        if not np.all(oracle.contains(diff, l.lattice.denom_exp)):
            trivial = False
            break

    return LowerGroupReport(
        order=len(elements),
        expected_order=expected,
        center_order=len(center),
        squares_central=squares,
        commutators_central=commutators,
        trivial_on_quotient=trivial,
    )


def satisfies_x_condition(l: ScaledLattice) -> bool:
    """Rank-4 recognition of D4: 24 roots, determinant 4, discriminant [2, 2]."""
    if l.rank != 4 or not l.is_even:
        return False
    roots = certified_short_vectors(l, 2)
    return (
        len(roots) == 24
        and l.determinant == 4
        and discriminant_invariants(l).invariant_factors == (2, 2)
    )


__all__ = [
    "Fourvolution",
    "BWLattice",
    "check_bw_level",
    "GenerationReport",
    "LowerGroupReport",
    "twist_rows",
    "sultry_twist",
    "build_bw",
    "duality_level",
    "minimal_vector_count",
    "minimal_vector_type_counts",
    "classify_minimal_vectors",
    "generation_checks",
    "twist_compatibility",
    "lower_group_closure",
    "satisfies_x_condition",
]

"""
Quadratic spaces over GF(2), their isometries and avoiding maps.

Vectors are integer bitmasks (bit i = coordinate i). Linear maps are tuples
of row bitmasks: row i is the image of basis vector i, so x maps to the XOR
of the rows selected by the bits of x.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple
import logging

import numpy as np

from .asymptotics import omega_plus_order
from .config import DEFAULT_SEED, MAX_AVOIDING_ATTEMPTS, MAX_SURVEY_B
from .errors import Exhausted, InvalidParameter, NotIsometry, TooLarge
from .exact_algebra import gf2_rank
from .gf2_codes import linear_subspaces, nullspace, parity, reduced_basis

# Set up logging
logger = logging.getLogger(__name__)

# Exhaustive vector scans are limited to this dimension
MAX_SCAN_DIM = 24

Matrix = Tuple[int, ...]


def apply(matrix: Sequence[int], x: int) -> int:
    out = 0
    i = 0
    while x:
        if x & 1:
            out ^= matrix[i]
        x >>= 1
        i += 1
    return out


def compose(a: Sequence[int], b: Sequence[int]) -> Matrix:
    """The map x -> apply(b, apply(a, x))."""
    return tuple(apply(b, r) for r in a)


def identity_map(n: int) -> Matrix:
    return tuple(1 << i for i in range(n))


def image_of_span(matrix: Sequence[int], basis: Sequence[int]) -> Tuple[int, ...]:
    return reduced_basis(apply(matrix, v) for v in basis)


def intersection_dim(a: Sequence[int], b: Sequence[int]) -> int:
    ra = gf2_rank(a)
    rb = gf2_rank(b)
    return ra + rb - gf2_rank(list(a) + list(b))


@dataclass(frozen=True)
class QuadraticSpaceF2:
    """
    Quadratic form on F_2^dim given by Q(e_i) and the polar form.

    polar[i] is the bitmask of j with beta(e_i, e_j) = 1; it is symmetric
    with zero diagonal.
    """

    dim: int
    q_basis: Tuple[int, ...]
    polar: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.q_basis) != self.dim or len(self.polar) != self.dim:
            raise InvalidParameter(f"Quadratic space of dimension {self.dim} has wrong data length")
        for i in range(self.dim):
            if (self.polar[i] >> i) & 1:
                raise InvalidParameter("Polar form must have zero diagonal")
            for j in range(self.dim):
                if ((self.polar[i] >> j) & 1) != ((self.polar[j] >> i) & 1):
                    raise InvalidParameter("Polar form must be symmetric")

    @classmethod
    def hyperbolic(cls, b: int) -> "QuadraticSpaceF2":
        """F_2^(2b) with Q(x) = sum x_(2i) x_(2i+1), the plus type normal form."""
        if b < 0:
            raise InvalidParameter(f"b must be nonnegative, got {b}")
        polar = tuple(1 << (i ^ 1) for i in range(2 * b))
        return cls(2 * b, (0,) * (2 * b), polar)

    def q(self, x: int) -> int:
        total = 0
        rest = x
        i = 0
        while rest:
            if rest & 1:
                total ^= self.q_basis[i]
                total ^= parity(self.polar[i] & x & ((1 << i) - 1))
            rest >>= 1
            i += 1
        return total

    def beta(self, x: int, y: int) -> int:
        out = 0
        i = 0
        while x:
            if x & 1:
                out ^= parity(self.polar[i] & y)
            x >>= 1
            i += 1
        return out

    @property
    def radical_dim(self) -> int:
        return self.dim - gf2_rank(self.polar)

    @property
    def is_nondegenerate(self) -> bool:
        return self.radical_dim == 0

    def perp(self, basis: Sequence[int]) -> Tuple[int, ...]:
        """Basis of the orthogonal complement of span(basis) under beta."""
        constraints = [self._polar_image(v) for v in basis]
        return nullspace(constraints, self.dim)

    def _polar_image(self, v: int) -> int:
        out = 0
        i = 0
        while v:
            if v & 1:
                out ^= self.polar[i]
            v >>= 1
            i += 1
        return out

    def is_totally_singular(self, basis: Sequence[int]) -> bool:
        if any(self.q(v) for v in basis):
            return False
        return all(self.beta(u, v) == 0 for u in basis for v in basis)

    def q_values(self) -> np.ndarray:
        """Q at every vector 0..2^dim-1, as a uint8 array."""
        if self.dim > MAX_SCAN_DIM:
            raise TooLarge(f"Scanning 2^{self.dim} vectors is beyond the cap")
        values = np.zeros(1, dtype=np.uint8)
        for i in range(self.dim):
            # Q(x + e_i) = Q(x) + Q(e_i) + beta(x, e_i) for x using bits below i
            low = np.arange(len(values), dtype=np.int64)
            cross = _parity_array(low & self.polar[i])
            values = np.concatenate([values, values ^ np.uint8(self.q_basis[i]) ^ cross])
        return values

    def count_singular(self) -> int:
        """Number of x (zero included) with Q(x) = 0."""
        return int(np.sum(self.q_values() == 0))

    def singular_vectors(self) -> Iterator[int]:
        for x, v in enumerate(self.q_values()):
            if x and not v:
                yield x

    # Normal form

    def symplectic_basis(self) -> List[Tuple[int, int]]:
        """Greedy symplectic pairs (e, f) with beta(e, f) = 1, pairwise orthogonal."""
        if not self.is_nondegenerate:
            raise InvalidParameter("Symplectic basis needs a nondegenerate form")
        pending = [1 << i for i in range(self.dim)]
        pairs = []
        while pending:
            e = pending.pop(0)
            idx = next(i for i, w in enumerate(pending) if self.beta(e, w))
            f = pending.pop(idx)
            pending = [w ^ (self.beta(w, f) * e) ^ (self.beta(w, e) * f) for w in pending]
            pending = [w for w in pending if w]
            pairs.append((e, f))
        return pairs

    def arf_invariant(self) -> int:
        out = 0
        for e, f in self.symplectic_basis():
            out ^= self.q(e) & self.q(f)
        return out

    def witt_type(self) -> str:
        return "plus" if self.arf_invariant() == 0 else "minus"

    @property
    def witt_index(self) -> int:
        b = self.dim // 2
        return b if self.witt_type() == "plus" else b - 1

    def hyperbolic_basis(self) -> Tuple[List[Tuple[int, int]], Optional[Tuple[int, int]]]:
        """
        Hyperbolic pairs (u, v) with Q(u) = Q(v) = 0 and beta(u, v) = 1.

        Returns the pairs and, for minus type, one leftover anisotropic pair.
        """
        hyper: List[Tuple[int, int]] = []
        aniso: List[Tuple[int, int]] = []
        for e, f in self.symplectic_basis():
            if self.q(f) == 0:
                e, f = f, e
            if self.q(e) == 0:
                hyper.append((e, f ^ (self.q(f) * e)))
            else:
                aniso.append((e, f))
        while len(aniso) >= 2:
            (e1, f1), (e2, f2) = aniso.pop(), aniso.pop()
            u = e1 ^ e2
            hyper.append((u, f1 ^ u))
            s = f1 ^ f2
            hyper.append((s, e2 ^ s))
        return hyper, (aniso[0] if aniso else None)

    # Isometries

    def is_isometry(self, matrix: Sequence[int], target: Optional["QuadraticSpaceF2"] = None) -> bool:
        """Q and beta preserved on basis vectors (enough for a linear map)."""
        target = target or self
        images = list(matrix)
        if len(images) != self.dim or gf2_rank(images) != self.dim:
            return False
        for i in range(self.dim):
            if target.q(images[i]) != self.q_basis[i]:
                return False
            for j in range(i + 1, self.dim):
                if target.beta(images[i], images[j]) != ((self.polar[i] >> j) & 1):
                    return False
        return True

    def reflection(self, v: int) -> Matrix:
        """x -> x + beta(x, v) v for nonsingular v."""
        if self.q(v) != 1:
            raise InvalidParameter("Reflections need a nonsingular vector")
        return tuple((1 << i) ^ (self.beta(1 << i, v) * v) for i in range(self.dim))


def _parity_array(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64)
    out = np.zeros(len(x), dtype=np.uint8)
    while np.any(x):
        out ^= (x & np.uint64(1)).astype(np.uint8)
        x = x >> np.uint64(1)
    return out


def singular_count_formula(b: int) -> int:
    """Zeros of the plus-type form on F_2^(2b), zero included."""
    return ((1 << (b - 1)) + 1) * ((1 << b) - 1) + 1 if b else 1


def totally_singular_subspaces(space: QuadraticSpaceF2, k: int) -> Iterator[Tuple[int, ...]]:
    for basis in linear_subspaces(space.dim, k):
        if space.is_totally_singular(basis):
            yield basis


def totally_singular_count_formula(b: int, k: int) -> int:
    """Totally singular k-subspaces of the plus-type space F_2^(2b)."""
    num, den = 1, 1
    for i in range(k):
        num *= ((1 << (b - i)) - 1) * ((1 << (b - i - 1)) + 1)
        den *= (1 << (i + 1)) - 1
    return num // den


def isometries(space: QuadraticSpaceF2, target: Optional[QuadraticSpaceF2] = None) -> Iterator[Matrix]:
    """
    Every isometry into `target` (default: the space itself), by choosing
    basis images one at a time.
    """
    if space.dim > 2 * MAX_SURVEY_B:
        raise TooLarge(f"Isometry enumeration is capped at dimension {2 * MAX_SURVEY_B}")
    target = target or space
    n = space.dim
    by_q: Dict[int, List[int]] = {0: [], 1: []}
    for x in range(1, 1 << n):
        by_q[target.q(x)].append(x)

    chosen: List[int] = []

    def extend(i: int) -> Iterator[Matrix]:
        if i == n:
            yield tuple(chosen)
            return
        for u in by_q[space.q_basis[i]]:
            if all(target.beta(u, chosen[j]) == ((space.polar[i] >> j) & 1) for j in range(i)):
                if gf2_rank(chosen + [u]) == i + 1:
                    chosen.append(u)
                    yield from extend(i + 1)
                    chosen.pop()

    yield from extend(0)


def orthogonal_group(space: QuadraticSpaceF2) -> List[Matrix]:
    return list(isometries(space))


def orthogonal_plus_order(b: int) -> int:
    """|O+(2b, 2)|, twice the order of Omega+."""
    return 2 * omega_plus_order(b, 2) if b else 1


def parabolic_order(b: int, a: int) -> int:
    """Order of the stabilizer of a totally singular a-subspace in O+(2b, 2)."""
    if not 0 <= a <= b:
        raise InvalidParameter(f"Need 0 <= a <= b, got a={a}, b={b}")
    return orthogonal_plus_order(b) // totally_singular_count_formula(b, a)


def general_linear_maps(n: int) -> Iterator[Matrix]:
    if n > 4:
        raise TooLarge(f"GL({n}, 2) enumeration is capped at n = 4")
    rows: List[int] = []

    def extend(i: int) -> Iterator[Matrix]:
        if i == n:
            yield tuple(rows)
            return
        for u in range(1, 1 << n):
            if gf2_rank(rows + [u]) == i + 1:
                rows.append(u)
                yield from extend(i + 1)
                rows.pop()

    yield from extend(0)


# Avoiding maps


def is_avoiding(matrix: Sequence[int], w1: Sequence[int], w2: Sequence[int]) -> bool:
    """The image of span(w1) meets span(w2) only in 0."""
    return intersection_dim(image_of_span(matrix, w1), w2) == 0


@dataclass(frozen=True)
class AvoidingMap:
    """Linear map between sections; rows are images of basis vectors."""

    zeta: Matrix
    attempts: int = 1
    seed: Optional[int] = None

    @property
    def dim(self) -> int:
        return len(self.zeta)

    def __call__(self, x: int) -> int:
        return apply(self.zeta, x)


@dataclass(frozen=True)
class AvoidingSurvey:
    b: int
    a: int
    group: str
    group_order: int
    stabilizer_order: int
    class_sizes: Dict[int, int] = field(default_factory=dict)

    @property
    def nonempty_k(self) -> Tuple[int, ...]:
        return tuple(sorted(k for k, n in self.class_sizes.items() if n))

    @property
    def expected_k(self) -> Tuple[int, ...]:
        return tuple(range(min(self.a, self.b - self.a) + 1))

    @property
    def divisible(self) -> bool:
        return all(n % self.stabilizer_order == 0 for n in self.class_sizes.values())

    @property
    def orbit_multiplicities(self) -> Dict[int, int]:
        """Class size over |H|: the number of H-orbits under one-sided action."""
        return {k: n // self.stabilizer_order for k, n in self.class_sizes.items()}


def standard_singular_subspace(b: int, a: int) -> Tuple[int, ...]:
    """span(e_0, e_2, ..., e_(2a-2)) in the hyperbolic normal form."""
    return tuple(1 << (2 * i) for i in range(a))


def avoiding_maps_survey(b: int, a: int, group: str = "orthogonal") -> AvoidingSurvey:
    """
    Partition the (W, W)-avoiding maps by k = dim(g(W) cap W^perp).

    W is the standard totally singular a-subspace of the plus-type space of
    dimension 2b. `group` is "orthogonal" (isometries) or "general_linear".

    Raises:
        TooLarge: Above MAX_SURVEY_B (orthogonal) or b = 2 (general linear)
    """
    if not 1 <= a <= b:
        raise InvalidParameter(f"Need 1 <= a <= b, got a={a}, b={b}")
    if b > MAX_SURVEY_B:
        raise TooLarge(f"Avoiding-map survey is capped at b = {MAX_SURVEY_B}")
    space = QuadraticSpaceF2.hyperbolic(b)
    w = standard_singular_subspace(b, a)
    w_perp = space.perp(w)
    w_reduced = reduced_basis(w)

    if group == "orthogonal":
        maps: Iterator[Matrix] = isometries(space)
    elif group == "general_linear":
        maps = general_linear_maps(2 * b)
    else:
        raise InvalidParameter(f"Unknown group {group!r}")

    order = 0
    stabilizer = 0
    sizes: Dict[int, int] = {}
    for g in maps:
        order += 1
        img = image_of_span(g, w)
        if img == w_reduced:
            stabilizer += 1
        if intersection_dim(img, w) == 0:
            k = intersection_dim(img, w_perp)
            sizes[k] = sizes.get(k, 0) + 1
    logger.info(f"Avoiding survey b={b}, a={a}: {order} maps, classes {sizes}")
    return AvoidingSurvey(b, a, group, order, stabilizer, sizes)


def random_isometry(space: QuadraticSpaceF2, rng: np.random.Generator, length: Optional[int] = None) -> Matrix:
    """Product of random reflections in nonsingular vectors."""
    n = space.dim
    length = length or 2 * n
    g = identity_map(n)
    done = 0
    while done < length:
        v = int.from_bytes(rng.bytes((n + 7) // 8), "little") & ((1 << n) - 1)
        if v == 0 or space.q(v) != 1:
            continue
        g = compose(g, space.reflection(v))
        done += 1
    return g


def sample_avoiding_map(
    space: QuadraticSpaceF2,
    w1: Sequence[int],
    w2: Sequence[int],
    seed: int = DEFAULT_SEED,
    k: Optional[int] = None,
    max_attempts: int = MAX_AVOIDING_ATTEMPTS,
) -> AvoidingMap:
    """
    Rejection-sample an isometry g with g(W1) cap W2 = 0.

    The identity is tried first. With `k`, also demand dim(g(W1) cap W2^perp) = k.

    Raises:
        Exhausted: After max_attempts candidates
    """
    rng = np.random.default_rng(seed)
    w2_perp = space.perp(w2) if k is not None else ()

    def accept(g: Matrix) -> bool:
        if not is_avoiding(g, w1, w2):
            return False
        return k is None or intersection_dim(image_of_span(g, w1), w2_perp) == k

    candidate = identity_map(space.dim)
    for attempt in range(1, max_attempts + 1):
        if accept(candidate):
            logger.info(f"Avoiding map found after {attempt} attempt(s) with seed {seed}")
            return AvoidingMap(candidate, attempt, seed)
        candidate = random_isometry(space, rng)
    raise Exhausted(f"No avoiding map in {max_attempts} attempts (seed {seed})")


def require_isometry(space: QuadraticSpaceF2, target: QuadraticSpaceF2, zeta: Sequence[int]) -> None:
    if not space.is_isometry(zeta, target):
        raise NotIsometry("Map between discriminant sections does not preserve the quadratic form")


__all__ = [
    "QuadraticSpaceF2",
    "AvoidingMap",
    "AvoidingSurvey",
    "apply",
    "compose",
    "identity_map",
    "image_of_span",
    "intersection_dim",
    "singular_count_formula",
    "totally_singular_subspaces",
    "totally_singular_count_formula",
    "isometries",
    "orthogonal_group",
    "orthogonal_plus_order",
    "parabolic_order",
    "general_linear_maps",
    "is_avoiding",
    "standard_singular_subspace",
    "avoiding_maps_survey",
    "random_isometry",
    "sample_avoiding_map",
    "require_isometry",
]

"""
Certified short-vector enumeration and orthogonal decomposition.

The enumerator is a Fincke-Pohst branch and bound over an LLL-reduced
basis. Reduction only speeds things up; every bound in the traversal is an
exact rational, so the returned list is complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, sqrt
from typing import Dict, List, Optional, Sequence, Set, Tuple
import logging

import numpy as np
from sympy.polys.domains import ZZ

from .config import MAX_SVP_RANK
from .exact_algebra import IntMatrix
from .errors import InvalidParameter, TooLarge
from .lattice_core import DecompositionResult, ScaledLattice

# Set up logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShortVectors:
    """Signed vector list (integer rows at denom_exp) with exact norms."""

    vectors: np.ndarray
    denom_exp: int
    norms: Tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.norms)

    @property
    def minimum(self) -> Optional[Fraction]:
        return min(self.norms) if self.norms else None

    def minimal(self) -> "ShortVectors":
        """The vectors attaining the minimum norm."""
        if not self.norms:
            return self
        mu = self.minimum
        keep = [i for i, x in enumerate(self.norms) if x == mu]
        return ShortVectors(self.vectors[keep], self.denom_exp, tuple(self.norms[i] for i in keep))

    def as_set(self, denom_exp: Optional[int] = None) -> Set[Tuple[int, ...]]:
        e = self.denom_exp if denom_exp is None else denom_exp
        if e < self.denom_exp:
            raise InvalidParameter(f"Cannot express vectors at exponent {e} < {self.denom_exp}")
        k = 1 << (e - self.denom_exp)
        return {tuple(int(x) * k for x in row) for row in self.vectors}


def lll_reduce(l: ScaledLattice) -> IntMatrix:
    """LLL-reduced integer basis rows of l (same denominator exponent)."""
    if l.rank <= 1:
        return l.basis
    reduced = l.basis.to_domain().lll(delta=ZZ.get_field()(3, 4))
    return IntMatrix.from_domain(reduced)


def _ldl(gram: IntMatrix) -> Tuple[List[Fraction], List[List[Fraction]]]:
    """q_ii and q_ij with (x,x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2."""
    n = gram.rows
    q = [[Fraction(gram[i, j]) for j in range(n)] for i in range(n)]
    diag: List[Fraction] = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        s = q[i][i]
        for k in range(i):
            s -= diag[k] * mu[k][i] * mu[k][i]
        if s <= 0:
            raise InvalidParameter("Gram matrix is not positive definite")
        diag[i] = s
        for j in range(i + 1, n):
            t = q[i][j]
            for k in range(i):
                t -= diag[k] * mu[k][i] * mu[k][j]
            mu[i][j] = t / s
    return diag, mu


def _integer_range(center: Fraction, radius_sq: Fraction) -> Tuple[int, int]:
    """Smallest and largest integers x with (x - center)^2 <= radius_sq."""
    r = sqrt(float(radius_sq)) if radius_sq > 0 else 0.0
    c = float(center)
    lo = floor(c - r) - 1
    hi = floor(c + r) + 1
    while (lo - center) ** 2 > radius_sq:
        lo += 1
    while (hi - center) ** 2 > radius_sq:
        hi -= 1
    return lo, hi


def certified_short_vectors(l: ScaledLattice, norm_bound) -> ShortVectors:
    """
    Every nonzero vector of l with norm at most norm_bound.

    Args:
        l: Positive-definite lattice of rank at most MAX_SVP_RANK
        norm_bound: Rational bound on the true norm

    Returns:
        ShortVectors closed under negation

    Raises:
        TooLarge: Above the rank cap
    """
    if l.rank > MAX_SVP_RANK:
        raise TooLarge(f"Rank {l.rank} exceeds exhaustive enumeration cap {MAX_SVP_RANK}")
    bound = Fraction(norm_bound)
    e = l.denom_exp
    if l.rank == 0 or bound <= 0:
        return ShortVectors(np.zeros((0, l.ambient_dim), dtype=np.int64), e, ())

    basis = lll_reduce(l)
    gram = basis @ basis.transpose()
    scaled_bound = bound * (1 << (2 * e))
    diag, mu = _ldl(gram)
    n = l.rank
    x = [0] * n
    found: List[Tuple[int, ...]] = []
    norms: List[Fraction] = []

    def descend(i: int, remaining: Fraction, all_zero_above: bool) -> None:
        center = -sum((mu[i][j] * x[j] for j in range(i + 1, n) if x[j]), Fraction(0))
        lo, hi = _integer_range(center, remaining / diag[i])
        if all_zero_above:
            lo = max(lo, 0)
        for xi in range(lo, hi + 1):
            x[i] = xi
            used = diag[i] * (xi - center) ** 2
            rest = remaining - used
            if i == 0:
                if all_zero_above and xi == 0:
                    continue
                found.append(tuple(x))
                norms.append(scaled_bound - rest)
            else:
                descend(i - 1, rest, all_zero_above and xi == 0)
        x[i] = 0

    descend(n - 1, scaled_bound, True)
    logger.debug(f"Enumeration found {len(found)} vectors up to sign at bound {bound}")

    coords = np.array(found, dtype=object).reshape(-1, n)
    b = basis.to_numpy(object)
    vecs = coords.dot(b) if len(found) else np.zeros((0, l.ambient_dim), dtype=object)
    vecs = np.concatenate([vecs, -vecs]) if len(found) else vecs
    biggest = max((abs(int(v)) for v in vecs.flat), default=0)
    if biggest < (1 << 62):
        vecs = vecs.astype(np.int64)
    q = 1 << (2 * e)
    true_norms = tuple(Fraction(v, q) for v in norms) * 2
    return ShortVectors(vecs, e, true_norms)


def minimum_norm(l: ScaledLattice) -> Fraction:
    """mu(L), certified by enumeration up to the shortest reduced basis norm."""
    basis = lll_reduce(l)
    q = 1 << (2 * l.denom_exp)
    start = min(Fraction(sum(v * v for v in basis.row(i)), q) for i in range(basis.rows))
    return certified_short_vectors(l, start).minimum


def _exact_rank(rows: Sequence[Sequence[int]], stop_at: int) -> Tuple[int, List[int]]:
    """Rank over Q of integer rows with fraction-free elimination; stops at stop_at."""
    echelon: List[Tuple[int, List[int]]] = []
    chosen: List[int] = []
    for idx, row in enumerate(rows):
        v = [int(a) for a in row]
        for piv, r in echelon:
            if v[piv]:
                a, b = r[piv], v[piv]
                v = [a * vi - b * ri for vi, ri in zip(v, r)]
        nz = [j for j, a in enumerate(v) if a]
        if nz:
            echelon.append((nz[0], v))
            chosen.append(idx)
            if len(chosen) >= stop_at:
                break
    return len(chosen), chosen


def indecomposable_vectors(short: ShortVectors) -> np.ndarray:
    """
    Indices of vectors that are not a sum of two nonzero orthogonal lattice vectors.

    `short` must contain every vector of norm below each candidate's norm.
    """
    v = short.vectors.astype(object) if short.vectors.dtype != object else short.vectors
    norms = short.norms
    q = 1 << (2 * short.denom_exp)
    dots = v.dot(v.T)
    keep = []
    for i in range(len(norms)):
        ok = True
        for j in range(len(norms)):
            if norms[j] < norms[i] and Fraction(int(dots[i, j]), q) == norms[j]:
                ok = False
                break
        if ok:
            keep.append(i)
    return np.array(keep, dtype=np.int64)


def kneser_decompose(
    l: ScaledLattice,
    generators: Optional[ShortVectors] = None,
    max_rounds: int = 8,
) -> DecompositionResult:
    """
    Orthogonal decomposition into indecomposable summands.

    Indecomposable short vectors are linked when their inner product is
    nonzero; each connected component spans one summand.

    Raises:
        TooLarge: If no spanning set of indecomposable vectors is found
    """
    if generators is None:
        bound = minimum_norm(l)
        for _ in range(max_rounds):
            short = certified_short_vectors(l, bound)
            keep = indecomposable_vectors(short)
            rank, _ = _exact_rank(short.vectors[keep].tolist(), l.rank)
            if rank == l.rank:
                generators = ShortVectors(
                    short.vectors[keep], short.denom_exp, tuple(short.norms[i] for i in keep)
                )
                break
            bound += 1
        else:
            raise TooLarge(f"No spanning indecomposable vectors below norm {bound}")

    vecs = generators.vectors.astype(object)
    dots = vecs.dot(vecs.T)
    count = len(vecs)
    parent = list(range(count))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(count):
        for j in range(i + 1, count):
            if dots[i, j] != 0:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri

    classes: Dict[int, List[int]] = {}
    for i in range(count):
        classes.setdefault(find(i), []).append(i)
    ordered = sorted(classes.values(), key=min)
    lattices = tuple(
        ScaledLattice.from_generators(
            [[int(a) for a in vecs[i]] for i in members],
            generators.denom_exp,
            ambient_dim=l.ambient_dim,
        )
        for members in ordered
    )
    logger.info(f"Kneser decomposition: {len(ordered)} summand(s) of ranks {[x.rank for x in lattices]}")
    return DecompositionResult(tuple(tuple(m) for m in ordered), lattices)


__all__ = [
    "ShortVectors",
    "lll_reduce",
    "certified_short_vectors",
    "minimum_norm",
    "indecomposable_vectors",
    "kneser_decompose",
]

"""
Structural minimal vectors of Barnes-Wall lattices and their twists.

In the coordinates of build_bw the standard basis vectors e_i form a frame
of L[-m], m = floor(d/2), and coordinate i carries the label i in F_2^d. A
minimal vector of L[q] is then supported on an affine subspace A of
dimension a = q + m + 2t, with entries +-2^(-t) whose sign pattern is a
word of the sign code of A. The norm is 2^(q+m) for every shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple
import logging

import numpy as np
from joblib import Parallel, delayed

from .barnes_wall import BWLattice, twist_rows
from .config import (
    DEFAULT_SEED,
    MAX_DOT_EXPONENT_LEVEL,
    MAX_STREAM_LEVEL,
    MAX_SVP_RANK,
    MEMBERSHIP_CHUNK,
    get_n_jobs,
)
from .enumeration import certified_short_vectors
from .errors import InvalidParameter, NotMinimal, TooLarge
from .gf2_codes import (
    AffineSubspace,
    BinaryCode,
    affine_subspaces,
    count_affine_subspaces,
    sign_code,
)
from .lattice_core import MembershipOracle

# Set up logging
logger = logging.getLogger(__name__)

# Codewords materialized per block when expanding large sign codes
SIGN_BLOCK_BITS = 14


def _sign_code_dimension(a: int) -> int:
    return (1 << a) if a < 2 else 1 + a + comb(a, 2)


def _sign_blocks(a: int) -> Iterator[np.ndarray]:
    """Sign-code words of an a-flat in local coordinates, in uint64 blocks."""
    code = sign_code(a)
    gens = code.generators
    k = min(len(gens), SIGN_BLOCK_BITS)
    head = BinaryCode(code.length, gens[:k]).codeword_array()
    tail = gens[k:]
    for sel in range(1 << len(tail)):
        offset = 0
        for j, g in enumerate(tail):
            if (sel >> j) & 1:
                offset ^= g
        yield head ^ np.uint64(offset)


def _sign_matrix(words: np.ndarray, size: int) -> np.ndarray:
    shifts = np.arange(size, dtype=np.uint64)
    bits = (words[:, None] >> shifts[None, :]) & np.uint64(1)
    return 1 - 2 * bits.astype(np.int64)


@dataclass(frozen=True)
class StructuralStream:
    """
    Every minimal vector of L[q] for BW_d, produced shape by shape.

    Vectors are integer rows at denominator exponent denom_exp.
    """

    d: int
    q: int

    @property
    def m(self) -> int:
        return self.d // 2

    @property
    def shapes(self) -> List[Tuple[int, int]]:
        """(a, t) pairs with a = q + m + 2t in [0, d]."""
        out = []
        for a in range(self.d + 1):
            if (a - self.q - self.m) % 2 == 0:
                out.append((a, (a - self.q - self.m) // 2))
        return out

    @property
    def denom_exp(self) -> int:
        return max([0] + [t for _, t in self.shapes])

    @property
    def norm(self) -> Fraction:
        return Fraction(2) ** (self.q + self.m)

    @property
    def count(self) -> int:
        return sum(
            count_affine_subspaces(self.d, a) << _sign_code_dimension(a) for a, _ in self.shapes
        )

    def shape_counts(self) -> Dict[Tuple[int, int], int]:
        return {
            (a, t): count_affine_subspaces(self.d, a) << _sign_code_dimension(a)
            for a, t in self.shapes
        }

    def flat_chunks(self, flat: AffineSubspace, t: int) -> Iterator[np.ndarray]:
        n = 1 << self.d
        points = np.array(flat.points(), dtype=np.int64)
        scale = 1 << (self.denom_exp - t)
        for words in _sign_blocks(flat.dimension):
            signs = _sign_matrix(words, len(points))
            out = np.zeros((len(words), n), dtype=np.int64)
            out[:, points] = signs * scale
            yield out

    def chunks(self) -> Iterator[np.ndarray]:
        for a, t in self.shapes:
            logger.debug(f"Streaming shape a={a}, t={t} at level {self.d}, twist {self.q}")
            for flat in affine_subspaces(self.d, a):
                yield from self.flat_chunks(flat, t)

    def to_array(self) -> np.ndarray:
        if self.d > 5:
            raise TooLarge(f"Materializing {self.count} vectors at level {self.d} is out of scale")
        parts = list(self.chunks())
        return np.concatenate(parts) if parts else np.zeros((0, 1 << self.d), dtype=np.int64)

    def streamed_count(self) -> int:
        return sum(len(c) for c in self.chunks())


def minimal_vectors_structural(l: BWLattice, q: int = 0) -> StructuralStream:
    """
    Structural generator of mv(L[q]).

    Only the level l.d is read: vectors are produced in the fixed coordinate
    labeling of standard_labeling, not one carried through the recursive
    construction. verify_structural checks each of them against l.

    Raises:
        TooLarge: Above MAX_STREAM_LEVEL
    """
    if l.d > MAX_STREAM_LEVEL:
        raise TooLarge(f"Structural streaming is capped at level {MAX_STREAM_LEVEL}")
    if l.d < 1:
        raise InvalidParameter(f"Level must be at least 1, got {l.d}")
    return StructuralStream(l.d, q)


def _check_chunk(
    oracle: MembershipOracle, chunk: np.ndarray, denom_exp: int, norm_int: int
) -> Tuple[int, int, int]:
    norms = np.einsum("ij,ij->i", chunk, chunk)
    norm_ok = int(np.sum(norms == norm_int))
    member_ok = int(np.sum(oracle.contains(chunk, denom_exp)))
    return len(chunk), norm_ok, member_ok


def _batched(chunks: Iterator[np.ndarray], size: int) -> Iterator[np.ndarray]:
    pending: List[np.ndarray] = []
    held = 0
    for c in chunks:
        pending.append(c)
        held += len(c)
        if held >= size:
            yield np.concatenate(pending)
            pending, held = [], 0
    if pending:
        yield np.concatenate(pending)


@dataclass(frozen=True)
class StreamVerification:
    d: int
    q: int
    count: int
    checked: int
    norm_ok: int
    member_ok: int
    sampled: bool

    @property
    def passed(self) -> bool:
        return self.norm_ok == self.checked and self.member_ok == self.checked


def verify_structural(
    l: BWLattice,
    q: int = 0,
    sample: Optional[int] = None,
    seed: int = DEFAULT_SEED,
    n_jobs: Optional[int] = None,
) -> StreamVerification:
    """
    Count the structural stream and check norm and membership of its vectors.

    With `sample`, only that many vectors (chosen by a seeded generator) are
    tested for membership and norm; the count is always exhaustive.
    """
    stream = minimal_vectors_structural(l, q)
    e = stream.denom_exp
    norm_int = int(stream.norm * (1 << (2 * e)))
    oracle = l.twist(q).oracle
    n_jobs = n_jobs or get_n_jobs()

    if sample is None:
        results = Parallel(n_jobs=n_jobs)(
            delayed(_check_chunk)(oracle, chunk, e, norm_int)
            for chunk in _batched(stream.chunks(), MEMBERSHIP_CHUNK)
        )
        count = sum(r[0] for r in results)
        norm_ok = sum(r[1] for r in results)
        member_ok = sum(r[2] for r in results)
        return StreamVerification(l.d, q, count, count, norm_ok, member_ok, False)

    rng = np.random.default_rng(seed)
    total = 0
    picked: List[np.ndarray] = []
    keep_prob = min(1.0, sample / max(1, stream.count))
    for chunk in stream.chunks():
        total += len(chunk)
        mask = rng.random(len(chunk)) < keep_prob
        if mask.any():
            picked.append(chunk[mask])
    subset = np.concatenate(picked) if picked else np.zeros((0, 1 << l.d), dtype=np.int64)
    _, norm_ok, member_ok = _check_chunk(oracle, subset, e, norm_int) if len(subset) else (0, 0, 0)
    logger.info(f"Sampled {len(subset)} of {total} minimal vectors at level {l.d}")
    return StreamVerification(l.d, q, total, len(subset), norm_ok, member_ok, True)


def exhaustive_agreement(l: BWLattice, q: int = 0) -> bool:
    """Structural mv(L[q]) equals the certified exhaustive set, as signed sets."""
    if l.rank > MAX_SVP_RANK:
        raise TooLarge(f"Exhaustive agreement needs rank at most {MAX_SVP_RANK}")
    stream = minimal_vectors_structural(l, q)
    short = certified_short_vectors(l.twist(q), stream.norm)
    exhaustive = short.minimal()
    if exhaustive.minimum != stream.norm:
        return False
    e = max(stream.denom_exp, exhaustive.denom_exp)
    k = 1 << (e - stream.denom_exp)
    structural = {tuple(int(x) * k for x in row) for row in stream.to_array()}
    return structural == exhaustive.as_set(e)


def twist_vectors(vectors: np.ndarray, k: int, denom_exp: int = 0) -> Tuple[np.ndarray, int]:
    """mv(L)[k]: apply (1-F)^k to a vector set (rows at denom_exp)."""
    return twist_rows(np.asarray(vectors), k, denom_exp)


# Frames


@dataclass(frozen=True)
class SultryFrame:
    """One representative per +- pair; rows at denom_exp."""

    vectors: np.ndarray
    denom_exp: int

    def __len__(self) -> int:
        return len(self.vectors)

    def as_set(self) -> Set[Tuple[int, ...]]:
        return {tuple(int(x) for x in _canonical_sign(v)) for v in self.vectors}

    def is_orthogonal(self) -> bool:
        v = self.vectors.astype(object)
        g = v.dot(v.T)
        return all(g[i, j] == 0 for i in range(len(v)) for j in range(len(v)) if i != j)


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(v)
    return -v if len(nz) and v[nz[0]] < 0 else v


def standard_frame(l: BWLattice, q: int = 0) -> SultryFrame:
    """The frame of L[q] obtained from the coordinate frame of L[-m]."""
    m = l.d // 2
    rows, e = twist_rows(np.eye(l.rank, dtype=np.int64), q + m, 0)
    return SultryFrame(np.array([_canonical_sign(r) for r in rows]), e)


def _rescale_to(rows: np.ndarray, src: int, dst: int) -> np.ndarray:
    return rows * (1 << (dst - src)) if dst >= src else rows // (1 << (src - dst))


def sultry_frame(l: BWLattice, x: Sequence[int], denom_exp: int = 0) -> SultryFrame:
    """
    SF(x): minimal vectors y with x - y in L[1], one per sign.

    Raises:
        NotMinimal: If x is not a minimal vector of L
    """
    xv = np.array([int(a) for a in x], dtype=np.int64)
    lat = l.lattice
    if not lat.oracle.contains(xv[None, :], denom_exp)[0]:
        raise NotMinimal("Vector is not in the lattice")
    if Fraction(int(xv.dot(xv)), 1 << (2 * denom_exp)) != l.minimum:
        raise NotMinimal(f"Vector does not have the minimal norm {l.minimum}")

    stream = minimal_vectors_structural(l, 0)
    e = max(stream.denom_exp, denom_exp)
    xs = _rescale_to(xv, denom_exp, e)
    l1 = l.twist(1).oracle
    found: List[np.ndarray] = []
    for chunk in stream.chunks():
        chunk = _rescale_to(chunk, stream.denom_exp, e)
        dots = chunk @ xs
        cand = chunk[(dots == 0) | (np.abs(dots) == xs.dot(xs))]
        if len(cand) == 0:
            continue
        ok = l1.contains(xs[None, :] - cand, e)
        found.extend(cand[ok])
    reps = {tuple(int(a) for a in _canonical_sign(v)) for v in found}
    vectors = np.array(sorted(reps), dtype=np.int64)
    logger.debug(f"Sultry frame at level {l.d} has {len(vectors)} representatives")
    return SultryFrame(vectors, e)


# Labeling


@dataclass(frozen=True)
class Labeling:
    """Bijection from frame representatives (rows) to points of F_2^d."""

    frame: SultryFrame
    labels: Tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.labels) != list(range(len(self.frame))):
            raise InvalidParameter("Labels must be a bijection onto F_2^d")

    def vector_for(self, label: int) -> np.ndarray:
        return self.frame.vectors[self.labels.index(label)]


def standard_labeling(l: BWLattice) -> Labeling:
    """Coordinate frame of L[-m]; e_i carries label i."""
    frame = standard_frame(l, -(l.d // 2))
    return Labeling(frame, tuple(range(l.rank)))


def check_labeling(l: BWLattice, labeling: Labeling, sample: Optional[int] = None, seed: int = DEFAULT_SEED) -> bool:
    """
    Weight-4 minimal vectors of L[2-m] over the frame are exactly the
    affine planes under the labels.

    Every plane must give a lattice vector and no other 4-set may. Above
    level 4 the non-planes are sampled.
    """
    d = l.d
    if d < 2:
        raise InvalidParameter("Labelings need d >= 2")
    m = d // 2
    target = l.twist(2 - m)
    frame = labeling.frame
    n = l.rank

    def vector(points: Sequence[int]) -> np.ndarray:
        v = np.zeros(n, dtype=np.int64)
        for p in points:
            v += labeling.vector_for(p)
        return v

    planes = [flat.points() for flat in affine_subspaces(d, 2)]
    plane_rows = np.array([vector(p) for p in planes])
    if not np.all(target.oracle.contains(plane_rows, frame.denom_exp)):
        return False

    plane_sets = {frozenset(p) for p in planes}
    if sample is None and d <= 4:
        others = [s for s in combinations(range(n), 4) if frozenset(s) not in plane_sets]
    else:
        rng = np.random.default_rng(seed)
        others = []
        while len(others) < (sample or 500):
            s = tuple(sorted(int(x) for x in rng.choice(n, 4, replace=False)))
            if frozenset(s) not in plane_sets:
                others.append(s)
    other_rows = np.array([vector(s) for s in others])
    return not np.any(target.oracle.contains(other_rows, frame.denom_exp))


# Exponent intervals


@dataclass(frozen=True)
class ExponentInterval:
    d: int
    p: int
    q: int
    values: FrozenSet[int]

    def shifted(self, k: int) -> FrozenSet[int]:
        return frozenset(v + k for v in self.values)


def exponent_interval(d: int, p: int, q: int) -> ExponentInterval:
    """
    floor((p+1)/2) + floor((q+1)/2) + {-rs, 0, 1, ..., m}.

    The closed form matches the realized exponents only when p and q are
    both even; verify_dot_exponents compares against attained_exponent_interval.
    """
    if d < 2:
        raise InvalidParameter(f"Exponent intervals need d >= 2, got {d}")
    m = d // 2
    r = d % 2
    s = (p - q) % 2
    base = (p + 1) // 2 + (q + 1) // 2
    values = {base - r * s} | {base + i for i in range(m + 1)}
    return ExponentInterval(d, p, q, frozenset(values))


def attained_exponent_interval(d: int, p: int, q: int) -> ExponentInterval:
    """
    Exponents of +-2^k actually realized by inner products of mv(L[p]) and mv(L[q]).

    ceil((p+q)/2) + {-rs, 0, 1, ..., m-s}. It agrees with exponent_interval
    when p and q are both even.
    """
    if d < 2:
        raise InvalidParameter(f"Exponent intervals need d >= 2, got {d}")
    m = d // 2
    r = d % 2
    s = (p - q) % 2
    base = -((-(p + q)) // 2)
    values = {base - r * s} | {base + i for i in range(m - s + 1)}
    return ExponentInterval(d, p, q, frozenset(values))


def _power_of_two_exponent(num: int, den_exp: int) -> Optional[int]:
    num = abs(num)
    if num == 0 or num & (num - 1):
        return None
    return num.bit_length() - 1 - den_exp


def realized_dot_exponents(l: BWLattice, p: int, q: int) -> Tuple[Set[int], bool, bool]:
    """
    Exponents k with +-2^k an inner product of minimal vectors of L[p] and L[q].

    Returns (exponents, zero_realized, all_powers_of_two).

    Raises:
        TooLarge: Above MAX_DOT_EXPONENT_LEVEL
    """
    if l.d > MAX_DOT_EXPONENT_LEVEL:
        raise TooLarge(f"Exhaustive dot products are capped at level {MAX_DOT_EXPONENT_LEVEL}")
    sp = minimal_vectors_structural(l, p)
    sq = minimal_vectors_structural(l, q)
    xp = sp.to_array()
    xq = sq.to_array()
    dots = xp @ xq.T
    values = np.unique(np.abs(dots))
    den = sp.denom_exp + sq.denom_exp
    exps: Set[int] = set()
    zero = False
    clean = True
    for v in values:
        v = int(v)
        if v == 0:
            zero = True
            continue
        k = _power_of_two_exponent(v, den)
        if k is None:
            clean = False
        else:
            exps.add(k)
    return exps, zero, clean


def verify_dot_exponents(l: BWLattice, p: int, q: int) -> bool:
    """True iff |(x,y)| over mv(L[p]) x mv(L[q]) is exactly {0} and {2^k : k in I(d,p,q)}."""
    exps, zero, clean = realized_dot_exponents(l, p, q)
    return zero and clean and exps == set(attained_exponent_interval(l.d, p, q).values)


# Layers


@dataclass(frozen=True)
class Layer:
    """Minimal vectors of L[q] whose frame inner products lie in {0, +-2^k}."""

    anchor: Tuple[int, ...]
    q: int
    k: int
    members: np.ndarray
    denom_exp: int


def _frame_dots(vectors: np.ndarray, frame: SultryFrame) -> np.ndarray:
    return vectors @ frame.vectors.T


def has_zoop2(vector: Sequence[int], frame: SultryFrame, denom_exp: int = 0) -> bool:
    """All nonzero frame inner products of the vector share one absolute value, a power of 2."""
    v = np.asarray(vector, dtype=np.int64)
    dots = np.unique(np.abs(_frame_dots(v[None, :], frame)[0]))
    nonzero = [int(x) for x in dots if x]
    if len(nonzero) != 1:
        return False
    return _power_of_two_exponent(nonzero[0], denom_exp + frame.denom_exp) is not None


def layers(l: BWLattice, q: int, frame: Optional[SultryFrame] = None) -> List[Layer]:
    """
    Partition mv(L[q]) into layers A(L, x, q, k) relative to a frame of L.

    Vectors without the single-power property are not placed in any layer.
    """
    frame = frame if frame is not None else standard_frame(l, 0)
    stream = minimal_vectors_structural(l, q)
    vectors = stream.to_array()
    dots = np.abs(_frame_dots(vectors, frame))
    top = dots.max(axis=1)
    single = np.all((dots == 0) | (dots == top[:, None]), axis=1)
    den = stream.denom_exp + frame.denom_exp
    groups: Dict[int, List[int]] = {}
    for i in np.flatnonzero(single):
        k = _power_of_two_exponent(int(top[i]), den)
        if k is not None:
            groups.setdefault(k, []).append(int(i))
    anchor = tuple(int(x) for x in frame.vectors[0])
    return [
        Layer(anchor, q, k, vectors[idx], stream.denom_exp)
        for k, idx in sorted(groups.items())
    ]


__all__ = [
    "StructuralStream",
    "StreamVerification",
    "SultryFrame",
    "Labeling",
    "ExponentInterval",
    "Layer",
    "minimal_vectors_structural",
    "verify_structural",
    "exhaustive_agreement",
    "twist_vectors",
    "standard_frame",
    "sultry_frame",
    "standard_labeling",
    "check_labeling",
    "exponent_interval",
    "attained_exponent_interval",
    "realized_dot_exponents",
    "verify_dot_exponents",
    "has_zoop2",
    "layers",
]

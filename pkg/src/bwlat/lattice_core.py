"""
Exact lattice machinery: scaled lattices, duals, discriminant groups,
sums and intersections, code lattices and semiselfdual involutions.

A ScaledLattice stores an integer basis together with a power-of-two
denominator exponent e; the true vectors are the rows divided by 2^e.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt
from typing import Iterable, List, Optional, Sequence, Tuple
import logging

import numpy as np
from sympy.polys.domains import QQ

from .exact_algebra import (
    IntMatrix,
    SnfResult,
    determinant,
    gf2_rank,
    hnf_span,
    integer_inverse,
    rational_rows_to_scaled,
    smith_normal_form,
)
from .errors import (
    InvalidParameter,
    NotAnIsometry,
    NotASublattice,
    NotIntegral,
    SingularGram,
)
from .gf2_codes import BinaryCode

# Set up logging
logger = logging.getLogger(__name__)


def _two_adic_exp(n: int) -> Optional[int]:
    """Return k with n == 2^k, or None when n is not a power of two."""
    if n <= 0 or n & (n - 1):
        return None
    return n.bit_length() - 1


def _trailing_zeros(n: int) -> int:
    return (n & -n).bit_length() - 1 if n else 1 << 30


@dataclass(frozen=True)
class ScaledLattice:
    """
    Lattice spanned by the rows of `basis` divided by 2^denom_exp.

    Rows must be linearly independent over the rationals; the constructors
    that take generating sets reduce them to a Hermite basis first.
    """

    basis: IntMatrix
    denom_exp: int = 0

    def __post_init__(self) -> None:
        if self.denom_exp < 0:
            raise InvalidParameter(f"denom_exp must be nonnegative, got {self.denom_exp}")

    # Constructors

    @classmethod
    def from_generators(
        cls,
        rows: Sequence[Sequence[int]],
        denom_exp: int,
        ambient_dim: Optional[int] = None,
        modulus: Optional[int] = None,
    ) -> "ScaledLattice":
        """Lattice spanned by integer generator rows at the given exponent."""
        rows = [list(r) for r in rows]
        if ambient_dim is None:
            if not rows:
                raise InvalidParameter("Ambient dimension required for an empty generating set")
            ambient_dim = len(rows[0])
        if not rows:
            return cls(IntMatrix(0, ambient_dim, ()), 0)
        basis = hnf_span(IntMatrix.from_rows(rows, cols=ambient_dim), modulus=modulus)
        return cls(basis, denom_exp).normalized()

    @classmethod
    def from_rational_rows(
        cls,
        rows: Sequence[Sequence[Fraction]],
        ambient_dim: Optional[int] = None,
        is_basis: bool = False,
    ) -> "ScaledLattice":
        """
        Lattice from rational rows with power-of-two denominators.

        Raises:
            InvalidParameter: If some denominator is not a power of two
        """
        if ambient_dim is None:
            if not rows:
                raise InvalidParameter("Ambient dimension required for an empty row set")
            ambient_dim = len(rows[0])
        if not rows:
            return cls(IntMatrix(0, ambient_dim, ()), 0)
        int_rows, den = rational_rows_to_scaled(rows)
        e = _two_adic_exp(den)
        if e is None:
            raise InvalidParameter(f"Denominator {den} is not a power of two")
        if is_basis:
            return cls(IntMatrix.from_rows(int_rows, cols=ambient_dim), e).normalized()
        return cls.from_generators(int_rows, e, ambient_dim=ambient_dim)

    @classmethod
    def standard(cls, n: int) -> "ScaledLattice":
        """The integer lattice Z^n."""
        return cls(IntMatrix.identity(n), 0)

    # Shape

    @property
    def rank(self) -> int:
        return self.basis.rows

    @property
    def ambient_dim(self) -> int:
        return self.basis.cols

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_dim

    def rows_at(self, e: int) -> List[List[int]]:
        """Integer rows representing the basis at denominator exponent e >= denom_exp."""
        if e < self.denom_exp:
            raise InvalidParameter(f"Cannot lower exponent {self.denom_exp} to {e}")
        k = 1 << (e - self.denom_exp)
        return [[k * x for x in self.basis.row(i)] for i in range(self.rank)]

    def vectors(self) -> List[List[Fraction]]:
        d = 1 << self.denom_exp
        return [[Fraction(x, d) for x in self.basis.row(i)] for i in range(self.rank)]

    def normalized(self) -> "ScaledLattice":
        """Same lattice with the smallest possible denominator exponent."""
        k = min(_trailing_zeros(self.basis.content()), self.denom_exp)
        if k <= 0:
            return self
        return ScaledLattice(
            IntMatrix(self.basis.rows, self.basis.cols, tuple(x >> k for x in self.basis.entries)),
            self.denom_exp - k,
        )

    def scaled(self, s: int) -> "ScaledLattice":
        """The lattice 2^s L (s may be negative)."""
        e = self.denom_exp - s
        if e >= 0:
            return ScaledLattice(self.basis, e).normalized()
        return ScaledLattice(self.basis.scale(1 << (-e)), 0)

    def transform(self, matrix: IntMatrix, extra_exp: int = 0) -> "ScaledLattice":
        """Image L (matrix / 2^extra_exp) with vectors acting on the right."""
        if matrix.rows != self.ambient_dim:
            raise InvalidParameter(
                f"Transform with {matrix.rows} rows applied to ambient dimension {self.ambient_dim}"
            )
        return ScaledLattice(self.basis @ matrix, self.denom_exp + extra_exp).normalized()

    # Gram data

    @cached_property
    def gram_int(self) -> IntMatrix:
        """Unscaled Gram matrix B B^T; the true Gram is this over 4^denom_exp."""
        if self.rank == 0:
            return IntMatrix(0, 0, ())
        return self.basis @ self.basis.transpose()

    def gram(self) -> List[List[Fraction]]:
        q = 1 << (2 * self.denom_exp)
        g = self.gram_int
        return [[Fraction(g[i, j], q) for j in range(self.rank)] for i in range(self.rank)]

    @cached_property
    def is_integral(self) -> bool:
        q = 1 << (2 * self.denom_exp)
        return all(x % q == 0 for x in self.gram_int.entries)

    @cached_property
    def is_even(self) -> bool:
        q = 1 << (2 * self.denom_exp + 1)
        return self.is_integral and all(self.gram_int[i, i] % q == 0 for i in range(self.rank))

    def integral_gram(self) -> IntMatrix:
        """
        True Gram matrix as integers.

        Raises:
            NotIntegral: If some inner product is not an integer
        """
        if not self.is_integral:
            raise NotIntegral(f"Lattice of rank {self.rank} is not integral")
        q = 2 * self.denom_exp
        return IntMatrix(self.rank, self.rank, tuple(x >> q for x in self.gram_int.entries))

    @cached_property
    def determinant(self) -> Fraction:
        """Determinant of the true Gram matrix."""
        return Fraction(determinant(self.gram_int), 1 << (2 * self.denom_exp * self.rank))

    def norms(self) -> List[Fraction]:
        q = 1 << (2 * self.denom_exp)
        return [Fraction(self.gram_int[i, i], q) for i in range(self.rank)]

    @cached_property
    def oracle(self) -> "MembershipOracle":
        return MembershipOracle(self)


class MembershipOracle:
    """
    Decides lattice membership for batches of vectors.

    Full-rank lattices use a lower-triangular Hermite basis and vectorized
    back-substitution in numpy. Lower-rank lattices solve on a set of pivot
    columns with exact integers.
    """

    def __init__(self, lattice: ScaledLattice) -> None:
        self.lattice = lattice
        self.exp = lattice.denom_exp
        self.ambient_dim = lattice.ambient_dim
        self.full_rank = lattice.is_full_rank and lattice.rank > 0
        if self.full_rank:
            modulus = abs(determinant(lattice.basis))
            h = hnf_span(lattice.basis, modulus=modulus)
            rows = h.to_rows()
            self.pivot_cols = []
            for r in rows:
                nz = [j for j, x in enumerate(r) if x]
                self.pivot_cols.append(nz[-1])
            order = sorted(range(len(rows)), key=lambda i: -self.pivot_cols[i])
            self.rows = [rows[i] for i in order]
            self.pivot_cols = [self.pivot_cols[i] for i in order]
            biggest = max(abs(x) for r in rows for x in r)
            self.dtype = np.int64 if biggest < (1 << 24) else object
            self.h = np.array(self.rows, dtype=self.dtype)
        elif lattice.rank > 0:
            q = lattice.basis.to_domain().convert_to(QQ)
            _, piv = q.rref()
            self.pivot_cols = list(piv)
            sub = IntMatrix.from_rows(
                [[lattice.basis[i, j] for j in self.pivot_cols] for i in range(lattice.rank)]
            )
            self.inv_num, self.inv_den = integer_inverse(sub)
        logger.debug(
            f"Membership oracle for rank {lattice.rank} lattice in dimension {self.ambient_dim}"
        )

    def _rescale(self, vectors: np.ndarray, denom_exp: int) -> Tuple[np.ndarray, np.ndarray]:
        ok = np.ones(len(vectors), dtype=bool)
        if denom_exp > self.exp:
            k = 1 << (denom_exp - self.exp)
            ok &= np.all(vectors % k == 0, axis=1)
            vectors = vectors // k
        elif denom_exp < self.exp:
            vectors = vectors * (1 << (self.exp - denom_exp))
        return vectors, ok

    def contains(self, vectors, denom_exp: int = 0) -> np.ndarray:
        """Boolean mask: which integer rows (at exponent denom_exp) lie in the lattice."""
        if self.lattice.rank == 0:
            arr = np.asarray(vectors, dtype=object).reshape(-1, self.ambient_dim)
            return np.array([not any(int(x) for x in r) for r in arr], dtype=bool)
        if self.full_rank:
            h = self.h
            try:
                arr = np.array(vectors, dtype=self.dtype).reshape(-1, self.ambient_dim)
            except OverflowError:
                arr = np.array(vectors, dtype=object).reshape(-1, self.ambient_dim)
                h = self.h.astype(object)
            if arr.dtype != object and denom_exp < self.exp and np.abs(arr).max(initial=0) >= (1 << 30):
                arr = arr.astype(object)
                h = self.h.astype(object)
            arr, ok = self._rescale(arr, denom_exp)
            arr = arr.copy()
            for row, piv in zip(h, self.pivot_cols):
                col = arr[:, piv]
                ok &= (col % row[piv]) == 0
                coef = col // row[piv]
                arr -= coef[:, None] * row[None, :]
            return ok
        arr = np.array(vectors, dtype=object).reshape(-1, self.ambient_dim)
        arr, ok = self._rescale(arr, denom_exp)
        out = np.zeros(len(arr), dtype=bool)
        basis = self.lattice.basis
        for idx, v in enumerate(arr):
            if not ok[idx]:
                continue
            v = [int(x) for x in v]
            sub = [v[j] for j in self.pivot_cols]
            coords = []
            integral = True
            for c in range(self.inv_num.cols):
                s = sum(sub[k] * self.inv_num[k, c] for k in range(len(sub)))
                if s % self.inv_den:
                    integral = False
                    break
                coords.append(s // self.inv_den)
            if not integral:
                continue
            back = [sum(coords[i] * basis[i, j] for i in range(basis.rows)) for j in range(basis.cols)]
            out[idx] = back == v
        return out


def contains_vectors(lattice: ScaledLattice, vectors, denom_exp: int = 0) -> bool:
    if len(vectors) == 0:
        return True
    return bool(np.all(lattice.oracle.contains(vectors, denom_exp)))


def is_sublattice(small: ScaledLattice, big: ScaledLattice) -> bool:
    if small.ambient_dim != big.ambient_dim:
        return False
    if small.rank == 0:
        return True
    return contains_vectors(big, small.basis.to_rows(), small.denom_exp)


def same_lattice(a: ScaledLattice, b: ScaledLattice) -> bool:
    """Equality of spans: equal rank, equal determinant and a inside b."""
    if a.rank != b.rank or a.ambient_dim != b.ambient_dim:
        return False
    if a.rank == 0:
        return True
    return a.determinant == b.determinant and is_sublattice(a, b)


def index(sub: ScaledLattice, sup: ScaledLattice) -> int:
    """
    Index |sup : sub| for sublattices of equal rank.

    Raises:
        NotASublattice: If sub is not contained in sup
    """
    if sub.rank != sup.rank:
        raise InvalidParameter(f"Index needs equal ranks, got {sub.rank} and {sup.rank}")
    if not is_sublattice(sub, sup):
        raise NotASublattice("Lattice is not contained in the claimed superlattice")
    ratio = sub.determinant / sup.determinant
    if ratio.denominator != 1 or isqrt(ratio.numerator) ** 2 != ratio.numerator:
        raise InvalidParameter(f"Determinant ratio {ratio} is not a square integer")
    return isqrt(ratio.numerator)


def log2_index(sub: ScaledLattice, sup: ScaledLattice) -> int:
    k = _two_adic_exp(index(sub, sup))
    if k is None:
        raise InvalidParameter("Index is not a power of two")
    return k


def lattice_sum(*lattices: ScaledLattice) -> ScaledLattice:
    """Sum of lattices in a common ambient space."""
    if not lattices:
        raise InvalidParameter("Need at least one lattice")
    n = lattices[0].ambient_dim
    e = max(l.denom_exp for l in lattices)
    rows: List[List[int]] = []
    modulus = None
    for l in lattices:
        if l.ambient_dim != n:
            raise InvalidParameter("Lattices live in different ambient spaces")
        scaled = l.rows_at(e)
        if modulus is None and l.is_full_rank and l.rank:
            modulus = abs(determinant(IntMatrix.from_rows(scaled, cols=n)))
        rows.extend(scaled)
    return ScaledLattice.from_generators(rows, e, ambient_dim=n, modulus=modulus)


def direct_sum(*lattices: ScaledLattice) -> ScaledLattice:
    """Orthogonal sum in the concatenated ambient space."""
    e = max(l.denom_exp for l in lattices)
    total = sum(l.ambient_dim for l in lattices)
    rows: List[List[int]] = []
    offset = 0
    for l in lattices:
        for r in l.rows_at(e):
            rows.append([0] * offset + r + [0] * (total - offset - l.ambient_dim))
        offset += l.ambient_dim
    return ScaledLattice(IntMatrix.from_rows(rows, cols=total), e).normalized()


def dual_lattice(l: ScaledLattice) -> ScaledLattice:
    """
    Dual lattice inside the span of l: basis G^-1 B.

    Raises:
        SingularGram: If the Gram matrix is degenerate
    """
    if l.rank == 0:
        return l
    if determinant(l.gram_int) == 0:
        raise SingularGram(f"Gram matrix of rank-{l.rank} lattice is singular")
    num, den = integer_inverse(l.gram_int)
    prod = num @ l.basis
    scale = Fraction(1 << l.denom_exp, den)
    rows = [[scale * x for x in prod.row(i)] for i in range(prod.rows)]
    return ScaledLattice.from_rational_rows(rows, ambient_dim=l.ambient_dim, is_basis=True)


def intersect(a: ScaledLattice, b: ScaledLattice) -> ScaledLattice:
    """Intersection of two full-rank lattices: (a* + b*)*."""
    if not (a.is_full_rank and b.is_full_rank):
        raise InvalidParameter("intersect needs full-rank lattices; restrict coordinates first")
    return dual_lattice(lattice_sum(dual_lattice(a), dual_lattice(b)))


def project_coordinates(l: ScaledLattice, coords: Sequence[int]) -> ScaledLattice:
    """Image of l under the coordinate projection onto `coords` (reduced ambient)."""
    rows = [[r[j] for j in coords] for r in l.basis.to_rows()]
    rows = [r for r in rows if any(r)]
    return ScaledLattice.from_generators(rows, l.denom_exp, ambient_dim=len(coords))


def restrict_to_coordinates(l: ScaledLattice, coords: Sequence[int]) -> ScaledLattice:
    """
    l intersected with the coordinate subspace on `coords`, in reduced coordinates.

    Uses L cap V = dual of the projection of L*, valid for full-rank l.
    """
    if not l.is_full_rank:
        raise InvalidParameter("restrict_to_coordinates needs a full-rank lattice")
    return dual_lattice(project_coordinates(dual_lattice(l), coords))


def embed_coordinates(l: ScaledLattice, coords: Sequence[int], ambient_dim: int) -> ScaledLattice:
    """Place a lattice given in reduced coordinates back into the full ambient space."""
    rows = []
    for r in l.basis.to_rows():
        full = [0] * ambient_dim
        for j, x in zip(coords, r):
            full[j] = x
        rows.append(full)
    return ScaledLattice(IntMatrix.from_rows(rows, cols=ambient_dim) if rows else IntMatrix(0, ambient_dim, ()), l.denom_exp)


def discriminant_invariants(l: ScaledLattice) -> SnfResult:
    """
    Invariant factors of the discriminant group L*/L.

    Raises:
        NotIntegral: If l is not integral
    """
    snf = smith_normal_form(l.integral_gram())
    return SnfResult(snf.nontrivial)


def lattice_coordinates(l: ScaledLattice, vectors, denom_exp: int = 0) -> List[List[int]]:
    """
    Integer coordinates of vectors (integer rows at denom_exp) in the basis of l.

    Raises:
        NotASublattice: If some vector is not in l
    """
    if l.is_full_rank:
        num, den = integer_inverse(l.basis)
        raw = np.asarray(vectors, dtype=object).dot(num.to_numpy(object))
    else:
        num, den = integer_inverse(l.gram_int)
        b = l.basis.to_numpy(object)
        raw = np.asarray(vectors, dtype=object).dot(b.T).dot(num.to_numpy(object))
    scale_num = 1 << l.denom_exp
    scale_den = den << denom_exp
    out = []
    for row in raw:
        coords = []
        for x in row:
            val = Fraction(int(x) * scale_num, scale_den)
            if val.denominator != 1:
                raise NotASublattice("Vector is not in the lattice")
            coords.append(int(val))
        out.append(coords)
    return out


def quotient_rank(l: ScaledLattice, m: ScaledLattice, vectors, denom_exp: int = 0) -> int:
    """
    Dimension of (span(vectors) + M) / M inside L / M, for 2L <= M <= L.

    Computed in L / 2L with coordinates taken modulo 2.
    """
    def masks(rows, e):
        out = []
        for c in lattice_coordinates(l, rows, e):
            out.append(sum(1 << j for j, x in enumerate(c) if x % 2))
        return out

    m_masks = masks(m.basis.to_rows(), m.denom_exp)
    v_masks = masks(vectors, denom_exp) if len(vectors) else []
    return gf2_rank(v_masks + m_masks) - gf2_rank(m_masks)


def lattice_from_code(basis_norm_exp: int, code: BinaryCode) -> ScaledLattice:
    """
    Lattice spanned by an orthogonal basis of norm 2^m and the half-sums
    of basis vectors over codewords.

    For even m the basis is 2^(m/2) e_i in Z^n; for odd m it is
    2^((m-1)/2) (e_2i + e_2i+1) in Z^2n.
    """
    m = basis_norm_exp
    if m < 0:
        raise InvalidParameter(f"Basis norm exponent must be nonnegative, got {m}")
    n = code.length
    if m % 2 == 0:
        ambient = n
        s = 1 << (m // 2)
        basis_vectors = [[s if j == i else 0 for j in range(n)] for i in range(n)]
    else:
        ambient = 2 * n
        s = 1 << ((m - 1) // 2)
        basis_vectors = [
            [s if j in (2 * i, 2 * i + 1) else 0 for j in range(ambient)] for i in range(n)
        ]
    # generators at denominator exponent 1
    rows = [[2 * x for x in b] for b in basis_vectors]
    for g in code.generators:
        rows.append(
            [sum(basis_vectors[i][j] for i in range(n) if (g >> i) & 1) for j in range(ambient)]
        )
    modulus = (2 * s) ** n if m % 2 == 0 and n else None
    return ScaledLattice.from_generators(rows, 1, ambient_dim=ambient, modulus=modulus)


@dataclass(frozen=True)
class Involution:
    """Orthogonal involution of the ambient space, acting on row vectors from the right."""

    matrix: IntMatrix

    def __post_init__(self) -> None:
        m = self.matrix
        if not m.is_square():
            raise InvalidParameter("Involution matrix must be square")
        ident = IntMatrix.identity(m.rows)
        if m @ m != ident:
            raise NotAnIsometry("Matrix does not square to the identity")
        if m @ m.transpose() != ident:
            raise NotAnIsometry("Matrix is not orthogonal")

    def preserves(self, l: ScaledLattice) -> bool:
        return same_lattice(l.transform(self.matrix), l)


@dataclass(frozen=True)
class DecompositionResult:
    summand_index_classes: Tuple[Tuple[int, ...], ...]
    summand_lattices: Tuple[ScaledLattice, ...]

    @property
    def count(self) -> int:
        return len(self.summand_lattices)


def _project_rows(l: ScaledLattice, projector: List[List[Fraction]]) -> ScaledLattice:
    """Lattice generated by the images of l's basis under a rational matrix."""
    n = l.ambient_dim
    d = 1 << l.denom_exp
    rows = []
    for r in l.basis.to_rows():
        img = [sum((Fraction(r[k], d) * projector[k][j] for k in range(n) if r[k]), Fraction(0)) for j in range(n)]
        if any(img):
            rows.append(img)
    return ScaledLattice.from_rational_rows(rows, ambient_dim=n)


def _intersect_with_image(l: ScaledLattice, projector: List[List[Fraction]]) -> ScaledLattice:
    """L cap image(P) for an orthogonal projector P preserving span(L): dual of P(L*)."""
    return dual_lattice(_project_rows(dual_lattice(l), projector))


def eigenlattice(l: ScaledLattice, t: Involution, sign: int) -> ScaledLattice:
    """
    Eigenlattice L^+ (sign=+1) or L^- (sign=-1) of an involution.

    Raises:
        NotAnIsometry: If t does not preserve l
    """
    if sign not in (1, -1):
        raise InvalidParameter(f"sign must be +1 or -1, got {sign}")
    if not t.preserves(l):
        raise NotAnIsometry("Involution does not preserve the lattice")
    n = l.ambient_dim
    projector = [
        [Fraction((1 if i == j else 0) + sign * t.matrix[i, j], 2) for j in range(n)] for i in range(n)
    ]
    return _intersect_with_image(l, projector)


def defect(l: ScaledLattice, t: Involution) -> int:
    """log2 |L : L^+ + L^-|."""
    plus = eigenlattice(l, t, 1)
    minus = eigenlattice(l, t, -1)
    parts = [x for x in (plus, minus) if x.rank]
    return log2_index(lattice_sum(*parts), l)


def orthogonal_projector(m: ScaledLattice) -> List[List[Fraction]]:
    """Orthogonal projection of the ambient space onto span(m): B^T (B B^T)^-1 B."""
    n = m.ambient_dim
    if m.rank == 0:
        return [[Fraction(0)] * n for _ in range(n)]
    num, den = integer_inverse(m.gram_int)
    b = m.basis
    left = num @ b
    return [
        [Fraction(sum(b[k, i] * left[k, j] for k in range(m.rank)), den) for j in range(n)]
        for i in range(n)
    ]


def orthogonal_complement(m: ScaledLattice, l: ScaledLattice) -> ScaledLattice:
    """M^perp: vectors of l orthogonal to m."""
    n = l.ambient_dim
    p = orthogonal_projector(m)
    q = [[(1 if i == j else 0) - p[i][j] for j in range(n)] for i in range(n)]
    if not any(x for row in q for x in row):
        return ScaledLattice(IntMatrix(0, n, ()), 0)
    return _intersect_with_image(l, q)


def _require_sublattice(m: ScaledLattice, l: ScaledLattice) -> None:
    if not is_sublattice(m, l):
        raise NotASublattice(f"Rank-{m.rank} lattice is not a sublattice of the rank-{l.rank} lattice")


def is_ssd(m: ScaledLattice, l: ScaledLattice) -> bool:
    """2M* <= M <= M*."""
    _require_sublattice(m, l)
    if not m.is_integral:
        return False
    return is_sublattice(dual_lattice(m).scaled(1), m)


def is_rssd(m: ScaledLattice, l: ScaledLattice) -> bool:
    """2L <= M + M^perp."""
    _require_sublattice(m, l)
    perp = orthogonal_complement(m, l)
    parts = [x for x in (m, perp) if x.rank]
    if not parts:
        return l.rank == 0
    return is_sublattice(l.scaled(1), lattice_sum(*parts))


def ssd_involution(m: ScaledLattice, l: ScaledLattice) -> Involution:
    """
    The involution acting as -1 on span(m) and +1 on its complement.

    Raises:
        NotASublattice: If m is not inside l
        NotAnIsometry: If the involution is not integral or does not preserve l
    """
    _require_sublattice(m, l)
    n = l.ambient_dim
    p = orthogonal_projector(m)
    entries = []
    for i in range(n):
        for j in range(n):
            x = (1 if i == j else 0) - 2 * p[i][j]
            if x.denominator != 1:
                raise NotAnIsometry("Involution of this sublattice is not integral in ambient coordinates")
            entries.append(int(x))
    t = Involution(IntMatrix(n, n, tuple(entries)))
    if not t.preserves(l):
        raise NotAnIsometry("Involution of this sublattice does not preserve the lattice")
    return t


__all__ = [
    "ScaledLattice",
    "MembershipOracle",
    "Involution",
    "DecompositionResult",
    "contains_vectors",
    "is_sublattice",
    "same_lattice",
    "index",
    "log2_index",
    "lattice_sum",
    "direct_sum",
    "dual_lattice",
    "intersect",
    "project_coordinates",
    "restrict_to_coordinates",
    "embed_coordinates",
    "discriminant_invariants",
    "lattice_coordinates",
    "quotient_rank",
    "lattice_from_code",
    "eigenlattice",
    "defect",
    "orthogonal_projector",
    "orthogonal_complement",
    "is_ssd",
    "is_rssd",
    "ssd_involution",
]

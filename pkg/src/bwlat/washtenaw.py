"""
2-special lattices, Washtenawizations and the Washtenaw series.

A 2-special lattice carries an endomorphism p with (xp, yp) = 2(x, y),
Lp^2 = 2L and L* = Lp^-r. Every lattice built here keeps p = 1 - F for the
pairwise rotation F, so twists reuse the Barnes-Wall pairwise kernel.

A Washtenawization glues 2^t copies of a normalized lattice M along a
doubly even, self-orthogonal, indecomposable code C of length 2^t:

    W = (M_1 + ... + M_2^t)[1-r] + {(c_1 x, ..., c_2^t x) : c in C, x in M[-r]}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Tuple
import logging

import numpy as np

from .barnes_wall import BWLattice, Fourvolution, build_bw, twist_rows
from .config import get_max_rank
from .enumeration import certified_short_vectors, minimum_norm
from .errors import (
    CodeNotAdmissible,
    InvalidParameter,
    NoDualityLevel,
    NotNormalized,
    ResourceCap,
    TooLarge,
)
from .exact_algebra import IntMatrix
from .gf2_codes import (
    BinaryCode,
    extended_hamming,
    indecomposable_doubly_even,
    is_admissible_gluing_code,
    pivots,
    reduced_basis,
)
from .lattice_core import (
    ScaledLattice,
    direct_sum,
    dual_lattice,
    is_sublattice,
    quotient_rank,
    same_lattice,
)
from .minimal_vectors import minimal_vectors_structural

# Set up logging
logger = logging.getLogger(__name__)

# Exact coordinate work for Washtenaw ratios is limited to this rank
MAX_RATIO_RANK = 128

# 2-special conditions are re-checked by exact duals up to this rank
MAX_TWO_SPECIAL_CHECK_RANK = 64

CHECKED_TWO_SPECIAL = "2-special conditions: checked"
INHERITED_TWO_SPECIAL = "2-special conditions: inherited from the construction"
ACCEPTED_MICHIGAN = "Michigan automorphism conditions: accepted for Barnes-Wall ancestry"


def _twist_with(l: ScaledLattice, p: IntMatrix, k: int, pairwise: bool) -> ScaledLattice:
    if pairwise:
        arr, e = twist_rows(l.basis.to_numpy(object), k, l.denom_exp)
        return ScaledLattice(IntMatrix.from_numpy(arr), e).normalized()
    a, b = divmod(k, 2)
    out = l.scaled(a)
    if b:
        out = out.transform(p)
    return out


def _is_pairwise(p: IntMatrix) -> bool:
    return p.rows % 2 == 0 and p == Fourvolution.standard(p.rows).one_minus()


def two_special_claim(l: ScaledLattice, p: IntMatrix, duality_level: int) -> str:
    """
    Provenance line for the 2-special conditions of (l, p).

    Raises:
        NoDualityLevel: If the check runs and does not give duality_level
    """
    if l.rank > MAX_TWO_SPECIAL_CHECK_RANK:
        return INHERITED_TWO_SPECIAL
    found = is_two_special(l, p)
    if found != duality_level:
        raise NoDualityLevel(f"Expected a 2-special lattice of duality level {duality_level}, check gave {found}")
    return CHECKED_TWO_SPECIAL


@dataclass(frozen=True, eq=False)
class TwoSpecialLattice:
    """
    A lattice with its 2-special endomorphism and construction history.

    `bw` is set for Barnes-Wall lattices; `base`, `copies` and `code` for
    Washtenawizations. Plain lattices have neither and fall back to
    exhaustive enumeration for minimal vectors.
    """

    lattice: ScaledLattice
    p: IntMatrix
    duality_level: int
    provenance: Tuple[str, ...] = ()
    bw: Optional[BWLattice] = None
    base: Optional["TwoSpecialLattice"] = None
    copies: int = 1
    code: Optional[BinaryCode] = None
    _twists: Dict[int, ScaledLattice] = field(default_factory=dict, repr=False)

    @classmethod
    def from_bw(cls, bw: BWLattice) -> "TwoSpecialLattice":
        p = bw.fourvolution.one_minus()
        return cls(
            lattice=bw.lattice,
            p=p,
            duality_level=bw.duality_level,
            provenance=(two_special_claim(bw.lattice, p, bw.duality_level), ACCEPTED_MICHIGAN),
            bw=bw,
        )

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def ambient_dim(self) -> int:
        return self.lattice.ambient_dim

    @property
    def is_normalized(self) -> bool:
        return self.duality_level in (0, 1)

    @cached_property
    def pairwise(self) -> bool:
        return _is_pairwise(self.p)

    def twist(self, k: int) -> ScaledLattice:
        if k == 0:
            return self.lattice
        if self.bw is not None:
            return self.bw.twist(k)
        if k not in self._twists:
            self._twists[k] = _twist_with(self.lattice, self.p, k, self.pairwise)
        return self._twists[k]

    @cached_property
    def minimum(self) -> Fraction:
        """mu(L), from the construction history when there is one."""
        if self.bw is not None:
            return Fraction(self.bw.minimum)
        if self.base is not None:
            return self.base.minimum * Fraction(2) ** (1 - self.base.duality_level)
        if self.rank > 24:
            raise TooLarge(f"Minimum of a plain rank-{self.rank} lattice is out of scale")
        return minimum_norm(self.lattice)

    @cached_property
    def expected_ratio(self) -> Fraction:
        """Washtenaw ratio predicted by the history: 1 for BW, halved per gluing."""
        if self.bw is not None:
            return Fraction(1)
        if self.base is not None:
            return self.base.expected_ratio / 2
        return washtenaw_data(self).washtenaw_ratio

    def minimal_vectors(self, k: int = 0) -> Tuple[np.ndarray, int]:
        """mv(L[k]) as integer rows and their denominator exponent."""
        if self.bw is not None:
            stream = minimal_vectors_structural(self.bw, k)
            return stream.to_array(), stream.denom_exp
        if self.base is not None:
            rows, e = self.base.minimal_vectors(k + 1 - self.base.duality_level)
            a = self.base.ambient_dim
            out = np.zeros((self.copies * len(rows), self.copies * a), dtype=rows.dtype)
            for i in range(self.copies):
                out[i * len(rows):(i + 1) * len(rows), i * a:(i + 1) * a] = rows
            return out, e
        target = self.twist(k)
        short = certified_short_vectors(target, self.minimum * Fraction(2) ** k).minimal()
        return short.vectors, short.denom_exp

    def smv(self, k: int = 0) -> ScaledLattice:
        """Span of the minimal vectors of L[k]."""
        if self.bw is not None:
            return self.twist(k)
        if self.base is not None:
            block = self.base.smv(k + 1 - self.base.duality_level)
            return direct_sum(*([block] * self.copies))
        rows, e = self.minimal_vectors(k)
        return ScaledLattice.from_generators(
            [[int(x) for x in r] for r in rows], e, ambient_dim=self.ambient_dim
        )


def is_two_special(l: ScaledLattice, p: IntMatrix) -> Optional[int]:
    """
    The duality level r when p is a 2-special endomorphism of l, else None.

    r is read off det(L)^2 = 2^(r rank) and then confirmed by L* = Lp^-r.
    """
    if not p.is_square() or p.rows != l.ambient_dim:
        return None
    bp = l.basis @ p
    if bp @ bp.transpose() != l.gram_int.scale(2):
        return None
    lp = ScaledLattice(bp, l.denom_exp).normalized()
    if not is_sublattice(lp, l):
        return None
    if not same_lattice(lp.transform(p), l.scaled(1)):
        return None

    det_sq = l.determinant ** 2
    if det_sq.denominator != 1:
        return None
    n = det_sq.numerator
    if n & (n - 1):
        return None
    exp = n.bit_length() - 1
    if exp % l.rank:
        return None
    r = exp // l.rank
    # Lp^-1 = Lp / 2 since Lp^2 = 2L
    candidate = lp.scaled(-((r + 1) // 2)) if r % 2 else l.scaled(-(r // 2))
    if not same_lattice(dual_lattice(l), candidate):
        return None
    return r


@dataclass(frozen=True)
class WashtenawData:
    base: TwoSpecialLattice
    mvd: int
    washtenaw_ratio: Fraction


def washtenaw_data(l: TwoSpecialLattice) -> WashtenawData:
    """
    mvd = dim (SMV + L[1]) / L[1] and the ratio 2 mvd / rank.

    Raises:
        TooLarge: Above MAX_RATIO_RANK
    """
    if l.rank > MAX_RATIO_RANK:
        raise TooLarge(f"Washtenaw data is computed up to rank {MAX_RATIO_RANK}")
    smv = l.smv(0)
    mvd = quotient_rank(l.lattice, l.twist(1), smv.basis.to_rows(), smv.denom_exp)
    ratio = Fraction(2 * mvd, l.rank)
    logger.info(f"Washtenaw data: rank {l.rank}, mvd {mvd}, ratio {ratio}")
    return WashtenawData(l, mvd, ratio)


def _block_repeat(p: IntMatrix, copies: int) -> IntMatrix:
    n = p.rows * copies
    entries = [0] * (n * n)
    for c in range(copies):
        off = c * p.rows
        for i in range(p.rows):
            for j in range(p.cols):
                entries[(off + i) * n + off + j] = p[i, j]
    return IntMatrix(n, n, tuple(entries))


def washtenawize(m: TwoSpecialLattice, code: BinaryCode) -> TwoSpecialLattice:
    """
    Glue code.length copies of m along the code.

    Raises:
        NotNormalized: If m has duality level outside {0, 1}
        CodeNotAdmissible: If the code is not doubly even, self-orthogonal
            and indecomposable, or its length is not 2^t with t >= 3
    """
    if not m.is_normalized:
        raise NotNormalized(f"Duality level {m.duality_level} is not 0 or 1")
    n = code.length
    if n < 8 or n & (n - 1):
        raise CodeNotAdmissible(f"Gluing codes need length 2^t with t >= 3, got {n}")
    if not is_admissible_gluing_code(code):
        raise CodeNotAdmissible("Gluing code must be doubly even, self-orthogonal and indecomposable")
    total = n * m.rank
    if total > get_max_rank():
        raise ResourceCap(f"Washtenawization of rank {total} exceeds the rank cap")

    r = m.duality_level
    wide = m.twist(-r)
    narrow = m.twist(1 - r)
    e = max(wide.denom_exp, narrow.denom_exp)
    a = m.ambient_dim
    gens = reduced_basis(code.generators)
    piv = set(pivots(gens))

    rows: List[List[int]] = []
    for g in gens:
        for c in wide.rows_at(e):
            row = [0] * (n * a)
            for i in range(n):
                if (g >> i) & 1:
                    row[i * a:(i + 1) * a] = c
            rows.append(row)
    for i in range(n):
        if i in piv:
            continue
        for b in narrow.rows_at(e):
            row = [0] * (n * a)
            row[i * a:(i + 1) * a] = b
            rows.append(row)
    lattice = ScaledLattice(IntMatrix.from_rows(rows, cols=n * a), e).normalized()
    p = Fourvolution.standard(n * a).one_minus() if m.pairwise else _block_repeat(m.p, n)

    degree = n.bit_length() - 1
    inherited = tuple(x for x in m.provenance if x not in (CHECKED_TWO_SPECIAL, INHERITED_TWO_SPECIAL))
    logger.info(f"Washtenawization of degree {degree}: rank {m.rank} -> {lattice.rank}")
    return TwoSpecialLattice(
        lattice=lattice,
        p=p,
        duality_level=1 - r,
        provenance=inherited + (two_special_claim(lattice, p, 1 - r), f"Washtenawization of degree {degree}"),
        base=m,
        copies=n,
        code=code,
    )


def minimal_washtenawization(m: TwoSpecialLattice) -> TwoSpecialLattice:
    return washtenawize(m, extended_hamming(3))


def washtenaw_series(j: int, k: int, allow_below_bound: bool = False) -> TwoSpecialLattice:
    """
    W(k) of the j-Washtenaw series: rank 2^k, ratio 2^-j, duality level 1.

    Even k starts from BW_(k-3j) and applies j minimal Washtenawizations.
    Odd k starts from BW_(k-3j-1), applies j-1 minimal ones and finishes with
    a degree-4 Washtenawization. With allow_below_bound the recipe also runs
    for k < 5 + 3j and the result is flagged as a desk-scale analogue.

    Raises:
        ResourceCap: If 2^k exceeds the rank cap
    """
    if j < 1:
        raise InvalidParameter(f"j must be at least 1, got {j}")
    below = k < 5 + 3 * j
    if below and not allow_below_bound:
        raise InvalidParameter(f"The {j}-Washtenaw series starts at k = {5 + 3 * j}, got {k}")
    if (1 << k) > get_max_rank():
        raise ResourceCap(f"W({k}) has rank 2^{k}, above the rank cap")
    e = k - 3 * j if k % 2 == 0 else k - 3 * j - 1
    if e < 1:
        raise InvalidParameter(f"Series member W({k}) would start below BW level 1")

    w = TwoSpecialLattice.from_bw(build_bw(e))
    minimal_steps = j if k % 2 == 0 else j - 1
    for _ in range(minimal_steps):
        w = minimal_washtenawization(w)
    if k % 2:
        w = washtenawize(w, indecomposable_doubly_even(4))
    if below:
        w = TwoSpecialLattice(
            lattice=w.lattice,
            p=w.p,
            duality_level=w.duality_level,
            provenance=w.provenance + ("desk-scale analogue below the series bound",),
            base=w.base,
            copies=w.copies,
            code=w.code,
        )
    return w


__all__ = [
    "TwoSpecialLattice",
    "WashtenawData",
    "is_two_special",
    "washtenaw_data",
    "washtenawize",
    "minimal_washtenawization",
    "washtenaw_series",
]

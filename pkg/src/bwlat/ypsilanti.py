"""
Ypsilanti lattices: even unimodular gluings of two level-1 lattices along
an isometry of their discriminant quadratic spaces.

For a 2-special M of duality level 1 the section X = M[-1]/M is a
nondegenerate quadratic space over GF(2) with Q(x + M) = (x, x) mod 2.
Given an isometry zeta: X_1 -> X_2,

    L(zeta) = {(x_1, x_2) in M_1[-1] + M_2[-1] : x_2 + M_2 = zeta(x_1 + M_1)}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from .config import DEFAULT_SEED
from .errors import InvalidParameter, NotNormalized
from .exact_algebra import IntMatrix
from .gf2_codes import pivots, reduced_basis
from .lattice_core import ScaledLattice, lattice_coordinates, restrict_to_coordinates, same_lattice
from .quadratic_f2 import (
    AvoidingMap,
    Matrix,
    QuadraticSpaceF2,
    apply,
    compose,
    require_isometry,
    sample_avoiding_map,
)
from .washtenaw import TwoSpecialLattice, minimal_washtenawization
from .barnes_wall import build_bw

# Set up logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DiscriminantSection:
    """
    M[-1]/M with coordinates: the free columns of the basis of M[-1] modulo
    the mod-2 image of M.
    """

    owner: TwoSpecialLattice
    wide: ScaledLattice
    reduction: Tuple[int, ...]
    free: Tuple[int, ...]
    space: QuadraticSpaceF2

    @property
    def dim(self) -> int:
        return len(self.free)

    def reduce(self, mask: int) -> int:
        """Section coordinates of a vector of M[-1] given by its basis coordinates mod 2."""
        for r in self.reduction:
            if mask & (r & -r):
                mask ^= r
        out = 0
        for j, col in enumerate(self.free):
            if (mask >> col) & 1:
                out |= 1 << j
        return out

    def coordinates(self, vectors, denom_exp: int) -> List[int]:
        out = []
        for c in lattice_coordinates(self.wide, vectors, denom_exp):
            out.append(self.reduce(sum(1 << j for j, x in enumerate(c) if x % 2)))
        return out

    def lift(self, xi: int, denom_exp: int) -> List[int]:
        """A representative in M[-1] of the coset xi, at denom_exp."""
        rows = self.wide.rows_at(denom_exp)
        out = [0] * self.wide.ambient_dim
        for j, col in enumerate(self.free):
            if (xi >> j) & 1:
                out = [a + b for a, b in zip(out, rows[col])]
        return out

    @cached_property
    def _minimal(self) -> Tuple[Dict[int, np.ndarray], int]:
        rows, e = self.owner.minimal_vectors(-1)
        out: Dict[int, np.ndarray] = {}
        if len(rows):
            for xi, v in zip(self.coordinates(rows, e), rows):
                out.setdefault(xi, v)
        return out, e

    @property
    def minimal_cosets(self) -> Dict[int, np.ndarray]:
        """Coset of each minimal vector of M[-1], with one representative."""
        return self._minimal[0]

    @property
    def minimal_vector_exp(self) -> int:
        return self._minimal[1]

    def smv_section(self) -> Tuple[int, ...]:
        """Image of SMV(M[-1]) in the section."""
        smv = self.owner.smv(-1)
        return reduced_basis(self.coordinates(smv.basis.to_rows(), smv.denom_exp))


def _true_dot(a: Sequence[int], b: Sequence[int], e: int) -> Fraction:
    return Fraction(sum(int(x) * int(y) for x, y in zip(a, b)), 1 << (2 * e))


def discriminant_section(m: TwoSpecialLattice) -> DiscriminantSection:
    """
    Raises:
        NotNormalized: If m does not have duality level 1
    """
    if m.duality_level != 1:
        raise NotNormalized(f"Discriminant sections need duality level 1, got {m.duality_level}")
    wide = m.twist(-1)
    coords = lattice_coordinates(wide, m.lattice.basis.to_rows(), m.lattice.denom_exp)
    masks = [sum(1 << j for j, x in enumerate(c) if x % 2) for c in coords]
    reduction = reduced_basis(masks)
    piv = set(pivots(reduction))
    free = tuple(j for j in range(wide.rank) if j not in piv)

    e = wide.denom_exp
    rows = wide.rows_at(e)
    lifts = [rows[c] for c in free]
    q_basis = []
    polar = []
    for i, x in enumerate(lifts):
        norm = _true_dot(x, x, e)
        if norm.denominator != 1:
            raise InvalidParameter("Section representatives must have integral norm")
        q_basis.append(norm.numerator % 2)
        mask = 0
        for j, y in enumerate(lifts):
            two_dot = 2 * _true_dot(x, y, e)
            if i != j and two_dot.numerator % 2:
                mask |= 1 << j
        polar.append(mask)
    space = QuadraticSpaceF2(len(free), tuple(q_basis), tuple(polar))
    logger.debug(f"Discriminant section of dimension {space.dim}, type {space.witt_type()}")
    return DiscriminantSection(m, wide, reduction, free, space)


@dataclass(frozen=True, eq=False)
class YpsilantiLattice:
    lattice: ScaledLattice
    m1: TwoSpecialLattice
    m2: TwoSpecialLattice
    section1: DiscriminantSection
    section2: DiscriminantSection
    zeta: Matrix
    forced_nonavoiding: bool = False
    provenance: Tuple[str, ...] = ()

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def is_even(self) -> bool:
        return self.lattice.is_even

    @property
    def is_unimodular(self) -> bool:
        return self.lattice.determinant == 1

    def constituents_match(self) -> bool:
        """L cap V_i = M_i for both halves."""
        a = self.m1.ambient_dim
        first = restrict_to_coordinates(self.lattice, list(range(a)))
        second = restrict_to_coordinates(self.lattice, list(range(a, a + self.m2.ambient_dim)))
        return same_lattice(first, self.m1.lattice) and same_lattice(second, self.m2.lattice)


def _force_match(s1: DiscriminantSection, s2: DiscriminantSection, zeta: Matrix) -> Matrix:
    """Compose zeta with a reflection so one minimal coset pair is matched."""
    cosets1 = sorted(s1.minimal_cosets)
    cosets2 = sorted(s2.minimal_cosets)
    if not cosets1 or not cosets2:
        raise InvalidParameter("No minimal cosets to match")
    space = s2.space
    for u in cosets1:
        image = apply(zeta, u)
        if image in s2.minimal_cosets:
            return zeta
        for w in cosets2:
            v = image ^ w
            if space.beta(image, w) and space.q(v) == 1:
                return compose(zeta, space.reflection(v))
    raise InvalidParameter("Could not match a minimal coset pair with one reflection")


def build_ypsilanti(
    m1: TwoSpecialLattice,
    m2: TwoSpecialLattice,
    zeta: AvoidingMap,
    force_nonavoiding: bool = False,
) -> YpsilantiLattice:
    """
    Glue M_1[-1] and M_2[-1] along zeta.

    Raises:
        NotNormalized: If either lattice has duality level other than 1
        NotIsometry: If zeta does not preserve the section quadratic forms
    """
    if m1.rank != m2.rank:
        raise InvalidParameter(f"Constituents must have equal rank, got {m1.rank} and {m2.rank}")
    s1 = discriminant_section(m1)
    s2 = discriminant_section(m2)
    z = zeta.zeta
    if force_nonavoiding:
        z = _force_match(s1, s2, z)
    require_isometry(s1.space, s2.space, z)

    e = max(s1.wide.denom_exp, s2.wide.denom_exp, m2.lattice.denom_exp)
    a1, a2 = m1.ambient_dim, m2.ambient_dim
    rows: List[List[int]] = []
    for i, c in enumerate(s1.wide.rows_at(e)):
        xi = s1.reduce(1 << i)
        rows.append(c + s2.lift(apply(z, xi), e))
    for b in m2.lattice.rows_at(e):
        rows.append([0] * a1 + b)
    lattice = ScaledLattice(IntMatrix.from_rows(rows, cols=a1 + a2), e).normalized()
    logger.info(f"Ypsilanti gluing: rank {lattice.rank}, forced match={force_nonavoiding}")
    return YpsilantiLattice(
        lattice=lattice,
        m1=m1,
        m2=m2,
        section1=s1,
        section2=s2,
        zeta=z,
        forced_nonavoiding=force_nonavoiding,
        provenance=m1.provenance,
    )


def separation_witness(n: YpsilantiLattice) -> Optional[Tuple[np.ndarray, int]]:
    """A vector (x_1, x_2) with x_i minimal in M_i[-1] and matched by zeta, if any."""
    c1 = n.section1.minimal_cosets
    c2 = n.section2.minimal_cosets
    e1 = n.section1.minimal_vector_exp
    e2 = n.section2.minimal_vector_exp
    for xi, v1 in c1.items():
        target = apply(n.zeta, xi)
        if target in c2:
            v2 = c2[target]
            e = max(e1, e2)
            left = np.asarray(v1, dtype=object) * (1 << (e - e1))
            right = np.asarray(v2, dtype=object) * (1 << (e - e2))
            return np.concatenate([left, right]), e
    return None


def smv_separation_check(n: YpsilantiLattice) -> bool:
    """No minimal coset of M_1[-1]/M_1 is carried by zeta onto a minimal coset of M_2[-1]/M_2."""
    return separation_witness(n) is None


def sample_ypsilanti_map(m1: TwoSpecialLattice, m2: TwoSpecialLattice, seed: int = DEFAULT_SEED) -> AvoidingMap:
    """An isometry of sections avoiding the SMV sections, by rejection sampling."""
    s1 = discriminant_section(m1)
    s2 = discriminant_section(m2)
    if s1.space != s2.space:
        raise InvalidParameter("Sampling needs identical section coordinates (copies of one lattice)")
    return sample_avoiding_map(s1.space, s1.smv_section(), s2.smv_section(), seed=seed)


def desk_scale_ypsilanti(seed: int = DEFAULT_SEED, negative_control: bool = False) -> YpsilantiLattice:
    """Rank-128 gluing of two copies of the minimal Washtenawization of BW_3."""
    w = minimal_washtenawization(TwoSpecialLattice.from_bw(build_bw(3)))
    zeta = sample_ypsilanti_map(w, w, seed)
    out = build_ypsilanti(w, w, zeta, force_nonavoiding=negative_control)
    return YpsilantiLattice(
        lattice=out.lattice,
        m1=out.m1,
        m2=out.m2,
        section1=out.section1,
        section2=out.section2,
        zeta=out.zeta,
        forced_nonavoiding=out.forced_nonavoiding,
        provenance=out.provenance + ("desk-scale analogue", f"seed {seed}", f"attempts {zeta.attempts}"),
    )


__all__ = [
    "DiscriminantSection",
    "YpsilantiLattice",
    "discriminant_section",
    "build_ypsilanti",
    "separation_witness",
    "smv_separation_check",
    "sample_ypsilanti_map",
    "desk_scale_ypsilanti",
]

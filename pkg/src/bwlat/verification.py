"""
Verification suites for Barnes-Wall lattices and the gluings built from them.

Reports are plain text with one `KEY: value` per line. Every check that
fails names the invariant and the statement it comes from, taken from
INVARIANT_ANCHORS.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional
import logging

from .barnes_wall import (
    BWLattice,
    build_bw,
    duality_level,
    generation_checks,
    lower_group_closure,
    minimal_vector_count,
    twist_compatibility,
)
from .config import DEFAULT_SEED, MAX_LOWER_GROUP_LEVEL, MAX_SVP_RANK
from .enumeration import minimum_norm
from .errors import InvalidParameter
from .lattice_core import discriminant_invariants, log2_index, direct_sum
from .minimal_vectors import (
    attained_exponent_interval,
    check_labeling,
    exhaustive_agreement,
    minimal_vectors_structural,
    realized_dot_exponents,
    standard_labeling,
    verify_structural,
)
from .washtenaw import TwoSpecialLattice, washtenaw_data
from .ypsilanti import YpsilantiLattice, smv_separation_check

# Set up logging
logger = logging.getLogger(__name__)

SUITES = ("quick", "full")

# Minimal-vector counts of BW_d, d = 1..6
EXPECTED_COUNTS = {1: 4, 2: 24, 3: 240, 4: 4320, 5: 146880, 6: 9694080}

INVARIANT_ANCHORS: Dict[str, str] = {
    "rank": "BW_d has rank 2^d",
    "duality_level": "BW_d* = BW_d[-r] with r = (d + 1) mod 2",
    "even": "BW_d is even for d >= 2",
    "minimum": "The minimum norm of BW_d is 2^floor(d/2)",
    "count": "The number of minimal vectors is (2^d + 2)(2^(d-1) + 2)...(2 + 2)",
    "discriminant": "The discriminant group is trivial for odd d and elementary abelian of rank 2^(d-1) for even d",
    "structural": "Every structural vector is a lattice vector of the minimum norm",
    "svp_agreement": "The structural minimal vectors are all the minimal vectors",
    "generation": "3/4-generation, 2/4-generation and commutator density",
    "lower_group": "The lower group has order 2^(1+2d) and acts trivially on L/L[1]",
    "dot_exponents": "Inner products of minimal vectors of L[p], L[q] are 0 or +-2^k for k in the exponent interval",
    "labeling": "Supports of minimal vectors are affine subspaces under the labeling",
    "twist_compatibility": "M_i[1-r] cap L[j] = M_i[1-r+j]",
    "washtenaw_level": "The duality level of a Washtenawization is 1 - r",
    "washtenaw_ratio": "Washtenawization halves the Washtenaw ratio",
    "washtenaw_index": "W / (M_1 + ... + M_2^t)[1-r] is elementary abelian of dimension 2^(t-2) rank(M)",
    "ypsilanti_even": "Ypsilanti lattices are even",
    "ypsilanti_unimodular": "Ypsilanti lattices are unimodular",
    "ypsilanti_separation": "SMV(N) = SMV(M_1) + SMV(M_2) when the gluing map avoids",
}


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    observed: object

    @property
    def passed(self) -> bool:
        return self.expected == self.observed

    @property
    def anchor(self) -> str:
        return INVARIANT_ANCHORS.get(self.name, "")


@dataclass
class VerificationReport:
    subject: str
    suite: str
    values: Dict[str, str] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)

    def record(self, key: str, value) -> None:
        self.values[key] = str(value)

    def check(self, name: str, expected, observed) -> bool:
        c = Check(name, expected, observed)
        self.checks.append(c)
        if not c.passed:
            logger.warning(f"{self.subject}: {name} expected {expected}, got {observed}")
        return c.passed

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def render(self) -> str:
        lines = [f"SUBJECT: {self.subject}", f"SUITE: {self.suite}"]
        lines.extend(f"{k.upper()}: {v}" for k, v in self.values.items())
        for c in self.checks:
            if c.passed:
                lines.append(f"CHECK {c.name}: ok")
            else:
                lines.append(f"CHECK {c.name}: FAIL expected {c.expected} got {c.observed}")
                lines.append(f"ANCHOR {c.name}: {c.anchor}")
        lines.append(f"RESULT: {'verified' if self.passed else 'failed'}")
        return "\n".join(lines) + "\n"


def _power_of_two(x: int) -> str:
    return f"2^{x.bit_length() - 1}" if x > 0 and x & (x - 1) == 0 else str(x)


def _expected_discriminant(d: int) -> tuple:
    return () if d % 2 else (2,) * (1 << (d - 1))


def verify_bw(
    d: int,
    suite: str = "quick",
    seed: int = DEFAULT_SEED,
    sample: Optional[int] = None,
    lattice: Optional[BWLattice] = None,
) -> VerificationReport:
    """
    Run the quick or full suite on BW_d.

    Args:
        d: Barnes-Wall level
        suite: "quick" (construction invariants) or "full" (adds enumeration checks)
        seed: Seed for sampled membership checks
        sample: Sample size for membership checks above level 5 (full suite)
        lattice: An already built BW_d (optional, built here otherwise)

    Returns:
        The report; `passed` is False when any invariant fails
    """
    if suite not in SUITES:
        raise InvalidParameter(f"Unknown suite {suite!r}; choose from {SUITES}")
    logger.info(f"Running {suite} suite on BW_{d}")
    if lattice is not None and lattice.d != d:
        raise InvalidParameter(f"Given lattice is BW_{lattice.d}, not BW_{d}")
    l = lattice if lattice is not None else build_bw(d)
    report = VerificationReport(f"BW_{d}", suite)

    report.record("level", d)
    report.record("rank", l.rank)
    report.check("rank", 1 << d, l.rank)

    r = duality_level(l)
    report.record("duality_level", r)
    report.check("duality_level", (d + 1) % 2, r)
    report.record("determinant", l.lattice.determinant)
    if d >= 2:
        report.check("even", True, l.lattice.is_even)

    stream = minimal_vectors_structural(l, 0)
    report.record("mu", stream.norm)
    report.check("minimum", Fraction(l.minimum), stream.norm)
    report.record("count", stream.count)
    report.check("count", EXPECTED_COUNTS.get(d, minimal_vector_count(d)), stream.count)

    if l.rank <= 64:
        snf = discriminant_invariants(l.lattice)
        report.record("discriminant", _power_of_two(snf.order))
        report.check("discriminant", _expected_discriminant(d), snf.nontrivial)

    if suite == "full":
        _full_checks(l, report, seed, sample)
    return report


def _full_checks(l, report: VerificationReport, seed: int, sample: Optional[int]) -> None:
    d = l.d
    if sample is None and d > 5:
        sample = 100000
    v = verify_structural(l, 0, sample=sample, seed=seed)
    report.record("streamed", v.count)
    report.check("structural", True, v.passed)
    report.check("count", minimal_vector_count(d), v.count)

    if 2 <= d and l.rank <= MAX_SVP_RANK:
        report.check("minimum", Fraction(l.minimum), minimum_norm(l.lattice))
        report.check("svp_agreement", True, exhaustive_agreement(l))
    if 2 <= d <= 5:
        report.check("generation", True, generation_checks(l).all_hold)
        report.check("twist_compatibility", True, twist_compatibility(l, 1))
    if 2 <= d <= MAX_LOWER_GROUP_LEVEL:
        lg = lower_group_closure(l)
        report.record("lower_group_order", lg.order)
        report.check("lower_group", (1 << (1 + 2 * d), True), (lg.order, lg.trivial_on_quotient))
        report.check("labeling", True, check_labeling(l, standard_labeling(l)))
    if 3 <= d <= 4:
        for p in (-1, 0, 1):
            for q in (-1, 0, 1):
                exps, zero, clean = realized_dot_exponents(l, p, q)
                expected = set(attained_exponent_interval(d, p, q).values)
                report.check("dot_exponents", (True, True, expected), (zero, clean, exps))


def verify_washtenaw(w: TwoSpecialLattice, suite: str = "quick") -> VerificationReport:
    """Checks on a Washtenawization against its base."""
    if w.base is None:
        raise InvalidParameter("Lattice has no Washtenawization history")
    m = w.base
    report = VerificationReport(f"Washtenawization of rank {w.rank}", suite)
    report.record("rank", w.rank)
    report.record("copies", w.copies)
    report.record("duality_level", w.duality_level)
    report.record("provenance", "; ".join(w.provenance))
    report.check("washtenaw_level", 1 - m.duality_level, w.duality_level)
    report.record("even", w.lattice.is_even)
    report.record("mu", w.minimum)

    t = w.copies.bit_length() - 1
    glued = direct_sum(*([m.twist(1 - m.duality_level)] * w.copies))
    idx = log2_index(glued, w.lattice)
    report.record("index", f"2^{idx}")
    report.check("washtenaw_index", (1 << (t - 2)) * m.rank, idx)

    if suite == "full" or w.rank <= 64:
        data = washtenaw_data(w)
        report.record("mvd", data.mvd)
        report.record("washtenaw_ratio", data.washtenaw_ratio)
        report.check("washtenaw_ratio", w.expected_ratio, data.washtenaw_ratio)
    return report


def verify_ypsilanti(y: YpsilantiLattice, suite: str = "quick") -> VerificationReport:
    report = VerificationReport(f"Ypsilanti gluing of rank {y.rank}", suite)
    report.record("rank", y.rank)
    report.record("provenance", "; ".join(y.provenance))
    report.record("determinant", y.lattice.determinant)
    report.check("ypsilanti_even", True, y.is_even)
    report.check("ypsilanti_unimodular", True, y.is_unimodular)
    separated = smv_separation_check(y)
    report.record("separation", "pass" if separated else "fail")
    report.check("ypsilanti_separation", not y.forced_nonavoiding, separated)
    if suite == "full":
        report.check("twist_compatibility", True, y.constituents_match())
    return report


__all__ = [
    "INVARIANT_ANCHORS",
    "SUITES",
    "Check",
    "VerificationReport",
    "verify_bw",
    "verify_washtenaw",
    "verify_ypsilanti",
]

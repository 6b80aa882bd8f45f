"""
Ypsilanti certificates: a lattice file followed by a `certificate` block.

    certificate
    constituent: <recipe name>
    rank: <rank>
    determinant: <det>
    even: true|false
    separation: pass|fail
    seed: <seed>
    attempts: <attempts>
    zeta <dim>
    <dim bit rows; character i of row j is bit i of zeta(e_j)>

Every line can be re-derived: the constituent recipe is rebuilt, the
lattice is re-glued along zeta and compared with the stored basis.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, Union
import logging

from ..barnes_wall import build_bw
from ..errors import BwlatError, FormatError
from ..gf2_codes import bits_from_string, bits_to_string
from ..lattice_core import ScaledLattice, same_lattice
from ..quadratic_f2 import AvoidingMap
from ..washtenaw import TwoSpecialLattice, minimal_washtenawization
from ..ypsilanti import YpsilantiLattice, build_ypsilanti, smv_separation_check
from .lattice_file import format_lattice, parse_lattice_lines

# Set up logging
logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

DESK_SCALE_CONSTITUENT = "washtenaw-bw3"


def _washtenaw_bw3() -> TwoSpecialLattice:
    return minimal_washtenawization(TwoSpecialLattice.from_bw(build_bw(3)))


CONSTITUENTS: Dict[str, Callable[[], TwoSpecialLattice]] = {
    DESK_SCALE_CONSTITUENT: _washtenaw_bw3,
}


@dataclass(frozen=True)
class Certificate:
    lattice: ScaledLattice
    constituent: str
    rank: int
    determinant: Fraction
    even: bool
    separation: bool
    seed: Optional[int]
    attempts: int
    zeta: Tuple[int, ...]


def certificate_from(y: YpsilantiLattice, seed: Optional[int], attempts: int = 1,
                     constituent: str = DESK_SCALE_CONSTITUENT) -> Certificate:
    return Certificate(
        lattice=y.lattice,
        constituent=constituent,
        rank=y.rank,
        determinant=y.lattice.determinant,
        even=y.is_even,
        separation=smv_separation_check(y),
        seed=seed,
        attempts=attempts,
        zeta=tuple(y.zeta),
    )


def format_certificate(cert: Certificate) -> str:
    dim = len(cert.zeta)
    lines = [
        "certificate",
        f"constituent: {cert.constituent}",
        f"rank: {cert.rank}",
        f"determinant: {cert.determinant}",
        f"even: {'true' if cert.even else 'false'}",
        f"separation: {'pass' if cert.separation else 'fail'}",
        f"seed: {cert.seed if cert.seed is not None else 'none'}",
        f"attempts: {cert.attempts}",
        f"zeta {dim}",
    ]
    lines.extend(bits_to_string(r, dim) for r in cert.zeta)
    return format_lattice(cert.lattice) + "\n".join(lines) + "\n"


def _field(line: str, key: str) -> str:
    prefix = f"{key}:"
    if not line.startswith(prefix):
        raise FormatError(f"Expected '{key}:' line, got {line.strip()!r}")
    return line[len(prefix):].strip()


def _flag(value: str, true: str, false: str, key: str) -> bool:
    if value not in (true, false):
        raise FormatError(f"{key} must be {true} or {false}, got {value!r}")
    return value == true


def parse_certificate(text: str) -> Certificate:
    """
    Raises:
        FormatError: On any malformed line
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    lattice, used = parse_lattice_lines(lines)
    rest = lines[used:]
    if len(rest) < 9 or rest[0].strip() != "certificate":
        raise FormatError("Missing or truncated certificate block")
    try:
        rank = int(_field(rest[2], "rank"))
        determinant = Fraction(_field(rest[3], "determinant"))
        attempts = int(_field(rest[7], "attempts"))
        seed_text = _field(rest[6], "seed")
        seed = None if seed_text == "none" else int(seed_text)
    except ValueError as e:
        raise FormatError(f"Bad certificate value: {e}")
    zeta_header = rest[8].split()
    if len(zeta_header) != 2 or zeta_header[0] != "zeta" or not zeta_header[1].isdigit():
        raise FormatError(f"Bad zeta header: {rest[8].strip()!r}")
    dim = int(zeta_header[1])
    rows = [r.strip() for r in rest[9:]]
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise FormatError(f"zeta must have {dim} rows of {dim} bits")
    try:
        zeta = tuple(bits_from_string(r) for r in rows)
    except BwlatError as e:
        raise FormatError(f"Bad zeta row: {e}")
    return Certificate(
        lattice=lattice,
        constituent=_field(rest[1], "constituent"),
        rank=rank,
        determinant=determinant,
        even=_flag(_field(rest[4], "even"), "true", "false", "even"),
        separation=_flag(_field(rest[5], "separation"), "pass", "fail", "separation"),
        seed=seed,
        attempts=attempts,
        zeta=zeta,
    )


def write_certificate(cert: Certificate, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_certificate(cert))
    logger.info(f"Wrote Ypsilanti certificate to {path}")
    return path


def read_certificate(path: PathLike) -> Certificate:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Certificate not found: {path}")
    return parse_certificate(path.read_text())


@dataclass
class CertificateCheck:
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_certificate(cert: Certificate) -> CertificateCheck:
    """Re-derive every certificate line from the stored lattice and the constituent recipe."""
    check = CertificateCheck()
    l = cert.lattice
    if l.rank != cert.rank:
        check.failures.append(f"rank: stored {cert.rank}, lattice has {l.rank}")
    if l.determinant != cert.determinant:
        check.failures.append(f"determinant: stored {cert.determinant}, computed {l.determinant}")
    if l.is_even != cert.even:
        check.failures.append(f"even: stored {cert.even}, computed {l.is_even}")

    recipe = CONSTITUENTS.get(cert.constituent)
    if recipe is None:
        check.failures.append(f"constituent: unknown recipe {cert.constituent!r}")
        return check
    m = recipe()
    try:
        rebuilt = build_ypsilanti(m, m, AvoidingMap(cert.zeta, cert.attempts, cert.seed))
    except BwlatError as e:
        check.failures.append(f"zeta: {e}")
        return check
    if not same_lattice(rebuilt.lattice, l):
        check.failures.append("lattice: stored basis differs from the gluing along zeta")
    separation = smv_separation_check(rebuilt)
    if separation != cert.separation:
        check.failures.append(f"separation: stored {cert.separation}, computed {separation}")
    logger.info(f"Certificate check: {len(check.failures)} failure(s)")
    return check

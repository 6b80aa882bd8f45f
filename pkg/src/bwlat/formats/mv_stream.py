"""
Minimal-vector stream files: a header `mv <count> <denom_exp>` followed by
one vector per line as space-separated integers (true vector = row / 2^denom_exp).
"""

from pathlib import Path
from typing import Iterable, Tuple, Union
import logging

import numpy as np

from ..errors import FormatError

# Set up logging
logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def write_mv_stream(path: PathLike, count: int, denom_exp: int, chunks: Iterable[np.ndarray]) -> Path:
    """
    Write chunks of integer rows under a header announcing `count`.

    Raises:
        FormatError: If the chunks do not hold exactly `count` rows
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    written = 0
    with path.open("w") as fh:
        fh.write(f"mv {count} {denom_exp}\n")
        for chunk in chunks:
            for row in np.asarray(chunk):
                fh.write(" ".join(str(int(x)) for x in row))
                fh.write("\n")
            written += len(chunk)
    if written != count:
        raise FormatError(f"Header announced {count} vectors but {written} were written")
    logger.info(f"Wrote {written} minimal vectors to {path}")
    return path


def read_mv_stream(path: PathLike) -> Tuple[np.ndarray, int]:
    """
    Returns:
        (rows, denom_exp) with rows as an int64 array

    Raises:
        FormatError: On a bad header, ragged rows or a count mismatch
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Minimal-vector file not found: {path}")
    with path.open() as fh:
        header = fh.readline().split()
        if len(header) != 3 or header[0] != "mv":
            raise FormatError(f"Bad minimal-vector header: {' '.join(header)!r}")
        try:
            count, denom_exp = int(header[1]), int(header[2])
        except ValueError:
            raise FormatError(f"Bad minimal-vector header: {' '.join(header)!r}")
        rows = []
        for line in fh:
            if not line.strip():
                continue
            try:
                rows.append([int(tok) for tok in line.split()])
            except ValueError:
                raise FormatError(f"Non-integer entry in minimal-vector row {len(rows)}")
    if len(rows) != count:
        raise FormatError(f"Header announced {count} vectors, file holds {len(rows)}")
    if rows and len({len(r) for r in rows}) != 1:
        raise FormatError("Minimal-vector rows have different lengths")
    return np.asarray(rows, dtype=np.int64).reshape(count, -1 if rows else 0), denom_exp

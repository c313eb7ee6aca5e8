"""
Named gyrogroup tables and the on-disk catalog directory.

Groups are the degenerate gyrogroups (every gyration is the identity), so the
cyclic, Klein and symmetric tables double as fixtures and as search seeds.
"""

from __future__ import annotations

import hashlib
import logging
from pathlib import Path
from typing import Callable, List, Tuple, Union

import numpy as np
from sympy.combinatorics import PermutationGroup
from sympy.combinatorics.named_groups import SymmetricGroup

from .exceptions import GyroError
from .gyrotable import GyroTable, TableFormat, dump_table, load_table_file

logger = logging.getLogger(__name__)

TABLE_SUFFIXES = (".json", ".txt")


def cyclic_table(n: int) -> GyroTable:
    """Z_n with a⊕b = (a+b) mod n."""
    idx = np.arange(n)
    return GyroTable((idx[:, None] + idx[None, :]) % n, elements=[f"{i}" for i in range(n)])


def klein_table() -> GyroTable:
    """Z2 x Z2 as bitwise xor on 0..3."""
    idx = np.arange(4)
    return GyroTable(idx[:, None] ^ idx[None, :])


def from_permutation_group(group: PermutationGroup) -> GyroTable:
    """Cayley table of a sympy permutation group with the identity at index 0."""
    elements = sorted(group.generate(), key=lambda p: (not p.is_Identity, p.array_form))
    index = {tuple(p.array_form): i for i, p in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.intp)
    for i, p in enumerate(elements):
        for j, q in enumerate(elements):
            table[i, j] = index[tuple((p * q).array_form)]
    names = [str(p.cyclic_form) for p in elements]
    logger.debug(f"Built Cayley table of order {n} from permutation group")
    return GyroTable(table, elements=names)


def symmetric_table(degree: int = 3) -> GyroTable:
    return from_permutation_group(SymmetricGroup(degree))


D8Element = Tuple[int, int, int]


def z2_x_d8() -> Tuple[List[D8Element], Callable[[D8Element, D8Element], D8Element]]:
    """Z2 x D8 as triples (f, i, e) standing for s^f r^i z^e, with s r s = r^-1."""
    elements = [(f, i, e) for f in range(2) for i in range(4) for e in range(2)]

    def mult(x: D8Element, y: D8Element) -> D8Element:
        f1, i1, e1 = x
        f2, i2, e2 = y
        return ((f1 + f2) % 2, ((-1) ** f2 * i1 + i2) % 4, (e1 + e2) % 2)

    return elements, mult


def g8_transversal() -> Tuple[List[D8Element], List[D8Element]]:
    """Left transversal of K = {1, s} in Z2 x D8 carrying the order-8 non-group gyrogroup.

    Labels 0..7 are 1, r^2, sr, sr^3, zs, zsr^2, zsr, zsr^3.
    """
    transversal = [(0, 0, 0), (0, 2, 0), (1, 1, 0), (1, 3, 0), (1, 0, 1), (1, 2, 1), (1, 1, 1), (1, 3, 1)]
    subgroup = [(0, 0, 0), (1, 0, 0)]
    return transversal, subgroup


def table_digest(G: GyroTable) -> str:
    return hashlib.sha1(G.table.astype(np.int64).tobytes()).hexdigest()[:12]


def write_table(G: GyroTable, directory: Union[str, Path], name: str = "") -> Path:
    """Write G as JSON into directory; the default file name is order plus table digest."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{name or f'order{G.order}_{table_digest(G)}'}.json"
    path.write_text(dump_table(G, TableFormat.JSON))
    return path


def load_catalog_dir(directory: Union[str, Path]) -> List[Tuple[str, GyroTable]]:
    """Load every table file under directory, sorted by file name."""
    directory = Path(directory)
    if not directory.is_dir():
        raise GyroError(f"catalog directory not found: {directory}")
    entries = []
    for path in sorted(p for p in directory.iterdir() if p.suffix.lower() in TABLE_SUFFIXES):
        entries.append((path.name, load_table_file(path)))
        logger.debug(f"Catalog entry {path.name} (order {entries[-1][1].order})")
    logger.info(f"Loaded {len(entries)} catalog tables from {directory}")
    return entries

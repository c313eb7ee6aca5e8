"""
Finite gyrogroup tables and the primitive operations on them.

A GyroTable is immutable once built: the Cayley table, inverse map and (for
small orders) the full gyration cube are numpy arrays with the writeable flag
cleared. Larger tables fill a per-pair gyration cache on demand under a lock,
so one table can be shared by many worker threads.
"""

from __future__ import annotations

import io
import json
import logging
import threading
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import BinaryIO, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .exceptions import ElementRangeError, PreconditionError, TableParseError, TableStructureError
from .masks import SubsetMask

logger = logging.getLogger(__name__)

DEFAULT_EAGER_CACHE_LIMIT = 64


class TableFormat(str, Enum):
    JSON = "json"
    TEXT = "text"

    @classmethod
    def from_path(cls, path: Union[str, Path]) -> "TableFormat":
        return cls.JSON if Path(path).suffix.lower() == ".json" else cls.TEXT


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class Permutation:
    """A bijection of 0..n-1 given by its image list."""

    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise TableStructureError(f"not a permutation: {list(self.images)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_array(cls, arr: Sequence[int]) -> "Permutation":
        return cls(tuple(int(x) for x in arr))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __len__(self) -> int:
        return len(self.images)

    @property
    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def inverse(self) -> "Permutation":
        out = [0] * len(self.images)
        for i, x in enumerate(self.images):
            out[x] = i
        return Permutation(tuple(out))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other."""
        return Permutation(tuple(self.images[x] for x in other.images))

    def image(self, mask: SubsetMask) -> SubsetMask:
        return SubsetMask.from_elements((self.images[x] for x in mask), len(self.images))

    def to_list(self) -> List[int]:
        return list(self.images)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def check_latin(table: np.ndarray) -> None:
    """Raise TableStructureError on the first row or column that is not a permutation."""
    n = table.shape[0]
    target = np.arange(n)
    rows_ok = np.all(np.sort(table, axis=1) == target, axis=1)
    if not rows_ok.all():
        r = int(np.flatnonzero(~rows_ok)[0])
        raise TableStructureError(f"row {r} not a permutation", details={"row": r})
    cols_ok = np.all(np.sort(table, axis=0) == target[:, None], axis=0)
    if not cols_ok.all():
        c = int(np.flatnonzero(~cols_ok)[0])
        raise TableStructureError(f"column {c} not a permutation", details={"column": c})


def find_identity(table: np.ndarray) -> Optional[int]:
    n = table.shape[0]
    target = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], target) and np.array_equal(table[:, e], target):
            return e
    return None


class GyroTable:
    """Cayley table of a finite loop with identity 0 and two-sided inverses."""

    def __init__(
        self,
        table: Union[np.ndarray, Sequence[Sequence[int]]],
        elements: Optional[Sequence[str]] = None,
        relabeling: Optional[Sequence[int]] = None,
        eager_cache_limit: int = DEFAULT_EAGER_CACHE_LIMIT,
        move_identity: bool = False,
    ):
        """Validate a loop table. With ``move_identity`` a table whose identity is
        e != 0 has e swapped with 0 and the swap recorded in ``relabeling``."""
        arr = np.array(table, dtype=np.intp)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise TableStructureError(f"table must be a nonempty square array, got shape {arr.shape}")
        n = arr.shape[0]
        bad = np.argwhere((arr < 0) | (arr >= n))
        if len(bad):
            r, c = (int(v) for v in bad[0])
            raise ElementRangeError(
                f"entry ({r},{c}) = {int(arr[r, c])} out of range 0..{n - 1}",
                details={"cell": [r, c]},
            )
        check_latin(arr)
        if move_identity:
            e = find_identity(arr)
            if e is None:
                raise TableStructureError("no two-sided identity element")
            if e != 0:
                swap = np.arange(n)
                swap[0], swap[e] = e, 0
                arr = _apply_relabeling(arr, swap)
                relabeling = swap.tolist()
                if elements is not None:
                    elements = list(elements)
                    elements[0], elements[e] = elements[e], elements[0]
                logger.info(f"Identity found at {e}; relabeled {e} <-> 0")
        target = np.arange(n)
        if not np.array_equal(arr[0], target):
            c = int(np.flatnonzero(arr[0] != target)[0])
            raise TableStructureError(f"identity 0 fails on the left at column {c}", details={"cell": [0, c]})
        if not np.array_equal(arr[:, 0], target):
            r = int(np.flatnonzero(arr[:, 0] != target)[0])
            raise TableStructureError(f"identity 0 fails on the right at row {r}", details={"cell": [r, 0]})

        right_inv = np.argmax(arr == 0, axis=1)
        left_inv = np.argmax(arr == 0, axis=0)
        mismatch = np.flatnonzero(right_inv != left_inv)
        if len(mismatch):
            a = int(mismatch[0])
            raise TableStructureError(
                f"element {a} has right inverse {int(right_inv[a])} but left inverse {int(left_inv[a])}",
                details={"element": a},
            )

        self.order = n
        self.identity = 0
        self.table = _frozen(arr)
        self.inverses = _frozen(right_inv.astype(np.intp))
        self.elements: Tuple[str, ...] = tuple(elements) if elements is not None else tuple(str(i) for i in range(n))
        if len(self.elements) != n:
            raise TableParseError(f"{len(self.elements)} element names for order {n}")
        self.relabeling: Optional[Tuple[int, ...]] = tuple(relabeling) if relabeling is not None else None

        self._lock = threading.Lock()
        self._maps: Dict[Tuple[int, int], Permutation] = {}
        self._cube: Optional[np.ndarray] = None
        self.eager = n <= eager_cache_limit
        if self.eager:
            self._cube = _frozen(self._compute_cube())

    def _compute_cube(self) -> np.ndarray:
        T, inv = self.table, self.inverses
        a_bz = T[np.arange(self.order)[:, None, None], T[None, :, :]]
        return T[inv[T][:, :, None], a_bz]

    def gyr_slab(self, a: int) -> np.ndarray:
        """n x n array whose [b, z] entry is gyr[a,b](z)."""
        if self._cube is not None:
            return self._cube[a]
        T = self.table
        return T[self.inverses[T[a]][:, None], T[a][T]]

    def gyr_cube(self) -> np.ndarray:
        """Full n x n x n gyration array; computed once under the lock for lazy tables."""
        if self._cube is None:
            with self._lock:
                if self._cube is None:
                    logger.debug(f"Materializing gyration cube for order {self.order}")
                    self._cube = _frozen(self._compute_cube())
        return self._cube

    def gyration(self, a: int, b: int) -> Permutation:
        key = (a, b)
        perm = self._maps.get(key)
        if perm is None:
            with self._lock:
                perm = self._maps.get(key)
                if perm is None:
                    perm = Permutation.from_array(self.gyr_slab(a)[b])
                    self._maps[key] = perm
        return perm

    def check_element(self, *xs: int) -> None:
        for x in xs:
            if not 0 <= int(x) < self.order:
                raise ElementRangeError(f"element {x} out of range 0..{self.order - 1}", details={"element": int(x)})

    def mask(self, elements: Iterable[int]) -> SubsetMask:
        return SubsetMask.from_elements(elements, self.order)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GyroTable) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __repr__(self) -> str:
        return f"GyroTable(order={self.order})"

    def to_dict(self) -> Dict[str, object]:
        data: Dict[str, object] = {"order": self.order, "table": self.table.tolist()}
        if self.elements != tuple(str(i) for i in range(self.order)):
            data["elements"] = list(self.elements)
        return data


# ---------------------------------------------------------------------------
# Loading and writing
# ---------------------------------------------------------------------------

def _read_source(source: Union[bytes, str, BinaryIO, io.TextIOBase]) -> str:
    if isinstance(source, bytes):
        raw = source
    elif isinstance(source, str):
        return source
    else:
        raw = source.read()
        if isinstance(raw, str):
            return raw
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise TableParseError("table source is not UTF-8", cause=e) from e


def _parse_json(text: str) -> Tuple[List[List[int]], Optional[List[str]]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise TableParseError(f"invalid JSON: {e.msg} at line {e.lineno}", cause=e) from e
    if not isinstance(data, dict) or "table" not in data:
        raise TableParseError('JSON table must be an object with a "table" key')
    rows = data["table"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise TableParseError('"table" must be a list of rows')
    if not rows:
        raise TableParseError('"table" has no rows')
    for r, row in enumerate(rows):
        for c, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int):
                raise TableParseError(f"entry ({r},{c}) is not an integer: {v!r}", details={"cell": [r, c]})
    order = data.get("order", len(rows))
    if order != len(rows) or any(len(row) != order for row in rows):
        raise TableParseError(f"declared order {order} does not match a {len(rows)}-row table")
    elements = data.get("elements")
    if elements is not None and (not isinstance(elements, list) or len(elements) != order):
        raise TableParseError(f'"elements" must list {order} names')
    return rows, [str(e) for e in elements] if elements is not None else None


def _parse_text(text: str) -> List[List[int]]:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise TableParseError("empty table source")
    try:
        header = lines[0]
        if len(header) != 1:
            raise ValueError
        n = int(header[0])
        rows = [[int(tok) for tok in ln] for ln in lines[1:]]
    except ValueError as e:
        raise TableParseError("text table must be an order line followed by integer rows", cause=e) from e
    if n < 1 or len(rows) != n or any(len(row) != n for row in rows):
        raise TableParseError(f"expected {n} rows of {n} entries, got {len(rows)} rows")
    return rows


def load_table(
    source: Union[bytes, str, BinaryIO],
    format: TableFormat = TableFormat.JSON,
    eager_cache_limit: int = DEFAULT_EAGER_CACHE_LIMIT,
) -> GyroTable:
    """Parse a Cayley table and check its loop structure.

    The gyrogroup axioms are not certified here (see axioms.verify_axioms).
    A table whose identity is not element 0 is relabeled by swapping the
    identity with 0; the old-to-new map is kept in ``relabeling``.
    """
    text = _read_source(source)
    fmt = TableFormat(format)
    elements: Optional[List[str]] = None
    if fmt is TableFormat.JSON:
        rows, elements = _parse_json(text)
    else:
        rows = _parse_text(text)

    G = GyroTable(rows, elements=elements, eager_cache_limit=eager_cache_limit, move_identity=True)
    logger.debug(f"Loaded table of order {G.order} ({fmt.value})")
    return G


def load_table_file(path: Union[str, Path], eager_cache_limit: int = DEFAULT_EAGER_CACHE_LIMIT) -> GyroTable:
    path = Path(path)
    with path.open("rb") as fh:
        return load_table(fh, TableFormat.from_path(path), eager_cache_limit=eager_cache_limit)


def dump_table(G: GyroTable, format: TableFormat = TableFormat.JSON) -> str:
    """Serialize in a format load_table reads back."""
    if TableFormat(format) is TableFormat.JSON:
        return json.dumps(G.to_dict()) + "\n"
    lines = [str(G.order)] + [" ".join(str(int(v)) for v in row) for row in G.table]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Primitive operations
# ---------------------------------------------------------------------------

def op(G: GyroTable, a: int, b: int) -> int:
    G.check_element(a, b)
    return int(G.table[a, b])


def inv(G: GyroTable, a: int) -> int:
    G.check_element(a)
    return int(G.inverses[a])


def gyr(G: GyroTable, a: int, b: int, z: int) -> int:
    """gyr[a,b](z) = ⊖(a⊕b)⊕(a⊕(b⊕z))."""
    G.check_element(a, b, z)
    T = G.table
    return int(T[G.inverses[T[a, b]], T[a, T[b, z]]])


def gyr_map(G: GyroTable, a: int, b: int) -> Permutation:
    G.check_element(a, b)
    return G.gyration(a, b)


def coop(G: GyroTable, a: int, b: int) -> int:
    """a⊞b = a⊕gyr[a,⊖b](b)."""
    G.check_element(a, b)
    return int(G.table[a, G.gyr_slab(a)[G.inverses[b], b]])


def codiff(G: GyroTable, a: int, b: int) -> int:
    """a⊟b = a⊞(⊖b) = a⊖gyr[a,b](b)."""
    G.check_element(a, b)
    return int(G.table[a, G.inverses[G.gyr_slab(a)[b, b]]])


def translate_set(G: GyroTable, a: int, S: SubsetMask, side: Side = Side.LEFT) -> SubsetMask:
    G.check_element(a)
    idx = S.elements()
    if Side(side) is Side.LEFT:
        image = G.table[a, idx]
    else:
        image = G.table[idx, a]
    return G.mask(image.tolist())


def set_op(G: GyroTable, A: SubsetMask, B: SubsetMask) -> SubsetMask:
    """A⊕B = {a⊕b : a ∈ A, b ∈ B}."""
    a_idx, b_idx = A.elements(), B.elements()
    if not a_idx or not b_idx:
        return SubsetMask.empty(G.order)
    return G.mask(np.unique(G.table[np.ix_(a_idx, b_idx)]).tolist())


def neg_set(G: GyroTable, A: SubsetMask) -> SubsetMask:
    return G.mask(G.inverses[A.elements()].tolist())


def left_translation(G: GyroTable, x: int) -> Permutation:
    """λ_x : z ↦ x⊕z."""
    G.check_element(x)
    return Permutation.from_array(G.table[x])


def right_translation(G: GyroTable, x: int) -> Permutation:
    """R_x : z ↦ z⊕x."""
    G.check_element(x)
    return Permutation.from_array(G.table[:, x])


def _apply_relabeling(table: np.ndarray, perm: np.ndarray) -> np.ndarray:
    out = np.empty_like(table)
    out[np.ix_(perm, perm)] = perm[table]
    return out


def relabel(G: GyroTable, perm: Union[Permutation, Sequence[int]]) -> GyroTable:
    """Isomorphic copy in which element x is renamed perm(x); perm must fix 0."""
    images = np.array(perm.images if isinstance(perm, Permutation) else perm, dtype=np.intp)
    if len(images) != G.order or sorted(images.tolist()) != list(range(G.order)):
        raise PreconditionError(f"relabeling is not a permutation of 0..{G.order - 1}")
    if images[0] != 0:
        raise PreconditionError("relabeling must fix the identity 0")
    names = [""] * G.order
    for old, new in enumerate(images.tolist()):
        names[new] = G.elements[old]
    return GyroTable(_apply_relabeling(G.table, images), elements=names,
                     eager_cache_limit=DEFAULT_EAGER_CACHE_LIMIT if G.eager else 0)

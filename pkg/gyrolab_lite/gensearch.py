"""
Exhaustive generation of small gyrogroups and the search for an
L-subgyrogroup that is not strongly-L.

Loops are produced cell by cell in row-major order with row and column bit
masks, so tables come out in lexicographic order. The pruned generator adds
two-sided inverse consistency at each cell and, after every completed row,
the automorphism and left-loop checks restricted to the entries already
known. Work is split by the candidate for row 1 and merged in candidate
order, which keeps every result independent of the worker count.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .axioms import verify_axioms
from .catalog import load_catalog_dir, write_table
from .exceptions import ResourceLimitError, TableStructureError
from .gyrotable import GyroTable, relabel
from .masks import SubsetMask
from .subgyro import DEFAULT_SUBSET_SCAN_BOUND, classify_subset, enumerate_subgyrogroups
from .workers import run_ordered

logger = logging.getLogger(__name__)

DEFAULT_EXHAUSTIVE_ORDER = 6
DEFAULT_CANONICAL_LIMIT = 10
PERMUTATION_BATCH = 5040

Rows = List[List[int]]


@dataclass
class SearchConfig:
    max_order: int = DEFAULT_EXHAUSTIVE_ORDER
    isomorph_reject: bool = True
    worker_count: int = 1
    output_path: Optional[str] = None
    catalog_dir: Optional[str] = None
    allow_large: bool = False
    exhaustive_order: int = DEFAULT_EXHAUSTIVE_ORDER

    def __post_init__(self) -> None:
        if self.max_order < 1:
            raise ValueError("max_order must be >= 1")


@dataclass
class Witness:
    table: GyroTable
    subset: SubsetMask
    failing_pair: Tuple[int, int]
    L_certificate: Dict[str, Any]
    source: str = "generated"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source": self.source,
            "order": self.table.order,
            "table": self.table.table.tolist(),
            "subset": self.subset.elements(),
            "failing_pair": list(self.failing_pair),
            "L_certificate": self.L_certificate,
        }


@dataclass
class SearchResult:
    witness: Optional[Witness]
    summary: Dict[str, Any] = field(default_factory=dict)


def _check_bound(order: int, exhaustive_order: int, allow_large: bool) -> None:
    if order < 1:
        raise ValueError("order must be >= 1")
    if order > exhaustive_order and not allow_large:
        raise ResourceLimitError(
            f"order {order} exceeds the exhaustive bound {exhaustive_order}; pass allow_large to override",
            limit=exhaustive_order,
        )


# ---------------------------------------------------------------------------
# Backtracking
# ---------------------------------------------------------------------------

def _partial_violation(rows: Rows) -> bool:
    """True when the known entries already break G3's automorphism check or G4.

    Unknown entries hold the sentinel n, which propagates through every lookup.
    """
    n = len(rows)
    ext = np.full((n + 1, n + 1), n, dtype=np.intp)
    ext[:n, :n] = rows
    T = ext[:n, :n]
    inv = np.full(n + 1, n, dtype=np.intp)
    r, c = np.nonzero(T == 0)
    inv[r] = c
    idx = np.arange(n)
    cube = np.full((n + 1, n + 1, n + 1), n, dtype=np.intp)
    core = ext[inv[T][:, :, None], ext[idx[:, None, None], T[None, :, :]]]
    cube[:n, :n, :n] = core

    lhs = cube[:n, :n][:, :, T]
    rhs = ext[core[:, :, :, None], core[:, :, None, :]]
    if np.any((lhs != rhs) & (lhs < n) & (rhs < n)):
        return True
    shifted = cube[T, idx[None, :], :n]
    return bool(np.any((shifted != core) & (shifted < n) & (core < n)))


def _backtrack(n: int, prefix: Sequence[Sequence[int]], prune: bool) -> Iterator[Rows]:
    """Complete the normalized loop whose rows 1..len(prefix) are given."""
    T = [[n] * n for _ in range(n)]
    row_used = [0] * n
    col_used = [0] * n
    for i in range(n):
        T[0][i] = i
        T[i][0] = i
        row_used[i] |= 1 << i
        col_used[i] |= 1 << i
    row_used[0] = (1 << n) - 1
    for k, row in enumerate(prefix, start=1):
        for c in range(1, n):
            T[k][c] = row[c]
            row_used[k] |= 1 << row[c]
            col_used[c] |= 1 << row[c]

    cells = [(r, c) for r in range(len(prefix) + 1, n) for c in range(1, n)]

    def place(k: int) -> Iterator[Rows]:
        if k == len(cells):
            yield [row[:] for row in T]
            return
        r, c = cells[k]
        free = ~(row_used[r] | col_used[c])
        for v in range(n):
            if not free >> v & 1:
                continue
            if prune:
                mirror = T[c][r]
                if v == 0 and mirror not in (0, n):
                    continue
                if v != 0 and mirror == 0:
                    continue
            T[r][c] = v
            row_used[r] |= 1 << v
            col_used[c] |= 1 << v
            if not (prune and c == n - 1 and _partial_violation(T)):
                yield from place(k + 1)
            T[r][c] = n
            row_used[r] &= ~(1 << v)
            col_used[c] &= ~(1 << v)

    yield from place(0)


def row_one_candidates(n: int) -> List[Tuple[int, ...]]:
    """Lexicographic candidates for row 1 of a normalized loop."""
    if n < 2:
        return []
    rest = [v for v in range(n) if v != 1]
    out = []
    for tail in itertools.permutations(rest):
        row = (1,) + tail
        if all(row[c] != c for c in range(1, n)):
            out.append(row)
    return out


def enumerate_loops(
    order: int,
    exhaustive_order: int = DEFAULT_EXHAUSTIVE_ORDER,
    allow_large: bool = False,
) -> Iterator[np.ndarray]:
    """Every normalized loop table of the given order, once, in lexicographic order."""
    _check_bound(order, exhaustive_order, allow_large)
    for rows in _backtrack(order, [], prune=False):
        yield np.array(rows, dtype=np.intp)


def filter_gyrogroups(tables: Iterable[np.ndarray]) -> Iterator[GyroTable]:
    """Keep the tables that load as loops with two-sided inverses and pass verify_axioms."""
    for arr in tables:
        try:
            G = GyroTable(arr)
        except TableStructureError as e:
            logger.debug(f"Rejected loop: {e.message}")
            continue
        report = verify_axioms(G)
        if report.ok:
            yield G
        else:
            logger.debug(f"Rejected loop with {report.violations[0][0].value} witness {report.violations[0][1]}")


def _gyrogroup_branch(task: Tuple[int, Tuple[int, ...]]) -> List[Rows]:
    n, row1 = task
    prefix = [list(row1)]
    probe = [[n] * n for _ in range(n)]
    probe[0] = list(range(n))
    for i in range(n):
        probe[i][0] = i
    probe[1] = list(row1)
    if _partial_violation(probe):
        return []
    return [rows for rows in _backtrack(n, prefix, prune=True)
            if next(filter_gyrogroups([np.array(rows)]), None) is not None]


def generate_gyrogroups(
    order: int,
    workers: int = 1,
    exhaustive_order: int = DEFAULT_EXHAUSTIVE_ORDER,
    allow_large: bool = False,
) -> List[GyroTable]:
    """All gyrogroup tables with identity 0 of the given order, lexicographically sorted."""
    _check_bound(order, exhaustive_order, allow_large)
    if order == 1:
        return [GyroTable([[0]])]
    tasks = [(order, row1) for row1 in row_one_candidates(order)]
    branches = run_ordered(_gyrogroup_branch, tasks, workers)
    tables = [GyroTable(rows) for branch in branches for rows in branch]
    logger.info(f"Order {order}: {len(tables)} gyrogroup tables from {len(tasks)} branches")
    return tables


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------

def _permutation_batches(n: int) -> Iterator[np.ndarray]:
    perms = itertools.permutations(range(1, n))
    while True:
        batch = list(itertools.islice(perms, PERMUTATION_BATCH))
        if not batch:
            return
        arr = np.zeros((len(batch), n), dtype=np.intp)
        arr[:, 1:] = batch
        yield arr


def canonical_relabeling(G: GyroTable, limit: int = DEFAULT_CANONICAL_LIMIT) -> Tuple[GyroTable, Tuple[int, ...]]:
    """Lexicographically least relabeling fixing 0, and the old-to-new map reaching it."""
    n = G.order
    if n > limit:
        raise ResourceLimitError(f"canonical form needs {n - 1}! relabelings; order {n} exceeds {limit}", limit=limit)
    T = G.table
    best_flat: Optional[np.ndarray] = None
    best_perm: Optional[np.ndarray] = None
    for P in _permutation_batches(n):
        Q = np.argsort(P, axis=1)
        rows = np.arange(len(P))[:, None, None]
        tables = P[rows, T[Q[:, :, None], Q[:, None, :]]].reshape(len(P), n * n)
        k = int(np.lexsort(tables.T[::-1])[0])
        if best_flat is None or tuple(tables[k]) < tuple(best_flat):
            best_flat, best_perm = tables[k].copy(), P[k].copy()
    perm = tuple(int(v) for v in best_perm)
    return relabel(G, perm), perm


def canonicalize(G: GyroTable, limit: int = DEFAULT_CANONICAL_LIMIT) -> GyroTable:
    return canonical_relabeling(G, limit)[0]


def _table_key(G: GyroTable) -> Tuple[int, ...]:
    return tuple(int(v) for v in G.table.ravel())


# ---------------------------------------------------------------------------
# Targeted construction
# ---------------------------------------------------------------------------

def transversal_gyrogroup(
    elements: Sequence[Hashable],
    mult: Callable[[Any, Any], Any],
    transversal: Sequence[Hashable],
    subgroup: Sequence[Hashable],
) -> GyroTable:
    """Loop on a left transversal B of a subgroup K: a⊕b is the c ∈ B with ab ∈ cK.

    The identity must be transversal[0]; label i stands for transversal[i].
    The result is only structurally checked; call verify_axioms to certify it.
    """
    coset_of = {}
    for i, c in enumerate(transversal):
        for k in subgroup:
            coset_of[mult(c, k)] = i
    if len(coset_of) != len(elements):
        raise TableStructureError("transversal does not meet every left coset exactly once")
    n = len(transversal)
    table = [[coset_of[mult(a, b)] for b in transversal] for a in transversal]
    logger.debug(f"Built transversal loop of order {n}")
    return GyroTable(table)


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------

def _scan_subgyrogroups(
    G: GyroTable, scan_bound: int
) -> Tuple[int, Optional[Tuple[SubsetMask, Tuple[int, int], Dict[str, Any]]]]:
    subsets = enumerate_subgyrogroups(G, scan_bound=scan_bound)
    first = None
    for H in subsets:
        cls = classify_subset(G, H)
        if first is None and cls.is_L_not_strongly_L:
            a, b, _ = cls.witnesses["strongly_L"]
            certificate = {"condition": "gyr[a,h](H) = H", "pairs_checked": G.order * len(H), "ok": True}
            first = (H, (a, b), certificate)
    return len(subsets), first


def search_L_not_SL(
    config: SearchConfig,
    subset_scan_bound: int = DEFAULT_SUBSET_SCAN_BOUND,
    canonical_limit: int = DEFAULT_CANONICAL_LIMIT,
) -> SearchResult:
    """Scan every generated gyrogroup up to max_order plus the catalog directory.

    The witness is the first hit in (order, canonical table, subset mask)
    order. Without a hit the summary states the scanned bound; it never
    claims nonexistence beyond it.
    """
    _check_bound(config.max_order, config.exhaustive_order, config.allow_large)
    candidates: List[Tuple[int, Tuple[int, ...], str, GyroTable]] = []
    per_order: Dict[str, Dict[str, int]] = {}
    seen: Dict[Tuple[int, ...], str] = {}

    for n in range(2, config.max_order + 1):
        tables = generate_gyrogroups(n, config.worker_count, config.exhaustive_order, config.allow_large)
        if config.isomorph_reject:
            classes: Dict[Tuple[int, ...], GyroTable] = {}
            for G in tables:
                C = canonicalize(G, canonical_limit)
                classes.setdefault(_table_key(C), C)
            scan = [classes[k] for k in sorted(classes)]
        else:
            scan = tables
        for G in scan:
            key = _table_key(G)
            seen[key] = "generated"
            candidates.append((n, key, "generated", G))
        per_order[str(n)] = {"tables": len(tables), "classes": len(scan), "subgyrogroups": 0}
        if config.output_path:
            for G in scan:
                write_table(G, config.output_path)

    catalog_files = 0
    if config.catalog_dir and Path(config.catalog_dir).is_dir():
        for name, G in load_catalog_dir(config.catalog_dir):
            catalog_files += 1
            if not verify_axioms(G).ok:
                logger.warning(f"Catalog table {name} fails the gyrogroup axioms; skipped")
                continue
            C = canonicalize(G, canonical_limit) if G.order <= canonical_limit else G
            key = _table_key(C)
            if key in seen:
                logger.debug(f"Catalog table {name} duplicates a {seen[key]} class")
                continue
            seen[key] = name
            candidates.append((C.order, key, name, C))

    candidates.sort(key=lambda item: (item[0], item[1]))
    witness: Optional[Witness] = None
    catalog_counts = {"files": catalog_files, "new_classes": 0, "subgyrogroups": 0}
    total_subs = 0
    for n, _key, source, G in candidates:
        count, hit = _scan_subgyrogroups(G, subset_scan_bound)
        total_subs += count
        if source == "generated":
            per_order[str(n)]["subgyrogroups"] += count
        else:
            catalog_counts["new_classes"] += 1
            catalog_counts["subgyrogroups"] += count
        if witness is None and hit is not None:
            H, pair, certificate = hit
            witness = Witness(G, H, pair, certificate, source)
            logger.info(f"Witness found in order {n} ({source}): subset {H.elements()}")

    gyrogroups = len(candidates)
    summary: Dict[str, Any] = {
        "max_order": config.max_order,
        "scanned": {"gyrogroups": gyrogroups, "subgyrogroups": total_subs},
        "per_order_counts": per_order,
        "catalog": catalog_counts,
        "witness": witness.to_dict() if witness else None,
    }
    if witness is None:
        summary["statement"] = (
            f"no L-subgyrogroup that is not strongly-L among the gyrogroups scanned up to order {config.max_order}"
            + (" and the catalog" if catalog_counts["new_classes"] else "")
        )
    logger.info(f"Search finished: {gyrogroups} gyrogroups, {total_subs} subgyrogroups")
    return SearchResult(witness, summary)

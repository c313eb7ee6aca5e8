"""
Subgyrogroup recognition, enumeration and classification.

Hierarchy computed for every subgyrogroup H:

    normal-sufficient  =>  strongly-L  =>  L  =>  subgyrogroup

normal-sufficient means the three sufficient conditions for normality hold
(gyr[h,a] = id, gyr[b,a]H ⊆ H, a⊕H = H⊕a). Kernel-based normality is never
decided.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .exceptions import EmptySubsetError, GyroError, NotSubgyrogroupError
from .gyrotable import GyroTable, neg_set, set_op
from .masks import SubsetMask

logger = logging.getLogger(__name__)

DEFAULT_SUBSET_SCAN_BOUND = 20
DEFAULT_CLOSURE_POOL_SIZE = 3
SCAN_CHUNK = 1 << 16

Witness = Tuple[int, ...]


@dataclass
class SubsetCheck:
    """Outcome of the subgyrogroup test; falsy when H is not a subgyrogroup."""

    ok: bool
    reason: str = ""
    witness: Optional[Witness] = None
    sum_closed: Optional[bool] = None
    negation_closed: Optional[bool] = None

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"ok": self.ok}
        if not self.ok:
            data["reason"] = self.reason
            data["witness"] = list(self.witness) if self.witness is not None else None
        else:
            data["sum_equals_subset"] = self.sum_closed
            data["negation_equals_subset"] = self.negation_closed
        return data


@dataclass
class SubClassification:
    subset: SubsetMask
    is_sub: bool
    is_L: bool
    is_strongly_L: bool
    is_normal_sufficient: bool
    witnesses: Dict[str, Witness] = field(default_factory=dict)
    normal_failure: Optional[str] = None
    strongly_L_by_equality: Optional[bool] = None

    @property
    def is_L_not_strongly_L(self) -> bool:
        return self.is_L and not self.is_strongly_L

    def flags(self) -> Dict[str, bool]:
        return {
            "subgyrogroup": self.is_sub,
            "L": self.is_L,
            "strongly_L": self.is_strongly_L,
            "normal_sufficient": self.is_normal_sufficient,
        }

    def to_dict(self) -> Dict[str, Any]:
        witnesses: Dict[str, Any] = {k: list(v) for k, v in self.witnesses.items()}
        if self.normal_failure:
            witnesses["normal_condition"] = self.normal_failure
        return {"subset": self.subset.elements(), "flags": self.flags(), "witnesses": witnesses}


def _bool_mask(G: GyroTable, H: SubsetMask) -> Tuple[np.ndarray, np.ndarray]:
    hb = np.zeros(G.order, dtype=bool)
    idx = np.array(H.elements(), dtype=np.intp)
    hb[idx] = True
    return hb, idx


def is_subgyrogroup(G: GyroTable, H: SubsetMask) -> SubsetCheck:
    """0 ∈ H, H⊕H ⊆ H and ⊖H ⊆ H; gyration closure follows from the gyrator identity."""
    if not H:
        raise EmptySubsetError()
    hb, idx = _bool_mask(G, H)
    if not hb[0]:
        return SubsetCheck(False, "identity not in subset", (0,))
    products = G.table[np.ix_(idx, idx)]
    outside = np.argwhere(~hb[products])
    if len(outside):
        i, j = outside[0]
        a, b = int(idx[i]), int(idx[j])
        return SubsetCheck(False, "not closed under ⊕", (a, b, int(products[i, j])))
    negs = G.inverses[idx]
    missing = np.flatnonzero(~hb[negs])
    if len(missing):
        a = int(idx[missing[0]])
        return SubsetCheck(False, "not closed under ⊖", (a, int(G.inverses[a])))
    return SubsetCheck(
        True,
        sum_closed=set_op(G, H, H) == H,
        negation_closed=neg_set(G, H) == H,
    )


def _gyration_closure_holds(G: GyroTable, hb: np.ndarray, idx: np.ndarray) -> bool:
    C = G.gyr_cube()
    return bool(hb[C[np.ix_(idx, idx, idx)]].all())


def classify_subset(G: GyroTable, H: SubsetMask) -> SubClassification:
    """Exhaustive quantifier scans for the L, strongly-L and normal-sufficient flags."""
    check = is_subgyrogroup(G, H)
    if not check:
        raise NotSubgyrogroupError(
            f"{H.elements()} is not a subgyrogroup: {check.reason}",
            details={"witness": list(check.witness or ())},
        )
    C = G.gyr_cube()
    hb, idx = _bool_mask(G, H)
    witnesses: Dict[str, Witness] = {}

    if not _gyration_closure_holds(G, hb, idx):
        logger.error(f"Gyration closure fails for subgyrogroup {H.elements()}")

    # L: gyr[a,h](H) = H for a ∈ G, h ∈ H  (a, h, z) with gyr[a,h](z) ∉ H
    l_images = C[:, idx][:, :, idx]
    l_fail = np.argwhere(~hb[l_images])
    is_L = len(l_fail) == 0
    if not is_L:
        a, i, k = l_fail[0]
        witnesses["L"] = (int(a), int(idx[i]), int(idx[k]))

    # strongly-L: gyr[a,b](H) ⊆ H for a, b ∈ G
    sl_images = C[:, :, idx]
    sl_fail = np.argwhere(~hb[sl_images])
    is_SL = len(sl_fail) == 0
    if not is_SL:
        a, b, k = sl_fail[0]
        witnesses["strongly_L"] = (int(a), int(b), int(idx[k]))

    by_equality = bool(np.all(np.sort(sl_images, axis=2) == idx))
    if by_equality != is_SL:
        logger.warning(f"Subset {H.elements()}: strongly-L by inclusion={is_SL} but by equality={by_equality}")

    normal, failure = _normal_sufficient(G, hb, idx, is_SL, witnesses)

    result = SubClassification(
        subset=H,
        is_sub=True,
        is_L=is_L,
        is_strongly_L=is_SL,
        is_normal_sufficient=normal,
        witnesses=witnesses,
        normal_failure=failure,
        strongly_L_by_equality=by_equality,
    )
    if (normal and not is_SL) or (is_SL and not is_L):
        logger.error(f"Hierarchy violated for {H.elements()}: {result.flags()}")
        raise GyroError(f"classification hierarchy violated for {H.elements()}", details=result.flags())
    logger.debug(f"Classified {H.elements()}: {result.flags()}")
    return result


def _normal_sufficient(
    G: GyroTable, hb: np.ndarray, idx: np.ndarray, is_SL: bool, witnesses: Dict[str, Witness]
) -> Tuple[bool, Optional[str]]:
    n, T, C = G.order, G.table, G.gyr_cube()
    ident = np.arange(n)

    nontrivial = np.argwhere(C[idx] != ident)
    if len(nontrivial):
        i, a, z = nontrivial[0]
        witnesses["normal_sufficient"] = (int(idx[i]), int(a), int(z))
        return False, "gyr[h,a] is not the identity"

    if not is_SL:
        witnesses["normal_sufficient"] = witnesses["strongly_L"]
        return False, "gyr[b,a]H is not contained in H"

    left = np.zeros((n, n), dtype=bool)
    right = np.zeros((n, n), dtype=bool)
    rows = ident[:, None]
    left[rows, T[:, idx]] = True
    right[rows, T[idx, :].T] = True
    diff = np.argwhere(left != right)
    if len(diff):
        a, x = diff[0]
        witnesses["normal_sufficient"] = (int(a), int(x))
        return False, "a⊕H differs from H⊕a"
    return True, None


def generate_closure(G: GyroTable, seeds: SubsetMask) -> SubsetMask:
    """Least subset containing seeds and 0 that is closed under ⊕ and ⊖."""
    if not seeds:
        raise EmptySubsetError("closure seeds are empty")
    hb, _ = _bool_mask(G, seeds)
    hb[0] = True
    while True:
        idx = np.flatnonzero(hb)
        grown = hb.copy()
        grown[G.table[np.ix_(idx, idx)]] = True
        grown[G.inverses[idx]] = True
        if np.array_equal(grown, hb):
            return SubsetMask.from_bool(hb)
        hb = grown


def _scan_masks(G: GyroTable) -> List[int]:
    """All subgyrogroup masks by vectorized scan over subsets containing 0."""
    n, T, inv = G.order, G.table, G.inverses
    found: List[int] = []
    total = 1 << (n - 1)
    for start in range(0, total, SCAN_CHUNK):
        masks = (np.arange(start, min(start + SCAN_CHUNK, total), dtype=np.int64) << 1) | 1
        ok = np.ones(len(masks), dtype=bool)
        bit = [(masks >> e) & 1 for e in range(n)]
        for a in range(1, n):
            has_a = bit[a].astype(bool)
            ok &= ~has_a | bit[int(inv[a])].astype(bool)
            for b in range(1, n):
                ok &= ~(has_a & bit[b].astype(bool)) | bit[int(T[a, b])].astype(bool)
        found.extend(int(m) for m in masks[ok])
    return found


def enumerate_subgyrogroups(
    G: GyroTable,
    scan_bound: int = DEFAULT_SUBSET_SCAN_BOUND,
    pool_size: int = DEFAULT_CLOSURE_POOL_SIZE,
) -> List[SubsetMask]:
    """Every subgyrogroup, sorted by mask value.

    Complete for order <= scan_bound via a full scan of subsets containing 0.
    Above the bound, closures of all seed sets of at most pool_size elements
    are collected instead and a completeness warning is logged.
    """
    n = G.order
    if n <= scan_bound:
        masks = _scan_masks(G)
    else:
        logger.warning(
            f"Order {n} exceeds subset-scan bound {scan_bound}; "
            f"enumerating closures of seed sets up to size {pool_size}, result may be incomplete"
        )
        seen = {1}
        for size in range(1, pool_size + 1):
            for seeds in itertools.combinations(range(1, n), size):
                seen.add(generate_closure(G, SubsetMask.from_elements(seeds, n)).bits)
        masks = sorted(seen)
    result = [SubsetMask(m, n) for m in sorted(masks)]
    logger.debug(f"Order {n}: {len(result)} subgyrogroups")
    return result


def classify_all(G: GyroTable, **kwargs: Any) -> List[SubClassification]:
    return [classify_subset(G, H) for H in enumerate_subgyrogroups(G, **kwargs)]

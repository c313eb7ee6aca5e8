"""
Axiom certification and the exhaustive identity suite for finite tables.

Gyrations are defined by the gyrator identity, so G3 reduces to checking that
every gyr[a,b] is an automorphism. All scans are vectorized with numpy and
report the first counterexample in lexicographic tuple order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from .gyrotable import GyroTable

logger = logging.getLogger(__name__)

Witness = Tuple[int, ...]


class AxiomTag(str, Enum):
    G1 = "G1"
    G2 = "G2"
    G3 = "G3"
    G4 = "G4"


@dataclass
class AxiomReport:
    g1_ok: bool
    g2_ok: bool
    g3_ok: bool
    g4_ok: bool
    is_group: bool
    violations: List[Tuple[AxiomTag, Witness]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "g1_ok": self.g1_ok,
            "g2_ok": self.g2_ok,
            "g3_ok": self.g3_ok,
            "g4_ok": self.g4_ok,
            "is_group": self.is_group,
            "violations": [{"axiom": tag.value, "witness": list(w)} for tag, w in self.violations],
        }


@dataclass
class IdentityResult:
    id: int
    name: str
    checked: int
    passed: int
    witness: Optional[Witness] = None

    @property
    def ok(self) -> bool:
        return self.witness is None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "passed": self.passed,
            "witness": list(self.witness) if self.witness is not None else None,
        }


@dataclass
class IdentityReport:
    results: List[IdentityResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def __getitem__(self, identity_id: int) -> IdentityResult:
        for r in self.results:
            if r.id == identity_id:
                return r
        raise KeyError(identity_id)

    def to_dict(self) -> List[Dict[str, Any]]:
        return [r.to_dict() for r in self.results]


def _first(fail: np.ndarray) -> Optional[Witness]:
    hits = np.argwhere(fail)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def _result(identity_id: int, name: str, fail: np.ndarray) -> IdentityResult:
    checked = int(fail.size)
    return IdentityResult(identity_id, name, checked, checked - int(fail.sum()), _first(fail))


def automorphism_failures(G: GyroTable, a: int) -> np.ndarray:
    """Boolean [b, x, y] array: gyr[a,b](x⊕y) != gyr[a,b](x) ⊕ gyr[a,b](y)."""
    T = G.table
    S = G.gyr_slab(a)
    return S[:, T] != T[S[:, :, None], S[:, None, :]]


def verify_axioms(G: GyroTable) -> AxiomReport:
    """Certify G1-G4; failures are recorded with witnesses, never raised."""
    n, T, inv = G.order, G.table, G.inverses
    idx = np.arange(n)
    violations: List[Tuple[AxiomTag, Witness]] = []

    g1_fail = (T[0] != idx) | (T[:, 0] != idx)
    w = _first(g1_fail)
    if w is not None:
        violations.append((AxiomTag.G1, w))

    g2_fail = (T[inv, idx] != 0) | (T[idx, inv] != 0)
    w = _first(g2_fail)
    if w is not None:
        violations.append((AxiomTag.G2, w))

    g3_witness: Optional[Witness] = None
    group = True
    for a in range(n):
        S = G.gyr_slab(a)
        if group and not np.array_equal(S, np.broadcast_to(idx, S.shape)):
            group = False
        hit = _first(automorphism_failures(G, a))
        if hit is not None:
            g3_witness = (a,) + hit
            break
    if g3_witness is not None:
        violations.append((AxiomTag.G3, g3_witness))
        logger.debug(f"G3 fails at (a,b,x,y)={g3_witness}")

    C = G.gyr_cube()
    g4_fail = C[T, idx[None, :], :] != C
    w = _first(g4_fail)
    if w is not None:
        violations.append((AxiomTag.G4, w))
        logger.debug(f"G4 fails at (a,b,z)={w}")

    tags = {tag for tag, _ in violations}
    if g3_witness is not None:
        group = False
    return AxiomReport(
        g1_ok=AxiomTag.G1 not in tags,
        g2_ok=AxiomTag.G2 not in tags,
        g3_ok=AxiomTag.G3 not in tags,
        g4_ok=AxiomTag.G4 not in tags,
        is_group=group,
        violations=violations,
    )


def is_group(G: GyroTable) -> bool:
    """True iff every gyration is the identity map (equivalently, ⊕ is associative)."""
    C = G.gyr_cube()
    return bool(np.array_equal(C, np.broadcast_to(np.arange(G.order), C.shape)))


def _identity_checks() -> List[Tuple[int, str, Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]]]:
    def involution(T, inv, C):
        return inv[inv] != np.arange(len(inv))

    def left_cancellation(T, inv, C):
        n = len(inv)
        return T[inv[:, None], T] != np.arange(n)[None, :]

    def gyroassociative(T, inv, C):
        # a⊕(b⊕z) = (a⊕b)⊕gyr[a,b]z
        n = len(inv)
        a = np.arange(n)[:, None, None]
        return T[a, T[None, :, :]] != T[T[:, :, None], C]

    def gyrosum_inversion(T, inv, C):
        # ⊖(a⊕b) = gyr[a,b](⊖b⊕⊖a)
        n = len(inv)
        a, b = np.arange(n)[:, None], np.arange(n)[None, :]
        return inv[T] != C[a, b, T[inv[b], inv[a]]]

    def left_gyroassociative_cancel(T, inv, C):
        # (⊖a⊕b)⊕gyr[⊖a,b](⊖b⊕c) = ⊖a⊕c
        n = len(inv)
        a = np.arange(n)[:, None, None]
        b = np.arange(n)[None, :, None]
        c = np.arange(n)[None, None, :]
        lhs = T[T[inv[a], b], C[inv[a], b, T[inv[b], c]]]
        return lhs != T[inv[a], c]

    def even(T, inv, C):
        # gyr[⊖a,⊖b] = gyr[a,b]
        return np.any(C != C[inv[:, None], inv[None, :]], axis=2)

    def inversive_symmetry(T, inv, C):
        # gyr[a,b] ∘ gyr[b,a] = id
        n = len(inv)
        a, b = np.arange(n)[:, None, None], np.arange(n)[None, :, None]
        composed = C[a, b, C.transpose(1, 0, 2)]
        return np.any(composed != np.arange(n), axis=2)

    return [
        (1, "involution of inversion", involution),
        (2, "left cancellation", left_cancellation),
        (3, "gyrator identity", gyroassociative),
        (4, "gyrosum inversion", gyrosum_inversion),
        (5, "left cancellation with gyration", left_gyroassociative_cancel),
        (6, "even property", even),
        (7, "inversive symmetry", inversive_symmetry),
    ]


IDENTITY_CHECKS = _identity_checks()


def check_identity_suite(G: GyroTable) -> IdentityReport:
    """Exhaustively scan the seven gyrogroup identities.

    Identity (1) is scanned over single elements; (2), (4), (6), (7) over
    pairs; (3) and (5) over triples. Identity (3) is checked in its
    falsifiable form a⊕(b⊕z) = (a⊕b)⊕gyr[a,b]z against the cached gyrations.
    """
    T, inv, C = G.table, G.inverses, G.gyr_cube()
    results = [_result(k, name, check(T, inv, C)) for k, name, check in IDENTITY_CHECKS]
    for r in results:
        if not r.ok:
            logger.debug(f"Identity ({r.id}) fails at {r.witness}")
    return IdentityReport(results)


def check_right_cancellation(G: GyroTable) -> IdentityResult:
    """(y⊟x)⊕x = y for all pairs; witness is (y, x)."""
    T, inv, C = G.table, G.inverses, G.gyr_cube()
    n = G.order
    y, x = np.arange(n)[:, None], np.arange(n)[None, :]
    codiff = T[y, inv[C[y, x, x]]]
    return _result(8, "right cancellation", T[codiff, x] != y)

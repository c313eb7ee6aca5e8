"""
Left-coset quotients G/H and set-level checks of the quotient statements.

Every check returns a CheckResult; a failing check is a finding carrying the
first witness in lexicographic order. Only malformed input raises.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import IllDefinedTranslationError, NotSubgyrogroupError, PartitionError, PreconditionError
from .gyrotable import GyroTable, Permutation, Side, codiff, set_op, translate_set
from .masks import SubsetMask
from .subgyro import is_subgyrogroup

logger = logging.getLogger(__name__)

DEFAULT_P_SAMPLES = 50
DEFAULT_V_SAMPLES = 100


@dataclass
class CheckResult:
    name: str
    ok: bool
    checked: int
    witness: Optional[List[Any]] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"ok": self.ok, "checked": self.checked, "witness": self.witness}
        if self.details:
            data["details"] = self.details
        return data


@dataclass
class CosetPartition:
    cosets: List[SubsetMask]
    projection: np.ndarray
    subgroup: SubsetMask

    @property
    def index(self) -> int:
        return len(self.cosets)

    def representative(self, i: int) -> int:
        return self.cosets[i].least()

    def preimage(self, indices: Sequence[int]) -> SubsetMask:
        """π⁻¹ of a set of coset indices."""
        out = SubsetMask.empty(self.subgroup.order_of_parent)
        for i in sorted(set(indices)):
            out = out | self.cosets[i]
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subgroup": self.subgroup.elements(),
            "cosets": [c.elements() for c in self.cosets],
            "projection": [int(i) for i in self.projection],
        }


def _require_sub(G: GyroTable, H: SubsetMask) -> None:
    check = is_subgyrogroup(G, H)
    if not check:
        raise NotSubgyrogroupError(f"{H.elements()} is not a subgyrogroup: {check.reason}")


def coset(G: GyroTable, H: SubsetMask, a: int) -> SubsetMask:
    """Left coset a⊕H."""
    return translate_set(G, a, H, Side.LEFT)


def build_quotient(G: GyroTable, H: SubsetMask) -> CosetPartition:
    """Distinct left cosets ordered by least element, so index 0 is H.

    Raises PartitionError with two overlapping unequal cosets, which can only
    happen when H is not an L-subgyrogroup.
    """
    _require_sub(G, H)
    n = G.order
    all_cosets = [coset(G, H, a) for a in range(n)]
    distinct: List[SubsetMask] = []
    for a, c in enumerate(all_cosets):
        if c in distinct:
            continue
        for d in distinct:
            if c & d:
                raise PartitionError(
                    f"cosets {d.elements()} and {c.elements()} overlap without being equal",
                    details={"cosets": [d.elements(), c.elements()], "representative": a},
                )
        distinct.append(c)
    distinct.sort(key=lambda m: m.least())

    projection = np.empty(n, dtype=np.intp)
    for i, c in enumerate(distinct):
        projection[c.elements()] = i
    projection.setflags(write=False)

    size = len(H)
    if sum(len(c) for c in distinct) != n or any(len(c) != size for c in distinct) or distinct[0] != H:
        raise PartitionError(f"cosets of {H.elements()} do not form an equal-size cover")
    logger.debug(f"Quotient by {H.elements()}: {len(distinct)} cosets")
    return CosetPartition(distinct, projection, H)


def project(P: CosetPartition, a: int) -> int:
    return int(P.projection[a])


def coset_assoc_check(G: GyroTable, H: SubsetMask) -> CheckResult:
    """a⊕(b⊕H) = (a⊕b)⊕H for all a, b."""
    T = G.table
    n = G.order
    idx = np.array(H.elements(), dtype=np.intp)
    a = np.arange(n)[:, None, None]
    nested = np.sort(T[a, T[:, idx][None, :, :]], axis=2)
    direct = np.sort(T[T[:, :, None], idx[None, None, :]], axis=2)
    fail = np.argwhere(np.any(nested != direct, axis=2))
    witness = [int(v) for v in fail[0]] if len(fail) else None
    return CheckResult("coset_associativity", witness is None, n * n, witness)


def coset_cancellation_check(G: GyroTable, H: SubsetMask) -> CheckResult:
    """⊖a⊕(a⊕H) = H for all a."""
    for a in range(G.order):
        back = translate_set(G, int(G.inverses[a]), coset(G, H, a))
        if back != H:
            return CheckResult("coset_cancellation", False, G.order, [a])
    return CheckResult("coset_cancellation", True, G.order)


def coset_translation(P: CosetPartition, G: GyroTable, a: int) -> Permutation:
    """h_a : x⊕H ↦ a⊕(x⊕H), checked independent of representative and bijective."""
    G.check_element(a)
    images = []
    for c in P.cosets:
        members = c.elements()
        targets = P.projection[G.table[a, members]]
        bad = np.flatnonzero(targets != targets[0])
        if len(bad):
            x1, x2 = members[0], members[int(bad[0])]
            raise IllDefinedTranslationError(
                f"h_{a} sends representatives {x1} and {x2} of one coset to different cosets",
                details={"a": a, "representatives": [x1, x2]},
            )
        images.append(int(targets[0]))
    if len(set(images)) != len(images):
        raise IllDefinedTranslationError(f"h_{a} is not injective on cosets", details={"a": a, "images": images})
    return Permutation(tuple(images))


def translation_well_defined_check(P: CosetPartition, G: GyroTable) -> CheckResult:
    for a in range(G.order):
        try:
            coset_translation(P, G, a)
        except IllDefinedTranslationError as e:
            return CheckResult("translation_well_defined", False, G.order, [a] + e.details.get("representatives", []))
    return CheckResult("translation_well_defined", True, G.order)


def homogeneity_check(P: CosetPartition, G: GyroTable) -> CheckResult:
    """For each coset pair with least representatives x, y: h_{y⊟x} maps x⊕H to y⊕H."""
    checked = 0
    for i in range(P.index):
        x = P.representative(i)
        for j in range(P.index):
            y = P.representative(j)
            a = codiff(G, y, x)
            checked += 1
            try:
                h = coset_translation(P, G, a)
            except IllDefinedTranslationError:
                return CheckResult("homogeneity", False, checked, [x, y, a])
            if h(i) != j:
                return CheckResult("homogeneity", False, checked, [x, y, a])
    return CheckResult("homogeneity", True, checked)


def translation_commute_check(P: CosetPartition, G: GyroTable) -> CheckResult:
    """π(a⊕x) = h_a(π(x)) for all a, x, with h_a read off least representatives."""
    T, proj = G.table, P.projection
    reps = np.array([P.representative(i) for i in range(P.index)], dtype=np.intp)
    h = proj[T[:, reps]]
    fail = np.argwhere(proj[T] != h[:, proj])
    witness = [int(v) for v in fail[0]] if len(fail) else None
    return CheckResult("translation_commute", witness is None, G.order ** 2, witness)


def saturate(G: GyroTable, H: SubsetMask, V: SubsetMask) -> SubsetMask:
    """V⊕H, the union of v⊕H over v ∈ V."""
    return set_op(G, V, H)


def saturation_check(P: CosetPartition, G: GyroTable, subsets: Sequence[SubsetMask]) -> CheckResult:
    """V⊕H = π⁻¹(π(V)) for each V."""
    for k, V in enumerate(subsets):
        pre = P.preimage(int(P.projection[v]) for v in V)
        if saturate(G, P.subgroup, V) != pre:
            return CheckResult("saturation", False, k + 1, V.elements())
    return CheckResult("saturation", True, len(subsets))


def _require_symmetric(G: GyroTable, P: SubsetMask) -> None:
    if 0 not in P:
        raise PreconditionError(f"{P.elements()} does not contain 0")
    negated = SubsetMask.from_elements(G.inverses[P.elements()].tolist(), G.order)
    if negated != P:
        raise PreconditionError(f"{P.elements()} is not symmetric under ⊖")


def intersection_identity_check(
    G: GyroTable,
    H: SubsetMask,
    P: SubsetMask,
    a: int,
    partition: Optional[CosetPartition] = None,
) -> CheckResult:
    """⊖a⊕((a⊕H)∩P) = H∩(⊖a⊕P), with λ_{⊖a} a bijection between the two sides.

    When a partition is given the fiber identity π⁻¹(π(a))∩P = (a⊕H)∩P is
    checked as well.
    """
    _require_symmetric(G, P)
    neg_a = int(G.inverses[a])
    inside = coset(G, H, a) & P
    left = translate_set(G, neg_a, inside)
    right = H & translate_set(G, neg_a, P)
    ok = left == right and len(left) == len(inside)
    details: Dict[str, Any] = {"left": left.elements(), "right": right.elements()}
    if partition is not None:
        fiber = partition.cosets[project(partition, a)] & P
        details["fiber_ok"] = fiber == inside
        ok = ok and fiber == inside
    return CheckResult("intersection_identity", ok, 1, None if ok else [a] + P.elements(), details)


def intersection_identity_scan(
    G: GyroTable, H: SubsetMask, samples: Sequence[SubsetMask], partition: Optional[CosetPartition] = None
) -> CheckResult:
    checked = 0
    for P in samples:
        for a in range(G.order):
            result = intersection_identity_check(G, H, P, a, partition)
            checked += 1
            if not result.ok:
                return CheckResult("intersection_identity", False, checked, result.witness, result.details)
    return CheckResult("intersection_identity", True, checked)


def pullback_check(P: CosetPartition, G: GyroTable, V: SubsetMask) -> CheckResult:
    """For V ∋ 0 and every x: π(V⊕x) ∩ π(V) ≠ ∅ implies x ∈ (⊖V⊕V)⊕H."""
    if 0 not in V:
        raise PreconditionError(f"{V.elements()} does not contain 0")
    image_v = {int(P.projection[v]) for v in V}
    target = set_op(G, set_op(G, SubsetMask.from_elements(G.inverses[V.elements()].tolist(), G.order), V), P.subgroup)
    for x in range(G.order):
        shifted = translate_set(G, x, V, Side.RIGHT)
        if {int(P.projection[v]) for v in shifted} & image_v and x not in target:
            return CheckResult("pullback", False, x + 1, [x] + V.elements())
    return CheckResult("pullback", True, G.order)


def t1_check(P: CosetPartition, G: GyroTable) -> CheckResult:
    """Distinct cosets are disjoint and x ∉ y⊕H exactly when π(x) ≠ π(y)."""
    for i, c in enumerate(P.cosets):
        for d in P.cosets[i + 1:]:
            if c & d:
                return CheckResult("t1", False, 0, [c.elements(), d.elements()])
    proj = P.projection
    member = np.zeros((G.order, G.order), dtype=bool)
    for y in range(G.order):
        member[coset(G, P.subgroup, y).elements(), y] = True
    fail = np.argwhere(member != (proj[:, None] == proj[None, :]))
    witness = [int(v) for v in fail[0]] if len(fail) else None
    return CheckResult("t1", witness is None, G.order ** 2, witness)


def random_subsets(G: GyroTable, count: int, rng: np.random.Generator, with_zero: bool = True) -> List[SubsetMask]:
    out = []
    for _ in range(count):
        flags = rng.random(G.order) < 0.5
        if with_zero:
            flags[0] = True
        elif not flags.any():
            flags[int(rng.integers(G.order))] = True
        out.append(SubsetMask.from_bool(flags))
    return out


def random_symmetric_subsets(G: GyroTable, count: int, rng: np.random.Generator) -> List[SubsetMask]:
    """Random unions of {x, ⊖x} pairs, always containing 0."""
    out = []
    for _ in range(count):
        flags = rng.random(G.order) < 0.5
        flags[0] = True
        flags = flags | flags[G.inverses]
        out.append(SubsetMask.from_bool(flags))
    return out


def quotient_report(
    G: GyroTable,
    H: SubsetMask,
    seed: int = 0,
    p_samples: int = DEFAULT_P_SAMPLES,
    v_samples: int = DEFAULT_V_SAMPLES,
) -> Tuple[Dict[str, Any], bool]:
    """Build G/H and run every quotient check; returns the JSON report and overall pass flag."""
    report: Dict[str, Any] = {"subgroup": H.elements()}
    checks: Dict[str, Any] = {}
    try:
        P = build_quotient(G, H)
    except PartitionError as e:
        logger.info(f"Partition fails for {H.elements()}: {e.message}")
        checks["partition"] = {"ok": False, "witness": e.details.get("cosets")}
        checks["coset_associativity"] = coset_assoc_check(G, H).to_dict()
        report.update({"cosets": None, "projection": None, "checks": checks})
        return report, False

    report["cosets"] = [c.elements() for c in P.cosets]
    report["projection"] = [int(i) for i in P.projection]
    checks["partition"] = {"ok": True, "witness": None}

    rng = np.random.default_rng(seed)
    symmetric = random_symmetric_subsets(G, p_samples, rng)
    v_sets = random_subsets(G, v_samples, rng, with_zero=False)
    v_zero = random_subsets(G, v_samples, rng, with_zero=True)
    results = [
        coset_assoc_check(G, H),
        coset_cancellation_check(G, H),
        translation_well_defined_check(P, G),
        homogeneity_check(P, G),
        translation_commute_check(P, G),
        saturation_check(P, G, v_sets),
        intersection_identity_scan(G, H, symmetric, P),
        t1_check(P, G),
    ]
    pull = [pullback_check(P, G, V) for V in v_zero]
    failed = next((r for r in pull if not r.ok), None)
    results.append(failed or CheckResult("pullback", True, sum(r.checked for r in pull)))

    for r in results:
        checks[r.name] = r.to_dict()
    report["checks"] = checks
    ok = all(r.ok for r in results)
    return report, ok

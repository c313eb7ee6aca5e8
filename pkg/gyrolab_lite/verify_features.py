"""
Quick smoke run over every subsystem; prints a JSON summary.
Usage: python3 -m gyrolab_lite.verify_features
"""

import json
import tempfile
from pathlib import Path

from .axioms import check_identity_suite, verify_axioms
from .catalog import cyclic_table, klein_table, symmetric_table
from .gensearch import SearchConfig, generate_gyrogroups, search_L_not_SL
from .gyrotable import load_table_file
from .models import ModelKind, model_identity_sampler
from .quotient import quotient_report
from .subgyro import classify_all

CATALOG_DIR = Path(__file__).resolve().parents[1] / "catalog"


def smoke_tables():
    print("\n=== Tables ===")
    results = {}
    for name, G in [("Z4", cyclic_table(4)), ("K4", klein_table()), ("S3", symmetric_table(3))]:
        axioms = verify_axioms(G)
        identities = check_identity_suite(G)
        print(f"{name}: axioms ok={axioms.ok} group={axioms.is_group} identities ok={identities.ok}")
        results[name] = {"axioms_ok": axioms.ok, "is_group": axioms.is_group, "identities_ok": identities.ok}
    return results


def smoke_catalog():
    print("\n=== Catalog g8 ===")
    G = load_table_file(CATALOG_DIR / "g8.json")
    axioms = verify_axioms(G)
    classes = classify_all(G)
    report, ok = quotient_report(G, G.mask([0, 1, 2, 3]))
    print(f"g8: group={axioms.is_group}, {len(classes)} subgyrogroups, quotient ok={ok}")
    return {
        "axioms_ok": axioms.ok,
        "is_group": axioms.is_group,
        "subgyrogroups": len(classes),
        "quotient_cosets": report["cosets"],
    }


def smoke_models(samples=500):
    print("\n=== Models ===")
    results = {}
    for kind in ModelKind:
        report = model_identity_sampler(kind, samples=samples, seed=1)
        print(f"{kind.value}: ok={report.ok}")
        results[kind.value] = report.ok
    return results


def smoke_search(max_order=4):
    print("\n=== Search ===")
    counts = {n: len(generate_gyrogroups(n)) for n in range(1, max_order + 1)}
    with tempfile.TemporaryDirectory() as tmpdir:
        result = search_L_not_SL(SearchConfig(max_order=max_order, output_path=tmpdir))
        written = len(list(Path(tmpdir).iterdir()))
    print(f"Tables per order: {counts}, witness: {result.witness is not None}")
    return {"tables_per_order": counts, "witness": result.summary["witness"], "classes_written": written}


def main():
    results = {}
    for name, fn in [("tables", smoke_tables), ("catalog", smoke_catalog),
                     ("models", smoke_models), ("search", smoke_search)]:
        try:
            results[name] = fn()
        except Exception as e:
            print(f"{name} smoke run failed: {e}")
            results[name] = {"error": str(e)}

    print("\n=== Final Results ===")
    print(json.dumps(results, indent=2, default=str))
    return results


if __name__ == "__main__":
    main()

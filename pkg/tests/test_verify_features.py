from gyrolab_lite import verify_features


def test_smoke_tables():
    results = verify_features.smoke_tables()
    assert set(results) == {"Z4", "K4", "S3"}
    assert all(r == {"axioms_ok": True, "is_group": True, "identities_ok": True} for r in results.values())


def test_smoke_catalog():
    results = verify_features.smoke_catalog()
    assert results["is_group"] is False
    assert results["subgyrogroups"] == 12
    assert results["quotient_cosets"] == [[0, 1, 2, 3], [4, 5, 6, 7]]


def test_smoke_models():
    assert verify_features.smoke_models(samples=200) == {"mobius": True, "einstein": True}


def test_smoke_search():
    results = verify_features.smoke_search(max_order=4)
    assert results["tables_per_order"] == {1: 1, 2: 1, 3: 1, 4: 4}
    assert results["witness"] is None
    assert results["classes_written"] == 4

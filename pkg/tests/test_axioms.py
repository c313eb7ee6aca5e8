import pytest

from gyrolab_lite.axioms import (
    AxiomTag,
    check_identity_suite,
    check_right_cancellation,
    is_group,
    verify_axioms,
)
from gyrolab_lite.catalog import cyclic_table


def test_z4_is_group(z4):
    report = verify_axioms(z4)
    assert report.ok
    assert (report.g1_ok, report.g2_ok, report.g3_ok, report.g4_ok) == (True, True, True, True)
    assert report.is_group
    assert is_group(z4)


def test_s3_is_group(s3):
    assert s3.order == 6
    assert is_group(s3)
    assert verify_axioms(s3).ok


def test_g8_is_gyrogroup_not_group(g8):
    report = verify_axioms(g8)
    assert report.ok
    assert not report.is_group
    assert not is_group(g8)


def test_rejected_loop_has_witness(loop5):
    report = verify_axioms(loop5)
    assert not (report.g3_ok and report.g4_ok)
    assert report.violations
    tag, witness = report.violations[0]
    assert tag in (AxiomTag.G3, AxiomTag.G4)
    assert all(0 <= x < 5 for x in witness)
    assert not report.is_group


def test_g3_witness_breaks_automorphism(loop5):
    report = verify_axioms(loop5)
    g3 = [w for tag, w in report.violations if tag is AxiomTag.G3]
    if g3:
        a, b, x, y = g3[0]
        T = loop5.table
        S = loop5.gyr_slab(a)[b]
        assert S[T[x, y]] != T[S[x], S[y]]


@pytest.mark.parametrize("fixture", ["z4", "k4", "s3", "g8"])
def test_identity_suite_passes(fixture, request):
    G = request.getfixturevalue(fixture)
    report = check_identity_suite(G)
    assert report.ok
    assert [r.id for r in report.results] == [1, 2, 3, 4, 5, 6, 7]
    for r in report.results:
        assert r.passed == r.checked


def test_identity_suite_scan_sizes(g8):
    report = check_identity_suite(g8)
    assert report[1].checked == 8
    assert report[2].checked == 64
    assert report[3].checked == 512
    assert report[5].checked == 512
    assert report[6].checked == 64


def test_rejected_loop_fails_some_identity(loop5):
    report = check_identity_suite(loop5)
    assert not report.ok
    failing = [r for r in report.results if not r.ok]
    assert all(r.witness is not None and r.passed < r.checked for r in failing)


def test_axiom_check_is_idempotent(g8, loop5):
    for G in (g8, loop5):
        assert verify_axioms(G).to_dict() == verify_axioms(G).to_dict()
        assert check_identity_suite(G).to_dict() == check_identity_suite(G).to_dict()


def test_right_cancellation(g8):
    result = check_right_cancellation(g8)
    assert result.ok
    assert result.checked == 64


def test_report_serialization(z4):
    data = verify_axioms(z4).to_dict()
    assert list(data) == ["g1_ok", "g2_ok", "g3_ok", "g4_ok", "is_group", "violations"]
    identities = check_identity_suite(cyclic_table(3)).to_dict()
    assert identities[0] == {"id": 1, "name": "involution of inversion", "ok": True,
                             "checked": 3, "passed": 3, "witness": None}

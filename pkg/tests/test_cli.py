import json

import pytest

from gyrolab_lite.cli import EXIT_FINDING, EXIT_OK, EXIT_USAGE, main


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main([str(a) for a in argv])
        out = capsys.readouterr().out
        return code, (json.loads(out) if out.strip() else None), out
    return _run


@pytest.fixture
def g8_path(catalog_dir):
    return catalog_dir / "g8.json"


class TestVerify:
    def test_gyrogroup_passes(self, run, g8_path):
        code, report, _ = run("verify", g8_path)
        assert code == EXIT_OK
        assert report["order"] == 8
        assert report["axioms"]["is_group"] is False
        assert all(r["ok"] for r in report["identities"])

    def test_rejected_loop_is_finding(self, run, fixtures_dir):
        code, report, _ = run("verify", fixtures_dir / "loop5_rejected.json")
        assert code == EXIT_FINDING
        assert report["axioms"]["violations"]

    def test_malformed_table(self, run, fixtures_dir, capsys):
        code, report, _ = run("verify", fixtures_dir / "broken.json")
        assert code == EXIT_USAGE
        assert report is None

    def test_missing_file(self, run, tmp_path):
        code, _, _ = run("verify", tmp_path / "absent.json")
        assert code == EXIT_USAGE

    def test_output_is_byte_identical(self, run, g8_path):
        assert run("verify", g8_path)[2] == run("verify", g8_path)[2]


class TestClassify:
    def test_z4_subgroup(self, run, fixtures_dir):
        code, report, _ = run("classify", fixtures_dir / "z4.txt", "--subset", "0,2")
        assert code == EXIT_OK
        assert report["flags"] == {"subgyrogroup": True, "L": True, "strongly_L": True, "normal_sufficient": True}

    def test_not_subgyrogroup(self, run, fixtures_dir):
        code, report, _ = run("classify", fixtures_dir / "z4.json", "--subset", "0,1")
        assert code == EXIT_FINDING
        assert report["subgyrogroup"]["witness"] == [1, 1, 2]

    def test_g8_all(self, run, g8_path):
        code, report, _ = run("classify", g8_path, "--all")
        assert code == EXIT_OK
        assert report["counts"] == {"subgyrogroups": 12, "L": 8, "strongly_L": 8, "normal_sufficient": 2}
        assert report["L_not_strongly_L"] == []

    def test_g8_not_L(self, run, g8_path):
        code, report, _ = run("classify", g8_path, "--subset", "0,2")
        assert code == EXIT_OK
        assert report["flags"]["L"] is False
        assert report["witnesses"]["L"] == [4, 2, 2]

    def test_element_out_of_range(self, run, fixtures_dir, capsys):
        code = main(["classify", str(fixtures_dir / "z4.txt"), "--subset", "0,9"])
        err = capsys.readouterr().err
        assert code == EXIT_USAGE
        assert "ElementRangeError" in err

    def test_subset_required(self, run, fixtures_dir):
        code, _, _ = run("classify", fixtures_dir / "z4.txt")
        assert code == EXIT_USAGE


class TestQuotient:
    def test_g8_block_quotient(self, run, g8_path):
        code, report, _ = run("quotient", g8_path, "--subset", "0,1,2,3", "--seed", 3)
        assert code == EXIT_OK
        assert report["cosets"] == [[0, 1, 2, 3], [4, 5, 6, 7]]
        assert report["projection"] == [0, 0, 0, 0, 1, 1, 1, 1]
        assert all(c["ok"] for c in report["checks"].values())

    def test_partition_failure(self, run, g8_path):
        code, report, _ = run("quotient", g8_path, "--subset", "0,2")
        assert code == EXIT_FINDING
        assert report["checks"]["partition"] == {"ok": False, "witness": [[4, 7], [4, 6]]}
        assert report["cosets"] is None

    def test_same_seed_same_report(self, run, g8_path):
        first = run("quotient", g8_path, "--subset", "0,4", "--seed", 11)[2]
        assert run("quotient", g8_path, "--subset", "0,4", "--seed", 11)[2] == first


class TestModels:
    @pytest.mark.parametrize("model", ["mobius", "einstein"])
    def test_small_run(self, run, model):
        code, report, _ = run("models", "--model", model, "--samples", 300, "--seed", 2, "--workers", 1)
        assert code == EXIT_OK
        assert report["model"] == model
        assert report["samples"] == 300
        assert all(entry["ok"] for entry in report["identities"])
        assert "dual_path" in {entry["name"] for entry in report["identities"]}

    def test_bad_sample_count(self, run):
        code, _, _ = run("models", "--samples", 0)
        assert code == EXIT_USAGE

    def test_unknown_model(self, run):
        code, _, _ = run("models", "--model", "poincare")
        assert code == EXIT_USAGE


class TestSearch:
    def test_small_search(self, run, tmp_path):
        code, summary, _ = run("search", "--max-order", 4, "--catalog", tmp_path, "--workers", 1)
        assert code == EXIT_OK
        assert summary["witness"] is None
        assert summary["scanned"] == {"gyrogroups": 4, "subgyrogroups": 12}
        assert len(list(tmp_path.glob("*.json"))) == 4

    def test_above_bound(self, run, tmp_path, capsys):
        code = main(["search", "--max-order", "7", "--catalog", str(tmp_path), "--workers", "1"])
        err = capsys.readouterr().err
        assert code == EXIT_USAGE
        assert '"code_name": "RESOURCE_LIMIT"' in err


def test_version(capsys):
    assert main(["--version"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("gyrolab-lite ")

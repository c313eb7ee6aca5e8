import io
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gyrolab_lite.exceptions import ElementRangeError, PreconditionError, TableParseError, TableStructureError
from gyrolab_lite.gyrotable import (
    GyroTable,
    Permutation,
    Side,
    TableFormat,
    codiff,
    coop,
    dump_table,
    gyr,
    gyr_map,
    inv,
    left_translation,
    load_table,
    load_table_file,
    neg_set,
    op,
    relabel,
    right_translation,
    set_op,
    translate_set,
)
from gyrolab_lite.masks import SubsetMask

Z4_ROWS = [[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]]
G8_ROWS = json.loads(
    '[[0,1,2,3,4,5,6,7],[1,0,3,2,5,4,7,6],[2,3,0,1,6,7,4,5],[3,2,1,0,7,6,5,4],'
    '[4,5,7,6,0,1,3,2],[5,4,6,7,1,0,2,3],[6,7,4,5,2,3,0,1],[7,6,5,4,3,2,1,0]]'
)
G8_NONTRIVIAL = Permutation((0, 1, 3, 2, 4, 5, 7, 6))

elements8 = st.integers(min_value=0, max_value=7)


class TestLoading:
    def test_z4_json(self):
        G = load_table(json.dumps({"order": 4, "table": Z4_ROWS}).encode(), TableFormat.JSON)
        assert G.order == 4
        assert G.inverses.tolist() == [0, 3, 2, 1]

    def test_z4_text_file(self, fixtures_dir):
        G = load_table_file(fixtures_dir / "z4.txt")
        assert G.table.tolist() == Z4_ROWS

    def test_byte_stream(self):
        G = load_table(io.BytesIO(b"2\n0 1\n1 0\n"), TableFormat.TEXT)
        assert G.order == 2

    def test_duplicate_row_entry(self, fixtures_dir):
        with pytest.raises(TableStructureError, match="row 0 not a permutation"):
            load_table_file(fixtures_dir / "broken.json")

    def test_g8_catalog(self, g8):
        assert g8.order == 8
        assert g8.table.tolist() == G8_ROWS

    def test_malformed_json(self):
        with pytest.raises(TableParseError):
            load_table(b'{"order": 2, "table": [[0, 1], [1', TableFormat.JSON)

    def test_text_row_count_mismatch(self):
        with pytest.raises(TableParseError):
            load_table(b"3\n0 1 2\n1 2 0\n", TableFormat.TEXT)

    def test_entry_out_of_range(self):
        with pytest.raises(ElementRangeError):
            load_table(b"2\n0 1\n1 5\n", TableFormat.TEXT)

    def test_identity_elsewhere_is_relabeled(self):
        G = load_table(json.dumps({"table": [[1, 0], [0, 1]], "elements": ["a", "e"]}), TableFormat.JSON)
        assert G.table.tolist() == [[0, 1], [1, 0]]
        assert G.relabeling == (1, 0)
        assert G.elements == ("e", "a")

    def test_empty_json_table(self):
        with pytest.raises(TableParseError, match="no rows"):
            load_table(b'{"order": 0, "table": []}', TableFormat.JSON)

    def test_quasigroup_without_identity(self):
        with pytest.raises(TableStructureError, match="identity"):
            load_table(b"3\n0 2 1\n2 1 0\n1 0 2\n", TableFormat.TEXT)

    def test_constructor_requires_identity_zero(self):
        with pytest.raises(TableStructureError, match="identity 0"):
            GyroTable([[1, 0], [0, 1]])
        assert GyroTable([[1, 0], [0, 1]], move_identity=True).relabeling == (1, 0)

    def test_missing_two_sided_inverse(self):
        rows = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 1, 0, 3], [3, 2, 4, 1, 0], [4, 3, 0, 2, 1]]
        with pytest.raises(TableStructureError, match="inverse"):
            GyroTable(rows)

    def test_tables_are_read_only(self, z4):
        with pytest.raises(ValueError):
            z4.table[0, 0] = 1

    def test_dump_reloads(self, g8):
        for fmt in TableFormat:
            assert load_table(dump_table(g8, fmt), fmt) == g8


class TestPrimitives:
    def test_op(self, z4):
        assert op(z4, 1, 3) == 0
        assert all(op(z4, 0, b) == b for b in range(4))

    def test_op_out_of_range(self, z4):
        with pytest.raises(ElementRangeError):
            op(z4, 4, 0)

    def test_g8_non_associative_triple(self, g8):
        assert op(g8, op(g8, 2, 4), 2) == 4
        assert op(g8, 2, op(g8, 4, 2)) == 5

    def test_inv(self, z4, g8):
        assert inv(z4, 1) == 3
        assert inv(z4, 0) == 0
        assert all(inv(g8, inv(g8, a)) == a for a in range(8))

    def test_gyr_trivial_cases(self, z4, g8):
        assert all(gyr(g8, a, 0, z) == z for a in range(8) for z in range(8))
        assert all(gyr(z4, a, b, z) == z for a in range(4) for b in range(4) for z in range(4))

    def test_g8_nontrivial_gyration(self, g8):
        assert gyr(g8, 2, 4, 2) == 3
        assert gyr_map(g8, 2, 4) == G8_NONTRIVIAL
        assert not gyr_map(g8, 2, 4).is_identity

    def test_gyr_map_identity_cases(self, z4, g8):
        assert gyr_map(g8, 0, 5).is_identity
        assert gyr_map(z4, 1, 2).is_identity

    def test_g8_gyrations_take_two_values(self, g8):
        maps = {gyr_map(g8, a, b) for a in range(8) for b in range(8)}
        assert maps == {Permutation.identity(8), G8_NONTRIVIAL}

    def test_coaddition(self, z4, g8):
        assert all(coop(g8, a, 0) == a for a in range(8))
        assert all(coop(z4, a, b) == op(z4, a, b) for a in range(4) for b in range(4))
        assert all(codiff(g8, a, a) == 0 for a in range(8))

    def test_translate_set(self, z4):
        S = z4.mask([0, 2])
        assert translate_set(z4, 0, S) == S
        assert translate_set(z4, 1, S, Side.LEFT).elements() == [1, 3]
        assert translate_set(z4, 1, S, Side.RIGHT).elements() == [1, 3]

    def test_set_algebra(self, z4):
        A = z4.mask([1])
        assert set_op(z4, A, A).elements() == [2]
        assert neg_set(z4, z4.mask([1, 2])).elements() == [2, 3]
        assert set_op(z4, SubsetMask.empty(4), A) == SubsetMask.empty(4)

    def test_translation_permutations(self, g8):
        assert left_translation(g8, 4).to_list() == G8_ROWS[4]
        assert right_translation(g8, 4).to_list() == [row[4] for row in G8_ROWS]


class TestCache:
    def test_lazy_matches_eager(self, g8):
        lazy = GyroTable(g8.table, eager_cache_limit=2)
        assert not lazy.eager
        for a in range(8):
            for b in range(8):
                assert gyr_map(lazy, a, b) == gyr_map(g8, a, b)
        assert np.array_equal(lazy.gyr_cube(), g8.gyr_cube())

    @given(elements8, elements8)
    def test_cache_coherence(self, a, b):
        G = GyroTable(G8_ROWS)
        perm = gyr_map(G, a, b)
        assert all(perm(z) == gyr(G, a, b, z) for z in range(8))


class TestRelabel:
    def test_relabel_must_fix_identity(self, z4):
        with pytest.raises(PreconditionError):
            relabel(z4, [1, 0, 2, 3])

    def test_automorphism_relabel_is_same_table(self, z4):
        assert relabel(z4, [0, 3, 2, 1]) == z4

    @given(st.permutations(range(1, 8)))
    def test_relabel_is_isomorphism(self, tail):
        G = GyroTable(G8_ROWS)
        perm = [0] + list(tail)
        H = relabel(G, perm)
        for a in range(8):
            for b in range(8):
                assert op(H, perm[a], perm[b]) == perm[op(G, a, b)]


@given(elements8, elements8)
def test_left_cancellation(a, b):
    G = GyroTable(G8_ROWS)
    assert op(G, inv(G, a), op(G, a, b)) == b


@given(elements8, st.sets(elements8, min_size=1))
def test_translation_preserves_cardinality(a, elements):
    G = GyroTable(G8_ROWS)
    S = G.mask(elements)
    assert len(translate_set(G, a, S)) == len(S)
    assert len(translate_set(G, a, S, Side.RIGHT)) == len(S)


@given(elements8, elements8)
def test_right_cancellation(x, y):
    G = GyroTable(G8_ROWS)
    assert op(G, codiff(G, y, x), x) == y

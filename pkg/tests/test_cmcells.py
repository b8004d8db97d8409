import numpy as np
import pytest

from gaudinrsk.combinatorics import Permutation, all_permutations, rs_permutation
from gaudinrsk.cmcells import (
    CellPartition,
    cm_point,
    gamma_path,
    kl_reference_cells,
    left_cells,
    right_cells,
    two_sided_cells,
    upsilon,
    y_scaled,
)


class TestCMPoints:
    def test_rank_one_invariant(self):
        point = cm_point((1.0, 2.0, 4.0), (0.5, -1.0, 2.0))
        assert point.rank_defect() < 1e-8

    def test_rejects_colliding_positions(self):
        with pytest.raises(ValueError):
            cm_point((1.0, 1.0), (0.0, 0.0))

    def test_upsilon_n2(self):
        # z = (0, 0) forces Y eigenvalues p_avg +- i/(z gap); use distinct z
        point = cm_point((0.0, 1.0), (0.0, 0.0))
        z_eigs, y_eigs = upsilon(point)
        assert np.allclose(sorted(v.real for v in z_eigs), [0.0, 1.0])
        # Y = [[0, -1], [1, 0]] has spectrum {i, -i}
        assert np.allclose(sorted(v.imag for v in y_eigs), [-1.0, 1.0])
        assert np.allclose([v.real for v in y_eigs], [0.0, 0.0])

    def test_momentum_dominant_degeneration(self):
        z = (1.0, 2.0, 3.0)
        p = (5.0, 7.0, 11.0)
        point = y_scaled(z, p, 1e8)
        _, y_eigs = upsilon(point)
        assert np.allclose(sorted(v.real for v in y_eigs), sorted(p), atol=1e-6)
        assert max(abs(v.imag) for v in y_eigs) < 1e-6

    def test_gamma_path_shrinks_z(self):
        path = gamma_path((1.0, 2.0), (3.0, 4.0), t_end=1e-3)
        z, q = path.point(1e-3)
        assert np.allclose(z, (1e-3, 2e-3))
        assert q == (3.0, 4.0)


class TestCellPartition:
    def test_rejects_non_partition(self):
        w = all_permutations(2)
        with pytest.raises(ValueError):
            CellPartition(2, "right", [[w[0]]])

    def test_canonical_order_and_eq(self):
        w = all_permutations(2)
        a = CellPartition(2, "right", [[w[1]], [w[0]]])
        b = CellPartition(2, "right", [[w[0]], [w[1]]])
        assert a == b

    def test_join(self):
        w = all_permutations(3)
        rows = CellPartition(3, "right", [[x] for x in w])
        full = CellPartition(3, "left", [list(w)])
        assert rows.join(full).block_sizes() == [6]

    def test_block_of(self):
        cells = kl_reference_cells(3, "two-sided")
        e = Permutation((1, 2, 3))
        assert cells.block_of(e) == [e]
        with pytest.raises(KeyError):
            kl_reference_cells(2, "right").block_of(Permutation((1, 2, 3)))


class TestKLReference:
    def test_counts(self):
        # cells counted by tableaux: right/left by SYT, two-sided by shapes
        assert len(kl_reference_cells(3, "right").blocks) == 4
        assert len(kl_reference_cells(3, "left").blocks) == 4
        assert len(kl_reference_cells(3, "two-sided").blocks) == 3
        assert len(kl_reference_cells(4, "right").blocks) == 10

    def test_two_sided_sizes(self):
        assert kl_reference_cells(3, "two-sided").block_sizes() == [1, 1, 4]
        assert kl_reference_cells(4, "two-sided").block_sizes() == [1, 1, 4, 9, 9]

    def test_left_right_related_by_inverse(self):
        right = kl_reference_cells(3, "right")
        left = kl_reference_cells(3, "left")
        inverted = CellPartition(
            3, "left", [[w.inverse() for w in block] for block in right.blocks]
        )
        assert inverted == left

    def test_right_blocks_share_insertion_tableau(self):
        for block in kl_reference_cells(3, "right").blocks:
            symbols = {rs_permutation(w)[0].rows for w in block}
            assert len(symbols) == 1

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            kl_reference_cells(3, "diagonal")


class TestFlowCells:
    def test_right_cells_n2(self):
        assert right_cells(2) == kl_reference_cells(2, "right")

    def test_right_cells_n3(self):
        assert right_cells(3) == kl_reference_cells(3, "right")

    def test_left_cells_n3(self):
        assert left_cells(3) == kl_reference_cells(3, "left")

    def test_two_sided_cells_n3(self):
        assert two_sided_cells(3) == kl_reference_cells(3, "two-sided")

    def test_custom_parameters(self):
        cells = right_cells(2, z=(1.0, 3.0), q=(2.0, 5.0))
        assert cells == kl_reference_cells(2, "right")

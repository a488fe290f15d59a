import numpy as np
import pytest

from goa import constructions as cx
from goa import designs as dz
from goa import expand as ex
from goa import gf
from goa.errors import ShapeMismatchError, StrengthPrereqError


@pytest.fixture(scope="module")
def goa32():
    best, _ = cx.rank_primitive_polys(2, 5, 8)[0]
    return cx.construct_consecutive(gf.ext_field(2, 5, best), 8)


class TestLhd:
    def test_columns_are_permutations(self, thm1_3):
        real = ex.oa_to_lhd(thm1_3.design, seed=3)
        for c in range(real.cols):
            assert np.array_equal(np.sort(real.int_matrix[:, c]), np.arange(27))

    def test_strata_recover_parent(self, thm1_3):
        real = ex.oa_to_lhd(thm1_3.design, seed=3)
        assert np.array_equal(real.int_matrix // 9, thm1_3.design.matrix)

    def test_centered_range(self, thm1_3):
        real = ex.oa_to_lhd(thm1_3.design, seed=0)
        assert real.matrix.min() >= -0.5 and real.matrix.max() <= 0.5

    def test_deterministic(self, thm1_3):
        a = ex.oa_to_lhd(thm1_3.design, seed=12)
        b = ex.oa_to_lhd(thm1_3.design, seed=12)
        assert np.array_equal(a.int_matrix, b.int_matrix)

    def test_projection_stratification(self, thm1_3):
        # any pair of columns keeps 9 points per 2-d stratum cell (strength 2)
        real = ex.oa_to_lhd(thm1_3.design, seed=5)
        cell = real.int_matrix[:, [0, 4]] // 9
        enc = cell[:, 0] * 3 + cell[:, 1]
        assert np.all(np.bincount(enc, minlength=9) == 3)


class TestRotation:
    def test_q_gram(self):
        q = ex.ROTATION_Q
        assert np.array_equal(q.T @ q, 21 * np.eye(4, dtype=np.int64))

    def test_rotation_orthogonal(self, goa32):
        real = ex.rotate_columns(goa32)
        gram = real.int_matrix.T @ real.int_matrix
        assert real.int_matrix.shape == (32, 24)
        assert not (gram - np.diag(np.diag(gram))).any()

    def test_eight_levels(self, goa32):
        real = ex.rotate_columns(goa32)
        for c in range(real.cols):
            assert sorted(set(real.int_matrix[:, c])) == [-7, -5, -3, -1, 1, 3, 5, 7]
        assert np.all(np.abs(real.normalized) <= 0.5)

    def test_elementwise_product_orthogonality(self, goa32):
        real = ex.rotate_columns(goa32)
        for i in range(3):
            block = real.int_matrix[:, 8 * i : 8 * (i + 1)]
            for u in range(8):
                for v in range(u + 1, 8):
                    prod = block[:, u] * block[:, v]
                    for w in range(8):
                        if w not in (u, v):
                            assert prod @ block[:, w] == 0

    def test_requires_two_levels(self, thm1_3):
        with pytest.raises(ShapeMismatchError):
            ex.rotate_columns(thm1_3)

    def test_requires_eight_column_groups(self, ebert2):
        with pytest.raises(ShapeMismatchError):
            ex.rotate_columns(ebert2)

    def test_requires_strength3(self):
        # 8 pairwise-independent columns with a dependent triple: strength 2 only
        d = dz.expand_generator(dz.GeneratorMatrix(2, [
            [1, 0, 1, 0, 1, 0, 1, 0],
            [0, 1, 1, 0, 0, 1, 1, 0],
            [0, 0, 0, 1, 1, 1, 1, 0],
            [0, 0, 0, 0, 0, 0, 0, 1],
        ]))
        gd = dz.GroupedDesign(d, [dz.Group(list(range(8)), claimed_strength=2)])
        with pytest.raises(StrengthPrereqError):
            ex.rotate_columns(gd)

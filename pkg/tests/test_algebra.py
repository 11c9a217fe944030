import numpy as np
import pytest

from cealg import catalog
from cealg.algebra import (
    GroupAlgebra,
    center_basis,
    commutator,
    omega_ideal_basis,
    subgroup_idempotent,
)
from cealg.fields import field_make


@pytest.fixture(scope="module")
def q8_f2():
    return GroupAlgebra(catalog.quaternion8(), field_make(2))


class TestRingOps:
    def test_char2_square(self, f2):
        alg = GroupAlgebra(catalog.cyclic(2), f2)
        x = alg.from_support([(0, 1), (1, 1)])
        assert (x * x).is_zero()

    def test_identity_neutral(self, q8_f2, rng):
        one = q8_f2.one()
        for _ in range(20):
            x = q8_f2.random_nonzero(rng)
            assert one * x == x and x * one == x

    def test_quaternion_table_product(self, q8_f2):
        g = q8_f2.group
        i = q8_f2.basis(g.index_of_label("i"))
        j = q8_f2.basis(g.index_of_label("j"))
        assert i * j == q8_f2.basis(g.index_of_label("k"))

    def test_group_field_mismatch(self, q8_f2, f3):
        other = GroupAlgebra(catalog.quaternion8(), f3)
        with pytest.raises(ValueError):
            q8_f2.one() + other.one()

    def test_scale_and_neg(self, f3):
        alg = GroupAlgebra(catalog.cyclic(3), f3)
        x = alg.from_support([(1, 2)])
        assert x.scale(2) == alg.from_support([(1, 1)])
        assert (x + (-x)).is_zero()

    def test_extension_field_product(self, f4):
        alg = GroupAlgebra(catalog.cyclic(2), f4)
        # (t + (t+1) g)^2 = t^2 + (t+1)^2 g^2 = t^2 + (t+1)^2 in char 2
        x = alg.from_support([(0, 2), (1, 3)])
        sq = x * x
        want = f4.add(f4.mul(2, 2), f4.mul(3, 3))
        assert sq == alg.from_support([(0, want)])


class TestCommutator:
    def test_self_commutator_zero(self, q8_f2, rng):
        x = q8_f2.random_nonzero(rng)
        assert commutator(x, x).is_zero()

    def test_ij_commutator(self, q8_f2):
        g = q8_f2.group
        i = q8_f2.basis(g.index_of_label("i"))
        j = q8_f2.basis(g.index_of_label("j"))
        c = commutator(i, j)
        assert not c.is_zero()
        assert {g.label(idx) for idx, _ in c.support()} == {"k", "-k"}

    def test_class_sums_commute_with_basis(self, q8_f2):
        for s in q8_f2.center_basis.class_sums:
            for g in range(8):
                assert commutator(q8_f2.basis(g), s).is_zero()


class TestAugmentation:
    def test_identity(self, q8_f2):
        assert q8_f2.one().augmentation() == 1

    def test_one_plus_g(self, f2):
        alg = GroupAlgebra(catalog.cyclic(2), f2)
        assert alg.from_support([(0, 1), (1, 1)]).augmentation() == 0

    def test_noncentral_class_sum_augments_to_zero(self, f2):
        alg = GroupAlgebra(catalog.dihedral(16), f2)
        for s in alg.center_basis.class_sums:
            if len(s.support()) > 1:
                assert s.augmentation() == 0

    def test_ring_morphism(self, f3, rng):
        alg = GroupAlgebra(catalog.sym3(), f3)
        for _ in range(50):
            x, y = alg.random_nonzero(rng), alg.random_nonzero(rng)
            assert (x * y).augmentation() == f3.mul(x.augmentation(), y.augmentation())
            assert (x + y).augmentation() == f3.add(x.augmentation(), y.augmentation())


class TestCenter:
    def test_commutative_center_dim(self, f2):
        c6 = catalog.cyclic(6)
        assert center_basis(c6, f2).dim == 6

    def test_q8_center_dim(self, q8_f2):
        assert q8_f2.center_basis.dim == 5

    def test_d16_center_dim(self, f2):
        assert center_basis(catalog.dihedral(16), f2).dim == 7

    def test_class_sums_central(self, q8_f2):
        for s in q8_f2.center_basis.class_sums:
            assert q8_f2.is_central(s)

    def test_basis_element_not_central(self, q8_f2):
        i = q8_f2.basis(q8_f2.group.index_of_label("i"))
        assert not q8_f2.is_central(i)

    def test_all_central_when_commutative(self, f3, rng):
        alg = GroupAlgebra(catalog.cyclic(6), f3)
        for _ in range(10):
            assert alg.is_central(alg.random_nonzero(rng))


class TestOmegaIdeal:
    def test_trivial_subgroup(self, q8_f2):
        assert omega_ideal_basis(q8_f2, [0]) == []

    def test_full_c2(self, f2):
        alg = GroupAlgebra(catalog.cyclic(2), f2)
        basis = omega_ideal_basis(alg, [0, 1])
        assert len(basis) == 1
        assert basis[0] == alg.from_support([(0, 1), (1, 1)])

    def test_center_of_q8(self, q8_f2):
        z = q8_f2.group.center
        assert len(omega_ideal_basis(q8_f2, z)) == 8 - 8 // 2

    def test_rejects_non_subgroup(self, q8_f2):
        i = q8_f2.group.index_of_label("i")
        with pytest.raises(ValueError, match="subgroup"):
            omega_ideal_basis(q8_f2, [0, i])

    def test_normal_dimension_formula(self, f2):
        d16 = catalog.dihedral(16)
        alg = GroupAlgebra(d16, f2)
        r2 = d16.subgroup_generated([d16.index_of_label("r^2")])
        assert d16.is_normal(r2)
        assert len(omega_ideal_basis(alg, r2)) == 16 - 16 // 4


class TestIdempotents:
    def test_trivial_subgroup_gives_identity(self, q8_f2):
        assert subgroup_idempotent(q8_f2, [0]) == q8_f2.one()

    def test_a3_in_s3_char2(self, f2):
        s3 = catalog.sym3()
        alg = GroupAlgebra(s3, f2)
        a3 = s3.commutator_subgroup
        e = subgroup_idempotent(alg, a3)
        assert e == alg.from_support([(i, 1) for i in a3])
        assert e * e == e
        assert alg.is_central(e)

    def test_order2_subgroup_char3(self, f3):
        c6 = catalog.cyclic(6)
        alg = GroupAlgebra(c6, f3)
        h = c6.subgroup_generated([3])
        e = subgroup_idempotent(alg, h)
        assert e == alg.from_support([(0, 2), (3, 2)])
        assert e * e == e

    def test_char_divides_order_rejected(self, f3):
        alg = GroupAlgebra(catalog.cyclic(6), f3)
        with pytest.raises(ZeroDivisionError):
            subgroup_idempotent(alg, catalog.cyclic(6).subgroup_generated([2]))


class TestCenterSumAnnihilation:
    @pytest.mark.parametrize("p", [2, 3])
    def test_center_sum_kills_central_subgroup_sum(self, p):
        g = catalog.p5_class3_group(p)
        alg = GroupAlgebra(g, field_make(p))
        z = g.center
        sig_z = alg.from_support([(i, 1) for i in z])
        h = g.subgroup_generated([z[1]])
        assert len(h) % p == 0
        sig_h = alg.from_support([(i, 1) for i in h])
        assert (sig_z * sig_h).is_zero()

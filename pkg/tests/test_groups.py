import numpy as np
import pytest

from cealg import catalog
from cealg.groups import (
    FiniteGroup,
    GroupValidationError,
    direct_product,
    group_from_generators,
    semidirect_product,
)

# a Latin square with identity and two-sided inverses that is not associative
NONASSOC_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


class TestValidation:
    def test_rejects_non_latin(self):
        with pytest.raises(GroupValidationError):
            FiniteGroup([[0, 1], [1, 1]])

    def test_rejects_wrong_identity(self):
        with pytest.raises(GroupValidationError):
            FiniteGroup([[1, 0], [0, 1]])

    def test_rejects_nonassociative_loop(self):
        with pytest.raises(GroupValidationError, match="associativity"):
            FiniteGroup(NONASSOC_LOOP)

    def test_rejects_non_square(self):
        with pytest.raises(GroupValidationError):
            FiniteGroup([[0, 1]])


class TestGenerators:
    def test_swap_gives_c2(self):
        g = group_from_generators(2, [(1, 0)])
        assert g.n == 2

    def test_s3(self):
        g = group_from_generators(3, [(1, 0, 2), (1, 2, 0)], "S3")
        assert g.n == 6
        assert len(g.conjugacy.classes) == 3

    def test_q8_regular_representation(self):
        q8 = catalog.quaternion8()
        lam_i = tuple(int(x) for x in q8.table[q8.index_of_label("i")])
        lam_j = tuple(int(x) for x in q8.table[q8.index_of_label("j")])
        g = group_from_generators(8, [lam_i, lam_j], "Q8reg")
        assert g.n == 8
        assert sorted(g.conjugacy.sizes) == [1, 1, 2, 2, 2]

    def test_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            group_from_generators(3, [(0, 0, 1)])

    def test_closure_cap(self):
        cyc = tuple(list(range(1, 13)) + [0])
        swap = (1, 0) + tuple(range(2, 13))
        with pytest.raises(ValueError, match="cap"):
            group_from_generators(13, [cyc, swap])


class TestProducts:
    def test_c2_x_c2(self):
        v4 = direct_product(catalog.cyclic(2), catalog.cyclic(2))
        assert v4.n == 4 and v4.is_abelian

    def test_q8_x_c2(self):
        g = direct_product(catalog.quaternion8(), catalog.cyclic(2))
        assert g.n == 16

    def test_c3_x_c3_elementary(self):
        g = direct_product(catalog.cyclic(3), catalog.cyclic(3))
        assert g.fingerprint() == catalog.elem_abelian(3, 2).fingerprint()

    def test_trivial_action_equals_direct(self):
        c3, c2 = catalog.cyclic(3), catalog.cyclic(2)
        sd = semidirect_product(c3, c2, [[0, 1, 2], [0, 1, 2]])
        dp = direct_product(c3, c2)
        assert (sd.table == dp.table).all()

    def test_inversion_action_gives_s3(self):
        sd = semidirect_product(catalog.cyclic(3), catalog.cyclic(2), [[0, 1, 2], [0, 2, 1]])
        assert sd.fingerprint() == catalog.sym3().fingerprint()

    def test_action_must_fix_identity(self):
        with pytest.raises(ValueError, match="identity"):
            semidirect_product(catalog.cyclic(3), catalog.cyclic(2), [[1, 2, 0], [0, 1, 2]])

    def test_action_must_be_automorphism(self):
        with pytest.raises(ValueError, match="automorphism"):
            semidirect_product(catalog.cyclic(3), catalog.cyclic(2), [[0, 1, 2], [1, 0, 2]])

    def test_action_must_be_homomorphism(self):
        ident, inv = [0, 1, 2], [0, 2, 1]
        with pytest.raises(ValueError, match="homomorphism"):
            semidirect_product(catalog.cyclic(3), catalog.cyclic(4), [ident, inv, inv, ident])


class TestAnalyses:
    def test_element_orders(self):
        q8 = catalog.quaternion8()
        assert q8.element_order(0) == 1
        a = q8.index_of_label("i")
        assert q8.element_order(a) == 4
        assert q8.power(a, 2) != 0
        d16 = catalog.dihedral(16)
        assert d16.element_order(d16.index_of_label("s")) == 2

    def test_abelian_classes_are_singletons(self):
        c6 = catalog.cyclic(6)
        assert c6.conjugacy.sizes == (1,) * 6

    def test_q8_classes(self):
        assert sorted(catalog.quaternion8().conjugacy.sizes) == [1, 1, 2, 2, 2]

    def test_d16_classes(self):
        assert sorted(catalog.dihedral(16).conjugacy.sizes) == [1, 1, 2, 2, 2, 4, 4]

    def test_center_abelian(self):
        c6 = catalog.cyclic(6)
        assert c6.center == tuple(range(6))

    def test_centralizer_of_identity(self):
        s3 = catalog.sym3()
        assert s3.centralizer([0]) == tuple(range(6))

    def test_centralizer_z2_d16(self):
        d16 = catalog.dihedral(16)
        z2 = d16.upper_central_series.subgroups[2]
        cent = d16.centralizer(z2)
        r = d16.index_of_label("r")
        assert cent == d16.subgroup_generated([r])
        assert len(cent) == 8

    def test_centralizer_empty_set_rejected(self):
        with pytest.raises(ValueError):
            catalog.sym3().centralizer([])

    def test_commutator_subgroups(self):
        assert catalog.cyclic(6).commutator_subgroup == (0,)
        q8 = catalog.quaternion8()
        assert set(q8.commutator_subgroup) == {0, q8.index_of_label("-1")}
        s3 = catalog.sym3()
        assert len(s3.commutator_subgroup) == 3

    def test_upper_central_series_abelian(self):
        c6 = catalog.cyclic(6)
        s = c6.upper_central_series
        assert s.nilpotency_class == 1
        assert s.subgroups[-1] == tuple(range(6))
        assert catalog.cyclic(1).nilpotency_class == 0

    def test_upper_central_series_s3_stabilizes(self):
        s = catalog.sym3().upper_central_series
        assert s.nilpotency_class is None
        assert s.subgroups == ((0,),)

    def test_subgroup_generated(self):
        q8 = catalog.quaternion8()
        assert q8.subgroup_generated([]) == (0,)
        a = q8.index_of_label("i")
        assert len(q8.subgroup_generated([a])) == 4

    def test_subgroup_reindexing(self):
        q8 = catalog.quaternion8()
        sub = q8.subgroup(q8.subgroup_generated([q8.index_of_label("i")]))
        assert sub.n == 4 and sub.is_abelian

    def test_quotient(self):
        s3 = catalog.sym3()
        q = s3.quotient(s3.commutator_subgroup)
        assert q.n == 2
        with pytest.raises(ValueError, match="normal"):
            s3.quotient(s3.subgroup_generated([1]))


class TestPredicates:
    def test_star_vacuous_on_abelian(self):
        ok, cert = catalog.cyclic(6).central_coset_condition()
        assert ok and cert["witnesses"] == {}

    def test_star_q8(self):
        q8 = catalog.quaternion8()
        ok, cert = q8.central_coset_condition()
        assert ok
        minus_one = q8.index_of_label("-1")
        assert all(z == minus_one for z in cert["witnesses"].values())

    def test_star_d16_fails(self):
        d16 = catalog.dihedral(16)
        ok, cert = d16.central_coset_condition()
        assert not ok
        g = cert["violator"]
        # the only candidate subgroup is generated by the order-2 rotation
        z = [x for x in d16.center if x != 0]
        assert len(z) == 1
        coset = {d16.mul(g, h) for h in d16.subgroup_generated(z)}
        cls = set(d16.conjugacy.classes[d16.conjugacy.class_of[g]])
        assert not coset <= cls

    def test_star_cyclic_reduction_matches_full_enumeration(self):
        # compare against enumeration of every subgroup of the center
        import itertools

        for spec in ["Q8", "D8", "D16", "QD16", "Q16", "M16", "H3", "prop29:2",
                     "order16:12", "order16:13", "order16:14", "S3", "D12"]:
            g = catalog.get(spec)
            z = [x for x in g.center if x != 0]
            if len(g.center) > 16:
                continue
            subgroups = set()
            for r in range(1, min(4, len(z)) + 1):
                for combo in itertools.combinations(z, r):
                    sub = g.subgroup_generated(combo)
                    if len(sub) > 1:
                        subgroups.add(sub)
            full = True
            for cls in g.conjugacy.classes:
                if len(cls) == 1:
                    continue
                rep = cls[0]
                cls_set = set(cls)
                if not any(
                    all(g.mul(rep, h) in cls_set for h in sub) for sub in subgroups
                ):
                    full = False
                    break
            assert g.central_coset_condition()[0] == full, spec

    def test_z2_self_centralizing(self):
        assert catalog.p5_class3_group(2).z2_self_centralizing()
        assert not catalog.dihedral(16).z2_self_centralizing()
        assert catalog.quaternion8().z2_self_centralizing()


class TestJsonShapes:
    def test_labels(self):
        q8 = catalog.quaternion8()
        assert q8.label(0) == "1"
        with pytest.raises(KeyError):
            group_from_generators(2, [(1, 0)]).index_of_label("nope")
        unlabeled = FiniteGroup([[0, 1], [1, 0]])
        assert unlabeled.label(1) == "1"

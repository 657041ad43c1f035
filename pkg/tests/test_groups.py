import pytest

from dioidpart.errors import GroupError, NotASubgroup, NotNormal
from dioidpart.groups import (
    ElementSet,
    build_group,
    conjugacy_partition,
    cyclic,
    dihedral,
    double_coset_partition,
    from_table,
    is_subgroup,
    quotient_group,
    set_inverse,
    setwise_product,
    singleton_partition,
    subgroups,
    symmetric,
    symmetric_element,
    units_automorphisms,
)


def S(G, *xs):
    return ElementSet.of(G.order, xs)


class TestBuild:
    def test_cyclic_inverse(self):
        G = build_group({"type": "cyclic", "n": 6})
        assert G.order == 6 and G.inv[2] == 4

    def test_trivial_group(self):
        G = build_group({"type": "cyclic", "n": 1})
        assert G.order == 1 and G.identity == 0

    def test_missing_inverse_rejected(self):
        with pytest.raises(GroupError, match="element 1 has no inverse"):
            build_group({"type": "cayley", "table": [[0, 1], [1, 1]]})

    def test_non_associative_rejected(self):
        # a loop of order 5 that is not a group
        table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(GroupError, match="not associative"):
            from_table(table)

    def test_missing_identity_rejected(self):
        with pytest.raises(GroupError, match="identity"):
            from_table([[1, 1], [1, 1]])

    def test_order_cap(self):
        table = [list(r) for r in cyclic(65).mul]
        with pytest.raises(GroupError, match="cap"):
            from_table(table)

    @pytest.mark.parametrize("desc", [
        {"type": "dihedral", "n": 2},
        {"type": "symmetric", "n": 7},
        {"type": "cyclic", "n": 0},
        {"type": "klein"},
        {"n": 3},
    ])
    def test_bad_descriptors(self, desc):
        with pytest.raises(GroupError):
            build_group(desc)

    def test_descriptor_round_trip(self):
        for G in (cyclic(5), dihedral(4), symmetric(3)):
            assert build_group(G.descriptor()) == G

    def test_symmetric_indexing(self):
        G = symmetric(3)
        assert G.identity == 0
        a = symmetric_element(3, (1, 0, 2))
        b = symmetric_element(3, (0, 2, 1))
        # (a o b)(i) = a[b[i]]
        ab = symmetric_element(3, tuple((1, 0, 2)[(0, 2, 1)[i]] for i in range(3)))
        assert G.mul[a][b] == ab

    def test_dihedral_is_nonabelian_of_order_2n(self):
        G = dihedral(5)
        assert G.order == 10 and not G.is_abelian


class TestSetAlgebra:
    def test_sumset_z5(self):
        G = cyclic(5)
        assert setwise_product(G, S(G, 1, 4), S(G, 1, 4)) == S(G, 0, 2, 3)

    def test_identity_singleton(self):
        G = cyclic(7)
        X = S(G, 1, 3, 6)
        assert setwise_product(G, S(G, 0), X) == X

    def test_empty_absorbs(self):
        G = cyclic(5)
        assert setwise_product(G, S(G), S(G, 1, 4)) == S(G)

    def test_inverse_examples(self):
        G = cyclic(5)
        assert set_inverse(G, S(G, 1, 4)) == S(G, 1, 4)
        H = cyclic(7)
        assert set_inverse(H, S(H, 1, 2, 4)) == S(H, 3, 5, 6)

    def test_involution_class_self_inverse(self):
        G = symmetric(3)
        for part in conjugacy_partition(G).parts:
            if all(G.mul[x][x] == G.identity for x in part):
                assert set_inverse(G, part) == part

    def test_universe_mismatch(self):
        with pytest.raises(ValueError, match="universe"):
            setwise_product(cyclic(5), S(cyclic(4), 1), S(cyclic(5), 1))

    def test_large_group_product_matches_naive(self):
        G = symmetric(5)  # above the chunk-table limit
        X, Y = S(G, 1, 7, 30, 99), S(G, 2, 3, 50)
        naive = {G.mul[x][y] for x in X for y in Y}
        assert set(setwise_product(G, X, Y)) == naive


class TestPartitions:
    def test_double_cosets_abelian(self):
        G = cyclic(6)
        P = double_coset_partition(G, S(G, 0, 3))
        assert P.to_json() == [[0, 3], [1, 4], [2, 5]]

    def test_trivial_subgroup_gives_singletons(self):
        for G in (cyclic(4), symmetric(3), dihedral(4)):
            assert double_coset_partition(G, S(G, G.identity)) == singleton_partition(G)

    def test_s3_transposition_double_cosets(self):
        G = symmetric(3)
        t = symmetric_element(3, (1, 0, 2))
        P = double_coset_partition(G, S(G, 0, t))
        assert sorted(len(p) for p in P.parts) == [2, 4]

    def test_not_a_subgroup(self):
        G = cyclic(6)
        assert is_subgroup(G, S(G, 0, 2, 4)) and not is_subgroup(G, S(G, 0, 1))
        with pytest.raises(NotASubgroup):
            double_coset_partition(G, S(G, 0, 1))

    def test_conjugacy_s3(self):
        P = conjugacy_partition(symmetric(3))
        assert sorted(len(p) for p in P.parts) == [1, 2, 3]
        assert P.parts[0].to_list() == [0]

    def test_conjugacy_abelian(self):
        assert conjugacy_partition(cyclic(6)) == singleton_partition(cyclic(6))

    def test_subgroup_counts(self):
        assert len(subgroups(cyclic(12))) == 6
        assert len(subgroups(symmetric(3))) == 6
        assert len(subgroups(symmetric(4))) == 30
        assert len(subgroups(dihedral(4))) == 10


class TestQuotients:
    def test_z6_mod_z2(self):
        G = cyclic(6)
        qm = quotient_group(G, S(G, 0, 3))
        assert qm.target.order == 3 and qm.target.family == "cyclic"
        assert qm.proj == (0, 1, 2, 0, 1, 2)

    def test_z6_mod_z3(self):
        G = cyclic(6)
        assert quotient_group(G, S(G, 0, 2, 4)).target.order == 2

    def test_not_normal(self):
        G = symmetric(3)
        t = symmetric_element(3, (1, 0, 2))
        with pytest.raises(NotNormal):
            quotient_group(G, S(G, 0, t))

    def test_projection_is_homomorphism_with_kernel(self):
        G = dihedral(4)
        N = S(G, 0, 2)  # the centre {1, r^2}
        qm = quotient_group(G, N)
        for x in range(G.order):
            for y in range(G.order):
                assert qm.proj[G.mul[x][y]] == qm.target.mul[qm.proj[x]][qm.proj[y]]
        assert {x for x in range(G.order) if qm.proj[x] == qm.target.identity} == set(N)


class TestAutomorphisms:
    def test_counts(self):
        assert len(units_automorphisms(5)) == 4
        assert [a.perm[1] for a in units_automorphisms(6)] == [1, 5]

    def test_multiplication_by_two_mod_7(self):
        a = units_automorphisms(7)[1]
        assert a(1) == 2 and a(3) == 6

    @pytest.mark.parametrize("n", [1, 2, 5, 8, 12])
    def test_homomorphisms(self, n):
        G = cyclic(n)
        assert all(a.is_automorphism_of(G) for a in units_automorphisms(n))

import itertools

import pytest

from dioidpart.errors import BudgetExceeded, PreconditionError
from dioidpart.groups import cyclic, singleton_partition, symmetric, conjugacy_partition
from dioidpart.partitions import (
    Partition,
    as_d_partition,
    d_partition_from_lists,
    enumerate_d_partitions,
    partition_from_lists,
)
from dioidpart.schur import (
    are_isomorphic,
    boolean_convolution,
    boolean_group_semiring_check,
    dfield_search,
    find_isomorphism,
    is_boolean_dioid,
    is_generalized_1d_partition,
    preserves_structure,
    schur_ring_constants,
    sd_correspondence,
    structure_constants,
    verify_dioid_axioms,
)
from dioidpart.zp import multiplicative_subgroups, pi_multiplicative, quadratic_residues

Z5_3 = [[0], [1, 4], [2, 3]]
QR7 = [[0], [1, 2, 4], [3, 5, 6]]


def dp(n, parts):
    return d_partition_from_lists(cyclic(n), parts)


def relabel(d, order):
    """The same partition with its parts listed in ``order`` (keeps the group)."""
    return Partition(d.group, tuple(d.parts[i] for i in order))


class TestStructureConstants:
    def test_z5_row(self):
        sc = structure_constants(dp(5, Z5_3))
        assert (sc.d(0, 1, 1), sc.d(1, 1, 1), sc.d(2, 1, 1)) == (1, 0, 1)

    def test_identity_row_is_kronecker(self):
        for d in enumerate_d_partitions(symmetric(3)):
            sc = structure_constants(d)
            e = sc.identity_index
            for i in range(sc.size):
                assert [sc.d(k, e, i) for k in range(sc.size)] == [int(k == i) for k in range(sc.size)]

    def test_negation_pair_pattern(self):
        sc = structure_constants(dp(7, QR7))
        assert sc.d(0, 1, 1) == 0 and sc.d(0, 2, 2) == 0
        assert sc.d(0, 1, 2) == 1

    def test_json_shape(self):
        js = structure_constants(dp(7, QR7)).to_json()
        assert js["h"] == 3 and js["identity"] == 0 and js["pairing"] == [0, 2, 1]
        assert len(js["d"]) == 3 and len(js["d"][0][0]) == 3

    def test_invariants_hold_everywhere(self):
        for G in (cyclic(8), symmetric(3)):
            for d in enumerate_d_partitions(G):
                structure_constants(d).check_invariants()


class TestSchurRing:
    def test_qr7_pairs_to_zero(self):
        assert schur_ring_constants(partition_from_lists(cyclic(7), QR7)).s(0, 1, 2) == 3

    def test_z5(self):
        assert schur_ring_constants(partition_from_lists(cyclic(5), Z5_3)).s(2, 1, 1) == 1

    def test_identity_part_row(self):
        src = schur_ring_constants(partition_from_lists(cyclic(13), [[0], [1, 3, 9], [2, 5, 6], [4, 10, 12], [7, 8, 11]]))
        for j in range(src.size):
            for k in range(src.size):
                assert src.s(k, 0, j) == int(j == k)

    def test_not_s_partition(self):
        with pytest.raises(PreconditionError):
            schur_ring_constants(partition_from_lists(cyclic(6), [[0, 3], [1, 4], [2, 5]]))

    def test_sd_examples(self):
        assert sd_correspondence(partition_from_lists(cyclic(7), QR7))
        assert sd_correspondence(singleton_partition(cyclic(5)))
        assert sd_correspondence(pi_multiplicative(13, quadratic_residues(13)))

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
    def test_sd_for_every_multiplicative_subgroup(self, p):
        for A in multiplicative_subgroups(p):
            assert sd_correspondence(pi_multiplicative(p, A))


class TestDioidAxioms:
    def test_z5_exhaustive(self):
        r = verify_dioid_axioms(dp(5, Z5_3))
        assert r.ok and r.exhaustive and r.elements == 8

    def test_qr7(self):
        assert verify_dioid_axioms(dp(7, QR7)).ok

    def test_sampled_mode(self):
        r = verify_dioid_axioms(as_d_partition(singleton_partition(cyclic(8))), samples=500)
        assert r.ok and not r.exhaustive and r.elements == 256 and r.checked >= 500

    def test_sampled_is_deterministic(self):
        d = as_d_partition(singleton_partition(cyclic(8)))
        a = verify_dioid_axioms(d, samples=200, seed=7).to_json()
        assert a == verify_dioid_axioms(d, samples=200, seed=7).to_json()

    def test_every_small_d_partition(self):
        for d in enumerate_d_partitions(symmetric(3)):
            assert verify_dioid_axioms(d).ok


class TestIsomorphism:
    def test_two_part_types(self):
        # complement squares to the identity part (index 2) or to the whole group
        index_two = dp(2, [[0], [1]])
        index_three = dp(3, [[0], [1, 2]])
        assert are_isomorphic(index_two, index_three) is None
        assert are_isomorphic(index_two, dp(4, [[0, 2], [1, 3]])) is not None
        assert are_isomorphic(index_three, dp(5, [[0], [1, 2, 3, 4]])) is not None

    def test_reflexive(self):
        d = dp(7, QR7)
        assert are_isomorphic(d, d) == (0, 1, 2)

    def test_qr7_swap(self):
        assert are_isomorphic(dp(7, QR7), dp(7, [[0], [3, 5, 6], [1, 2, 4]])) is not None

    def test_zp_types_differ(self):
        sym = dp(11, [[0], [4, 5, 6, 7], [1, 2, 3, 8, 9, 10]])
        pair = dp(11, [[0], [1, 3, 4, 5, 9], [2, 6, 7, 8, 10]])
        assert are_isomorphic(sym, pair) is None
        assert are_isomorphic(sym, dp(13, [[0], [4, 6, 7, 9], [1, 2, 3, 5, 8, 10, 11, 12]])) is not None

    def test_across_groups(self):
        # different orders and part sizes, same structure constants
        s3 = as_d_partition(conjugacy_partition(symmetric(3)))
        assert are_isomorphic(s3, dp(4, [[0], [2], [1, 3]])) is None
        found = are_isomorphic(dp(2, [[0], [1]]), dp(6, [[0, 2, 4], [1, 3, 5]]))
        assert found == (0, 1)

    def test_symmetric_round_trip(self):
        ds = enumerate_d_partitions(cyclic(8))
        for a, b in itertools.product(ds, repeat=2):
            f = are_isomorphic(a, b)
            g = are_isomorphic(b, a)
            assert (f is None) == (g is None)
            if f is not None:
                inv = [0] * len(f)
                for i, y in enumerate(f):
                    inv[y] = i
                assert preserves_structure(inv, structure_constants(b), structure_constants(a))

    def test_relabel_invariance(self):
        for d in enumerate_d_partitions(cyclic(9)):
            h = len(d.masks)
            for order in itertools.islice(itertools.permutations(range(h)), 6):
                other = relabel(d, order)
                assert find_isomorphism(structure_constants(d), structure_constants(as_d_partition(other))) is not None

    def test_preserves_structure_rejects_bad_map(self):
        sc = structure_constants(dp(5, Z5_3))
        assert preserves_structure((0, 1, 2), sc, sc)
        assert preserves_structure((0, 2, 1), sc, sc)
        assert not preserves_structure((1, 0, 2), sc, sc)


class TestBooleanSemiring:
    def test_z4_exhaustive(self):
        r = boolean_group_semiring_check(cyclic(4))
        assert r.ok and r.exhaustive and r.partitions_compared == 15

    def test_s3(self):
        r = boolean_group_semiring_check(symmetric(3), samples=300)
        assert r.ok and r.partitions_compared == 203

    def test_neutral_elements(self):
        G = cyclic(5)
        a = (False, True, True, False, False)
        one = tuple(g == G.identity for g in range(5))
        empty = (False,) * 5
        assert boolean_convolution(G, a, one) == a
        assert boolean_convolution(G, one, a) == a
        assert boolean_convolution(G, a, empty) == empty
        assert tuple(x or y for x, y in zip(a, empty)) == a

    def test_generalized_agrees_z5(self):
        P = partition_from_lists(cyclic(5), Z5_3)
        assert is_generalized_1d_partition(P)
        assert not is_generalized_1d_partition(partition_from_lists(cyclic(6), [[0, 3], [1, 4], [2, 5]]))


class TestDField:
    def test_order_two_is_boolean(self):
        found = dfield_search(2)
        assert len(found) == 1 and is_boolean_dioid(found[0]) and found[0].idempotent

    def test_order_one(self):
        assert dfield_search(1) == []

    def test_order_three(self):
        assert dfield_search(3, idempotent_only=True) == []
        assert dfield_search(3) == []

    def test_cap(self):
        with pytest.raises(BudgetExceeded):
            dfield_search(4)

    def test_json(self):
        js = dfield_search(2)[0].to_json()
        assert js == {"order": 2, "add": [[0, 1], [1, 1]], "mul": [[0, 0], [0, 1]], "eps": 0, "unit": 1}

import random

import pytest

from groundsub.errors import EmptySet, GroupTooLarge, InvalidPartition, TooLarge, AmbientMismatch
from groundsub.groupcore import Mode, Permutation, PermRep, Word, make_cyclic, parse_word
from groundsub.partition import (
    ExplicitSet,
    Kernel,
    PartitionVector,
    Stabilizer,
    coset_id,
    coset_profile,
    enumerate_subgroups,
    ground_set,
    has_no_proper_subgroups,
    is_ground,
    partition_vectors,
    r0,
    subgroup_index,
)

from groups import brute_is_ground, brute_subgroups, dihedral, direct_product, symmetric

Z6 = make_cyclic(6)
H1 = ExplicitSet(Z6, tuple(range(6)))
H2 = ExplicitSet(Z6, (0, 2, 4))
H3 = ExplicitSet(Z6, (0, 3))
H6 = ExplicitSet(Z6, (0,))


def test_partition_vector_validation():
    k = PartitionVector((1, 1, 2))
    assert (k.m, k.norm, k.total) == (3, 2, 4)
    with pytest.raises(InvalidPartition):
        PartitionVector((2, 1))
    with pytest.raises(InvalidPartition):
        PartitionVector((0, 1))
    with pytest.raises(InvalidPartition):
        PartitionVector.parse("1,x")
    assert PartitionVector.parse("1,1,2") == k


def test_coset_id_examples():
    assert coset_id(H3, 4) == 1
    assert H3.coset(4) == {1, 4}
    rep = PermRep((Permutation.from_cycles(2, (1, 2)),))
    assert coset_id(Kernel(rep), Word.identity()).is_identity()
    assert coset_id(Stabilizer(rep, 1), parse_word("a")) == 2


def test_coset_id_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        coset_id(H3, 7)
    rep = PermRep((Permutation.from_cycles(2, (1, 2)),))
    with pytest.raises(AmbientMismatch):
        coset_id(Kernel(rep), 3)
    with pytest.raises(AmbientMismatch):
        coset_id(Kernel(rep), parse_word("a", Mode.INVOLUTIVE))


def test_coset_profile_examples():
    prof = coset_profile(H2, [0, 1, 2, 4])
    assert prof.counts == {0: 3, 1: 1}
    assert coset_profile(H3, [0]).counts == {0: 1}
    assert coset_profile(H1, [1, 2, 3]).parts() == (3,)
    with pytest.raises(EmptySet):
        coset_profile(H1, [])


def test_is_ground_examples():
    assert is_ground(H3, [1, 2, 3], (1, 1, 1))
    assert not is_ground(H2, [1, 2, 3], (1, 1, 1))
    assert is_ground(H1, [1, 2, 3], (3,))
    with pytest.raises(InvalidPartition):
        is_ground(H1, [1, 2, 3], (1, 1))


def test_subgroup_index_examples():
    assert subgroup_index(H2) == 2
    trivial = PermRep.trivial(2, degree=3)
    assert subgroup_index(Kernel(trivial)) == 1
    star = PermRep(tuple(Permutation.from_cycles(4, (1, j)) for j in (2, 3, 4)))
    assert subgroup_index(Stabilizer(star, 1)) == 4


def test_enumerate_subgroups_examples():
    assert [H.elements for H in enumerate_subgroups(Z6)] == [(0,), (0, 3), (0, 2, 4), tuple(range(6))]
    assert [H.elements for H in enumerate_subgroups(make_cyclic(5))] == [(0,), (0, 1, 2, 3, 4)]
    assert len(enumerate_subgroups(make_cyclic(1))) == 1


@pytest.mark.parametrize("G", [make_cyclic(n) for n in (1, 2, 4, 6, 8)]
                         + [symmetric(3), dihedral(4), direct_product(2, 4), direct_product(2, 2)],
                         ids=lambda G: G.name)
def test_enumerate_subgroups_matches_brute_force(G):
    got = [H.elements for H in enumerate_subgroups(G)]
    assert got == brute_subgroups(G)
    assert all(G.order % len(s) == 0 for s in got)


def test_known_subgroup_counts():
    assert len(enumerate_subgroups(symmetric(4))) == 30
    assert len(enumerate_subgroups(dihedral(6))) == 16


def test_group_too_large():
    with pytest.raises(GroupTooLarge):
        enumerate_subgroups(make_cyclic(10), cap=8)


def test_has_no_proper_subgroups():
    assert has_no_proper_subgroups(make_cyclic(7))
    assert has_no_proper_subgroups(make_cyclic(1))
    assert not has_no_proper_subgroups(Z6)
    assert not has_no_proper_subgroups(symmetric(3))


def test_ground_set_examples():
    assert ground_set(Z6, [0, 1, 2, 4], (2, 2)) == []
    assert ground_set(Z6, [1, 2, 3], (1, 2)) == [H2]
    assert ground_set(Z6, [0, 1, 2, 4], (1, 1, 1, 1)) == [H6]


def test_r0_examples():
    assert r0(Z6, [1, 2, 3], (1, 1, 1)) == 3
    assert r0(Z6, [0, 1, 2, 4], (2, 2)) is None
    assert r0(Z6, list(range(6)), (6,)) == 1


def test_partition_vectors_examples():
    assert [p.parts for p in partition_vectors(3)] == [(1, 1, 1), (1, 2), (3,)]
    assert [p.parts for p in partition_vectors(1)] == [(1,)]
    assert [p.parts for p in partition_vectors(4)] == [(1, 1, 1, 1), (1, 1, 2), (1, 3), (2, 2), (4,)]
    with pytest.raises(TooLarge):
        partition_vectors(41)


def test_partition_counts():
    # the partition numbers p(n)
    assert [len(partition_vectors(n)) for n in range(1, 13)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


GROUPS = [make_cyclic(6), make_cyclic(8), symmetric(3), dihedral(4), direct_product(2, 4)]


def _random_instance(rng):
    G = rng.choice(GROUPS)
    subs = enumerate_subgroups(G)
    H = rng.choice(subs)
    A = rng.sample(list(G.elements()), rng.randint(1, G.order))
    return G, H, A


def test_profile_mass_and_sweep_completeness():
    rng = random.Random(7)
    for _ in range(200):
        G, H, A = _random_instance(rng)
        prof = coset_profile(H, A)
        assert sum(prof.counts.values()) == len(A)
        assert all(c >= 1 for c in prof.counts.values())
        hits = [k for k in partition_vectors(len(A)) if is_ground(H, A, k)]
        assert len(hits) == 1


def test_ground_predicate_matches_direct_relation():
    rng = random.Random(11)
    for _ in range(200):
        G, H, A = _random_instance(rng)
        for k in partition_vectors(len(A)):
            assert is_ground(H, A, k) == brute_is_ground(G, H.elements, A, k.parts)


def test_translation_invariance():
    rng = random.Random(3)
    for _ in range(200):
        G, H, A = _random_instance(rng)
        g = rng.choice(H.elements)
        gA = [G.mul(g, a) for a in A]
        assert coset_profile(H, gA).parts() == coset_profile(H, A).parts()
        # elementwise: g a and a share a right coset
        assert all(H.coset_id(G.mul(g, a)) == H.coset_id(a) for a in A)

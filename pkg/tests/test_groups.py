import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gforge.errors import CapExceeded, GroupError, PreconditionError
from gforge.groups import (CosetMultiset, Group, SubgroupData, cyclic,
                           dihedral, direct_product, from_permutations,
                           quotient_group, semidirect_product, subgroup_group)

import helpers


def test_cyclic_structure():
    g = cyclic(6)
    assert g.order == 6
    assert g.mul(4, 5) == 3
    assert g.inv(2) == 4
    assert g.order_of(2) == 3
    assert g.exponent() == 6
    assert g.center() == tuple(range(6))


def test_dihedral_structure():
    g = dihedral(3)
    assert g.order == 6
    # reflection squares to the identity, rotation has order 3
    assert g.order_of(3) == 2
    assert g.order_of(1) == 3
    # tau * sigma = sigma^2 tau  (labels: r + 3f)
    assert g.mul(3, 1) == 5
    assert g.center() == (0,)


def test_table_validation():
    with pytest.raises(GroupError):
        Group([[0, 1], [1, 1]])
    with pytest.raises(GroupError):
        Group([[1, 0], [0, 1]])  # identity must be element 0
    with pytest.raises(GroupError):
        Group([[0, 1, 2], [1, 2, 0]])
    # Z2 is fine
    assert Group([[0, 1], [1, 0]]).order == 2


def test_from_permutations():
    s3 = from_permutations([(1, 0, 2), (0, 2, 1)])
    assert s3.order == 6
    with pytest.raises(GroupError):
        from_permutations([(0, 0, 1)])
    with pytest.raises(GroupError):
        from_permutations([])


def test_products():
    a = direct_product(cyclic(2), cyclic(3))
    assert a.order == 6 and a.exponent() == 6
    d3 = semidirect_product(cyclic(3), cyclic(2),
                            lambda h, x: x if h == 0 else (-x) % 3)
    assert d3.order == 6
    assert d3.center() == (0,)


def test_subgroup_data():
    g = dihedral(3)
    sub = SubgroupData(g, (0, 3))
    assert sub.order == 2 and sub.index() == 3
    # right cosets partition the group
    seen = set()
    for rep, coset in sub.cosets.items():
        assert rep == min(coset)
        seen.update(coset)
    assert seen == set(range(6))
    assert sub.coset_id_of[3] == 0
    # normalizer of a non-normal reflection subgroup is itself
    assert set(sub.normalizer) == {0, 3}
    assert not sub.is_normal
    rot = SubgroupData(g, (0, 1, 2))
    assert rot.is_normal
    with pytest.raises(GroupError):
        SubgroupData(g, (0, 1))  # not closed


def test_subgroup_group_and_quotient():
    g = dihedral(3)
    rot, elems, index_of = subgroup_group(g, (0, 1, 2))
    assert rot.order == 3 and elems == (0, 1, 2)
    for a in range(3):
        for b in range(3):
            assert elems[rot.mul(a, b)] == g.mul(elems[a], elems[b])
    q, proj = quotient_group(g, (0, 1, 2))
    assert q.order == 2
    assert proj[0] == 0 and proj[3] == proj[4] == proj[5]
    with pytest.raises(PreconditionError):
        quotient_group(g, (0, 3))  # not normal


def test_coset_multiset():
    g = dihedral(3)
    sub = SubgroupData(g, (0,))
    lam = CosetMultiset.from_elements(sub, (0, 0, 1, 1, 3, 3, 5, 5))
    assert lam.total() == 8
    assert lam.multiplicity(1) == 2 and lam.multiplicity(2) == 0
    # uniform multiplicity needs full coset support
    assert lam.uniform_multiplicity() is None
    full = CosetMultiset.from_elements(sub, tuple(range(6)) * 2)
    assert full.uniform_multiplicity() == 2
    moved = lam.translated(3)
    assert moved.multiplicity(3) == 2
    assert lam.matches(moved)
    assert lam != CosetMultiset.from_elements(sub, (0, 1))


def test_group_order_cap():
    with pytest.raises(CapExceeded):
        cyclic(513)


@settings(deadline=None, max_examples=30)
@given(st.data())
def test_subgroup_closure_properties(data):
    pool = helpers.group_pool(12)
    grp = data.draw(st.sampled_from(pool))
    gens = data.draw(st.lists(st.integers(0, grp.order - 1), max_size=2))
    sub = SubgroupData(grp, grp.closure(gens))
    assert 0 in sub.eset
    assert grp.order % sub.order == 0
    for a in sub.elements:
        assert grp.inv(a) in sub.eset
        for b in sub.elements:
            assert grp.mul(a, b) in sub.eset
    # normalizer contains the subgroup and is closed
    nz = set(sub.normalizer)
    assert sub.eset <= nz
    assert grp.is_subgroup(nz)


@settings(deadline=None, max_examples=20)
@given(st.data())
def test_translated_multiset_is_action(data):
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    pool = helpers.group_pool(12)
    p = helpers.random_presentation(rng, pool, max_len=6)
    lam, grp = p.lam, p.group
    nz = p.sub.normalizer
    a = data.draw(st.sampled_from(nz))
    b = data.draw(st.sampled_from(nz))
    assert lam.translated(0) == lam
    assert lam.translated(grp.mul(a, b)) == lam.translated(b).translated(a)

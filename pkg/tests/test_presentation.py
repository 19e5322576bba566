import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gforge.errors import PreconditionError, PresentationError
from gforge.groups import CosetMultiset, SubgroupData, cyclic, dihedral
from gforge.presentation import (Presentation, apply_move, classify,
                                 compute_KNS, find_theta, full_derivative,
                                 iso_test, iso_witness, minimal_field,
                                 normalize, normalize_with_details,
                                 pointwise_derivative, validate_presentation)
from gforge.twisted import trivial_cocycle

import helpers


def test_presentation_validation(p_pauli):
    rep = validate_presentation(p_pauli)
    assert rep.wellformed and rep.connected and rep.issues == ()
    # tuple entries must be group elements
    with pytest.raises(PresentationError):
        Presentation(p_pauli.group, p_pauli.sub, p_pauli.alpha, (9,))
    with pytest.raises(PresentationError):
        Presentation(p_pauli.group, p_pauli.sub, p_pauli.alpha, ())


def test_disconnected_grading_detected():
    g = cyclic(4)
    sub = SubgroupData(g, (0, 2))
    p = Presentation(g, sub, trivial_cocycle(sub), (0,))
    rep = validate_presentation(p)
    assert rep.wellformed and not rep.connected


def test_apply_move_shapes(p_d6):
    moved = apply_move(p_d6, {"type": "permute", "perm": [7, 6, 5, 4, 3, 2, 1, 0]})
    assert sorted(moved.entries) == sorted(p_d6.entries)
    moved2 = apply_move(p_d6, {"type": "entry", "pos": 0, "h": 0})
    assert moved2.entries == p_d6.entries
    moved3 = apply_move(p_d6, {"type": "translate", "g": 3})
    assert moved3.entries == tuple(p_d6.group.mul(3, x) for x in p_d6.entries)
    with pytest.raises(PreconditionError):
        apply_move(p_d6, {"type": "entry", "pos": 0, "h": 1})  # not in H
    with pytest.raises(PreconditionError):
        apply_move(p_d6, {"type": "permute", "perm": [0, 0, 1, 2, 3, 4, 5, 6]})
    with pytest.raises(PreconditionError):
        apply_move(p_d6, {"type": "rotate"})


def test_invariant_chain_frozen_values(corpus):
    chains = {name: compute_KNS(p) for name, p in corpus.items()}
    d6 = chains["d6"]
    assert d6.K == (0, 3) and d6.S == (0, 3) and d6.n == 1
    assert set(d6.N) == set(range(6))
    pauli = chains["pauli"]
    assert set(pauli.K) == set(pauli.N) == set(pauli.S) == set(range(4))
    assert pauli.n == 2 and pauli.sbar_image == (1,)
    assert pauli.field.is_rational()
    swap = chains["swap"]
    assert set(swap.S) == set(range(18)) and swap.n == 3
    assert swap.sbar_image == (1, 2) and swap.field.is_rational()
    inner = chains["inner"]
    assert set(inner.S) == set(range(9)) and inner.n == 3
    assert inner.sbar_image == (1,)
    assert inner.field.units == (1,) and inner.field.degree_over_q() == 2
    mat3 = chains["mat3"]
    assert mat3.K == (0,) and mat3.n == 1


def test_chain_inclusions(corpus):
    for p in corpus.values():
        chain = compute_KNS(p)
        nz = set(p.sub.normalizer)
        assert p.sub.eset <= set(chain.S)
        assert set(chain.S) == set(chain.K) & set(chain.N)
        assert set(chain.K) <= nz and set(chain.N) <= nz
        # S is a subgroup and characters are multiplicative into (Z/n)*
        assert p.group.is_subgroup(chain.S)
        chars = dict(chain.s_characters)
        for a in chain.S:
            for b in chain.S:
                assert (chars[a] * chars[b]) % max(chain.n, 1) == chars[p.group.mul(a, b)] % max(chain.n, 1)


def test_minimal_field_values(p_pauli, p_swap, p_inner):
    assert minimal_field(p_pauli).is_rational()
    assert minimal_field(p_swap).is_rational()
    f = minimal_field(p_inner)
    assert f.n == 3 and f.degree_over_q() == 2


def test_normalize_d6_factored_form(p_d6):
    nf = normalize_with_details(p_d6)
    grp = p_d6.group
    sub2 = nf.presentation.sub
    # transversal is the coset form of K = {e, tau}
    assert nf.transversal_factor == (0, 3)
    # the core matches (e, e, sigma, sigma^2 tau) K-coset-wise
    k_sub = SubgroupData(grp, (0, 3))
    expected = sorted(k_sub.coset_id_of[x] for x in (0, 0, 1, 5))
    got = sorted(k_sub.coset_id_of[x] for x in nf.core_factor)
    assert got == expected
    # the product of the two factors rebuilds the coset multiset exactly
    product = [grp.mul(u, c) for u in nf.transversal_factor for c in nf.core_factor]
    assert CosetMultiset.from_elements(sub2, product).matches(nf.presentation.lam)
    assert nf.presentation.lam.matches(
        CosetMultiset.from_elements(sub2, [grp.mul(nf.theta, x) for x in p_d6.entries]))


def test_normalize_idempotent(corpus):
    for p in corpus.values():
        n1 = normalize(p)
        assert normalize(n1) == n1


def test_normalize_constant_on_orbit_spot(p_swap_raw):
    n0 = normalize(p_swap_raw)
    moved = apply_move(p_swap_raw, {"type": "translate", "g": 7})
    moved = apply_move(moved, {"type": "permute", "perm": [1, 0]})
    assert normalize(moved) == n0
    assert iso_test(p_swap_raw, moved)


def test_classification_flags(corpus):
    flags = {name: classify(p) for name, p in corpus.items()}
    assert flags["pauli"].division_form and flags["pauli"].strongly_vp
    assert flags["pauli"].essentially_vp
    assert flags["swap"].division_form and not flags["swap"].strongly_vp
    assert flags["swap"].essentially_vp
    assert not flags["d6"].division_form and not flags["d6"].strongly_vp
    assert not flags["mat3"].division_form
    assert flags["inner"].division_form and flags["inner"].strongly_vp


def test_classify_requires_connected():
    g = cyclic(4)
    sub = SubgroupData(g, (0, 2))
    p = Presentation(g, sub, trivial_cocycle(sub), (0,))
    with pytest.raises(PreconditionError):
        classify(p)


def test_derivatives(p_d6):
    grp = p_d6.group
    d = pointwise_derivative(p_d6, (0,) * 8)
    expect = tuple(
        grp.mul(grp.inv(p_d6.entries[i]), p_d6.entries[(i + 1) % 8])
        for i in range(8))
    assert d == expect
    full = full_derivative(p_d6)
    assert len(full) == 8 and all(len(s) == 1 for s in full)
    with pytest.raises(PreconditionError):
        pointwise_derivative(p_d6, (0,) * 7)
    with pytest.raises(PreconditionError):
        pointwise_derivative(p_d6, (1,) * 8)  # direction outside H


def test_derivative_translation_invariance(p_d6):
    grp = p_d6.group
    for theta in p_d6.sub.normalizer:
        moved = Presentation(grp, p_d6.sub, p_d6.alpha,
                             tuple(grp.mul(theta, x) for x in p_d6.entries))
        assert full_derivative(moved) == full_derivative(p_d6)
        t = find_theta(p_d6, moved)
        assert t is not None
        # recovered element acts like theta on the multiset
        assert p_d6.lam.translated(t) == p_d6.lam.translated(theta)


def test_find_theta_absent_on_unequal_derivative(p_d6):
    grp = p_d6.group
    entries = list(p_d6.entries)
    entries[3] = 2
    other = Presentation(grp, p_d6.sub, p_d6.alpha, tuple(entries))
    assert full_derivative(other) != full_derivative(p_d6)
    assert find_theta(p_d6, other) is None


def test_iso_witness_and_test(p_swap_raw, p_swap, p_pauli):
    g = iso_witness(p_swap_raw, p_swap)
    assert g is not None
    assert iso_test(p_swap, p_swap_raw)
    with pytest.raises(PreconditionError):
        iso_test(p_swap_raw, p_pauli)  # different ambient groups
    # different tuple lengths are never isomorphic
    shorter = Presentation(p_swap_raw.group, p_swap_raw.sub, p_swap_raw.alpha, (0,))
    assert iso_witness(p_swap_raw, shorter) is None


@settings(deadline=None, max_examples=25)
@given(st.data())
def test_moves_preserve_normal_form(data):
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    pool = helpers.group_pool(12)
    p = helpers.random_presentation(rng, pool, max_len=5)
    base = normalize(p)
    q = p
    for _ in range(data.draw(st.integers(1, 4))):
        q = apply_move(q, helpers.random_move(rng, q))
    assert normalize(q) == base

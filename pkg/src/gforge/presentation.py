"""Presentations of graded simple algebras and their invariants.

A presentation (G, H, alpha, entries) fixes an elementary grading on a
matrix algebra twisted by the cocycle alpha on H: entry g_i labels row i,
and the (h, i, j) basis vector sits in degree g_i^-1 h g_j. Three moves
preserve the graded isomorphism class: left-multiplying one entry by a
subgroup element, permuting entries, and translating everything by g in G
(which conjugates H and alpha). This module provides validation, the moves,
a canonical normal form, the invariant chain H <= S <= K <= N_G(H) with its
Galois data and minimal field, tuple derivatives, and isomorphism testing.

K is computed three independent ways (multiset stabilizer, coset-frequency
preservation, literal factoring of the multiset) and the results are cross
checked at runtime; a mismatch raises InternalError rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import CAPS
from .cyclo import SubfieldDescriptor
from .errors import InternalError, PreconditionError, PresentationError
from .groups import CosetMultiset, Group, SubgroupData
from .twisted import (
    Cocycle,
    conjugate_cocycle,
    image_mu_n,
    is_cohomologous,
    kernel_preserved,
    normalizes_binomial_structure,
)


def same_group(a: Group, b: Group) -> bool:
    return a is b or (a.order == b.order and np.array_equal(a._np, b._np))


@dataclass(frozen=True, eq=False)
class Presentation:
    group: Group
    sub: SubgroupData
    alpha: Cocycle
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if self.sub.group is not self.group:
            raise PresentationError("subgroup must live in the ambient group")
        if self.alpha.sub is not self.sub:
            raise PresentationError("cocycle must live on the presentation subgroup")
        if not self.entries:
            raise PresentationError("tuple must be nonempty")
        bad = [x for x in self.entries if not 0 <= x < self.group.order]
        if bad:
            raise PresentationError(f"tuple entries out of range: {bad}")
        # derived attribute, not a field: the coset multiset of the entries
        object.__setattr__(
            self, "lam", CosetMultiset.from_elements(self.sub, self.entries))

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (
            same_group(self.group, other.group)
            and self.sub.elements == other.sub.elements
            and self.alpha.modulus == other.alpha.modulus
            and self.alpha.exps == other.alpha.exps
            and self.entries == other.entries
        )

    __hash__ = None


@dataclass(frozen=True)
class ValidationReport:
    wellformed: bool
    connected: bool
    issues: tuple[str, ...] = ()


@dataclass(frozen=True)
class InvariantChain:
    K: tuple[int, ...]
    N: tuple[int, ...]
    S: tuple[int, ...]
    n: int
    image_stable: bool
    word_bound: int
    s_characters: tuple[tuple[int, int], ...]
    sbar_image: tuple[int, ...]
    field: SubfieldDescriptor


@dataclass(frozen=True)
class ClassificationFlags:
    division_form: bool
    strongly_vp: bool
    essentially_vp: bool


@dataclass(frozen=True)
class NormalForm:
    presentation: Presentation
    theta: int
    transversal_factor: tuple[int, ...]
    core_factor: tuple[int, ...]
    chain: InvariantChain


def validate_presentation(p: Presentation) -> ValidationReport:
    issues = []
    try:
        Cocycle(p.sub, p.alpha.modulus, p.alpha.exps)
    except Exception as exc:
        issues.append(f"cocycle invalid: {exc}")
    if p.lam.total() != len(p.entries):
        issues.append("coset multiset does not match the tuple")
    grp = p.group
    reps = [cid for cid, _ in p.lam.counts]
    degrees = {
        grp.mul(grp.mul(grp.inv(a), h), b)
        for a in reps for b in reps for h in p.sub.elements
    }
    connected = len(grp.closure(degrees)) == grp.order
    return ValidationReport(wellformed=not issues, connected=connected,
                            issues=tuple(issues))


def apply_move(p: Presentation, move: dict) -> Presentation:
    """One admissible move given as a dict.

    {"type": "entry", "pos": i, "h": h}  left-multiplies entry i by h in H;
    {"type": "permute", "perm": [...]}   places old entry perm[i] at slot i;
    {"type": "translate", "g": g}        maps entries to g*entries, H to
                                         gHg^-1 and alpha accordingly.
    """
    kind = move.get("type")
    if kind == "entry":
        pos, h = int(move["pos"]), int(move["h"])
        if not 0 <= pos < len(p.entries):
            raise PreconditionError(f"position {pos} out of range")
        if not p.sub.contains(h):
            raise PreconditionError("left factor must lie in the subgroup")
        entries = list(p.entries)
        entries[pos] = p.group.mul(h, entries[pos])
        return Presentation(p.group, p.sub, p.alpha, tuple(entries))
    if kind == "permute":
        perm = tuple(int(x) for x in move["perm"])
        if sorted(perm) != list(range(len(p.entries))):
            raise PreconditionError("not a permutation of the tuple positions")
        return Presentation(p.group, p.sub, p.alpha,
                            tuple(p.entries[i] for i in perm))
    if kind == "translate":
        g = int(move["g"])
        if not 0 <= g < p.group.order:
            raise PreconditionError(f"element {g} out of range")
        entries = tuple(p.group.mul(g, x) for x in p.entries)
        if g in p.sub.normalizer:
            return Presentation(p.group, p.sub, conjugate_cocycle(p.alpha, g), entries)
        sub2 = p.sub.conjugated(g)
        return Presentation(p.group, sub2, conjugate_cocycle(p.alpha, g, sub2), entries)
    raise PreconditionError(f"unknown move type: {kind!r}")


def related_reps(grp: Group, sub: SubgroupData, a: int, b: int) -> bool:
    """Same (H, H)-double coset: a^-1 H b meets H."""
    ai = grp.inv(a)
    return any(grp.mul(grp.mul(ai, h), b) in sub.eset for h in sub.elements)


def _factors_along(grp: Group, sub: SubgroupData, lam: CosetMultiset, u_elems) -> bool:
    """Is lam exactly (subgroup cosets of U) x (one coset per U-coset hit)?"""
    u_set = set(u_elems)
    if not sub.eset <= u_set:
        return False
    u_sub = SubgroupData(grp, u_set)
    counts = dict(lam.counts)
    by_ucoset: dict[int, list[int]] = {}
    for cid in counts:
        by_ucoset.setdefault(u_sub.coset_id_of[cid], []).append(cid)
    u_reps = sorted({sub.coset_id_of[u] for u in u_set})
    rebuilt: dict[int, int] = {}
    for uc in by_ucoset:
        mults = {counts[c] for c in by_ucoset[uc]}
        if len(mults) != 1:
            return False
        d = mults.pop()
        for u in u_reps:
            c = sub.coset_id_of[grp.mul(u, uc)]
            if c in rebuilt:
                return False
            rebuilt[c] = d
    return rebuilt == counts


def compute_KNS(p: Presentation, word_bound: int | None = None) -> InvariantChain:
    L = CAPS.word_bound if word_bound is None else int(word_bound)
    report = validate_presentation(p)
    if not report.wellformed:
        raise PresentationError("; ".join(report.issues))
    grp, sub, lam = p.group, p.sub, p.lam
    ngh = sub.normalizer

    k_stab = tuple(g for g in ngh if lam.translated(g) == lam)
    k_freq = tuple(
        g for g in ngh
        if all(lam.multiplicity(grp.mul(g, b)) == lam.multiplicity(b)
               for b in sub.transversal)
    )
    k_set = set(k_stab)
    factored = _factors_along(grp, sub, lam, k_set)
    maximal = all(
        not _factors_along(grp, sub, lam, grp.closure(k_stab + (g,)))
        for g in ngh if g not in k_set
    )
    if not (k_set == set(k_freq) and factored and maximal):
        raise InternalError("stabilizer, frequency, and factoring disagree on K")
    SubgroupData(grp, k_stab)  # certifies closure

    n_part = tuple(g for g in ngh if kernel_preserved(g, p.alpha, L))
    s_part = tuple(sorted(k_set & set(n_part)))
    if not sub.eset <= set(s_part):
        raise InternalError("the subgroup must be contained in S")

    n, stable = image_mu_n(p.alpha, L)
    chars = []
    for s in s_part:
        ok, j = normalizes_binomial_structure(s, p.alpha, L)
        if not ok:
            raise PreconditionError(
                f"word bound {L} is too small to determine a Galois character "
                f"for element {s}")
        chars.append((s, j % n))
    char_of = dict(chars)
    for s1 in s_part:
        for s2 in s_part:
            if (char_of[s1] * char_of[s2] - char_of[grp.mul(s1, s2)]) % n:
                raise InternalError("Galois characters are not multiplicative")
    sbar = tuple(sorted({j for _, j in chars}))
    field = SubfieldDescriptor.from_generators(n, sbar)
    if set(field.units) != set(sbar):
        raise InternalError("character image is not closed under multiplication")
    return InvariantChain(
        K=tuple(sorted(k_set)), N=n_part, S=s_part,
        n=n, image_stable=stable, word_bound=L,
        s_characters=tuple(chars), sbar_image=sbar, field=field,
    )


def minimal_field(p: Presentation, word_bound: int | None = None) -> SubfieldDescriptor:
    return compute_KNS(p, word_bound).field


def _factored_form(grp: Group, sub: SubgroupData, lam: CosetMultiset,
                   k_set, s_set):
    """Factor lam as (transversal inside K) x (core of K-coset blocks).

    Returns (ufactor, core): ufactor lists coset representatives of the
    subgroup inside K with the identity first and S-cosets leading; core is
    a tuple of (representative, multiplicity) pairs, identity block first,
    then blocks whose K-coset normalizes the subgroup, then singleton
    classes, then nonsingletons; within a category larger multiplicities
    first and ties by element index.
    """
    k_sub = SubgroupData(grp, k_set)
    counts = dict(lam.counts)
    ucosets = sorted({sub.coset_id_of[k] for k in k_set})
    u_s = [c for c in ucosets if c in s_set and c != 0]
    u_rest = [c for c in ucosets if c not in s_set]
    ufactor = (0, *u_s, *u_rest)

    by_kcoset: dict[int, list[int]] = {}
    for cid in counts:
        by_kcoset.setdefault(k_sub.coset_id_of[cid], []).append(cid)
    if 0 not in by_kcoset:
        raise InternalError("identity coset missing from a normalized multiset")
    support = list(counts)
    ngh_set = set(sub.normalizer)
    tail = []
    for kc, hcosets in by_kcoset.items():
        mults = {counts[c] for c in hcosets}
        if len(mults) != 1 or len(hcosets) != k_sub.order // sub.order:
            raise InternalError("multiset does not factor along K")
        d = mults.pop()
        if kc == 0:
            continue
        class_size = sum(1 for c in support if related_reps(grp, sub, kc, c))
        if kc in ngh_set:
            if class_size != 1:
                raise InternalError("normalizing representative in a wide class")
            cat = 0
        else:
            cat = 1 if class_size == 1 else 2
        tail.append((cat, -d, kc))
    tail.sort()
    core = ((0, counts[0]),) + tuple((kc, -negd) for _, negd, kc in tail)
    return ufactor, core


def _conjugate_chain(grp: Group, chain: InvariantChain, theta: int) -> InvariantChain:
    ti = grp.inv(theta)

    def cset(xs):
        return tuple(sorted(grp.conj(x, ti) for x in xs))

    chars = tuple(sorted((grp.conj(s, ti), j) for s, j in chain.s_characters))
    return InvariantChain(
        K=cset(chain.K), N=cset(chain.N), S=cset(chain.S),
        n=chain.n, image_stable=chain.image_stable, word_bound=chain.word_bound,
        s_characters=chars, sbar_image=chain.sbar_image, field=chain.field,
    )


def normalize_with_details(p: Presentation,
                           word_bound: int | None = None) -> NormalForm:
    """Canonical representative of the move orbit, with its factorization.

    Candidate translations are the inverses of elements of maximal
    multiplicity cosets (the ones that put the identity coset first with
    maximal multiplicity); the winner minimizes (subgroup elements, flat
    tuple, cocycle table) lexicographically, which makes the result
    constant on move orbits.
    """
    chain = compute_KNS(p, word_bound)
    grp = p.group
    maxmult = max(m for _, m in p.lam.counts)
    best = None
    for cid, mult in p.lam.counts:
        if mult != maxmult:
            continue
        theta0 = grp.inv(cid)
        ti0 = grp.inv(theta0)
        sub2 = p.sub.conjugated(theta0)
        k2 = frozenset(grp.conj(k, ti0) for k in chain.K)
        s2 = frozenset(grp.conj(s, ti0) for s in chain.S)
        lam2 = CosetMultiset.from_elements(
            sub2, [grp.mul(theta0, x) for x in p.entries])
        ufactor, core = _factored_form(grp, sub2, lam2, k2, s2)
        flat = tuple(
            sub2.coset_id_of[grp.mul(u, rep)]
            for u in ufactor for rep, d in core for _ in range(d)
        )
        for c in p.sub.cosets[cid]:
            theta = grp.inv(c)
            alpha2 = conjugate_cocycle(p.alpha, theta, sub2)
            key = (sub2.elements, flat, alpha2.exps)
            if best is None or key < best[0]:
                best = (key, theta, sub2, alpha2, flat, ufactor, core)
    _, theta, sub2, alpha2, flat, ufactor, core = best
    norm = Presentation(grp, sub2, alpha2, flat)
    moved = CosetMultiset.from_elements(sub2, [grp.mul(theta, x) for x in p.entries])
    if norm.lam.counts != moved.counts:
        raise InternalError("normalization changed the coset multiset")
    chain2 = _conjugate_chain(grp, chain, theta)
    if compute_KNS(norm, word_bound) != chain2:
        raise InternalError("invariant chain is not conjugation covariant")
    return NormalForm(
        presentation=norm, theta=theta, transversal_factor=ufactor,
        core_factor=tuple(rep for rep, d in core for _ in range(d)),
        chain=chain2,
    )


def normalize(p: Presentation, word_bound: int | None = None) -> Presentation:
    return normalize_with_details(p, word_bound).presentation


def classify(p: Presentation, word_bound: int | None = None) -> ClassificationFlags:
    report = validate_presentation(p)
    if not report.wellformed:
        raise PresentationError("; ".join(report.issues))
    if not report.connected:
        raise PreconditionError("classification requires a connected grading")
    chain = compute_KNS(p, word_bound)
    division = len(chain.S) == p.group.order
    strongly = False
    if p.sub.is_normal and p.lam.uniform_multiplicity() is not None:
        strongly = all(
            is_cohomologous(conjugate_cocycle(p.alpha, g), p.alpha)[0]
            for g in range(p.group.order)
        )
    if strongly and not division:
        raise InternalError("strong verbal primeness must force the division form")
    return ClassificationFlags(division_form=division, strongly_vp=strongly,
                               essentially_vp=division)


def pointwise_derivative(p: Presentation, h_tuple) -> tuple[int, ...]:
    """(g_1^-1 h_1 g_2, g_2^-1 h_2 g_3, ..., g_n^-1 h_n g_1)."""
    h_tuple = tuple(int(x) for x in h_tuple)
    if len(h_tuple) != len(p.entries):
        raise PreconditionError("derivative direction must match the tuple length")
    for h in h_tuple:
        if not p.sub.contains(h):
            raise PreconditionError(f"direction entry {h} is not in the subgroup")
    grp = p.group
    n = len(p.entries)
    return tuple(
        grp.mul(grp.mul(grp.inv(p.entries[i]), h_tuple[i]), p.entries[(i + 1) % n])
        for i in range(n)
    )


def full_derivative(p: Presentation) -> tuple[frozenset[int], ...]:
    """Cyclic tuple of sets g_i^-1 H g_{i+1}, wrapping around at the end."""
    grp = p.group
    n = len(p.entries)
    return tuple(
        frozenset(
            grp.mul(grp.mul(grp.inv(p.entries[i]), h), p.entries[(i + 1) % n])
            for h in p.sub.elements
        )
        for i in range(n)
    )


def find_theta(p1: Presentation, p2: Presentation) -> int | None:
    """Minimal translation carrying the first coset tuple onto the second.

    Present exactly when the full derivatives coincide; the returned element
    normalizes the subgroup and its translation action is verified.
    """
    if not same_group(p1.group, p2.group):
        raise PreconditionError("presentations live in different ambient groups")
    if p1.sub.elements != p2.sub.elements:
        raise PreconditionError("presentations carry different subgroups")
    if len(p1.entries) != len(p2.entries):
        return None
    if full_derivative(p1) != full_derivative(p2):
        return None
    grp = p1.group
    theta0 = grp.mul(p2.entries[0], grp.inv(p1.entries[0]))
    if theta0 not in p1.sub.normalizer:
        raise InternalError("equal derivatives must give a normalizing translation")
    if not p1.lam.translated(theta0).matches(p2.lam):
        raise InternalError("translation witness does not carry the multiset")
    stab = [g for g in p1.sub.normalizer if p1.lam.translated(g) == p1.lam]
    return min(grp.mul(theta0, s) for s in stab)


def iso_witness(p1: Presentation, p2: Presentation) -> int | None:
    """An element g with H2 = g H1 g^-1, lam2 = g lam1, alpha2 ~ alpha1^g."""
    if not same_group(p1.group, p2.group):
        raise PreconditionError("presentations live in different ambient groups")
    grp = p1.group
    if p1.sub.order != p2.sub.order or len(p1.entries) != len(p2.entries):
        return None
    h2 = p2.sub.eset
    for g in range(grp.order):
        gi = grp.inv(g)
        if {grp.conj(h, gi) for h in p1.sub.elements} != h2:
            continue
        moved = CosetMultiset.from_elements(
            p2.sub, [grp.mul(g, x) for x in p1.entries])
        if moved.counts != p2.lam.counts:
            continue
        beta = conjugate_cocycle(p1.alpha, g, p2.sub)
        if is_cohomologous(beta, p2.alpha)[0]:
            return g
    return None


def iso_test(p1: Presentation, p2: Presentation) -> bool:
    return iso_witness(p1, p2) is not None

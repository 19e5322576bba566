"""Shared builders for the test corpus and random instances."""

from __future__ import annotations

import random

from gforge.groups import (Group, SubgroupData, cyclic, dihedral,
                           direct_product, semidirect_product)
from gforge.presentation import Presentation
from gforge.twisted import Cocycle, h2_classes, make_cocycle, trivial_cocycle


def pairing_cocycle(sub: SubgroupData, p: int) -> Cocycle:
    """Standard pairing on Z_p x Z_p labeled i = a + p*b: alpha = a1 * b2."""
    size = p * p
    exps = [[(i % p) * (j // p) % p for j in range(size)] for i in range(size)]
    return make_cocycle(sub, p, exps)


def build_pauli() -> Presentation:
    grp = direct_product(cyclic(2), cyclic(2))
    sub = SubgroupData(grp, range(4))
    return Presentation(grp, sub, pairing_cocycle(sub, 2), (0,))


def swap_action(hh, x):
    return x if hh == 0 else (x % 3) * 3 + x // 3


def build_swap_raw() -> Presentation:
    inner = direct_product(cyclic(3), cyclic(3))
    grp = semidirect_product(inner, cyclic(2), swap_action)
    sub = SubgroupData(grp, range(0, 18, 2))
    size = 9
    exps = [[(i % 3) * (j // 3) % 3 for j in range(size)] for i in range(size)]
    return Presentation(grp, sub, make_cocycle(sub, 3, exps), (0, 1))


def build_d6() -> Presentation:
    grp = dihedral(3)
    sub = SubgroupData(grp, (0,))
    return Presentation(grp, sub, trivial_cocycle(sub), (0, 0, 1, 1, 3, 3, 5, 5))


def build_mat3() -> Presentation:
    grp = cyclic(2)
    sub = SubgroupData(grp, (0,))
    return Presentation(grp, sub, trivial_cocycle(sub), (0, 0, 1))


def build_inner() -> Presentation:
    grp = direct_product(cyclic(3), cyclic(3))
    sub = SubgroupData(grp, range(9))
    return Presentation(grp, sub, pairing_cocycle(sub, 3), (0,))


def build_related() -> Presentation:
    """Dihedral case whose two tuple entries share an (H,H)-double coset."""
    grp = dihedral(3)
    sub = SubgroupData(grp, (0, 3))
    return Presentation(grp, sub, trivial_cocycle(sub), (1, 2))


CORPUS_BUILDERS = {
    "pauli": build_pauli,
    "swap": build_swap_raw,
    "d6": build_d6,
    "mat3": build_mat3,
    "inner": build_inner,
}


def group_pool(max_order: int = 16) -> list[Group]:
    pool = [cyclic(k) for k in range(2, max_order + 1)]
    pool += [dihedral(k) for k in range(2, max_order // 2 + 1)]
    c2, c3, c4 = cyclic(2), cyclic(3), cyclic(4)
    pool += [direct_product(c2, c2), direct_product(c2, c4),
             direct_product(c3, c3), direct_product(c4, c4),
             direct_product(direct_product(c2, c2), c2),
             direct_product(c2, dihedral(3))]
    return [g for g in pool if g.order <= max_order]


def random_subgroup(rng: random.Random, grp: Group) -> SubgroupData:
    gens = [rng.randrange(grp.order) for _ in range(rng.randint(0, 2))]
    return SubgroupData(grp, grp.closure(gens))


def random_presentation(rng: random.Random, pool, max_len: int = 8,
                        with_cocycle: bool = False) -> Presentation:
    grp = rng.choice(pool)
    sub = random_subgroup(rng, grp)
    alpha = trivial_cocycle(sub)
    if with_cocycle and sub.order <= 9:
        for m in rng.sample((2, 3, 4), 3):
            classes = h2_classes(sub, m)
            if len(classes) > 1 and rng.random() < 0.7:
                alpha = rng.choice(classes)
                break
    entries = tuple(rng.randrange(grp.order)
                    for _ in range(rng.randint(1, max_len)))
    return Presentation(grp, sub, alpha, entries)


def random_move(rng: random.Random, p: Presentation) -> dict:
    kind = rng.choice(("entry", "permute", "translate"))
    if kind == "entry":
        return {"type": "entry", "pos": rng.randrange(len(p.entries)),
                "h": rng.choice(p.sub.elements)}
    if kind == "permute":
        perm = list(range(len(p.entries)))
        rng.shuffle(perm)
        return {"type": "permute", "perm": perm}
    return {"type": "translate", "g": rng.randrange(p.group.order)}

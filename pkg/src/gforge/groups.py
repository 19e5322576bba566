"""Finite groups as explicit multiplication tables, with subgroup and coset machinery.

Elements are integers 0..order-1; the identity is always index 0. mul(a, b)
is the product a*b, conj(h, g) = g^-1 * h * g, and right cosets H*g are keyed
by their minimal element.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

import numpy as np

from .config import CAPS
from .errors import CapExceeded, GroupError, PreconditionError


class Group:
    __slots__ = ("order", "name", "names", "_mul", "_inv", "_np")

    def __init__(self, table, names=None, name="G"):
        tab = np.asarray(table, dtype=np.int64)
        if tab.ndim != 2 or tab.shape[0] != tab.shape[1]:
            raise GroupError("multiplication table must be square")
        order = int(tab.shape[0])
        if order == 0:
            raise GroupError("empty table")
        if order > CAPS.group_order:
            raise CapExceeded(f"group order {order} exceeds cap {CAPS.group_order}")
        if tab.min() < 0 or tab.max() >= order:
            raise GroupError("table entries out of range")
        rng = np.arange(order)
        if not (np.array_equal(tab[0], rng) and np.array_equal(tab[:, 0], rng)):
            raise GroupError("identity must be element 0")
        if not np.array_equal(np.sort(tab, axis=1), np.tile(rng, (order, 1))):
            raise GroupError("rows are not permutations")
        if not np.array_equal(np.sort(tab, axis=0), np.tile(rng.reshape(-1, 1), (1, order))):
            raise GroupError("columns are not permutations")
        for a in range(order):
            # (a*b)*c vs a*(b*c), one slab per a
            if not np.array_equal(tab[tab[a]], tab[a][tab]):
                raise GroupError(f"associativity fails at element {a}")
        inv = np.argmax(tab == 0, axis=1)
        if not np.all(tab[inv, rng] == 0):
            raise GroupError("one-sided inverses only")
        self.order = order
        self._np = tab
        self._mul = tuple(tuple(int(x) for x in row) for row in tab)
        self._inv = tuple(int(x) for x in inv)
        if names is None:
            names = ["e"] + [f"g{i}" for i in range(1, order)]
        if len(names) != order:
            raise GroupError("names length must equal group order")
        self.names = tuple(str(x) for x in names)
        self.name = name

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, h: int, g: int) -> int:
        return self._mul[self._mul[self._inv[g]][h]][g]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self._inv[a], -k
        out = 0
        while k:
            if k & 1:
                out = self._mul[out][a]
            a = self._mul[a][a]
            k >>= 1
        return out

    def order_of(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self._mul[x][a]
            k += 1
        return k

    def exponent(self) -> int:
        return lcm(*(self.order_of(a) for a in range(self.order)))

    def closure(self, elems) -> tuple[int, ...]:
        seen = {0} | set(elems)
        frontier = list(seen)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(seen):
                    for c in (self._mul[a][b], self._mul[b][a]):
                        if c not in seen:
                            seen.add(c)
                            nxt.append(c)
            frontier = nxt
        return tuple(sorted(seen))

    def is_subgroup(self, elems) -> bool:
        eset = set(elems)
        if 0 not in eset:
            return False
        return all(self._mul[a][b] in eset for a in eset for b in eset)

    def subgroup(self, elems) -> "SubgroupData":
        return SubgroupData(self, elems)

    def center(self) -> tuple[int, ...]:
        return tuple(
            a for a in range(self.order)
            if all(self._mul[a][b] == self._mul[b][a] for b in range(self.order))
        )


class SubgroupData:
    """A subgroup together with its right-coset decomposition and normalizer."""

    __slots__ = ("group", "elements", "eset", "order", "pos",
                 "coset_id_of", "cosets", "transversal", "normalizer", "is_normal")

    def __init__(self, group: Group, elems):
        elements = tuple(sorted(set(int(x) for x in elems)))
        bad = [x for x in elements if not 0 <= x < group.order]
        if bad:
            raise GroupError(f"subgroup elements out of range: {bad}")
        if not group.is_subgroup(elements):
            raise GroupError("not closed under multiplication")
        self.group = group
        self.elements = elements
        self.eset = frozenset(elements)
        self.order = len(elements)
        self.pos = {h: i for i, h in enumerate(elements)}
        cid = [-1] * group.order
        cosets: dict[int, tuple[int, ...]] = {}
        for g in range(group.order):
            if cid[g] != -1:
                continue
            coset = tuple(sorted(group.mul(h, g) for h in elements))
            for x in coset:
                cid[x] = coset[0]
            cosets[coset[0]] = coset
        self.coset_id_of = tuple(cid)
        self.cosets = cosets
        self.transversal = tuple(sorted(cosets))
        nz = tuple(
            g for g in range(group.order)
            if {group.conj(h, g) for h in elements} == set(elements)
        )
        self.normalizer = nz
        self.is_normal = len(nz) == group.order

    def index(self) -> int:
        return self.group.order // self.order

    def contains(self, g: int) -> bool:
        return g in self.eset

    def conjugated(self, theta: int) -> "SubgroupData":
        """The subgroup theta * H * theta^-1."""
        g = self.group
        ti = g.inv(theta)
        return SubgroupData(g, (g.conj(h, ti) for h in self.elements))


@dataclass(frozen=True)
class CosetMultiset:
    """Multiset of right cosets H*g, stored as sorted (coset_id, multiplicity) pairs."""

    sub: SubgroupData
    counts: tuple[tuple[int, int], ...]

    @staticmethod
    def from_elements(sub: SubgroupData, elems) -> "CosetMultiset":
        acc: dict[int, int] = {}
        for g in elems:
            cid = sub.coset_id_of[g]
            acc[cid] = acc.get(cid, 0) + 1
        return CosetMultiset(sub, tuple(sorted(acc.items())))

    def total(self) -> int:
        return sum(m for _, m in self.counts)

    def multiplicity(self, g: int) -> int:
        cid = self.sub.coset_id_of[g]
        for c, m in self.counts:
            if c == cid:
                return m
        return 0

    def translated(self, g: int) -> "CosetMultiset":
        """Apply Hb -> Hgb; requires g in the normalizer of H."""
        if g not in self.sub.normalizer:
            raise PreconditionError("translation element must normalize the subgroup")
        grp = self.sub.group
        acc: dict[int, int] = {}
        for cid, m in self.counts:
            nid = self.sub.coset_id_of[grp.mul(g, cid)]
            acc[nid] = acc.get(nid, 0) + m
        return CosetMultiset(self.sub, tuple(sorted(acc.items())))

    def matches(self, other: "CosetMultiset") -> bool:
        """Equality across distinct SubgroupData objects with the same elements."""
        return self.sub.elements == other.sub.elements and self.counts == other.counts

    def uniform_multiplicity(self) -> int | None:
        """Common multiplicity if every H-coset of the parent group appears equally."""
        if len(self.counts) != len(self.sub.transversal):
            return None
        mults = {m for _, m in self.counts}
        return mults.pop() if len(mults) == 1 else None


def subgroup_group(group: Group, elems) -> tuple[Group, tuple[int, ...], dict[int, int]]:
    """Relabel a subgroup as a standalone Group.

    Returns (S, to_parent, from_parent); element i of S is to_parent[i] in the parent.
    """
    elements = tuple(sorted(set(elems)))
    if not group.is_subgroup(elements):
        raise GroupError("not a subgroup")
    from_parent = {g: i for i, g in enumerate(elements)}
    table = [[from_parent[group.mul(a, b)] for b in elements] for a in elements]
    names = [group.names[g] for g in elements]
    s = Group(table, names=names, name=f"{group.name}_sub{len(elements)}")
    return s, elements, from_parent


def quotient_group(group: Group, normal_elems) -> tuple[Group, tuple[int, ...]]:
    """Quotient by a normal subgroup.

    Returns (Q, proj) with proj[g] the quotient index of g's coset; coset of the
    identity is index 0 and cosets are indexed by ascending minimal element.
    """
    sub = group.subgroup(normal_elems)
    if not sub.is_normal:
        raise PreconditionError("quotient requires a normal subgroup")
    reps = sub.transversal
    qidx = {cid: i for i, cid in enumerate(reps)}
    proj = tuple(qidx[sub.coset_id_of[g]] for g in range(group.order))
    table = [[proj[group.mul(a, b)] for b in reps] for a in reps]
    names = [f"[{group.names[r]}]" for r in reps]
    q = Group(table, names=names, name=f"{group.name}_mod{sub.order}")
    return q, proj


def cyclic(n: int) -> Group:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = ["e"] + ["g" if a == 1 else f"g{a}" for a in range(1, n)]
    return Group(table, names=names, name=f"C{n}")


def dihedral(n: int) -> Group:
    """Dihedral group of order 2n: rotations s^a at 0..n-1, reflections s^a t at n..2n-1."""
    if n < 1:
        raise GroupError("dihedral group needs n >= 1")

    def mul_pair(x, y):
        a, i = x % n, x // n
        b, j = y % n, y // n
        c = (a + b) % n if i == 0 else (a - b) % n
        return ((i + j) % 2) * n + c

    table = [[mul_pair(x, y) for y in range(2 * n)] for x in range(2 * n)]
    rot = ["e"] + ["s" if a == 1 else f"s{a}" for a in range(1, n)]
    ref = ["t"] + [("s" if a == 1 else f"s{a}") + "t" for a in range(1, n)]
    return Group(table, names=rot + ref, name=f"D{n}")


def direct_product(a: Group, b: Group) -> Group:
    order = a.order * b.order
    if order > CAPS.group_order:
        raise CapExceeded(f"product order {order} exceeds cap {CAPS.group_order}")

    def idx(x, y):
        return x * b.order + y

    table = [
        [idx(a.mul(x1, x2), b.mul(y1, y2)) for x2 in range(a.order) for y2 in range(b.order)]
        for x1 in range(a.order) for y1 in range(b.order)
    ]
    names = [f"({a.names[x]},{b.names[y]})" for x in range(a.order) for y in range(b.order)]
    return Group(table, names=names, name=f"{a.name}x{b.name}")


def semidirect_product(n_grp: Group, h_grp: Group, action) -> Group:
    """Semidirect product N x| H; action(h, x) is the automorphism of N attached to h.

    Product rule: (x1, h1) * (x2, h2) = (x1 * action(h1, x2), h1 * h2).
    Element (x, h) gets index x * |H| + h, so the table validation also
    certifies that the action is a homomorphism into Aut(N).
    """
    order = n_grp.order * h_grp.order
    if order > CAPS.group_order:
        raise CapExceeded(f"product order {order} exceeds cap {CAPS.group_order}")

    def idx(x, h):
        return x * h_grp.order + h

    table = [
        [
            idx(n_grp.mul(x1, action(h1, x2)), h_grp.mul(h1, h2))
            for x2 in range(n_grp.order) for h2 in range(h_grp.order)
        ]
        for x1 in range(n_grp.order) for h1 in range(h_grp.order)
    ]
    names = [
        f"({n_grp.names[x]},{h_grp.names[h]})"
        for x in range(n_grp.order) for h in range(h_grp.order)
    ]
    return Group(table, names=names, name=f"{n_grp.name}x|{h_grp.name}")


def from_permutations(gens, names=None, name="G") -> Group:
    """Group generated by permutations (tuples over range(degree)).

    Elements are indexed by BFS discovery order from the identity, multiplying
    on the right by the generators in the given order; composition is
    (p * q)(i) = q[p[i]].
    """
    gens = [tuple(g) for g in gens]
    if not gens:
        raise GroupError("need at least one generator")
    degree = len(gens[0])
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise GroupError(f"not a permutation of range({degree}): {g}")
    ident = tuple(range(degree))
    index = {ident: 0}
    elems = [ident]
    queue = [ident]
    while queue:
        nxt = []
        for p in queue:
            for g in gens:
                q = tuple(g[p[i]] for i in range(degree))
                if q not in index:
                    if len(elems) >= CAPS.group_order:
                        raise CapExceeded(
                            f"generated group exceeds cap {CAPS.group_order}")
                    index[q] = len(elems)
                    elems.append(q)
                    nxt.append(q)
        queue = nxt
    table = [
        [index[tuple(q[p[i]] for i in range(degree))] for q in elems]
        for p in elems
    ]
    return Group(table, names=names, name=name)

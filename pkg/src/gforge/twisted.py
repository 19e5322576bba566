"""Two-cocycles on a finite subgroup, valued in roots of unity as exponent tables.

A Cocycle stores exponents e(h1, h2) with scalar value zeta_modulus^e; tables
are normalized (identity row and column zero) and indexed by position in the
sorted subgroup element list. The word calculus folds a word to its
accumulated exponent, groups words into buckets by (multiset, product), and
reads off binomial ratios; those drive the root-of-unity image, the
normalizer of the twisted algebra's binomial structure, and the Galois
character of its elements. Cohomology tests solve coboundary systems over
Z/M with M = modulus * exp(H) unless an explicit extension is supplied.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from math import gcd, lcm

import numpy as np

from .config import CAPS
from .errors import (
    BudgetExceeded,
    CapExceeded,
    CocycleError,
    InternalError,
    PreconditionError,
)
from .groups import SubgroupData
from .modlinalg import kernel_mod, snf, solve_mod


@dataclass(frozen=True, eq=False)
class Cocycle:
    sub: SubgroupData
    modulus: int
    exps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m, sub = self.modulus, self.sub
        if m < 1:
            raise CocycleError("modulus must be positive")
        size = sub.order
        if len(self.exps) != size or any(len(r) != size for r in self.exps):
            raise CocycleError("exponent table shape must match the subgroup")
        tab = np.asarray(self.exps, dtype=np.int64)
        if tab.size and (tab.min() < 0 or tab.max() >= m):
            raise CocycleError("exponents must lie in [0, modulus)")
        if np.any(tab[0]) or np.any(tab[:, 0]):
            raise CocycleError("table must be normalized at the identity")
        grp = sub.group
        pmul = np.asarray(
            [[sub.pos[grp.mul(a, b)] for b in sub.elements] for a in sub.elements],
            dtype=np.int64,
        )
        for i in range(size):
            lhs = (tab[i][:, None] + tab[pmul[i]]) % m
            rhs = (tab + tab[i][pmul]) % m
            if not np.array_equal(lhs, rhs):
                raise CocycleError(f"cocycle identity fails at row {i}")
        object.__setattr__(self, "_pmul", pmul)

    def value(self, h1: int, h2: int) -> int:
        return self.exps[self.sub.pos[h1]][self.sub.pos[h2]]

    def is_trivial(self) -> bool:
        return not any(any(row) for row in self.exps)

    def embedded(self, m_new: int) -> "Cocycle":
        if m_new % self.modulus:
            raise PreconditionError("can only embed into a multiple modulus")
        step = m_new // self.modulus
        return Cocycle(self.sub, m_new,
                       tuple(tuple((e * step) % m_new for e in row) for row in self.exps))


def make_cocycle(sub: SubgroupData, modulus: int, exps) -> Cocycle:
    table = tuple(tuple(int(e) % modulus for e in row) for row in exps)
    return Cocycle(sub, modulus, table)


def trivial_cocycle(sub: SubgroupData, modulus: int = 1) -> Cocycle:
    zero = tuple(tuple(0 for _ in range(sub.order)) for _ in range(sub.order))
    return Cocycle(sub, modulus, zero)


def sub_exponent(sub: SubgroupData) -> int:
    return lcm(*(sub.group.order_of(h) for h in sub.elements))


def word_exponent(alpha: Cocycle, word) -> tuple[int, int]:
    """Fold a word of subgroup elements; returns (exponent mod m, product)."""
    word = list(word)
    for h in word:
        if h not in alpha.sub.eset:
            raise PreconditionError(f"word letter {h} is not in the subgroup")
    if not word:
        return 0, 0
    grp = alpha.sub.group
    e, acc = 0, word[0]
    for h in word[1:]:
        e += alpha.value(acc, h)
        acc = grp.mul(acc, h)
    return e % alpha.modulus, acc


def binomial_ratio(alpha: Cocycle, word, tau) -> int | None:
    """Exponent r with x_1..x_L = zeta^r * x_tau(1)..x_tau(L) an identity, else None.

    tau permutes positions: the compared word is w' with w'[i] = word[tau[i]].
    """
    word = tuple(word)
    permuted = tuple(word[t] for t in tau)
    e1, p1 = word_exponent(alpha, word)
    e2, p2 = word_exponent(alpha, permuted)
    if p1 != p2:
        return None
    return (e1 - e2) % alpha.modulus


def is_binomial_identity(alpha: Cocycle, word, tau, zeta_exp: int) -> bool:
    r = binomial_ratio(alpha, word, tau)
    return r is not None and (zeta_exp - r) % alpha.modulus == 0


@dataclass(frozen=True)
class BinomialDatum:
    """A relation u_w = zeta_m^ratio * u_{w o perm} holding in F^alpha H.

    word holds subgroup elements by parent id; perm permutes positions so the
    compared word is word[perm[0]], word[perm[1]], ...; ratio is mod the
    cocycle modulus of the algebra the datum was read from.
    """

    word: tuple[int, ...]
    perm: tuple[int, ...]
    ratio: int

    def ratio_order(self, m: int) -> int:
        return m // gcd(m, self.ratio)


def binomial_datum(alpha: Cocycle, word, tau) -> BinomialDatum:
    word = tuple(int(h) for h in word)
    tau = tuple(int(t) for t in tau)
    if sorted(tau) != list(range(len(word))):
        raise PreconditionError("perm must be a permutation of the word positions")
    r = binomial_ratio(alpha, word, tau)
    if r is None:
        raise PreconditionError("word and permuted word have different products")
    return BinomialDatum(word, tau, r)


def _match_perm(base: tuple[int, ...], other: tuple[int, ...]) -> tuple[int, ...]:
    """Lex-least tau with other[i] == base[tau[i]]; words share a multiset."""
    used = [False] * len(base)
    tau = []
    for x in other:
        for t, y in enumerate(base):
            if not used[t] and y == x:
                used[t] = True
                tau.append(t)
                break
    return tuple(tau)


def find_primitive_binomial(alpha: Cocycle, n: int,
                            L: int | None = None) -> BinomialDatum | None:
    """Shortest binomial identity whose ratio has exact order n, if any.

    Scans words of length <= L (default CAPS.word_bound) bucketed by
    (multiset, product); deterministic: shortest word first, then lex order.
    """
    if n == 1:
        e = alpha.sub.elements[0]
        return binomial_datum(alpha, (e, e), (1, 0))
    if L is None:
        L = CAPS.word_bound
    m = alpha.modulus
    exps, buckets = _word_data(alpha, L)
    for key in sorted(buckets, key=lambda k: (len(k[0]), k)):
        words = sorted(buckets[key])
        for w0 in words:
            for w in words:
                r = (exps[w0] - exps[w]) % m
                if r and m // gcd(m, r) == n:
                    return BinomialDatum(w0, _match_perm(w0, w), r)
    return None


_word_cache: dict = {}


def _word_data(alpha: Cocycle, L: int):
    """All words of length 1..L: exponent map and (multiset, product) buckets."""
    key = (id(alpha.sub.group), alpha.sub.elements, alpha.modulus, alpha.exps, L)
    hit = _word_cache.get(key)
    if hit is not None:
        return hit
    size = alpha.sub.order
    total = sum(size ** ell for ell in range(1, L + 1))
    if total > CAPS.budget:
        raise BudgetExceeded(
            f"word scan needs {total} words, over budget {CAPS.budget}")
    grp = alpha.sub.group
    m = alpha.modulus
    exps = {}
    buckets: dict[tuple, list[tuple[int, ...]]] = {}
    layer = {(h,): (0, h) for h in alpha.sub.elements}
    for ell in range(1, L + 1):
        for w, (e, p) in layer.items():
            exps[w] = e
            buckets.setdefault((tuple(sorted(w)), p), []).append(w)
        if ell == L:
            break
        nxt = {}
        for w, (e, p) in layer.items():
            for h in alpha.sub.elements:
                nxt[w + (h,)] = ((e + alpha.value(p, h)) % m, grp.mul(p, h))
        layer = nxt
    _word_cache[key] = (exps, buckets)
    return exps, buckets


def image_mu_n(alpha: Cocycle, L: int | None = None) -> tuple[int, bool]:
    """(n, stable): binomial ratios generate the n-th roots; stable means the
    scan at length L-1 already produced the same n."""
    if L is None:
        L = CAPS.word_bound
    if L < 2:
        raise PreconditionError("word bound must be at least 2")
    m = alpha.modulus
    if m == 1 or alpha.is_trivial():
        return 1, True
    exps, buckets = _word_data(alpha, L)
    d_prev = m
    d_full = m
    for (mset, _), words in buckets.items():
        base = exps[words[0]]
        for w in words[1:]:
            r = (exps[w] - base) % m
            d_full = gcd(d_full, r)
            if len(mset) < L:
                d_prev = gcd(d_prev, r)
    n = m // d_full
    return n, (m // d_prev) == n


def normalizes_binomial_structure(
        g: int, alpha: Cocycle, L: int | None = None) -> tuple[bool, int | None]:
    """Does conjugation by g rescale every binomial ratio by one Galois unit?

    Returns (ok, j) with j the unit mod n; g must normalize the subgroup.
    """
    if L is None:
        L = CAPS.word_bound
    sub = alpha.sub
    if g not in sub.normalizer:
        raise PreconditionError("element must normalize the subgroup")
    n, _ = image_mu_n(alpha, L)
    if n == 1:
        return True, 1
    m = alpha.modulus
    grp = sub.group
    exps, buckets = _word_data(alpha, L)
    conj = {h: grp.conj(h, g) for h in sub.elements}
    js = [j for j in range(1, n + 1) if gcd(j, n) == 1]
    for (_, _), words in buckets.items():
        w0 = words[0]
        c0 = exps[tuple(conj[h] for h in w0)]
        e0 = exps[w0]
        for w in words[1:]:
            r = (exps[w] - e0) % m
            rc = (exps[tuple(conj[h] for h in w)] - c0) % m
            js = [j for j in js if (j * r - rc) % m == 0]
            if not js:
                return False, None
    if len(js) > 1:
        raise InternalError("galois character is not unique; ratio image inconsistent")
    return True, js[0] % n if n > 1 else 1


def kernel_preserved(g: int, alpha: Cocycle, L: int | None = None) -> bool:
    """Does conjugation by g preserve vanishing of binomial ratios, both ways?

    For every pair of words with equal letter multiset and equal product, the
    ratio is zero exactly when the ratio of the entrywise-conjugated pair is
    zero. g must normalize the subgroup.
    """
    if L is None:
        L = CAPS.word_bound
    sub = alpha.sub
    if g not in sub.normalizer:
        raise PreconditionError("element must normalize the subgroup")
    if alpha.modulus == 1 or alpha.is_trivial():
        return True
    grp = sub.group
    exps, buckets = _word_data(alpha, L)
    conj = {h: grp.conj(h, g) for h in sub.elements}
    for words in buckets.values():
        if len(words) < 2:
            continue
        part: dict[int, set[int]] = {}
        for w in words:
            part.setdefault(exps[w], set()).add(exps[tuple(conj[h] for h in w)])
        cells = list(part.values())
        if any(len(c) != 1 for c in cells):
            return False
        if len({next(iter(c)) for c in cells}) != len(cells):
            return False
    return True


def galois_character(s: int, alpha: Cocycle, L: int | None = None) -> int:
    """The unit j mod n by which conjugation by s scales binomial ratios."""
    ok, j = normalizes_binomial_structure(s, alpha, L)
    if not ok:
        raise PreconditionError("element does not normalize the binomial structure")
    return j


def conjugate_cocycle(alpha: Cocycle, theta: int,
                      new_sub: SubgroupData | None = None) -> Cocycle:
    """beta(x, y) = alpha(theta^-1 x theta, theta^-1 y theta) on theta H theta^-1."""
    grp = alpha.sub.group
    if new_sub is None:
        if theta not in alpha.sub.normalizer:
            raise PreconditionError(
                "conjugator must normalize the subgroup unless a target is given")
        new_sub = alpha.sub
    back = {x: grp.conj(x, theta) for x in new_sub.elements}
    if set(back.values()) != set(alpha.sub.elements):
        raise PreconditionError("target subgroup is not the conjugate of the source")
    exps = tuple(
        tuple(alpha.value(back[x], back[y]) for y in new_sub.elements)
        for x in new_sub.elements
    )
    return Cocycle(new_sub, alpha.modulus, exps)


def galois_twist(alpha: Cocycle, j: int) -> Cocycle:
    if gcd(j, alpha.modulus) != 1:
        raise PreconditionError(f"{j} is not a unit mod {alpha.modulus}")
    return make_cocycle(alpha.sub, alpha.modulus,
                        [[(j * e) for e in row] for row in alpha.exps])


def lift_unit(j: int, n: int, m: int) -> int:
    """A unit mod m congruent to j mod n; requires n | m and gcd(j, n) = 1."""
    if m % n:
        raise PreconditionError("n must divide m")
    if n == 1:
        return 1
    j %= n
    if gcd(j, n) != 1:
        raise PreconditionError(f"{j} is not a unit mod {n}")
    for t in range(m // n):
        cand = j + t * n
        if gcd(cand, m) == 1:
            return cand
    raise InternalError("unit lifting failed")


def shift_by_coboundary(alpha: Cocycle, f) -> Cocycle:
    """beta(h1, h2) = alpha(h1, h2) + f(h1) + f(h2) - f(h1 h2)."""
    f = [int(x) % alpha.modulus for x in f]
    sub = alpha.sub
    if len(f) != sub.order:
        raise PreconditionError("coboundary vector length must match the subgroup")
    if f[0] % alpha.modulus:
        raise PreconditionError("coboundary must vanish at the identity")
    grp = sub.group
    exps = [
        [
            (alpha.exps[i][j] + f[i] + f[j] - f[sub.pos[grp.mul(a, b)]]) % alpha.modulus
            for j, b in enumerate(sub.elements)
        ]
        for i, a in enumerate(sub.elements)
    ]
    return make_cocycle(sub, alpha.modulus, exps)


def is_cohomologous(a: Cocycle, b: Cocycle,
                    extension: int | None = None) -> tuple[bool, tuple[int, ...] | None, int]:
    """Do a and b differ by a coboundary valued in the extended roots of unity?

    Works over Z/M with M = lcm(moduli) * extension (default exp(H)).
    Returns (ok, witness f with f[identity] = 0, M).
    """
    if a.sub is not b.sub and a.sub.elements != b.sub.elements:
        raise PreconditionError("cocycles live on different subgroups")
    sub = a.sub
    ext = sub_exponent(sub) if extension is None else extension
    if ext < 1:
        raise PreconditionError("extension must be positive")
    M = lcm(a.modulus, b.modulus) * ext
    ae = a.embedded(M)
    be = b.embedded(M)
    size = sub.order
    nvars = size - 1
    if nvars == 0:
        return (ae.exps == be.exps), (0,), M
    grp = sub.group
    rows, rhs = [], []
    for i in range(size):
        for j in range(size):
            row = [0] * nvars
            k = sub.pos[grp.mul(sub.elements[i], sub.elements[j])]
            for idx, sign in ((i, 1), (j, 1), (k, -1)):
                if idx:
                    row[idx - 1] = (row[idx - 1] + sign) % M
            rows.append(row)
            rhs.append((be.exps[i][j] - ae.exps[i][j]) % M)
    sol = solve_mod(rows, rhs, M)
    if sol is None:
        return False, None, M
    f = (0,) + tuple(sol)
    if shift_by_coboundary(ae, f).exps != be.exps:
        raise InternalError("coboundary witness failed verification")
    return True, f, M


def _coords_in_echelon(z, gens, m: int):
    """Coefficients expressing z over echelon generators mod m, else None."""
    z = [int(x) % m for x in z]
    coeffs = []
    for g in gens:
        lead = next((c for c, v in enumerate(g) if v), None)
        if lead is None:
            raise InternalError("zero generator in echelon basis")
        v = g[lead]
        gg = gcd(v, m)
        if z[lead] % gg:
            return None
        mi = m // gg
        ai = ((z[lead] // gg) * pow(v // gg, -1, mi)) % mi if mi > 1 else 0
        if ai:
            z = [(zz - ai * gi) % m for zz, gi in zip(z, g)]
        coeffs.append(ai)
    if any(z):
        return None
    return coeffs


def h2_classes(sub: SubgroupData, m: int) -> list[Cocycle]:
    """Representatives of normalized cocycle classes modulo coboundaries.

    Enumerates the mod-m cocycle solution module, quotients by mod-m
    coboundaries, then merges representatives that become cohomologous over
    the extended modulus m * exp(H). Result is sorted with the trivial class
    first.
    """
    if sub.order > CAPS.h2_subgroup:
        raise CapExceeded(
            f"cohomology enumeration capped at subgroup order {CAPS.h2_subgroup}")
    if m == 1:
        return [trivial_cocycle(sub, 1)]
    size = sub.order
    grp = sub.group
    pos = sub.pos
    els = sub.elements
    nvars = size * size

    def v(i, j):
        return i * size + j

    pmul = [[pos[grp.mul(a, b)] for b in els] for a in els]
    rows = []
    for i in range(size):
        for j in range(size):
            for k in range(size):
                row = [0] * nvars
                for col, sign in ((v(i, j), 1), (v(pmul[i][j], k), 1),
                                  (v(j, k), -1), (v(i, pmul[j][k]), -1)):
                    row[col] = (row[col] + sign) % m
                rows.append(row)
    for t in range(size):
        for col in (v(0, t), v(t, 0)):
            row = [0] * nvars
            row[col] = 1
            rows.append(row)
    gens = kernel_mod(rows, nvars, m)
    if not gens:
        return [trivial_cocycle(sub, m)]
    r = len(gens)
    orders = []
    for g in gens:
        lead_val = next(vv for vv in g if vv)
        orders.append(m // gcd(lead_val, m))
    cob_cols = []
    for t in range(1, size):
        delta = [0] * nvars
        for i in range(size):
            for j in range(size):
                val = (i == t) + (j == t) - (pmul[i][j] == t)
                delta[v(i, j)] = val % m
        coords = _coords_in_echelon(delta, gens, m)
        if coords is None:
            raise InternalError("coboundary is not in the cocycle module")
        cob_cols.append(coords)
    mat = [
        [cob_cols[t][i] for t in range(size - 1)] + [orders[i] if k == i else 0 for k in range(r)]
        for i in range(r)
    ]
    diag, _, uinv = snf(mat)
    if any(d <= 0 for d in diag[:r]):
        raise InternalError("quotient lattice is not full rank")
    total = 1
    for d in diag[:r]:
        total *= d
    if total > 4096:
        raise CapExceeded(f"{total} raw classes exceeds the enumeration cap")
    tables = set()
    for y in iproduct(*(range(d) for d in diag[:r])):
        x = [sum(uinv[i][k] * y[k] for k in range(r)) for i in range(r)]
        flat = [0] * nvars
        for xi, g in zip(x, gens):
            if xi % m:
                flat = [(zz + xi * gi) % m for zz, gi in zip(flat, g)]
        tables.add(tuple(tuple(flat[v(i, j)] for j in range(size)) for i in range(size)))
    reps: list[Cocycle] = []
    for table in sorted(tables):
        cand = Cocycle(sub, m, table)
        if not any(is_cohomologous(cand, rep)[0] for rep in reps):
            reps.append(cand)
    return reps

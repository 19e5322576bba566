"""Graded matrix algebras over cyclotomic scalars.

A presentation (G, H, alpha, tuple) realizes the algebra F^alpha H (x) M_n(F)
with basis u_h (x) e_ij and the elementary grading deg(u_h (x) e_ij) =
g_i^-1 h g_j.  This module builds the algebra, multiplies sparse elements
exactly, answers block-relation queries with explicit bridge elements, and
emits subfield-rational generating sets together with a span verification.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .config import CAPS
from .cyclo import CycScalar, SubfieldDescriptor, as_cyc, phi
from .errors import CapExceeded, InternalError, PreconditionError, PresentationError
from .groups import SubgroupData, subgroup_group
from .modlinalg import solve_mod
from .presentation import (Presentation, normalize_with_details, related_reps,
                           validate_presentation)
from .twisted import Cocycle, conjugate_cocycle, galois_twist, sub_exponent


class GradedAlgebra:
    """F^alpha H (x) M_n(F) with basis triples (h, i, j).

    h is a subgroup element by parent id; i, j are tuple positions.  Blocks
    are the position classes with equal tuple entries.
    """

    __slots__ = ("presentation", "group", "sub", "alpha", "entries", "size",
                 "dim", "dims", "blocks", "block_of", "_deg", "_by_degree")

    def __init__(self, presentation: Presentation):
        report = validate_presentation(presentation)
        if not report.wellformed:
            raise PresentationError("; ".join(report.issues))
        self.presentation = presentation
        grp = presentation.group
        sub = presentation.sub
        self.group = grp
        self.sub = sub
        self.alpha = presentation.alpha
        self.entries = presentation.entries
        n = len(self.entries)
        self.size = n
        dim = sub.order * n * n
        if dim > CAPS.algebra_dim:
            raise CapExceeded(f"algebra dimension {dim} exceeds cap {CAPS.algebra_dim}")
        self.dim = dim

        deg = {}
        dims: dict[int, int] = {}
        by_degree: dict[int, list] = {}
        inv_entries = [grp.inv(g) for g in self.entries]
        for h in sub.elements:
            for i in range(n):
                left = grp.mul(inv_entries[i], h)
                for j in range(n):
                    g = grp.mul(left, self.entries[j])
                    deg[(h, i, j)] = g
                    dims[g] = dims.get(g, 0) + 1
                    by_degree.setdefault(g, []).append((h, i, j))
        self._deg = deg
        self.dims = dims
        self._by_degree = {g: tuple(v) for g, v in by_degree.items()}

        by_value: dict[int, list[int]] = {}
        for i, g in enumerate(self.entries):
            by_value.setdefault(g, []).append(i)
        blocks = tuple(tuple(v) for v in by_value.values())
        self.blocks = blocks
        block_of = [0] * n
        for b, members in enumerate(blocks):
            for i in members:
                block_of[i] = b
        self.block_of = tuple(block_of)

        if sum(dims.values()) != dim:
            raise InternalError("degree dimensions do not sum to the total dimension")
        e_dim = sum(m * m for _, m in presentation.lam.counts)
        if dims.get(0, 0) != e_dim:
            raise InternalError("identity component does not match coset multiplicities")

    def degree(self, h: int, i: int, j: int) -> int:
        key = (h, i, j)
        if key not in self._deg:
            raise PreconditionError(f"not a basis triple: {key}")
        return self._deg[key]

    def basis_of_degree(self, g: int):
        return self._by_degree.get(g, ())

    def basis_element(self, h: int, i: int, j: int, coeff=1) -> "AlgElement":
        self.degree(h, i, j)
        return AlgElement(self, {(h, i, j): as_cyc(coeff)})

    def zero(self) -> "AlgElement":
        return AlgElement(self, {})

    def one(self) -> "AlgElement":
        one = CycScalar.one()
        return AlgElement(self, {(0, i, i): one for i in range(self.size)})

    def element(self, terms) -> "AlgElement":
        out = {}
        for (h, i, j), c in dict(terms).items():
            self.degree(h, i, j)
            out[(h, i, j)] = as_cyc(c)
        return AlgElement(self, out)

    def __repr__(self) -> str:
        return f"GradedAlgebra(|H|={self.sub.order}, n={self.size}, dim={self.dim})"


class AlgElement:
    """Sparse algebra element: basis triple -> cyclotomic coefficient."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GradedAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    def is_zero(self) -> bool:
        return not self.terms

    def support(self):
        return frozenset(self.terms)

    def homogeneous_degree(self):
        """The common degree of all terms, or None if mixed or zero."""
        degs = {self.algebra._deg[k] for k in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def __add__(self, other: "AlgElement") -> "AlgElement":
        _same_algebra(self, other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return AlgElement(self.algebra, out)

    def __neg__(self) -> "AlgElement":
        return AlgElement(self.algebra, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        return self + (-other)

    def scaled(self, c) -> "AlgElement":
        c = as_cyc(c)
        return AlgElement(self.algebra, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            return multiply(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgElement):
            return NotImplemented
        return (self.algebra is other.algebra
                and self.terms.keys() == other.terms.keys()
                and all(self.terms[k] == other.terms[k] for k in self.terms))

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "AlgElement(0)"
        bits = [f"{v!r}*u[{h}]e[{i},{j}]" for (h, i, j), v in sorted(self.terms.items())]
        return "AlgElement(" + " + ".join(bits) + ")"


def twisted_group_algebra(alpha: Cocycle) -> GradedAlgebra:
    """F^alpha H as a standalone H-graded algebra (tuple (e,)).

    The subgroup is relabeled as its own group; element i is
    alpha.sub.elements[i], so the exponent table carries over unchanged and
    polynomial degrees are subgroup positions.
    """
    h_grp, _, _ = subgroup_group(alpha.sub.group, alpha.sub.elements)
    full = SubgroupData(h_grp, range(h_grp.order))
    beta = Cocycle(full, alpha.modulus, alpha.exps)
    return GradedAlgebra(Presentation(h_grp, full, beta, (0,)))


def _same_algebra(x: AlgElement, y: AlgElement) -> None:
    if x.algebra is not y.algebra:
        raise PreconditionError("elements live in different algebras")


def multiply(x: AlgElement, y: AlgElement) -> AlgElement:
    """(u_a e_ij)(u_b e_kl) = [j == k] zeta^alpha(a,b) u_ab e_il."""
    _same_algebra(x, y)
    alg = x.algebra
    grp, alpha = alg.group, alg.alpha
    m = alpha.modulus
    acc: dict = {}
    for (a, i, j), ca in x.terms.items():
        for (b, k, l), cb in y.terms.items():
            if j != k:
                continue
            key = (grp.mul(a, b), i, l)
            c = ca * cb * CycScalar.from_root(m, alpha.value(a, b))
            acc[key] = acc[key] + c if key in acc else c
    return AlgElement(alg, acc)


SAME_BLOCK = "sameBlock"
RELATED_DISTINCT = "relatedDistinct"
UNRELATED = "unrelated"


def relate(algebra: GradedAlgebra, i: int, j: int) -> str:
    """Relation of two tuple positions: equal entries, same (H,H) double
    coset with distinct entries, or different double cosets."""
    n = algebra.size
    if not (0 <= i < n and 0 <= j < n):
        raise PreconditionError("position out of range")
    gi, gj = algebra.entries[i], algebra.entries[j]
    if gi == gj:
        return SAME_BLOCK
    if algebra.sub.coset_id_of[gi] == algebra.sub.coset_id_of[gj]:
        raise PreconditionError("tuple uses two representatives of one coset")
    if related_reps(algebra.group, algebra.sub, gi, gj):
        return RELATED_DISTINCT
    return UNRELATED


def bridge(algebra: GradedAlgebra, z: tuple, w: tuple) -> tuple:
    """A basis triple c with z * c * w != 0, of the least degree class the
    positions allow: degree e for equal entries, a nonidentity subgroup
    degree for related distinct entries, a degree outside H otherwise."""
    grp, sub = algebra.group, algebra.sub
    for t in (z, w):
        if algebra.degree(*t) != 0:
            raise PreconditionError(f"bridge endpoints must have degree e, got {t}")
    _, _, j = z
    _, k, _ = w
    verdict = relate(algebra, j, k)
    gj, gk = algebra.entries[j], algebra.entries[k]
    best = None
    for h in sub.elements:
        d = grp.mul(grp.inv(gj), grp.mul(h, gk))
        if d == 0:
            if verdict != SAME_BLOCK:
                raise InternalError("identity bridge between distinct blocks")
            return (h, j, k)
        if best is None and d in sub.eset:
            best = (h, j, k)
    if best is not None:
        if verdict != RELATED_DISTINCT:
            raise InternalError("subgroup bridge between unrelated blocks")
        return best
    if verdict != UNRELATED:
        raise InternalError(f"no subgroup bridge for {verdict} positions")
    return (0, j, k)


@dataclass(frozen=True)
class KFormReport:
    """Span verification for a generating set over the minimal field."""

    mode: str
    k_dim: int
    expected_dim: int
    f_span_full: bool
    slot_units: tuple[int, ...]
    descent_enforced: bool
    ok: bool


@dataclass(frozen=True)
class KFormResult:
    presentation: Presentation
    algebra: GradedAlgebra
    field: SubfieldDescriptor
    generators: tuple
    labels: tuple
    report: KFormReport


MODES = ("corrected", "conjugate", "galois")


def build_k_form(p: Presentation, mode: str = "corrected",
                 word_bound: int | None = None) -> KFormResult:
    """Generators of a form of A over the minimal field k.

    The algebra is laid out with the tuple factored along S: positions
    (i, c, d) carry entry g_c * tau_d * b_i where g_c runs over one
    representative per Galois character of S, tau_d over the H-cosets of
    the character kernel T, and b_i over the S-coset factor of the tuple.

    Generator families: matrix units of the outer factor, matrix units of
    the T-factor, one twisted diagonal per subgroup element, scalar
    diagonals for a power basis of Q(mu_n), and one Galois permutation per
    character value.  The twisted diagonal relabels u_h by conjugation and,
    in mode "corrected", carries the coboundary scalar that makes the
    relabeling multiplicative; mode "conjugate" drops the scalar and mode
    "galois" drops the relabeling.  The report records whether the k-span
    closes at k-dimension dim_F A with full F-span.
    """
    if mode not in MODES:
        raise PreconditionError(f"unknown k-form mode {mode!r}")
    nf = normalize_with_details(p, word_bound)
    if nf.presentation != p:
        raise PresentationError("k-form construction needs the presentation in normal form")
    chain = nf.chain
    grp, sub, alpha = p.group, p.sub, p.alpha
    n_root = chain.n
    field = chain.field
    chars = dict(chain.s_characters)
    m_alpha = alpha.modulus

    slot_chars = sorted(set(chars.values()))
    g_slots = tuple(min(s for s in chain.S if chars[s] == c) for c in slot_chars)
    m_slots = len(slot_chars)
    t_elems = tuple(s for s in chain.S if chars[s] == 1 % n_root)
    t_sub = SubgroupData(grp, t_elems)
    if not sub.eset <= t_sub.eset:
        raise InternalError("subgroup does not lie in the character kernel")
    if len(chain.S) != m_slots * t_sub.order:
        raise InternalError("characters do not split S over their kernel")
    tau = tuple(sorted({sub.coset_id_of[x] for x in t_elems}))
    t_len = len(tau)

    s_sub = SubgroupData(grp, chain.S)
    s_index = s_sub.order // sub.order
    by_scoset: dict[int, list[tuple[int, int]]] = {}
    for cid, mult in p.lam.counts:
        by_scoset.setdefault(s_sub.coset_id_of[cid], []).append((cid, mult))
    b_seq = []
    for sid in sorted(by_scoset):
        hits = by_scoset[sid]
        mults = {m for _, m in hits}
        if len(hits) != s_index or len(mults) != 1:
            raise InternalError("tuple does not factor along S")
        b_seq.extend([sid] * mults.pop())
    r = len(b_seq)

    def pos(i: int, c: int, d: int) -> int:
        return (i * m_slots + c) * t_len + d

    entries = []
    for b in b_seq:
        for gc in g_slots:
            for td in tau:
                entries.append(sub.coset_id_of[grp.mul(grp.mul(gc, td), b)])
    p_s = Presentation(grp, sub, alpha, tuple(entries))
    if p_s.lam.counts != p.lam.counts:
        raise InternalError("factored layout changed the coset multiset")
    algebra = GradedAlgebra(p_s)

    # Per slot: the Galois unit used on scalars and, in corrected mode, a
    # witness f making the conjugation relabel multiplicative; f solves
    # delta f = u * alpha - alpha^(conjugation) together with the descent
    # rows that keep the Galois permutations inside the span.
    big_m = m_alpha * sub_exponent(sub)
    slot_units: list[int] = []
    slot_scalars: list = []
    descent_enforced = True
    for c, gc in enumerate(g_slots):
        jc = chars[gc]
        j_inv = pow(jc, -1, n_root) if n_root > 1 else 1
        if mode != "corrected" or gc == 0:
            slot_units.append(j_inv % n_root if n_root > 1 else 0)
            slot_scalars.append(None)
            if mode != "corrected" and m_slots > 1:
                descent_enforced = False
            continue
        involutive = (jc * jc) % n_root == 1 % n_root and grp.mul(gc, gc) == 0
        found = None
        for enforce in ((True, False) if involutive else (False,)):
            for u_n in dict.fromkeys((j_inv, jc)):
                for u in _unit_lifts(u_n, n_root, m_alpha):
                    f = _descent_witness(grp, sub, alpha, gc, u,
                                         n_root, big_m, enforce)
                    if f is not None:
                        found = (u_n % n_root, f, enforce)
                        break
                if found:
                    break
            if found:
                break
        if not found:
            raise PresentationError(
                f"no coboundary witness for the slot of {gc}; corrected generators unavailable")
        slot_units.append(found[0])
        slot_scalars.append((found[1], big_m))
        descent_enforced = descent_enforced and found[2]

    one = CycScalar.one()
    gens: list[AlgElement] = []
    labels: list[str] = []

    for i1 in range(r):
        for i2 in range(r):
            terms = {(0, pos(i1, c, d), pos(i2, c, d)): one
                     for c in range(m_slots) for d in range(t_len)}
            gens.append(AlgElement(algebra, terms))
            labels.append(f"unit_r[{i1},{i2}]")

    for d1 in range(t_len):
        for d2 in range(t_len):
            terms = {(0, pos(i, c, d1), pos(i, c, d2)): one
                     for i in range(r) for c in range(m_slots)}
            gens.append(AlgElement(algebra, terms))
            labels.append(f"unit_t[{d1},{d2}]")

    for h in sub.elements:
        terms = {}
        for c, gc in enumerate(g_slots):
            hc = h if mode == "galois" else grp.conj(h, grp.inv(gc))
            if slot_scalars[c] is None:
                coeff = one
            else:
                f, big = slot_scalars[c]
                coeff = CycScalar.from_root(big, f[sub.pos[h]])
            for i in range(r):
                for d in range(t_len):
                    key = (hc, pos(i, c, d), pos(i, c, d))
                    terms[key] = coeff
        gens.append(AlgElement(algebra, terms))
        labels.append(f"twisted_diag[{h}]")

    for a in range(phi(n_root)):
        z = CycScalar.from_root(n_root, a)
        terms = {}
        for c in range(m_slots):
            zc = z.galois(slot_units[c]) if n_root > 1 else z
            if zc.is_zero():
                continue
            for i in range(r):
                for d in range(t_len):
                    terms[(0, pos(i, c, d), pos(i, c, d))] = zc
        gens.append(AlgElement(algebra, terms))
        labels.append(f"scalar_diag[{a}]")

    slot_of_char = {ch: c for c, ch in enumerate(slot_chars)}
    for sigma in chain.sbar_image:
        terms = {}
        for c, ch in enumerate(slot_chars):
            c2 = slot_of_char[(sigma * ch) % n_root]
            for i in range(r):
                for d in range(t_len):
                    terms[(0, pos(i, c2, d), pos(i, c, d))] = one
        gens.append(AlgElement(algebra, terms))
        labels.append(f"galois_perm[{sigma}]")

    report = _span_report(algebra, field, tuple(gens), mode,
                          tuple(slot_units), descent_enforced)
    return KFormResult(p_s, algebra, field, tuple(gens), tuple(labels), report)


def _descent_witness(grp, sub, alpha, gc: int, u: int, n_root: int,
                     big_m: int, enforce: bool):
    """Scalars f (mod big_m, indexed by subgroup position, f[e] = 0) with
    delta f = u * alpha - alpha(gc . gc^-1, gc . gc^-1).

    With enforce=True, two more row families pin the witness down so the
    Galois permutation conjugates of the twisted diagonals stay inside the
    generated span: zeta^f must lie in Q(mu_n), and for an involutive slot
    u * f(x) + f(gc x gc^-1) = 0.
    """
    beta = conjugate_cocycle(alpha, grp.inv(gc))
    m = alpha.modulus
    step = big_m // m
    elems = sub.elements
    pos = sub.pos
    nv = len(elems) - 1
    if nv == 0:
        return (0,)
    rows, rhs = [], []
    for x in elems:
        for y in elems:
            row = [0] * nv
            for el, sgn in ((x, 1), (y, 1), (grp.mul(x, y), -1)):
                p = pos[el]
                if p:
                    row[p - 1] = (row[p - 1] + sgn) % big_m
            rows.append(row)
            rhs.append((step * ((u * alpha.value(x, y)) % m - beta.value(x, y))) % big_m)
    if enforce:
        for x in elems[1:]:
            if n_root > 1:
                row = [0] * nv
                row[pos[x] - 1] = n_root % big_m
                rows.append(row)
                rhs.append(0)
            row = [0] * nv
            row[pos[x] - 1] = u % big_m
            xc = grp.conj(x, grp.inv(gc))
            if pos[xc]:
                row[pos[xc] - 1] = (row[pos[xc] - 1] + 1) % big_m
            rows.append(row)
            rhs.append(0)
    sol = solve_mod(rows, rhs, big_m)
    if sol is None:
        return None
    return (0,) + tuple(int(v) % big_m for v in sol)


def _unit_lifts(j: int, n: int, m: int):
    """All units mod m congruent to j mod n, requiring n | m."""
    if m % n:
        raise PreconditionError("n must divide m")
    if n == 1:
        return [u for u in range(1, m + 1) if gcd(u, m) == 1] if m > 1 else [1]
    return [u for u in range(j % n, m + 1, n) if gcd(u, m) == 1]


def _span_report(algebra: GradedAlgebra, field: SubfieldDescriptor,
                 gens: tuple, mode: str, slot_units: tuple,
                 descent_enforced: bool) -> KFormReport:
    """Close the k-span of the generators under multiplication and measure it.

    The closure is a k-subspace by construction, so its Q-dimension is a
    multiple of [k:Q]; the report compares the k-dimension against dim_F A
    and checks that the closure spans A over the cyclotomic field.
    """
    slot = {key: idx for idx, key in enumerate(sorted(
        (h, i, j) for h in algebra.sub.elements
        for i in range(algebra.size) for j in range(algebra.size)))}
    big = field.n
    for g in gens:
        for c in g.terms.values():
            big = lcm(big, c.modulus)
    width = phi(big)

    def qvec(x: AlgElement) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for key, c in x.terms.items():
            base = slot[key] * width
            for t, q in enumerate(c._promoted(big).coeffs):
                if q:
                    out[base + t] = q
        return out

    def reduce_q(vec: dict[int, Fraction], ech: dict) -> dict[int, Fraction]:
        while vec:
            piv = min(vec)
            if piv not in ech:
                return vec
            coef = vec[piv]
            for idx, val in ech[piv].items():
                nv = vec.get(idx, Fraction(0)) - coef * val
                if nv:
                    vec[idx] = nv
                else:
                    vec.pop(idx, None)
        return vec

    k_basis = []
    for a in range(field.n):
        acc = CycScalar.zero()
        for u in field.units:
            acc = acc + CycScalar.from_root(field.n, (a * u) % field.n)
        if not acc.is_zero():
            k_basis.append(acc)

    ech: dict[int, dict[int, Fraction]] = {}
    basis_elems: list[AlgElement] = []
    queue = [g.scaled(kb) for kb in k_basis for g in gens]
    while queue:
        x = queue.pop()
        if x.is_zero():
            continue
        vec = reduce_q(qvec(x), ech)
        if not vec:
            continue
        piv = min(vec)
        inv = Fraction(1) / vec[piv]
        ech[piv] = {i: v * inv for i, v in vec.items()}
        basis_elems.append(x)
        for b in basis_elems:
            queue.append(multiply(b, x))
            if b is not x:
                queue.append(multiply(x, b))

    rank = len(basis_elems)
    k_deg = field.degree_over_q()
    if rank % k_deg:
        raise InternalError("closure is not a module over the subfield")
    k_dim = rank // k_deg

    cech: dict[int, dict] = {}
    f_rank = 0
    for x in basis_elems:
        vec = {slot[key]: c for key, c in x.terms.items()}
        while vec:
            piv = min(vec)
            if piv not in cech:
                inv = vec[piv].inverse()
                cech[piv] = {i: v * inv for i, v in vec.items()}
                f_rank += 1
                break
            coef = vec[piv]
            for idx, val in cech[piv].items():
                nv = vec.get(idx, CycScalar.zero()) - coef * val
                if nv.is_zero():
                    vec.pop(idx, None)
                else:
                    vec[idx] = nv

    expected = algebra.dim
    f_full = f_rank == expected
    return KFormReport(mode, k_dim, expected, f_full, tuple(slot_units),
                       descent_enforced, k_dim == expected and f_full)

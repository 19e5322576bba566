"""Exact cyclotomic arithmetic.

Scalars live in Q(zeta_m), represented on the power basis 1, x, ..., x^(phi(m)-1)
modulo the m-th cyclotomic polynomial, with Fraction coefficients. Values that
turn out rational are demoted to modulus 1, and mixed-modulus arithmetic
promotes both sides to the lcm, so equality is field equality. CycScalar is
deliberately unhashable: equal values can carry different moduli.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import PreconditionError


def divisors(m: int) -> list[int]:
    small = [d for d in range(1, int(m ** 0.5) + 1) if m % d == 0]
    large = [m // d for d in reversed(small) if d * d != m]
    return small + large


def phi(m: int) -> int:
    out, rem, p = 1, m, 2
    while p * p <= rem:
        if rem % p == 0:
            out *= p - 1
            rem //= p
            while rem % p == 0:
                out *= p
                rem //= p
        p += 1
    if rem > 1:
        out *= rem - 1
    return out


def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _exact_div_monic_int(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    quo = [0] * (len(num) - dd)
    for k in range(len(quo) - 1, -1, -1):
        c = num[k + dd]
        quo[k] = c
        for i in range(dd + 1):
            num[k + i] -= c * den[i]
    if any(num[:dd]):
        raise ArithmeticError("division was not exact")
    return quo


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, ascending, monic."""
    if m < 1:
        raise PreconditionError("modulus must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m)[:-1]:
        poly = _exact_div_monic_int(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_rows(m: int) -> tuple[tuple[int, ...], ...]:
    """Row t is x^t reduced modulo the m-th cyclotomic polynomial."""
    mod = cyclotomic_polynomial(m)
    deg = len(mod) - 1
    cur = [0] * deg
    cur[0] = 1
    rows = []
    for _ in range(m):
        rows.append(tuple(cur))
        lead = cur[-1]
        cur = [0] + cur[:-1]
        if lead:
            for i in range(deg):
                cur[i] -= lead * mod[i]
    return tuple(rows)


def _reduce_poly(m: int, coeffs: list[Fraction]) -> list[Fraction]:
    deg = phi(m)
    rows = _power_rows(m)
    out = [Fraction(0)] * deg
    for t, c in enumerate(coeffs):
        if c:
            row = rows[t % m] if t >= deg else None
            if row is None:
                out[t] += c
            else:
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
    return out


@dataclass(frozen=True, eq=False)
class CycScalar:
    """Element of Q(zeta_modulus) on the power basis."""

    modulus: int
    coeffs: tuple[Fraction, ...]

    __hash__ = None  # equal values may carry different moduli

    @staticmethod
    def _make(m: int, coeffs) -> "CycScalar":
        coeffs = [Fraction(c) for c in coeffs]
        deg = phi(m)
        if len(coeffs) != deg:
            raise PreconditionError(f"need {deg} coefficients at modulus {m}")
        if m > 1 and not any(coeffs[1:]):
            return CycScalar(1, (coeffs[0],))
        return CycScalar(m, tuple(coeffs))

    @staticmethod
    def from_rational(q) -> "CycScalar":
        return CycScalar(1, (Fraction(q),))

    @staticmethod
    def from_root(m: int, k: int) -> "CycScalar":
        """zeta_m ** k."""
        if m < 1:
            raise PreconditionError("modulus must be positive")
        rows = _power_rows(m)
        return CycScalar._make(m, rows[k % m])

    @staticmethod
    def zero() -> "CycScalar":
        return CycScalar(1, (Fraction(0),))

    @staticmethod
    def one() -> "CycScalar":
        return CycScalar(1, (Fraction(1),))

    def _promoted(self, m: int) -> "CycScalar":
        if m == self.modulus:
            return self
        if m % self.modulus:
            raise PreconditionError("can only promote to a multiple modulus")
        step = m // self.modulus
        acc = [Fraction(0)] * m
        for i, c in enumerate(self.coeffs):
            acc[(i * step) % m] += c
        return CycScalar(m, tuple(_reduce_poly(m, acc)))

    def _pair(self, other) -> tuple["CycScalar", "CycScalar"]:
        other = as_cyc(other)
        m = lcm(self.modulus, other.modulus)
        return self._promoted(m), other._promoted(m)

    def __add__(self, other) -> "CycScalar":
        a, b = self._pair(other)
        return CycScalar._make(a.modulus, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "CycScalar":
        return CycScalar(self.modulus, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "CycScalar":
        return self + (-as_cyc(other))

    def __rsub__(self, other) -> "CycScalar":
        return as_cyc(other) + (-self)

    def __mul__(self, other) -> "CycScalar":
        a, b = self._pair(other)
        conv = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        return CycScalar._make(a.modulus, _reduce_poly(a.modulus, conv))

    __rmul__ = __mul__

    def inverse(self) -> "CycScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.modulus == 1:
            return CycScalar(1, (1 / self.coeffs[0],))
        mod = [Fraction(c) for c in cyclotomic_polynomial(self.modulus)]
        g, u = _poly_xgcd(list(self.coeffs), mod)
        if len(g) != 1:
            raise ArithmeticError("gcd with the cyclotomic polynomial is not constant")
        scale = 1 / g[0]
        inv = CycScalar._make(self.modulus,
                              _reduce_poly(self.modulus, [c * scale for c in u]))
        if not (self * inv).is_one():
            raise ArithmeticError("inverse verification failed")
        return inv

    def __truediv__(self, other) -> "CycScalar":
        return self * as_cyc(other).inverse()

    def __rtruediv__(self, other) -> "CycScalar":
        return as_cyc(other) * self.inverse()

    def __pow__(self, k: int) -> "CycScalar":
        if k < 0:
            return self.inverse() ** (-k)
        out, base = CycScalar.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, (CycScalar, int, Fraction)):
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.modulus == 1 and self.coeffs[0] == 1

    def is_rational(self) -> bool:
        return self.modulus == 1

    def as_rational(self) -> Fraction:
        if self.modulus != 1:
            raise PreconditionError("value is not rational")
        return self.coeffs[0]

    def galois(self, j: int) -> "CycScalar":
        """Field automorphism zeta -> zeta^j; j must be a unit mod the modulus."""
        m = self.modulus
        if m == 1:
            return self
        if gcd(j, m) != 1:
            raise PreconditionError(f"galois exponent {j} is not a unit mod {m}")
        acc = [Fraction(0)] * m
        for i, c in enumerate(self.coeffs):
            acc[(i * j) % m] += c
        return CycScalar._make(m, _reduce_poly(m, acc))

    def conjugate(self) -> "CycScalar":
        return self.galois(self.modulus - 1) if self.modulus > 1 else self

    def __repr__(self) -> str:
        if self.modulus == 1:
            return f"Cyc({self.coeffs[0]})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                base = "1" if i == 0 else (f"z{self.modulus}" if i == 1 else f"z{self.modulus}^{i}")
                terms.append(f"{c}*{base}" if i else f"{c}")
        return "Cyc(" + (" + ".join(terms) or "0") + ")"


def _poly_xgcd(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Returns (g, u) with u*a = g modulo b and g = gcd(a, b), over Q[x]."""
    r0, r1 = _trim([Fraction(c) for c in a]), _trim([Fraction(c) for c in b])
    u0, u1 = [Fraction(1)], [Fraction(0)]
    while r1 != [Fraction(0)] and any(r1):
        q = _poly_divmod(r0, r1)[0]
        r0, r1 = r1, _trim(_poly_sub(r0, _poly_mul(q, r1)))
        u0, u1 = u1, _trim(_poly_sub(u0, _poly_mul(q, u1)))
    return r0, u0


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0))
        for i in range(n)
    ]


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a, b = _trim(list(a)), _trim(list(b))
    if len(a) < len(b):
        return [Fraction(0)], a
    quo = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(quo) - 1, -1, -1):
        c = a[k + len(b) - 1] / lead
        quo[k] = c
        if c:
            for i, y in enumerate(b):
                a[k + i] -= c * y
    return quo, _trim(a)


def as_cyc(x) -> CycScalar:
    if isinstance(x, CycScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return CycScalar.from_rational(x)
    raise PreconditionError(f"cannot coerce {type(x).__name__} to a cyclotomic scalar")


@dataclass(frozen=True)
class SubfieldDescriptor:
    """Fixed field of Q(zeta_n) under the unit subgroup `units` of (Z/n)*.

    n = 1 denotes Q itself; its unit group is stored as (0,), the residue
    of 1 mod 1.
    """

    n: int
    units: tuple[int, ...]

    @staticmethod
    def from_generators(n: int, gens) -> "SubfieldDescriptor":
        if n < 1:
            raise PreconditionError("n must be positive")
        seen = {1 % n}
        for g in gens:
            g %= n
            if gcd(g, n) != 1:
                raise PreconditionError(f"{g} is not a unit mod {n}")
            seen.add(g)
        frontier = list(seen)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(seen):
                    c = (a * b) % n
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        return SubfieldDescriptor(n, tuple(sorted(seen)))

    def contains(self, x) -> bool:
        x = as_cyc(x)
        big = lcm(x.modulus, self.n)
        y = x._promoted(big)
        for j in range(1, big + 1):
            if gcd(j, big) == 1 and (j % self.n) in self.units:
                if y.galois(j) != y:
                    return False
        return True

    def degree_over_q(self) -> int:
        return phi(self.n) // len(self.units)

    def is_rational(self) -> bool:
        return self.degree_over_q() == 1

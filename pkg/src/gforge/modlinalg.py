"""Exact linear algebra over Z/M and Z.

howell_echelon returns an echelon generating set of a row module over Z/M
with Howell saturation, so rows of the span with leading zeros are reachable
from rows below; that property is what makes kernel extraction by block
columns sound over a non-field. snf is integer Smith normal form with the
left transform and its inverse tracked, used for quotient representatives.
"""

from __future__ import annotations

from math import gcd

import numpy as np

from .errors import InternalError, PreconditionError


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def howell_echelon(rows, M: int) -> list[tuple[int, ...]]:
    """Echelon generating set of the Z/M row module spanned by `rows`."""
    if M < 1:
        raise PreconditionError("modulus must be positive")
    if M == 1:
        return []
    queue = [np.asarray(r, dtype=np.int64) % M for r in rows]
    if any(q.ndim != 1 for q in queue):
        raise PreconditionError("rows must be one-dimensional")
    pivots: dict[int, np.ndarray] = {}
    while queue:
        r = queue.pop() % M
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            continue
        c = int(nz[0])
        if c in pivots:
            p = pivots[c]
            a, b = int(p[c]), int(r[c])
            g, x, y = xgcd(a, b)
            # [[x, y], [-b/g, a/g]] is unimodular, so the span is unchanged
            newp = (x * p + y * r) % M
            newr = ((a // g) * r - (b // g) * p) % M
            queue.append(newr)
            if g != a % M:
                pivots[c] = newp
                queue.append(((M // gcd(g, M)) * newp) % M)
        else:
            pivots[c] = r
            queue.append(((M // gcd(int(r[c]), M)) * r) % M)
    return [tuple(int(x) for x in pivots[c]) for c in sorted(pivots)]


def kernel_mod(a_rows, n_vars: int, M: int) -> list[tuple[int, ...]]:
    """Generators of {x in (Z/M)^n : A x = 0 mod M}; A given as rows of length n."""
    a_rows = [list(r) for r in a_rows]
    for r in a_rows:
        if len(r) != n_vars:
            raise PreconditionError("equation width mismatch")
    if M == 1 or n_vars == 0:
        return []
    k = len(a_rows)
    aug = []
    for i in range(n_vars):
        row = [a_rows[j][i] for j in range(k)] + [0] * n_vars
        row[k + i] = 1
        aug.append(row)
    ech = howell_echelon(aug, M)
    return [row[k:] for row in ech if not any(row[:k])]


def solve_mod(a_rows, b, M: int) -> tuple[int, ...] | None:
    """One solution of A x = b over Z/M, or None."""
    a_rows = [list(r) for r in a_rows]
    b = list(b)
    if len(a_rows) != len(b):
        raise PreconditionError("rhs length mismatch")
    if not a_rows:
        return ()
    n = len(a_rows[0])
    aug = [row + [(-bi) % M] for row, bi in zip(a_rows, b)]
    gens = kernel_mod(aug, n + 1, M)
    t_acc = M
    x_acc = [0] * n
    for vec in gens:
        t = vec[n]
        g, u, v = xgcd(t_acc, t)
        x_acc = [(u * xa + v * xv) % M for xa, xv in zip(x_acc, vec[:n])]
        t_acc = g
    if t_acc != 1:
        return None
    for row, bi in zip(a_rows, b):
        if sum(c * x for c, x in zip(row, x_acc)) % M != bi % M:
            raise InternalError("solver produced a non-solution")
    return tuple(x_acc)


def _ident(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def snf(mat) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Integer Smith normal form with left transforms.

    Returns (diag, U, Uinv) where U @ mat @ V is diagonal `diag` with the
    divisibility chain, for some unimodular V, and U @ Uinv = I. Verified
    internally by tracking V.
    """
    A = [[int(x) for x in row] for row in mat]
    r = len(A)
    c = len(A[0]) if r else 0
    orig = [row[:] for row in A]
    U, Uinv, V = _ident(r), _ident(r), _ident(c)

    def row_add(dst, src, k):
        # A' = E A with E = I + k * e_(dst,src); Uinv gets E^-1 on the right
        A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]
        for t in range(r):
            Uinv[t][src] -= k * Uinv[t][dst]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for t in range(r):
            Uinv[t][i], Uinv[t][j] = Uinv[t][j], Uinv[t][i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for t in range(r):
            Uinv[t][i] = -Uinv[t][i]

    def col_add(dst, src, k):
        for t in range(r):
            A[t][dst] += k * A[t][src]
        for t in range(c):
            V[t][dst] += k * V[t][src]

    def col_swap(i, j):
        for t in range(r):
            A[t][i], A[t][j] = A[t][j], A[t][i]
        for t in range(c):
            V[t][i], V[t][j] = V[t][j], V[t][i]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best[0] != t:
                row_swap(t, best[0])
            if best[1] != t:
                col_swap(t, best[1])
            if A[t][t] < 0:
                row_neg(t)
            dirty = False
            for i in range(t + 1, r):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    row_add(i, t, -q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, c):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_add(j, t, -q)
                    if A[t][j]:
                        dirty = True
            if dirty:
                continue
            off = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if A[i][j] % A[t][t]:
                        off = i
                        break
                if off is not None:
                    break
            if off is None:
                break
            row_add(t, off, 1)

    diag = [A[t][t] for t in range(min(r, c))]
    for i in range(r):
        for j in range(c):
            if i != j and A[i][j]:
                raise InternalError("smith reduction left an off-diagonal entry")
    # U @ orig @ V == A
    prod = [[sum(U[i][k] * orig[k][j] for k in range(r)) for j in range(c)] for i in range(r)]
    prod = [[sum(prod[i][k] * V[k][j] for k in range(c)) for j in range(c)] for i in range(r)]
    for i in range(r):
        for j in range(c):
            if prod[i][j] != (A[i][j] if i == j and i < min(r, c) else 0):
                raise InternalError("smith transform verification failed")
    ident = [[sum(U[i][k] * Uinv[k][j] for k in range(r)) for j in range(r)] for i in range(r)]
    if ident != _ident(r):
        raise InternalError("left transform inverse verification failed")
    return diag, U, Uinv

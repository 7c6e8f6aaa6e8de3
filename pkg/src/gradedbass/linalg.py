"""Exact dense linear algebra over F_p (int64 numpy) and Q (object numpy).

Matrices act on column vectors.  All routines return fresh arrays.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def zeros(m: int, n: int, field) -> np.ndarray:
    if field.p:
        return np.zeros((m, n), dtype=np.int64)
    out = np.empty((m, n), dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int, field) -> np.ndarray:
    out = zeros(n, n, field)
    for i in range(n):
        out[i, i] = field.one
    return out


def asmatrix(rows, field, shape=None) -> np.ndarray:
    if field.p:
        a = np.array(rows, dtype=np.int64) % field.p if len(rows) else np.zeros((0, 0), dtype=np.int64)
    else:
        a = np.array([[Fraction(x) for x in r] for r in rows], dtype=object)
    if shape is not None:
        a = a.reshape(shape)
    return a


def matmul(a: np.ndarray, b: np.ndarray, field) -> np.ndarray:
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1], field)
    if field.p:
        p = field.p
        # split to keep partial sums within int64
        if a.shape[1] * (p - 1) ** 2 < 2**62:
            return (a @ b) % p
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        step = max(1, (2**62) // ((p - 1) ** 2))
        for s in range(0, a.shape[1], step):
            out = (out + a[:, s:s + step] @ b[s:s + step]) % p
        return out
    return a.dot(b)


def _eliminate(a: np.ndarray, field, full: bool):
    """Row echelon form in place; returns (rank, pivot columns)."""
    p = field.p
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        if p:
            inv = pow(int(a[r, c]), -1, p)
            a[r, c:] = (a[r, c:] * inv) % p
        else:
            a[r, c:] = a[r, c:] * (1 / a[r, c])
        colv = a[:, c].copy()
        colv[r] = 0
        if not full:
            colv[:r] = 0
        rows = np.flatnonzero(colv)
        if rows.size:
            upd = np.outer(colv[rows], a[r, c:])
            if p:
                a[rows, c:] = (a[rows, c:] - upd) % p
            else:
                a[rows, c:] = a[rows, c:] - upd
        pivots.append(c)
        r += 1
    return r, pivots


def rref(a: np.ndarray, field):
    """Reduced row echelon form: (nonzero rows, pivot columns)."""
    a = a.copy()
    r, piv = _eliminate(a, field, full=True)
    return a[:r], piv


def rank(a: np.ndarray, field) -> int:
    if a.size == 0:
        return 0
    a = a.copy()
    if a.shape[0] > a.shape[1]:
        a = a.T.copy()
    return _eliminate(a, field, full=False)[0]


def nullspace(a: np.ndarray, field) -> np.ndarray:
    """Columns spanning {x : a x = 0}, in reduced form (deterministic)."""
    n = a.shape[1]
    if a.shape[0] == 0:
        return identity(n, field)
    red, piv = rref(a, field)
    free = [c for c in range(n) if c not in set(piv)]
    out = zeros(n, len(free), field)
    for j, f in enumerate(free):
        out[f, j] = field.one
        for i, pc in enumerate(piv):
            v = red[i, f]
            if v:
                out[pc, j] = field.neg(v)
    return out


def independent_columns(a: np.ndarray, field) -> list[int]:
    """Indices of the greedy (left-to-right) maximal independent column set."""
    if a.size == 0:
        return []
    return rref(a, field)[1]


def solve(a: np.ndarray, b: np.ndarray, field):
    """A particular solution x of ``a x = b`` (b may be a matrix), or None.

    Free variables are set to zero, so the solution is the unique one
    supported on pivot columns of ``a``.
    """
    m, n = a.shape
    b2 = b.reshape(m, -1)
    k = b2.shape[1]
    if m == 0:
        return zeros(n, k, field)
    aug = np.concatenate([a, b2], axis=1)
    red, piv = rref(aug, field)
    if any(c >= n for c in piv):
        return None
    x = zeros(n, k, field)
    for i, c in enumerate(piv):
        x[c] = red[i, n:]
    return x if b.ndim == 2 else x[:, 0]

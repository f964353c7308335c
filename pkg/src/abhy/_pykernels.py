"""Pure-Python versions of the hot kernels.

These are the reference implementations; ``abhy._ckernels`` (Cython) must
return identical results.  Which one is used is decided in ``abhy.kernels``.
"""

from __future__ import annotations


def laurent_mul(a: dict, b: dict) -> dict:
    """Multiply two term maps ``{exponent tuple: int coefficient}``."""
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def bareiss_solve(rows: list, rhs: list):
    """Solve a square integer system by fraction-free elimination.

    Returns ``(numerators, denominator)`` with ``denominator > 0`` such that
    ``x_k = numerators[k] / denominator``, or ``None`` if the matrix is
    singular.  Inputs are not modified.
    """
    n = len(rows)
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    prev = 1
    for k in range(n):
        if m[k][k] == 0:
            for p in range(k + 1, n):
                if m[p][k] != 0:
                    m[k], m[p] = m[p], m[k]
                    break
            else:
                return None
        piv = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            f = ri[k]
            for j in range(k + 1, n + 1):
                ri[j] = (ri[j] * piv - f * rk[j]) // prev
            ri[k] = 0
        prev = piv
    det = m[n - 1][n - 1] if n else 1
    # back substitution; every x_k * det is an integer (Cramer)
    x = [0] * n
    for k in range(n - 1, -1, -1):
        s = m[k][n] * det
        rk = m[k]
        for j in range(k + 1, n):
            s -= rk[j] * x[j]
        x[k] = s // rk[k]
    if det < 0:
        det = -det
        x = [-v for v in x]
    return x, det


def bareiss_rank(rows: list) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        p = r
        while p < nrows and m[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        rr = m[r]
        for i in range(r + 1, nrows):
            ri = m[i]
            f = ri[c]
            for j in range(c + 1, ncols):
                ri[j] = (ri[j] * piv - f * rr[j]) // prev
            ri[c] = 0
        prev = piv
        r += 1
        if r == nrows:
            break
    return r


def bareiss_det(rows: list) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n):
        if m[k][k] == 0:
            for p in range(k + 1, n):
                if m[p][k] != 0:
                    m[k], m[p] = m[p], m[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * piv - f * rk[j]) // prev
            ri[k] = 0
        prev = piv
    return sign * m[n - 1][n - 1] if n else 1

# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot kernels (see ``_pykernels`` for contracts)."""


def laurent_mul(dict a, dict b):
    cdef dict out = {}
    cdef tuple ea, eb
    cdef Py_ssize_t i, n
    cdef list buf
    if len(a) < len(b):
        a, b = b, a
    for ea, ca in a.items():
        n = len(ea)
        for eb, cb in b.items():
            buf = [None] * n
            for i in range(n):
                buf[i] = <object>ea[i] + <object>eb[i]
            e = tuple(buf)
            prev = out.get(e)
            if prev is None:
                out[e] = ca * cb
            else:
                out[e] = prev + ca * cb
    return {e: c for e, c in out.items() if c}


def bareiss_solve(list rows, list rhs):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t k, p, i, j
    cdef list m = [list(r) + [v] for r, v in zip(rows, rhs)]
    cdef list rk, ri, x
    prev = 1
    for k in range(n):
        rk = m[k]
        if rk[k] == 0:
            for p in range(k + 1, n):
                if (<list>m[p])[k] != 0:
                    m[k], m[p] = m[p], m[k]
                    break
            else:
                return None
            rk = m[k]
        piv = rk[k]
        for i in range(k + 1, n):
            ri = m[i]
            f = ri[k]
            if f == 0:
                if piv != prev:
                    for j in range(k + 1, n + 1):
                        ri[j] = (ri[j] * piv) // prev
                continue
            for j in range(k + 1, n + 1):
                ri[j] = (ri[j] * piv - f * rk[j]) // prev
            ri[k] = 0
        prev = piv
    det = (<list>m[n - 1])[n - 1] if n else 1
    x = [0] * n
    for k in range(n - 1, -1, -1):
        rk = m[k]
        s = rk[n] * det
        for j in range(k + 1, n):
            s -= rk[j] * x[j]
        x[k] = s // rk[k]
    if det < 0:
        det = -det
        x = [-v for v in x]
    return x, det


def bareiss_rank(list rows):
    cdef list m = [list(row) for row in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t ncols, r = 0, c, p, i, j
    cdef list rr, ri
    if nrows == 0:
        return 0
    ncols = len(<list>m[0])
    prev = 1
    for c in range(ncols):
        p = r
        while p < nrows and (<list>m[p])[c] == 0:
            p += 1
        if p == nrows:
            continue
        m[r], m[p] = m[p], m[r]
        rr = m[r]
        piv = rr[c]
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


def bareiss_det(list rows):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t k, p, i, j
    cdef list m = [list(r) for r in rows]
    cdef list rk, ri
    cdef int sign = 1
    prev = 1
    for k in range(n):
        rk = m[k]
        if rk[k] == 0:
            for p in range(k + 1, n):
                if (<list>m[p])[k] != 0:
                    m[k], m[p] = m[p], m[k]
                    sign = -sign
                    break
            else:
                return 0
            rk = m[k]
        piv = rk[k]
        for i in range(k + 1, n):
            ri = m[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * piv - f * rk[j]) // prev
            ri[k] = 0
        prev = piv
    return sign * (<list>m[n - 1])[n - 1] if n else 1

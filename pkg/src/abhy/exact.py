"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples.  Integer matrices hold ``int``; rational
ones hold ``fractions.Fraction``.  A matrix with zero rows is ``()``; its
column count is then carried separately where it matters (``left_kernel_basis``
of an ``r x 0`` matrix, for instance, is the ``r x r`` identity).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from abhy.kernels import bareiss_solve

IntMatrix = tuple[tuple[int, ...], ...]
RatMatrix = tuple[tuple[Fraction, ...], ...]
RatVector = tuple[Fraction, ...]


def as_int_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    out = tuple(tuple(int(x) for x in r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def as_rat_matrix(rows: Sequence[Sequence]) -> RatMatrix:
    out = tuple(tuple(Fraction(x) for x in r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence], ncols: int | None = None) -> tuple:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in bt) for r in a)


def vecmat(x: Sequence, m: Sequence[Sequence], ncols: int | None = None) -> tuple:
    """Row vector times matrix."""
    if not m:
        return (0,) * (ncols or 0)
    return tuple(sum(xi * mij for xi, mij in zip(x, col)) for col in zip(*m))


def matvec(m: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(r, x)) for r in m)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def clear_denominators(v: Sequence) -> tuple[tuple[int, ...], int]:
    """Return ``(ints, d)`` with ``ints = d * v`` and ``d`` the lcm of denominators."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    return tuple(int(x * den) for x in fr), den


def rref(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in m]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1])


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U * M = H``.  ``H`` is in
    row echelon form, each pivot is positive, entries above a pivot lie in
    ``[0, pivot)``, and zero rows come last.
    """
    h = [[int(x) for x in r] for r in m]
    nrows = len(h)
    ncols = len(h[0]) if h else (ncols or 0)
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # gcd-combine all rows below r into row r at column c
        for i in range(r + 1, nrows):
            if h[i][c] == 0:
                continue
            a, b = h[r][c], h[i][c]
            g, s, t = _ext_gcd(a, b)
            p, q = a // g, b // g
            hr, hi = h[r], h[i]
            h[r] = [s * x + t * y for x, y in zip(hr, hi)]
            h[i] = [-q * x + p * y for x, y in zip(hr, hi)]
            ur, ui = u[r], u[i]
            u[r] = [s * x + t * y for x, y in zip(ur, ui)]
            u[i] = [-q * x + p * y for x, y in zip(ur, ui)]
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        piv = h[r][c]
        for i in range(r):
            f = h[i][c] // piv
            if f:
                h[i] = [x - f * y for x, y in zip(h[i], h[r])]
                u[i] = [x - f * y for x, y in zip(u[i], u[r])]
        r += 1
    return tuple(map(tuple, h)), tuple(map(tuple, u))


def left_kernel_basis(m: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Integer basis of ``{x : x M = 0}``, in Hermite normal form.

    The rows generate the full kernel lattice, not just a finite-index
    sublattice, because they are rows of a unimodular transform.
    """
    h, u = hermite_normal_form(m, ncols)
    kernel = [u[i] for i in range(len(h)) if not any(h[i])]
    if not kernel:
        return ()
    hk, _ = hermite_normal_form(kernel)
    return tuple(r for r in hk if any(r))


@dataclass(frozen=True)
class AffineSolution:
    """Solution set ``particular + span(homogeneous)`` of ``A x = b``."""

    particular: RatVector
    homogeneous: RatMatrix

    @property
    def dimension(self) -> int:
        return len(self.homogeneous)


def solve_affine(a: Sequence[Sequence], b: Sequence, ncols: int | None = None) -> AffineSolution | None:
    """Solve ``A x = b`` exactly; ``None`` means the system is inconsistent."""
    if len(a) != len(b):
        raise ValueError("row count of A must equal length of b")
    n = len(a[0]) if a else (ncols or 0)
    if not a:
        return AffineSolution((Fraction(0),) * n, tuple(
            tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))
    aug = [list(r) + [bi] for r, bi in zip(a, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return AffineSolution(tuple(x), tuple(basis))


def solve_square(a: Sequence[Sequence], b: Sequence) -> RatVector | None:
    """Unique solution of a square rational system, or ``None`` if singular."""
    rows = []
    rhs = []
    for r, bi in zip(a, b):
        ints, d = clear_denominators(list(r) + [bi])
        rows.append(list(ints[:-1]))
        rhs.append(ints[-1])
    sol = bareiss_solve(rows, rhs)
    if sol is None:
        return None
    nums, den = sol
    return tuple(Fraction(x, den) for x in nums)


def lp_feasible(a: Sequence[Sequence], b: Sequence, ncols: int | None = None) -> RatVector | None:
    """Find ``x >= 0`` with ``A x = b`` exactly, or return ``None``.

    Phase-one simplex with Bland's rule over ``Fraction``; terminates on every
    input and is exact, which is all the polytope code needs.
    """
    nrows = len(a)
    n = len(a[0]) if a else (ncols or 0)
    if nrows == 0:
        return (Fraction(0),) * n
    # tableau rows: [A | I | b] with b >= 0
    t: list[list[Fraction]] = []
    for i, (r, bi) in enumerate(zip(a, b)):
        row = [Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(nrows)] + [Fraction(bi)]
        if row[-1] < 0:
            row = [-x for x in row[:n]] + row[n:-1] + [-row[-1]]
        t.append(row)
    basis = [n + i for i in range(nrows)]
    width = n + nrows
    # objective: minimise the sum of artificials, i.e. maximise -sum
    obj = [Fraction(0)] * (width + 1)
    for row in t:
        for j in range(n):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        leave = -1
        for i, row in enumerate(t):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave < 0:  # cannot happen: phase one is bounded below by 0
            raise ArithmeticError("phase-one simplex unbounded")
        pr = t[leave]
        inv = 1 / pr[enter]
        pr = [x * inv for x in pr]
        t[leave] = pr
        for i, row in enumerate(t):
            if i != leave and row[enter] != 0:
                f = row[enter]
                t[i] = [x - f * y for x, y in zip(row, pr)]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, pr)]
        basis[leave] = enter
    if obj[-1] != 0:
        return None
    x = [Fraction(0)] * width
    for i, j in enumerate(basis):
        x[j] = t[i][-1]
    return tuple(x[:n])

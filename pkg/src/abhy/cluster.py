"""Seeds, mutation and exhaustive exploration of finite-type exchange graphs.

Directions and variable numbers are 0-based throughout the Python API:
direction ``k`` mutates the ``k``-th column, and atlas variable ``i`` is the
``i``-th discovered cluster variable (``0..n-1`` being the initial ones).
The command line shifts everything by one.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from abhy.exact import IntMatrix, as_int_matrix
from abhy.laurent import LaurentPoly, NonExactDivision

DEFAULT_CAP = 10_000


class CapExceeded(RuntimeError):
    """Exploration found more clusters than allowed; the type may be infinite."""


class InfiniteType(CapExceeded):
    """A seed matrix with ``|b_ij * b_ji| >= 4`` was reached, so the type is infinite."""


def _check_two_finite(b: IntMatrix) -> None:
    n = len(b)
    for p in range(n):
        for q in range(p + 1, n):
            if abs(b[p][q] * b[q][p]) >= 4:
                raise InfiniteType(f"seed matrix {b} is not 2-finite; the cluster algebra has infinite type")


def default_cap() -> int:
    return int(os.environ.get("ABHY_CAP", DEFAULT_CAP))


def is_skew_symmetrizable(b: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """Minimal positive integer diagonal ``D`` with ``D B`` skew-symmetric, or ``None``.

    Ratios ``d_j / d_i = -b_ij / b_ji`` are propagated along the graph of
    nonzero entries; each connected component is scaled independently to
    the smallest positive integers.
    """
    n = len(b)
    if any(len(r) != n for r in b):
        raise ValueError("matrix must be square")
    for i in range(n):
        if b[i][i] != 0:
            return None
        for j in range(i + 1, n):
            if (b[i][j] == 0) != (b[j][i] == 0):
                return None
            if b[i][j] * b[j][i] > 0:
                return None
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if b[i][j] == 0:
                    continue
                want = -d[i] * b[i][j] / b[j][i]
                if d[j] is None:
                    d[j] = want
                    comp.append(j)
                    queue.append(j)
                elif d[j] != want:
                    return None
        den = 1
        for i in comp:
            den = den * d[i].denominator // gcd(den, d[i].denominator)
        ints = {i: int(d[i] * den) for i in comp}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        for i in comp:
            d[i] = Fraction(ints[i] // g)
    return tuple(int(x) for x in d)


@dataclass(frozen=True)
class ExchangeMatrix:
    """An ``(n+m) x n`` integer matrix whose top ``n x n`` block is skew-symmetrizable."""

    mat: IntMatrix

    def __post_init__(self) -> None:
        mat = as_int_matrix(self.mat)
        object.__setattr__(self, "mat", mat)
        if not mat or not mat[0]:
            raise ValueError("exchange matrix needs at least one column")
        n = len(mat[0])
        if len(mat) < n:
            raise ValueError("exchange matrix needs at least n rows")
        if is_skew_symmetrizable(mat[:n]) is None:
            raise ValueError("principal part is not skew-symmetrizable")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> ExchangeMatrix:
        return cls(as_int_matrix(rows))

    @property
    def n(self) -> int:
        return len(self.mat[0])

    @property
    def m(self) -> int:
        return len(self.mat) - self.n

    @property
    def principal(self) -> IntMatrix:
        return self.mat[: self.n]

    @property
    def frozen_rows(self) -> IntMatrix:
        return self.mat[self.n :]

    def column(self, k: int) -> tuple[int, ...]:
        return tuple(r[k] for r in self.mat)


def mutate_matrix(bt: ExchangeMatrix, k: int) -> ExchangeMatrix:
    if not 0 <= k < bt.n:
        raise IndexError(f"direction {k} out of range for n={bt.n}")
    b = bt.mat
    out = []
    for j, row in enumerate(b):
        bjk = row[k]
        new = []
        for l, x in enumerate(row):
            if j == k or l == k:
                new.append(-x)
            else:
                bkl = b[k][l]
                new.append(x + max(bjk, 0) * max(bkl, 0) - min(bjk, 0) * min(bkl, 0))
        out.append(tuple(new))
    return ExchangeMatrix(tuple(out))


def mutate_word(bt: ExchangeMatrix, word: Sequence[int]) -> ExchangeMatrix:
    for k in word:
        bt = mutate_matrix(bt, k)
    return bt


def principal_extension(b: Sequence[Sequence[int]]) -> ExchangeMatrix:
    b = as_int_matrix(b)
    if is_skew_symmetrizable(b) is None:
        raise ValueError("matrix is not skew-symmetrizable")
    n = len(b)
    return ExchangeMatrix(b + tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def is_principal(bt: ExchangeMatrix) -> bool:
    n = bt.n
    return bt.m == n and all(
        bt.frozen_rows[i][j] == int(i == j) for i in range(n) for j in range(n)
    )


def variable_names(n: int, m: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n)) + tuple(f"y{i + 1}" for i in range(m))


@dataclass(frozen=True)
class Seed:
    """An exchange matrix together with its ``n + m`` variables (frozen ones last)."""

    matrix: ExchangeMatrix
    variables: tuple[LaurentPoly, ...]

    @property
    def cluster(self) -> tuple[LaurentPoly, ...]:
        return self.variables[: self.matrix.n]


def initial_seed(bt: ExchangeMatrix, names: Sequence[str] | None = None) -> Seed:
    names = tuple(names) if names else variable_names(bt.n, bt.m)
    if len(names) != bt.n + bt.m:
        raise ValueError("need one name per row")
    return Seed(bt, tuple(LaurentPoly.gen(names, i) for i in range(len(names))))


def exchange_binomial(seed: Seed, k: int) -> LaurentPoly:
    """The numerator of the exchange relation at direction ``k``."""
    ring = seed.variables[0].variables
    pos = LaurentPoly.constant(ring, 1)
    neg = LaurentPoly.constant(ring, 1)
    for z, b in zip(seed.variables, seed.matrix.column(k)):
        if b > 0:
            pos = pos * z**b
        elif b < 0:
            neg = neg * z ** (-b)
    return pos + neg


def mutate_seed(seed: Seed, k: int) -> Seed:
    if not 0 <= k < seed.matrix.n:
        raise IndexError(f"direction {k} out of range for n={seed.matrix.n}")
    try:
        new = exchange_binomial(seed, k).exact_div(seed.variables[k])
    except NonExactDivision as exc:  # contradicts the Laurent phenomenon
        raise AssertionError(f"exchange relation did not divide exactly at direction {k}") from exc
    vars_ = list(seed.variables)
    vars_[k] = new
    return Seed(mutate_matrix(seed.matrix, k), tuple(vars_))


@dataclass(frozen=True)
class Atlas:
    """The explored exchange graph of a finite-type cluster algebra.

    ``clusters[c]`` lists variable numbers in the position order of the
    labelled seed first reached by ``paths[c]``; ``matrices[c]`` is that
    seed's extended exchange matrix, so ``B(C)`` rows and columns follow the
    same order.  ``neighbors[c][p]`` is the cluster reached by mutating
    position ``p``.
    """

    base: ExchangeMatrix
    names: tuple[str, ...]
    variables: tuple[LaurentPoly, ...]
    clusters: tuple[tuple[int, ...], ...]
    matrices: tuple[ExchangeMatrix, ...]
    neighbors: tuple[tuple[int, ...], ...]
    paths: tuple[tuple[int, ...], ...]
    _var_index: dict = field(init=False, repr=False, compare=False)
    _cluster_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_var_index", {v: i for i, v in enumerate(self.variables)})
        object.__setattr__(
            self, "_cluster_index", {frozenset(c): i for i, c in enumerate(self.clusters)}
        )

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    @property
    def num_clusters(self) -> int:
        return len(self.clusters)

    def variable_index(self, poly: LaurentPoly) -> int:
        return self._var_index[poly]

    def cluster_index(self, members) -> int:
        return self._cluster_index[frozenset(members)]

    def b_entry(self, c: int, k: int, i: int) -> int:
        """``B(C)_{ki}`` with rows and columns indexed by variable numbers."""
        pos = self.clusters[c]
        return self.matrices[c].mat[pos.index(k)][pos.index(i)]

    def b_column(self, c: int, i: int) -> dict[int, int]:
        """Column of ``B(C)`` for member ``i``, keyed by the members of ``C``."""
        pos = self.clusters[c]
        p = pos.index(i)
        return {k: self.matrices[c].mat[q][p] for q, k in enumerate(pos)}

    def exchanged(self, c: int, i: int) -> int:
        """Variable obtained by mutating cluster ``c`` at its member ``i``."""
        nb = self.clusters[self.neighbors[c][self.clusters[c].index(i)]]
        (j,) = set(nb) - set(self.clusters[c])
        return j

    def seed(self, c: int) -> Seed:
        frozen = initial_seed(self.base, self.names).variables[self.n :]
        return Seed(self.matrices[c], tuple(self.variables[i] for i in self.clusters[c]) + frozen)

    def first_occurrence(self, i: int) -> tuple[int, int]:
        """(cluster, position) where variable ``i`` first appears."""
        for c, members in enumerate(self.clusters):
            if i in members:
                return c, members.index(i)
        raise KeyError(i)


def explore(
    bt: ExchangeMatrix | Sequence[Sequence[int]],
    cap: int | None = None,
    order: str = "dfs",
    names: Sequence[str] | None = None,
) -> Atlas:
    """Explore the exchange graph from the initial seed until it closes.

    ``order="dfs"`` numbers variables in depth-first discovery order, trying
    directions in ascending order; ``"bfs"`` uses breadth-first order.  The
    depth-first numbering walks around rank-2 polygons and so matches the
    customary labelling of rank-2 examples.
    """
    if not isinstance(bt, ExchangeMatrix):
        bt = ExchangeMatrix.of(bt)
    if order not in ("dfs", "bfs"):
        raise ValueError("order must be 'dfs' or 'bfs'")
    cap = default_cap() if cap is None else cap
    n = bt.n
    _check_two_finite(bt.principal)
    s0 = initial_seed(bt, names)
    ring = s0.variables[0].variables

    variables: list[LaurentPoly] = list(s0.cluster)
    var_index = {v: i for i, v in enumerate(variables)}
    clusters: list[tuple[int, ...]] = [tuple(range(n))]
    matrices = [bt]
    paths: list[tuple[int, ...]] = [()]
    neighbors: list[list[int]] = [[-1] * n]
    seen = {frozenset(range(n)): 0}

    def number(poly: LaurentPoly) -> int:
        i = var_index.get(poly)
        if i is None:
            i = len(variables)
            variables.append(poly)
            var_index[poly] = i
        return i

    def register(seed: Seed, parent: int, k: int) -> tuple[int, bool]:
        members = tuple(number(z) for z in seed.cluster)
        key = frozenset(members)
        c = seen.get(key)
        if c is not None:
            return c, False
        _check_two_finite(seed.matrix.principal)
        if len(clusters) >= cap:
            raise CapExceeded(f"more than {cap} clusters; raise the cap or check finite type")
        c = len(clusters)
        seen[key] = c
        clusters.append(members)
        matrices.append(seed.matrix)
        paths.append(paths[parent] + (k,))
        neighbors.append([-1] * n)
        return c, True

    if order == "dfs":
        stack = [[0, s0, 0]]
        while stack:
            top = stack[-1]
            c, seed, k = top
            if k == n:
                stack.pop()
                continue
            top[2] = k + 1
            s2 = mutate_seed(seed, k)
            c2, fresh = register(s2, c, k)
            neighbors[c][k] = c2
            if fresh:
                stack.append([c2, s2, 0])
    else:
        queue = deque([(0, s0)])
        while queue:
            c, seed = queue.popleft()
            for k in range(n):
                s2 = mutate_seed(seed, k)
                c2, fresh = register(s2, c, k)
                neighbors[c][k] = c2
                if fresh:
                    queue.append((c2, s2))

    if bt.m:
        frozen_idx = range(n, n + bt.m)
        specialised = {v.substitute_ones(frozen_idx) for v in variables}
        if len(specialised) != len(variables):
            raise AssertionError("distinct cluster variables collapse when frozen variables are set to 1")

    return Atlas(
        base=bt,
        names=tuple(ring),
        variables=tuple(variables),
        clusters=tuple(clusters),
        matrices=tuple(matrices),
        neighbors=tuple(tuple(r) for r in neighbors),
        paths=tuple(paths),
    )


def principal_grading(b: Sequence[Sequence[int]], exponent: Sequence[int]) -> tuple[int, ...]:
    """Degree of ``x^a y^c`` where ``deg x_i = e_i`` and ``deg y_i = -(column i of B)``."""
    n = len(b)
    a, c = exponent[:n], exponent[n:]
    return tuple(a[r] - sum(b[r][j] * c[j] for j in range(n)) for r in range(n))


def g_vector(atlas: Atlas, i: int) -> tuple[int, ...]:
    if not is_principal(atlas.base):
        raise ValueError("g-vectors need an atlas over principal coefficients")
    b = atlas.base.principal
    degrees = {principal_grading(b, e) for e in atlas.variables[i].terms}
    if len(degrees) != 1:
        raise AssertionError(f"cluster variable {i} is not homogeneous: degrees {sorted(degrees)}")
    return degrees.pop()


def g_vectors(atlas: Atlas) -> tuple[tuple[int, ...], ...]:
    gs = tuple(g_vector(atlas, i) for i in range(atlas.num_variables))
    if len(set(gs)) != len(gs):
        raise AssertionError("two cluster variables share a g-vector")
    return gs


def f_polynomial(atlas: Atlas, i: int) -> LaurentPoly:
    """``F_i``: the principal-coefficient variable with every ``x_j`` set to 1."""
    if not is_principal(atlas.base):
        raise ValueError("F-polynomials need an atlas over principal coefficients")
    n = atlas.n
    f = atlas.variables[i].substitute_ones(range(n)).restrict(range(n, 2 * n))
    if not f.is_polynomial():
        raise AssertionError(f"F-polynomial {i} has a negative exponent")
    if f.terms.get((0,) * n) != 1:
        raise AssertionError(f"F-polynomial {i} does not have constant term 1")
    return f

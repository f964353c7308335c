"""ABHY slices, the kernel matrix of ``B^univ`` and the reduced moment image.

The torus patch of the cluster variety of ``B^univ`` has moment image
``R^n x R^v_{>=0}`` (coordinates ``u`` then ``w``).  Reducing by the
subtorus whose weights are the rows of a left-kernel basis ``K`` of
``B^univ`` at level ``c_hat`` cuts this image by ``K (u, w) = c_hat``.
Here that cut is computed and compared against the ABHY polytope ``U_c``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from abhy.cluster import (
    Atlas,
    ExchangeMatrix,
    explore,
    mutate_word,
    principal_extension,
)
from abhy.exact import (
    IntMatrix,
    as_int_matrix,
    left_kernel_basis,
    matmul,
    rank,
    rref,
    solve_affine,
)
from abhy.polytope import (
    Fan,
    HSlice,
    VPolytope,
    fans_equal,
    g_vector_fan,
    outer_normal_fan,
    project,
    projection_is_injective,
    vertices_of_slice,
)
from abhy.universal import (
    UniversalMatrix,
    dual_atlas,
    mesh_relations,
    positive_mesh_partner,
    universal_extension,
)


@dataclass(frozen=True)
class SliceSpec:
    """The affine slice defining ``U_c`` for a base matrix ``B``.

    ``c`` holds one constant per non-initial dual variable, in atlas order.
    """

    b: IntMatrix
    atlas: Atlas
    c: tuple[Fraction, ...]
    slice: HSlice
    witnesses: tuple[tuple[int, int, int], ...]  # (i, partner j, cluster)

    @property
    def n(self) -> int:
        return len(self.b)

    @property
    def v(self) -> int:
        return self.atlas.num_variables


def _level(c: Sequence, count: int, strict: bool) -> tuple[Fraction, ...]:
    c = tuple(Fraction(x) for x in c)
    if len(c) != count:
        raise ValueError(f"expected {count} slice constants, got {len(c)}")
    if strict and any(x <= 0 for x in c):
        raise ValueError("slice constants must be positive")
    if any(x < 0 for x in c):
        raise ValueError("slice constants must be nonnegative")
    return c


def build_slice(
    b: Sequence[Sequence[int]],
    c: Sequence | None = None,
    strict: bool = True,
    atlas: Atlas | None = None,
) -> SliceSpec:
    """One equation ``w_j + w_i - sum_{k in C, k != i} B(C)_{ki} w_k = c_i`` per non-initial ``i``.

    ``strict=False`` admits zero constants (degenerate associahedra).
    """
    b = as_int_matrix(b)
    atlas = atlas or dual_atlas(b)
    n, v = len(b), atlas.num_variables
    c = _level([1] * (v - n) if c is None else c, v - n, strict)
    equations = []
    witnesses = []
    for i, ci in zip(range(n, v), c):
        j, cluster = positive_mesh_partner(atlas, i)
        coeffs = [0] * v
        coeffs[i] += 1
        coeffs[j] += 1
        for k, bki in atlas.b_column(cluster, i).items():
            if k != i:
                coeffs[k] -= bki
        equations.append((tuple(coeffs), ci))
        witnesses.append((i, j, cluster))
    return SliceSpec(b, atlas, c, HSlice(v, tuple(equations)), tuple(witnesses))


def u_polytope(spec: SliceSpec) -> VPolytope:
    return vertices_of_slice(spec.slice)


def a_polytope(spec: SliceSpec, coords: Sequence[int] | None = None) -> VPolytope:
    """``A_c``: projection of ``U_c`` onto the initial coordinates (or ``coords``)."""
    coords = range(spec.n) if coords is None else coords
    return project(u_polytope(spec), coords)


def vertex_clusters(spec: SliceSpec, poly: VPolytope) -> list[int | None]:
    """Cluster whose variables are exactly the zero coordinates of each vertex."""
    out = []
    for vert in poly.vertices:
        zeros = [k for k, x in enumerate(vert) if x == 0]
        try:
            out.append(spec.atlas.cluster_index(zeros))
        except KeyError:
            out.append(None)
    return out


@dataclass(frozen=True)
class KernelBasis:
    """``v x (n+v)`` matrix ``[[I_n, X], [0, M]]`` with ``K B^univ = 0``; ``M`` holds mesh relations."""

    k: IntMatrix
    n: int

    @property
    def v(self) -> int:
        return len(self.k)

    @property
    def top(self) -> IntMatrix:
        return self.k[: self.n]

    @property
    def mesh(self) -> IntMatrix:
        return tuple(r[self.n :] for r in self.k[self.n :])


def kernel_matrix(u: UniversalMatrix) -> KernelBasis:
    n, v = u.n, u.v
    full = u.full.mat
    rows = []
    gt = list(zip(*u.rows))  # n x v: columns are coefficient rows
    for i in range(n):
        sol = solve_affine([list(r) for r in gt], [-x for x in u.base[i]], v)
        if sol is None:
            raise AssertionError(f"row {i} of B is not a combination of the coefficient rows")
        x = sol.particular  # integral: the first n coefficient rows are the identity
        if any(t.denominator != 1 for t in x):
            raise AssertionError(f"row {i} of B has no integral expression")
        rows.append(tuple(int(i == j) for j in range(n)) + tuple(int(t) for t in x))
    for rel in mesh_relations(u.atlas):
        rows.append((0,) * n + rel.coefficients)
    k = tuple(rows)
    if any(any(r) for r in matmul(k, full)):
        raise AssertionError("kernel matrix does not annihilate B^univ")
    if rank(k) != v:
        raise AssertionError("kernel matrix has the wrong rank")
    return KernelBasis(k, n)


def same_row_span(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    return rref(a)[0] == rref(b)[0]


def kernel_span_matches(kb: KernelBasis, u: UniversalMatrix) -> bool:
    return same_row_span(kb.k, left_kernel_basis(u.full.mat))


@dataclass(frozen=True)
class ReductionLevel:
    """``c_hat``: first ``n`` entries free, last ``v - n`` positive."""

    values: tuple[Fraction, ...]
    n: int

    def __post_init__(self) -> None:
        vals = tuple(Fraction(x) for x in self.values)
        object.__setattr__(self, "values", vals)
        if any(x <= 0 for x in vals[self.n :]):
            raise ValueError("the last v - n entries of c_hat must be positive")

    @property
    def c(self) -> tuple[Fraction, ...]:
        return self.values[self.n :]


def moment_equations(kb: KernelBasis, chat: Sequence) -> list[tuple[tuple[int, ...], Fraction]]:
    """The system ``K (u, w) = c_hat`` as (coefficients over u then w, right side)."""
    if len(chat) != kb.v:
        raise ValueError("c_hat length must equal the number of kernel rows")
    return [(row, Fraction(c)) for row, c in zip(kb.k, chat)]


def format_equation(coeffs: Sequence[int], rhs: str, n: int) -> str:
    """Render ``u1+w2=c1`` style text; the first ``n`` coordinates are ``u``."""
    out = ""
    for idx, a in enumerate(coeffs):
        if a == 0:
            continue
        name = f"u{idx + 1}" if idx < n else f"w{idx - n + 1}"
        mag = "" if abs(a) == 1 else str(abs(a))
        if not out:
            out = ("-" if a < 0 else "") + mag + name
        else:
            out += ("-" if a < 0 else "+") + mag + name
    return f"{out or '0'}={rhs}"


def reduced_moment_image(kb: KernelBasis, chat: ReductionLevel | Sequence) -> VPolytope:
    """Slice of ``R^n x R^v_{>=0}`` by ``K (u, w) = c_hat``, with ``u`` eliminated.

    Row reduction on the ``u`` block isolates the equations not involving
    ``u``; the others each pin one ``u`` coordinate, which is unconstrained,
    so they impose nothing on ``w``.
    """
    n = kb.n
    if not isinstance(chat, ReductionLevel):
        chat = ReductionLevel(tuple(chat), n)
    eqs = moment_equations(kb, chat.values)
    aug = [list(row) + [rhs] for row, rhs in eqs]
    red, pivots = rref(aug)
    u_pivots = [p for p in pivots if p < n]
    if len(u_pivots) != n:
        raise AssertionError("kernel rows do not determine every u coordinate")
    w_rows = [r for r, p in zip(red, pivots) if p >= n]
    if any(p == len(aug[0]) - 1 for p in pivots):
        raise AssertionError("reduction equations are inconsistent")
    s = HSlice(kb.v, tuple((tuple(r[n:-1]), r[-1]) for r in w_rows))
    return vertices_of_slice(s)


@dataclass(frozen=True)
class TheoremReport:
    chat: tuple[Fraction, ...]
    moment_vertices: tuple
    u_vertices: tuple
    fan_check: bool | None
    fan_mismatch: str | None = None

    @property
    def vertices_match(self) -> bool:
        return self.moment_vertices == self.u_vertices

    @property
    def ok(self) -> bool:
        return self.vertices_match and self.fan_check is not False

    def summary(self) -> str:
        head = f"vertices match: {len(self.u_vertices)}" if self.vertices_match else (
            f"vertices differ: {len(self.moment_vertices)} vs {len(self.u_vertices)}")
        if self.fan_check is None:
            return head
        return head + ("; normal fan matches g-vector fan" if self.fan_check
                       else f"; normal fan differs ({self.fan_mismatch})")


def realized_fan(b: Sequence[Sequence[int]]) -> Fan:
    """The g-vector fan that the outer normal fan of ``A_c`` reproduces.

    The slice for ``B`` is assembled from the algebra of the transpose, and
    ``A_c`` has outer normal fan ``Sigma(-B^T)``, the negative of that
    algebra's g-vector fan.  For skew-symmetric ``B`` this is ``Sigma(B)``.
    """
    return g_vector_fan(principal_atlas(negated_dual(b)))


def negated_dual(b: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(-x for x in col) for col in zip(*as_int_matrix(b)))


def verify_theorem(
    b: Sequence[Sequence[int]], chat: Sequence | None = None, check_fan: bool = True
) -> TheoremReport:
    b = as_int_matrix(b)
    u = universal_extension(b)
    n, v = u.n, u.v
    if chat is None:
        chat = (0,) * n + (1,) * (v - n)
    level = ReductionLevel(tuple(chat), n)
    kb = kernel_matrix(u)
    moment = reduced_moment_image(kb, level)
    spec = build_slice(b, level.c, atlas=u.atlas)
    upoly = u_polytope(spec)
    fan_ok = mismatch = None
    if check_fan:
        cmp = fans_equal(outer_normal_fan(project(upoly, range(n))), realized_fan(b))
        fan_ok, mismatch = cmp.equal, cmp.mismatch
    return TheoremReport(level.values, moment.vertices, upoly.vertices, fan_ok, mismatch)


def alternate_seed(b: Sequence[Sequence[int]], word: Sequence[int]) -> IntMatrix:
    """``B`` mutated along ``word``: the same algebra seen from another initial seed."""
    return mutate_word(ExchangeMatrix(as_int_matrix(b)), word).principal


@dataclass(frozen=True)
class MomentPoint:
    """Torus-patch point as (modulus, angle) pairs; the first ``n`` moduli are positive."""

    moduli: tuple[float, ...]
    angles: tuple[float, ...]
    n: int

    def __post_init__(self) -> None:
        if len(self.moduli) != len(self.angles):
            raise ValueError("need one angle per modulus")
        if any(r <= 0 for r in self.moduli[: self.n]):
            raise ValueError("torus coordinates need positive modulus")
        if any(r < 0 for r in self.moduli[self.n :]):
            raise ValueError("moduli are nonnegative")


def moment_map_eval(p: MomentPoint) -> tuple[float, ...]:
    """Floating-point moment map ``(-log r_1, ..., -log r_n, r_{n+1}^2/2, ...)``. Sanity use only."""
    return tuple(-math.log(r) for r in p.moduli[: p.n]) + tuple(0.5 * r * r for r in p.moduli[p.n :])


def point_over(kb: KernelBasis, chat: Sequence, w: Sequence) -> MomentPoint:
    """A patch point whose moment image is ``(u, w)`` with ``u`` solving the top rows of ``K``."""
    n = kb.n
    u = []
    for i in range(n):
        row = kb.k[i]
        u.append(Fraction(chat[i]) - sum(a * x for a, x in zip(row[n:], w)))
    moduli = tuple(math.exp(-float(x)) for x in u) + tuple(math.sqrt(2 * float(x)) for x in w)
    return MomentPoint(moduli, (0.0,) * len(moduli), n)


def principal_atlas(b: Sequence[Sequence[int]]) -> Atlas:
    return explore(principal_extension(b))


__all__ = [
    "KernelBasis",
    "MomentPoint",
    "ReductionLevel",
    "SliceSpec",
    "TheoremReport",
    "a_polytope",
    "alternate_seed",
    "build_slice",
    "format_equation",
    "kernel_matrix",
    "kernel_span_matches",
    "moment_equations",
    "moment_map_eval",
    "negated_dual",
    "point_over",
    "principal_atlas",
    "realized_fan",
    "reduced_moment_image",
    "same_row_span",
    "u_polytope",
    "vertex_clusters",
    "verify_theorem",
]

"""Exact polytopes and fans.

Everything here is rational and exact.  Vertex sets are kept sorted
lexicographically so that equality of polytopes is equality of tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from abhy.cluster import Atlas, g_vectors
from abhy.exact import (
    RatVector,
    clear_denominators,
    lp_feasible,
    primitive,
    rref,
    solve_affine,
)
from abhy.kernels import bareiss_det, bareiss_rank, bareiss_solve
from abhy.laurent import LaurentPoly


class EmptyPolytope(ValueError):
    pass


class UnboundedPolytope(ValueError):
    pass


@dataclass(frozen=True)
class HSlice:
    """``{w : A w = b}``, intersected with the nonnegative orthant if ``orthant``."""

    dim: int
    equations: tuple[tuple[RatVector, Fraction], ...]
    orthant: bool = True

    def __post_init__(self) -> None:
        eqs = tuple((tuple(Fraction(x) for x in a), Fraction(b)) for a, b in self.equations)
        if any(len(a) != self.dim for a, _ in eqs):
            raise ValueError("equation length differs from ambient dimension")
        object.__setattr__(self, "equations", eqs)

    @property
    def matrix(self) -> tuple[RatVector, ...]:
        return tuple(a for a, _ in self.equations)

    @property
    def rhs(self) -> RatVector:
        return tuple(b for _, b in self.equations)

    def contains(self, w: Sequence) -> bool:
        if self.orthant and any(x < 0 for x in w):
            return False
        return all(sum(ai * wi for ai, wi in zip(a, w)) == b for a, b in self.equations)


@dataclass(frozen=True)
class VPolytope:
    dim: int
    vertices: tuple[RatVector, ...]

    def __post_init__(self) -> None:
        verts = tuple(sorted({tuple(Fraction(x) for x in v) for v in self.vertices}))
        if any(len(v) != self.dim for v in verts):
            raise ValueError("vertex length differs from ambient dimension")
        object.__setattr__(self, "vertices", verts)

    def __len__(self) -> int:
        return len(self.vertices)

    def translate(self, t: Sequence) -> VPolytope:
        return VPolytope(self.dim, [tuple(x + y for x, y in zip(v, t)) for v in self.vertices])

    def scale(self, s) -> VPolytope:
        return VPolytope(self.dim, [tuple(s * x for x in v) for v in self.vertices])

    def normalized(self) -> VPolytope:
        """Translate so the coordinatewise minimum is the origin."""
        if not self.vertices:
            return self
        low = [min(col) for col in zip(*self.vertices)]
        return self.translate([-x for x in low])


@dataclass(frozen=True)
class Cone:
    rays: frozenset[tuple[int, ...]]


@dataclass(frozen=True)
class Fan:
    """Rays as primitive integer vectors; maximal cones as sorted ray-index tuples.

    ``lineality`` spans the common lineality space; it is empty for the
    pointed fans of full-dimensional polytopes.
    """

    dim: int
    rays: tuple[tuple[int, ...], ...]
    maximal_cones: tuple[tuple[int, ...], ...]
    lineality: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def from_cones(cls, dim: int, cones: Iterable[Iterable[Sequence]], lineality=()) -> Fan:
        prim_cones = [frozenset(primitive(r) for r in cone) for cone in cones]
        rays = tuple(sorted(set().union(*prim_cones))) if prim_cones else ()
        where = {r: i for i, r in enumerate(rays)}
        maximal = tuple(sorted({tuple(sorted(where[r] for r in c)) for c in prim_cones}))
        return cls(dim, rays, maximal, tuple(lineality))

    @property
    def cones(self) -> tuple[Cone, ...]:
        return tuple(Cone(frozenset(self.rays[i] for i in c)) for c in self.maximal_cones)

    def cone_keys(self) -> frozenset[frozenset[tuple[int, ...]]]:
        return frozenset(c.rays for c in self.cones)


def _independent_equations(s: HSlice) -> tuple[list[list[int]], list[int]]:
    """Full-row-rank integer system equivalent to ``s``; raises ``EmptyPolytope`` if inconsistent."""
    if not s.equations:
        return [], []
    red, pivots = rref([list(a) + [b] for a, b in s.equations])
    if s.dim in pivots:
        raise EmptyPolytope("slice equations are inconsistent")
    rows, rhs = [], []
    for r in red:
        ints, _ = clear_denominators(r)
        rows.append(list(ints[:-1]))
        rhs.append(ints[-1])
    return rows, rhs


def is_bounded(s: HSlice) -> bool:
    """A nonempty orthant slice is bounded iff no ``r >= 0``, ``r != 0`` has ``A r = 0``."""
    if not s.orthant:
        return solve_affine(list(s.matrix), [0] * len(s.equations), s.dim).dimension == 0
    a = [list(r) for r in s.matrix] + [[1] * s.dim]
    return lp_feasible(a, [0] * len(s.equations) + [1], s.dim) is None


def vertices_of_slice(s: HSlice, certify: bool = True) -> VPolytope:
    """Vertices of an orthant slice by enumerating basic feasible solutions.

    With ``r`` independent equations, every vertex has at least ``dim - r``
    zero coordinates; each choice of zero set with a nonsingular complement
    gives one candidate, kept when nonnegative.
    """
    if not s.orthant:
        raise ValueError("vertex enumeration needs the orthant constraint")
    rows, rhs = _independent_equations(s)
    v = s.dim
    if lp_feasible(rows, rhs, v) is None:
        raise EmptyPolytope("slice has no nonnegative point")
    if not is_bounded(s):
        raise UnboundedPolytope("slice contains a ray of the orthant")
    r = len(rows)
    found = set()
    for basis in combinations(range(v), r):
        sub = [[row[j] for j in basis] for row in rows]
        sol = bareiss_solve(sub, rhs)
        if sol is None:
            continue
        nums, den = sol
        if any(x < 0 for x in nums):
            continue
        w = [Fraction(0)] * v
        for j, x in zip(basis, nums):
            w[j] = Fraction(x, den)
        found.add(tuple(w))
    poly = VPolytope(v, found)
    if certify:
        for p in poly.vertices:
            if not s.contains(p):
                raise AssertionError("enumerated vertex violates the slice")
            if not is_extreme_in_slice(rows, p):
                raise AssertionError("enumerated point is not extreme")
    return poly


def is_extreme_in_slice(rows: Sequence[Sequence[int]], point: Sequence) -> bool:
    """A feasible point of ``{A w = b, w >= 0}`` is a vertex iff the columns of ``A`` on its support are independent."""
    support = [j for j, x in enumerate(point) if x != 0]
    if not support:
        return True
    cols = [[row[j] for row in rows] for j in support]
    return bareiss_rank(cols) == len(support)


def in_convex_hull(p: Sequence, points: Sequence[Sequence]) -> bool:
    if not points:
        return False
    d = len(p)
    a = [[q[k] for q in points] for k in range(d)] + [[1] * len(points)]
    return lp_feasible(a, list(p) + [1], len(points)) is not None


def extreme_points(points: Iterable[Sequence]) -> set[RatVector]:
    pts = sorted({tuple(Fraction(x) for x in p) for p in points})
    if len(pts) <= 2:
        return set(pts)
    out = set()
    for i, p in enumerate(pts):
        if not in_convex_hull(p, pts[:i] + pts[i + 1 :]):
            out.add(p)
    return out


def convex_hull(dim: int, points: Iterable[Sequence]) -> VPolytope:
    return VPolytope(dim, extreme_points(points))


def project(p: VPolytope, coords: Sequence[int]) -> VPolytope:
    coords = list(coords)
    if len(set(coords)) != len(coords) or any(not 0 <= c < p.dim for c in coords):
        raise ValueError("projection coordinates must be distinct and in range")
    return convex_hull(len(coords), [tuple(v[c] for c in coords) for v in p.vertices])


def projection_is_injective(p: VPolytope, coords: Sequence[int]) -> bool:
    images = {tuple(v[c] for c in coords) for v in p.vertices}
    return len(images) == len(p.vertices)


def newton_polytope(f: LaurentPoly) -> VPolytope:
    if not f.terms:
        raise ValueError("the zero polynomial has no Newton polytope")
    return convex_hull(len(f.variables), f.terms)


def minkowski_sum(p: VPolytope, q: VPolytope) -> VPolytope:
    if p.dim != q.dim:
        raise ValueError("Minkowski summands must share the ambient dimension")
    return convex_hull(p.dim, [tuple(a + b for a, b in zip(x, y)) for x in p.vertices for y in q.vertices])


def g_vector_fan(atlas: Atlas) -> Fan:
    """Rays are the g-vectors; one maximal cone per cluster."""
    gs = g_vectors(atlas)
    return Fan.from_cones(atlas.n, [[gs[i] for i in c] for c in atlas.clusters])


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]
    offset: Fraction
    vertices: frozenset[int]


def _cross(rows: list[list[int]], dim: int) -> tuple[int, ...]:
    """Generalised cross product: a vector orthogonal to ``dim - 1`` integer rows (zero if dependent)."""
    out = []
    for j in range(dim):
        minor = [[r[k] for k in range(dim) if k != j] for r in rows]
        out.append((-1) ** j * bareiss_det(minor))
    return tuple(out)


def facets(p: VPolytope) -> tuple[list[Facet], tuple[tuple[int, ...], ...]]:
    """Facets of ``p`` relative to its affine hull, plus a basis of the hull's orthogonal complement.

    Outer normals are chosen inside the direction space of the hull, so the
    normal of a facet is unique up to positive scaling.  Candidate normals
    come from every affinely independent set of hull-dimension many
    vertices; vertices are scaled to integers first.
    """
    verts = p.vertices
    if not verts:
        raise EmptyPolytope("empty polytope")
    dim = p.dim
    scale = 1
    for vert in verts:
        for x in vert:
            scale = scale * x.denominator // gcd(scale, x.denominator)
    pts = [[int(x * scale) for x in vert] for vert in verts]
    origin = pts[0]
    diffs = [[x - y for x, y in zip(q, origin)] for q in pts[1:]]
    red, _ = rref(diffs) if diffs else ([], [])
    k = len(red)
    perp_sol = solve_affine(red, [0] * k, dim) if red else solve_affine([], [], dim)
    perp = [list(primitive(h)) for h in perp_sol.homogeneous]
    if k == 0:
        return [], tuple(tuple(h) for h in perp)
    found: dict[tuple[int, ...], Facet] = {}
    for subset in combinations(range(len(pts)), k):
        base = pts[subset[0]]
        rows = [[x - y for x, y in zip(pts[i], base)] for i in subset[1:]] + perp
        a = _cross(rows, dim)
        if not any(a):
            continue
        a = primitive(a)
        values = [sum(ai * xi for ai, xi in zip(a, q)) for q in pts]
        top = sum(ai * xi for ai, xi in zip(a, base))
        if all(val <= top for val in values):
            pass
        elif all(val >= top for val in values):
            a = tuple(-x for x in a)
            top = -top
            values = [-val for val in values]
        else:
            continue
        if a in found:
            continue
        found[a] = Facet(a, Fraction(top, scale), frozenset(i for i, val in enumerate(values) if val == top))
    return sorted(found.values(), key=lambda f: f.normal), tuple(tuple(h) for h in perp)


def outer_normal_fan(p: VPolytope) -> Fan:
    """One maximal cone per vertex, spanned by the outer normals of the facets through it.

    For a lower-dimensional polytope the normals are taken inside the
    direction space of its affine hull and the complement is returned as
    the fan's lineality space.
    """
    fs, perp = facets(p)
    cones = []
    for i in range(len(p.vertices)):
        cones.append([f.normal for f in fs if i in f.vertices])
    return Fan.from_cones(p.dim, cones, lineality=perp)


def is_degenerate(p: VPolytope) -> bool:
    return bool(facets(p)[1])


@dataclass(frozen=True)
class FanComparison:
    equal: bool
    mismatch: str | None = None

    def __bool__(self) -> bool:
        return self.equal


def fans_equal(f1: Fan, f2: Fan) -> FanComparison:
    if f1.dim != f2.dim:
        return FanComparison(False, f"ambient dimensions differ: {f1.dim} vs {f2.dim}")
    r1, r2 = set(f1.rays), set(f2.rays)
    if r1 != r2:
        ray = min(r1 ^ r2)
        side = "first" if ray in r1 else "second"
        return FanComparison(False, f"ray {ray} only in the {side} fan")
    c1, c2 = f1.cone_keys(), f2.cone_keys()
    if c1 != c2:
        cone = min(sorted(sorted(c)) for c in c1 ^ c2)
        side = "first" if frozenset(cone) in c1 else "second"
        return FanComparison(False, f"cone {cone} only in the {side} fan")
    if rref(f1.lineality)[0] != rref(f2.lineality)[0]:
        return FanComparison(False, "lineality spaces differ")
    return FanComparison(True)

"""Universal coefficients, positive mesh mutations and mesh relations.

Throughout, the *dual* of ``B`` is its transpose.  ``B^univ`` stacks under
``B`` the g-vectors of the cluster algebra of the dual matrix, one row per
dual cluster variable in atlas order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from abhy.cluster import (
    Atlas,
    ExchangeMatrix,
    explore,
    g_vector,
    g_vectors,
    initial_seed,
    mutate_seed,
    mutate_word,
    principal_extension,
)
from abhy.exact import IntMatrix, as_int_matrix, rank, transpose, vecmat


def dual_matrix(b: Sequence[Sequence[int]]) -> IntMatrix:
    return transpose(as_int_matrix(b))


def dual_atlas(b: Sequence[Sequence[int]], cap: int | None = None) -> Atlas:
    """Atlas of the dual algebra over principal coefficients."""
    return explore(principal_extension(dual_matrix(b)), cap=cap)


@dataclass(frozen=True)
class UniversalMatrix:
    base: IntMatrix
    rows: IntMatrix
    atlas: Atlas

    @property
    def full(self) -> ExchangeMatrix:
        return ExchangeMatrix(self.base + self.rows)

    @property
    def n(self) -> int:
        return len(self.base)

    @property
    def v(self) -> int:
        return len(self.rows)


def universal_extension(b: Sequence[Sequence[int]], cap: int | None = None) -> UniversalMatrix:
    b = as_int_matrix(b)
    atlas = dual_atlas(b, cap)
    return UniversalMatrix(b, g_vectors(atlas), atlas)


@dataclass(frozen=True)
class CompatibilityReport:
    word: tuple[int, ...]
    mutated_rows: IntMatrix
    recomputed_rows: IntMatrix

    @property
    def ok(self) -> bool:
        return self.mutated_rows == self.recomputed_rows

    def __bool__(self) -> bool:
        return self.ok


def check_univ_compatibility(
    b: Sequence[Sequence[int]], word: Sequence[int], cap: int | None = None
) -> CompatibilityReport:
    """Compare ``mu_w(B^univ)`` with ``mu_w(B)^univ`` under the variable bijection.

    Row ``i`` of the mutated matrix is matched with the g-vector of the same
    dual cluster variable ``z_i`` computed from scratch in the principal
    algebra of ``mu_w(B)^dual``.  The variable is located there by replaying
    labelled mutation paths: the new atlas reaches each variable by a path
    ``p`` from its initial seed, and the old atlas reaches the same variable
    by ``w`` followed by ``p``.
    """
    word = tuple(word)
    univ = universal_extension(b, cap)
    n = univ.n
    mutated = mutate_word(univ.full, word).mat[n:]

    new_b = mutate_word(ExchangeMatrix(univ.base), word).principal
    new_atlas = dual_atlas(new_b, cap)
    old_atlas = univ.atlas
    s_old = initial_seed(old_atlas.base, old_atlas.names)
    for k in word:
        s_old = mutate_seed(s_old, k)

    recomputed: list[tuple[int, ...] | None] = [None] * univ.v
    for j in range(new_atlas.num_variables):
        c, pos = new_atlas.first_occurrence(j)
        s = s_old
        for k in new_atlas.paths[c]:
            s = mutate_seed(s, k)
        i = old_atlas.variable_index(s.variables[pos])
        recomputed[i] = g_vector(new_atlas, j)
    if any(r is None for r in recomputed):
        raise AssertionError("variable bijection between atlases is not onto")
    return CompatibilityReport(word, mutated, tuple(recomputed))


def positive_mesh_witnesses(atlas: Atlas, i: int) -> list[tuple[int, int]]:
    """All ``(j, cluster)`` with ``i`` in the cluster and ``B(C)_{ki} >= 0`` for all ``k``."""
    out = []
    for c, members in enumerate(atlas.clusters):
        if i in members and all(x >= 0 for x in atlas.b_column(c, i).values()):
            out.append((atlas.exchanged(c, i), c))
    return out


def positive_mesh_partner(atlas: Atlas, i: int) -> tuple[int, int]:
    """The positive mesh mutation ``j`` of variable ``i`` and the first witness cluster."""
    found = positive_mesh_witnesses(atlas, i)
    if not found:
        raise AssertionError(f"variable {i} has no positive mesh mutation")
    partners = {j for j, _ in found}
    if len(partners) != 1:
        raise AssertionError(f"variable {i} has several positive mesh partners {sorted(partners)}")
    return found[0]


@dataclass(frozen=True)
class MeshRelation:
    index: int
    partner: int
    cluster: int
    coefficients: tuple[int, ...]


def mesh_relation(atlas: Atlas, i: int) -> MeshRelation:
    j, c = positive_mesh_partner(atlas, i)
    coeffs = [0] * atlas.num_variables
    coeffs[i] += 1
    coeffs[j] += 1
    for k, bki in atlas.b_column(c, i).items():
        if k != i:
            coeffs[k] -= bki
    return MeshRelation(i, j, c, tuple(coeffs))


def mesh_relations(atlas: Atlas) -> list[MeshRelation]:
    """One relation per non-initial variable; checked to annihilate and span."""
    gs = g_vectors(atlas)
    n = atlas.n
    rels = [mesh_relation(atlas, i) for i in range(n, atlas.num_variables)]
    for r in rels:
        if any(vecmat(r.coefficients, gs)):
            raise AssertionError(f"mesh relation for variable {r.index} does not vanish")
    dependencies = atlas.num_variables - rank(gs)
    if rels and rank([r.coefficients for r in rels]) != dependencies:
        raise AssertionError("mesh relations do not span the g-vector dependencies")
    if len(rels) != dependencies:
        raise AssertionError("mesh relation count differs from the dependency dimension")
    return rels

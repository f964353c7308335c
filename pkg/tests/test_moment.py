import random
from fractions import Fraction as F

import pytest

from abhy.cluster import f_polynomial, principal_extension, explore
from abhy.exact import matmul, rank
from abhy.polytope import minkowski_sum, newton_polytope
from abhy.moment import (
    ReductionLevel,
    a_polytope,
    alternate_seed,
    build_slice,
    format_equation,
    kernel_matrix,
    kernel_span_matches,
    moment_equations,
    moment_map_eval,
    point_over,
    reduced_moment_image,
    same_row_span,
    u_polytope,
    vertex_clusters,
    verify_theorem,
)
from abhy.universal import universal_extension

from conftest import A2, B2, FIXTURES

PUBLISHED_K = (
    (1, 0, 0, 1, 0, 0, 0, 0),
    (0, 1, -2, 0, 0, 0, 0, 0),
    (0, 0, 1, -1, 1, 0, 0, 0),
    (0, 0, 0, 1, -2, 1, 0, 0),
    (0, 0, 0, 0, 1, -1, 1, 0),
    (0, 0, 0, 0, 0, 1, -2, 1),
)


def e(i, size):
    return tuple(int(i == j) for j in range(size))


def test_b2_slice_equations():
    spec = build_slice(B2)
    texts = [format_equation((0, 0) + a, f"c{i + 3}", 2) for i, (a, _) in enumerate(spec.slice.equations)]
    assert texts == ["w1-w2+w3=c3", "w2-2w3+w4=c4", "w3-w4+w5=c5", "w4-2w5+w6=c6"]


def test_b2_kernel_matrix():
    u = universal_extension(B2)
    kb = kernel_matrix(u)
    assert kb.k == PUBLISHED_K
    assert same_row_span(kb.k, PUBLISHED_K)
    assert kernel_span_matches(kb, u)
    assert kb.top == ((1, 0, 0, 1, 0, 0, 0, 0), (0, 1, -2, 0, 0, 0, 0, 0))


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_kernel_matrix_shape(name):
    u = universal_extension(FIXTURES[name])
    kb = kernel_matrix(u)
    n, v = u.n, u.v
    assert all(row[:n] == e(i, n) for i, row in enumerate(kb.k[:n]))
    assert all(row[:n] == (0,) * n for row in kb.k[n:])
    assert not any(any(r) for r in matmul(kb.k, u.full.mat))
    assert rank(kb.k) == v
    assert kernel_span_matches(kb, u)


def test_b2_moment_equation_text():
    kb = kernel_matrix(universal_extension(B2))
    texts = [format_equation(row, f"c{r + 1}", 2) for r, (row, _) in enumerate(moment_equations(kb, (0,) * 6))]
    assert texts == ["u1+w2=c1", "u2-2w1=c2", "w1-w2+w3=c3", "w2-2w3+w4=c4", "w3-w4+w5=c5", "w4-2w5+w6=c6"]


def test_reduction_level_validation():
    with pytest.raises(ValueError):
        ReductionLevel((0, 0, 1, 0), 2)
    assert ReductionLevel((-3, 5, 1, 1), 2).c == (1, 1)


def test_reduced_image_of_b2_is_u_polytope():
    kb = kernel_matrix(universal_extension(B2))
    chat = (F(-1, 2), 7, 1, 2, 1, 3)
    image = reduced_moment_image(kb, chat)
    assert image == u_polytope(build_slice(B2, chat[2:]))
    assert len(image) == 6


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_vertices_correspond_to_clusters(name):
    spec = build_slice(FIXTURES[name])
    poly = u_polytope(spec)
    labels = vertex_clusters(spec, poly)
    assert len(poly) == spec.atlas.num_clusters
    assert sorted(labels) == list(range(spec.atlas.num_clusters))


def test_slice_constants_validated():
    with pytest.raises(ValueError):
        build_slice(B2, (1, 1, 1))
    with pytest.raises(ValueError):
        build_slice(B2, (1, 0, 1, 1))
    with pytest.raises(ValueError):
        build_slice(B2, (1, -1, 1, 1), strict=False)
    assert len(u_polytope(build_slice(B2, (1, 0, 0, 0), strict=False))) < 6


def test_scaling_c_scales_the_polytope():
    base = a_polytope(build_slice(B2, (1, 2, 1, 3)))
    assert a_polytope(build_slice(B2, (2, 4, 2, 6))) == base.scale(2)


def test_a_c_is_the_minkowski_sum_of_degenerate_summands():
    c = (1, 2, 1, 3)
    total = None
    for k, ck in enumerate(c):
        part = a_polytope(build_slice(B2, e(k, 4), strict=False)).scale(ck)
        total = part if total is None else minkowski_sum(total, part)
    assert total == a_polytope(build_slice(B2, c))


def test_initial_seed_changes_the_polytope():
    p = a_polytope(build_slice(A2)).normalized()
    q = a_polytope(build_slice(alternate_seed(A2, (0,)))).normalized()
    assert len(p) == len(q) == 5
    assert p != q


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_newton_polytopes_of_f_polynomials(name):
    b = FIXTURES[name]
    atlas = explore(principal_extension(b))
    n, v = atlas.n, atlas.num_variables
    spec = build_slice(b, e(0, v - n), strict=False)
    for i in range(n, v):
        summand = a_polytope(build_slice(b, e(i - n, v - n), strict=False, atlas=spec.atlas))
        assert newton_polytope(f_polynomial(atlas, i)) == summand


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_verify_theorem_with_fan(name):
    rep = verify_theorem(FIXTURES[name])
    assert rep.ok, rep.summary()


def test_theorem_report_summary():
    rep = verify_theorem(B2, (0, 0, 1, 1, 1, 1))
    assert rep.summary() == "vertices match: 6; normal fan matches g-vector fan"
    assert verify_theorem(B2, check_fan=False).summary() == "vertices match: 6"


def test_moment_map_sanity_b2():
    kb = kernel_matrix(universal_extension(B2))
    rng = random.Random(3)
    chat = tuple(F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(2)) + (F(1), F(2, 3), F(5, 2), F(1))
    for w in reduced_moment_image(kb, chat).vertices:
        mu = moment_map_eval(point_over(kb, chat, w))
        for row, c in zip(kb.k, chat):
            assert abs(sum(a * x for a, x in zip(row, mu)) - float(c)) < 1e-9

import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abhy.cluster import (
    CapExceeded,
    ExchangeMatrix,
    InfiniteType,
    explore,
    f_polynomial,
    g_vector,
    g_vectors,
    initial_seed,
    is_skew_symmetrizable,
    mutate_matrix,
    mutate_seed,
    mutate_word,
    principal_extension,
    principal_grading,
)
from abhy.laurent import parse_laurent
from abhy.universal import dual_atlas, dual_matrix

from conftest import B2, COUNTS, FIXTURES


def brute_force_symmetrizers(b, bound=9):
    n = len(b)
    return [
        d for d in product(range(1, bound + 1), repeat=n)
        if all(b[i][i] == 0 for i in range(n))
        and all(d[i] * b[i][j] == -d[j] * b[j][i] for i in range(n) for j in range(n))
    ]


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_skew_symmetrizer_matches_brute_force(b):
    d = is_skew_symmetrizable(b)
    oracle = brute_force_symmetrizers(b)
    if d is None:
        assert oracle == []
    else:
        # ratios are at most 3 along at most two edges, so 9 bounds every minimal symmetrizer
        assert d in oracle
        assert all(d[i] <= o[i] for o in oracle for i in range(len(d)))


def random_exchange_matrix(rng):
    n = rng.randint(1, 4)
    m = rng.randint(0, 3)
    d = [rng.randint(1, 3) for _ in range(n)]
    s = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = rng.randint(-2, 2)
            s[i][j], s[j][i] = x, -x
    top = [[s[i][j] * d[j] for j in range(n)] for i in range(n)]
    frozen = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
    return ExchangeMatrix(top + frozen)


def test_mutation_is_an_involution_on_random_matrices():
    rng = random.Random(0)
    for _ in range(1000):
        bt = random_exchange_matrix(rng)
        k = rng.randrange(bt.n)
        assert mutate_matrix(mutate_matrix(bt, k), k) == bt


def test_mutation_rejects_bad_direction():
    with pytest.raises(IndexError):
        mutate_matrix(ExchangeMatrix(B2), 2)


def test_exchange_matrix_validation():
    with pytest.raises(ValueError):
        ExchangeMatrix(((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        ExchangeMatrix(((0, 1),))


def test_seed_mutation_is_an_involution():
    s = initial_seed(principal_extension(B2))
    for k in range(2):
        assert mutate_seed(mutate_seed(s, k), k) == s


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_atlas_counts(name):
    atlas = explore(principal_extension(FIXTURES[name]))
    assert (atlas.num_variables, atlas.num_clusters) == COUNTS[name]


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_variables_are_homogeneous_and_f_polynomials_are_normalised(name):
    atlas = explore(principal_extension(FIXTURES[name]))
    gs = g_vectors(atlas)
    n = atlas.n
    assert gs[:n] == tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    for i in range(atlas.num_variables):
        f = f_polynomial(atlas, i)
        assert f.terms[(0,) * n] == 1


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_atlas_is_closed_and_consistent(name):
    atlas = explore(principal_extension(FIXTURES[name]))
    for c, members in enumerate(atlas.clusters):
        assert len(set(members)) == atlas.n
        for p, d in enumerate(atlas.neighbors[c]):
            assert d >= 0
            assert len(set(members) & set(atlas.clusters[d])) == atlas.n - 1
        s = initial_seed(atlas.base, atlas.names)
        for k in atlas.paths[c]:
            s = mutate_seed(s, k)
        assert tuple(atlas.variable_index(v) for v in s.cluster) == members


def test_dfs_and_bfs_agree_up_to_numbering():
    for b in FIXTURES.values():
        d = explore(principal_extension(b), order="dfs")
        w = explore(principal_extension(b), order="bfs")
        assert set(d.variables) == set(w.variables)
        assert d.num_clusters == w.num_clusters


def test_dual_variables_of_b2_match_golden_laurent_polynomials():
    atlas = dual_atlas(B2)
    names = atlas.names
    assert names == ("x1", "x2", "y1", "y2")

    def q(num, den):
        return parse_laurent(num, names).exact_div(parse_laurent(den, names))

    expected = [
        q("x2 + y1", "x1"),
        q("x2^2 + 2*y1*x2 + y1^2 + y1^2*y2*x1^2", "x1^2*x2"),
        q("x2 + y1 + y1*y2*x1^2", "x1*x2"),
        q("1 + y2*x1^2", "x2"),
    ]
    assert list(atlas.variables[2:]) == expected
    assert g_vectors(atlas)[2:] == ((-1, 1), (-2, 1), (-1, 0), (0, -1))


def test_principal_grading_of_generators():
    bd = dual_matrix(B2)
    degrees = [principal_grading(bd, e) for e in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))]
    assert degrees == [(1, 0), (0, 1), (0, 1), (-2, 0)]


def test_g_vector_needs_principal_coefficients():
    atlas = explore(ExchangeMatrix(B2))
    with pytest.raises(ValueError):
        g_vector(atlas, 0)


def test_mutate_word_round_trip():
    bt = principal_extension(B2)
    assert mutate_word(bt, (0, 1, 1, 0)) == bt


def test_infinite_type_is_detected():
    with pytest.raises(InfiniteType):
        explore(((0, 2), (-2, 0)))
    # Markov quiver
    with pytest.raises(CapExceeded):
        explore(((0, 2, -2), (-2, 0, 2), (2, -2, 0)))


def test_cap_is_enforced():
    with pytest.raises(CapExceeded):
        explore(principal_extension(FIXTURES["A3"]), cap=5)


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("ABHY_CAP", "3")
    with pytest.raises(CapExceeded):
        explore(principal_extension(FIXTURES["A2"]))


def test_unknown_order_rejected():
    with pytest.raises(ValueError):
        explore(B2, order="random")

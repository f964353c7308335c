from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abhy.exact import (
    clear_denominators,
    hermite_normal_form,
    left_kernel_basis,
    lp_feasible,
    matmul,
    matvec,
    primitive,
    rank,
    rref,
    solve_affine,
    solve_square,
    vecmat,
)

small = st.integers(-4, 4)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def det(m):
    n = len(m)
    if n == 0:
        return 1
    return sum((-1) ** j * m[0][j] * det([r[:j] + r[j + 1 :] for r in m[1:]]) for j in range(n))


def test_primitive_keeps_orientation():
    assert primitive([Fraction(2, 3), Fraction(-4, 3)]) == (1, -2)
    assert primitive([0, 0]) == (0, 0)
    assert primitive([-6, 9]) == (-2, 3)


def test_clear_denominators():
    assert clear_denominators([Fraction(1, 2), Fraction(1, 3)]) == ((3, 2), 6)


def test_rref_small():
    rows, pivots = rref([[2, 4], [1, 2]])
    assert rows == [[1, 2]] and pivots == [0]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_hnf_is_unimodular_transform(m):
    h, u = hermite_normal_form(m)
    assert matmul(u, m) == h
    assert abs(det([list(r) for r in u])) == 1
    nonzero = [r for r in h if any(r)]
    assert all(any(r) for r in h[: len(nonzero)])
    pivots = [next(j for j, x in enumerate(r) if x) for r in nonzero]
    assert pivots == sorted(set(pivots))
    for i, (r, p) in enumerate(zip(nonzero, pivots)):
        assert r[p] > 0
        for above in nonzero[:i]:
            assert 0 <= above[p] < r[p]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_left_kernel_is_saturated_basis(m):
    ker = left_kernel_basis(m)
    ncols = len(m[0])
    assert len(ker) == len(m) - rank(m)
    for row in ker:
        assert vecmat(row, m, ncols) == (0,) * ncols
    if ker:
        assert rank(ker) == len(ker)


def test_left_kernel_lattice_not_sublattice():
    # x M = 0 has kernel spanned by (1, 1); a doubled basis would miss it
    ker = left_kernel_basis([[2], [-2]])
    assert ker == ((1, 1),)


@settings(max_examples=150, deadline=None)
@given(matrices(), st.lists(small, min_size=4, max_size=4))
def test_solve_affine_solutions_satisfy(a, b):
    b = b[: len(a)]
    sol = solve_affine(a, b)
    if sol is None:
        # inconsistent: rank of the augmented system jumps
        assert rank([r + [x] for r, x in zip(a, b)]) > rank(a)
        return
    assert matvec(a, sol.particular) == tuple(Fraction(x) for x in b)
    for h in sol.homogeneous:
        assert all(x == 0 for x in matvec(a, h))
    assert sol.dimension == len(a[0]) - rank(a)


def test_solve_square_singular():
    assert solve_square([[1, 2], [2, 4]], [1, 2]) is None
    assert solve_square([[2, 0], [0, 3]], [1, 1]) == (Fraction(1, 2), Fraction(1, 3))


def _brute_force_feasible(a, b, bound=3):
    ncols = len(a[0])
    for x in product(range(bound + 1), repeat=ncols):
        if all(sum(ai * xi for ai, xi in zip(r, x)) == bi for r, bi in zip(a, b)):
            return True
    return False


@settings(max_examples=120, deadline=None)
@given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
def test_lp_feasible_sound(a, b):
    b = b[: len(a)]
    x = lp_feasible(a, b)
    if x is not None:
        assert all(v >= 0 for v in x)
        assert matvec(a, x) == tuple(Fraction(v) for v in b)
    else:
        # no small integer point either (oracle is one-sided)
        assert not _brute_force_feasible(a, b)


def test_lp_infeasible_and_feasible():
    assert lp_feasible([[1, 1]], [-1]) is None
    assert lp_feasible([[1, -1]], [0]) is not None
    assert lp_feasible([], [], 3) == (0, 0, 0)


def test_solve_affine_length_mismatch():
    with pytest.raises(ValueError):
        solve_affine([[1]], [1, 2])


def test_degenerate_shapes_return_empty_structures():
    assert rref([]) == ([], [])
    assert rank([]) == 0
    assert hermite_normal_form([]) == ((), ())
    assert left_kernel_basis([]) == ()
    assert left_kernel_basis([[], []], 0) == ((1, 0), (0, 1))
    sol = solve_affine([], [], 2)
    assert sol.particular == (0, 0) and sol.dimension == 2

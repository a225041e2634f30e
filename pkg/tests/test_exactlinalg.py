from fractions import Fraction as Fr

import pytest

from taucluster.exactlinalg import (
    RatMatrix,
    Subspace,
    determinant,
    inverse,
    kernel_basis,
    minpoly_split,
    rank,
    rref,
    solve,
)


def test_rref_empty():
    m, r = rref(RatMatrix([], 0))
    assert m.shape == (0, 0) and r == 0


def test_rref_identity():
    m, r = rref(RatMatrix.identity(3))
    assert m == RatMatrix.identity(3) and r == 3


def test_rref_rank_one():
    m, r = rref(RatMatrix([[1, 2], [2, 4]]))
    assert m == RatMatrix([[1, 2], [0, 0]])
    assert r == 1


def test_kernel_of_identity_is_zero():
    assert kernel_basis(RatMatrix.identity(2)).dim == 0


def test_kernel_of_zero_map_is_everything():
    assert kernel_basis(RatMatrix.zeros(2, 3)).dim == 3


def test_kernel_of_row():
    k = kernel_basis(RatMatrix([[1, 2]]))
    assert k.dim == 1
    assert k.contains([-2, 1])
    assert k == Subspace(2, [[-2, 1]])


def test_solve_identity():
    assert solve(RatMatrix.identity(2), [3, 4]) == [3, 4]


def test_solve_inconsistent():
    assert solve(RatMatrix.zeros(1, 1), [1]) is None


def test_solve_fraction():
    assert solve(RatMatrix([[2]]), [3]) == [Fr(3, 2)]


def test_exact_arithmetic_no_rounding():
    m = RatMatrix([[Fr(1, 3), Fr(1, 7)], [Fr(2, 5), Fr(1, 11)]])
    assert inverse(m) @ m == RatMatrix.identity(2)
    assert determinant(m) == Fr(1, 33) - Fr(2, 35)


def test_minpoly_zero():
    assert minpoly_split(RatMatrix.zeros(1, 1)) == [([0, 1], 1)]


def test_minpoly_identity():
    assert minpoly_split(RatMatrix.identity(4)) == [([-1, 1], 1)]


def test_minpoly_diag():
    got = sorted(minpoly_split(RatMatrix([[1, 0], [0, 2]])))
    assert got == [([-2, 1], 1), ([-1, 1], 1)]


def test_minpoly_nilpotent_multiplicity():
    assert minpoly_split(RatMatrix([[0, 1], [0, 0]])) == [([0, 1], 2)]


def test_minpoly_irreducible_quadratic():
    # rotation by 90 degrees: x^2 + 1 does not split over Q
    assert minpoly_split(RatMatrix([[0, -1], [1, 0]])) == [([1, 0, 1], 1)]


def test_subspace_sum_and_contains():
    a = Subspace(3, [[1, 0, 0]])
    b = Subspace(3, [[0, 1, 0]])
    s = a + b
    assert s.dim == 2 and s.contains([2, 3, 0]) and not s.contains([0, 0, 1])
    assert s.contains_space(a)


def test_rank_and_shape_checks():
    assert rank(RatMatrix([[1, 2, 3], [2, 4, 6], [0, 0, 1]])) == 2
    with pytest.raises(ValueError):
        RatMatrix([[1, 2]]) @ RatMatrix([[1, 2]])

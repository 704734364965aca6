from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biserial.errors import NoSolution
from biserial.strings_bands import companion
from biserial.linalg import (
    GF,
    QQ,
    Matrix,
    char_poly,
    char_poly_factor_split,

    det,
    inverse,
    nullspace,
    rank,
    random_invertible,
    rref,
    solve_linear_system,
)

small = st.integers(-4, 4)


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    )


def test_rank_examples():
    assert rank(Matrix.zeros(2, 2)) == 0
    assert rank(Matrix.identity(2)) == 2
    assert rank(Matrix([[1, 2], [2, 4]], QQ, 2)) == 1


def test_rank_mod_p_can_drop():
    m = Matrix([[1, 1], [1, 3]], GF(2), 2)
    assert rank(m) == 1


def test_nullspace_examples():
    assert nullspace(Matrix.identity(3)) == []
    assert len(nullspace(Matrix.zeros(3, 3))) == 3
    (v,) = nullspace(Matrix([[1, 1]], QQ, 2))
    assert v[0] == -v[1] != 0


def test_solve_examples():
    x, ker = solve_linear_system(Matrix.identity(2), [3, 4])
    assert tuple(x) == (3, 4) and ker == []
    with pytest.raises(NoSolution):
        solve_linear_system(Matrix.zeros(1, 1), [1])
    x, ker = solve_linear_system(Matrix([[1, 1]], QQ, 2), [2])
    assert tuple(x) == (2, 0)
    assert len(ker) == 1 and ker[0][0] == -ker[0][1]


def test_char_poly_factor_split_examples():
    blocks = char_poly_factor_split(Matrix([[1, 0], [0, 2]], QQ, 2))
    assert sorted(b.factor for b in blocks) == [(-2, 1), (-1, 1)]
    assert all(b.dimension == 1 for b in blocks)
    (nil,) = char_poly_factor_split(Matrix([[0, 1], [0, 0]], QQ, 2))
    assert nil.factor == (0, 1) and nil.dimension == 2
    (irr,) = char_poly_factor_split(companion([-2, 0, 1]))
    assert irr.factor == (-2, 0, 1)


def test_random_invertible_examples():
    assert random_invertible(0, 1).shape == (0, 0)
    one = random_invertible(1, 1)
    assert one[0, 0] != 0
    a, b = random_invertible(2, 17), random_invertible(2, 17)
    assert a == b and det(a) != 0


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(rows):
    m = Matrix(rows, QQ, len(rows[0]))
    ker = nullspace(m)
    assert rank(m) + len(ker) == m.cols
    for v in ker:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in rows)


@settings(max_examples=60, deadline=None)
@given(matrices(st.integers(1, 10), st.integers(1, 10)))
def test_rref_paths_agree(rows):
    # the small-matrix path and the large-matrix path must give the same form
    m = Matrix(rows, QQ, len(rows[0]))
    big = Matrix(rows + [[0] * m.cols] * 64, QQ, m.cols)
    a, piv = rref(m)
    b, piv_big = rref(big)
    assert piv == piv_big
    assert [list(r) for r in b[: m.rows]] == [list(r) for r in a]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10_000))
def test_inverse_round_trip(n, seed):
    g = random_invertible(n, seed)
    assert g @ inverse(g) == Matrix.identity(n)


@settings(max_examples=40, deadline=None)
@given(matrices(st.just(3), st.just(3)))
def test_char_poly_constant_term(rows):
    m = Matrix(rows, QQ, 3)
    cp = char_poly(m)
    assert cp[-1] == 1
    assert cp[0] == -det(m)

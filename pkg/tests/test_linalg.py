from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uncurling.errors import SingularMatrixError
from uncurling.linalg import (
    affine_solve,
    invert,
    mat_vec,
    nullspace,
    primitive_leading_positive,
    rank,
    rref,
    signature,
)

F = Fraction


def test_nullspace_zero_matrix():
    basis = nullspace([[0, 0], [0, 0]])
    assert basis == [(F(1), F(0)), (F(0), F(1))]


def test_nullspace_identity_is_empty():
    assert nullspace([[1, 0], [0, 1]]) == []


def test_nullspace_single_constraint_canonical_scaling():
    assert nullspace([[1, 1]]) == [(F(1), F(-1))]


def test_nullspace_no_rows():
    assert nullspace([], ncols=3) == [
        (F(1), F(0), F(0)),
        (F(0), F(1), F(0)),
        (F(0), F(0), F(1)),
    ]


def test_affine_solve_underdetermined():
    sol = affine_solve([[1, 1]], [2])
    assert sol is not None
    assert sol.particular == (F(2), F(0))
    assert sol.homogeneous == ((F(1), F(-1)),)


def test_affine_solve_inconsistent():
    assert affine_solve([[1], [1]], [1, 2]) is None


def test_affine_solve_identity():
    sol = affine_solve([[1, 0], [0, 1]], [F(3, 2), F(-7)])
    assert sol.particular == (F(3, 2), F(-7))
    assert sol.homogeneous == ()


def test_invert_and_singular():
    inv = invert([[1, 2], [3, 4]])
    assert inv == [[F(-2), F(1)], [F(3, 2), F(-1, 2)]]
    with pytest.raises(SingularMatrixError):
        invert([[1, 2], [2, 4]])


def test_primitive_leading_positive():
    assert primitive_leading_positive([F(-1, 2), 0, F(1, 3)]) == (F(3), F(0), F(-2))
    assert primitive_leading_positive([0, 0]) == (F(0), F(0))


SIGNATURE_CASES = [
    ([[1, 0], [0, -1]], (1, 1, 0)),
    ([[1, 0], [0, 0]], (1, 0, 1)),
    ([[0, 1], [1, 0]], (1, 1, 0)),
    ([[2, 0, 0], [0, 3, 0], [0, 0, 5]], (3, 0, 0)),
    ([[0, 0], [0, 0]], (0, 0, 2)),
    ([[1, 2], [2, 1]], (1, 1, 0)),  # eigenvalues 3, -1
    ([[1, 1], [1, 1]], (1, 0, 1)),  # rank 1
]


@pytest.mark.parametrize("m,expected", SIGNATURE_CASES)
def test_signature_cases(m, expected):
    assert signature(m) == expected


def _congruence(m, t):
    n = len(m)
    tm = [[sum(F(t[k][i]) * F(m[k][l]) for k in range(n)) for l in range(n)] for i in range(n)]
    return [[sum(tm[i][l] * F(t[l][j]) for l in range(n)) for j in range(n)] for i in range(n)]


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(SIGNATURE_CASES),
    st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=2, max_size=2),
)
def test_signature_invariant_under_congruence(case, t):
    m, expected = case
    if len(m) != 2:
        m = [row[:2] for row in m[:2]]
        expected = signature(m)
    det = t[0][0] * t[1][1] - t[0][1] * t[1][0]
    if det == 0:
        return
    assert signature(_congruence(m, t)) == expected


rational = st.fractions(max_denominator=6, min_value=F(-4), max_value=F(4))


@settings(max_examples=60, deadline=None)
@given(
    st.integers(2, 4).flatmap(
        lambda n: st.tuples(
            st.lists(st.lists(rational, min_size=n, max_size=n), min_size=1, max_size=5),
            st.just(n),
        )
    )
)
def test_nullspace_vectors_solve_and_count(data):
    rows, n = data
    basis = nullspace(rows, n)
    for v in basis:
        assert all(x == 0 for x in mat_vec(rows, v))
    assert len(basis) == n - rank(rows)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.lists(rational, min_size=3, max_size=3), min_size=2, max_size=4),
    st.lists(rational, min_size=3, max_size=3),
)
def test_affine_solution_satisfies_system(rows, x):
    rhs = mat_vec(rows, x)
    sol = affine_solve(rows, rhs)
    assert sol is not None  # consistent by construction
    assert mat_vec(rows, sol.particular) == rhs
    for h in sol.homogeneous:
        assert all(v == 0 for v in mat_vec(rows, h))


def test_rref_deterministic():
    rows = [[2, 4], [1, 2]]
    red, pivots = rref(rows)
    assert pivots == [0]
    assert red[0] == [F(1), F(2)]

from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest
import sympy
from sympy import GF as SGF
from sympy.polys.matrices import DomainMatrix

from stratkit.fields import GF, QQ, ModP
from stratkit.linalg import Subspace, intersect, mat_mul, mat_vec, nullspace, rank, rref, solve, span_sum


def test_modp_arithmetic():
    F = GF(7)
    a, b = F(3), F(5)
    assert a + b == 1
    assert a * b == 1
    assert a / b == F(3) * F(3)
    assert -a == 4
    assert F(Fraction(1, 2)) * 2 == 1
    assert F.elements() == [ModP(i, 7) for i in range(7)]


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        GF(9)


def test_rational_field_parse_render():
    assert QQ.parse("-3/6") == Fraction(-1, 2)
    assert QQ.render(Fraction(4, 2)) == "2"
    assert GF(5).render(GF(5).parse("1/2")) == "3"


small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


@pytest.mark.property
@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(M):
    assert rank([[Fraction(x) for x in row] for row in M]) == sympy.Matrix(M).rank()


@pytest.mark.property
@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(M):
    n = len(M[0])
    N = nullspace(M, n)
    assert rank(M) + len(N) == n
    for v in N:
        assert all(x == 0 for x in mat_vec(M, v))


@pytest.mark.property
@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_consistent_systems(M, x):
    n = len(M[0])
    x = x[:n]
    b = mat_vec(M, x)
    y = solve(M, b, n)
    assert y is not None and mat_vec(M, y) == b


@pytest.mark.property
@settings(max_examples=40, deadline=None)
@given(matrices(), st.integers(2, 3).map(lambda i: [2, 3, 5][i - 1]))
def test_rank_mod_p(M, p):
    F = GF(p)
    ours = rank([[F(x) for x in row] for row in M])
    dm = DomainMatrix([[SGF(p)(x) for x in row] for row in M], (len(M), len(M[0])), SGF(p))
    assert ours == dm.rank()


def test_rref_reverse_pivots_are_high():
    rows, piv = rref([[1, 1, 0], [0, 1, 1]], reverse=True)
    assert piv == [2, 1]
    assert rows == [[-1, 0, 1], [1, 1, 0]]


def test_subspace_ops():
    S = Subspace([[1, 0, 0], [0, 1, 0]], 3)
    T = Subspace([[0, 1, 0], [0, 0, 1]], 3)
    assert span_sum(S, T).dim == 3
    assert intersect(S, T).dim == 1
    assert S.contains([2, -3, 0]) and not S.contains([0, 0, 1])
    R = Subspace([[1, 1, 0]], 3, reverse=True)
    assert R.complement_indices() == [0, 2]
    v = [Fraction(3), Fraction(5), Fraction(7)]
    # coordinates in the quotient are read off the complement after reduction
    assert R.quotient_coords(v) == [-2, 7]
    assert mat_mul([[1, 2]], [[3], [4]]) == [[11]]

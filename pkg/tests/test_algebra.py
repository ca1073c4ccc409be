import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from abdim.algebra import (
    NotLocal,
    build_algebra,
    check_algebra_laws,
    is_gorenstein,
    maximal_ideal_rank,
    multiply,
    socle,
)
from abdim.exactmath import FieldCtx
from abdim.groebner import InfiniteDimensional, Poly
from abdim.paperlab import JSConfig, ci_ring, js_ring

F7, F13, QQ = FieldCtx.prime(7), FieldCtx.prime(13), FieldCtx.rationals()


def elements(A):
    if A.ctx.p is None:
        coeff = st.integers(-3, 3).map(A.ctx)
    else:
        coeff = st.integers(0, A.ctx.p - 1)
    return st.lists(coeff, min_size=A.dim, max_size=A.dim).map(tuple)


def socle_dim_oracle(A):
    rows = [row for v in A.var_vectors for row in A.mul_matrix(v)]
    return A.dim - oracles.rank(rows, A.dim, A.ctx)


@pytest.mark.parametrize("field,alpha", [(F7, 3), (F7, 2), (F13, 2), (QQ, 2), (QQ, "-1/3")])
def test_js_staircase_is_alpha_independent(field, alpha):
    A = js_ring(JSConfig(field, alpha))
    assert A.dim == 8
    assert set(A.basis) == oracles.staircase(A.gb.leading_monomials, 4, 4)
    assert len(socle(A)) == socle_dim_oracle(A) == 3
    assert not is_gorenstein(A)
    assert A.nilpotency_degree == 3
    assert check_algebra_laws(A)


def test_js_basis_names(js_algebra):
    names = [js_algebra.format_element(js_algebra.unit_vector(i)) for i in range(js_algebra.dim)]
    assert names == ["1", "x1", "x2", "x3", "x4", "x1*x2", "x2*x3", "x2*x4"]


def test_complete_intersection_is_gorenstein(ci5, ci_qq):
    for A in (ci5, ci_qq):
        assert A.dim == 4 and is_gorenstein(A) and socle_dim_oracle(A) == 1
        assert [maximal_ideal_rank(A, k) for k in (0, 1, 2, 3)] == [4, 3, 1, 0]


@given(data=st.data())
def test_ring_laws_on_random_elements(data, js_algebra):
    A = js_algebra
    u, v, w = (data.draw(elements(A)) for _ in range(3))
    assert multiply(A, u, v) == multiply(A, v, u)
    assert multiply(A, multiply(A, u, v), w) == multiply(A, u, multiply(A, v, w))
    assert multiply(A, u, A.add(v, w)) == A.add(multiply(A, u, v), multiply(A, u, w))
    assert multiply(A, A.one, u) == tuple(u)
    # mul_matrix is the matrix of the same multiplication
    M = A.mul_matrix(u)
    assert tuple(sum(M[r][c] * v[c] for c in range(A.dim)) % 7 for r in range(A.dim)) == multiply(A, u, v)


def test_socle_elements_are_killed(js_algebra):
    A = js_algebra
    for s in socle(A):
        for x in A.var_vectors:
            assert A.is_zero(multiply(A, x, s))


def test_rejects_nonlocal_and_infinite():
    x, y = Poly.variable(0, QQ, 2), Poly.variable(1, QQ, 2)
    with pytest.raises(NotLocal):
        build_algebra(("x", "y"), [x * x - x, y * y], QQ)
    with pytest.raises(InfiniteDimensional):
        build_algebra(("x", "y"), [x * x], QQ)
    with pytest.raises(ValueError):
        build_algebra(("x", "y"), [x * x + Poly.constant(1, QQ, 2), y * y], QQ)
    with pytest.raises(ValueError):
        build_algebra(("x", "x"), [x * x, y * y], QQ)


def test_ci_ring_products():
    A = ci_ring(F7)
    x, y = A.var_vectors
    assert A.is_zero(multiply(A, x, x))
    xy = multiply(A, x, y)
    assert not A.is_zero(xy) and A.format_element(xy) == "x*y"

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from abdim.exactmath import FieldCtx
from abdim.groebner import (
    InfiniteDimensional,
    Poly,
    buchberger,
    monomial_key,
    normal_form,
    quotient_monomial_basis,
    s_polynomial,
)

F7, QQ = FieldCtx.prime(7), FieldCtx.rationals()
NV = 3
VARS = ("x", "y", "z")


def polys(ctx, max_terms=4, max_deg=3):
    mono = st.tuples(*[st.integers(0, max_deg)] * NV).filter(lambda m: 0 < sum(m) <= max_deg)
    coeff = st.integers(-3, 3).filter(bool)
    return st.dictionaries(mono, coeff, min_size=1, max_size=max_terms).map(lambda d: Poly(d, ctx, NV))


def ideals(ctx):
    return st.lists(polys(ctx), min_size=1, max_size=3)


def as_frozen(G, ctx):
    out = set()
    for g in G.generators:
        terms = []
        for m, c in g.terms.items():
            terms.append((m, int(c) % ctx.p if ctx.p else Fraction(int(c.numerator), int(c.denominator))))
        out.add(frozenset(terms))
    return out


def test_monomial_order_is_degrevlex():
    # x > y > z; degree first, then reverse lex from the last variable
    ms = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
    ranked = sorted(ms, key=monomial_key, reverse=True)
    assert ranked[:6] == [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]


def test_poly_arithmetic():
    x, y = Poly.variable(0, QQ, 2), Poly.variable(1, QQ, 2)
    f = (x + y) ** 2
    assert f == x * x + x * y.scale(2) + y * y
    assert (f - f).is_zero()
    assert f.lm == (2, 0) and f.degree() == 2
    assert f.to_str(("x", "y")) == "x^2 + 2*x*y + y^2"
    with pytest.raises(ValueError):
        Poly({(1,): 1}, QQ, 2)


@pytest.mark.parametrize("ctx", [F7, QQ])
@given(data=st.data())
def test_matches_sympy(ctx, data):
    gens = data.draw(ideals(ctx))
    G = buchberger(gens, VARS)
    assert as_frozen(G, ctx) == oracles.sympy_groebner(gens, NV, ctx)


@pytest.mark.parametrize("ctx", [F7, QQ])
@given(data=st.data())
def test_s_pairs_reduce_to_zero(ctx, data):
    G = buchberger(data.draw(ideals(ctx)), VARS)
    for f, g in combinations(G.generators, 2):
        assert normal_form(s_polynomial(f, g), G).is_zero()
    for g in G.generators:
        assert g.lc == ctx.one
        others = [h for h in G.generators if h is not g]
        assert not any(all(a >= b for a, b in zip(m, h.lm)) for m in g.terms for h in others)


@pytest.mark.parametrize("ctx", [F7, QQ])
@given(data=st.data())
def test_criteria_do_not_change_result(ctx, data):
    gens = data.draw(ideals(ctx))
    assert buchberger(gens, VARS).generators == buchberger(gens, VARS, criteria=False).generators


@given(data=st.data())
def test_normal_form_linear_and_idempotent(data):
    G = buchberger(data.draw(ideals(F7)), VARS)
    f, g = data.draw(polys(F7)), data.draw(polys(F7))
    c = data.draw(st.integers(1, 6))
    assert normal_form(f + g.scale(c), G) == normal_form(f, G) + normal_form(g, G).scale(c)
    nf = normal_form(f, G)
    assert normal_form(nf, G) == nf
    for gen in G.generators:
        assert normal_form(gen * f, G).is_zero()


def test_staircase_matches_enumeration():
    x, y, z = (Poly.variable(i, QQ, 3) for i in range(3))
    G = buchberger([x ** 2, y ** 3 - x * z, z ** 2, x * y * z], VARS)
    basis = quotient_monomial_basis(G)
    assert set(basis) == oracles.staircase(G.leading_monomials, 3, 8)
    assert basis[0] == (0, 0, 0)
    assert [sum(m) for m in basis] == sorted(sum(m) for m in basis)


def test_infinite_quotient_rejected():
    x, y = Poly.variable(0, QQ, 2), Poly.variable(1, QQ, 2)
    with pytest.raises(InfiniteDimensional):
        quotient_monomial_basis(buchberger([x ** 2, x * y], ("x", "y")))


def test_unit_ideal():
    x = Poly.variable(0, QQ, 1)
    G = buchberger([x, x + Poly.constant(1, QQ, 1)], ("x",))
    assert len(G.generators) == 1 and G.generators[0].lm == (0,)

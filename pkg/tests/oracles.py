"""Independent reference computations built on sympy, used only by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy
from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix


def domain(ctx):
    return QQ if ctx.p is None else GF(ctx.p)


def to_domain_matrix(rows, ncols, ctx) -> DomainMatrix:
    K = domain(ctx)
    if ctx.p is not None:
        data = [[K(int(x)) for x in row] for row in rows]
    else:
        data = [[K(int(x.numerator), int(x.denominator)) for x in map(ctx, row)] for row in rows]
    return DomainMatrix(data, (len(rows), ncols), K)


def rank(rows, ncols, ctx) -> int:
    if not rows or ncols == 0:
        return 0
    return to_domain_matrix(rows, ncols, ctx).rank()


def brute_force_rank(rows, ncols, p: int) -> int:
    """Rank over F_p as log_p of the size of the row space, by enumeration."""
    span = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        span.add(tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % p for j in range(ncols)))
    size, r = len(span), 0
    while p ** r < size:
        r += 1
    return r


def hom_dim(source_actions, target_actions, sdim: int, tdim: int, ctx) -> int:
    """dim of {F : F X = Y F for every variable}, the commuting-matrix definition of Hom."""
    nunk = tdim * sdim
    if nunk == 0:
        return 0
    rows = []
    for X, Y in zip(source_actions, target_actions):
        for a in range(tdim):
            for b in range(sdim):
                row = [0] * nunk
                # (F X)[a][b] - (Y F)[a][b]
                for c in range(sdim):
                    if X[c][b] != 0:
                        row[a * sdim + c] += X[c][b]
                for c in range(tdim):
                    if Y[a][c] != 0:
                        row[c * sdim + b] -= Y[a][c]
                rows.append(row)
    return nunk - rank(rows, nunk, ctx)


def staircase(leading_monomials, nvars: int, max_degree: int) -> set:
    """Monomials of degree <= max_degree not divisible by any leading monomial."""
    out = set()
    for deg in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), deg):
            m = [0] * nvars
            for i in combo:
                m[i] += 1
            m = tuple(m)
            if not any(all(a >= b for a, b in zip(m, lm)) for lm in leading_monomials):
                out.add(m)
    return out


def sympy_groebner(polys, nvars: int, ctx):
    """Reduced grevlex basis from sympy as a set of frozensets of (monomial, coefficient)."""
    gens = sympy.symbols(f"v0:{nvars}")
    exprs = []
    for f in polys:
        e = 0
        for m, c in f.terms.items():
            coeff = int(c) if ctx.p is not None else sympy.Rational(str(c))
            e += coeff * sympy.Mul(*[g ** k for g, k in zip(gens, m)])
        exprs.append(e)
    opts = {"order": "grevlex"}
    if ctx.p is not None:
        opts["modulus"] = ctx.p
    G = sympy.groebner(exprs, *gens, **opts)
    out = set()
    for g in G.polys:
        ordered = g.terms(order="grevlex")
        lead = ordered[0][1]
        terms = []
        for m, c in ordered:
            c = c / lead
            c = int(c) % ctx.p if ctx.p is not None else Fraction(int(c.numerator), int(c.denominator))
            terms.append((tuple(m), c))
        out.add(frozenset(terms))
    return out

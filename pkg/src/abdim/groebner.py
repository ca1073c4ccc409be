"""Polynomials in k[x_1..x_m], Buchberger's algorithm and finite staircases.

The monomial order is degree reverse lexicographic with the variables in
declaration order (``x_1 > x_2 > ...``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from .exactmath import FieldCtx

__all__ = [
    "Monomial",
    "Poly",
    "GroebnerBasis",
    "InfiniteDimensional",
    "monomial_key",
    "buchberger",
    "normal_form",
    "s_polynomial",
    "quotient_monomial_basis",
    "multiplication_table",
]

Monomial = tuple  # exponent vector, one nonnegative int per variable


class InfiniteDimensional(ValueError):
    """The quotient ring is not finite dimensional over k."""


def monomial_key(m: Monomial):
    """Sort key realising degrevlex: larger key means larger monomial."""
    return (sum(m), tuple(-e for e in reversed(m)))


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


class Poly:
    """Sparse polynomial: a map from exponent tuples to nonzero coefficients."""

    __slots__ = ("terms", "ctx", "nvars")

    def __init__(self, terms: Mapping[Monomial, object], ctx: FieldCtx, nvars: int):
        clean = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != nvars:
                raise ValueError(f"monomial {m} does not have {nvars} exponents")
            c = ctx(c)
            if c != 0:
                clean[m] = c
        self.terms = clean
        self.ctx = ctx
        self.nvars = nvars

    @classmethod
    def _raw(cls, terms: dict, ctx: FieldCtx, nvars: int) -> Poly:
        obj = cls.__new__(cls)
        obj.terms, obj.ctx, obj.nvars = terms, ctx, nvars
        return obj

    @classmethod
    def zero(cls, ctx: FieldCtx, nvars: int) -> Poly:
        return cls._raw({}, ctx, nvars)

    @classmethod
    def constant(cls, c, ctx: FieldCtx, nvars: int) -> Poly:
        return cls({(0,) * nvars: c}, ctx, nvars)

    @classmethod
    def variable(cls, i: int, ctx: FieldCtx, nvars: int) -> Poly:
        e = [0] * nvars
        e[i] = 1
        return cls._raw({tuple(e): ctx.one}, ctx, nvars)

    @classmethod
    def monomial(cls, m: Monomial, ctx: FieldCtx, c=1) -> Poly:
        return cls({tuple(m): c}, ctx, len(m))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        """Terms in descending monomial order."""
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    @property
    def lm(self) -> Monomial:
        return max(self.terms, key=monomial_key)

    @property
    def lc(self):
        return self.terms[self.lm]

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def _check(self, other: Poly):
        if self.ctx != other.ctx or self.nvars != other.nvars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        ctx = self.ctx
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = ctx.add(out.get(m, ctx.zero), c)
            if s != 0:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out, ctx, self.nvars)

    def __neg__(self) -> Poly:
        return Poly._raw({m: self.ctx.neg(c) for m, c in self.terms.items()}, self.ctx, self.nvars)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def scale(self, c) -> Poly:
        c = self.ctx(c)
        if c == 0:
            return Poly.zero(self.ctx, self.nvars)
        return Poly._raw({m: self.ctx.mul(a, c) for m, a in self.terms.items()}, self.ctx, self.nvars)

    def mul_term(self, mono: Monomial, c) -> Poly:
        ctx = self.ctx
        return Poly._raw({_mono_mul(m, mono): ctx.mul(a, c) for m, a in self.terms.items()},
                         ctx, self.nvars)

    def __mul__(self, other: Poly) -> Poly:
        self._check(other)
        ctx = self.ctx
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = ctx.add(out.get(m, ctx.zero), ctx.mul(c1, c2))
        return Poly._raw({m: c for m, c in out.items() if c != 0}, ctx, self.nvars)

    def __pow__(self, e: int) -> Poly:
        result = Poly.constant(1, self.ctx, self.nvars)
        for _ in range(e):
            result = result * self
        return result

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self.scale(self.ctx.inv(self.lc))

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx == other.ctx and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, self.nvars, frozenset(self.terms.items())))

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e)
            cs = self.ctx.fmt(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.to_str()})"


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Gröbner basis under degrevlex; generators are monic."""

    generators: tuple[Poly, ...]
    variables: tuple[str, ...]
    ctx: FieldCtx

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def leading_monomials(self) -> list[Monomial]:
        return [g.lm for g in self.generators]


def _reduce(f: Poly, basis: Sequence[Poly]) -> Poly:
    """Full reduction of ``f`` by ``basis`` (any order of divisors)."""
    ctx = f.ctx
    work = dict(f.terms)
    rem: dict = {}
    lead = [(g.lm, g.lc, g) for g in basis if not g.is_zero()]
    while work:
        m = max(work, key=monomial_key)
        c = work.pop(m)
        for lm, lc, g in lead:
            if _divides(lm, m):
                q = _mono_div(m, lm)
                factor = ctx.mul(c, ctx.inv(lc))
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    t = _mono_mul(gm, q)
                    v = ctx.sub(work.get(t, ctx.zero), ctx.mul(factor, gc))
                    if v != 0:
                        work[t] = v
                    else:
                        work.pop(t, None)
                break
        else:
            rem[m] = c
    return Poly._raw(rem, ctx, f.nvars)


def s_polynomial(f: Poly, g: Poly) -> Poly:
    ctx = f.ctx
    L = _lcm(f.lm, g.lm)
    a = f.mul_term(_mono_div(L, f.lm), ctx.inv(f.lc))
    b = g.mul_term(_mono_div(L, g.lm), ctx.inv(g.lc))
    return a - b


def buchberger(gens: Iterable[Poly], variables: Sequence[str], criteria: bool = True) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    With ``criteria`` the coprime-leading-term and chain criteria skip pairs;
    without it every S-pair is reduced.
    """
    gens = list(gens)
    variables = tuple(variables)
    if not gens:
        raise ValueError("need at least one generator")
    ctx, nvars = gens[0].ctx, gens[0].nvars
    if nvars != len(variables):
        raise ValueError(f"generators have {nvars} variables, {len(variables)} declared")
    for g in gens:
        if g.ctx != ctx or g.nvars != nvars:
            raise ValueError("generators live in different rings")

    G = [g.monic() for g in gens if not g.is_zero()]
    if not G:
        return GroebnerBasis((), variables, ctx)
    pairs = set(combinations(range(len(G)), 2))
    while pairs:
        i, j = min(pairs, key=lambda ij: (monomial_key(_lcm(G[ij[0]].lm, G[ij[1]].lm)), ij))
        pairs.discard((i, j))
        if criteria and _skip_pair(G, pairs, i, j):
            continue
        h = _reduce(s_polynomial(G[i], G[j]), G)
        if h.is_zero():
            continue
        G.append(h.monic())
        n = len(G) - 1
        pairs.update((k, n) for k in range(n))
    return GroebnerBasis(tuple(_interreduce(G)), variables, ctx)


def _skip_pair(G, pairs, i, j) -> bool:
    a, b = G[i].lm, G[j].lm
    if all(x == 0 or y == 0 for x, y in zip(a, b)):
        return True
    L = _lcm(a, b)
    for k in range(len(G)):
        if k in (i, j):
            continue
        if not _divides(G[k].lm, L):
            continue
        ik = (min(i, k), max(i, k))
        jk = (min(j, k), max(j, k))
        if ik not in pairs and jk not in pairs:
            return True
    return False


def _interreduce(G: list[Poly]) -> list[Poly]:
    # drop generators whose leading monomial is divisible by another's
    G = sorted(G, key=lambda g: monomial_key(g.lm))
    minimal: list[Poly] = []
    for g in G:
        if not any(_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        out.append(_reduce(g, others).monic())
    return sorted(out, key=lambda g: monomial_key(g.lm), reverse=True)


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    if f.nvars != G.nvars or f.ctx != G.ctx:
        raise ValueError("polynomial not in the ring of the Gröbner basis")
    return _reduce(f, G.generators)


def quotient_monomial_basis(G: GroebnerBasis) -> list[Monomial]:
    """Standard monomials, by degree then descending order (so ``1`` is first)."""
    n = G.nvars
    lms = G.leading_monomials
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lms if m[i] > 0 and all(e == 0 for k, e in enumerate(m) if k != i)]
        if not pure:
            raise InfiniteDimensional(f"no pure power of {G.variables[i]} among the leading monomials")
        bounds.append(min(pure))
    basis = [m for m in product(*(range(b) for b in bounds))
             if not any(_divides(lm, m) for lm in lms)]
    basis.sort(key=lambda m: (sum(m), tuple(-k for k in monomial_key(m)[1])))
    return basis


def multiplication_table(G: GroebnerBasis, basis: Sequence[Monomial]) -> list[list[tuple]]:
    """``table[i][j]`` is the coordinate vector of ``NF(b_i * b_j)``."""
    ctx = G.ctx
    index = {m: i for i, m in enumerate(basis)}
    n = len(basis)
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            nf = normal_form(Poly.monomial(_mono_mul(basis[i], basis[j]), ctx), G)
            vec = [ctx.zero] * n
            for m, c in nf.terms.items():
                vec[index[m]] = c
            table[i][j] = table[j][i] = tuple(vec)
    return table

"""Finite-dimensional commutative local algebras given as k[x]/I."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exactmath import FieldCtx, kernel_rows, matmul_rows, rank_rows, rref_rows
from .groebner import (
    GroebnerBasis,
    Monomial,
    Poly,
    buchberger,
    multiplication_table,
    normal_form,
    quotient_monomial_basis,
)

__all__ = ["LocalAlgebra", "NotLocal", "build_algebra", "socle", "is_gorenstein", "multiply"]


class NotLocal(ValueError):
    """Some variable acts non-nilpotently, so the quotient is not local."""


@dataclass(frozen=True, eq=False)
class LocalAlgebra:
    """An artinian local k-algebra with a monomial basis.

    ``mult[i][j]`` is the coordinate vector of ``basis[i] * basis[j]``;
    ``left[i]`` is the matrix (row list) of multiplication by ``basis[i]``.
    """

    ctx: FieldCtx
    variables: tuple[str, ...]
    basis: tuple[Monomial, ...]
    mult: tuple
    gb: GroebnerBasis
    var_vectors: tuple[tuple, ...]
    nilpotency_degree: int
    left: tuple = field(repr=False)
    var_mul: tuple = field(repr=False, default=())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def m_indices(self) -> list[int]:
        return [i for i, m in enumerate(self.basis) if sum(m) > 0]

    @property
    def embedding_dimension(self) -> int:
        return len(self.variables)

    def unit_vector(self, i: int) -> tuple:
        v = [self.ctx.zero] * self.dim
        v[i] = self.ctx.one
        return tuple(v)

    @property
    def one(self) -> tuple:
        return self.unit_vector(0)

    @property
    def zero(self) -> tuple:
        return (self.ctx.zero,) * self.dim

    def element(self, f: Poly) -> tuple:
        """Coordinates of the image of a polynomial."""
        nf = normal_form(f, self.gb)
        index = {m: i for i, m in enumerate(self.basis)}
        v = [self.ctx.zero] * self.dim
        for m, c in nf.terms.items():
            v[index[m]] = c
        return tuple(v)

    def element_from_monomial(self, mono: Monomial, c=1) -> tuple:
        return self.element(Poly.monomial(mono, self.ctx, c))

    def variable(self, name_or_index) -> tuple:
        i = self.variables.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        return self.var_vectors[i]

    def mul_matrix(self, u: Sequence) -> list[list]:
        """Matrix (row list) of multiplication by the element ``u``."""
        n, p = self.dim, self.ctx.p
        M = [[self.ctx.zero] * n for _ in range(n)]
        for i, a in enumerate(u):
            if a == 0:
                continue
            L = self.left[i]
            for r in range(n):
                Lr, Mr = L[r], M[r]
                for c in range(n):
                    if Lr[c] != 0:
                        Mr[c] = Mr[c] + a * Lr[c]
        if p is not None:
            M = [[x % p for x in row] for row in M]
        return M

    def in_maximal_ideal(self, u: Sequence) -> bool:
        return u[0] == 0

    def is_zero(self, u: Sequence) -> bool:
        return all(a == 0 for a in u)

    def add(self, u: Sequence, v: Sequence) -> tuple:
        return tuple(self.ctx.add(a, b) for a, b in zip(u, v))

    def scale(self, c, u: Sequence) -> tuple:
        return tuple(self.ctx.mul(c, a) for a in u)

    def format_element(self, u: Sequence) -> str:
        terms = {m: c for m, c in zip(self.basis, u) if c != 0}
        return Poly(terms, self.ctx, len(self.variables)).to_str(self.variables)

    def __repr__(self):
        return f"LocalAlgebra({self.ctx}[{', '.join(self.variables)}]/I, dim={self.dim})"


def multiply(A: LocalAlgebra, u: Sequence, v: Sequence) -> tuple:
    """Product of two elements given in basis coordinates."""
    ctx, n, p = A.ctx, A.dim, A.ctx.p
    acc = [ctx.zero] * n
    for i, a in enumerate(u):
        if a == 0:
            continue
        row = A.mult[i]
        for j, b in enumerate(v):
            if b == 0:
                continue
            ab = a * b
            for k, c in enumerate(row[j]):
                if c != 0:
                    acc[k] = acc[k] + ab * c
    if p is not None:
        acc = [x % p for x in acc]
    return tuple(acc)


def build_algebra(variables: Sequence[str], ideal_generators: Sequence[Poly], ctx: FieldCtx) -> LocalAlgebra:
    """Quotient of k[variables] by the ideal, checked finite-dimensional and local."""
    variables = tuple(variables)
    nvars = len(variables)
    if len(set(variables)) != nvars:
        raise ValueError("repeated variable name")
    for g in ideal_generators:
        if g.nvars != nvars or g.ctx != ctx:
            raise ValueError("generator not in the declared polynomial ring")
        if (0,) * nvars in g.terms:
            raise ValueError(f"generator {g.to_str(variables)} has a constant term")
    gb = buchberger(ideal_generators, variables)
    basis = tuple(quotient_monomial_basis(gb))
    mult = multiplication_table(gb, basis)
    n = len(basis)
    # left[i][r][c] = coefficient of basis[r] in basis[i] * basis[c]
    left = tuple(
        tuple(tuple(mult[i][c][r] for c in range(n)) for r in range(n)) for i in range(n)
    )
    index = {m: i for i, m in enumerate(basis)}
    var_vectors = []
    for t in range(nvars):
        nf = normal_form(Poly.variable(t, ctx, nvars), gb)
        v = [ctx.zero] * n
        for m, c in nf.terms.items():
            v[index[m]] = c
        var_vectors.append(tuple(v))

    A = LocalAlgebra(ctx, variables, basis, tuple(tuple(r) for r in mult), gb,
                     tuple(var_vectors), 0, left)
    var_mul = tuple(tuple(tuple(row) for row in A.mul_matrix(v)) for v in var_vectors)
    object.__setattr__(A, "var_mul", var_mul)
    for t, M in enumerate(var_mul):
        if not _is_nilpotent(M, ctx):
            raise NotLocal(f"{variables[t]} is not nilpotent in the quotient")
    N = _nilpotency_degree(A)
    object.__setattr__(A, "nilpotency_degree", N)
    return A


def _is_nilpotent(M, ctx) -> bool:
    n = len(M)
    P = M
    for _ in range(n):
        if all(x == 0 for row in P for x in row):
            return True
        P = matmul_rows(P, M, n, ctx)
    return all(x == 0 for row in P for x in row)


def power_of_maximal_ideal(A: LocalAlgebra, k: int) -> list[list]:
    """Row-reduced spanning set of m^k."""
    rows = [list(A.unit_vector(i)) for i in A.m_indices]
    rows, _ = rref_rows(rows, A.dim, A.ctx)
    for _ in range(k - 1):
        nxt = [list(multiply(A, r, v)) for r in rows for v in A.var_vectors]
        rows, _ = rref_rows(nxt, A.dim, A.ctx)
        if not rows:
            break
    return rows


def _nilpotency_degree(A: LocalAlgebra) -> int:
    N = 1
    rows = power_of_maximal_ideal(A, 1)
    while rows:
        N += 1
        nxt = [list(multiply(A, r, v)) for r in rows for v in A.var_vectors]
        rows, _ = rref_rows(nxt, A.dim, A.ctx)
    return N


def socle(A: LocalAlgebra) -> list[tuple]:
    """k-basis of the annihilator of the maximal ideal."""
    stacked = []
    for v in A.var_vectors:
        stacked.extend(A.mul_matrix(v))
    vecs, _ = kernel_rows(stacked, A.dim, A.ctx)
    return [tuple(v) for v in vecs]


def is_gorenstein(A: LocalAlgebra) -> bool:
    return len(socle(A)) == 1


def check_algebra_laws(A: LocalAlgebra) -> bool:
    """Full scan of unitality, commutativity and associativity on basis triples."""
    n = A.dim
    e = [A.unit_vector(i) for i in range(n)]
    for i in range(n):
        if multiply(A, A.one, e[i]) != e[i]:
            return False
        for j in range(n):
            if A.mult[i][j] != A.mult[j][i]:
                return False
            for k in range(n):
                if multiply(A, A.mult[i][j], e[k]) != multiply(A, e[i], A.mult[j][k]):
                    return False
    return True


def maximal_ideal_rank(A: LocalAlgebra, k: int) -> int:
    return rank_rows(power_of_maximal_ideal(A, k), A.dim, A.ctx) if k >= 1 else A.dim

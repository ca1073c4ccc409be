"""Exact scalars (rationals, prime fields) and dense linear algebra over them.

Field elements are plain Python values: ``int`` in ``range(p)`` for a prime
field and ``gmpy2.mpq`` for the rationals.  ``mpq`` is always stored reduced
with a positive denominator, so no normalisation pass is needed.

Most of the package works on row lists (``list[list[element]]``) for speed;
:class:`Matrix` is the immutable public carrier.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from gmpy2 import mpq

__all__ = [
    "FieldCtx",
    "Matrix",
    "rref",
    "rank",
    "kernel_basis",
    "solve_linear",
    "rref_rows",
    "kernel_rows",
    "rank_rows",
]

# products of two residues must fit in int64 for the numpy path
_NUMPY_PRIME_LIMIT = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldCtx:
    """The coefficient field: ``p=None`` means the rationals, else F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    @classmethod
    def rationals(cls) -> FieldCtx:
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> FieldCtx:
        return cls(int(p))

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def zero(self):
        return 0 if self.p is not None else mpq(0)

    @property
    def one(self):
        return 1 if self.p is not None else mpq(1)

    def __call__(self, x):
        """Coerce an int, Fraction, mpq or string like ``"3/4"`` into the field."""
        if self.p is not None:
            if isinstance(x, str):
                x = Fraction(x)
            if isinstance(x, int):
                return x % self.p
            q = mpq(x)
            num, den = int(q.numerator), int(q.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return num * pow(den, -1, self.p) % self.p
        if isinstance(x, str):
            return mpq(Fraction(x))
        return mpq(x)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is not None:
            return pow(a, -1, self.p)
        return 1 / a

    def add(self, a, b):
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a, b):
        return a * b % self.p if self.p is not None else a * b

    def neg(self, a):
        return -a % self.p if self.p is not None else -a

    def pow(self, a, e: int):
        if self.p is not None:
            return pow(a, e, self.p)
        return a**e

    def contains(self, a) -> bool:
        if self.p is not None:
            return isinstance(a, int) and 0 <= a < self.p
        return type(a) is type(mpq(0))

    def random_element(self, rng: random.Random, bound: int = 5):
        """Uniform over F_p; over QQ a small integer in [-bound, bound]."""
        if self.p is not None:
            return rng.randrange(self.p)
        return mpq(rng.randint(-bound, bound))

    def fmt(self, a) -> str:
        return str(int(a)) if self.p is not None else str(a)

    def multiplicative_order(self, a) -> int | None:
        """Order of ``a`` in the unit group; ``None`` when infinite."""
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        if self.p is None:
            if a == 1:
                return 1
            return 2 if a == -1 else None
        x, n = a, 1
        while x != 1:
            x = x * a % self.p
            n += 1
        return n

    def element_of_order(self, n: int):
        """Smallest residue of exact multiplicative order ``n`` (prime fields only)."""
        if self.p is None:
            raise ValueError("QQ has units of order 1 and 2 only")
        for a in range(1, self.p):
            if self.multiplicative_order(a) == n:
                return a
        raise ValueError(f"GF({self.p}) has no element of order {n}")

    def __str__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


# ---------------------------------------------------------------------------
# row-list kernels


def rref_rows(rows: Sequence[Sequence], ncols: int, ctx: FieldCtx):
    """Reduced row echelon form of a row list.

    Returns ``(nonzero_rows, pivots)``; the input is not modified.
    """
    if not rows or ncols == 0:
        return [], []
    p = ctx.p
    if p is not None and p < _NUMPY_PRIME_LIMIT:
        return _rref_modp(rows, ncols, p)
    return _rref_python(rows, ncols, ctx)


def _rref_modp(rows, ncols, p):
    A = np.array(rows, dtype=np.int64).reshape(len(rows), ncols) % p
    nrows = A.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = A[r, c:] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[np.ix_(hit, np.arange(c, ncols))] = (
                A[np.ix_(hit, np.arange(c, ncols))] - np.outer(col[hit], A[r, c:])
            ) % p
        pivots.append(c)
        r += 1
    return [[int(v) for v in A[i]] for i in range(r)], pivots


def _rref_python(rows, ncols, ctx):
    p = ctx.p
    A = [list(row) for row in rows]
    nrows = len(A)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        i = r
        while i < nrows and A[i][c] == 0:
            i += 1
        if i == nrows:
            continue
        A[r], A[i] = A[i], A[r]
        prow = A[r]
        inv = ctx.inv(prow[c])
        support = [j for j in range(c, ncols) if prow[j] != 0]
        if p is None:
            for j in support:
                prow[j] = prow[j] * inv
        else:
            for j in support:
                prow[j] = prow[j] * inv % p
        for k in range(nrows):
            if k == r:
                continue
            row = A[k]
            f = row[c]
            if f == 0:
                continue
            if p is None:
                for j in support:
                    row[j] = row[j] - f * prow[j]
            else:
                for j in support:
                    row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_rows(rows, ncols, ctx) -> int:
    return len(rref_rows(rows, ncols, ctx)[1])


def kernel_rows(rows, ncols, ctx):
    """Basis of the right null space, one vector per entry of the result.

    Vector ``t`` has a 1 in the ``t``-th free column and 0 in the other free
    columns, so its coordinates with respect to this basis are read off the
    free columns.  Returns ``(vectors, free_columns)``.
    """
    R, pivots = rref_rows(rows, ncols, ctx)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    zero, one = ctx.zero, ctx.one
    out = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(R, pivots):
            a = row[f]
            if a != 0:
                v[pc] = ctx.neg(a)
        out.append(v)
    return out, free


# ---------------------------------------------------------------------------
# public matrix type


class Matrix:
    """Immutable dense matrix over a :class:`FieldCtx`."""

    __slots__ = ("rows", "cols", "ctx", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable, ctx: FieldCtx):
        data = tuple(ctx(e) for e in entries)
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        self.rows, self.cols, self.ctx = rows, cols, ctx
        self._data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ctx: FieldCtx, cols: int | None = None) -> Matrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        flat = [e for row in rows for e in row]
        return cls(len(rows), cols, flat, ctx)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], ctx: FieldCtx, rows: int | None = None) -> Matrix:
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], ctx, cols=len(columns))

    @classmethod
    def identity(cls, n: int, ctx: FieldCtx) -> Matrix:
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)], ctx)

    @classmethod
    def zeros(cls, rows: int, cols: int, ctx: FieldCtx) -> Matrix:
        return cls(rows, cols, [0] * (rows * cols), ctx)

    @property
    def entries(self) -> tuple:
        return self._data

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self._data[i * self.cols : (i + 1) * self.cols])

    def column(self, j: int) -> list:
        return [self._data[i * self.cols + j] for i in range(self.rows)]

    def tolist(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> Matrix:
        return Matrix.from_rows(self.columns(), self.ctx, cols=self.rows)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return Matrix.from_rows(matmul_rows(self.tolist(), other.tolist(), other.cols, self.ctx),
                                self.ctx, cols=other.cols)

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return matvec(self.tolist(), v, self.ctx)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self._data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.ctx, self._data) == (other.rows, other.cols, other.ctx, other._data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.ctx, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(self.ctx.fmt(e) for e in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols} over {self.ctx}: [{body}])"


def matmul_rows(A, B, bcols: int, ctx: FieldCtx):
    p = ctx.p
    out = []
    for arow in A:
        acc = [ctx.zero] * bcols
        for k, a in enumerate(arow):
            if a == 0:
                continue
            brow = B[k]
            for j in range(bcols):
                b = brow[j]
                if b != 0:
                    acc[j] = acc[j] + a * b
        if p is not None:
            acc = [x % p for x in acc]
        out.append(acc)
    return out


def matvec(A, v, ctx: FieldCtx) -> list:
    p = ctx.p
    out = []
    for row in A:
        s = ctx.zero
        for a, x in zip(row, v):
            if a != 0 and x != 0:
                s = s + a * x
        out.append(s % p if p is not None else s)
    return out


def rref(A: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns (zero rows kept)."""
    R, pivots = rref_rows(A.tolist(), A.cols, A.ctx)
    R = R + [[A.ctx.zero] * A.cols for _ in range(A.rows - len(R))]
    return Matrix.from_rows(R, A.ctx, cols=A.cols), len(pivots), pivots


def rank(A: Matrix) -> int:
    return rank_rows(A.tolist(), A.cols, A.ctx)


def kernel_basis(A: Matrix) -> Matrix:
    """Columns span the right null space of ``A``."""
    vecs, _ = kernel_rows(A.tolist(), A.cols, A.ctx)
    return Matrix.from_columns(vecs, A.ctx, rows=A.cols)


def solve_linear(A: Matrix, b: Sequence) -> list | None:
    """Particular solution of ``A x = b`` with free variables 0, or ``None``."""
    if len(b) != A.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.rows}")
    ctx = A.ctx
    aug = [row + [ctx(bi)] for row, bi in zip(A.tolist(), b)]
    R, pivots = rref_rows(aug, A.cols + 1, ctx)
    if pivots and pivots[-1] == A.cols:
        return None
    x = [ctx.zero] * A.cols
    for row, pc in zip(R, pivots):
        x[pc] = row[A.cols]
    return x

"""Finitely presented modules over a :class:`LocalAlgebra`.

A module is ``A^g / image(P)`` for a ``g x r`` matrix ``P`` of algebra
elements.  Every module carries its k-linear realization, computed at
construction: a basis of the quotient together with the action matrices of
the algebra basis elements.

Vectors of the free module ``A^g`` are flattened to ``k^(g*n)`` with
coordinate ``j*n + l`` standing for ``b_l * e_j``.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import LocalAlgebra, multiply
from .exactmath import kernel_rows, matmul_rows, matvec, rank_rows, rref_rows

__all__ = [
    "FPModule",
    "Realization",
    "HomBasis",
    "IsoVerdict",
    "IsoResult",
    "realize",
    "hom_basis",
    "dual",
    "matlis_dual",
    "present_from_realization",
    "minimal_presentation",
    "syzygy",
    "is_isomorphic",
    "direct_sum",
    "free_module",
    "residue_field",
    "cover_kernel",
    "minimal_generators_of_submodule",
    "algebra_matrix_to_k",
]


# ---------------------------------------------------------------------------
# small linear helpers


class Echelon:
    """Incrementally grown row echelon form, used to pick complements."""

    def __init__(self, ncols: int, ctx):
        self.ncols, self.ctx = ncols, ctx
        self.rows: dict[int, list] = {}

    def reduce(self, v: Sequence) -> list:
        w = list(v)
        p = self.ctx.p
        for pc in sorted(self.rows):
            c = w[pc]
            if c == 0:
                continue
            row = self.rows[pc]
            for j in range(pc, self.ncols):
                if row[j] != 0:
                    w[j] = w[j] - c * row[j]
                    if p is not None:
                        w[j] %= p
        return w

    def add(self, v: Sequence) -> bool:
        """Add ``v`` to the span; returns False when it was already inside."""
        w = self.reduce(v)
        for j, c in enumerate(w):
            if c != 0:
                inv = self.ctx.inv(c)
                self.rows[j] = [self.ctx.mul(x, inv) for x in w]
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)


def _transpose(M: Sequence[Sequence], nrows: int, ncols: int) -> list[list]:
    return [[M[i][j] for i in range(nrows)] for j in range(ncols)]


def _lin_comb(ctx, coeffs, mats, nrows, ncols) -> list[list]:
    out = [[ctx.zero] * ncols for _ in range(nrows)]
    for c, M in zip(coeffs, mats):
        if c == 0:
            continue
        for i in range(nrows):
            Mi, oi = M[i], out[i]
            for j in range(ncols):
                if Mi[j] != 0:
                    oi[j] = oi[j] + c * Mi[j]
    if ctx.p is not None:
        out = [[x % ctx.p for x in row] for row in out]
    return out


def _is_zero_rows(M) -> bool:
    return all(x == 0 for row in M for x in row)


def algebra_element_action(A: LocalAlgebra, action: Sequence, a: Sequence, dim: int) -> list[list]:
    """Matrix of the algebra element ``a`` given the basis-element actions."""
    return _lin_comb(A.ctx, a, action, dim, dim)


def _block_mul(A: LocalAlgebra, L: Sequence[Sequence], w: Sequence, nblocks: int) -> list:
    """Apply the n x n matrix ``L`` to every block of a flattened ``A^g`` vector."""
    n = A.dim
    out = []
    for j in range(nblocks):
        out.extend(matvec(L, w[j * n:(j + 1) * n], A.ctx))
    return out


def algebra_matrix_to_k(A: LocalAlgebra, D: Sequence[Sequence], nrows: int, ncols: int) -> list[list]:
    """k-matrix (``nrows*n x ncols*n``) of the A-linear map ``A^ncols -> A^nrows``."""
    n, ctx = A.dim, A.ctx
    K = [[ctx.zero] * (ncols * n) for _ in range(nrows * n)]
    for i in range(nrows):
        for c in range(ncols):
            a = D[i][c]
            if all(x == 0 for x in a):
                continue
            for l in range(n):
                col = multiply(A, a, A.unit_vector(l)) if l else a
                for r in range(n):
                    if col[r] != 0:
                        K[i * n + r][c * n + l] = col[r]
    return K


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True, eq=False)
class Realization:
    """k-linear model of a module.

    ``action[i]`` is the ``kdim x kdim`` matrix of ``basis[i]`` of the algebra,
    ``projection`` maps ``k^(g*n)`` onto the module coordinates and
    ``generator_images`` holds the images of the presentation generators.
    """

    kdim: int
    ngens: int
    free_coords: tuple[int, ...]
    action: tuple
    projection: tuple = field(repr=False)
    generator_images: tuple = field(repr=False)
    rel_rows: tuple = field(repr=False, default=())
    rel_pivots: tuple = field(repr=False, default=())

    def var_action(self, A: LocalAlgebra) -> list[list[list]]:
        return [algebra_element_action(A, self.action, v, self.kdim) for v in A.var_vectors]

    def project(self, ctx, v: Sequence) -> list:
        w = list(v)
        p = ctx.p
        for row, pc in zip(self.rel_rows, self.rel_pivots):
            c = w[pc]
            if c == 0:
                continue
            for j, x in enumerate(row):
                if x != 0:
                    w[j] = w[j] - c * x
        out = [w[f] for f in self.free_coords]
        return [x % p for x in out] if p is not None else out


class FPModule:
    """Cokernel of a ``g x r`` matrix over the algebra.

    ``presentation[j][c]`` is an algebra element (coordinate tuple).
    """

    __slots__ = ("algebra", "presentation", "ngens", "nrels", "realization")

    def __init__(self, algebra: LocalAlgebra, presentation: Sequence[Sequence[Sequence]],
                 ngens: int | None = None, nrels: int | None = None):
        pres = tuple(tuple(tuple(algebra.ctx(x) for x in a) for a in row) for row in presentation)
        g = len(pres) if ngens is None else ngens
        r = (len(pres[0]) if pres else 0) if nrels is None else nrels
        if len(pres) != g and not (g == 0 and not pres):
            raise ValueError(f"presentation has {len(pres)} rows, expected {g}")
        for row in pres:
            if len(row) != r:
                raise ValueError("ragged presentation matrix")
            for a in row:
                if len(a) != algebra.dim:
                    raise ValueError("presentation entry is not an algebra element")
        self.algebra = algebra
        self.presentation = pres
        self.ngens, self.nrels = g, r
        self.realization = _realize(algebra, pres, g, r)

    @property
    def kdim(self) -> int:
        return self.realization.kdim

    def is_zero(self) -> bool:
        return self.kdim == 0

    def is_minimal(self) -> bool:
        return all(a[0] == 0 for row in self.presentation for a in row)

    def var_action(self) -> list[list[list]]:
        return self.realization.var_action(self.algebra)

    def num_generators(self) -> int:
        """``dim M/mM``, the minimal number of generators."""
        return self.kdim - _rank_of_m_times(self.algebra, self.var_action(), self.kdim)

    def is_free(self) -> bool:
        return self.kdim == self.num_generators() * self.algebra.dim

    def format(self) -> str:
        A = self.algebra
        rows = ["[" + ", ".join(A.format_element(a) for a in row) + "]" for row in self.presentation]
        return "coker [" + ", ".join(rows) + "]"

    def __repr__(self):
        return f"FPModule({self.ngens}x{self.nrels}, kdim={self.kdim})"


def _rank_of_m_times(A: LocalAlgebra, var_action, kdim: int) -> int:
    if kdim == 0:
        return 0
    rows = [col for M in var_action for col in _transpose(M, kdim, kdim)]
    return rank_rows(rows, kdim, A.ctx)


def _realize(A: LocalAlgebra, pres, g: int, r: int) -> Realization:
    n, ctx = A.dim, A.ctx
    total = g * n
    spanning = []
    for c in range(r):
        col = [pres[j][c] for j in range(g)]
        if all(all(x == 0 for x in a) for a in col):
            continue
        for l in range(n):
            v = []
            for a in col:
                v.extend(multiply(A, a, A.unit_vector(l)) if l else a)
            spanning.append(v)
    R, pivots = rref_rows(spanning, total, ctx)
    pivset = set(pivots)
    free = tuple(j for j in range(total) if j not in pivset)
    rz = Realization(len(free), g, free, (), (), (), tuple(tuple(row) for row in R), tuple(pivots))
    kdim = len(free)
    projection = _transpose([rz.project(ctx, _unit(ctx, total, j)) for j in range(total)], total, kdim) \
        if kdim else ()
    # action of basis element i on module basis vector (j, l): e_j * (b_l b_i)
    action = []
    for i in range(n):
        cols = []
        for f in free:
            j, l = divmod(f, n)
            v = [ctx.zero] * total
            v[j * n:(j + 1) * n] = A.mult[l][i]
            cols.append(rz.project(ctx, v))
        action.append(tuple(tuple(row) for row in _transpose(cols, kdim, kdim)))
    gen_images = tuple(tuple(projection[q][j * n] for q in range(kdim)) for j in range(g)) if kdim else \
        tuple(() for _ in range(g))
    return Realization(kdim, g, free, tuple(action), tuple(tuple(row) for row in projection),
                       gen_images, rz.rel_rows, rz.rel_pivots)


def _unit(ctx, n, j):
    v = [ctx.zero] * n
    v[j] = ctx.one
    return v


def realize(M: FPModule) -> Realization:
    return M.realization


def free_module(A: LocalAlgebra, rank: int) -> FPModule:
    return FPModule(A, [[] for _ in range(rank)], ngens=rank, nrels=0)


def zero_module(A: LocalAlgebra) -> FPModule:
    return FPModule(A, [], ngens=0, nrels=0)


def residue_field(A: LocalAlgebra) -> FPModule:
    """``k = A/m`` presented by the row of variables."""
    return FPModule(A, [list(A.var_vectors)])


def direct_sum(M: FPModule, N: FPModule) -> FPModule:
    A = _same_algebra(M, N)
    z = A.zero
    rows = [list(row) + [z] * N.nrels for row in M.presentation]
    rows += [[z] * M.nrels + list(row) for row in N.presentation]
    return FPModule(A, rows, ngens=M.ngens + N.ngens, nrels=M.nrels + N.nrels)


def _same_algebra(M: FPModule, N: FPModule) -> LocalAlgebra:
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    return M.algebra


# ---------------------------------------------------------------------------
# covers, kernels, presentations


def minimal_generators_of_submodule(A: LocalAlgebra, basis: Sequence[Sequence], nblocks: int) -> list[list]:
    """Minimal generators of the submodule of ``A^nblocks`` with k-basis ``basis``.

    Picks, in order, basis vectors independent modulo ``m * submodule``.
    """
    if not basis:
        return []
    ech = Echelon(nblocks * A.dim, A.ctx)
    for v in basis:
        for L in A.var_mul:
            ech.add(_block_mul(A, L, v, nblocks))
    gens = []
    for v in basis:
        if ech.add(v):
            gens.append(list(v))
    return gens


def _split_blocks(A: LocalAlgebra, v: Sequence, nblocks: int) -> list[tuple]:
    n = A.dim
    return [tuple(v[j * n:(j + 1) * n]) for j in range(nblocks)]


def columns_to_algebra_matrix(A: LocalAlgebra, columns: Sequence[Sequence], nblocks: int) -> list[list]:
    cols = [_split_blocks(A, v, nblocks) for v in columns]
    return [[cols[c][j] for c in range(len(cols))] for j in range(nblocks)]


def cover_kernel(A: LocalAlgebra, kdim: int, action: Sequence) -> tuple[int, list[list], list[list]]:
    """Minimal free cover ``A^g -> V`` of a module given by basis-element actions.

    Returns ``(g, surjection, kernel_basis)`` where the surjection is the
    ``kdim x g*n`` k-matrix and the kernel basis consists of vectors of ``k^(g*n)``.
    """
    ctx, n = A.ctx, A.dim
    if kdim == 0:
        return 0, [], []
    var_action = [algebra_element_action(A, action, v, kdim) for v in A.var_vectors]
    m_rows = [col for M in var_action for col in _transpose(M, kdim, kdim)]
    _, pivots = rref_rows(m_rows, kdim, ctx)
    pivset = set(pivots)
    gens = [c for c in range(kdim) if c not in pivset]
    g = len(gens)
    # column (j, l) = action(b_l) applied to e_{gens[j]}
    cols = []
    for c in gens:
        for l in range(n):
            cols.append([action[l][r][c] for r in range(kdim)])
    S = _transpose(cols, g * n, kdim)
    kernel, _ = kernel_rows(S, g * n, ctx)
    return g, S, kernel


def check_action_laws(A: LocalAlgebra, kdim: int, var_action: Sequence) -> bool:
    """Variables commute and every Gröbner generator acts as zero."""
    ctx = A.ctx
    for X, Y in itertools.combinations(var_action, 2):
        if matmul_rows(X, Y, kdim, ctx) != matmul_rows(Y, X, kdim, ctx):
            return False
    for g in A.gb.generators:
        acc = [[ctx.zero] * kdim for _ in range(kdim)]
        for mono, c in g.terms.items():
            P = [_unit(ctx, kdim, i) for i in range(kdim)]
            for t, e in enumerate(mono):
                for _ in range(e):
                    P = matmul_rows(P, var_action[t], kdim, ctx)
            acc = _lin_comb(ctx, [ctx.one, c], [acc, P], kdim, kdim)
        if not _is_zero_rows(acc):
            return False
    return True


def basis_action_from_vars(A: LocalAlgebra, kdim: int, var_action: Sequence) -> list[list[list]]:
    ctx = A.ctx
    out = []
    for mono in A.basis:
        P = [_unit(ctx, kdim, i) for i in range(kdim)]
        for t, e in enumerate(mono):
            for _ in range(e):
                P = matmul_rows(P, var_action[t], kdim, ctx)
        out.append(P)
    return out


def present_from_realization(A: LocalAlgebra, kdim: int, var_action: Sequence,
                             check: bool = True) -> FPModule:
    """Minimal presentation of the module ``k^kdim`` with the given variable actions."""
    if check and not check_action_laws(A, kdim, var_action):
        raise ValueError("action matrices violate the algebra relations")
    if kdim == 0:
        return zero_module(A)
    action = basis_action_from_vars(A, kdim, var_action)
    g, _, kernel = cover_kernel(A, kdim, action)
    gens = minimal_generators_of_submodule(A, kernel, g)
    return FPModule(A, columns_to_algebra_matrix(A, gens, g), ngens=g, nrels=len(gens))


def minimal_presentation(M: FPModule) -> FPModule:
    rz = M.realization
    return present_from_realization(M.algebra, rz.kdim, rz.var_action(M.algebra), check=False)


def syzygy(M: FPModule, n: int = 1) -> FPModule:
    """``Omega^n M`` as the cokernel of the next differential of a minimal resolution."""
    if n < 0:
        raise ValueError("syzygy index must be nonnegative")
    if n == 0:
        return M
    from .resolution import minimal_free_resolution

    res = minimal_free_resolution(M, n + 1)
    return res.syzygy_module(n)


# ---------------------------------------------------------------------------
# Hom


@dataclass(frozen=True, eq=False)
class HomBasis:
    """k-basis of Hom_A(source, target) as ``kdim(target) x kdim(source)`` matrices.

    ``images[t]`` lists the images of the source generators under map ``t``.
    """

    source: FPModule
    target: FPModule
    basis: tuple
    images: tuple = field(repr=False)
    free_coords: tuple = field(repr=False, default=())

    def __len__(self):
        return len(self.basis)

    def combination(self, coeffs: Sequence) -> list[list]:
        t, s = self.target.kdim, self.source.kdim
        return _lin_comb(self.source.algebra.ctx, coeffs, self.basis, t, s)


def hom_system(A: LocalAlgebra, D: Sequence[Sequence], nrows: int, ncols: int,
               target_action: Sequence, tdim: int) -> list[list]:
    """Matrix of ``Hom(A^nrows, N) -> Hom(A^ncols, N)``, precomposition with ``D``.

    Unknowns are the images of the ``nrows`` generators stacked; the block in
    position (c, j) is the action of ``D[j][c]`` on ``N``.
    """
    ctx = A.ctx
    out = [[ctx.zero] * (nrows * tdim) for _ in range(ncols * tdim)]
    cache: dict = {}
    for c in range(ncols):
        for j in range(nrows):
            a = D[j][c]
            if all(x == 0 for x in a):
                continue
            if a not in cache:
                cache[a] = algebra_element_action(A, target_action, a, tdim)
            blk = cache[a]
            for r in range(tdim):
                row = out[c * tdim + r]
                br = blk[r]
                for q in range(tdim):
                    if br[q] != 0:
                        row[j * tdim + q] = br[q]
    return out


def hom_basis(M: FPModule, N: FPModule) -> HomBasis:
    """k-basis of Hom_A(M, N) computed from the presentation of ``M``."""
    A = _same_algebra(M, N)
    ctx, n = A.ctx, A.dim
    tdim, g = N.kdim, M.ngens
    act = N.realization.action
    system = hom_system(A, M.presentation, g, M.nrels, act, tdim)
    if g * tdim == 0:
        return HomBasis(M, N, (), ())
    if system:
        sols, free = kernel_rows(system, g * tdim, ctx)
    else:
        sols = [_unit(ctx, g * tdim, i) for i in range(g * tdim)]
        free = list(range(g * tdim))
    mats, images = [], []
    for y in sols:
        ys = [y[j * tdim:(j + 1) * tdim] for j in range(g)]
        cols = []
        for f in M.realization.free_coords:
            j, l = divmod(f, n)
            cols.append(matvec(act[l], ys[j], ctx))
        mats.append(tuple(tuple(row) for row in _transpose(cols, M.kdim, tdim)))
        images.append(tuple(tuple(v) for v in ys))
    return HomBasis(M, N, tuple(mats), tuple(images), tuple(free))


def dual(M: FPModule) -> FPModule:
    """``Hom_A(M, A)`` with a minimal presentation."""
    A = M.algebra
    R = free_module(A, 1)
    H = hom_basis(M, R)
    h = len(H)
    if h == 0:
        return zero_module(A)
    free = H.free_coords
    var_action = []
    for L in A.var_mul:
        cols = []
        for ys in H.images:
            moved = [x for y in ys for x in matvec(L, y, A.ctx)]
            cols.append([moved[f] for f in free])
        var_action.append(_transpose(cols, h, h))
    return present_from_realization(A, h, var_action, check=False)


def matlis_dual(M: FPModule) -> FPModule:
    """``Hom_k(M, k)``; the dual of ``A`` itself is the injective hull of ``k``."""
    d = M.kdim
    var_action = [_transpose(X, d, d) for X in M.var_action()]
    return present_from_realization(M.algebra, d, var_action, check=False)


# ---------------------------------------------------------------------------
# isomorphism


class IsoVerdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class IsoResult:
    verdict: IsoVerdict
    witness: tuple | None = None
    reason: str = ""

    def __bool__(self):
        return self.verdict is IsoVerdict.YES


def loewy_profile(M: FPModule) -> tuple[int, ...]:
    """``(dim m^0 M, dim m^1 M, ...)`` down to zero: an isomorphism invariant."""
    A, ctx, d = M.algebra, M.algebra.ctx, M.kdim
    var_action = M.var_action()
    rows = [_unit(ctx, d, i) for i in range(d)]
    dims = [d]
    while rows:
        nxt = [matvec(X, v, ctx) for v in rows for X in var_action]
        rows, _ = rref_rows(nxt, d, ctx)
        dims.append(len(rows))
    return tuple(dims)


def socle_dimension(M: FPModule) -> int:
    d = M.kdim
    if d == 0:
        return 0
    stacked = [row for X in M.var_action() for row in X]
    return d - rank_rows(stacked, d, M.algebra.ctx)


def is_module_homomorphism(M: FPModule, N: FPModule, f: Sequence[Sequence]) -> bool:
    ctx = M.algebra.ctx
    for X, Y in zip(M.var_action(), N.var_action()):
        if matmul_rows(f, X, M.kdim, ctx) != matmul_rows(Y, f, M.kdim, ctx):
            return False
    return True


def verify_isomorphism(M: FPModule, N: FPModule, f: Sequence[Sequence]) -> bool:
    if M.kdim != N.kdim or len(f) != N.kdim:
        return False
    if M.kdim == 0:
        return True
    return (rank_rows([list(r) for r in f], M.kdim, M.algebra.ctx) == M.kdim
            and is_module_homomorphism(M, N, f))


def is_isomorphic(M: FPModule, N: FPModule, seed: int = 0, trials: int = 32) -> IsoResult:
    """Monte Carlo isomorphism test; YES carries a re-verified witness.

    NO comes from invariant mismatches, from an empty Hom space, or from an
    exhaustive search of a small Hom space over a small prime field.
    """
    A = _same_algebra(M, N)
    ctx = A.ctx
    if M.kdim != N.kdim:
        return IsoResult(IsoVerdict.NO, reason=f"k-dimensions differ ({M.kdim} vs {N.kdim})")
    if M.kdim == 0:
        return IsoResult(IsoVerdict.YES, witness=())
    gm, gn = M.num_generators(), N.num_generators()
    if gm != gn:
        return IsoResult(IsoVerdict.NO, reason=f"minimal generator counts differ ({gm} vs {gn})")
    lm, ln = loewy_profile(M), loewy_profile(N)
    if lm != ln:
        return IsoResult(IsoVerdict.NO, reason=f"radical layer dimensions differ ({lm} vs {ln})")
    sm, sn = socle_dimension(M), socle_dimension(N)
    if sm != sn:
        return IsoResult(IsoVerdict.NO, reason=f"socle dimensions differ ({sm} vs {sn})")

    H = hom_basis(M, N)
    h = len(H)
    if h == 0:
        return IsoResult(IsoVerdict.NO, reason="Hom(M, N) = 0")
    rng = random.Random(seed)
    d = M.kdim
    for _ in range(trials):
        coeffs = [ctx.random_element(rng) for _ in range(h)]
        f = H.combination(coeffs)
        if rank_rows(f, d, ctx) == d:
            if verify_isomorphism(M, N, f):
                return IsoResult(IsoVerdict.YES, witness=tuple(tuple(r) for r in f))
    if ctx.p is not None and h <= 3 and ctx.p <= 7:
        for coeffs in itertools.product(range(ctx.p), repeat=h):
            f = H.combination(coeffs)
            if rank_rows(f, d, ctx) == d and verify_isomorphism(M, N, f):
                return IsoResult(IsoVerdict.YES, witness=tuple(tuple(r) for r in f))
        return IsoResult(IsoVerdict.NO, reason=f"exhaustive search of Hom (dim {h}) found no invertible map")
    return IsoResult(IsoVerdict.UNKNOWN, reason=f"{trials} random elements of Hom (dim {h}) not invertible")

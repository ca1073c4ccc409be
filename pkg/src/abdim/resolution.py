"""Minimal free resolutions, periodicity detection and complete resolutions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import LocalAlgebra, multiply
from .exactmath import kernel_rows, rank_rows
from .fpmodule import (
    FPModule,
    IsoResult,
    IsoVerdict,
    algebra_matrix_to_k,
    columns_to_algebra_matrix,
    cover_kernel,
    is_isomorphic,
    minimal_generators_of_submodule,
)

__all__ = [
    "FreeResolution",
    "PeriodicComplex",
    "SpotReport",
    "ComplexReport",
    "minimal_free_resolution",
    "detect_periodicity",
    "scan_periods",
    "verify_complete_resolution",
    "algebra_matmul",
]


@dataclass(frozen=True, eq=False)
class FreeResolution:
    """``... -> F_2 -d_2-> F_1 -d_1-> F_0 -> M``; ``differentials[i]`` is ``d_{i+1}``."""

    module: FPModule
    differentials: tuple
    betti: tuple[int, ...]
    minimal: bool = True

    @property
    def algebra(self) -> LocalAlgebra:
        return self.module.algebra

    @property
    def length(self) -> int:
        return len(self.differentials)

    def differential(self, i: int):
        """``d_i`` as a ``betti[i-1] x betti[i]`` matrix of algebra elements."""
        return self.differentials[i - 1]

    def syzygy_module(self, i: int) -> FPModule:
        """``Omega^i M = coker d_{i+1}``, minimally presented."""
        if i + 1 > self.length:
            raise ValueError(f"resolution too short for syzygy {i}")
        return FPModule(self.algebra, self.differentials[i], ngens=self.betti[i], nrels=self.betti[i + 1])

    def projective_dimension(self) -> int | None:
        """Projective dimension if the resolution stops within the computed range."""
        for i, b in enumerate(self.betti):
            if b == 0:
                return i - 1 if i else None
        return None


def minimal_free_resolution(M: FPModule, n: int) -> FreeResolution:
    """Betti numbers ``beta_0..beta_n`` and differentials ``d_1..d_n``."""
    if n < 0:
        raise ValueError("resolution length must be nonnegative")
    A = M.algebra
    ctx, dimA = A.ctx, A.dim
    rz = M.realization
    g, _, kernel = cover_kernel(A, rz.kdim, rz.action)
    betti = [g]
    diffs = []
    blocks = g
    for i in range(1, n + 1):
        gens = minimal_generators_of_submodule(A, kernel, blocks)
        r = len(gens)
        D = columns_to_algebra_matrix(A, gens, blocks) if blocks else []
        diffs.append(tuple(tuple(row) for row in D))
        betti.append(r)
        if i == n:
            break
        if r == 0:
            kernel, blocks = [], 0
            continue
        T = algebra_matrix_to_k(A, D, blocks, r)
        kernel, _ = kernel_rows(T, r * dimA, ctx)
        blocks = r
    return FreeResolution(M, tuple(diffs), tuple(betti))


def algebra_matmul(A: LocalAlgebra, X: Sequence[Sequence], Y: Sequence[Sequence]) -> list[list]:
    """Product of matrices with algebra entries."""
    rows = len(X)
    inner = len(Y)
    cols = len(Y[0]) if Y else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = A.zero
            for k in range(inner):
                acc = A.add(acc, multiply(A, X[i][k], Y[k][j]))
            row.append(acc)
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# periodicity


def scan_periods(M: FPModule, max_period: int = 12, seed: int = 0, trials: int = 32,
                 window: int | None = None, resolution: FreeResolution | None = None
                 ) -> dict[int, IsoResult]:
    """Isomorphism verdicts for ``Omega^p M`` vs ``M``, ``p = 1..max_period``.

    Candidates whose Betti sequence is not ``p``-periodic on the computed
    range (``window`` extra indices beyond ``max_period``) are rejected
    without an isomorphism test.
    """
    if max_period < 1:
        raise ValueError("max_period must be at least 1")
    extra = window if window is not None else 2
    need = max_period + 1 + extra
    res = resolution if resolution is not None and resolution.length >= need \
        else minimal_free_resolution(M, need)
    betti = res.betti
    out: dict[int, IsoResult] = {}
    for p in range(1, max_period + 1):
        if any(betti[i] != betti[i + p] for i in range(len(betti) - p)):
            out[p] = IsoResult(IsoVerdict.NO, reason="Betti sequence not periodic")
            continue
        out[p] = is_isomorphic(res.syzygy_module(p), M, seed=seed, trials=trials)
    return out


def detect_periodicity(M: FPModule, max_period: int = 12, window: int | None = None, seed: int = 0,
                       trials: int = 32, resolution: FreeResolution | None = None) -> int | None:
    """Smallest certified ``p`` with ``Omega^p M ~= M``.

    Unknown isomorphism verdicts count as failures, so a returned period is
    sound while ``None`` only means none was certified.
    """
    if M.is_zero():
        return None
    if max_period < 1:
        raise ValueError("max_period must be at least 1")
    extra = window if window is not None else 2
    res = resolution if resolution is not None and resolution.length >= max_period + 1 + extra \
        else minimal_free_resolution(M, max_period + 1 + extra)
    betti = res.betti
    for p in range(1, max_period + 1):
        if any(betti[i] != betti[i + p] for i in range(len(betti) - p)):
            continue
        if is_isomorphic(res.syzygy_module(p), M, seed=seed, trials=trials).verdict is IsoVerdict.YES:
            return p
    return None


# ---------------------------------------------------------------------------
# complete resolutions


@dataclass(frozen=True, eq=False)
class PeriodicComplex:
    """Differentials ``d_lo, d_lo+1, ...`` with ``d_i d_{i+1} = 0``.

    With ``period`` set, ``matrices`` holds ``d_0..d_{period-1}`` and the
    complex is doubly infinite with ``d_{i+period} = d_i``.  Without it the
    complex is the finite window ``d_lo..d_{lo+len-1}``.
    """

    algebra: LocalAlgebra
    matrices: tuple
    period: int | None = None
    lo: int = 0

    def d(self, i: int):
        if self.period is not None:
            return self.matrices[i % self.period]
        return self.matrices[i - self.lo]

    @property
    def hi(self) -> int:
        return self.lo + len(self.matrices) - 1


@dataclass(frozen=True)
class SpotReport:
    """Dimensions at the term between ``d_{index+1}`` and ``d_index``."""

    index: int
    term_dim: int
    kernel_dim: int
    image_dim: int
    dual_kernel_dim: int
    dual_image_dim: int
    composite_zero: bool

    @property
    def exact(self) -> bool:
        return self.kernel_dim == self.image_dim

    @property
    def dual_exact(self) -> bool:
        return self.dual_kernel_dim == self.dual_image_dim


@dataclass(frozen=True)
class ComplexReport:
    composites_zero: bool
    exact: bool
    dual_exact: bool
    spots: tuple[SpotReport, ...]
    failures: tuple[str, ...] = field(default=())

    def __bool__(self):
        return self.composites_zero and self.exact and self.dual_exact

    def to_dict(self) -> dict:
        return {
            "composites_zero": self.composites_zero,
            "exact": self.exact,
            "dual_exact": self.dual_exact,
            "failures": list(self.failures),
            "spots": [
                {
                    "index": s.index,
                    "term_dim": s.term_dim,
                    "kernel_dim": s.kernel_dim,
                    "image_dim": s.image_dim,
                    "dual_kernel_dim": s.dual_kernel_dim,
                    "dual_image_dim": s.dual_image_dim,
                }
                for s in self.spots
            ],
        }


def _shape(D) -> tuple[int, int]:
    return len(D), (len(D[0]) if D else 0)


def _transpose_alg(D):
    rows, cols = _shape(D)
    return [[D[i][j] for i in range(rows)] for j in range(cols)]


def verify_complete_resolution(C: PeriodicComplex) -> ComplexReport:
    """Check ``d_i d_{i+1} = 0``, exactness and exactness of ``Hom(C, A)``.

    A periodic complex is checked over one full period including the wrap;
    a windowed complex at every interior term.
    """
    A = C.algebra
    ctx, n = A.ctx, A.dim
    indices = range(C.period) if C.period is not None else range(C.lo, C.hi)
    rank_cache: dict = {}

    def k_rank(i, transposed):
        key = (i % C.period if C.period else i, transposed)
        if key not in rank_cache:
            D = C.d(i)
            if transposed:
                D = _transpose_alg(D)
            r, c = _shape(D)
            rank_cache[key] = rank_rows(algebra_matrix_to_k(A, D, r, c), c * n, ctx) if r and c else 0
        return rank_cache[key]

    spots, failures = [], []
    for i in indices:
        di, dnext = C.d(i), C.d(i + 1)
        (ri, ci), (rn, cn) = _shape(di), _shape(dnext)
        if ci != rn:
            raise ValueError(f"d_{i} has {ci} columns but d_{i + 1} has {rn} rows")
        comp = algebra_matmul(A, di, dnext)
        comp_zero = all(all(x == 0 for x in a) for row in comp for a in row)
        term = ci * n
        # the term F_i sits between d_{i+1} (in) and d_i (out)
        kernel = term - k_rank(i, False)
        image = k_rank(i + 1, False)
        # dual complex: F_i^* sits between d_i^T (in) and d_{i+1}^T (out)
        dual_kernel = term - k_rank(i + 1, True)
        dual_image = k_rank(i, True)
        spot = SpotReport(i, term, kernel, image, dual_kernel, dual_image, comp_zero)
        spots.append(spot)
        if not comp_zero:
            failures.append(f"d_{i} d_{i + 1} != 0")
        if not spot.exact:
            failures.append(f"not exact at spot {i}: kernel {kernel}, image {image}")
        if not spot.dual_exact:
            failures.append(f"dual not exact at spot {i}: kernel {dual_kernel}, image {dual_image}")
    return ComplexReport(
        composites_zero=all(s.composite_zero for s in spots),
        exact=all(s.exact for s in spots),
        dual_exact=all(s.dual_exact for s in spots),
        spots=tuple(spots),
        failures=tuple(failures),
    )

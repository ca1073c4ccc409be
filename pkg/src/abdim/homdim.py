"""Ext tables, the vanishing index P(M, N), total reflexivity and AB-dimension.

Everything here runs over an artinian local ring, so ``depth R`` and
``depth M`` are both 0 and every "depth R - depth M" in the theory is the
constant 0.  Two kinds of vanishing statement are distinguished throughout:

* *certified*: vanishing of ``Ext^i`` for all large ``i`` follows from a
  certified period ``Omega^p M ~= M`` (or a resolution that stops), and
* *window*: ``Ext^i`` was only seen to vanish on a finite window of indices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import is_gorenstein
from .exactmath import rank_rows
from .fpmodule import (
    FPModule,
    IsoVerdict,
    dual,
    free_module,
    hom_basis,
    hom_system,
    is_isomorphic,
    residue_field,
    syzygy,
)
from .resolution import FreeResolution, detect_periodicity, minimal_free_resolution

__all__ = [
    "ExtTable",
    "PKind",
    "PValue",
    "PerpKind",
    "PerpVerdict",
    "GdimKind",
    "GdimVerdict",
    "ABKind",
    "ABdimVerdict",
    "ABConfig",
    "ArcReport",
    "ext_table",
    "ext_dims",
    "ext1_via_hom",
    "p_value",
    "in_perp",
    "total_reflexivity",
    "g_dimension",
    "ab_dimension",
    "arc_check",
    "DEPTH_DIFFERENCE",
]

# depth R - depth M in the artinian regime
DEPTH_DIFFERENCE = 0


@dataclass(frozen=True)
class ExtTable:
    source: FPModule = field(repr=False)
    target: FPModule = field(repr=False)
    lo: int
    hi: int
    dims: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        if not self.lo <= i <= self.hi:
            raise IndexError(f"Ext^{i} outside computed range [{self.lo}, {self.hi}]")
        return self.dims[i - self.lo]

    def nonzero_indices(self) -> list[int]:
        return [self.lo + k for k, d in enumerate(self.dims) if d]


def ext_dims(res: FreeResolution, N: FPModule, lo: int, hi: int) -> list[int]:
    """``dim Ext^i(M, N)`` for ``lo <= i <= hi`` from a resolution of ``M``.

    ``Ext^i`` is the cohomology of ``Hom(F_i, N) = N^{beta_i}`` under
    precomposition with the differentials.
    """
    if not 0 <= lo <= hi:
        raise ValueError("need 0 <= lo <= hi")
    if res.length < hi + 1:
        raise ValueError(f"resolution has {res.length} differentials, need {hi + 1}")
    A = res.algebra
    if N.algebra is not A:
        raise ValueError("modules over different algebras")
    tdim, act, betti = N.kdim, N.realization.action, res.betti

    ranks: dict[int, int] = {}

    def coboundary_rank(i: int) -> int:
        # Hom(F_i, N) -> Hom(F_{i+1}, N)
        if i < 0 or betti[i] == 0 or betti[i + 1] == 0 or tdim == 0:
            return 0
        if i not in ranks:
            rows = hom_system(A, res.differentials[i], betti[i], betti[i + 1], act, tdim)
            ranks[i] = rank_rows(rows, betti[i] * tdim, A.ctx)
        return ranks[i]

    return [betti[i] * tdim - coboundary_rank(i) - coboundary_rank(i - 1) for i in range(lo, hi + 1)]


def ext_table(M: FPModule, N: FPModule, lo: int, hi: int, resolution: FreeResolution | None = None) -> ExtTable:
    res = resolution
    if res is None or res.length < hi + 1:
        res = minimal_free_resolution(M, hi + 1)
    return ExtTable(M, N, lo, hi, tuple(ext_dims(res, N, lo, hi)))


def ext1_via_hom(M: FPModule, N: FPModule) -> int:
    """``dim Ext^1(M, N)`` from ``0 -> Hom(M,N) -> Hom(F_0,N) -> Hom(Omega M,N) -> Ext^1 -> 0``."""
    g = M.num_generators()
    return len(hom_basis(syzygy(M, 1), N)) - (g * N.kdim - len(hom_basis(M, N)))


# ---------------------------------------------------------------------------
# P(M, N) and perp membership


class PKind(enum.Enum):
    MINUS_INFINITY = "-inf"
    VANISHES = "vanishes"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class PValue:
    """Outcome of computing ``sup {i : Ext^i(M, N) != 0}``.

    ``certified`` is ``"period"``, ``"finite-pd"`` or ``"window"`` for
    VANISHES; ``alarm`` flags a certified positive value over a Gorenstein
    ring, which the theory rules out.
    """

    kind: PKind
    value: int | None = None
    certified: str | None = None
    bound: int | None = None
    alarm: bool = False

    def __str__(self):
        if self.kind is PKind.MINUS_INFINITY:
            return "-inf"
        if self.kind is PKind.VANISHES:
            return f"{self.value} ({self.certified})"
        return f">= {self.bound} (undetermined)"

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "value": self.value, "certified": self.certified,
                "bound": self.bound, "alarm": self.alarm}


def _last_nonzero(dims: Sequence[int], upto: int) -> int:
    return max((i for i in range(upto + 1) if dims[i]), default=-1)


def _period_window(dims: Sequence[int], p: int) -> int | None:
    """Smallest ``j >= 1`` with ``Ext^i = 0`` for ``j < i <= j + p``."""
    for j in range(1, len(dims) - p):
        if all(dims[i] == 0 for i in range(j + 1, j + p + 1)):
            return j
    return None


def p_value(M: FPModule, N: FPModule, bound: int = 20, period: int | None = None, window: int = 8,
            resolution: FreeResolution | None = None) -> PValue:
    """``P(M, N)``, certified through a period of ``M`` when one is supplied."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if M.is_zero() or N.is_zero():
        return PValue(PKind.MINUS_INFINITY)
    hi = max(bound, (period + 2) if period else 0)
    res = resolution if resolution is not None and resolution.length >= hi + 1 \
        else minimal_free_resolution(M, hi + 1)
    dims = ext_dims(res, N, 0, hi)
    pd = res.projective_dimension()
    if pd is not None:
        return PValue(PKind.VANISHES, _last_nonzero(dims, min(pd, hi)), "finite-pd", hi)
    if period:
        j = _period_window(dims, period)
        if j is not None:
            value = _last_nonzero(dims, j)
            alarm = value > DEPTH_DIFFERENCE and is_gorenstein(M.algebra)
            return PValue(PKind.VANISHES, value, "period", hi, alarm)
        return PValue(PKind.UNDETERMINED, bound=_last_nonzero(dims, hi))
    w = max(1, min(window, bound))
    if all(dims[i] == 0 for i in range(bound - w + 1, bound + 1)):
        return PValue(PKind.VANISHES, _last_nonzero(dims, bound), "window", bound)
    return PValue(PKind.UNDETERMINED, bound=bound)


class PerpKind(enum.Enum):
    CERTIFIED_YES = "certified-yes"
    WINDOW_YES = "window-yes"
    NO = "no"


@dataclass(frozen=True)
class PerpVerdict:
    kind: PerpKind
    witness: int | None = None

    def __bool__(self):
        return self.kind is not PerpKind.NO


def in_perp(N: FPModule, M: FPModule, bound: int = 20, window: int = 8, period: int | None = None,
            resolution: FreeResolution | None = None) -> PerpVerdict:
    """Is ``Ext^{>>0}(M, N) = 0``?"""
    if not bound >= window >= 1:
        raise ValueError("need bound >= window >= 1")
    hi = max(bound, (period + 2) if period else 0)
    res = resolution if resolution is not None and resolution.length >= hi + 1 \
        else minimal_free_resolution(M, hi + 1)
    dims = ext_dims(res, N, 0, hi)
    if period and _period_window(dims, period) is not None:
        return PerpVerdict(PerpKind.CERTIFIED_YES)
    if all(dims[i] == 0 for i in range(bound - window + 1, bound + 1)):
        if period:
            # a zero window of full period length would have certified above
            return PerpVerdict(PerpKind.NO, _last_nonzero(dims, bound))
        return PerpVerdict(PerpKind.WINDOW_YES)
    return PerpVerdict(PerpKind.NO, _last_nonzero(dims, bound))


# ---------------------------------------------------------------------------
# G-dimension


class GdimKind(enum.Enum):
    ZERO = "0"
    MINUS_INFINITY = "-inf"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class GdimVerdict:
    kind: GdimKind
    certificate: dict = field(default_factory=dict)
    evidence: str = ""

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "certificate": self.certificate, "evidence": self.evidence}


def _vanishing_certificate(res: FreeResolution, dims: Sequence[int], period: int | None) -> str:
    if res.projective_dimension() is not None:
        return "finite-pd"
    if period is not None and period + 1 < len(dims):
        return "period"
    return "window"


def total_reflexivity(M: FPModule, bound: int = 20, max_period: int = 12, seed: int = 0,
                      trials: int = 32) -> GdimVerdict:
    """Check ``M ~= M**`` and ``Ext^{1..bound}(M, A) = Ext^{1..bound}(M*, A) = 0``.

    ``max_period = 0`` disables the period search that upgrades the Ext
    clauses from window-checked to certified.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if M.is_zero():
        return GdimVerdict(GdimKind.MINUS_INFINITY)
    A = M.algebra
    R = free_module(A, 1)
    Md = dual(M)
    iso = is_isomorphic(M, dual(Md), seed=seed, trials=trials)
    cert: dict = {"bidual": iso.verdict.value}
    if iso.verdict is not IsoVerdict.YES:
        return GdimVerdict(GdimKind.UNKNOWN, cert, f"M ~= M** not certified: {iso.reason}")

    for label, X in (("M", M), ("M*", Md)):
        res = minimal_free_resolution(X, max(bound + 1, max_period + 3))
        dims = ext_dims(res, R, 0, bound)
        cert[f"ext_{label}_R"] = list(dims)
        bad = [i for i in range(1, bound + 1) if dims[i]]
        if bad:
            return GdimVerdict(GdimKind.UNKNOWN, cert, f"Ext^{bad[0]}({label}, R) != 0")
        period = None
        if max_period >= 1 and res.projective_dimension() is None:
            period = detect_periodicity(X, max_period, seed=seed, trials=trials, resolution=res)
        cert[f"period_{label}"] = period
        cert[f"vanishing_{label}"] = _vanishing_certificate(res, dims, period)
    return GdimVerdict(GdimKind.ZERO, cert)


def g_dimension(M: FPModule, bound: int = 20, max_period: int = 12, seed: int = 0) -> GdimVerdict:
    """Over an artinian ring finite G-dimension is 0, so this is total reflexivity."""
    return total_reflexivity(M, bound, max_period=max_period, seed=seed)


# ---------------------------------------------------------------------------
# AB-dimension


class ABKind(enum.Enum):
    CERTIFIED_ZERO = "certified-0"
    UNKNOWN = "unknown"
    MINUS_INFINITY = "-inf"


@dataclass(frozen=True)
class ABdimVerdict:
    kind: ABKind
    rule: str | None = None
    period: int | None = None
    gdim: GdimVerdict | None = None
    evidence: tuple = ()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "rule": self.rule,
            "period": self.period,
            "gdim": self.gdim.to_dict() if self.gdim else None,
            "evidence": [{"module": name, "p_value": pv.to_dict()} for name, pv in self.evidence],
        }


@dataclass(frozen=True)
class ABConfig:
    bound: int = 20
    max_period: int = 12
    window: int = 8
    seed: int = 0
    sample_count: int = 10
    use_period: bool = True
    samples: tuple = ()


def default_sample(M: FPModule, seed: int = 0, count: int = 10) -> list[tuple[str, FPModule]]:
    """``R``, ``k``, ``Omega M``, ``Omega^2 M``, ``M*``, ``R*`` and seeded random modules."""
    from .paperlab import sample_modules

    A = M.algebra
    out = [("R", free_module(A, 1)), ("k", residue_field(A)),
           ("syz1", syzygy(M, 1)), ("syz2", syzygy(M, 2)), ("dual", dual(M))]
    out += [(f"random{i}", X) for i, X in enumerate(sample_modules(A, seed, count))]
    return [(name, X) for name, X in out if not X.is_zero()]


def ab_dimension(M: FPModule, config: ABConfig = ABConfig()) -> ABdimVerdict:
    """Sound AB-dimension classification.

    Only two rules certify: finite projective dimension (then ``M`` is free
    and ``P(M) = 0``), and total reflexivity together with a certified period
    (then ``P(M, N) <= 0`` for every ``N`` in the perp).  Anything else is
    UNKNOWN with the sampled ``P(M, N)`` values as evidence.
    """
    if M.is_zero():
        return ABdimVerdict(ABKind.MINUS_INFINITY)
    B = config.bound
    res = minimal_free_resolution(M, max(B, config.max_period + 2) + 2)
    if res.projective_dimension() is not None:
        return ABdimVerdict(ABKind.CERTIFIED_ZERO, rule="finite-pd")

    max_period = config.max_period if config.use_period else 0
    gd = g_dimension(M, B, max_period=max_period, seed=config.seed)
    period = None
    if config.use_period:
        period = detect_periodicity(M, config.max_period, seed=config.seed, resolution=res)
    samples = list(config.samples) or default_sample(M, config.seed, config.sample_count)
    evidence = []
    for name, N in samples:
        evidence.append((name, p_value(M, N, B, period=period, window=config.window, resolution=res)))
    if gd.kind is GdimKind.ZERO and period is not None:
        return ABdimVerdict(ABKind.CERTIFIED_ZERO, rule="period", period=period, gdim=gd,
                            evidence=tuple(evidence))
    return ABdimVerdict(ABKind.UNKNOWN, period=period, gdim=gd, evidence=tuple(evidence))


# ---------------------------------------------------------------------------
# Auslander-Reiten consistency


@dataclass(frozen=True)
class ArcReport:
    self_ext: tuple[int, ...]
    self_ext_window_zero: bool
    free: bool
    syzygy_ext1: int
    ab_certified: bool
    consistent: bool
    free_expected: bool
    free_expected_consistent: bool

    def to_dict(self) -> dict:
        return {
            "self_ext": list(self.self_ext),
            "self_ext_window_zero": self.self_ext_window_zero,
            "free": self.free,
            "syzygy_ext1": self.syzygy_ext1,
            "ab_certified": self.ab_certified,
            "consistent": self.consistent,
            "free_expected": self.free_expected,
            "free_expected_consistent": self.free_expected_consistent,
        }


def arc_check(M: FPModule, bound: int = 20, ab_verdict: ABdimVerdict | None = None,
              window: int = 8, max_period: int = 12, seed: int = 0) -> ArcReport:
    """Consistency of the data with "finite AB-dim and Ext^{>0}(M, M) = 0 imply free".

    ``ab_verdict`` defaults to a sample-free classification of ``M``.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    res = minimal_free_resolution(M, bound + 1)
    dims = ext_dims(res, M, 0, bound)
    self_ext = tuple(dims[1:])
    window_zero = all(d == 0 for d in self_ext)
    free = M.is_free()
    syz_ext1 = ext_dims(res, syzygy(M, 1), 1, 1)[0] if not M.is_zero() else 0
    if ab_verdict is None:
        ab_verdict = ab_dimension(M, ABConfig(bound=bound, max_period=max_period, window=window,
                                              seed=seed, samples=(("R", free_module(M.algebra, 1)),)))
    certified = ab_verdict.kind is ABKind.CERTIFIED_ZERO
    tail = dims[max(1, bound - window + 1):]
    expect_free = certified and all(d == 0 for d in tail)
    return ArcReport(
        self_ext=self_ext,
        self_ext_window_zero=window_zero,
        free=free,
        syzygy_ext1=syz_ext1,
        ab_certified=certified,
        consistent=not (window_zero and certified and not free),
        free_expected=expect_free,
        free_expected_consistent=(not expect_free) or free,
    )

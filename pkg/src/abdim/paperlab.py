"""The non-Gorenstein example ring and its periodic complex, end to end.

``R = k[x1..x4] / (a*x1*x3 + x2*x3, x1*x4 + x2*x4, x3*x4, x1^2, x2^2, x3^2, x4^2)``
for a nonzero scalar ``a``, with the complex of 2x2 matrices
``d_i = [[x1, a^i * x3], [x4, x2]]`` and the module ``M = coker d_1``.
When ``a`` has finite multiplicative order ``n`` the complex is periodic of
period ``n``; over QQ with ``a = 2`` it is only checked on a finite window.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .algebra import LocalAlgebra, build_algebra, is_gorenstein, socle
from .exactmath import FieldCtx
from .fpmodule import FPModule, direct_sum, dual, free_module, matlis_dual, residue_field, syzygy
from .groebner import Poly
from .homdim import (
    ABConfig,
    ABKind,
    GdimKind,
    PerpKind,
    ab_dimension,
    arc_check,
    in_perp,
    p_value,
    total_reflexivity,
)
from .resolution import (
    PeriodicComplex,
    minimal_free_resolution,
    scan_periods,
    verify_complete_resolution,
)

__all__ = [
    "JSConfig",
    "ExampleReport",
    "parse_field",
    "js_ring",
    "js_complex",
    "js_module",
    "run_js_experiment",
    "sample_modules",
    "perp_candidates",
    "ci_ring",
]

SCHEMA_VERSION = 1
JS_VARIABLES = ("x1", "x2", "x3", "x4")


def parse_field(spec: str) -> FieldCtx:
    """``"qq"``/``"QQ"`` or ``"gf7"``/``"GF(7)"``."""
    s = spec.strip().lower().replace("(", "").replace(")", "")
    if s in ("qq", "q"):
        return FieldCtx.rationals()
    if s.startswith("gf") and s[2:].isdigit():
        return FieldCtx.prime(int(s[2:]))
    raise ValueError(f"unknown field {spec!r}")


@dataclass(frozen=True)
class JSConfig:
    field: FieldCtx
    alpha: object
    bound: int = 20
    window: int = 8
    max_period: int = 12
    complex_window: int = 10
    seed: int = 0
    sample_count: int = 10

    def __post_init__(self):
        a = self.field(self.alpha)
        if a == 0:
            raise ValueError("alpha must be nonzero")
        object.__setattr__(self, "alpha", a)

    @property
    def alpha_order(self) -> int | None:
        return self.field.multiplicative_order(self.alpha)


def js_ring(cfg: JSConfig) -> LocalAlgebra:
    F = cfg.field
    x1, x2, x3, x4 = (Poly.variable(i, F, 4) for i in range(4))
    gens = [x1 * x3 * Poly.constant(cfg.alpha, F, 4) + x2 * x3, x1 * x4 + x2 * x4, x3 * x4,
            x1 * x1, x2 * x2, x3 * x3, x4 * x4]
    return build_algebra(JS_VARIABLES, gens, F)


def _alpha_power(cfg: JSConfig, i: int):
    F = cfg.field
    if i >= 0:
        return F.pow(cfg.alpha, i)
    return F.pow(F.inv(cfg.alpha), -i)


def js_differential(A: LocalAlgebra, cfg: JSConfig, i: int) -> tuple:
    x1, x2, x3, x4 = A.var_vectors
    return ((x1, A.scale(_alpha_power(cfg, i), x3)), (x4, x2))


def js_complex(cfg: JSConfig, lo: int | None = None, hi: int | None = None,
               algebra: LocalAlgebra | None = None) -> PeriodicComplex:
    """Periodic complex when ``alpha`` has finite order, else the window ``d_lo..d_hi``."""
    A = algebra or js_ring(cfg)
    n = cfg.alpha_order
    if n is not None and lo is None and hi is None:
        return PeriodicComplex(A, tuple(js_differential(A, cfg, i) for i in range(n)), period=n)
    lo = -cfg.complex_window if lo is None else lo
    hi = cfg.complex_window if hi is None else hi
    if lo > hi:
        raise ValueError("need lo <= hi")
    return PeriodicComplex(A, tuple(js_differential(A, cfg, i) for i in range(lo, hi + 1)), lo=lo)


def js_module(cfg: JSConfig, algebra: LocalAlgebra | None = None) -> FPModule:
    """``M = coker d_1``."""
    A = algebra or js_ring(cfg)
    return FPModule(A, js_differential(A, cfg, 1))


def ci_ring(field: FieldCtx) -> LocalAlgebra:
    """``k[x, y]/(x^2, y^2)``, a complete intersection by construction."""
    x, y = Poly.variable(0, field, 2), Poly.variable(1, field, 2)
    return build_algebra(("x", "y"), [x * x, y * y], field)


# ---------------------------------------------------------------------------
# module populations


def _random_m_element(A: LocalAlgebra, rng: random.Random, density: float) -> tuple:
    v = [A.ctx.zero] * A.dim
    for i in A.m_indices:
        if rng.random() < density:
            v[i] = A.ctx.random_element(rng, bound=3)
    return tuple(v)


def sample_modules(A: LocalAlgebra, seed: int, count: int, gen_bound: int = 2,
                   rel_bound: int = 2) -> list[FPModule]:
    """Seeded random modules with minimal presentations (entries in ``m``)."""
    if gen_bound < 1 or rel_bound < 1:
        raise ValueError("bounds must be at least 1")
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = rng.randint(1, gen_bound)
        r = rng.randint(1, rel_bound)
        density = rng.choice((0.25, 0.5, 0.8))
        pres = [[_random_m_element(A, rng, density) for _ in range(r)] for _ in range(g)]
        M = FPModule(A, pres)
        if not M.is_zero():
            out.append(M)
    return out


def perp_candidates(A: LocalAlgebra, M: FPModule, seed: int = 0, count: int = 10) -> list[tuple[str, FPModule]]:
    """Modules to test against ``M``: structured ones plus seeded random ones.

    The injective hull ``E`` of ``k`` lies in the perp of every module.  When
    ``M`` is totally reflexive so does ``R``, hence (by the long exact
    sequence) every syzygy of ``E`` and every direct sum of these.  Syzygies
    of ``E`` grow geometrically, so only ``syz E`` and ``syz^2 E`` are used:
    all sums of at most three summands from ``R, E, syz E`` and the sums of
    ``syz^2 E`` with ``R`` and ``E``.  ``k``, ``M``, ``M*`` and ``syz M`` are
    controls that usually fall outside.
    """
    R = free_module(A, 1)
    E = matlis_dual(R)
    res = minimal_free_resolution(E, 3)
    omega1, omega2 = res.syzygy_module(1), res.syzygy_module(2)
    named = [("k", residue_field(A)), ("M", M), ("M*", dual(M)), ("syz M", syzygy(M, 1))]
    for size in (1, 2, 3):
        for combo in itertools.combinations_with_replacement((("R", R), ("E", E), ("syz E", omega1)), size):
            X = combo[0][1]
            for _, Y in combo[1:]:
                X = direct_sum(X, Y)
            named.append(("+".join(n for n, _ in combo), X))
    named += [("syz^2 E", omega2), ("R+syz^2 E", direct_sum(R, omega2)), ("E+syz^2 E", direct_sum(E, omega2))]
    for i, X in enumerate(sample_modules(A, seed, count)):
        named.append((f"random{i}", X))
        named.append((f"E+random{i}", direct_sum(E, X)))
    return [(name, X) for name, X in named if not X.is_zero()]


# ---------------------------------------------------------------------------
# the experiment


@dataclass
class ExampleReport:
    config: dict
    ring: dict
    complex: dict
    betti: list
    period: int | None
    period_scan: dict
    gdim: dict
    abdim: dict
    arc: dict
    perp: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "config": self.config,
            "ring": self.ring,
            "complex": self.complex,
            "betti": self.betti,
            "period": self.period,
            "period_scan": self.period_scan,
            "gdim": self.gdim,
            "abdim": self.abdim,
            "arc": self.arc,
            "perp": self.perp,
        }

    def check_consistency(self) -> list[str]:
        problems = []
        if self.abdim["kind"] == ABKind.CERTIFIED_ZERO.value and self.abdim["rule"] == "period" \
                and self.abdim["period"] is None:
            problems.append("certified AB-dim 0 without a period")
        if self.abdim["kind"] == ABKind.CERTIFIED_ZERO.value and self.gdim["kind"] != GdimKind.ZERO.value:
            problems.append("certified AB-dim 0 without G-dim 0")
        if self.period is not None and any(self.betti[i] != self.betti[i + self.period]
                                           for i in range(len(self.betti) - self.period)):
            problems.append("Betti sequence not periodic")
        return problems


def run_js_experiment(cfg: JSConfig) -> ExampleReport:
    A = js_ring(cfg)
    F = cfg.field
    ring = {
        "field": str(F),
        "dim": A.dim,
        "basis": [A.format_element(A.unit_vector(i)) for i in range(A.dim)],
        "socle_dim": len(socle(A)),
        "gorenstein": is_gorenstein(A),
        "nilpotency_degree": A.nilpotency_degree,
        "depth_R_minus_depth_M": 0,
    }
    C = js_complex(cfg, algebra=A)
    crep = verify_complete_resolution(C)
    complex_info = {"period": C.period, "lo": C.lo, "hi": C.hi if C.period is None else C.period - 1,
                    **crep.to_dict()}

    M = js_module(cfg, A)
    B = cfg.bound
    res = minimal_free_resolution(M, max(B, cfg.max_period + 3))
    scan = scan_periods(M, cfg.max_period, seed=cfg.seed, resolution=res)
    certified = [p for p, r in scan.items() if r.verdict.value == "yes"]
    period = min(certified) if certified else None

    gd = total_reflexivity(M, B, max_period=cfg.max_period, seed=cfg.seed)
    candidates = perp_candidates(A, M, cfg.seed, cfg.sample_count)
    ab = ab_dimension(M, ABConfig(bound=B, max_period=cfg.max_period, window=cfg.window,
                                  seed=cfg.seed, samples=tuple(candidates)))
    arc = arc_check(M, B, ab_verdict=ab, window=cfg.window, seed=cfg.seed)

    perp = {}
    for name, N in candidates:
        verdict = in_perp(N, M, B, cfg.window, period=period, resolution=res)
        pv = p_value(M, N, B, period=period, window=cfg.window, resolution=res)
        perp[name] = {"in_perp": verdict.kind.value, "witness": verdict.witness, "p_value": pv.to_dict()}

    return ExampleReport(
        config={"field": str(F), "alpha": F.fmt(cfg.alpha), "alpha_order": cfg.alpha_order,
                "bound": B, "window": cfg.window, "max_period": cfg.max_period, "seed": cfg.seed},
        ring=ring,
        complex=complex_info,
        betti=list(res.betti[:B + 1]),
        period=period,
        period_scan={str(p): {"verdict": r.verdict.value, "reason": r.reason} for p, r in scan.items()},
        gdim=gd.to_dict(),
        abdim=ab.to_dict(),
        arc=arc.to_dict(),
        perp=perp,
    )

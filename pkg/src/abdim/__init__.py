"""Exact homological invariants of modules over finite-dimensional local algebras."""

from .algebra import LocalAlgebra, NotLocal, build_algebra, is_gorenstein, socle
from .exactmath import FieldCtx, Matrix, kernel_basis, rank, rref, solve_linear
from .fpmodule import (
    FPModule,
    IsoResult,
    IsoVerdict,
    direct_sum,
    dual,
    free_module,
    hom_basis,
    is_isomorphic,
    matlis_dual,
    residue_field,
    syzygy,
)
from .groebner import GroebnerBasis, InfiniteDimensional, Poly, buchberger, normal_form
from .homdim import (
    ABConfig,
    ABdimVerdict,
    ABKind,
    GdimKind,
    GdimVerdict,
    PerpKind,
    PKind,
    PValue,
    ab_dimension,
    arc_check,
    ext_table,
    g_dimension,
    in_perp,
    p_value,
    total_reflexivity,
)
from .paperlab import JSConfig, js_complex, js_module, js_ring, run_js_experiment, sample_modules
from .resolution import (
    FreeResolution,
    PeriodicComplex,
    detect_periodicity,
    minimal_free_resolution,
    verify_complete_resolution,
)

__version__ = "0.1.0"

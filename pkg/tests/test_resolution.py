import pytest
from hypothesis import given
from hypothesis import strategies as st

from abdim.exactmath import FieldCtx
from abdim.fpmodule import IsoVerdict, free_module, is_isomorphic, residue_field
from abdim.paperlab import JSConfig, js_complex, js_differential, js_module, sample_modules
from abdim.resolution import (
    PeriodicComplex,
    algebra_matmul,
    detect_periodicity,
    minimal_free_resolution,
    scan_periods,
    verify_complete_resolution,
)

F7, F13, QQ = FieldCtx.prime(7), FieldCtx.prime(13), FieldCtx.rationals()


def is_zero_matrix(X):
    return all(all(x == 0 for x in a) for row in X for a in row)


def test_residue_field_over_ci(ci5, ci_qq):
    for A in (ci5, ci_qq):
        res = minimal_free_resolution(residue_field(A), 10)
        assert res.betti == tuple(range(1, 12))
        assert res.projective_dimension() is None


def test_free_module_resolution(js_algebra):
    res = minimal_free_resolution(free_module(js_algebra, 2), 4)
    assert res.betti == (2, 0, 0, 0, 0)
    assert res.projective_dimension() == 0
    with pytest.raises(ValueError):
        minimal_free_resolution(free_module(js_algebra, 1), -1)


@given(seed=st.integers(0, 10_000))
def test_differentials_compose_to_zero(seed, ci5):
    (M,) = sample_modules(ci5, seed, 1)
    res = minimal_free_resolution(M, 6)
    for i in range(1, res.length):
        D, Dn = res.differential(i), res.differential(i + 1)
        if D and Dn and D[0] and Dn[0]:
            assert is_zero_matrix(algebra_matmul(ci5, D, Dn))
    # minimality: every differential entry lies in the maximal ideal
    assert all(a[0] == 0 for D in res.differentials for row in D for a in row)


@given(seed=st.integers(0, 10_000))
def test_syzygy_resolution_is_shifted(seed, ci5):
    (M,) = sample_modules(ci5, seed, 1)
    res = minimal_free_resolution(M, 8)
    shifted = minimal_free_resolution(res.syzygy_module(1), 7)
    assert shifted.betti == res.betti[1:]


def test_js_betti(js_M):
    assert minimal_free_resolution(js_M, 20).betti == (2,) * 21


@pytest.mark.parametrize("field,alpha,period", [(F7, 3, 6), (F7, 2, 3), (F7, 6, 2), (F13, 4, 6)])
def test_js_period_equals_alpha_order(field, alpha, period):
    cfg = JSConfig(field, alpha)
    assert cfg.alpha_order == period
    M = js_module(cfg)
    assert detect_periodicity(M, 12) == period
    scan = scan_periods(M, period)
    assert scan[period].verdict is IsoVerdict.YES
    assert all(scan[p].verdict is not IsoVerdict.YES for p in range(1, period))


def test_no_period_over_rationals():
    M = js_module(JSConfig(QQ, 2))
    assert detect_periodicity(M, 6) is None


def test_periodicity_transfers_to_syzygies(js_M):
    res = minimal_free_resolution(js_M, 12)
    S = res.syzygy_module(1)
    assert is_isomorphic(res.syzygy_module(7), S).verdict is IsoVerdict.YES


def test_js_complex_is_complete_resolution(js_cfg):
    C = js_complex(js_cfg)
    assert C.period == 6
    rep = verify_complete_resolution(C)
    assert rep and not rep.failures
    assert len(rep.spots) == 6
    for s in rep.spots:
        assert s.term_dim == 16
        assert s.kernel_dim == s.image_dim == 8
        assert s.dual_kernel_dim == s.dual_image_dim == 8


def test_differentials_are_periodic(js_cfg, js_algebra):
    for i in range(-6, 6):
        assert js_differential(js_algebra, js_cfg, i + 6) == js_differential(js_algebra, js_cfg, i)


def test_windowed_complex_over_rationals():
    cfg = JSConfig(QQ, 2, complex_window=4)
    C = js_complex(cfg)
    assert C.period is None and (C.lo, C.hi) == (-4, 4)
    rep = verify_complete_resolution(C)
    assert rep and len(rep.spots) == 8


def test_corrupted_differential_is_caught(js_cfg, js_algebra):
    A = js_algebra
    C = js_complex(js_cfg, algebra=A)
    x1, x2, x3, x4 = A.var_vectors
    bad_d0 = ((A.add(x1, x2), C.d(0)[0][1]), C.d(0)[1])
    bad = PeriodicComplex(A, (bad_d0,) + C.matrices[1:], period=6)
    rep = verify_complete_resolution(bad)
    assert not rep
    assert not rep.composites_zero
    assert any("d_0" in f for f in rep.failures)


def test_shape_mismatch_raises(js_algebra):
    A = js_algebra
    x = A.var_vectors[0]
    C = PeriodicComplex(A, (((x,),), ((x,), (x,)), ((x,),)), lo=0)
    with pytest.raises(ValueError):
        verify_complete_resolution(C)

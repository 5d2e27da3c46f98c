import numpy as np
import pytest

from gle_spectra import (
    QuadConfig,
    TransformDomainError,
    integrate_to_infinity,
    near_zero_asymptote,
    r11,
    r12,
    r22,
)
from conftest import EQUIPARTITION_PRESETS, free_ctx, trapped_ctx


def test_r11_hand_value():
    # rouse:[1] at w=1: kcos = ksin = 1/2 substituted into the density formula
    ctx = trapped_ctx("rouse:1")
    expected = 2.0 * 1.5 / ((2.0 - 1.0 + 0.5) ** 2 + 1.5 ** 2)
    assert r11(ctx, 1.0) == pytest.approx(expected, rel=1e-14)


def test_r11_near_zero_constant():
    # integrable kernels: r11(0) = 2(lam + beta Int K)/gamma^2; for rouse:[1]
    # with unit couplings that is 2(1+1)/4 = 1 (the lam-only value 2 lam/g^2
    # drops the memory term and does not match the density formula)
    ctx = trapped_ctx("rouse:1")
    assert r11(ctx, 0.0) == pytest.approx(1.0, rel=1e-14)
    assert r11(ctx, 1e-7) == pytest.approx(1.0, rel=1e-6)


def test_r11_even(rng):
    ctx = trapped_ctx("powerlaw:0.5")
    w = rng.uniform(0.01, 30.0, 20)
    assert np.allclose(r11(ctx, w), r11(ctx, -w), rtol=1e-14)


def test_r11_free_particle_rejected():
    with pytest.raises(TransformDomainError):
        r11(free_ctx("rouse:1"), 1.0)


def test_r22_is_w2_r11(rng):
    ctx = trapped_ctx("rouse:[1,2]")
    w = rng.uniform(0.0, 50.0, 100)
    assert np.allclose(r22(ctx, w), w * w * np.where(w == 0, 0.0, r11(ctx, np.where(w == 0, 1.0, w))), rtol=1e-13)


def test_r22_limits():
    ctx = trapped_ctx("rouse:[1,2]")
    assert r22(ctx, 0.0) == 0.0
    assert r22(ctx, 1e-6) < 1e-11


def test_r22_free_particle():
    # gamma=0, rouse:[1], w=1: 2(1+0.5)/((1-0.5)^2 + 1.5^2) = 1.2
    ctx = free_ctx("rouse:1")
    assert r22(ctx, 1.0) == pytest.approx(1.2, rel=1e-14)
    # finite origin value 2/(lam + beta Int K)
    assert r22(ctx, 0.0) == pytest.approx(1.0, rel=1e-12)


def test_r22_free_particle_origin_guard():
    with pytest.raises(TransformDomainError):
        r22(free_ctx("powerlaw:0.5"), 0.0)


def test_r12_structure(rng):
    ctx = trapped_ctx("powerlaw:0.5")
    w = rng.uniform(0.01, 20.0, 100)
    vals = r12(ctx, w)
    assert np.allclose(vals.real, 0.0)
    assert np.allclose(vals.imag, w * r11(ctx, w), rtol=1e-14)
    assert r12(ctx, 1e-9).imag == pytest.approx(0.0, abs=1e-4)


def test_spectral_matrix_psd():
    # [[r11, r12], [conj(r12), r22]] is rank one: zero determinant, positive trace
    ctx = trapped_ctx("gaussian:1")
    for w in (0.3, 3.0):
        a, b, c = r11(ctx, w), r12(ctx, w), r22(ctx, w)
        det = a * c - abs(b) ** 2
        assert det == pytest.approx(0.0, abs=1e-14 * a * c)
        assert a + c > 0


@pytest.mark.parametrize("spec", EQUIPARTITION_PRESETS)
def test_tail_dominated_by_w4(spec):
    ctx = trapped_ctx(spec)
    w = np.array([10.0, 100.0, 1000.0])
    vals = w ** 4 * r11(ctx, w)
    assert np.all(vals < 10.0)
    assert np.all(np.isfinite(vals))


def test_r11_r22_integrable():
    cfg = QuadConfig(rel_tol=1e-6)
    for spec in ("powerlaw:0.5", "one-plus-t-inverse"):
        ctx = trapped_ctx(spec)
        v1, _ = integrate_to_infinity(lambda w: r11(ctx, w), 1.0, cfg)
        v2, _ = integrate_to_infinity(lambda w: r22(ctx, w), 1.0, cfg)
        assert np.isfinite(v1) and np.isfinite(v2)


def test_cross_density_cauchy_schwarz():
    from gle_spectra import integrate_adaptive

    ctx = trapped_ctx("rouse:[1,2]")
    cfg = QuadConfig(rel_tol=1e-7)
    i12, _ = integrate_to_infinity(lambda w: np.abs(r12(ctx, w)), 1.0, cfg)
    a, _ = integrate_adaptive(lambda w: np.abs(r12(ctx, w)), 1e-6, 1.0, cfg)
    i12 += a
    i11, _ = integrate_to_infinity(lambda w: r11(ctx, w), 1e-6, cfg)
    i22, _ = integrate_to_infinity(lambda w: r22(ctx, w), 1e-6, cfg)
    assert i12 <= np.sqrt(i11 * i22) * (1 + 1e-8)


def test_near_zero_asymptote_classes():
    nz = near_zero_asymptote(trapped_ctx("rouse:[1,2]"))
    assert nz.kind == "integrable"
    # 2 (lam + beta * 1.5)/gamma^2 = 1.25
    assert nz.rate_predicted == pytest.approx(1.25, rel=1e-10)
    assert nz.rate == pytest.approx(1.25, rel=1e-6)

    nz = near_zero_asymptote(trapped_ctx("one-plus-t-inverse"))
    assert nz.kind == "critical"
    assert nz.exponent == 0.0
    assert nz.rate_predicted == pytest.approx(0.5, rel=1e-12)
    assert nz.rate == pytest.approx(0.5, rel=0.1)  # log-rate converges slowly

    nz = near_zero_asymptote(trapped_ctx("powerlaw:0.5"))
    assert nz.kind == "powerlaw"
    assert nz.exponent == pytest.approx(-0.5)
    assert nz.rate == pytest.approx(nz.rate_predicted, rel=1e-2)
    assert nz.richardson_drift < 0.01


def test_near_zero_needs_trap():
    with pytest.raises(TransformDomainError):
        near_zero_asymptote(free_ctx("rouse:1"))

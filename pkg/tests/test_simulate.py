import math

import numpy as np
import pytest

from gle_spectra import (
    BernsteinMeasure,
    GleParams,
    PronyAccuracyError,
    SamplingGridError,
    SdeError,
    bernstein_of,
    default_spectral_grid,
    ensemble_msd,
    lyapunov_stationary_cov,
    markovian_embedding,
    msd_x,
    parse_kernel_spec,
    prony_fit,
    simulate_paths,
    spectral_sample,
    var_v0,
    var_x0,
)
from conftest import TRAPPED, free_ctx, trapped_ctx


def test_prony_identity_case():
    fit = prony_fit(parse_kernel_spec("rouse:1"), 1, (1e-2, 1e2))
    assert fit.measure.atoms == ((1.0, 1.0),)
    assert fit.sup_rel_error == 0.0


def test_prony_two_exponential_recovery():
    fit = prony_fit(parse_kernel_spec("rouse:[1,2]"), 2, (1e-2, 1e2))
    assert fit.measure.atoms == ((1.0, 0.5), (0.5, 0.5))
    assert fit.sup_rel_error < 1e-8


def test_prony_powerlaw_two_percent():
    fit = prony_fit(parse_kernel_spec("powerlaw:0.5"), 8, (1e-2, 1e3))
    assert fit.sup_rel_error < 0.02
    assert all(x > 0 and w > 0 for x, w in fit.measure.atoms)
    assert len(fit.measure.atoms) <= 8


def test_prony_accuracy_bound_enforced():
    with pytest.raises(PronyAccuracyError) as ei:
        prony_fit(parse_kernel_spec("powerlaw:0.5"), 2, (1e-2, 1e3), rtol=0.01)
    assert ei.value.achieved > 0.01


def test_embedding_shapes_and_stability():
    sde = markovian_embedding(TRAPPED, bernstein_of(parse_kernel_spec("rouse:1")))
    assert sde.dim() == 4
    assert sde.labels == ("x", "v", "z1", "s1")
    assert sde.is_stable()


def test_embedding_classical_langevin():
    sde = markovian_embedding(TRAPPED, BernsteinMeasure(atoms=()))
    assert sde.dim() == 2
    cov = lyapunov_stationary_cov(sde)
    assert cov[0, 0] == pytest.approx(TRAPPED.kbt / TRAPPED.gamma, rel=1e-12)
    assert cov[1, 1] == pytest.approx(TRAPPED.kbt / TRAPPED.m, rel=1e-12)


def test_embedding_free_particle():
    params = GleParams(m=1.0, lam=1.0, beta=1.0, gamma=0.0, kbt=1.0)
    sde = markovian_embedding(params, bernstein_of(parse_kernel_spec("rouse:[1,2]")))
    assert sde.labels[0] == "v"
    cov = lyapunov_stationary_cov(sde)
    assert cov[0, 0] == pytest.approx(1.0, rel=1e-10)


def test_embedding_rejects_bad_atoms():
    with pytest.raises((SdeError, ValueError)):
        markovian_embedding(TRAPPED, BernsteinMeasure(atoms=((-1.0, 1.0),)))


def test_embedding_zero_temperature():
    params = GleParams(m=1.0, lam=1.0, beta=1.0, gamma=2.0, kbt=0.0)
    sde = markovian_embedding(params, bernstein_of(parse_kernel_spec("rouse:1")))
    assert np.all(sde.noise == 0.0)
    assert np.abs(lyapunov_stationary_cov(sde)).max() == 0.0


def test_lyapunov_equipartition_structure():
    # ratios independent of atom count, placement and coupling strength
    for spec, beta in (("rouse:[1,2,4]", 1.0), ("rouse:[0.3,2,7,11]", 3.7)):
        params = GleParams(m=1.4, lam=0.6, beta=beta, gamma=2.3, kbt=1.9)
        sde = markovian_embedding(params, bernstein_of(parse_kernel_spec(spec)))
        cov = lyapunov_stationary_cov(sde)
        assert params.gamma * cov[0, 0] / params.kbt == pytest.approx(1.0, abs=1e-8)
        assert params.m * cov[1, 1] / params.kbt == pytest.approx(1.0, abs=1e-8)


def test_lyapunov_unstable_rejected():
    # undamped oscillator: lam = 0, no memory atoms
    params = GleParams(m=1.0, lam=0.0, beta=1.0, gamma=2.0, kbt=1.0)
    sde = markovian_embedding(params, BernsteinMeasure(atoms=()))
    with pytest.raises(SdeError):
        lyapunov_stationary_cov(sde)


def _one_atom_sde():
    return markovian_embedding(TRAPPED, bernstein_of(parse_kernel_spec("rouse:1")))


def test_simulate_deterministic():
    sde = _one_atom_sde()
    a = simulate_paths(sde, dt=0.1, t_max=5.0, n_paths=50, seed=42)
    b = simulate_paths(sde, dt=0.1, t_max=5.0, n_paths=50, seed=42)
    assert np.array_equal(a.data, b.data)
    c = simulate_paths(sde, dt=0.1, t_max=5.0, n_paths=50, seed=43)
    assert not np.array_equal(a.data, c.data)


def test_simulate_chunk_invariance():
    # per-path noise streams make chunking irrelevant up to BLAS last-bit
    # shape effects; comparison is tolerance-aware
    sde = _one_atom_sde()
    a = simulate_paths(sde, dt=0.1, t_max=5.0, n_paths=64, seed=1)
    b = simulate_paths(sde, dt=0.1, t_max=5.0, n_paths=64, seed=1, chunk_size=7)
    assert np.allclose(a.data, b.data, rtol=1e-12, atol=1e-13)


def test_simulate_empty_ensemble():
    sde = _one_atom_sde()
    ens = simulate_paths(sde, dt=0.1, t_max=1.0, n_paths=0, seed=0)
    assert ens.data.shape[0] == 0


def test_simulate_zero_noise_msd():
    params = GleParams(m=1.0, lam=1.0, beta=1.0, gamma=2.0, kbt=0.0)
    sde = markovian_embedding(params, bernstein_of(parse_kernel_spec("rouse:1")))
    ens = simulate_paths(sde, dt=0.1, t_max=5.0, n_paths=20, seed=0)
    curve = ensemble_msd(ens, "x_integral")
    assert np.max(np.abs(curve.values)) == 0.0


def test_euler_stability_warning():
    sde = _one_atom_sde()
    with pytest.warns(UserWarning, match="stability"):
        simulate_paths(sde, dt=5.0, t_max=20.0, n_paths=2, seed=0, scheme="euler_maruyama")


def test_euler_agrees_with_exact_in_law():
    sde = _one_atom_sde()
    exact = simulate_paths(sde, dt=0.02, t_max=10.0, n_paths=2000, seed=5)
    euler = simulate_paths(sde, dt=0.02, t_max=10.0, n_paths=2000, seed=6, scheme="euler_maruyama")
    ve, vu = exact.column("v")[:, -1].var(), euler.column("v")[:, -1].var()
    assert vu == pytest.approx(ve, rel=0.15)


def test_sample_variance_matches_lyapunov():
    sde = _one_atom_sde()
    cov = lyapunov_stationary_cov(sde)
    ens = simulate_paths(sde, dt=0.1, t_max=10.0, n_paths=4000, seed=9)
    v = ens.column("v")[:, -1]
    se = cov[1, 1] * math.sqrt(2.0 / (v.size - 1))
    assert abs(v.var(ddof=1) - cov[1, 1]) < 3.0 * se


def test_fluctuation_dissipation_of_noise():
    # autocovariance of the synthesized thermal force equals the kernel
    sde = _one_atom_sde()
    dt = 0.05
    ens = simulate_paths(sde, dt=dt, t_max=8.0, n_paths=3000, seed=13, save_noise=True)
    f = ens.column("F")
    for tau in (0.0, 1.0, 5.0):
        lag = int(round(tau / dt))
        prod = (f[:, 0] * f[:, lag])
        est = prod.mean()
        se = prod.std(ddof=1) / math.sqrt(prod.size)
        assert abs(est - math.exp(-tau)) < 3.0 * se + 1e-12


def test_ensemble_msd_matches_quadrature():
    sde = _one_atom_sde()
    ens = simulate_paths(sde, dt=0.05, t_max=50.0, n_paths=3000, seed=21)
    curve = ensemble_msd(ens, "x_integral")
    ctx = trapped_ctx("rouse:1")
    for target in (2.0, 10.0, 50.0):
        i = int(np.argmin(np.abs(np.asarray(curve.times) - target)))
        assert curve.values[i] == pytest.approx(msd_x(ctx, curve.times[i]), rel=0.08)


def test_ensemble_msd_v_saturates_to_2varx():
    sde = _one_atom_sde()
    cov = lyapunov_stationary_cov(sde)
    ens = simulate_paths(sde, dt=0.05, t_max=60.0, n_paths=3000, seed=22)
    curve = ensemble_msd(ens, "v_integral")
    tail = np.asarray(curve.values)[np.asarray(curve.times) > 30.0]
    assert tail.mean() == pytest.approx(2.0 * cov[0, 0], rel=0.1)


def test_spectral_sampler_moments():
    ctx = trapped_ctx("rouse:1")
    grid = default_spectral_grid(ctx)
    ens = spectral_sample(ctx, grid, [0.0], 8000, seed=3)
    x0 = ens.column("x")[:, 0]
    v0 = ens.column("v")[:, 0]
    vx, vv = var_x0(ctx), var_v0(ctx)
    assert abs(x0.var(ddof=1) - vx) < 3.0 * vx * math.sqrt(2.0 / (x0.size - 1))
    assert abs(v0.var(ddof=1) - vv) < 3.0 * vv * math.sqrt(2.0 / (v0.size - 1))
    se_cov = math.sqrt(vx * vv / x0.size)
    assert abs(np.cov(x0, v0)[0, 1]) < 3.0 * se_cov


def test_spectral_grid_discretization_bias():
    ctx = trapped_ctx("rouse:1")
    edges = default_spectral_grid(ctx)
    from gle_spectra import r11

    mids = 0.5 * (edges[1:] + edges[:-1])
    mass = (ctx.params.kbt / math.pi) * float(np.sum(r11(ctx, mids) * np.diff(edges)))
    assert mass == pytest.approx(var_x0(ctx), rel=2e-3)


def test_spectral_sampler_zero_temperature():
    ctx = trapped_ctx("rouse:1", kbt=0.0)
    ens = spectral_sample(ctx, default_spectral_grid(ctx), [0.0, 1.0], 10, seed=0)
    assert np.all(ens.data == 0.0)


def test_spectral_sampler_nyquist_guard():
    ctx = trapped_ctx("rouse:1")
    with pytest.raises(SamplingGridError):
        spectral_sample(ctx, np.array([0.1, 2.0, 4.0]), [100.0], 5, seed=0)


def test_spectral_sampler_free_particle_rejected():
    from gle_spectra import TransformDomainError

    ctx = free_ctx("rouse:1")
    with pytest.raises(TransformDomainError):
        spectral_sample(ctx, default_spectral_grid(ctx), [0.0], 5, seed=0)

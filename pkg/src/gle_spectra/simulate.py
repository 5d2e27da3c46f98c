"""Monte Carlo cross-validation of the stationary theory.

A sum-of-exponentials kernel K(t) = sum_n w_n exp(-x_n |t|) admits an exact
Markovian embedding: auxiliary memory states z_n realize the convolution
beta Int K(t-s) v(s) ds through dz_n = (v - x_n z_n) dt, and independent
Ornstein-Uhlenbeck factors realize the thermal force with autocovariance
beta*kbt*K(t-s).  The embedded system is a stable linear SDE, so its
stationary covariance solves a Lyapunov equation exactly and paths can be
propagated with the exact one-step Gaussian transition.

General kernels enter through a Prony approximation with fixed log-spaced
rates and nonnegative-least-squares weights.

A second, embedding-free sampler synthesizes stationary (x, v) paths directly
from the spectral densities: independent Gaussian amplitudes on frequency
cells, weighted by the rank-one factorization of the 2x2 cross-spectral
matrix (1, i w)^T r11 (1, -i w).
"""

from dataclasses import dataclass
import math
import warnings

import numpy as np
from scipy import linalg
from scipy.optimize import nnls

from .errors import PronyAccuracyError, SamplingGridError, SdeError
from .kernels import BernsteinMeasure, kernel_eval
from .moments import POSITION_INTEGRAL, VELOCITY_INTEGRAL, MsdCurve
from .spectra import r11

SCHEME_EXACT = "exact_ou_exponential"
SCHEME_EULER = "euler_maruyama"


@dataclass(frozen=True)
class LinearSde:
    """Stable linear SDE du = A u dt + B dW with labeled coordinates."""

    drift: np.ndarray
    noise: np.ndarray
    labels: tuple
    params: object = None
    atoms: tuple = ()

    def dim(self):
        return self.drift.shape[0]

    def spectral_abscissa(self):
        return float(np.max(np.linalg.eigvals(self.drift).real))

    def is_stable(self, tol=1e-12):
        return self.spectral_abscissa() < -tol


@dataclass(frozen=True)
class PronyFit:
    """Sum-of-exponentials approximation of a kernel with its achieved error."""

    measure: BernsteinMeasure
    sup_rel_error: float
    rates: tuple
    t_range: tuple


def prony_fit(kernel, n_modes, t_range, rtol=None):
    """Approximate a kernel by n_modes exponential atoms on t_range.

    Kernels that already are finite exponential sums with at most n_modes
    atoms are returned exactly.  Otherwise the rates are fixed log-spaced
    across the reciprocal time window and only the weights are fitted, by
    nonnegative least squares iteratively reweighted toward the minimax
    relative error.  If ``rtol`` is given and the achieved sup-relative
    error exceeds it, PronyAccuracyError is raised.
    """
    t_lo, t_hi = float(t_range[0]), float(t_range[1])
    if not (0 < t_lo < t_hi):
        raise ValueError("t_range must satisfy 0 < t_lo < t_hi")
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")

    try:
        measure = kernel.bernstein()
        exact_atoms = (
            measure.density is None
            and measure.measure_of == "kernel"
            and 0 < len(measure.atoms) <= n_modes
        )
    except Exception:
        exact_atoms = False
    if exact_atoms:
        dense = np.geomspace(t_lo, t_hi, 400)
        err = float(np.max(np.abs(measure.laplace(dense) / kernel_eval(kernel, dense) - 1.0)))
        return PronyFit(
            measure=measure,
            sup_rel_error=err,
            rates=tuple(x for x, _ in measure.atoms),
            t_range=(t_lo, t_hi),
        )

    rates = np.geomspace(0.3 / t_hi, 1.5 / t_lo, n_modes)
    ts = np.geomspace(t_lo, t_hi, 90)
    kv = kernel_eval(kernel, ts)
    design = np.exp(-np.outer(ts, rates)) / kv[:, None]
    gam = np.ones(ts.size)
    best = None
    for _ in range(25):
        g = np.sqrt(gam)
        weights, _ = nnls(design * g[:, None], g)
        resid = np.abs(design @ weights - 1.0)
        sup = float(resid.max())
        if best is None or sup < best[0]:
            best = (sup, weights.copy())
        gam = gam * (resid + 1e-12)
        gam /= gam.mean()
    weights = best[1]
    active = weights > 0
    dense = np.geomspace(t_lo, t_hi, 700)
    approx = np.exp(-np.outer(dense, rates[active])) @ weights[active]
    err = float(np.max(np.abs(approx / kernel_eval(kernel, dense) - 1.0)))
    if rtol is not None and err > rtol:
        raise PronyAccuracyError(
            f"prony accuracy not met: achieved {err:.3e} > requested {rtol:.3e}",
            achieved=err,
        )
    atoms = tuple((float(x), float(w)) for x, w in zip(rates[active], weights[active]))
    return PronyFit(
        measure=BernsteinMeasure(atoms=atoms),
        sup_rel_error=err,
        rates=tuple(rates),
        t_range=(t_lo, t_hi),
    )


def markovian_embedding(params, measure):
    """Linear SDE whose (x, v) marginal is the Langevin system with kernel
    K = sum w_n exp(-x_n |t|).

    State layout: (x, v, z_1..z_N, s_1..s_N) in the trapped case, with x
    dropped when gamma = 0.  The s_n are Ornstein-Uhlenbeck factors scaled so
    that their sum has autocovariance beta*kbt*K(t-s); at kbt = 0 the noise
    matrix vanishes.
    """
    if measure.density is not None:
        raise SdeError("embedding needs a finite atom list (fit a Prony surrogate first)")
    atoms = measure.atoms
    if any(x <= 0 or w <= 0 for x, w in atoms):
        raise SdeError("invalid embedding: atom rates and weights must be positive")
    n = len(atoms)
    trapped = params.trapped
    dim = (2 if trapped else 1) + 2 * n
    iv = 1 if trapped else 0
    iz = iv + 1
    iu = iz + n
    a = np.zeros((dim, dim))
    b = np.zeros((dim, 1 + n))
    labels = (("x", "v") if trapped else ("v",)) + tuple(
        f"z{k + 1}" for k in range(n)
    ) + tuple(f"s{k + 1}" for k in range(n))
    m = params.m
    if trapped:
        a[0, iv] = 1.0
        a[iv, 0] = -params.gamma / m
    a[iv, iv] = -params.lam / m
    b[iv, 0] = math.sqrt(2.0 * params.lam * params.kbt) / m
    for k, (x, w) in enumerate(atoms):
        a[iz + k, iv] = 1.0
        a[iz + k, iz + k] = -x
        a[iv, iz + k] = -params.beta * w / m
        a[iu + k, iu + k] = -x
        a[iv, iu + k] = 1.0 / m
        b[iu + k, 1 + k] = math.sqrt(2.0 * x * params.beta * params.kbt * w)
    return LinearSde(drift=a, noise=b, labels=labels, params=params, atoms=atoms)


def lyapunov_stationary_cov(sde):
    """Stationary covariance S solving A S + S A^T + B B^T = 0.

    Raises SdeError when the drift is not stable; the returned matrix is
    symmetrized and verified to residual <= 1e-10 relative to |B B^T|.
    """
    if not sde.is_stable():
        raise SdeError(
            f"no stationary covariance: drift spectral abscissa "
            f"{sde.spectral_abscissa():.3e} is not negative"
        )
    q = sde.noise @ sde.noise.T
    cov = linalg.solve_continuous_lyapunov(sde.drift, -q)
    cov = 0.5 * (cov + cov.T)
    resid = np.abs(sde.drift @ cov + cov @ sde.drift.T + q).max()
    scale = max(np.abs(q).max(), np.abs(cov).max(), 1e-300)
    if resid > 1e-10 * scale:
        raise SdeError(f"lyapunov solve residual {resid:.3e} exceeds tolerance")
    return cov


@dataclass(frozen=True)
class Ensemble:
    """Observable paths sampled on a common time grid.

    ``data`` has shape (n_paths, n_times, n_obs) with ``labels`` naming the
    observable columns.  Reproducible: identical (seed, dt, scheme) yield
    identical arrays.
    """

    times: np.ndarray
    data: np.ndarray
    labels: tuple
    seed: int
    scheme: str
    dt: float = None

    def column(self, label):
        return self.data[:, :, self.labels.index(label)]

    @property
    def n_paths(self):
        return self.data.shape[0]


def _path_rng(seed, path_index):
    # counter-based stream: disjoint counter blocks per path
    return np.random.Generator(np.random.Philox(key=seed, counter=path_index << 128))


def _sqrt_psd(mat):
    vals, vecs = np.linalg.eigh(0.5 * (mat + mat.T))
    vals = np.clip(vals, 0.0, None)
    return vecs * np.sqrt(vals)


def simulate_paths(
    sde,
    dt,
    t_max,
    n_paths,
    seed,
    scheme=SCHEME_EXACT,
    save_stride=1,
    save_noise=False,
    chunk_size=2000,
):
    """Sample stationary paths of the embedded system.

    Initial states are drawn from the Lyapunov stationary covariance, so the
    ensemble is stationary from t = 0 (no burn-in).  The default scheme uses
    the exact one-step Gaussian transition of the linear SDE and is unbiased
    in law for any dt; Euler-Maruyama is kept for regression comparison and
    warns when dt exceeds its linear stability bound.

    Each path consumes an independent counter-based substream of the master
    seed, so results do not depend on chunking.
    """
    if dt <= 0 or t_max <= 0:
        raise ValueError("dt and t_max must be positive")
    if scheme not in (SCHEME_EXACT, SCHEME_EULER):
        raise ValueError(f"unknown scheme {scheme!r}")
    n_steps = int(round(t_max / dt))
    dim = sde.dim()
    cov0 = lyapunov_stationary_cov(sde)
    l0 = _sqrt_psd(cov0)
    if scheme == SCHEME_EXACT:
        prop = linalg.expm(sde.drift * dt)
        qstep = cov0 - prop @ cov0 @ prop.T
        lstep = _sqrt_psd(qstep)
    else:
        prop = np.eye(dim) + sde.drift * dt
        lstep = math.sqrt(dt) * sde.noise
        growth = np.abs(np.linalg.eigvals(prop)).max()
        if growth >= 1.0:
            rates = np.linalg.eigvals(sde.drift)
            dt_max = np.min(-2.0 * rates.real / np.abs(rates) ** 2)
            warnings.warn(
                f"euler step dt={dt:g} exceeds the stability bound; "
                f"use dt < {dt_max:.3g}",
                stacklevel=2,
            )
    n_noise = lstep.shape[1]

    saved = np.arange(0, n_steps + 1, save_stride)
    obs_labels = [lab for lab in ("x", "v") if lab in sde.labels]
    obs_idx = [sde.labels.index(lab) for lab in obs_labels]
    noise_cols = [i for i, lab in enumerate(sde.labels) if lab.startswith("s")]
    if save_noise:
        obs_labels.append("F")
    out = np.empty((n_paths, saved.size, len(obs_labels)))
    p = sde.params
    fd_scale = (
        1.0 / math.sqrt(p.beta * p.kbt) if (save_noise and p is not None and p.kbt > 0) else 0.0
    )

    for start in range(0, n_paths, chunk_size):
        stop = min(start + chunk_size, n_paths)
        block = stop - start
        states = np.empty((block, dim))
        noise = np.empty((block, n_steps, n_noise))
        for j in range(block):
            rng = _path_rng(seed, start + j)
            states[j] = l0 @ rng.standard_normal(dim)
            noise[j] = rng.standard_normal((n_steps, n_noise))

        def record(pos):
            for c, idx in enumerate(obs_idx):
                out[start:stop, pos, c] = states[:, idx]
            if save_noise:
                summed = states[:, noise_cols].sum(axis=1) if noise_cols else 0.0
                out[start:stop, pos, -1] = fd_scale * summed

        record(0)
        save_pos = 1
        for step in range(n_steps):
            states = states @ prop.T + noise[:, step, :] @ lstep.T
            if save_pos < saved.size and step + 1 == saved[save_pos]:
                record(save_pos)
                save_pos += 1
    return Ensemble(
        times=saved * dt,
        data=out,
        labels=tuple(obs_labels),
        seed=seed,
        scheme=scheme,
        dt=dt,
    )


def ensemble_msd(ens, quantity):
    """Ensemble second moment of Int_0^t x ds or Int_0^t v ds.

    Path integrals use the cumulative trapezoid rule on the saved grid;
    standard errors are across-path errors of the squared integral.
    """
    if quantity in ("x_integral", POSITION_INTEGRAL):
        col, q = "x", POSITION_INTEGRAL
    elif quantity in ("v_integral", VELOCITY_INTEGRAL):
        col, q = "v", VELOCITY_INTEGRAL
    else:
        raise ValueError(f"unknown quantity {quantity!r}")
    y = ens.column(col)
    t = np.asarray(ens.times, dtype=float)
    steps = np.diff(t)
    increments = 0.5 * (y[:, 1:] + y[:, :-1]) * steps
    paths = np.cumsum(increments, axis=1)
    sq = paths ** 2
    n = max(ens.n_paths, 1)
    msd = sq.mean(axis=0) if ens.n_paths else np.zeros(t.size - 1)
    se = sq.std(axis=0, ddof=1) / math.sqrt(n) if ens.n_paths > 1 else np.zeros(t.size - 1)
    return MsdCurve(
        times=tuple(t[1:]), values=tuple(msd), quantity=q, stderr=tuple(se)
    )


def spectral_sample(ctx, omega_grid, t_grid, n_paths, seed):
    """Synthesize stationary (x, v) paths directly from the spectral density.

    ``omega_grid`` holds increasing positive cell edges; each cell carries an
    independent complex Gaussian amplitude with variance
    kbt/(2 pi) r11(mid) * width, and the velocity coordinate rides the same
    amplitudes weighted by the cell frequency, which reproduces the full
    2x2 cross-spectral structure including Cov(x, v) = 0.

    The grid must resolve the requested horizon: max cell width <= pi/t_max.
    """
    edges = np.asarray(omega_grid, dtype=float)
    if edges.ndim != 1 or edges.size < 3 or np.any(np.diff(edges) <= 0) or edges[0] < 0:
        raise SamplingGridError("omega grid must be increasing, positive cell edges")
    t = np.atleast_1d(np.asarray(t_grid, dtype=float))
    widths = np.diff(edges)
    t_span = float(np.max(np.abs(t))) if t.size else 0.0
    if t_span > 0 and widths.max() > math.pi / t_span:
        raise SamplingGridError(
            f"omega grid too coarse for t_max={t_span:g}: "
            f"max cell width {widths.max():.3g} > pi/t_max = {math.pi / t_span:.3g}"
        )
    mids = 0.5 * (edges[1:] + edges[:-1])
    dens = r11(ctx, mids)
    sigma = np.sqrt(ctx.params.kbt / (2.0 * math.pi) * dens * widths)
    rng = np.random.Generator(np.random.Philox(key=seed))
    xi = rng.standard_normal((n_paths, mids.size))
    eta = rng.standard_normal((n_paths, mids.size))
    ph = np.outer(mids, t)
    cos_t, sin_t = np.cos(ph), np.sin(ph)
    sqrt2 = math.sqrt(2.0)
    x = sqrt2 * ((xi * sigma) @ cos_t + (eta * sigma) @ sin_t)
    v = sqrt2 * ((eta * (sigma * mids)) @ cos_t - (xi * (sigma * mids)) @ sin_t)
    return Ensemble(
        times=t,
        data=np.stack([x, v], axis=-1),
        labels=("x", "v"),
        seed=seed,
        scheme="spectral",
    )


def default_spectral_grid(ctx, t_max=0.0, omega_min=1e-6, omega_max=None, n_log=2400):
    """Frequency cell edges adequate for var/cov estimation up to t_max.

    Log-spaced cells resolve the near-origin region; above omega = 1 the
    spacing is capped by the horizon's resolution requirement.
    """
    p = ctx.params
    if omega_max is None:
        omega_max = max(50.0, 10.0 * math.sqrt(p.gamma / p.m) if p.gamma > 0 else 50.0)
    low = np.geomspace(omega_min, 1.0, n_log)
    step = min(0.05, math.pi / (4.0 * t_max)) if t_max > 0 else 0.05
    high = np.arange(1.0 + step, omega_max + step, step)
    return np.concatenate([low, high])

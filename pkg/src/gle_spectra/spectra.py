"""Spectral densities of the stationary Langevin solution.

With Kc = Kcos(w) and Ks = Ksin(w),

    r11(w) = 2 (lam + beta Kc) / ((gamma - m w^2 + beta w Ks)^2
                                  + w^2 (lam + beta Kc)^2),
    r22(w) = w^2 r11(w),      r12(w) = i w r11(w),

and the spectral measure of (x, v) is kbt/(2 pi) (r_ij) dw.  The position
density r11 exists only in the trapped case gamma > 0; for the free particle
the velocity density r22 remains well defined (the w^2 factor cancels
against the denominator).
"""

from dataclasses import dataclass
import math

import numpy as np

from .kernels import GleParams, MemoryKernel, TailClass, kernel_tail_class
from .errors import TransformDomainError
from .quad import DEFAULT_QUAD, QuadConfig
from .transforms import abelian_limits, kcos_ksin_grid, transform


@dataclass(frozen=True)
class SpectralDensityCtx:
    """A (parameters, kernel) pair with the quadrature budget used on it."""

    params: GleParams
    kernel: MemoryKernel
    quad: QuadConfig = DEFAULT_QUAD

    def __post_init__(self):
        if not isinstance(self.kernel, MemoryKernel):
            raise TypeError("kernel must be a MemoryKernel preset")


def _pairs(ctx, w):
    return kcos_ksin_grid(ctx.kernel, w, quad=ctx.quad)


def _kcos_at_zero(ctx):
    return transform(ctx.kernel, 0.0, quad=ctx.quad).kcos


def r11(ctx, omega):
    """Position spectral density; defined for gamma > 0 only.  Even in omega.

    At omega = 0 the analytic limit 2(lam + beta Int K)/gamma^2 is returned
    for integrable kernels; other tail classes diverge at the origin and
    raise TransformDomainError.
    """
    p = ctx.params
    if not p.trapped:
        raise TransformDomainError(
            "position spectral density undefined for free particle (gamma = 0)"
        )
    omega = np.asarray(omega, dtype=float)
    scalar = omega.ndim == 0
    w = np.atleast_1d(omega)
    out = np.empty(w.shape)
    zero = w == 0.0
    if zero.any():
        out[zero] = 2.0 * (p.lam + p.beta * _kcos_at_zero(ctx)) / p.gamma ** 2
    if (~zero).any():
        wn = w[~zero]
        kc, ks = _pairs(ctx, wn)
        a = p.lam + p.beta * kc
        b = p.gamma - p.m * wn ** 2 + p.beta * wn * ks
        out[~zero] = 2.0 * a / (b * b + wn * wn * a * a)
    return float(out[0]) if scalar else out


def r22(ctx, omega):
    """Velocity spectral density w^2 r11(w); valid for gamma >= 0.

    For gamma = 0 the w^2 factor is cancelled analytically, which keeps the
    free-particle density finite at the origin for integrable kernels.
    """
    p = ctx.params
    omega = np.asarray(omega, dtype=float)
    scalar = omega.ndim == 0
    w = np.atleast_1d(omega)
    if p.trapped:
        out = np.where(w == 0.0, 0.0, w * w * np.atleast_1d(_r11_nonzero_or_zero(ctx, w)))
        return float(out[0]) if scalar else out
    out = np.empty(w.shape)
    zero = w == 0.0
    if zero.any():
        if kernel_tail_class(ctx.kernel).kind != TailClass.INTEGRABLE:
            raise TransformDomainError(
                "free-particle velocity density undefined at the origin "
                "for non-integrable kernels"
            )
        a0 = p.lam + p.beta * _kcos_at_zero(ctx)
        out[zero] = 2.0 / a0
    if (~zero).any():
        wn = w[~zero]
        kc, ks = _pairs(ctx, wn)
        a = p.lam + p.beta * kc
        b = p.m * wn - p.beta * ks
        out[~zero] = 2.0 * a / (b * b + a * a)
    return float(out[0]) if scalar else out


def _r11_nonzero_or_zero(ctx, w):
    """r11 on a grid that may contain 0; the zero entries are masked out."""
    out = np.zeros(w.shape)
    nz = w != 0.0
    if nz.any():
        out[nz] = np.atleast_1d(r11(ctx, w[nz]))
    return out


def r12(ctx, omega):
    """Cross spectral density i w r11(w); purely imaginary, conjugate of r21."""
    omega = np.asarray(omega, dtype=float)
    scalar = omega.ndim == 0
    w = np.atleast_1d(omega)
    vals = 1j * w * _r11_nonzero_or_zero(ctx, w)
    return complex(vals[0]) if scalar else vals


@dataclass(frozen=True)
class NearZeroAsymptote:
    """Leading behavior of r11 near the origin.

    kind "integrable": r11 -> rate (a constant);
    kind "critical":   r11 ~ rate * |log w|;
    kind "powerlaw":   r11 ~ rate * w^(alpha-1), exponent = alpha - 1.

    ``rate`` is extracted numerically at w = 1e-4 (with a half-frequency
    Richardson consistency factor), ``rate_predicted`` from the kernel's
    small-frequency transform constants.
    """

    kind: str
    exponent: float
    rate: float
    rate_predicted: float
    richardson_drift: float

    def shape(self, omega):
        w = abs(float(omega))
        if self.kind == TailClass.INTEGRABLE:
            return 1.0
        if self.kind == TailClass.CRITICAL:
            return abs(math.log(w))
        return w ** self.exponent


_RATE_PROBE = 1e-4


def near_zero_asymptote(ctx):
    """Classify and quantify the near-origin behavior of r11 (gamma > 0)."""
    p = ctx.params
    if not p.trapped:
        raise TransformDomainError("near-zero asymptote needs gamma > 0")
    tc = kernel_tail_class(ctx.kernel)
    ab = abelian_limits(ctx.kernel, quad=ctx.quad)
    if tc.kind == TailClass.INTEGRABLE:
        exponent = 0.0
        predicted = 2.0 * (p.lam + p.beta * ab.kcos_constant) / p.gamma ** 2
        shape = lambda w: 1.0
    elif tc.kind == TailClass.CRITICAL:
        exponent = 0.0
        predicted = 2.0 * p.beta * tc.constant / p.gamma ** 2
        shape = lambda w: abs(math.log(w))
    else:
        exponent = tc.alpha - 1.0
        predicted = 2.0 * p.beta * ab.kcos_constant / p.gamma ** 2
        shape = lambda w: w ** exponent
    rate = r11(ctx, _RATE_PROBE) / shape(_RATE_PROBE)
    rate_half = r11(ctx, 0.5 * _RATE_PROBE) / shape(0.5 * _RATE_PROBE)
    return NearZeroAsymptote(
        kind=tc.kind,
        exponent=exponent,
        rate=float(rate),
        rate_predicted=float(predicted),
        richardson_drift=float(abs(rate_half / rate - 1.0)),
    )

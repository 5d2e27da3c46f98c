#!/usr/bin/env python3
"""Spectral densities of the stationary trapped solution.

r11 is the position density; r22 = w^2 r11 and r12 = i w r11 complete the
2x2 spectral matrix.  Near the origin r11 is constant, log-divergent or
power-divergent according to the kernel's decay class, and every density
falls off like w^-4.
"""

import numpy as np

from gle_spectra import (
    GleParams,
    SpectralDensityCtx,
    near_zero_asymptote,
    parse_kernel_spec,
    r11,
    r22,
)

params = GleParams(m=1.0, lam=1.0, beta=1.0, gamma=2.0, kbt=1.0)

print("r11 profile for powerlaw:0.5 (trapped, gamma = 2):")
ctx = SpectralDensityCtx(params, parse_kernel_spec("powerlaw:0.5"))
for w in np.geomspace(1e-3, 1e2, 6):
    print(f"  omega = {w:9.3e}   r11 = {r11(ctx, w):12.6e}   r22 = {r22(ctx, w):12.6e}")

print("\nnear-origin classification (rate extracted at omega = 1e-4):")
for spec in ("rouse:[1,2]", "one-plus-t-inverse", "powerlaw:0.5"):
    ctx = SpectralDensityCtx(params, parse_kernel_spec(spec))
    nz = near_zero_asymptote(ctx)
    print(
        f"  {spec:20s} {nz.kind:11s} exponent {nz.exponent:+.2f}  "
        f"rate {nz.rate:.5f} (model {nz.rate_predicted:.5f}, "
        f"half-frequency drift {nz.richardson_drift:.1e})"
    )

print("\nhigh-frequency tail: w^4 r11 stays bounded")
ctx = SpectralDensityCtx(params, parse_kernel_spec("gaussian:1"))
for w in (10.0, 100.0, 1000.0):
    print(f"  omega = {w:6.0f}   w^4 r11 = {w**4 * r11(ctx, w):.6f}")

print("\nfree particle (gamma = 0) keeps only the velocity density:")
free = SpectralDensityCtx(GleParams(m=1.0, lam=1.0, beta=1.0, gamma=0.0, kbt=1.0),
                          parse_kernel_spec("rouse:1"))
for w in (0.0, 1.0, 10.0):
    print(f"  omega = {w:4.1f}   r22 = {r22(free, w):.6f}")

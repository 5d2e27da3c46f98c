#!/usr/bin/env python3
"""Equipartition of energy across the admissible kernel family.

For completely monotone kernels and for phi(t^2) kernels the stationary
solution obeys gamma E[x(0)^2] = m E[v(0)^2] = kbt, i.e. the frequency
integrals of r11 and r22 equal pi/gamma and pi/m exactly.  Both ratios are
evaluated here by adaptive quadrature, for the trapped and free cases.
"""

from gle_spectra import GleParams, SpectralDensityCtx, equipartition_report, parse_kernel_spec

PRESETS = ["powerlaw:0.3", "powerlaw:0.5", "powerlaw:0.7", "rouse:[1,2,4]", "gaussian:1", "cauchy:1,1"]

print("trapped particle (m=1, lambda=1, beta=1, gamma=2, kbt=1):")
print("kernel              gamma E[x^2]/kbt    m E[v^2]/kbt")
params = GleParams(m=1.0, lam=1.0, beta=1.0, gamma=2.0, kbt=1.0)
for spec in PRESETS:
    rep = equipartition_report(SpectralDensityCtx(params, parse_kernel_spec(spec)))
    print(f"{spec:20s}{rep.gamma_x_ratio:16.10f}{rep.m_v_ratio:18.10f}")

print("\nfree particle (gamma = 0), masses 1 and 2:")
print("kernel              m      m E[v^2]/kbt")
for spec in PRESETS:
    for m in (1.0, 2.0):
        params = GleParams(m=m, lam=1.0, beta=1.0, gamma=0.0, kbt=1.0)
        rep = equipartition_report(SpectralDensityCtx(params, parse_kernel_spec(spec)))
        print(f"{spec:20s}{m:4.1f}{rep.m_v_ratio:16.10f}")

"""Fourier cosine/sine transforms of memory kernels.

Three evaluation routes:

* ``closed_form``: explicit formulas (atom sums, power-law via Gamma,
  1/(1+t) via the sine/cosine integrals);
* ``cm_measure`` / ``phi_t2_faddeeva``: the Laplace-measure formulas
  Kcos +- i Ksin = Int (x +- i w)/(x^2 + w^2) mu(dx) for completely monotone
  kernels, and (sqrt(pi)/2) Int x^(-1/2) w(+-w/(2 sqrt x)) mu(dx) for
  phi(t^2) kernels;
* ``numeric``: direct oscillatory quadrature of the defining improper
  integrals, kept as the cross-check oracle for the other routes.

Kcos is even and Ksin odd in the frequency; all routes evaluate at |w| and
restore the sign of Ksin.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np
from scipy import special

from .errorfn import SQRT_PI, dawson, faddeeva
from .errors import NoBernsteinRepresentation, TransformDomainError
from .kernels import (
    Cauchy,
    ExpMixture,
    Gaussian,
    GeneralizedRouse,
    OnePlusTInverse,
    PowerLaw,
    TailClass,
    kernel_eval,
    kernel_tail_class,
)
from .quad import DEFAULT_QUAD, integrate_oscillatory, integrate_to_infinity

ROUTE_CLOSED = "closed_form"
ROUTE_CM = "cm_measure"
ROUTE_PHI = "phi_t2_faddeeva"
ROUTE_NUMERIC = "numeric"


@dataclass(frozen=True)
class TransformPair:
    """Values of the cosine and sine transforms at one frequency."""

    kcos: float
    ksin: float
    route: str


def available_routes(kernel):
    if isinstance(kernel, (GeneralizedRouse, ExpMixture)):
        return (ROUTE_CLOSED, ROUTE_CM, ROUTE_NUMERIC)
    if isinstance(kernel, (PowerLaw, OnePlusTInverse)):
        return (ROUTE_CLOSED, ROUTE_CM, ROUTE_NUMERIC)
    if isinstance(kernel, (Gaussian, Cauchy)):
        return (ROUTE_PHI, ROUTE_NUMERIC)
    return (ROUTE_NUMERIC,)


@lru_cache(maxsize=256)
def _measure_nodes(kernel):
    return kernel.bernstein().nodes()


def _cm_pair(kernel, w):
    """Measure route for completely monotone kernels; w > 0 array."""
    x, mw = _measure_nodes(kernel)
    denom = x * x + np.multiply.outer(w * w, np.ones_like(x))
    kcos = (x / denom) @ mw
    ksin = ((1.0 / denom) @ mw) * w
    return kcos, ksin


def _phi_pair(kernel, w):
    """Faddeeva route for phi(t^2) kernels; w > 0 array."""
    x, mw = _measure_nodes(kernel)
    inv_sqrt = 1.0 / np.sqrt(x)
    arg = 0.5 * np.multiply.outer(w, inv_sqrt)
    kcos = 0.5 * SQRT_PI * (np.exp(-arg * arg) @ (mw * inv_sqrt))
    ksin = dawson(arg) @ (mw * inv_sqrt)
    return kcos, ksin


def _closed_pair(kernel, w):
    if isinstance(kernel, (GeneralizedRouse, ExpMixture)):
        return _cm_pair(kernel, w)
    if isinstance(kernel, PowerLaw):
        a = kernel.alpha
        g = special.gamma(1.0 - a)
        scale = w ** (a - 1.0)
        return g * math.sin(0.5 * math.pi * a) * scale, g * math.cos(0.5 * math.pi * a) * scale
    if isinstance(kernel, OnePlusTInverse):
        si, ci = special.sici(w)
        rest = 0.5 * math.pi - si
        return np.sin(w) * rest - np.cos(w) * ci, np.cos(w) * rest + np.sin(w) * ci
    raise TransformDomainError(f"no closed form for {kernel!r}")


def _numeric_pair(kernel, w, quad):
    hint = -kernel.alpha if isinstance(kernel, PowerLaw) else None
    f = lambda t: kernel_eval(kernel, t)
    out = []
    for phase in ("cos", "sin"):
        val, _ = integrate_oscillatory(f, float(w), phase, 0.0, quad, left_exponent=hint)
        out.append(val)
    return out[0], out[1]


def kcos_ksin_grid(kernel, omegas, route=None, quad=DEFAULT_QUAD):
    """Vectorized (Kcos, Ksin) over an array of nonzero frequencies."""
    omegas = np.asarray(omegas, dtype=float)
    if np.any(omegas == 0.0):
        raise TransformDomainError("transform undefined at origin for grid evaluation")
    w = np.abs(omegas)
    route = route or available_routes(kernel)[0]
    if route == ROUTE_CLOSED:
        kcos, ksin = _closed_pair(kernel, w)
    elif route == ROUTE_CM:
        measure = kernel.bernstein()
        if measure.measure_of != "kernel":
            raise TransformDomainError("cm_measure route needs a completely monotone kernel")
        kcos, ksin = _cm_pair(kernel, w)
    elif route == ROUTE_PHI:
        measure = kernel.bernstein()
        if measure.measure_of != "phi":
            raise TransformDomainError("phi_t2_faddeeva route needs a phi(t^2) kernel")
        kcos, ksin = _phi_pair(kernel, w)
    elif route == ROUTE_NUMERIC:
        pairs = [_numeric_pair(kernel, wi, quad) for wi in np.atleast_1d(w)]
        kcos = np.array([p[0] for p in pairs]).reshape(w.shape)
        ksin = np.array([p[1] for p in pairs]).reshape(w.shape)
    else:
        raise ValueError(f"unknown route {route!r}")
    return kcos, ksin * np.sign(omegas)


def transform(kernel, omega, route=None, quad=DEFAULT_QUAD):
    """Cosine/sine transform pair of the kernel at a single frequency.

    At omega = 0 the pair (Int_0^oo K, 0) is returned for integrable kernels
    and TransformDomainError is raised otherwise.
    """
    omega = float(omega)
    if not np.isfinite(omega):
        raise ValueError("omega must be finite")
    if omega == 0.0:
        tc = kernel_tail_class(kernel)
        if tc.kind != TailClass.INTEGRABLE:
            raise TransformDomainError("transform undefined at origin")
        total = kernel.integral()
        if total is None:
            total, _ = integrate_to_infinity(lambda t: kernel_eval(kernel, t), 0.0, quad)
        return TransformPair(kcos=float(total), ksin=0.0, route=ROUTE_CLOSED)
    route = route or available_routes(kernel)[0]
    kcos, ksin = kcos_ksin_grid(kernel, np.array([omega]), route=route, quad=quad)
    return TransformPair(kcos=float(kcos[0]), ksin=float(ksin[0]), route=route)


def transform_complex(kernel, z, sign="minus"):
    """Analytic extension Kcos(z) -+ i Ksin(z) off the real axis.

    ``sign="minus"`` evaluates Kcos(z) - i Ksin(z) on the closed lower
    half-plane; ``sign="plus"`` evaluates Kcos(z) + i Ksin(z) on the closed
    upper half-plane.  Only these half-planes carry a measure-based
    representation; other arguments raise TransformDomainError.
    """
    z = complex(z)
    if z == 0:
        raise TransformDomainError("transform undefined at origin")
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ValueError("z must be finite")
    if sign not in ("minus", "plus"):
        raise ValueError("sign must be 'minus' or 'plus'")
    if sign == "minus" and z.imag > 0:
        raise TransformDomainError("analytic extension not defined here (need Im z <= 0)")
    if sign == "plus" and z.imag < 0:
        raise TransformDomainError("analytic extension not defined here (need Im z >= 0)")
    try:
        measure = kernel.bernstein()
    except NoBernsteinRepresentation:
        raise TransformDomainError(
            "complex extension needs a completely monotone or phi(t^2) kernel"
        )
    x, mw = _measure_nodes(kernel)
    if measure.measure_of == "kernel":
        denom = x + 1j * z if sign == "minus" else x - 1j * z
        return complex(np.sum(mw / denom))
    arg = (-z if sign == "minus" else z) / (2.0 * np.sqrt(x))
    return complex(0.5 * SQRT_PI * np.sum(mw / np.sqrt(x) * faddeeva(arg)))


@lru_cache(maxsize=64)
def oscillatory_power_constant(alpha, phase):
    """Int_0^oo cos(u)/u^alpha du (or sin), by oscillatory quadrature."""
    val, _ = integrate_oscillatory(
        lambda u: u ** (-alpha), 1.0, phase, 0.0, DEFAULT_QUAD, left_exponent=-alpha
    )
    return val


@dataclass(frozen=True)
class AbelianAsymptote:
    """Small-frequency behavior of (Kcos, Ksin) with its limit constants.

    ``sharp`` names the components whose prediction converges fast enough to
    compare pointwise at small frequency; the critical-class Kcos rate
    c1*|log w| converges only logarithmically and is excluded.
    """

    kind: str
    kcos_constant: float
    ksin_constant: float
    alpha: float = None
    sharp: tuple = ()

    def predict(self, omega):
        w = abs(float(omega))
        if self.kind == TailClass.INTEGRABLE:
            return self.kcos_constant, 0.0
        if self.kind == TailClass.CRITICAL:
            return self.kcos_constant * abs(math.log(w)), self.ksin_constant
        scale = w ** (self.alpha - 1.0)
        return self.kcos_constant * scale, self.ksin_constant * scale


def abelian_limits(kernel, quad=DEFAULT_QUAD):
    """Limit constants of the transforms as the frequency tends to zero.

    integrable: (Kcos, Ksin) -> (Int_0^oo K, 0);
    critical:   Kcos ~ c1 |log w|,  Ksin -> c1 pi/2;
    power law:  w^(1-alpha) (Kcos, Ksin) -> c_alpha (Int cos(u)/u^alpha,
                Int sin(u)/u^alpha).
    """
    tc = kernel_tail_class(kernel)
    if tc.kind == TailClass.INTEGRABLE:
        total = kernel.integral()
        if total is None:
            total, _ = integrate_to_infinity(lambda t: kernel_eval(kernel, t), 0.0, quad)
        return AbelianAsymptote(
            kind=tc.kind, kcos_constant=float(total), ksin_constant=0.0, sharp=("kcos",)
        )
    if tc.kind == TailClass.CRITICAL:
        return AbelianAsymptote(
            kind=tc.kind,
            kcos_constant=tc.constant,
            ksin_constant=tc.constant * 0.5 * math.pi,
            sharp=("ksin",),
        )
    a = tc.alpha
    return AbelianAsymptote(
        kind=tc.kind,
        kcos_constant=tc.constant * oscillatory_power_constant(a, "cos"),
        ksin_constant=tc.constant * oscillatory_power_constant(a, "sin"),
        alpha=a,
        sharp=("kcos", "ksin"),
    )

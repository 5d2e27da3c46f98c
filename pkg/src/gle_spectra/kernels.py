"""Physical parameters, memory-kernel presets, tail classes and Laplace measures.

Every preset kernel is even, positive away from t = 0, and eventually
decreasing, so it is admissible as a memory kernel of the stationary
generalized Langevin equation.  Completely monotone presets (and presets of
the form phi(t^2) with phi completely monotone) expose their representing
measure mu with K(t) = Int exp(-t x) mu(dx), either as a finite list of atoms
or as a density discretized by Gauss-Legendre panels on log-spaced intervals.
"""

from dataclasses import dataclass, field
from functools import lru_cache
import json
import math

import numpy as np
from scipy import special

from .errors import KernelDomainError, NoBernsteinRepresentation


@dataclass(frozen=True)
class GleParams:
    """Physical constants of the Langevin system.

    m : particle mass (> 0)
    lam : viscous drag coefficient (>= 0)
    beta : memory coupling strength (> 0)
    gamma : harmonic stiffness (>= 0); gamma = 0 is the free particle
    kbt : thermal energy k_B*T (>= 0)
    """

    m: float = 1.0
    lam: float = 1.0
    beta: float = 1.0
    gamma: float = 0.0
    kbt: float = 1.0

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError("m must be > 0")
        if self.lam < 0:
            raise ValueError("lambda must be >= 0")
        if not self.beta > 0:
            raise ValueError("beta must be > 0")
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")
        if self.kbt < 0:
            raise ValueError("kbt must be >= 0")

    @property
    def trapped(self):
        return self.gamma > 0


@dataclass(frozen=True)
class TailClass:
    """Large-time decay class of a kernel.

    kind is one of "integrable", "critical" (K ~ c1/t) or "powerlaw"
    (K ~ c_alpha * t^-alpha with alpha in (0, 1)); ``constant`` carries the
    limit c = lim t^alpha K(t) where applicable.
    """

    kind: str
    alpha: float = None
    constant: float = None

    INTEGRABLE = "integrable"
    CRITICAL = "critical"
    POWERLAW = "powerlaw"


@dataclass(frozen=True)
class BernsteinMeasure:
    """Positive measure mu on (0, oo) with K(t) = Int exp(-t x) mu(dx).

    ``atoms`` is a tuple of (location, weight) pairs; ``density`` an optional
    module-level callable for an absolutely continuous part, integrated over
    (x_lo, x_hi) when discretized.  ``measure_of`` records whether mu
    represents the kernel itself ("kernel", completely monotone case) or the
    outer function phi of a phi(t^2) kernel ("phi").
    """

    atoms: tuple = ()
    density: object = None
    x_lo: float = 1e-16
    x_hi: float = 1.0
    measure_of: str = "kernel"
    nodes_per_decade: int = 12

    def __post_init__(self):
        for x, w in self.atoms:
            if x <= 0:
                raise ValueError("atoms must sit at x > 0 (no mass at the origin)")
            if w <= 0:
                raise ValueError("atom weights must be positive")

    def nodes(self):
        """Quadrature representation (locations, weights) of the measure."""
        xs = [np.array([x for x, _ in self.atoms])]
        ws = [np.array([w for _, w in self.atoms])]
        if self.density is not None:
            px, pw = _log_panels(self.x_lo, self.x_hi, self.nodes_per_decade)
            xs.append(px)
            ws.append(pw * self.density(px))
        return np.concatenate(xs), np.concatenate(ws)

    def laplace(self, t):
        """Int exp(-t x) mu(dx), elementwise over t >= 0."""
        x, w = self.nodes()
        t = np.asarray(t, dtype=float)
        return np.exp(-np.multiply.outer(t, x)) @ w

    def finiteness(self):
        """The measure-moment integrals that must be finite, as a dict."""
        x, w = self.nodes()
        low = x < 1.0
        out = {
            "mass_below_1": float(w[low].sum()),
            "inv_x_above_1": float((w[~low] / x[~low]).sum()),
        }
        if self.measure_of == "phi":
            out["inv_sqrt_x_above_1"] = float((w[~low] / np.sqrt(x[~low])).sum())
        return out


@lru_cache(maxsize=64)
def _log_panels(x_lo, x_hi, per_decade):
    """Gauss-Legendre nodes/weights for Int f(x) dx over log-spaced panels."""
    gl_x, gl_w = np.polynomial.legendre.leggauss(per_decade)
    n_panels = max(1, int(math.ceil(2.0 * math.log10(x_hi / x_lo))))  # half-decades
    edges = np.geomspace(x_lo, x_hi, n_panels + 1)
    s_edges = np.log(edges)
    xs, ws = [], []
    for i in range(n_panels):
        mid = 0.5 * (s_edges[i] + s_edges[i + 1])
        half = 0.5 * (s_edges[i + 1] - s_edges[i])
        s = mid + half * gl_x
        x = np.exp(s)
        xs.append(x)
        ws.append(half * gl_w * x)  # dx = x ds
    return np.concatenate(xs), np.concatenate(ws)


class MemoryKernel:
    """Base class for memory kernels; subclasses are immutable presets."""

    def eval(self, t):
        raise NotImplementedError

    def tail_class(self):
        raise NotImplementedError

    def bernstein(self):
        raise NoBernsteinRepresentation(
            f"no Bernstein representation implemented for {type(self).__name__}"
        )

    def integral(self):
        """Int_0^oo K(t) dt if the kernel is integrable, else None."""
        return None

    def spec(self):
        raise NotImplementedError

    def __repr__(self):
        return self.spec()


def _abs_t(t):
    return np.abs(np.asarray(t, dtype=float))


@dataclass(frozen=True, repr=False)
class PowerLaw(MemoryKernel):
    """K(t) = |t|^-alpha, alpha in (0, 1).  Completely monotone; K(0) = oo."""

    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("powerlaw alpha must lie in (0, 1)")

    def eval(self, t):
        at = _abs_t(t)
        if np.any(at == 0.0):
            raise KernelDomainError("power-law kernel is singular at origin")
        return at ** (-self.alpha)

    def tail_class(self):
        return TailClass(TailClass.POWERLAW, alpha=self.alpha, constant=1.0)

    def bernstein(self):
        a = self.alpha
        # density x^(a-1)/Gamma(a); cutoffs chosen so both the missing mass
        # below x_lo (~ x_lo^a) and the x^(a-2) tail beyond x_hi fall below
        # 1e-12 of typical kernel values
        lo = 10.0 ** (-math.ceil(14.0 / a))
        hi = 10.0 ** math.ceil(14.0 / (1.0 - a))
        return BernsteinMeasure(
            density=_powerlaw_density(a), x_lo=lo, x_hi=hi, measure_of="kernel"
        )

    def spec(self):
        return f"powerlaw:{self.alpha:g}"


class _PowerLawDensity:
    def __init__(self, alpha):
        self.alpha = alpha
        self.norm = 1.0 / special.gamma(alpha)

    def __call__(self, x):
        return self.norm * x ** (self.alpha - 1.0)


@lru_cache(maxsize=32)
def _powerlaw_density(alpha):
    return _PowerLawDensity(alpha)


@dataclass(frozen=True, repr=False)
class GeneralizedRouse(MemoryKernel):
    """K(t) = (1/N) sum_n exp(-|t|/tau_n) over relaxation times tau_n > 0."""

    taus: tuple

    def __post_init__(self):
        object.__setattr__(self, "taus", tuple(float(t) for t in self.taus))
        if len(self.taus) == 0 or any(t <= 0 for t in self.taus):
            raise ValueError("relaxation times must be positive and nonempty")

    def eval(self, t):
        at = _abs_t(t)
        rates = 1.0 / np.array(self.taus)
        return np.exp(-np.multiply.outer(at, rates)).mean(axis=-1)

    def tail_class(self):
        return TailClass(TailClass.INTEGRABLE)

    def bernstein(self):
        n = len(self.taus)
        return BernsteinMeasure(
            atoms=tuple((1.0 / tau, 1.0 / n) for tau in self.taus),
            measure_of="kernel",
        )

    def integral(self):
        return float(np.mean(self.taus))

    def spec(self):
        return "rouse:" + ",".join(f"{t:g}" for t in self.taus)


@dataclass(frozen=True, repr=False)
class ExpMixture(MemoryKernel):
    """K(t) = sum_j w_j exp(-x_j |t|) given directly by a measure's atoms."""

    measure: BernsteinMeasure

    def __post_init__(self):
        if self.measure.measure_of != "kernel":
            raise ValueError("expmix measure must represent the kernel itself")

    def eval(self, t):
        return self.measure.laplace(_abs_t(t))

    def tail_class(self):
        return TailClass(TailClass.INTEGRABLE)

    def bernstein(self):
        return self.measure

    def integral(self):
        x, w = self.measure.nodes()
        return float((w / x).sum())

    def spec(self):
        atoms = ";".join(f"{x:g},{w:g}" for x, w in self.measure.atoms)
        return f"expmix:{atoms}"


@dataclass(frozen=True, repr=False)
class Gaussian(MemoryKernel):
    """K(t) = exp(-scale * t^2); phi(t^2) with phi(s) = exp(-scale * s)."""

    scale: float

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("gaussian scale must be > 0")

    def eval(self, t):
        return np.exp(-self.scale * _abs_t(t) ** 2)

    def tail_class(self):
        return TailClass(TailClass.INTEGRABLE)

    def bernstein(self):
        return BernsteinMeasure(atoms=((self.scale, 1.0),), measure_of="phi")

    def integral(self):
        return 0.5 * math.sqrt(math.pi / self.scale)

    def spec(self):
        return f"gaussian:{self.scale:g}"


@dataclass(frozen=True, repr=False)
class Cauchy(MemoryKernel):
    """K(t) = (1 + (t/scale)^2)^-alpha; phi(t^2) with completely monotone phi.

    The tail is t^-2alpha, so the kernel is integrable for 2*alpha > 1,
    critical for 2*alpha = 1 and a power-law tail otherwise.
    """

    alpha: float
    scale: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("cauchy alpha must be > 0")
        if not self.scale > 0:
            raise ValueError("cauchy scale must be > 0")

    def eval(self, t):
        return (1.0 + (_abs_t(t) / self.scale) ** 2) ** (-self.alpha)

    def tail_class(self):
        two_a = 2.0 * self.alpha
        c = self.scale ** two_a
        if two_a > 1.0:
            return TailClass(TailClass.INTEGRABLE)
        if two_a == 1.0:
            return TailClass(TailClass.CRITICAL, constant=c)
        return TailClass(TailClass.POWERLAW, alpha=two_a, constant=c)

    def bernstein(self):
        # bottom cutoff keeps the missing x^(alpha-1) mass below 1e-12
        lo = 10.0 ** (-math.ceil(14.0 / min(self.alpha, 1.0)))
        return BernsteinMeasure(
            density=_cauchy_density(self.alpha, self.scale),
            x_lo=lo,
            x_hi=max(64.0, 750.0 / self.scale ** 2),
            measure_of="phi",
        )

    def integral(self):
        if 2.0 * self.alpha <= 1.0:
            return None
        a, s = self.alpha, self.scale
        return float(
            0.5 * s * math.sqrt(math.pi) * special.gamma(a - 0.5) / special.gamma(a)
        )

    def spec(self):
        return f"cauchy:{self.alpha:g},{self.scale:g}"


class _CauchyDensity:
    # phi(s) = (1 + s/sigma^2)^-alpha  =>  density sigma^2a x^(a-1) e^(-sigma^2 x)/Gamma(a)
    def __init__(self, alpha, scale):
        self.alpha = alpha
        self.scale = scale
        self.norm = scale ** (2.0 * alpha) / special.gamma(alpha)

    def __call__(self, x):
        return self.norm * x ** (self.alpha - 1.0) * np.exp(-self.scale ** 2 * x)


@lru_cache(maxsize=32)
def _cauchy_density(alpha, scale):
    return _CauchyDensity(alpha, scale)


@dataclass(frozen=True, repr=False)
class OnePlusTInverse(MemoryKernel):
    """K(t) = 1/(1 + |t|): completely monotone with the critical 1/t tail."""

    def eval(self, t):
        return 1.0 / (1.0 + _abs_t(t))

    def tail_class(self):
        return TailClass(TailClass.CRITICAL, constant=1.0)

    def bernstein(self):
        return BernsteinMeasure(
            density=_one_plus_t_density, x_lo=1e-16, x_hi=750.0, measure_of="kernel"
        )

    def spec(self):
        return "one-plus-t-inverse"


def _one_plus_t_density(x):
    return np.exp(-x)


def kernel_eval(kernel, t):
    """K(|t|); symmetric in t.  Raises KernelDomainError where K is singular."""
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise ValueError("t must be finite")
    out = kernel.eval(t)
    return float(out) if np.ndim(t) == 0 else out


def kernel_tail_class(kernel):
    """Decay class of the kernel with its limiting constant."""
    return kernel.tail_class()


def bernstein_of(kernel):
    """Representing measure of a completely monotone or phi(t^2) kernel."""
    return kernel.bernstein()


@dataclass
class ValidationReport:
    """Outcome of validate_kernel; failures are recorded, never raised."""

    checks: dict = field(default_factory=dict)

    def record(self, name, passed, detail=""):
        self.checks[name] = (bool(passed), detail)

    @property
    def ok(self):
        return all(passed for passed, _ in self.checks.values())


def validate_kernel(kernel, probe_grid, quad=None):
    """Spot-check admissibility of a kernel on a strictly increasing grid.

    ``kernel`` may be a MemoryKernel or a bare callable t -> K(t) (used for
    tabulated or experimental kernels).  Checks symmetry, positivity, an
    eventually-decreasing tail, and positivity of the cosine transform at a
    few frequencies.
    """
    from .quad import DEFAULT_QUAD, integrate_oscillatory

    grid = np.asarray(probe_grid, dtype=float)
    if grid.ndim != 1 or grid.size < 4 or np.any(np.diff(grid) <= 0) or grid[0] <= 0:
        raise ValueError("probe grid must be strictly increasing and positive")
    f = kernel.eval if isinstance(kernel, MemoryKernel) else kernel
    report = ValidationReport()

    vals = np.asarray(f(grid), dtype=float)
    neg_vals = np.asarray(f(-grid), dtype=float)
    sym_err = float(np.max(np.abs(vals - neg_vals) / np.maximum(np.abs(vals), 1e-300)))
    report.record("symmetry", sym_err < 1e-12, f"max relative asymmetry {sym_err:.2e}")

    positive = bool(np.all(vals > 0))
    report.record("positivity", positive, "K > 0 on grid" if positive else "non-positive sample")

    tail = vals[grid >= grid[len(grid) // 2]]
    decreasing = bool(np.all(np.diff(tail) <= 1e-12 * np.abs(tail[:-1])))
    report.record("monotone_tail", decreasing, "eventually decreasing on grid")

    if positive:
        cfg = quad or DEFAULT_QUAD
        kcos_ok, detail = True, []
        for omega in (0.5, 2.0, 20.0):
            try:
                val, _ = integrate_oscillatory(f, omega, "cos", 0.0, cfg)
            except Exception as exc:  # report, never throw
                kcos_ok = False
                detail.append(f"omega={omega:g}: {exc}")
                continue
            detail.append(f"omega={omega:g}: {val:.3e}")
            if val <= 0:
                kcos_ok = False
        report.record("kcos_positive", kcos_ok, "; ".join(detail))
    else:
        report.record("kcos_positive", False, "skipped: kernel not positive")
    return report


def parse_kernel_spec(text):
    """Parse the kernel grammar used by the CLI and JSON configs.

    Accepted forms: ``powerlaw:<alpha>``, ``rouse:<tau1,tau2,...>``,
    ``gaussian:<scale>``, ``cauchy:<alpha>,<scale>``, ``one-plus-t-inverse``,
    and ``expmix:@<file.json>`` where the file holds atom pairs [[x, w], ...].
    """
    text = text.strip()
    if text == "one-plus-t-inverse":
        return OnePlusTInverse()
    name, sep, arg = text.partition(":")
    if not sep:
        raise ValueError(f"unknown kernel spec {text!r}")
    arg = arg.strip().lstrip("[").rstrip("]")
    if name == "powerlaw":
        return PowerLaw(alpha=float(arg))
    if name == "rouse":
        return GeneralizedRouse(taus=tuple(float(v) for v in arg.split(",")))
    if name == "gaussian":
        return Gaussian(scale=float(arg))
    if name == "cauchy":
        parts = [float(v) for v in arg.split(",")]
        if len(parts) != 2:
            raise ValueError("cauchy spec needs alpha,scale")
        return Cauchy(alpha=parts[0], scale=parts[1])
    if name == "expmix":
        if not arg.startswith("@"):
            raise ValueError("expmix spec must reference a file: expmix:@atoms.json")
        with open(arg[1:], encoding="utf-8") as fh:
            pairs = json.load(fh)
        return ExpMixture(
            BernsteinMeasure(atoms=tuple((float(x), float(w)) for x, w in pairs))
        )
    raise ValueError(f"unknown kernel spec {text!r}")

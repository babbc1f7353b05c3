"""Spectra, eigenfunctions, and spectral densities for every extension.

For each self-adjoint Hamiltonian the machinery is the standard triple of
solutions of (H - W) u = 0:

* ``u``      real-entire in W, satisfying the boundary condition at 0,
* ``u_tilde`` a second real-entire solution, independent of u,
* ``v``      the solution decaying at infinity, with
  v = u + (omega / omega_tilde) u_tilde.

The Wronskian function omega(W) = -Wr(u, v) carries the whole spectrum: its
isolated real zeros on E < 0 are the bound levels (weight -1/omega'(E0)),
and pi^-1 Im omega^-1(E + i0) is the continuous spectral density.  The
closed forms for every region are implemented directly, and the resolvent
diagonal M(c; W) = u v / omega gives the independent Green's-function route
to the same density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import bisect

from .extensions import ExtensionSpec, Region
from .special import (
    EULER_GAMMA,
    _h1nu,
    _inu,
    _jnu,
    _knu,
    _r0,
    theta_sigma,
)

__all__ = [
    "Bound",
    "Continuum",
    "BoundState",
    "SpectralMeasure",
    "FundamentalTriple",
    "IllConditionedEvaluationError",
    "fundamental_solutions",
    "omega",
    "find_bound_levels",
    "bound_states",
    "spectral_density",
    "eigenfunction",
    "m_function",
    "greens_density",
    "bound_state_weight_from_omega",
    "phase_function",
    "spectral_measure",
]


class IllConditionedEvaluationError(RuntimeError):
    """Raised when an evaluation point makes the requested quantity 0/0-like."""


@dataclass(frozen=True)
class Bound:
    """Selector for the n-th bound state (n = 0 for single-level regimes)."""
    n: int = 0


@dataclass(frozen=True)
class Continuum:
    """Selector for the continuum eigenfunction at energy E >= 0."""
    E: float


@dataclass(frozen=True)
class BoundState:
    n: int
    energy: float
    weight: float
    profile: Callable


@dataclass(frozen=True)
class SpectralMeasure:
    bound: tuple
    density: Callable
    spec: ExtensionSpec


@dataclass(frozen=True)
class FundamentalTriple:
    u: Callable
    u_tilde: Callable | None
    v: Callable
    omega: complex
    omega_tilde: float
    W: complex
    spec: ExtensionSpec


# ----------------------------------------------------------------------
# branch helpers
# ----------------------------------------------------------------------


def _beta(W: complex) -> complex:
    """sqrt(W) with the branch Im beta >= 0 (upper half-plane convention)."""
    W = complex(W)
    if W.imag < 0.0:
        raise ValueError("W must lie in the closed upper half-plane")
    if W.imag == 0.0:
        if W.real >= 0.0:
            return complex(math.sqrt(W.real), 0.0)
        return complex(0.0, math.sqrt(-W.real))
    return complex(np.sqrt(abs(W)) * np.exp(0.5j * np.angle(W)))


def _rotated_beta(W: complex, k0: float) -> complex:
    """e^{-i pi/2} beta / (2 k0), exactly real for E < 0."""
    W = complex(W)
    if W.imag == 0.0 and W.real < 0.0:
        return complex(math.sqrt(-W.real) / (2.0 * k0), 0.0)
    return -1j * _beta(W) / (2.0 * k0)


def _lam_tilde(spec: ExtensionSpec) -> float:
    """lambda * Gamma(1-kappa) / Gamma(1+kappa) for region 2."""
    kap = spec.regime.kappa
    return spec.lam.finite * math.gamma(1.0 - kap) / math.gamma(1.0 + kap)


def _theta_tilde(spec: ExtensionSpec) -> float:
    return spec.theta + theta_sigma(spec.regime.sigma)


def _maybe_real(arr, W: complex):
    """Real-entire solutions are real on the real W axis."""
    if complex(W).imag == 0.0:
        return np.asarray(arr).real
    return arr


# ----------------------------------------------------------------------
# building-block solutions (any W in the closed upper half-plane)
# ----------------------------------------------------------------------


def _u1(nu: complex, k0: float, x, W: complex):
    """(beta/2k0)^-nu x^(1/2) J_nu(beta x); real-entire in W."""
    beta = _beta(W)
    x = np.asarray(x, dtype=float)
    pref = np.exp(-nu * np.log(beta / (2.0 * k0)))
    return pref * np.sqrt(x) * _jnu(nu, beta * x)


def _u2(nu: complex, k0: float, x, W: complex):
    """(beta/2k0)^+nu x^(1/2) J_-nu(beta x)."""
    beta = _beta(W)
    x = np.asarray(x, dtype=float)
    pref = np.exp(nu * np.log(beta / (2.0 * k0)))
    return pref * np.sqrt(x) * _jnu(-nu, beta * x)


def _u3(k0: float, x, W: complex):
    """x^(1/2) [J_0(beta x) ln(k0 x) - R(beta x)]; the log partner at kappa=0."""
    beta = _beta(W)
    x = np.asarray(x, dtype=float)
    z = beta * x
    return np.sqrt(x) * (_jnu(0.0, z) * np.log(k0 * x) - _r0(z))


def _v1(nu: complex, k0: float, x, W: complex):
    """(beta/2k0)^nu x^(1/2) H1_nu(beta x); decays for Im W > 0."""
    beta = _beta(W)
    x = np.asarray(x, dtype=float)
    pref = np.exp(nu * np.log(beta / (2.0 * k0)))
    return pref * np.sqrt(x) * _h1nu(nu, beta * x)


# ----------------------------------------------------------------------
# the Wronskian function omega(W) per region (closed forms)
# ----------------------------------------------------------------------


def omega(spec: ExtensionSpec, W) -> complex:
    """omega(W) = -Wr(u, v); real with isolated zeros on E < 0."""
    W = complex(W)
    region = spec.region
    k0 = spec.k0
    if region is Region.R1:
        return -2j / np.pi
    if region is Region.R2:
        kap = spec.regime.kappa
        rot = _rotated_beta(W, k0)
        sk = math.sin(math.pi * kap)
        if spec.lam.is_infinite:
            # omega_{2,inf} = (2 sin(pi kappa)/pi) e^{-i pi kappa} (beta/2k0)^{2 kappa}
            beta = _beta(W)
            pw = np.exp(2.0 * kap * np.log(beta / (2.0 * k0)))
            return complex((2.0 * sk / np.pi) * np.exp(-1j * np.pi * kap) * pw)
        pw = np.exp(-2.0 * kap * np.log(rot))
        return complex(-(2.0 * sk / np.pi) * (_lam_tilde(spec) + pw))
    if region is Region.R3:
        beta = _beta(W)
        logb = np.log(beta / (2.0 * k0))
        if spec.lam.is_infinite:
            return complex(-1.0 / (logb + EULER_GAMMA - 0.5j * np.pi))
        return complex(logb + EULER_GAMMA - spec.lam.finite - 0.5j * np.pi)
    sig = spec.regime.sigma
    tt = _theta_tilde(spec)
    beta = _beta(W)
    p = np.exp(1j * sig * np.log(beta / (2.0 * k0)))
    a = np.exp(np.pi * sig) * np.exp(-1j * tt) * p
    b = np.exp(1j * tt) / p
    return complex(-1j * (4.0 / np.pi) * math.sinh(np.pi * sig) * (a + b) / (a - b))


def _omega_tilde(spec: ExtensionSpec) -> float:
    region = spec.region
    if region is Region.R2:
        sk = math.sin(math.pi * spec.regime.kappa)
        return -2.0 * sk / np.pi if spec.lam.is_infinite else 2.0 * sk / np.pi
    if region is Region.R3:
        return 1.0 if not spec.lam.is_infinite else -1.0
    if region is Region.R4:
        return -4.0 * math.sinh(np.pi * spec.regime.sigma) / np.pi
    raise ValueError("region 1 has no u_tilde")


# ----------------------------------------------------------------------
# fundamental solutions
# ----------------------------------------------------------------------


def fundamental_solutions(spec: ExtensionSpec, W) -> FundamentalTriple:
    """The (u, u_tilde, v) triple at complex energy W (Im W >= 0).

    u and u_tilde are real-entire (real arrays on the real axis); v decays
    at infinity for Im W > 0 and satisfies v = u + (omega/omega_tilde)
    u_tilde.
    """
    W = complex(W)
    if W.imag < 0.0:
        raise ValueError("W must lie in the closed upper half-plane")
    region = spec.region
    k0 = spec.k0

    if region is Region.R1:
        kap = spec.regime.kappa
        u = lambda x: _maybe_real(_u1(kap, k0, x, W), W)
        v = lambda x: _v1(kap, k0, x, W)
        return FundamentalTriple(u, None, v, omega(spec, W), float("nan"), W, spec)

    om = omega(spec, W)
    om_t = _omega_tilde(spec)
    ratio = om / om_t

    if region is Region.R2:
        kap = spec.regime.kappa
        if spec.lam.is_infinite:
            u = lambda x: _maybe_real(_u2(kap, k0, x, W), W)
            ut = lambda x: _maybe_real(_u1(kap, k0, x, W), W)
        else:
            lt = _lam_tilde(spec)
            u = lambda x: _maybe_real(_u1(kap, k0, x, W) + lt * _u2(kap, k0, x, W), W)
            ut = lambda x: _maybe_real(_u2(kap, k0, x, W), W)
    elif region is Region.R3:
        if spec.lam.is_infinite:
            u = lambda x: _maybe_real(_u1(0.0, k0, x, W), W)
            ut = lambda x: _maybe_real(_u3(k0, x, W), W)
        else:
            lam = spec.lam.finite
            u = lambda x: _maybe_real(lam * _u1(0.0, k0, x, W) + _u3(k0, x, W), W)
            ut = lambda x: _maybe_real(_u1(0.0, k0, x, W), W)
    else:
        sig = spec.regime.sigma
        tt = _theta_tilde(spec)
        nu = 1j * sig

        def _plus_minus(x):
            a = np.exp(1j * tt) * _u1(nu, k0, x, W)
            b = np.exp(-1j * tt) * _u2(nu, k0, x, W)
            return a, b

        def u(x):
            a, b = _plus_minus(x)
            return _maybe_real(a + b, W)

        def ut(x):
            a, b = _plus_minus(x)
            return _maybe_real(1j * (b - a), W)

    def v(x):
        return u(x) + ratio * ut(x)

    return FundamentalTriple(u, ut, v, om, om_t, W, spec)


# ----------------------------------------------------------------------
# bound states (closed forms) and independent root-finding on omega
# ----------------------------------------------------------------------

DEFAULT_WINDOW = (-5, 5)


def _window_range(window) -> range:
    if window is None:
        window = DEFAULT_WINDOW
    lo, hi = int(window[0]), int(window[1])
    if hi < lo:
        raise ValueError("empty level window")
    return range(lo, hi + 1)


def bound_states(spec: ExtensionSpec, window=None) -> list[BoundState]:
    """Discrete levels with weights and normalized profiles (closed forms).

    Empty for region 1, region 2 with lambda >= 0 or |lambda| = inf, and
    region 3 with |lambda| = inf.  Region 4 returns the levels with indices
    in ``window`` (default -5..5); profiles are positive near the origin.
    """
    region = spec.region
    k0 = spec.k0
    if region is Region.R1:
        return []
    if region is Region.R2:
        if spec.lam.is_infinite or spec.lam.finite >= 0.0:
            return []
        kap = spec.regime.kappa
        lt = _lam_tilde(spec)
        energy = -4.0 * k0 * k0 * abs(lt) ** (-1.0 / kap)
        weight = np.pi * energy / (2.0 * kap * math.sin(np.pi * kap) * lt)
        tau = math.sqrt(-energy)
        amp = math.sqrt(2.0 * math.sin(np.pi * kap) / (np.pi * kap)) * tau

        def profile(x, _amp=amp, _tau=tau, _kap=kap):
            x = np.asarray(x, dtype=float)
            return _amp * np.sqrt(x) * np.asarray(_knu(_kap, _tau * x + 0j)).real

        return [BoundState(0, energy, float(weight), profile)]
    if region is Region.R3:
        if spec.lam.is_infinite:
            return []
        energy = -4.0 * k0 * k0 * math.exp(2.0 * (spec.lam.finite - EULER_GAMMA))
        tau = math.sqrt(-energy)
        amp = math.sqrt(2.0) * tau

        def profile(x, _amp=amp, _tau=tau):
            x = np.asarray(x, dtype=float)
            return _amp * np.sqrt(x) * np.asarray(_knu(0.0, _tau * x + 0j)).real

        return [BoundState(0, energy, 2.0 * abs(energy), profile)]
    sig = spec.regime.sigma
    tt = _theta_tilde(spec)
    states = []
    for n in _window_range(window):
        energy = -4.0 * k0 * k0 * math.exp(2.0 * (np.pi / 2.0 + tt + np.pi * n) / sig)
        weight = np.pi * abs(energy) / (2.0 * sig * math.sinh(np.pi * sig))
        tau = math.sqrt(-energy)
        amp = math.sqrt(2.0 * math.sinh(np.pi * sig) * abs(energy) / (np.pi * sig))

        def profile(x, _amp=amp, _tau=tau, _sig=sig):
            x = np.asarray(x, dtype=float)
            return _amp * np.sqrt(x) * np.asarray(_knu(1j * _sig, _tau * x + 0j)).real

        states.append(BoundState(n, energy, float(weight), profile))
    return states


def find_bound_levels(spec: ExtensionSpec, window=None,
                      s_span: float = 45.0, scan_points: int = 6000) -> list[float]:
    """Bound levels by sign-change scanning + bisection on omega(E), E < 0.

    Independent of the closed forms in :func:`bound_states`: the zeros of
    the real function s -> omega(-4 k0^2 e^{2s}) are located by a sign scan
    (poles rejected by the size of omega at the crossing) and polished by
    bisection to ~1e-14 relative.
    """
    region = spec.region
    k0 = spec.k0
    if region is Region.R1:
        return []
    if region in (Region.R2, Region.R3) and spec.lam.is_infinite:
        return []
    if region is Region.R2 and spec.lam.finite >= 0.0:
        return []

    def f(s: float) -> float:
        return omega(spec, -4.0 * k0 * k0 * math.exp(2.0 * s)).real

    if region is Region.R4:
        sig = spec.regime.sigma
        tt = _theta_tilde(spec)
        spans = []
        for n in _window_range(window):
            # one zero strictly between consecutive poles of cot
            lo = (np.pi * n + tt) / sig + 1e-9 / sig
            hi = (np.pi * (n + 1) + tt) / sig - 1e-9 / sig
            spans.append((lo, hi))
    else:
        spans = [(-s_span, s_span)]

    roots = []
    for lo, hi in spans:
        grid = np.linspace(lo, hi, scan_points)
        vals = np.array([f(s) for s in grid])
        sign = np.sign(vals)
        for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
            s_root = bisect(f, grid[i], grid[i + 1], xtol=1e-15, rtol=8.9e-16)
            if abs(f(s_root)) < 1e-4 * (abs(vals[i]) + abs(vals[i + 1]) + 1.0):
                roots.append(-4.0 * k0 * k0 * math.exp(2.0 * s_root))
    return sorted(roots)


def bound_state_weight_from_omega(spec: ExtensionSpec, energy: float,
                                  rel_step: float = 1e-6) -> float:
    """Pole-extraction weight -1/omega'(E0) by central differencing."""
    h = abs(energy) * rel_step
    d = (omega(spec, energy + h).real - omega(spec, energy - h).real) / (2.0 * h)
    return -1.0 / d


# ----------------------------------------------------------------------
# densities and eigenfunctions (closed forms)
# ----------------------------------------------------------------------


def phase_function(spec: ExtensionSpec) -> Callable:
    """Phi(E) = sigma ln(E / 4 k0^2) - 2 theta_tilde for region 4, E > 0."""
    if spec.region is not Region.R4:
        raise ValueError("phase function is defined for region 4 only")
    sig = spec.regime.sigma
    tt = _theta_tilde(spec)
    k2 = 4.0 * spec.k0 ** 2

    def phi(E):
        E = np.asarray(E, dtype=float)
        return sig * np.log(E / k2) - 2.0 * tt

    return phi


def spectral_density(spec: ExtensionSpec, E) -> np.ndarray | float:
    """Continuous spectral density rho_c(E); zero for E < 0."""
    E = np.asarray(E, dtype=float)
    scalar = E.ndim == 0
    E = np.atleast_1d(E).astype(float)
    out = np.zeros_like(E)
    pos = E > 0.0
    k2 = 4.0 * spec.k0 ** 2
    region = spec.region
    if pos.any():
        e = E[pos] / k2
        if region is Region.R1:
            out[pos] = 0.5 * e ** spec.regime.kappa
        elif region is Region.R2:
            kap = spec.regime.kappa
            if spec.lam.is_infinite:
                out[pos] = 0.5 * e ** (-kap)
            else:
                lt = _lam_tilde(spec)
                zeta = 1.0 + 2.0 * lt * e ** kap * math.cos(np.pi * kap) \
                    + lt * lt * e ** (2.0 * kap)
                out[pos] = e ** kap / (2.0 * zeta)
        elif region is Region.R3:
            if spec.lam.is_infinite:
                out[pos] = 0.5
            else:
                zeta = (0.5 * np.log(e) + EULER_GAMMA - spec.lam.finite) ** 2 \
                    + np.pi ** 2 / 4.0
                out[pos] = 0.5 / zeta
        else:
            sig = spec.regime.sigma
            phi = sig * np.log(e) - 2.0 * _theta_tilde(spec)
            out[pos] = 1.0 / (4.0 * (math.cosh(np.pi * sig) + np.cos(phi)))
    return float(out[0]) if scalar else out


def eigenfunction(spec: ExtensionSpec, which, x, window=None):
    """Normalized eigenfunction value(s) at x > 0.

    ``which`` is :class:`Bound` (index n must exist) or :class:`Continuum`
    (E >= 0).  Bound profiles have unit L2 norm; continuum ones are
    delta-normalized in E.  The E = 0 edge returns zeros by convention.
    """
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    xv = np.atleast_1d(x).astype(float)
    if np.any(xv <= 0.0):
        raise ValueError("x must be positive")

    if isinstance(which, Bound):
        states = {s.n: s for s in bound_states(spec, window)}
        if which.n not in states:
            raise ValueError(f"no bound state with index {which.n} for {spec.describe()}")
        res = states[which.n].profile(xv)
        return float(res[0]) if scalar else res

    if not isinstance(which, Continuum):
        raise TypeError("which must be Bound(n) or Continuum(E)")
    E = float(which.E)
    if E < 0.0:
        raise ValueError("continuum energies are E >= 0")
    if E == 0.0:
        res = np.zeros_like(xv)
        return 0.0 if scalar else res

    k0 = spec.k0
    region = spec.region
    z = math.sqrt(E) * xv
    e = E / (4.0 * k0 * k0)
    if region is Region.R1:
        kap = spec.regime.kappa
        res = np.sqrt(xv) * np.asarray(_jnu(kap, z + 0j)).real / math.sqrt(2.0)
    elif region is Region.R2:
        kap = spec.regime.kappa
        if spec.lam.is_infinite:
            res = np.sqrt(xv) * np.asarray(_jnu(-kap, z + 0j)).real / math.sqrt(2.0)
        else:
            gam = _lam_tilde(spec) * e ** kap
            zeta = 1.0 + 2.0 * gam * math.cos(np.pi * kap) + gam * gam
            res = np.sqrt(xv) * (
                np.asarray(_jnu(kap, z + 0j)).real
                + gam * np.asarray(_jnu(-kap, z + 0j)).real
            ) / math.sqrt(2.0 * zeta)
    elif region is Region.R3:
        from .special import _y0
        j0 = np.asarray(_jnu(0.0, z + 0j)).real
        if spec.lam.is_infinite:
            res = np.sqrt(xv) * j0 / math.sqrt(2.0)
        else:
            lt = spec.lam.finite - EULER_GAMMA - 0.5 * math.log(e)
            zeta = lt * lt + np.pi ** 2 / 4.0
            y0 = np.asarray(_y0(z + 0j)).real
            res = np.sqrt(xv) * (lt * j0 + 0.5 * np.pi * y0) / math.sqrt(2.0 * zeta)
    else:
        sig = spec.regime.sigma
        tt = _theta_tilde(spec)
        phi = sig * math.log(e) - 2.0 * tt
        coef = np.exp(1j * (tt - 0.5 * sig * math.log(e)))
        term = coef * np.asarray(_jnu(1j * sig, z + 0j))
        res = np.sqrt(xv) * term.real / math.sqrt(math.cosh(np.pi * sig) + math.cos(phi))
    return float(res[0]) if scalar else res


# ----------------------------------------------------------------------
# Green's-function route
# ----------------------------------------------------------------------


def m_function(spec: ExtensionSpec, c: float, W) -> complex:
    """Resolvent diagonal M(c; W) = u(c; W) v(c; W) / omega(W)."""
    if not c > 0.0:
        raise ValueError("c must be positive")
    triple = fundamental_solutions(spec, W)
    u_c = complex(np.asarray(triple.u(c)).reshape(()))
    v_c = complex(np.asarray(triple.v(c)).reshape(()))
    return u_c * v_c / triple.omega


def greens_density(spec: ExtensionSpec, E: float, eps: float = 1e-6,
                   c: float = 1.0) -> float:
    """Spectral density via pi^-1 Im M(c; E + i eps) / u(c; E)^2.

    Converges to :func:`spectral_density` as eps -> 0 for E away from bound
    levels.  Raises IllConditionedEvaluationError when u(c; E) is too close
    to a node; move c and retry.
    """
    if not 0.0 < eps <= 1e-3:
        raise ValueError("eps must lie in (0, 1e-3]")
    E = float(E)
    triple = fundamental_solutions(spec, E)
    u_c = float(np.asarray(triple.u(c)).reshape(()).real)
    scale = math.sqrt(c)  # x^(1/2) sets the natural size of u near c
    if abs(u_c) < 1e-6 * scale:
        raise IllConditionedEvaluationError(
            f"u(c={c}; E={E}) ~ {u_c:.2e}: evaluation point too close to a node")
    m_val = m_function(spec, c, complex(E, eps))
    return float(m_val.imag / (np.pi * u_c * u_c))


def spectral_measure(spec: ExtensionSpec, window=None) -> SpectralMeasure:
    """Bundle of bound states and the continuous density for one extension."""
    return SpectralMeasure(
        bound=tuple(bound_states(spec, window)),
        density=lambda E: spectral_density(spec, E),
        spec=spec,
    )

"""Bessel-type special functions for real and pure-imaginary orders.

Everything downstream (fundamental solutions, spectral densities,
eigenfunction expansions) reduces to Bessel functions J, K, the order-zero
Neumann function and the complex log-Gamma.  Orders are restricted to what
the half-line inverse-square problem produces: real kappa with |kappa| < 2
and pure-imaginary i*sigma.  Arguments are positive reals in the public API;
the private helpers also accept complex arguments close to the positive real
or positive imaginary axis, which is what resolvent evaluations at E + i*eps
need.

Evaluation strategy per function:

* ascending series (double precision below |z| = 7, extended precision up to
  the switch point ``max(16, 3|nu|^2)``),
* Hankel-type asymptotic expansions beyond the switch point,
* for K, a trapezoidal rule on the cosh integral representation at moderate
  and large argument; the imaginary-order value is assembled from the
  imaginary part of I so that it is real by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "EULER_GAMMA",
    "Order",
    "UnsupportedOrderError",
    "bessel_j",
    "bessel_k",
    "neumann0",
    "neumann0_remainder",
    "hankel1",
    "log_gamma",
    "theta_sigma",
]

# Euler constant, 30 digits.
EULER_GAMMA = 0.577215664901532860606512090082

_SERIES_DOUBLE_MAX = 7.0     # plain double series is safe below this |z|
_ASYMPT_MIN = 16.0           # asymptotic expansions are safe above this |z|
_SERIES_TINY = 1e-22         # term-to-sum cutoff for extended-precision series
_MAX_TERMS = 400


class UnsupportedOrderError(ValueError):
    """Raised for orders the engine deliberately does not handle."""


@dataclass(frozen=True)
class Order:
    """Bessel order: real kappa with |kappa| < 2, or pure imaginary i*sigma.

    Use :meth:`real` / :meth:`imaginary` instead of the raw constructor.
    """

    nu: complex

    def __post_init__(self):
        nu = complex(self.nu)
        if not (np.isfinite(nu.real) and np.isfinite(nu.imag)):
            raise ValueError("order must be finite")
        if nu.imag != 0.0 and nu.real != 0.0:
            raise UnsupportedOrderError("order must be purely real or purely imaginary")
        if nu.imag == 0.0 and abs(nu.real) >= 2.0:
            raise UnsupportedOrderError(f"real order {nu.real} outside (-2, 2)")
        if nu.real == 0.0 and nu.imag < 0.0:
            raise UnsupportedOrderError("imaginary order must have sigma > 0")

    @classmethod
    def real(cls, kappa: float) -> "Order":
        return cls(complex(float(kappa), 0.0))

    @classmethod
    def imaginary(cls, sigma: float) -> "Order":
        if not sigma > 0.0:
            raise UnsupportedOrderError("imaginary order must have sigma > 0")
        return cls(complex(0.0, float(sigma)))

    @property
    def is_imaginary(self) -> bool:
        return self.nu.imag != 0.0

    @property
    def is_nonzero_integer(self) -> bool:
        nu = complex(self.nu)
        return nu.imag == 0.0 and nu.real != 0.0 and nu.real == int(nu.real)


# ----------------------------------------------------------------------
# log-Gamma (Lanczos, g = 7) and friends
# ----------------------------------------------------------------------

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def log_gamma(z) -> complex:
    """Principal branch of log Gamma(z); poles raise ValueError."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == int(z.real):
        raise ValueError(f"log_gamma pole at z = {z.real}")
    if z.real < 0.5:
        # reflection; fine in the near-real strip this library works in
        return np.log(np.pi / np.sin(np.pi * z)) - log_gamma(1.0 - z)
    w = z - 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (w + i)
    t = w + _LANCZOS_G + 0.5
    return complex(0.5 * np.log(2.0 * np.pi) + (w + 0.5) * np.log(t) - t + np.log(acc))


def gamma_fn(z) -> complex:
    return complex(np.exp(log_gamma(z)))


def theta_sigma(sigma: float) -> float:
    """Phase (1/2i) log[Gamma(1+i sigma)/Gamma(1-i sigma)] for sigma > 0.

    Equals Im log Gamma(1 + i sigma); tends to -EULER_GAMMA * sigma as
    sigma -> 0.  Reported on the principal branch, which is continuous for
    the moderate sigma this problem uses.
    """
    if not sigma > 0.0:
        raise ValueError("sigma must be positive")
    return log_gamma(complex(1.0, sigma)).imag


# ----------------------------------------------------------------------
# internal vectorized kernels (complex order nu, complex argument z)
# ----------------------------------------------------------------------


def _switch_point(nu: complex) -> float:
    return max(_ASYMPT_MIN, 3.0 * abs(nu) ** 2)


def _series_sum(zq, nu: complex):
    """sum_m c_m with c_0 = 1, c_{m+1} = c_m * zq / ((m+1)(nu+m+1)).

    ``zq`` may be any complex dtype/shape; the dtype controls the working
    precision.  With zq = -(z/2)^2 this is the J series, with +(z/2)^2 the
    I series.
    """
    c = np.ones_like(zq)
    s = c.copy()
    for m in range(1, _MAX_TERMS):
        c = c * zq / (m * (nu + m))
        s = s + c
        if np.max(np.abs(c)) <= _SERIES_TINY * max(1.0, float(np.max(np.abs(s)))):
            break
    return s


def _jnu_series(nu: complex, z, extended: bool):
    z = np.asarray(z, dtype=complex)
    dtype = np.clongdouble if extended else np.complex128
    zq = (-(z * z) / 4.0).astype(dtype)
    s = _series_sum(zq, nu).astype(complex)
    pref = np.exp(nu * np.log(z / 2.0) - log_gamma(nu + 1.0))
    return pref * s


def _inu_series(nu: complex, z, extended: bool):
    z = np.asarray(z, dtype=complex)
    dtype = np.clongdouble if extended else np.complex128
    zq = ((z * z) / 4.0).astype(dtype)
    s = _series_sum(zq, nu).astype(complex)
    pref = np.exp(nu * np.log(z / 2.0) - log_gamma(nu + 1.0))
    return pref * s


def _hankel_sum(nu: complex, z, sign: int):
    """sum_k (sign*i)^k (nu,k) / (2z)^k, truncated at the smallest term."""
    z = np.asarray(z, dtype=complex)
    mu = 4.0 * nu * nu
    a = np.ones_like(z)
    s = a.copy()
    prev = np.inf
    for k in range(1, 60):
        a = a * (sign * 1j) * (mu - (2 * k - 1) ** 2) / (8.0 * k * z)
        size = float(np.max(np.abs(a)))
        if size >= prev:
            break
        s = s + a
        prev = size
    return s


def _h1_asympt(nu: complex, z):
    z = np.asarray(z, dtype=complex)
    chi = z - nu * (np.pi / 2.0) - np.pi / 4.0
    return np.sqrt(2.0 / (np.pi * z)) * np.exp(1j * chi) * _hankel_sum(nu, z, +1)


def _h2_asympt(nu: complex, z):
    z = np.asarray(z, dtype=complex)
    chi = z - nu * (np.pi / 2.0) - np.pi / 4.0
    return np.sqrt(2.0 / (np.pi * z)) * np.exp(-1j * chi) * _hankel_sum(nu, z, -1)


def _asympt_sum_pm(nu: complex, z, sign: int):
    """sum_k (sign)^k a_k(nu) / z^k with a_k the (nu,k)/2^k coefficients."""
    z = np.asarray(z, dtype=complex)
    mu = 4.0 * nu * nu
    a = np.ones_like(z)
    s = a.copy()
    prev = np.inf
    for k in range(1, 60):
        a = a * sign * (mu - (2 * k - 1) ** 2) / (8.0 * k * z)
        size = float(np.max(np.abs(a)))
        if size >= prev:
            break
        s = s + a
        prev = size
    return s


def _inu_asympt(nu: complex, z):
    """Two-term asymptotic form of I_nu, symmetric Stokes treatment.

    I_nu(z) ~ e^z/sqrt(2 pi z) * S-  -  sin(pi nu)/pi * sqrt(pi/2z) e^-z S+.
    The subdominant term matters for imaginary order, where it carries the
    whole K_{i sigma} content (Im I_{i sigma} = -sinh(pi sigma) K / pi).
    """
    z = np.asarray(z, dtype=complex)
    grow = np.exp(z) / np.sqrt(2.0 * np.pi * z) * _asympt_sum_pm(nu, z, -1)
    decay = np.sqrt(np.pi / (2.0 * z)) * np.exp(-z) * _asympt_sum_pm(nu, z, +1)
    return grow - (np.sin(np.pi * nu) / np.pi) * decay


def _knu_asympt(nu: complex, z):
    z = np.asarray(z, dtype=complex)
    return np.sqrt(np.pi / (2.0 * z)) * np.exp(-z) * _asympt_sum_pm(nu, z, +1)


def _knu_quad(nu: complex, z):
    """Trapezoid rule on K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt.

    Needs Re z >~ 1; the integrand is even and analytic, so the error decays
    like exp(-c/h).
    """
    z = np.asarray(z, dtype=complex)
    re_min = float(np.min(z.real))
    if re_min <= 0.5:
        raise ValueError("cosh-integral route needs Re z > 0.5")
    big = 48.0 + abs(nu.real) * 4.0
    t_max = 1.0
    while re_min * (np.cosh(t_max) - 1.0) - abs(nu.real) * t_max < big:
        t_max += 0.25
    h = 0.1
    t = np.arange(int(t_max / h) + 2) * h
    zz = z[..., None] if z.shape else z
    g = np.exp(-zz * np.cosh(t)) * np.cosh(nu * t)
    g[..., 0] *= 0.5
    return h * g.sum(axis=-1)


def _inu(nu: complex, z):
    """I_nu for complex z near the positive real axis, any |z|."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty(z.shape, dtype=complex)
    switch = _switch_point(nu)
    az = np.abs(z)
    small = az <= _SERIES_DOUBLE_MAX
    mid = (az > _SERIES_DOUBLE_MAX) & (az <= switch)
    large = az > switch
    if small.any():
        out[small] = _inu_series(nu, z[small], extended=False)
    if mid.any():
        out[mid] = _inu_series(nu, z[mid], extended=True)
    if large.any():
        out[large] = _inu_asympt(nu, z[large])
    return out[0] if scalar else out


def _jnu(nu: complex, z):
    """J_nu for complex z with -pi/4 <~ arg z <= pi/2 (plus the real axis)."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty(z.shape, dtype=complex)
    switch = _switch_point(nu)
    az = np.abs(z)
    zero = az == 0.0
    small = (az > 0.0) & (az <= _SERIES_DOUBLE_MAX)
    mid = (az > _SERIES_DOUBLE_MAX) & (az <= switch)
    steep = az > switch
    if zero.any():
        if nu == 0:
            out[zero] = 1.0
        elif nu.imag == 0.0 and nu.real > 0.0:
            out[zero] = 0.0
        else:
            raise ValueError("J_nu(0) undefined for this order")
    if small.any():
        out[small] = _jnu_series(nu, z[small], extended=False)
    if mid.any():
        out[mid] = _jnu_series(nu, z[mid], extended=True)
    if steep.any():
        zs = z[steep]
        res = np.empty(zs.shape, dtype=complex)
        near_real = np.abs(np.angle(zs)) <= np.pi / 4.0
        if near_real.any():
            zr = zs[near_real]
            res[near_real] = 0.5 * (_h1_asympt(nu, zr) + _h2_asympt(nu, zr))
        if (~near_real).any():
            # rotate onto the positive real axis: J_nu(z) = e^{i nu pi/2} I_nu(-iz)
            zi = zs[~near_real]
            res[~near_real] = np.exp(1j * nu * np.pi / 2.0) * _inu(nu, -1j * zi)
        out[steep] = res
    return out[0] if scalar else out


def _knu(nu: complex, z):
    """K_nu for complex z near the positive real axis, any |z| > 0."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty(z.shape, dtype=complex)
    az = np.abs(z)
    small = az <= 1.5
    large = az > 1.5
    if small.any():
        zs = z[small]
        if nu == 0:
            out[small] = _k0_series(zs)
        elif nu.imag == 0.0 and nu.real == int(nu.real):
            if np.any(zs.real <= 0.5):
                raise UnsupportedOrderError(
                    "K at nonzero integer order only via the cosh integral")
            out[small] = _knu_quad(nu, zs)
        elif nu.imag != 0.0 and np.all(zs.imag == 0.0):
            # explicitly real symmetrized form for imaginary order
            out[small] = -np.pi / np.sinh(np.pi * nu.imag) * _inu_series(nu, zs, False).imag
        else:
            out[small] = (np.pi / 2.0) * (
                _inu_series(-nu, zs, False) - _inu_series(nu, zs, False)
            ) / np.sin(np.pi * nu)
    if large.any():
        out[large] = _knu_quad(nu, z[large])
    return out[0] if scalar else out


def _k0_series(z):
    z = np.asarray(z, dtype=complex)
    zq = (z * z) / 4.0
    c = np.ones_like(zq)
    i0 = c.copy()
    s = np.zeros_like(zq)
    h = 0.0
    for m in range(1, _MAX_TERMS):
        c = c * zq / (m * m)
        h += 1.0 / m
        i0 = i0 + c
        s = s + c * h
        if float(np.max(np.abs(c))) * (h + 1.0) <= 1e-20:
            break
    return -(np.log(z / 2.0) + EULER_GAMMA) * i0 + s


def _r0(z):
    """Entire-in-z^2 series R(z) = sum_{k>=1} (-1)^k H_k (z/2)^{2k} / (k!)^2.

    Satisfies (pi/2) Y0(z) = (ln(z/2) + EULER_GAMMA) J0(z) - R(z).  Direct
    summation (extended precision) below the switch point; beyond it the
    defining identity with asymptotic J0, Y0 is cheaper and more accurate.
    For arguments near the positive imaginary axis the I0/K0 form applies.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty(z.shape, dtype=complex)
    az = np.abs(z)
    direct = az <= 14.0
    if direct.any():
        out[direct] = _r0_series(z[direct])
    if (~direct).any():
        zs = z[~direct]
        res = np.empty(zs.shape, dtype=complex)
        near_real = np.abs(np.angle(zs)) <= np.pi / 4.0
        if near_real.any():
            zr = zs[near_real]
            j0 = 0.5 * (_h1_asympt(0.0, zr) + _h2_asympt(0.0, zr))
            y0 = (_h1_asympt(0.0, zr) - _h2_asympt(0.0, zr)) / 2j
            res[near_real] = (np.log(zr / 2.0) + EULER_GAMMA) * j0 - (np.pi / 2.0) * y0
        if (~near_real).any():
            # R(z) = K0(-iz) + (ln(-iz/2) + C) I0(-iz) for z near +i axis
            w = -1j * zs[~near_real]
            res[~near_real] = _knu(0.0, w) + (np.log(w / 2.0) + EULER_GAMMA) * _inu(0.0, w)
        out[~direct] = res
    return out[0] if scalar else out


def _r0_series(z):
    z = np.asarray(z, dtype=complex)
    zq = (-(z * z) / 4.0).astype(np.clongdouble)
    c = np.ones_like(zq)
    s = np.zeros_like(zq)
    h = 0.0
    for k in range(1, _MAX_TERMS):
        c = c * zq / (k * k)
        h += 1.0 / k
        s = s + c * h
        if float(np.max(np.abs(c))) * (h + 1.0) <= _SERIES_TINY:
            break
    return s.astype(complex)


def _y1_series(z):
    """Y1 by its standard log series; needed only because kappa = 1 sits on
    the first region's boundary and the J_{+-nu} combination degenerates
    there."""
    z = np.asarray(z, dtype=complex)
    zq = (-(z * z) / 4.0).astype(np.clongdouble)
    c = np.ones_like(zq)
    s = c * (2.0 * (-EULER_GAMMA) + 1.0)  # psi(1) + psi(2) at k = 0
    hk, hk1 = 0.0, 1.0
    for k in range(1, _MAX_TERMS):
        c = c * zq / (k * (k + 1))
        hk += 1.0 / k
        hk1 += 1.0 / (k + 1)
        s = s + c * (-2.0 * EULER_GAMMA + hk + hk1)
        if float(np.max(np.abs(c))) * (hk + hk1 + 2.0) <= _SERIES_TINY:
            break
    j1 = _jnu(1.0, z)
    return (-2.0 / (np.pi * z) + (2.0 / np.pi) * np.log(z / 2.0) * j1
            - (z / (2.0 * np.pi)) * s.astype(complex))


def _y1(z):
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty(z.shape, dtype=complex)
    small = np.abs(z) <= 14.0
    if small.any():
        out[small] = _y1_series(z[small])
    if (~small).any():
        zl = z[~small]
        out[~small] = (_h1_asympt(1.0, zl) - _h2_asympt(1.0, zl)) / 2j
    return out[0] if scalar else out


def _y0(z):
    """Neumann function Y0 for z near the positive real axis."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty(z.shape, dtype=complex)
    az = np.abs(z)
    small = az <= 14.0
    if small.any():
        zs = z[small]
        out[small] = (2.0 / np.pi) * (
            (np.log(zs / 2.0) + EULER_GAMMA) * _jnu(0.0, zs) - _r0_series(zs)
        )
    if (~small).any():
        zl = z[~small]
        out[~small] = (_h1_asympt(0.0, zl) - _h2_asympt(0.0, zl)) / 2j
    return out[0] if scalar else out


def _h1nu(nu: complex, z):
    """Hankel function H^(1)_nu for z near the positive real or imaginary axis."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty(z.shape, dtype=complex)
    az = np.abs(z)
    switch = _switch_point(nu)
    near_imag = np.abs(np.angle(z)) > np.pi / 4.0
    # K connection is stable wherever the argument leans imaginary:
    # H1_nu(z) = (2/(i pi)) e^{-i nu pi/2} K_nu(-iz)
    if near_imag.any():
        w = -1j * z[near_imag]
        out[near_imag] = (2.0 / (1j * np.pi)) * np.exp(-1j * nu * np.pi / 2.0) * _knu(nu, w)
    rest = ~near_imag
    if rest.any():
        zr = z[rest]
        res = np.empty(zr.shape, dtype=complex)
        big = np.abs(zr) > switch
        if big.any():
            res[big] = _h1_asympt(nu, zr[big])
        if (~big).any():
            zs = zr[~big]
            if nu == 0:
                res[~big] = _jnu(0.0, zs) + 1j * _y0(zs)
            elif nu == 1:
                res[~big] = _jnu(1.0, zs) + 1j * _y1(zs)
            else:
                sin_pi_nu = np.sin(np.pi * nu)
                res[~big] = (
                    _jnu(-nu, zs) - np.exp(-1j * np.pi * nu) * _jnu(nu, zs)
                ) / (1j * sin_pi_nu)
        out[rest] = res
    return out[0] if scalar else out


# ----------------------------------------------------------------------
# public API: positive real argument
# ----------------------------------------------------------------------


def _check_positive(x, allow_zero=False):
    x = np.asarray(x, dtype=float)
    if allow_zero:
        if np.any(x < 0.0):
            raise ValueError("argument must be >= 0")
    elif np.any(x <= 0.0):
        raise ValueError("argument must be > 0")
    return x


def bessel_j(order: Order, x):
    """Bessel J of the given order at x > 0 (x = 0 allowed for kappa >= 0).

    Returns complex values; for real order the imaginary part is zero.
    """
    if order.is_nonzero_integer:
        raise UnsupportedOrderError("nonzero integer real orders are not supported")
    nu = complex(order.nu)
    if nu.imag == 0.0 and nu.real >= 0.0:
        x = _check_positive(x, allow_zero=True)
    else:
        x = _check_positive(x)
    res = _jnu(nu, x.astype(complex))
    if nu.imag == 0.0:
        res = np.asarray(res).real + 0.0j
    return res if np.ndim(x) else complex(res)


def bessel_k(order: Order, x):
    """McDonald function K at x > 0; real for 0 <= kappa < 1 and for i*sigma."""
    nu = complex(order.nu)
    if nu.imag == 0.0 and not (0.0 <= nu.real < 1.0):
        raise UnsupportedOrderError("real-order K supported for 0 <= kappa < 1 only")
    x = _check_positive(x)
    res = np.asarray(_knu(nu, x.astype(complex))).real
    return res if np.ndim(x) else float(res)


def neumann0(x):
    """Neumann function N0 (a.k.a. Y0) at x > 0."""
    x = _check_positive(x)
    res = np.asarray(_y0(x.astype(complex))).real
    return res if np.ndim(x) else float(res)


def neumann0_remainder(x):
    """The entire series R with (pi/2) N0(x) = (ln(x/2) + C) J0(x) - R(x)."""
    x = _check_positive(x, allow_zero=True)
    res = np.asarray(_r0(x.astype(complex))).real
    return res if np.ndim(x) else float(res)


def hankel1(order: Order, x):
    """Hankel function H^(1) at x > 0.

    Built from J_{+-nu} for non-integer order and from J0 + i N0 at order
    zero; nonzero integer real orders are rejected.
    """
    if order.is_nonzero_integer:
        raise UnsupportedOrderError("nonzero integer real orders are not supported")
    x = _check_positive(x)
    res = _h1nu(complex(order.nu), x.astype(complex))
    return res if np.ndim(x) else complex(res)

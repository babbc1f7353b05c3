"""Coupling regimes, extension parameters, and boundary behavior at the origin.

Each self-adjoint Hamiltonian -d^2/dx^2 + alpha/x^2 on (0, inf) is selected
by the leading asymptotic behavior its domain functions are allowed at the
origin.  The coupling alpha falls into four regions:

* region 1, alpha >= 3/4: a single operator, functions vanish like x^(3/2);
* region 2, -1/4 < alpha < 3/4: a circle of operators labelled by an
  extended-real lambda multiplying the subdominant power;
* region 3, alpha = -1/4: a circle labelled by lambda against a log branch;
* region 4, alpha < -1/4: a circle labelled by the phase theta of an
  oscillating x^(1/2) cos(sigma ln k0 x + theta) asymptote.

This module classifies alpha, evaluates the asymptotes and their
derivatives, fits asymptote coefficients to sampled data (recovering the
extension parameter), and converts between the dimensionless (lambda, theta)
and dimensional (mu) labels.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

__all__ = [
    "R3_TOLERANCE",
    "Region",
    "CouplingRegime",
    "ExtendedReal",
    "ExtensionSpec",
    "SignTag",
    "ScaleParam",
    "BoundaryCoefficients",
    "DegenerateInputError",
    "classify",
    "extension",
    "boundary_asymptote",
    "fit_boundary_coefficients",
    "param_convert",
    "param_convert_inverse",
]

# alpha within this distance of -1/4 is treated as the log-branch point
R3_TOLERANCE = 1e-12


class DegenerateInputError(ValueError):
    """Raised when sampled data cannot determine boundary coefficients."""


class Region(enum.Enum):
    R1 = 1
    R2 = 2
    R3 = 3
    R4 = 4


@dataclass(frozen=True)
class CouplingRegime:
    """Coupling constant with its region and the order parameter kappa/sigma."""

    alpha: float
    region: Region
    kappa_or_sigma: float

    @property
    def kappa(self) -> float:
        if self.region is Region.R4:
            raise ValueError("region 4 carries sigma, not kappa")
        return self.kappa_or_sigma

    @property
    def sigma(self) -> float:
        if self.region is not Region.R4:
            raise ValueError("sigma only defined for region 4")
        return self.kappa_or_sigma


def classify(alpha: float) -> CouplingRegime:
    """Assign alpha to its region and compute kappa = sqrt(1/4 + alpha) or sigma."""
    alpha = float(alpha)
    if not np.isfinite(alpha):
        raise ValueError("alpha must be finite")
    if abs(alpha + 0.25) <= R3_TOLERANCE:
        return CouplingRegime(alpha, Region.R3, 0.0)
    if alpha < -0.25:
        return CouplingRegime(alpha, Region.R4, float(np.sqrt(abs(0.25 + alpha))))
    kappa = float(np.sqrt(0.25 + alpha))
    region = Region.R1 if alpha >= 0.75 else Region.R2
    return CouplingRegime(alpha, region, kappa)


@dataclass(frozen=True)
class ExtendedReal:
    """Real number extended by a single point at infinity (+inf ~ -inf).

    ``ExtendedReal.infinity()`` is that point; finite values wrap floats.
    """

    value: float | None = None

    def __post_init__(self):
        if self.value is not None and not np.isfinite(self.value):
            raise ValueError("finite ExtendedReal must wrap a finite float")

    @classmethod
    def infinity(cls) -> "ExtendedReal":
        return cls(None)

    @classmethod
    def of(cls, v) -> "ExtendedReal":
        if isinstance(v, ExtendedReal):
            return v
        v = float(v)
        return cls(None) if np.isinf(v) else cls(v)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    @property
    def finite(self) -> float:
        if self.value is None:
            raise ValueError("value is the point at infinity")
        return self.value

    def __repr__(self):
        return "inf~-inf" if self.value is None else repr(self.value)


class SignTag(enum.Enum):
    PLUS = "+"
    MINUS = "-"
    NOT_APPLICABLE = "n/a"


@dataclass(frozen=True)
class ScaleParam:
    """Dimensional extension label mu (inverse length), with a sign tag in R2."""

    mu: float  # may be 0.0 or inf at the exceptional points
    sign_tag: SignTag = SignTag.NOT_APPLICABLE


@dataclass(frozen=True)
class ExtensionSpec:
    """One self-adjoint Hamiltonian: regime + extension parameter + scale k0.

    R1 carries no parameter, R2/R3 carry lam (extended real), R4 carries
    theta in [0, pi).  mu0 is the reference scale for the R4 mu-interval
    [mu0, mu0 e^(pi/sigma)); it defaults to k0.
    """

    regime: CouplingRegime
    lam: ExtendedReal | None = None
    theta: float | None = None
    k0: float = 1.0
    mu0: float | None = None

    def __post_init__(self):
        if not self.k0 > 0.0:
            raise ValueError("k0 must be positive")
        region = self.regime.region
        if region is Region.R1:
            if self.lam is not None or self.theta is not None:
                raise ValueError("region 1 admits no extension parameter")
        elif region in (Region.R2, Region.R3):
            if self.lam is None or self.theta is not None:
                raise ValueError("regions 2 and 3 take lam only")
        else:
            if self.theta is None or self.lam is not None:
                raise ValueError("region 4 takes theta only")
            object.__setattr__(self, "theta", float(self.theta) % np.pi)
        if self.mu0 is not None and not self.mu0 > 0.0:
            raise ValueError("mu0 must be positive")

    @property
    def region(self) -> Region:
        return self.regime.region

    @property
    def mu0_or_default(self) -> float:
        return self.k0 if self.mu0 is None else self.mu0

    def describe(self) -> str:
        r = self.regime
        if self.region is Region.R1:
            return f"region 1, alpha={r.alpha:g}, kappa={r.kappa:g}"
        if self.region is Region.R4:
            return (f"region 4, alpha={r.alpha:g}, sigma={r.sigma:g}, "
                    f"theta={self.theta:g}, k0={self.k0:g}")
        tag = "2" if self.region is Region.R2 else "3"
        return (f"region {tag}, alpha={r.alpha:g}, kappa={r.kappa:g}, "
                f"lambda={self.lam!r}, k0={self.k0:g}")


def extension(alpha: float, *, lam=None, theta=None, k0: float = 1.0,
              mu0: float | None = None) -> ExtensionSpec:
    """Build an ExtensionSpec from alpha and the parameter its region requires."""
    regime = classify(alpha)
    if regime.region in (Region.R2, Region.R3) and lam is not None:
        lam = ExtendedReal.of(lam)
    return ExtensionSpec(regime, lam=lam, theta=theta, k0=k0, mu0=mu0)


@dataclass(frozen=True)
class BoundaryCoefficients:
    """Coefficients (c1, c2) of the two leading asymptotes, plus fit residual.

    c1 multiplies the dominant branch ((k0 x)^(1/2+kappa), x^(1/2), or
    (k0 x)^(i sigma) x^(1/2)), c2 the partner branch.  The diagonal
    combinations are c_pm = c1 +- i c2.
    """

    c1: complex
    c2: complex
    residual: float = 0.0

    @property
    def c_plus(self) -> complex:
        return self.c1 + 1j * self.c2

    @property
    def c_minus(self) -> complex:
        return self.c1 - 1j * self.c2

    def recovered_lambda(self, region: Region) -> ExtendedReal:
        if region is Region.R2:
            num, den = self.c2, self.c1
        elif region is Region.R3:
            num, den = self.c1, self.c2
        else:
            raise ValueError("lambda recovery only for regions 2 and 3")
        scale = max(abs(self.c1), abs(self.c2))
        if scale == 0.0:
            raise DegenerateInputError("both boundary coefficients vanish")
        if abs(den) <= 1e-9 * scale:
            return ExtendedReal.infinity()
        return ExtendedReal(float((num / den).real))

    def recovered_theta(self) -> float:
        if abs(self.c1) == 0.0 and abs(self.c2) == 0.0:
            raise DegenerateInputError("both boundary coefficients vanish")
        return float(np.angle(self.c1 / self.c2) / 2.0) % np.pi


def _asymptote_basis(regime: CouplingRegime, x, k0: float):
    """The two basis functions of psi_as and their derivatives, per region."""
    x = np.asarray(x, dtype=float)
    if regime.region is Region.R2:
        kap = regime.kappa
        b1 = (k0 * x) ** (0.5 + kap)
        b2 = (k0 * x) ** (0.5 - kap)
        d1 = (0.5 + kap) * b1 / x
        d2 = (0.5 - kap) * b2 / x
        return (b1, b2), (d1, d2)
    if regime.region is Region.R3:
        b1 = np.sqrt(x)
        b2 = np.sqrt(x) * np.log(k0 * x)
        d1 = 0.5 / np.sqrt(x)
        d2 = (0.5 * np.log(k0 * x) + 1.0) / np.sqrt(x)
        return (b1, b2), (d1, d2)
    if regime.region is Region.R4:
        sig = regime.sigma
        ph = sig * np.log(k0 * x)
        b1 = np.sqrt(x) * np.cos(ph)
        b2 = np.sqrt(x) * np.sin(ph)
        d1 = (0.5 * np.cos(ph) - sig * np.sin(ph)) / np.sqrt(x)
        d2 = (0.5 * np.sin(ph) + sig * np.cos(ph)) / np.sqrt(x)
        return (b1, b2), (d1, d2)
    raise ValueError("region 1 has a trivial asymptote")


def boundary_asymptote(spec: ExtensionSpec, x, c: complex = 1.0):
    """Leading boundary behavior psi_as(x) and its derivative for the extension.

    Region 1 returns zeros (remainder O(x^(3/2))).  Region 4 uses the cosine
    convention c x^(1/2) cos(sigma ln(k0 x) + theta).
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("x must be positive")
    region = spec.region
    if region is Region.R1:
        z = np.zeros_like(x)
        out = (z, z.copy())
        return out if x.ndim else (0.0, 0.0)
    (b1, b2), (d1, d2) = _asymptote_basis(spec.regime, x, spec.k0)
    if region is Region.R2:
        if spec.lam.is_infinite:
            val, dval = c * b2, c * d2
        else:
            lam = spec.lam.finite
            val, dval = c * (b1 + lam * b2), c * (d1 + lam * d2)
    elif region is Region.R3:
        if spec.lam.is_infinite:
            val, dval = c * b1, c * d1
        else:
            lam = spec.lam.finite
            val, dval = c * (lam * b1 + b2), c * (lam * d1 + d2)
    else:
        th = spec.theta
        val = c * (np.cos(th) * b1 - np.sin(th) * b2)
        dval = c * (np.cos(th) * d1 - np.sin(th) * d2)
    if x.ndim:
        return val, dval
    return complex(val), complex(dval)


def fit_boundary_coefficients(x, values, regime: CouplingRegime,
                              k0: float = 1.0) -> BoundaryCoefficients:
    """Least-squares fit of samples near the origin to the asymptote basis.

    For region 4 the real cos/sin fit is converted to the complex pair
    c1 = (a - ib)/2, c2 = conj(c1) so that theta = arg(c1/c2)/2.
    """
    x = np.asarray(x, dtype=float)
    values = np.asarray(values)
    if x.size < 8:
        raise ValueError("need at least 8 samples")
    if not np.all(np.isfinite(values)):
        raise ValueError("samples must be finite")
    if regime.region is Region.R1:
        raise ValueError("region 1 has no boundary coefficients to fit")
    vnorm = float(np.linalg.norm(values))
    if vnorm == 0.0:
        raise DegenerateInputError("all samples vanish")
    (b1, b2), _ = _asymptote_basis(regime, x, k0)
    design = np.column_stack([b1, b2])
    coef, _, rank, _ = np.linalg.lstsq(design, values, rcond=None)
    if rank < 2:
        raise DegenerateInputError("asymptote basis is rank deficient on this grid")
    resid = float(np.linalg.norm(design @ coef - values) / vnorm)
    if regime.region is Region.R4:
        a, b = complex(coef[0]), complex(coef[1])
        return BoundaryCoefficients((a - 1j * b) / 2.0, (a + 1j * b) / 2.0, resid)
    return BoundaryCoefficients(complex(coef[0]), complex(coef[1]), resid)


def param_convert(spec: ExtensionSpec) -> ScaleParam:
    """Dimensionless extension parameter -> dimensional scale mu.

    R2: mu = k0 |lambda|^(-1/(2 kappa)) with the sign of lambda as tag
    (lambda = 0 -> mu = inf, |lambda| = inf -> mu = 0).  R3: mu = k0 e^lambda
    (0 and inf identified at |lambda| = inf).  R4: mu = k0 e^(theta/sigma)
    folded into [mu0, mu0 e^(pi/sigma)).
    """
    region = spec.region
    if region is Region.R1:
        return ScaleParam(np.inf, SignTag.NOT_APPLICABLE)
    if region is Region.R2:
        if spec.lam.is_infinite:
            return ScaleParam(0.0, SignTag.NOT_APPLICABLE)
        lam = spec.lam.finite
        if lam == 0.0:
            return ScaleParam(np.inf, SignTag.NOT_APPLICABLE)
        mu = spec.k0 * abs(lam) ** (-1.0 / (2.0 * spec.regime.kappa))
        return ScaleParam(mu, SignTag.PLUS if lam > 0 else SignTag.MINUS)
    if region is Region.R3:
        if spec.lam.is_infinite:
            return ScaleParam(0.0, SignTag.NOT_APPLICABLE)
        return ScaleParam(spec.k0 * float(np.exp(spec.lam.finite)),
                          SignTag.NOT_APPLICABLE)
    mu = spec.k0 * float(np.exp(spec.theta / spec.regime.sigma))
    return ScaleParam(fold_mu(mu, spec.regime.sigma, spec.mu0_or_default),
                      SignTag.NOT_APPLICABLE)


def fold_mu(mu: float, sigma: float, mu0: float) -> float:
    """Reduce mu by powers of e^(pi/sigma) into [mu0, mu0 e^(pi/sigma))."""
    step = np.pi / sigma
    return float(mu0 * np.exp(np.log(mu / mu0) % step))


def param_convert_inverse(regime: CouplingRegime, scale: ScaleParam,
                          k0: float = 1.0, mu0: float | None = None) -> ExtensionSpec:
    """Dimensional scale mu -> extension spec (modulo the documented foldings)."""
    region = regime.region
    if region is Region.R1:
        return ExtensionSpec(regime, k0=k0)
    if region is Region.R2:
        if scale.mu == 0.0:
            return ExtensionSpec(regime, lam=ExtendedReal.infinity(), k0=k0)
        if np.isinf(scale.mu):
            return ExtensionSpec(regime, lam=ExtendedReal(0.0), k0=k0)
        mag = (scale.mu / k0) ** (-2.0 * regime.kappa)
        if scale.sign_tag is SignTag.MINUS:
            mag = -mag
        return ExtensionSpec(regime, lam=ExtendedReal(float(mag)), k0=k0)
    if region is Region.R3:
        if scale.mu == 0.0 or np.isinf(scale.mu):
            return ExtensionSpec(regime, lam=ExtendedReal.infinity(), k0=k0)
        return ExtensionSpec(regime, lam=ExtendedReal(float(np.log(scale.mu / k0))),
                             k0=k0)
    theta = (regime.sigma * np.log(scale.mu / k0)) % np.pi
    return ExtensionSpec(regime, theta=float(theta), k0=k0, mu0=mu0)

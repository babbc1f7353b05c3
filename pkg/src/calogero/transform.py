"""Eigenfunction-expansion transforms with Parseval verification.

For a square-integrable psi the expansion reads

    psi(x) = sum_n phi_n u_n(x) + int phi(E) u_E(x) dE,
    phi(E) = int u_E(x) psi(x) dx,   phi_n = int u_n(x) psi(x) dx,

with the Parseval equality ||psi||^2 = sum |phi_n|^2 + int |phi(E)|^2 dE.
All integrals are panelled Gauss quadratures; truncation (x_max, e_max) is
carried on the results, never silent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .extensions import ExtensionSpec
from .grids import GridFunction, energy_grid, x_grid
from .spectral import Bound, Continuum, bound_states, eigenfunction

__all__ = [
    "TransformResult",
    "EigenfunctionExpansion",
    "default_x_grid",
    "forward",
    "inverse",
    "parseval_residual",
]

_E_BLOCK = 64  # kernel rows evaluated per chunk (memory control)


@dataclass
class TransformResult:
    """Expansion coefficients plus the Parseval bookkeeping."""

    phi_n: np.ndarray
    bound_energies: np.ndarray
    phi_c: GridFunction
    parseval_lhs: float
    parseval_rhs: float
    x_max: float
    e_max: float

    @property
    def parseval_residual(self) -> float:
        if self.parseval_lhs == 0.0:
            raise ValueError("Parseval residual undefined for a zero function")
        return abs(self.parseval_lhs - self.parseval_rhs) / self.parseval_lhs


def default_x_grid(spec: ExtensionSpec, e_max: float | None = None,
                   window=None) -> GridFunction:
    """Gauss x-grid extending past the slowest continuum tail and the widest
    bound state."""
    k0 = spec.k0
    e_max = 400.0 * k0 * k0 if e_max is None else e_max
    x_max = 40.0 / k0
    states = bound_states(spec, window)
    if states:
        shallow = min(abs(s.energy) for s in states)
        x_max = max(x_max, 40.0 / np.sqrt(shallow))
    nodes, weights = x_grid(x_max, e_max)
    return GridFunction(nodes, np.zeros_like(nodes), weights, domain="x")


class EigenfunctionExpansion:
    """Precomputed transform kernel for one extension on fixed grids.

    Building the continuum kernel u_E(x) on the (E, x) product grid is the
    expensive step; constructing this object once lets forward/inverse and
    several test functions share it.
    """

    def __init__(self, spec: ExtensionSpec, x_points: GridFunction | None = None,
                 e_grid: GridFunction | None = None, window=None):
        self.spec = spec
        self.window = window
        k0 = spec.k0
        if e_grid is None:
            e_grid = energy_grid(400.0 * k0 * k0, 40.0 / k0, k0)
        if e_grid.domain != "E":
            raise ValueError("e_grid must be an E-space grid")
        if x_points is None:
            x_points = default_x_grid(spec, float(e_grid.nodes[-1]), window)
        if x_points.domain != "x":
            raise ValueError("x grid must be an x-space grid")
        self.x = x_points.nodes
        self.wx = x_points.weights
        self.e_grid = e_grid
        self.states = bound_states(spec, window)
        self.bound_profiles = np.array([s.profile(self.x) for s in self.states]) \
            if self.states else np.zeros((0, len(self.x)))
        self.kernel = np.empty((len(e_grid.nodes), len(self.x)))
        for lo in range(0, len(e_grid.nodes), _E_BLOCK):
            hi = min(lo + _E_BLOCK, len(e_grid.nodes))
            for j in range(lo, hi):
                self.kernel[j] = eigenfunction(
                    spec, Continuum(float(e_grid.nodes[j])), self.x, window)

    def _check(self, psi: GridFunction):
        if psi.domain != "x":
            raise ValueError("psi must be sampled in x-space")
        if len(psi.nodes) != len(self.x) or not np.allclose(psi.nodes, self.x):
            raise ValueError("psi grid does not match the expansion grid")
        if not np.all(np.isfinite(psi.values)):
            raise ValueError("psi contains non-finite values")

    def forward(self, psi: GridFunction) -> TransformResult:
        self._check(psi)
        weighted = self.wx * psi.values
        phi_n = self.bound_profiles @ weighted
        phi_c = self.kernel @ weighted
        lhs = psi.norm_sq()
        rhs = float(np.sum(np.abs(phi_n) ** 2)
                    + np.sum(self.e_grid.weights * np.abs(phi_c) ** 2))
        return TransformResult(
            phi_n=phi_n,
            bound_energies=np.array([s.energy for s in self.states]),
            phi_c=self.e_grid.with_values(phi_c),
            parseval_lhs=lhs,
            parseval_rhs=rhs,
            x_max=float(self.x[-1]),
            e_max=float(self.e_grid.nodes[-1]),
        )

    def inverse(self, result: TransformResult) -> GridFunction:
        if len(result.phi_c.nodes) != len(self.e_grid.nodes) or \
                not np.allclose(result.phi_c.nodes, self.e_grid.nodes):
            raise ValueError("coefficient grid does not match the expansion grid")
        if len(result.phi_n) != len(self.states):
            raise ValueError("bound coefficient count does not match the extension")
        values = (result.phi_n @ self.bound_profiles) if len(self.states) else 0.0
        values = values + (self.e_grid.weights * result.phi_c.values) @ self.kernel
        return GridFunction(self.x, values, self.wx, domain="x")


def forward(psi: GridFunction, spec: ExtensionSpec,
            e_grid: GridFunction | None = None, window=None) -> TransformResult:
    """Expansion coefficients of psi over the eigenfunctions of one extension."""
    plan = EigenfunctionExpansion(spec, psi, e_grid, window)
    return plan.forward(psi)


def inverse(result: TransformResult, spec: ExtensionSpec,
            x_points: GridFunction, window=None) -> GridFunction:
    """Reconstruct psi from expansion coefficients on the given x grid."""
    plan = EigenfunctionExpansion(spec, x_points, result.phi_c, window)
    return plan.inverse(result)


def parseval_residual(psi: GridFunction, result: TransformResult) -> float:
    """| ||psi||^2 - sum |phi_n|^2 - int |phi|^2 dE | / ||psi||^2."""
    lhs = psi.norm_sq()
    if lhs == 0.0:
        raise ValueError("Parseval residual undefined for a zero function")
    rhs = result.parseval_rhs
    return abs(lhs - rhs) / lhs

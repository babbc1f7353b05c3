"""Sampled functions on quadrature grids in x- or E-space."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["GridFunction", "gauss_panels", "x_grid", "energy_grid"]


@dataclass
class GridFunction:
    """Function samples on an ascending positive grid with quadrature weights."""

    nodes: np.ndarray
    values: np.ndarray
    weights: np.ndarray
    domain: str = "x"  # "x" or "E"

    def __post_init__(self):
        self.nodes = np.asarray(self.nodes, dtype=float)
        self.values = np.asarray(self.values)
        self.weights = np.asarray(self.weights, dtype=float)
        if self.domain not in ("x", "E"):
            raise ValueError("domain must be 'x' or 'E'")
        if not (self.nodes.ndim == 1 and np.all(np.diff(self.nodes) > 0)):
            raise ValueError("nodes must be strictly ascending")
        if np.any(self.weights <= 0):
            raise ValueError("weights must be positive")
        if not (len(self.nodes) == len(self.values) == len(self.weights)):
            raise ValueError("nodes, values, weights must have equal length")

    def with_values(self, values) -> "GridFunction":
        return GridFunction(self.nodes, np.asarray(values), self.weights, self.domain)

    def norm_sq(self) -> float:
        return float(np.sum(self.weights * np.abs(self.values) ** 2))

    def integral(self) -> complex:
        return complex(np.sum(self.weights * self.values))


def gauss_panels(edges, points_per_panel: int = 8):
    """Composite Gauss-Legendre nodes/weights over consecutive panels."""
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or len(edges) < 2 or np.any(np.diff(edges) <= 0):
        raise ValueError("edges must be ascending with at least one panel")
    base_x, base_w = np.polynomial.legendre.leggauss(points_per_panel)
    nodes, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        nodes.append(0.5 * (a + b) + half * base_x)
        weights.append(half * base_w)
    return np.concatenate(nodes), np.concatenate(weights)


def x_grid(x_max: float, e_max: float, points_per_panel: int = 16):
    """Panelled Gauss grid on (0, x_max] resolving oscillations up to sqrt(e_max).

    Panel width is at most half the period of cos(sqrt(e_max) x), so the
    fastest continuum eigenfunction on the grid is integrated accurately.
    """
    width = min(np.pi / np.sqrt(e_max), x_max / 8.0)
    n_panels = int(np.ceil(x_max / width))
    edges = np.linspace(0.0, x_max, n_panels + 1)
    nodes, weights = gauss_panels(edges, points_per_panel)
    return nodes, weights


def energy_grid(e_max: float, x_max: float, k0: float = 1.0,
                e_min_factor: float = 1e-6, points_per_panel: int = 4) -> GridFunction:
    """Quadrature grid on [e_min, e_max]: log panels near 0, then panels that
    track the J(sqrt(E) x_max) oscillation (width ~ pi sqrt(E) / x_max)."""
    e_min = e_min_factor * k0 * k0
    edges = [e_min]
    # log-spaced panels up to k0^2
    e = e_min
    while e < k0 * k0:
        e = min(e * 2.0, k0 * k0)
        edges.append(e)
    # oscillation-limited panels beyond
    while edges[-1] < e_max:
        step = np.pi * np.sqrt(edges[-1]) / x_max
        edges.append(min(edges[-1] + step, e_max))
    nodes, weights = gauss_panels(np.asarray(edges), points_per_panel)
    return GridFunction(nodes, np.zeros_like(nodes), weights, domain="E")

"""Tensor-product quadrature on the unit sphere.

Gauss-Legendre in cos(theta) times an equal-weight periodic rule in phi.
With n_phi equal points, every exp(i k phi) with 0 < |k| < n_phi integrates
to zero exactly, so products of l=2 harmonics (|k| <= 4) need n_phi >= 5.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_GRID = (16, 16)


def _legendre_and_derivative(n: int, x: np.ndarray):
    p0, p1 = np.ones_like(x), x.copy()
    if n == 0:
        return p0, np.zeros_like(x)
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = n * (x * p1 - p0) / (x * x - 1)
    return p1, dp


def gauss_legendre_nodes(n: int, tol: float = 1e-15, max_iter: int = 100):
    """Abscissas (ascending) and weights of the n-point Gauss-Legendre rule on [-1, 1]."""
    if int(n) != n or n < 1:
        raise ValueError(f"Gauss-Legendre order must be a positive integer, got {n!r}")
    n = int(n)
    if n == 1:
        return np.array([0.0]), np.array([2.0])
    i = np.arange(1, n + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(max_iter):
        p, dp = _legendre_and_derivative(n, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) <= tol:
            break
    _, dp = _legendre_and_derivative(n, x)
    w = 2.0 / ((1 - x * x) * dp * dp)
    order = np.argsort(x)
    return x[order], w[order]


@dataclass(frozen=True, eq=False)
class SphereGrid:
    theta: np.ndarray  # flat, row-major: theta outer, phi inner
    phi: np.ndarray
    weights: np.ndarray
    n_theta: int
    n_phi: int

    def __len__(self):
        return self.weights.size

    def describe(self) -> str:
        return f"{self.n_theta}x{self.n_phi}"


def sphere_grid(n_theta: int = DEFAULT_GRID[0], n_phi: int = DEFAULT_GRID[1]) -> SphereGrid:
    if int(n_phi) != n_phi or n_phi < 1:
        raise ValueError(f"n_phi must be a positive integer, got {n_phi!r}")
    x, w = gauss_legendre_nodes(n_theta)
    theta = np.arccos(x)
    phi = 2 * math.pi * np.arange(n_phi) / n_phi
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    ww = np.repeat(w * (2 * math.pi / n_phi), n_phi)
    for a in (tt, pp, ww):
        a.setflags(write=False)
    return SphereGrid(tt.ravel(), pp.ravel(), ww, int(n_theta), int(n_phi))

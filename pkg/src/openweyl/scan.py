"""Brillouin-zone surfaces, mass sweeps and Weyl-point detection.

Everything here is vectorized over the grid with numpy, so output order is
row-major and independent of evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from openweyl.model import ModelParams, MomentumPoint, mass_parameter, wrap_angle
from openweyl.steady import BlochVector, purity_formula, steady_components


def grid_axis(n: int) -> np.ndarray:
    """``n`` points ``k_i = -pi + 2 pi i / n``, ``i = 1..n``, covering (-pi, pi].

    Written as ``pi * (2i - n) / n`` so that 0, +-pi/2 and pi are exact when
    ``n`` is divisible by 4.
    """
    if n < 3:
        raise ValueError(f"grid size must be >= 3, got {n}")
    i = np.arange(1, n + 1)
    return math.pi * ((2 * i - n) / n)


@dataclass(frozen=True, eq=False)
class Grid2D:
    """Values on a ``(k_x, k_y)`` grid; ``values[i, j]`` sits at ``(k_x[i], k_y[j])``."""

    k_x: np.ndarray
    k_y: np.ndarray
    values: np.ndarray
    name: str = "value"

    def __post_init__(self):
        if self.values.shape != (len(self.k_x), len(self.k_y)):
            raise ValueError("axis lengths do not match value dimensions")

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def _points(self, mask) -> list[tuple[float, float]]:
        ii, jj = np.nonzero(mask)
        return [(float(self.k_x[i]), float(self.k_y[j])) for i, j in zip(ii, jj)]

    def argmin_points(self, atol: float = 1e-12) -> list[tuple[float, float]]:
        """All grid points within ``atol`` of the minimum, row-major order."""
        return self._points(self.values <= self.values.min() + atol)

    def argmax_points(self, atol: float = 1e-12) -> list[tuple[float, float]]:
        return self._points(self.values >= self.values.max() - atol)

    def rows(self):
        """Yield ``(k_x, k_y, value)`` in row-major order."""
        for i, kx in enumerate(self.k_x):
            for j, ky in enumerate(self.k_y):
                yield float(kx), float(ky), float(self.values[i, j])


@dataclass(frozen=True, eq=False)
class SweepResult:
    m: np.ndarray
    purity: np.ndarray
    bloch: np.ndarray = field(default=None)  # (N, 3) or None

    def __post_init__(self):
        if len(self.m) != len(self.purity):
            raise ValueError("m and purity lengths differ")
        if self.bloch is not None and self.bloch.shape != (len(self.m), 3):
            raise ValueError("bloch array must have shape (N, 3)")

    @property
    def radius(self) -> np.ndarray:
        return np.linalg.norm(self.bloch, axis=1)

    def argmin(self) -> int:
        return int(np.argmin(self.purity))


def _sin_grids(n: int):
    k = grid_axis(n)
    s = np.sin(k)
    return k, s[:, None], s[None, :]


def band_surface(n: int, p: ModelParams, k_z: float, band: str = "plus") -> Grid2D:
    """Upper (``band="plus"``) or lower band energy on an ``n x n`` grid."""
    k, sx, sy = _sin_grids(n)
    m = mass_parameter(k_z, p.lam)
    e = np.sqrt(sx * sx + sy * sy + m * m)
    if band == "plus":
        return Grid2D(k, k, e + p.u0, "E_plus")
    if band == "minus":
        return Grid2D(k, k, -e + p.u0, "E_minus")
    raise ValueError(f"band must be 'plus' or 'minus', got {band!r}")


def purity_surface(n: int, p: ModelParams, k_z: float) -> Grid2D:
    if not p.gamma > 0:
        raise ValueError("purity surface requires gamma > 0")
    k, sx, sy = _sin_grids(n)
    m = mass_parameter(k_z, p.lam)
    return Grid2D(k, k, purity_formula(sx * sx + sy * sy, m, p.gamma), "purity")


def _refine_zero_of_sin(k: float, max_iter: int = 50) -> float:
    # Newton on sin(k) = 0: minimizes sin^2 along one axis
    for _ in range(max_iter):
        step = math.tan(k)
        k -= step
        if abs(step) < 1e-15:
            break
    return wrap_angle(k)


def find_band_touchings(
    n: int, p: ModelParams, k_z: float, tol: float = 1e-9
) -> list[MomentumPoint]:
    """Points in the ``(k_x, k_y)`` zone where the two bands meet.

    Every periodic local minimum of ``|B|`` on the grid is refined
    coordinate-wise towards ``sin k = 0``; refined points with ``|B| < tol``
    are returned, deduplicated and sorted by ``(k_x, k_y)``.
    """
    k, sx, sy = _sin_grids(n)
    m = mass_parameter(k_z, p.lam)
    e2 = sx * sx + sy * sy + m * m
    is_min = np.ones_like(e2, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                is_min &= e2 <= np.roll(np.roll(e2, di, axis=0), dj, axis=1)

    found: list[tuple[float, float]] = []
    for i, j in zip(*np.nonzero(is_min)):
        kx = _refine_zero_of_sin(float(k[i]))
        ky = _refine_zero_of_sin(float(k[j]))
        gap = math.sqrt(math.sin(kx) ** 2 + math.sin(ky) ** 2 + m * m)
        if gap >= tol:
            continue
        if any(abs(kx - a) < tol and abs(ky - b) < tol for a, b in found):
            continue
        found.append((kx, ky))
    found.sort()
    return [MomentumPoint(kx, ky, k_z) for kx, ky in found]


def mass_values(m_min: float, m_max: float, steps: int) -> np.ndarray:
    """Uniform, strictly increasing samples, exactly symmetric about the midpoint."""
    if steps < 3:
        raise ValueError(f"steps must be >= 3, got {steps}")
    if not m_max > m_min:
        raise ValueError("m_max must exceed m_min")
    i = np.arange(steps)
    t = (2 * i - (steps - 1)) / (steps - 1)
    return 0.5 * (m_min + m_max) + 0.5 * (m_max - m_min) * t


def transition_sweep(
    k_x: float,
    k_y: float,
    gamma: float,
    m_min: float = -2.0,
    m_max: float = 2.0,
    steps: int = 401,
) -> SweepResult:
    """Steady-state purity and Bloch vector as the mass ``m`` is swept."""
    if not gamma > 0:
        raise ValueError("transition sweep requires gamma > 0")
    m = mass_values(m_min, m_max, steps)
    sx, sy = math.sin(k_x), math.sin(k_y)
    rho_ee, rho_eg = steady_components(sx, sy, m, gamma)
    bloch = np.column_stack([2.0 * rho_eg.real, 0.0 - 2.0 * rho_eg.imag, 2.0 * rho_ee - 1.0])
    return SweepResult(m, purity_formula(sx * sx + sy * sy, m, gamma), bloch)


def bloch_trajectory_of_steady_states(
    k_x: float,
    k_y: float,
    gamma: float,
    m_min: float = -2.0,
    m_max: float = 2.0,
    steps: int = 401,
) -> list[BlochVector]:
    sweep = transition_sweep(k_x, k_y, gamma, m_min, m_max, steps)
    return [BlochVector(*map(float, r)) for r in sweep.bloch]

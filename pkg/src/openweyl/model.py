"""Two-band Weyl-semimetal Hamiltonian at a single momentum point.

Basis is ``|e> = (1, 0)``, ``|g> = (0, 1)`` with ``sigma_z |e> = +|e>``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

TWO_PI = 2.0 * math.pi


def wrap_angle(x: float) -> float:
    """Map a real angle into the first Brillouin zone (-pi, pi]."""
    x = float(x)
    if -math.pi < x <= math.pi:
        return x
    n = math.ceil((x - math.pi) / TWO_PI)
    y = x - n * TWO_PI
    # guard against rounding landing just outside the interval
    if y <= -math.pi:
        y += TWO_PI
    elif y > math.pi:
        y -= TWO_PI
    return y


@dataclass(frozen=True)
class MomentumPoint:
    """Wave vector ``(k_x, k_y, k_z)``, each component folded into (-pi, pi]."""

    k_x: float
    k_y: float
    k_z: float

    def __post_init__(self):
        object.__setattr__(self, "k_x", wrap_angle(self.k_x))
        object.__setattr__(self, "k_y", wrap_angle(self.k_y))
        object.__setattr__(self, "k_z", wrap_angle(self.k_z))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.k_x, self.k_y, self.k_z)


@dataclass(frozen=True)
class ModelParams:
    """Control parameter ``lam``, decay rate ``gamma`` and energy offset ``u0``.

    ``|lam| <= 1`` is the experimentally accessible range; values outside it
    only trigger a warning since every formula stays well defined.
    """

    lam: float = 0.0
    gamma: float = 1.0
    u0: float = 0.0

    def __post_init__(self):
        if not self.gamma >= 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if abs(self.lam) > 1:
            warnings.warn(f"|lambda| = {abs(self.lam)} exceeds 1", stacklevel=3)


@dataclass(frozen=True)
class EffectiveField:
    B_x: float
    B_y: float
    B_z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.B_x, self.B_y, self.B_z])

    @property
    def norm(self) -> float:
        return math.sqrt(self.B_x**2 + self.B_y**2 + self.B_z**2)


def mass_parameter(k_z: float, lam: float) -> float:
    """``lam + cos(k_z)``; its zero is the topological transition."""
    return lam + math.cos(k_z)


def realize_mass(m: float) -> tuple[float, float]:
    """Return ``(lam, k_z)`` with ``lam + cos(k_z) == m`` for ``m`` in [-2, 2].

    ``lam`` is clamped to [-1, 1] and ``k_z = arccos(m - lam)``; ``m = 0`` maps
    to ``(-1, 0)`` so that the critical point is exact in floating point.
    """
    if not -2.0 <= m <= 2.0:
        raise ValueError(f"m must lie in [-2, 2], got {m}")
    lam = min(max(m - 1.0, -1.0), 1.0)
    c = min(max(m - lam, -1.0), 1.0)
    return lam, math.acos(c)


def effective_field(k: MomentumPoint, p: ModelParams) -> EffectiveField:
    return EffectiveField(
        math.sin(k.k_x), math.sin(k.k_y), mass_parameter(k.k_z, p.lam)
    )


def hamiltonian(k: MomentumPoint, p: ModelParams) -> np.ndarray:
    """2x2 Hermitian ``B . sigma + u0 * 1`` as a complex array."""
    b = effective_field(k, p)
    return np.array(
        [
            [b.B_z + p.u0, complex(b.B_x, -b.B_y)],
            [complex(b.B_x, b.B_y), -b.B_z + p.u0],
        ],
        dtype=complex,
    )


def energy_bands(k: MomentumPoint, p: ModelParams) -> tuple[float, float]:
    """Upper and lower band energies ``(E_plus, E_minus)``."""
    e = effective_field(k, p).norm
    return e + p.u0, -e + p.u0


def band_gap(k: MomentumPoint, p: ModelParams) -> float:
    return 2.0 * effective_field(k, p).norm

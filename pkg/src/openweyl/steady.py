"""Closed-form steady state, purity and Bloch-sphere quantities."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from openweyl.model import ModelParams, MomentumPoint, mass_parameter


class SteadyStateError(ValueError):
    """Raised when no unique steady state exists."""


class NoDissipationWarning(UserWarning):
    """gamma = 0: the closed form is one stationary solution among many."""


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """2x2 qubit state in the ``(|e>, |g>)`` basis.

    ``no_dissipation`` is set on steady states computed with ``gamma = 0``,
    where stationarity does not single out this state.
    """

    matrix: np.ndarray
    no_dissipation: bool = False

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"density matrix must be 2x2, got shape {m.shape}")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_components(cls, rho_ee: float, rho_eg: complex, **kw) -> "DensityMatrix":
        rho_ee = float(np.real(rho_ee))
        rho_eg = complex(rho_eg)
        return cls(
            np.array([[rho_ee, rho_eg], [rho_eg.conjugate(), 1.0 - rho_ee]]), **kw
        )

    @classmethod
    def from_ket(cls, psi) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def excited(cls) -> "DensityMatrix":
        return cls.from_components(1.0, 0.0)

    @classmethod
    def ground(cls) -> "DensityMatrix":
        return cls.from_components(0.0, 0.0)

    @classmethod
    def maximally_mixed(cls) -> "DensityMatrix":
        return cls.from_components(0.5, 0.0)

    @property
    def rho_ee(self) -> float:
        return float(self.matrix[0, 0].real)

    @property
    def rho_gg(self) -> float:
        return float(self.matrix[1, 1].real)

    @property
    def rho_eg(self) -> complex:
        return complex(self.matrix[0, 1])

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def determinant_gap(self) -> float:
        """``rho_ee * rho_gg - |rho_eg|^2``; lies in [0, 1/4] for a valid state."""
        return self.rho_ee * self.rho_gg - abs(self.rho_eg) ** 2

    def is_valid(self, tol: float = 1e-12) -> bool:
        m = self.matrix
        return (
            abs(np.trace(m) - 1) <= tol
            and np.max(np.abs(m - m.conj().T)) <= tol
            and self.determinant_gap() >= -tol
            and -tol <= self.rho_ee <= 1 + tol
        )


@dataclass(frozen=True)
class BlochVector:
    R_x: float
    R_y: float
    R_z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.R_x, self.R_y, self.R_z])

    @property
    def norm(self) -> float:
        return math.sqrt(self.R_x**2 + self.R_y**2 + self.R_z**2)


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


def steady_components(sin_x, sin_y, m, gamma):
    """Vectorized closed-form steady state.

    Works elementwise on scalars or broadcastable arrays of ``sin k_x``,
    ``sin k_y``, the mass ``m = lam + cos k_z`` and ``gamma``. Returns
    ``(rho_ee, rho_eg)``.
    """
    s2 = sin_x * sin_x + sin_y * sin_y
    d = 4.0 * s2 + 8.0 * m * m + 0.5 * gamma * gamma
    rho_ee = 2.0 * s2 / d
    rho_eg = -(4.0 * m + 1j * gamma) * (sin_x - 1j * sin_y) / d
    return rho_ee, rho_eg


def purity_formula(s2, m, gamma):
    """Closed-form purity from ``s2 = sin^2 k_x + sin^2 k_y``; vectorized."""
    d = 4.0 * s2 + 8.0 * m * m + 0.5 * gamma * gamma
    return 1.0 - 8.0 * (s2 / d) ** 2


def _check_defined(sin_x: float, sin_y: float, m: float, gamma: float) -> bool:
    """Raise for the degenerate point; return True when gamma == 0."""
    if gamma == 0:
        if sin_x == 0 and sin_y == 0 and m == 0:
            raise SteadyStateError("steady state undefined (zero Liouvillian)")
        warnings.warn(
            "gamma = 0: steady state is not unique without dissipation",
            NoDissipationWarning,
            stacklevel=3,
        )
        return True
    return False


def steady_state(k: MomentumPoint, p: ModelParams) -> DensityMatrix:
    sx, sy = math.sin(k.k_x), math.sin(k.k_y)
    m = mass_parameter(k.k_z, p.lam)
    flag = _check_defined(sx, sy, m, p.gamma)
    rho_ee, rho_eg = steady_components(sx, sy, m, p.gamma)
    return DensityMatrix.from_components(rho_ee, rho_eg, no_dissipation=flag)


def purity(rho) -> float:
    """``Tr(rho^2)`` written through populations and coherence."""
    r = _as_matrix(rho)
    ree, rgg = r[0, 0].real, r[1, 1].real
    return float(1.0 + 2.0 * (abs(r[0, 1]) ** 2 - ree * rgg))


def purity_closed_form(k: MomentumPoint, p: ModelParams) -> float:
    sx, sy = math.sin(k.k_x), math.sin(k.k_y)
    m = mass_parameter(k.k_z, p.lam)
    _check_defined(sx, sy, m, p.gamma)
    return float(purity_formula(sx * sx + sy * sy, m, p.gamma))


def bloch_vector(rho) -> BlochVector:
    r = _as_matrix(rho)
    eg = r[0, 1]
    return BlochVector(
        float(2.0 * eg.real), float(0.0 - 2.0 * eg.imag), float((r[0, 0] - r[1, 1]).real)
    )


def bloch_radius(rho) -> float:
    return bloch_vector(rho).norm

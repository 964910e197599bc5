"""Lindblad dynamics for the single amplitude-damped qubit.

Three routes to the same physics live here: the matrix form of the master
equation (used by the RK4 integrator), the component equations for
``(rho_ee, rho_eg)``, and the 4x4 Liouvillian superoperator whose null space
gives the steady state. They are written independently so they can check
each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numba import njit

from openweyl.model import (
    SIGMA_X,
    SIGMA_Y,
    ModelParams,
    MomentumPoint,
    hamiltonian,
    mass_parameter,
)
from openweyl.steady import DensityMatrix, SteadyStateError, bloch_vector

# lowering operator |g><e|, i.e. (sigma_x - i sigma_y) / 2
SIGMA_MINUS = (SIGMA_X - 1j * SIGMA_Y) / 2
SIGMA_PLUS = SIGMA_MINUS.conj().T

TRACE_DRIFT_LIMIT = 1e-6


class NumericalStabilityError(RuntimeError):
    """Integration lost trace preservation; retry with a smaller dt."""


@njit(cache=True)
def _matmul2(a, b, out):
    for i in range(2):
        for j in range(2):
            out[i, j] = a[i, 0] * b[0, j] + a[i, 1] * b[1, j]


@njit(cache=True)
def _rhs_kernel(rho, h, jump, jd, gamma, out, s1, s2):
    """Write ``-i[H, rho] + gamma (L rho L^+ - {L^+ L, rho} / 2)`` into ``out``.

    ``jd`` is ``L^+``; ``s1`` and ``s2`` are 2x2 complex scratch buffers.
    """
    # coherent part
    _matmul2(h, rho, s1)
    _matmul2(rho, h, s2)
    for i in range(2):
        for j in range(2):
            out[i, j] = -1j * (s1[i, j] - s2[i, j])
    # jump term L rho L^+
    _matmul2(jump, rho, s1)
    _matmul2(s1, jd, s2)
    for i in range(2):
        for j in range(2):
            out[i, j] += gamma * s2[i, j]
    # anticommutator with L^+ L
    _matmul2(jd, jump, s1)
    _matmul2(s1, rho, s2)
    for i in range(2):
        for j in range(2):
            out[i, j] -= 0.5 * gamma * s2[i, j]
    _matmul2(rho, s1, s2)
    for i in range(2):
        for j in range(2):
            out[i, j] -= 0.5 * gamma * s2[i, j]


@njit(cache=True)
def _rk4_kernel(rho0, h, jump, gamma, dt, n_steps, last_dt, sample_every, out, drift_limit):
    """Fixed-step RK4. Returns the step index where trace drift exceeded the
    limit, or -1 on success. Samples go into ``out`` at multiples of
    ``sample_every`` and after the final step."""
    rho = rho0.copy()
    jd = np.ascontiguousarray(jump.conj().T)
    k1 = np.empty((2, 2), np.complex128)
    k2 = np.empty((2, 2), np.complex128)
    k3 = np.empty((2, 2), np.complex128)
    k4 = np.empty((2, 2), np.complex128)
    tmp = np.empty((2, 2), np.complex128)
    s1 = np.empty((2, 2), np.complex128)
    s2 = np.empty((2, 2), np.complex128)
    out[0] = rho
    slot = 1
    for step in range(1, n_steps + 1):
        h_step = last_dt if step == n_steps else dt
        _rhs_kernel(rho, h, jump, jd, gamma, k1, s1, s2)
        for i in range(2):
            for j in range(2):
                tmp[i, j] = rho[i, j] + 0.5 * h_step * k1[i, j]
        _rhs_kernel(tmp, h, jump, jd, gamma, k2, s1, s2)
        for i in range(2):
            for j in range(2):
                tmp[i, j] = rho[i, j] + 0.5 * h_step * k2[i, j]
        _rhs_kernel(tmp, h, jump, jd, gamma, k3, s1, s2)
        for i in range(2):
            for j in range(2):
                tmp[i, j] = rho[i, j] + h_step * k3[i, j]
        _rhs_kernel(tmp, h, jump, jd, gamma, k4, s1, s2)
        for i in range(2):
            for j in range(2):
                rho[i, j] += h_step / 6.0 * (
                    k1[i, j] + 2.0 * k2[i, j] + 2.0 * k3[i, j] + k4[i, j]
                )
        if abs(rho[0, 0] + rho[1, 1] - 1.0) > drift_limit:
            return step
        if step % sample_every == 0 or step == n_steps:
            out[slot] = rho
            slot += 1
    return -1


def _state_array(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return np.array(rho.matrix, dtype=np.complex128)
    return np.array(rho, dtype=np.complex128).reshape(2, 2)


def lindblad_rhs(rho, k: MomentumPoint, p: ModelParams) -> np.ndarray:
    """Time derivative of ``rho`` under the master equation, as a 2x2 array."""
    out = np.empty((2, 2), np.complex128)
    s1 = np.empty_like(out)
    s2 = np.empty_like(out)
    h = hamiltonian(k, p)
    _rhs_kernel(_state_array(rho), h, SIGMA_MINUS, SIGMA_PLUS, float(p.gamma), out, s1, s2)
    return out


def component_rhs(rho_ee: float, rho_eg: complex, k: MomentumPoint, p: ModelParams):
    """Derivatives ``(d rho_ee, d rho_eg)`` from the population/coherence equations."""
    sx, sy = math.sin(k.k_x), math.sin(k.k_y)
    m = mass_parameter(k.k_z, p.lam)
    g = p.gamma
    rho_eg = complex(rho_eg)
    d_ee = (
        1j * complex(sx, sy) * rho_eg
        - 1j * complex(sx, -sy) * rho_eg.conjugate()
        - g * rho_ee
    )
    d_eg = complex(sy, sx) * (2.0 * rho_ee - 1.0) - complex(g / 2.0, 2.0 * m) * rho_eg
    return float(d_ee.real), d_eg


def build_liouvillian(k: MomentumPoint, p: ModelParams) -> np.ndarray:
    """4x4 superoperator acting on row-major ``vec(rho) = (ee, eg, ge, gg)``.

    Uses ``vec(A rho B) = kron(A, B.T) vec(rho)`` for row-major flattening.
    """
    h = hamiltonian(k, p)
    eye = np.eye(2, dtype=complex)
    lo, up = SIGMA_MINUS, SIGMA_PLUS
    n = up @ lo
    unitary = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    dissipator = (p.gamma / 2.0) * (
        2.0 * np.kron(lo, up.T) - np.kron(n, eye) - np.kron(eye, n.T)
    )
    return unitary + dissipator


def steady_state_numeric(
    k: MomentumPoint, p: ModelParams, degeneracy_tol: float = 1e-9
) -> DensityMatrix:
    """Steady state from the null space of the Liouvillian (via SVD)."""
    _, s, vh = np.linalg.svd(build_liouvillian(k, p))
    if s[-2] < degeneracy_tol:
        raise SteadyStateError(
            f"non-unique steady state (second-smallest singular value {s[-2]:.3e})"
        )
    rho = vh[-1].conj().reshape(2, 2)
    rho = rho / np.trace(rho)
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho / np.trace(rho).real)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled solution of the master equation.

    ``states`` is an ``(N, 2, 2)`` complex array aligned with ``times``.
    """

    times: np.ndarray
    states: np.ndarray
    k: MomentumPoint
    params: ModelParams

    def __len__(self) -> int:
        return len(self.times)

    def __getitem__(self, i: int) -> DensityMatrix:
        return DensityMatrix(self.states[i])

    @property
    def final(self) -> DensityMatrix:
        return self[-1]

    @property
    def rho_ee(self) -> np.ndarray:
        return self.states[:, 0, 0].real

    @property
    def rho_eg(self) -> np.ndarray:
        return self.states[:, 0, 1]

    def bloch(self) -> np.ndarray:
        """``(N, 3)`` array of Bloch vectors."""
        return np.array([bloch_vector(s).as_array() for s in self.states])


def integrate(
    rho0,
    k: MomentumPoint,
    p: ModelParams,
    t_end: float | None = None,
    dt: float = 1e-3,
    sample_every: int = 100,
) -> Trajectory:
    """Integrate the master equation with fixed-step RK4.

    ``t_end`` defaults to ``50 / gamma``. If ``t_end`` is not a whole number of
    steps the last step is shortened to land on it exactly.
    """
    if t_end is None:
        if p.gamma <= 0:
            raise ValueError("t_end is required when gamma == 0")
        t_end = 50.0 / p.gamma
    if not (dt > 0 and t_end > 0):
        raise ValueError(f"dt and t_end must be positive (dt={dt}, t_end={t_end})")
    if dt > t_end:
        raise ValueError(f"dt={dt} exceeds t_end={t_end}")
    if int(sample_every) != sample_every or sample_every < 1:
        raise ValueError(f"sample_every must be a positive integer, got {sample_every}")
    sample_every = int(sample_every)

    n_full = int(math.floor(t_end / dt + 1e-9))
    remainder = t_end - n_full * dt
    if remainder > 1e-9 * dt:
        n_steps, last_dt = n_full + 1, remainder
    else:
        n_steps, last_dt = n_full, dt

    sample_steps = list(range(0, n_steps + 1, sample_every))
    if sample_steps[-1] != n_steps:
        sample_steps.append(n_steps)
    times = np.array([s * dt for s in sample_steps])
    times[-1] = t_end

    out = np.empty((len(sample_steps), 2, 2), np.complex128)
    bad = _rk4_kernel(
        _state_array(rho0),
        hamiltonian(k, p),
        SIGMA_MINUS,
        float(p.gamma),
        float(dt),
        n_steps,
        float(last_dt),
        sample_every,
        out,
        TRACE_DRIFT_LIMIT,
    )
    if bad >= 0:
        raise NumericalStabilityError(
            f"trace drift above {TRACE_DRIFT_LIMIT:g} at t={bad * dt:g}; use a smaller dt"
        )
    return Trajectory(times, out, k, p)


def coherence_series(traj: Trajectory) -> np.ndarray:
    """``(N, 2)`` array of ``(t, |rho_eg(t)|)``."""
    return np.column_stack([traj.times, np.abs(traj.rho_eg)])


class DecayFit(NamedTuple):
    rate: float
    amplitude: float
    residual_variance: float


def fit_decay_rate(series) -> DecayFit:
    """Least-squares exponential fit ``y ~ A exp(-rate * t)`` on ``log y``."""
    data = np.asarray(series, dtype=float)
    if data.ndim != 2 or data.shape[1] != 2:
        raise ValueError("series must be a sequence of (t, value) pairs")
    if len(data) < 10:
        raise ValueError(f"need at least 10 points, got {len(data)}")
    t, y = data[:, 0], data[:, 1]
    if np.any(y <= 0):
        raise ValueError("all values must be positive to take the logarithm")
    logy = np.log(y)
    slope, intercept = np.polyfit(t, logy, 1)
    resid = logy - (slope * t + intercept)
    return DecayFit(float(-slope), float(math.exp(intercept)), float(np.mean(resid**2)))

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from openweyl import (
    ModelParams,
    band_surface,
    bloch_trajectory_of_steady_states,
    find_band_touchings,
    purity_surface,
    transition_sweep,
)
from openweyl.scan import Grid2D, grid_axis, mass_values

from conftest import PI

WEYL_SET = {(0.0, 0.0), (PI, 0.0), (0.0, PI), (PI, PI)}
ANTI_SET = {(a * PI / 2, b * PI / 2) for a in (-1, 1) for b in (-1, 1)}


def test_grid_axis_convention():
    k = grid_axis(100)
    assert len(k) == 100 and k[-1] == PI and k[0] > -PI
    assert np.all(np.diff(k) > 0)
    for special in (0.0, PI / 2, -PI / 2, PI):
        assert special in k
    with pytest.raises(ValueError):
        grid_axis(2)


def test_grid2d_shape_check():
    with pytest.raises(ValueError):
        Grid2D(np.arange(3.0), np.arange(4.0), np.zeros((4, 3)))


def test_band_surface_at_transition():
    g = band_surface(100, ModelParams(0.0), PI / 2)
    assert g.values.min() < 1e-12
    assert set(g.argmin_points()) == WEYL_SET
    assert g.values.max() == pytest.approx(math.sqrt(2), abs=1e-12)
    assert set(g.argmax_points()) == ANTI_SET


def test_band_surface_finer_grid():
    g = band_surface(200, ModelParams(0.0), PI / 2)
    assert set(g.argmin_points()) == WEYL_SET
    assert set(g.argmax_points()) == ANTI_SET


def test_band_surface_gapped():
    g = band_surface(100, ModelParams(1.0), 0.0)
    assert g.values.min() == pytest.approx(2.0, abs=1e-12)


def test_lower_band_mirrors_upper():
    p = ModelParams(0.2)
    up, lo = band_surface(40, p, 0.3), band_surface(40, p, 0.3, "minus")
    np.testing.assert_array_equal(lo.values, -up.values)


def test_purity_surface_structure():
    p = ModelParams(0.0, 1.0)
    g = purity_surface(100, p, PI / 2)
    assert set(g.argmax_points()) == WEYL_SET
    assert g.values.max() == 1.0
    assert set(g.argmin_points()) == ANTI_SET
    assert g.values.min() == pytest.approx(1 - 128 / 289, abs=1e-12)
    bands = band_surface(100, p, PI / 2)
    assert set(g.argmin_points()) == set(bands.argmax_points())
    assert set(g.argmax_points()) == set(bands.argmin_points())


def test_purity_surface_requires_dissipation():
    with pytest.raises(ValueError):
        purity_surface(10, ModelParams(0.0, 0.0), PI / 2)


def _xy(points):
    return sorted((p.k_x, p.k_y) for p in points)


@pytest.mark.parametrize("lam, k_z", [(0.0, PI / 2), (-1.0, 0.0)])
def test_band_touchings_at_transition(lam, k_z):
    pts = find_band_touchings(100, ModelParams(lam), k_z)
    np.testing.assert_allclose(_xy(pts), sorted(WEYL_SET), atol=1e-9)
    assert _xy(pts) == [(p.k_x, p.k_y) for p in pts]  # lexicographic


def test_band_touchings_gapped_phase():
    assert find_band_touchings(100, ModelParams(0.5), PI / 2) == []


def test_band_touchings_grid_refinement_invariant():
    p = ModelParams(0.0)
    a = _xy(find_band_touchings(101, p, PI / 2))
    b = _xy(find_band_touchings(201, p, PI / 2))
    assert len(a) == len(b) == 4
    np.testing.assert_allclose(a, b, atol=1e-9)


def test_mass_values_symmetric():
    m = mass_values(-2, 2, 401)
    assert m[200] == 0.0 and m[0] == -2.0 and m[-1] == 2.0
    np.testing.assert_array_equal(m, -m[::-1])


@pytest.mark.parametrize(
    "kx, expected_min", [(PI / 2, 1 - 128 / 289), (PI / 4, 1 - 8 / 20.25)]
)
def test_sweep_minimum_at_transition(kx, expected_min):
    res = transition_sweep(kx, kx, 1.0)
    assert res.m[res.argmin()] == 0.0
    assert res.purity.min() == pytest.approx(expected_min, abs=1e-12)


def test_sweep_on_weyl_line_is_pure():
    res = transition_sweep(0.0, 0.0, 0.7)
    assert np.all(res.purity == 1.0)
    np.testing.assert_array_equal(res.bloch, np.tile([0.0, 0.0, -1.0], (401, 1)))


@settings(max_examples=40, deadline=None)
@given(st.floats(-PI, PI), st.floats(-PI, PI), st.floats(0.05, 5))
def test_sweep_even_and_monotone_in_abs_m(kx, ky, gamma):
    res = transition_sweep(kx, ky, gamma, steps=201)
    np.testing.assert_allclose(res.purity, res.purity[::-1], atol=1e-14, rtol=0)
    half = res.purity[100:]
    assert np.all(np.diff(half) >= -1e-15)
    assert np.all((res.purity >= 0.5) & (res.purity <= 1 + 1e-12))
    np.testing.assert_allclose(res.radius, np.sqrt(2 * res.purity - 1), atol=1e-12)


def test_bloch_trajectory():
    vecs = bloch_trajectory_of_steady_states(PI / 2, PI / 2, 1.0)
    norms = np.array([v.norm for v in vecs])
    assert norms[200] == pytest.approx(math.sqrt(33) / 17, abs=1e-12)
    assert np.argmin(norms) == 200
    assert norms[0] == norms.max() and norms[-1] == norms.max()
    pole = bloch_trajectory_of_steady_states(0.0, 0.0, 1.0)
    assert all(v.as_array().tolist() == [0, 0, -1] for v in pole)


def test_scans_are_deterministic():
    p = ModelParams(0.1, 0.9)
    a = purity_surface(64, p, 0.3).values
    b = purity_surface(64, p, 0.3).values
    assert a.tobytes() == b.tobytes()

"""Smoke tests for the thermoqvi Python module."""

import math

import numpy as np
import pytest

import thermoqvi as tq


@pytest.fixture
def coeffs():
    return tq.Coefficients(c1=1.0, c2=1.0, b1=1.0, b2=1.0, alpha=1.0)


def test_grid_and_fields():
    g = tq.build_grid(1, 8)
    assert g.node_count == 9
    assert g.h == pytest.approx(0.125)
    f = tq.constant_field(g, 2.0)
    assert tq.integrate(f) == pytest.approx(2.0)
    arr = np.linspace(0.0, 1.0, 9)
    field = tq.ScalarField(g, arr)
    assert field.array == pytest.approx(arr)
    with pytest.raises(ValueError):
        tq.build_grid(1, 1)


def test_constant_pair_solution(coeffs):
    g = tq.build_grid(1, 16)
    theta1, theta2, stats = tq.solve_pair(g, coeffs, 3.0, 0.0, 1.0)
    assert stats["converged"]
    assert theta1.array == pytest.approx(np.full(17, 2.0), abs=1e-8)
    assert theta2.array == pytest.approx(np.full(17, 1.0), abs=1e-8)
    m, M = tq.bounds_mM(coeffs, tq.constant_field(g, 3.0), tq.constant_field(g, 0.0))
    assert (m, M) == (0.0, 3.0)


def test_obstacle_benchmark():
    g = tq.build_grid(1, 64)
    c = tq.Coefficients()
    u = tq.solve_membrane(g, c, tq.constant_field(g, 0.0), 32.0, 1.0)
    x = np.linspace(0.0, 1.0, 65)
    assert u.array.max() <= 1.0 + 1e-12
    i = np.argmin(np.abs(x - 0.125))
    assert abs(u.array[i] - 0.75) <= 0.05
    chi = tq.contact_set(u, tq.constant_field(g, 1.0), g.h * g.h * 32.0)
    inside = (x > 0.25 + g.h) & (x < 0.75 - g.h)
    assert np.all(chi.array[inside] == 1.0)


def test_chi_eps_ramp():
    assert tq.chi_eps(-1.0, 0.5) == 1.0
    assert tq.chi_eps(0.25, 0.5) == pytest.approx(0.5)
    assert tq.chi_eps(2.0, 0.5) == 0.0


def test_continuation_and_checks(coeffs):
    g = tq.build_grid(1, 32)
    state = tq.continuation_solve(g, coeffs, f=32.0, g=1.0, h1=3.0, h2=0.0)
    assert state.report.converged
    assert np.all(state.u.array <= state.phi.array + 1e-14)
    assert np.all((state.chi.array == 0.0) | (state.chi.array == 1.0))
    checks = tq.run_elliptic_checks(state, coeffs, 32.0, 1.0, 3.0, 0.0)
    assert all(c["pass"] for c in checks if c["applicable"])
    names = {c["name"] for c in checks}
    assert "heat_conservation" in names
    assert "lewy_stampacchia" in names


def test_quasistatic_run(coeffs):
    g = tq.build_grid(1, 16)
    tg = tq.TimeGrid(T=0.5, N=4)
    traj = tq.run_quasistatic(
        g, tg, coeffs,
        f=32.0, g=1.0,
        h1=lambda t: np.full(17, 3.0 + 0.1 * math.sin(t)),
        h2=0.0,
        theta1_init=2.0, theta2_init=1.0,
    )
    assert len(traj.states) == 4
    assert traj.interpolant_gap() > 0.0
    checks = tq.run_quasistatic_checks(
        traj, coeffs, 32.0, 1.0,
        lambda t: np.full(17, 3.0 + 0.1 * math.sin(t)), 0.0, 2.0, 1.0,
    )
    assert all(c["pass"] for c in checks if c["applicable"])

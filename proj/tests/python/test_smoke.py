import math

import numpy as np
import pytest

import bfamily

L = 40.0


def mode(n, k):
    x = bfamily.grid(n, L)
    xi = 2.0 * math.pi * k / L
    return x, xi


def test_single_mode_calculus():
    x, xi = mode(256, 3)
    f = np.cos(xi * x)
    assert np.max(np.abs(bfamily.derivative(f, 1) + xi * np.sin(xi * x))) < 1e-12
    assert np.max(np.abs(bfamily.helmholtz_inverse(f) - f / (1 + xi**2))) < 1e-14
    expected = math.sqrt(L / 2) * (1 + xi**2)
    assert bfamily.sobolev_norm(f, 2.0) == pytest.approx(expected, rel=1e-12)


def test_compose_and_invert():
    x, xi = mode(512, 1)
    phi = 0.3 * np.sin(xi * x)
    f = np.sin(2 * xi * x)
    psi = bfamily.invert(phi)
    back = bfamily.compose(bfamily.compose(f, psi), phi)
    assert np.max(np.abs(back - f)) < 1e-8


def test_folded_map_is_rejected():
    x, xi = mode(128, 1)
    with pytest.raises(bfamily.Error) as info:
        bfamily.invert(2.0 / xi * np.sin(xi * x))
    assert info.value.category == "invalid-diffeo"
    assert info.value.exit_code == 3


def test_solvers_agree():
    u0, rho0 = bfamily.preset("bump-pair", 256)
    lag = bfamily.solve_lagrangian(u0, rho0, dt=4e-3, t_final=0.5)
    eul = bfamily.solve_euler(u0, rho0, dt=4e-3, t_final=0.5)
    assert len(lag) == 2 and len(eul) == 2
    assert lag[-1]["t"] == 0.5
    assert np.max(np.abs(lag[-1]["u"] - eul[-1]["u"])) < 1e-2
    assert lag[-1]["conservation_error"] < 1e-4


def test_breakdown_carries_time():
    x = bfamily.grid(256, L)
    u0 = 4.0 * np.exp(-((x - 18.0) ** 2))
    with pytest.raises(bfamily.Error) as info:
        bfamily.solve_lagrangian(u0, np.zeros_like(x), dt=2e-3)
    assert info.value.category == "breakdown"
    assert 0.0 < info.value.time < 1.0


def test_derivative_of_time_one_map_at_origin():
    x = bfamily.grid(256, L)
    w1 = np.exp(-((x - 20.0) ** 2) / 9.0)
    w2 = 0.5 * np.exp(-((x - 15.0) ** 2) / 4.0)
    zero = np.zeros_like(x)
    d = bfamily.directional_derivative_psi(zero, zero, w1, w2, dt=5e-3)
    assert bfamily.sobolev_norm(d - w1, 2.0) < 1e-6


def test_coarse_probe():
    report = bfamily.run_probe(n_points=1024, dt=2e-3, n_list=[4, 8])
    assert report.all_members_ok
    assert report.initial_distances_exact
    assert [m.n for m in report.members] == [4, 8]
    assert all(m.final_rho_distance > 0 for m in report.members)

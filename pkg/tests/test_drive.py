import math

import numpy as np
import pytest
from scipy.integrate import quad, solve_ivp

from chargetomo.core import InvalidArgumentError, RangeError
from chargetomo.drive import (
    ConstantDrive,
    SinusoidalDrive,
    TabulatedDrive,
    TrajectoryPoint,
    ZeroDrive,
    c_coefficients,
    drive_from_dict,
    forcing,
    integrate_trajectory,
    trajectory_at,
)


def test_zero_drive_closed_form():
    tr = integrate_trajectory(ZeroDrive(), 1.0, 0j, 4 * math.pi, 1e-3)
    assert np.max(np.abs(tr.z0 - np.cos(tr.times / 2))) < 1e-8
    assert np.max(np.abs(tr.z0_dot + 0.5 * np.sin(tr.times / 2))) < 1e-8


def test_zero_drive_at_rest_stays_zero():
    tr = integrate_trajectory(ZeroDrive(), 0j, 0j, 2.0, 0.01)
    assert not np.any(tr.z0) and not np.any(tr.phase)


def test_fourth_order_convergence():
    errs = []
    for h in (0.2, 0.1, 0.05):
        tr = integrate_trajectory(ZeroDrive(), 1.0, 0.3j, 4 * math.pi, h)
        exact = np.cos(tr.times / 2) + 0.6j * np.sin(tr.times / 2)
        errs.append(np.max(np.abs(tr.z0 - exact)))
    assert errs[0] / errs[1] >= 8
    assert errs[1] / errs[2] >= 8


def test_energy_conserved_without_drive():
    tr = integrate_trajectory(ZeroDrive(), 0.7 - 0.2j, 0.1j, 20.0, 1e-3)
    e = np.abs(tr.z0_dot) ** 2 + np.abs(tr.z0) ** 2 / 4
    assert np.max(np.abs(e - e[0])) / e[0] < 1e-8


def test_phase_integral_closed_form():
    # z0 = cos(t/2): |z0|^2/4 - |z0'|^2 = cos(t)/4, integral sin(t)/4
    tr = integrate_trajectory(ZeroDrive(), 1.0, 0j, 6.0, 1e-3)
    assert np.max(np.abs(tr.phase - np.sin(tr.times) / 4)) < 1e-10


def test_constant_drive_variation_of_parameters():
    # z0(t) = 2 int_0^t sin((t - s)/2) F(s) ds for zero initial data
    drive = ConstantDrive(0.3, -0.2)
    tr = integrate_trajectory(drive, 0j, 0j, 5.0, 1e-3)
    for t in (1.0, 2.5, 5.0):
        def part(fn):
            return quad(lambda s: 2 * math.sin((t - s) / 2) * fn(forcing(drive, s)), 0, t,
                        epsabs=1e-13, epsrel=1e-13)[0]
        exact = part(lambda f: f.real) + 1j * part(lambda f: f.imag)
        got = trajectory_at(tr, t).z0
        assert abs(got - exact) < 1e-9


def _reference_orbit(drive, t_end):
    def rhs(t, y):
        z, v = y[0] + 1j * y[1], y[2] + 1j * y[3]
        a = forcing(drive, t) - 0.25 * z
        return [v.real, v.imag, a.real, a.imag]

    return solve_ivp(rhs, (0, t_end), [0, 0, 0, 0], method="DOP853", rtol=1e-12, atol=1e-13,
                     dense_output=True).sol


@pytest.mark.parametrize("freq", [0.5, 1.0])
def test_sinusoidal_drive_against_fine_step_reference(freq):
    drive = SinusoidalDrive(0.1, 0.05, freq, 0.0)
    sol = _reference_orbit(drive, 30.0)
    tr = integrate_trajectory(drive, 0j, 0j, 30.0, 1e-3)
    y = sol(tr.times)
    assert np.max(np.abs(tr.z0 - (y[0] + 1j * y[1]))) < 1e-6


def test_cyclotron_frequency_drive_grows_linearly():
    # F = E e^{it/2} cos(t)/sqrt2 contains e^{-it/2}, resonant with z0'' + z0/4
    drive = SinusoidalDrive(0.1, 0.0, 1.0, 0.0)
    tr = integrate_trajectory(drive, 0j, 0j, 60.0, 1e-2)
    amp = np.abs(tr.z0)
    third = len(tr) // 3
    assert amp[-third:].max() > 2.5 * amp[:third].max()


def test_trajectory_at_is_exact_on_nodes_and_smooth_between():
    tr = integrate_trajectory(ZeroDrive(), 1.0, 0j, 2.0, 0.01)
    assert trajectory_at(tr, tr.times[37]) == tr.node(37)
    p = trajectory_at(tr, 1.234567)
    assert abs(p.z0 - math.cos(1.234567 / 2)) < 1e-9
    assert abs(p.phase - math.sin(1.234567) / 4) < 1e-9


def test_trajectory_at_out_of_range():
    tr = integrate_trajectory(ZeroDrive(), 1.0, 0j, 1.0, 0.1)
    with pytest.raises(RangeError):
        trajectory_at(tr, 1.5)
    with pytest.raises(RangeError):
        trajectory_at(tr, -0.1)


def test_tabulated_drive_outside_table():
    d = TabulatedDrive([0, 1, 2], [0, 1, 0], [0, 0, 0])
    assert d.field(0.5)[0] == pytest.approx(0.5)
    with pytest.raises(RangeError):
        integrate_trajectory(d, 0j, 0j, 3.0, 0.1)


def test_tabulated_drive_validation():
    with pytest.raises(InvalidArgumentError):
        TabulatedDrive([0, 0], [1, 1], [1, 1])


@pytest.mark.parametrize("bad", [dict(t_end=0.0), dict(t_end=1.0, step=0.0), dict(t_end=1.0, step=2.0)])
def test_integrator_argument_checks(bad):
    with pytest.raises(InvalidArgumentError):
        integrate_trajectory(ZeroDrive(), **bad)


def test_drive_from_dict_roundtrip():
    for d in (ZeroDrive(), ConstantDrive(0.1, 0.2), SinusoidalDrive(0.1, 0.2, 0.5, 0.3),
              TabulatedDrive([0, 1], [0, 1], [1, 0])):
        assert drive_from_dict(d.as_dict()) == d
    with pytest.raises(InvalidArgumentError):
        drive_from_dict({"kind": "laser"})


def test_c_coefficients_vanish_at_rest():
    assert c_coefficients(TrajectoryPoint.rest(3.0)) == (0j, 0j)
    c1, c2 = c_coefficients(TrajectoryPoint(0, 1 + 1j, 0.5j))
    assert c1 == pytest.approx(((1j * -0.5j) + 0.5 * (1 - 1j)) / math.sqrt(2))
    assert c2 == pytest.approx(((1j * 0.5j) + 0.5 * (1 + 1j)) / math.sqrt(2))

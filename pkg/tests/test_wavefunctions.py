import math

import numpy as np
import pytest

from chargetomo.core import CoherentLabel, FockLabel, Grid1D, Grid2D, GridCoverageError, InvalidArgumentError
from chargetomo.drive import SinusoidalDrive, TrajectoryPoint, integrate_trajectory
from chargetomo.wavefunctions import (
    LadderKind,
    WavefunctionGrid,
    apply_angular_momentum,
    apply_hamiltonian,
    apply_ladder,
    coherent_wavefunction_const,
    coherent_wavefunction_var,
    fock_wavefunction_const,
    ground_state,
    mode_coherent_wavefunction,
    mode_fock_wavefunction,
    relative_residual,
    rotating_coordinates,
)

DRIVE = SinusoidalDrive(0.2, 0.1, 0.7, 0.3)


@pytest.fixture(scope="module")
def traj():
    return integrate_trajectory(DRIVE, 0j, 0j, 4 * math.pi, 1e-3)


@pytest.mark.parametrize("alpha,beta", [(0, 0), (1 + 0.5j, -0.3 + 0.2j), (-1.2j, 1.1)])
def test_const_coherent_normalized_and_eigen(psi_grid, alpha, beta):
    label = CoherentLabel(alpha, beta)
    psi = coherent_wavefunction_const(label, psi_grid)
    assert abs(psi.norm() - 1) < 1e-10
    assert relative_residual(apply_ladder("A", psi), label.alpha * psi.values, psi) < 1e-4
    assert relative_residual(apply_ladder("B", psi), label.beta * psi.values, psi) < 1e-4


def test_ground_state_energy_and_angular_momentum(psi_grid):
    psi = ground_state(psi_grid)
    assert relative_residual(apply_hamiltonian(psi), 0.5 * psi.values, psi) < 1e-4
    # pointwise, so limited by the h^4 stencil error rather than roundoff
    assert np.nanmax(np.abs(apply_angular_momentum(psi).values)) < 1e-5


def test_coherent_overlap_formula(psi_grid):
    a = coherent_wavefunction_const(CoherentLabel(0.4, -0.3j), psi_grid)
    b = coherent_wavefunction_const(CoherentLabel(-0.2 + 0.1j, 0.5), psi_grid)
    expected = math.exp(-abs(0.4 + 0.2 - 0.1j) ** 2 - abs(-0.3j - 0.5) ** 2)
    assert abs(abs(a.inner(b)) ** 2 - expected) < 1e-10


@pytest.mark.parametrize("n1,n2", [(1, 0), (0, 1), (2, 1), (1, 3), (0, 4), (2, 2)])
def test_fock_quantum_numbers(psi_grid, n1, n2):
    psi = fock_wavefunction_const(FockLabel(n1, n2), psi_grid)
    assert abs(psi.norm() - 1) < 1e-10
    assert abs(psi.inner(apply_hamiltonian(psi)).real - (n1 + 0.5)) < 1e-3
    assert abs(psi.inner(apply_angular_momentum(psi)).real - (n2 - n1)) < 1e-3


def test_fock_orthogonality(psi_grid):
    states = [fock_wavefunction_const(FockLabel(*n), psi_grid) for n in [(0, 0), (1, 0), (0, 1), (1, 1)]]
    assert abs(states[0].inner(states[1])) < 1e-6
    # two stencil raisings leave an O(h^4) ground-state component
    for i, a in enumerate(states):
        for b in states[i + 1:]:
            assert abs(a.inner(b)) < 1e-5


def test_fock_cap(psi_grid):
    with pytest.raises(InvalidArgumentError):
        fock_wavefunction_const(FockLabel(4, 3), psi_grid)


def test_commutators(psi_grid):
    psi = coherent_wavefunction_const(CoherentLabel(0.3 - 0.2j, -0.4 + 0.1j), psi_grid)
    for a, b, c in [("A", "Adag", 1.0), ("B", "Bdag", 1.0), ("A", "B", 0.0), ("A", "Bdag", 0.0)]:
        ab = apply_ladder(a, apply_ladder(b, psi)).values
        ba = apply_ladder(b, apply_ladder(a, psi)).values
        assert relative_residual(ab - ba, c * psi.values, psi) < 1e-4


def test_fd_boundary_band_is_nan(psi_grid):
    out = apply_ladder(LadderKind.A, ground_state(psi_grid)).values
    assert np.all(np.isnan(out[:2])) and np.all(np.isnan(out[:, -2:]))
    assert np.all(np.isfinite(out[2:-2, 2:-2]))


def test_var_equals_const_at_rest(psi_grid):
    label = CoherentLabel(0.7 - 0.1j, 0.2 + 0.9j)
    a = coherent_wavefunction_var(label, TrajectoryPoint.rest(), psi_grid)
    b = coherent_wavefunction_const(label, psi_grid)
    assert np.max(np.abs(a.values - b.values)) < 1e-14


def test_invariants_and_schrodinger(psi_grid, traj):
    label = CoherentLabel(0.5 + 0.3j, -0.4 + 0.2j)
    for i in (1500, 6000, 11000):
        before, mid, after = (coherent_wavefunction_var(label, traj.node(j), psi_grid)
                              for j in (i - 1, i, i + 1))
        assert abs(mid.norm() - 1) < 1e-10
        assert relative_residual(apply_ladder("Avar", mid), label.alpha * mid.values, mid) < 1e-4
        assert relative_residual(apply_ladder("Bvar", mid), label.beta * mid.values, mid) < 1e-4
        dt = 1j * (after.values - before.values) / (2 * traj.step)
        assert relative_residual(dt, apply_hamiltonian(mid, DRIVE), mid) < 1e-3


def _printed_rotation_state(label, p, grid):
    """Driven coherent state with the label term rotated by exp(+it/2) instead."""
    good = coherent_wavefunction_var(label, p, grid)
    z, zb = rotating_coordinates(grid, p.t)
    a, b = label.alpha, label.beta
    z0, z0b = p.z0, p.z0.conjugate()
    term = a * (zb + z0b) - 1j * b * (z + z0)
    swap = np.exp(-1j * np.exp(0.5j * p.t) * term + 1j * np.exp(-0.5j * p.t) * term)
    return WavefunctionGrid(grid, good.values * swap, p.t, p)


def test_printed_rotation_sign_violates_schrodinger(psi_grid, traj):
    label = CoherentLabel(0.5 + 0.3j, -0.4 + 0.2j)
    i = 6000
    before, mid, after = (_printed_rotation_state(label, traj.node(j), psi_grid) for j in (i - 1, i, i + 1))
    dt = 1j * (after.values - before.values) / (2 * traj.step)
    assert relative_residual(dt, apply_hamiltonian(mid, DRIVE), mid) > 1e-1


def test_narrow_grid_reports_coverage():
    with pytest.raises(GridCoverageError):
        coherent_wavefunction_const(CoherentLabel(0, 2.0), Grid2D.square(3.0, 64))


def test_mode_wavefunctions(mode_grid):
    h = mode_grid.spacing
    for n in range(4):
        psi = mode_fock_wavefunction(n, mode_grid)
        assert abs(np.sum(np.abs(psi) ** 2) * h - 1) < 1e-12
        assert abs(np.vdot(mode_fock_wavefunction(n + 1, mode_grid), psi) * h) < 1e-12
    k = 0.4 - 0.7j
    psi = mode_coherent_wavefunction(k, mode_grid)
    assert abs(np.sum(np.abs(psi) ** 2) * h - 1) < 1e-12
    q = mode_grid.points
    assert np.sum(q * np.abs(psi) ** 2) * h == pytest.approx(2 * k.real)
    with pytest.raises(InvalidArgumentError):
        mode_fock_wavefunction(-1, Grid1D(-1, 1, 3))

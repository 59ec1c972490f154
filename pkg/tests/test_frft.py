import math

import numpy as np
import pytest

from chargetomo.analytic import GaussianModeTomogram, const_field_tomogram, evaluate_gaussian
from chargetomo.core import CoherentLabel, FockLabel, Grid1D, InvalidArgumentError, SymplecticFrame, TwoModeFrame
from chargetomo.frft import (
    DEFAULT_X_GRID,
    NumericTomogram1D,
    check_homogeneity,
    cross_covariance,
    marginal,
    moments,
    optical_tomogram_2d,
    tomogram_1d,
    tomogram_2d,
)
from chargetomo.wavefunctions import (
    coherent_wavefunction_const,
    fock_wavefunction_const,
    mode_coherent_wavefunction,
    mode_fock_wavefunction,
)

FRAMES = [(1.0, 0.0), (0.0, 1.0), (0.8, 0.6), (-0.3, 0.9), (0.05, 0.02), (2.0, -0.5), (1e-9, 1.0)]


@pytest.mark.parametrize("mu,nu", FRAMES)
def test_one_mode_gaussian_against_closed_form(mode_grid, mu, nu):
    k = 0.5 + 0.3j
    s = tomogram_1d(mode_coherent_wavefunction(k, mode_grid), mode_grid, SymplecticFrame(mu, nu),
                    Grid1D(-10, 10, 401))
    ref = GaussianModeTomogram(k)(s.x_grid.points, mu, nu)
    assert np.max(np.abs(s.values - ref)) < 1e-6 * max(1.0, ref.max())


def test_first_excited_state_closed_form(mode_grid):
    # |1>: w = X^2 exp(-X^2/(2 s2)) / (s2 sqrt(2 pi s2)), s2 = mu^2 + nu^2/4
    psi = mode_fock_wavefunction(1, mode_grid)
    X = np.linspace(-8, 8, 161)
    for mu, nu in [(1.0, 0.0), (0.6, 0.8), (0.0, 1.0)]:
        s2 = mu * mu + nu * nu / 4
        ref = X * X * np.exp(-X * X / (2 * s2)) / (s2 * math.sqrt(2 * math.pi * s2))
        got = NumericTomogram1D(psi, mode_grid)(X, mu, nu)
        assert np.max(np.abs(got - ref)) < 1e-9


@pytest.mark.parametrize("mu,nu", [(0.9, 0.2), (0.2, 0.9), (0.0, 1.0), (1.0, 0.0)])
def test_czt_matches_direct(mode_grid, mu, nu):
    psi = mode_coherent_wavefunction(-0.3 + 0.6j, mode_grid)
    f = SymplecticFrame(mu, nu)
    a = tomogram_1d(psi, mode_grid, f, DEFAULT_X_GRID, method="direct").values
    b = tomogram_1d(psi, mode_grid, f, DEFAULT_X_GRID, method="czt").values
    assert np.max(np.abs(a - b)) < 1e-10


def test_czt_needs_uniform_grid(mode_grid):
    psi = mode_coherent_wavefunction(0, mode_grid)
    with pytest.raises(InvalidArgumentError):
        NumericTomogram1D(psi, mode_grid, method="czt")(np.array([0.0, 0.1, 0.5]), 1.0, 0.5)


def test_batch_frames_match_single(mode_grid):
    w = NumericTomogram1D(mode_coherent_wavefunction(0.2j, mode_grid), mode_grid)
    X = np.linspace(-5, 5, 21)
    mus, nus = np.array([1.0, 0.3]), np.array([0.0, -0.7])
    rows = w(X, mus, nus)
    assert rows.shape == (2, 21)
    np.testing.assert_allclose(rows[1], w(X, 0.3, -0.7))


def test_two_mode_against_closed_form(psi_grid):
    label = CoherentLabel(1.0 - 0.4j, 0.3 + 1.1j)
    frame = TwoModeFrame.from_values(0.7, -0.5, 0.2, 0.9)
    s = tomogram_2d(coherent_wavefunction_const(label, psi_grid), frame)
    X1, X2 = np.meshgrid(s.x1_grid.points, s.x2_grid.points, indexing="ij")
    ref = evaluate_gaussian(const_field_tomogram(label, frame), X1, X2)
    assert np.max(np.abs(s.values - ref)) < 1e-6
    assert abs(s.normalization() - 1) < 1e-4
    assert abs(cross_covariance(s)) < 1e-6


def test_marginal_moments(psi_grid):
    label = CoherentLabel(0.5, -0.5j)
    frame = TwoModeFrame.from_values(0.6, 0.3, -0.4, 0.8)
    s = tomogram_2d(coherent_wavefunction_const(label, psi_grid), frame)
    g = const_field_tomogram(label, frame)
    for axis, f in ((0, frame.f1), (1, frame.f2)):
        mean, var = moments(marginal(s, axis))
        assert mean == pytest.approx(g.mean[axis], abs=1e-6)
        assert var == pytest.approx(f.quadrature_variance, abs=1e-6)
    with pytest.raises(InvalidArgumentError):
        marginal(s, 2)


def test_optical_tomogram_of_fock_state_normalized(psi_grid):
    s = optical_tomogram_2d(fock_wavefunction_const(FockLabel(1, 2), psi_grid), 0.4, 1.3)
    assert abs(s.normalization() - 1) < 1e-4
    assert s.values.min() >= 0


@pytest.mark.parametrize("lam", [-2.0, -0.5, 0.5, 3.0])
def test_homogeneity(psi_grid, lam):
    psi = coherent_wavefunction_const(CoherentLabel(0.3j, -0.6), psi_grid)
    assert check_homogeneity(psi, TwoModeFrame.from_values(0.8, 0.3, -0.2, 0.7), lam) < 1e-6


def test_unnormalized_input_rejected(mode_grid):
    psi = 2 * mode_coherent_wavefunction(0, mode_grid)
    with pytest.raises(InvalidArgumentError):
        tomogram_1d(psi, mode_grid, SymplecticFrame(1, 0))
    with pytest.raises(InvalidArgumentError):
        tomogram_1d(psi[:-1], mode_grid, SymplecticFrame(1, 0))

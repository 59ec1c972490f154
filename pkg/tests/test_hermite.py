import math

import numpy as np
import pytest

from chargetomo.analytic import coherent_tomogram_generating, hermite_parameters, tomogram_envelope
from chargetomo.core import CoherentLabel, FockLabel, InvalidArgumentError, TwoModeFrame, UnsupportedFrameError, optical_frame
from chargetomo.drive import SinusoidalDrive, TrajectoryPoint, integrate_trajectory
from chargetomo.frft import tomogram_2d
from chargetomo.hermite import HERMITE_CAP, fock_quantum_numbers, fock_tomogram, hermite_2var
from chargetomo.wavefunctions import fock_wavefunction_const

FRAME = TwoModeFrame.from_values(0.6, 0.5, 0.3, -0.8)


def cauchy_coefficients(D, l, cap, n=64):
    """n1! n2! [a^n1 b^n2] exp(-L D L^T/2 + L D l) from the FFT of samples on the unit torus."""
    th = 2 * math.pi * np.arange(n) / n
    a = np.exp(1j * th)[:, None]
    b = np.exp(1j * th)[None, :]
    dl = D @ l
    g = np.exp(-0.5 * (D[0, 0] * a * a + 2 * D[0, 1] * a * b + D[1, 1] * b * b) + a * dl[0] + b * dl[1])
    c = np.fft.fft2(g) / n ** 2
    fact = np.array([math.factorial(i) for i in range(cap + 1)], dtype=float)
    return c[: cap + 1, : cap + 1] * np.outer(fact, fact)


@pytest.mark.parametrize("seed", range(10))
def test_recurrence_against_cauchy_integral(seed):
    rng = np.random.default_rng(seed)
    d = 0.6 * (rng.normal(size=3) + 1j * rng.normal(size=3))
    D = np.array([[d[0], d[1]], [d[1], d[2]]])
    l = rng.normal(size=2) + 1j * rng.normal(size=2)
    got = hermite_2var(D, l, cap=6).values
    ref = cauchy_coefficients(D, l, 6)
    scale = np.abs(ref) + 1.0
    for n1 in range(7):
        for n2 in range(7 - n1):
            assert abs(got[n1, n2] - ref[n1, n2]) <= 1e-10 * scale[n1, n2]


def test_low_orders_closed_form():
    D = np.array([[0.3 + 0.1j, 0.2], [0.2, -0.5j]])
    l = np.array([1.0 - 0.5j, 0.4j])
    H = hermite_2var(D, l, cap=2).values
    dl = D @ l
    assert H[1, 0] == pytest.approx(dl[0])
    assert H[0, 1] == pytest.approx(dl[1])
    assert H[2, 0] == pytest.approx(dl[0] ** 2 - D[0, 0])
    assert H[1, 1] == pytest.approx(dl[0] * dl[1] - D[0, 1])


def test_vectorised_over_l():
    D = np.array([[0.3, 0.1j], [0.1j, 0.2]])
    l = np.random.default_rng(0).normal(size=(2, 5, 3)) + 0j
    full = hermite_2var(D, l, cap=4).values
    one = hermite_2var(D, l[:, 2, 1], cap=4).values
    np.testing.assert_allclose(full[:, :, 2, 1], one)
    assert full.shape == (5, 5, 5, 3)


@pytest.mark.parametrize("kwargs", [
    dict(D=np.array([[1, 2], [3, 4]]), l=np.zeros(2)),
    dict(D=np.eye(3), l=np.zeros(2)),
    dict(D=np.eye(2), l=np.zeros(3)),
    dict(D=np.eye(2), l=np.zeros(2), cap=HERMITE_CAP + 1),
])
def test_argument_validation(kwargs):
    with pytest.raises(InvalidArgumentError):
        hermite_2var(**kwargs)


@pytest.fixture(scope="module")
def driven_point():
    tr = integrate_trajectory(SinusoidalDrive(0.2, 0.1, 0.7, 0.3), 0j, 0j, 5.0, 1e-3)
    return tr.node(len(tr) - 1)


@pytest.mark.parametrize("use_drive", [False, True])
def test_fock_tomograms_are_densities(use_drive, driven_point):
    p = driven_point if use_drive else TrajectoryPoint.rest()
    X = np.linspace(-10, 10, 256)
    X1, X2 = np.meshgrid(X, X, indexing="ij")
    for n1 in range(5):
        for n2 in range(5 - n1):
            w = fock_tomogram(FockLabel(n1, n2), p, FRAME, X1, X2)
            assert w.min() >= -1e-10
            assert abs(np.sum(w) * (X[1] - X[0]) ** 2 - 1) < 1e-4


def test_vacuum_equals_coherent_zero(driven_point):
    X = np.linspace(-6, 6, 31)
    X1, X2 = np.meshgrid(X, X, indexing="ij")
    for p in (TrajectoryPoint.rest(), driven_point):
        a = fock_tomogram(FockLabel(0, 0), p, FRAME, X1, X2)
        b = coherent_tomogram_generating(CoherentLabel(), p, FRAME, X1, X2)
        assert np.max(np.abs(a - b)) < 1e-10


def test_generating_function_resummation(driven_point):
    """Coherent tomogram = envelope e^{-|a|^2-|b|^2} |sum a^n1 b^n2 H/(n1! n2!)|^2."""
    label = CoherentLabel(0.4 - 0.2j, -0.3 + 0.1j)
    X = np.linspace(-4, 4, 17)
    X1, X2 = np.meshgrid(X, X, indexing="ij")
    for p in (TrajectoryPoint.rest(), driven_point):
        hp = hermite_parameters(FRAME, p, X1, X2)
        H = hermite_2var(hp.D, hp.l, cap=HERMITE_CAP).values
        amp = sum(label.alpha ** n1 * label.beta ** n2 * H[n1, n2] / (math.factorial(n1) * math.factorial(n2))
                  for n1 in range(HERMITE_CAP + 1) for n2 in range(HERMITE_CAP + 1 - n1))
        resummed = (tomogram_envelope(FRAME, p, X1, X2)
                    * math.exp(-abs(label.alpha) ** 2 - abs(label.beta) ** 2) * np.abs(amp) ** 2)
        direct = coherent_tomogram_generating(label, p, FRAME, X1, X2)
        assert np.max(np.abs(resummed - direct)) < 1e-8 * direct.max()


def test_fock_matches_frft_of_ladder_state(psi_grid):
    n = FockLabel(2, 1)
    s = tomogram_2d(fock_wavefunction_const(n, psi_grid), FRAME)
    X1, X2 = np.meshgrid(s.x1_grid.points, s.x2_grid.points, indexing="ij")
    assert np.max(np.abs(s.values - fock_tomogram(n, TrajectoryPoint.rest(), FRAME, X1, X2))) < 1e-3


def test_fock_cap_and_frame_limits():
    with pytest.raises(InvalidArgumentError):
        fock_tomogram(FockLabel(7, 6), TrajectoryPoint.rest(), FRAME, 0.0, 0.0)
    with pytest.raises(UnsupportedFrameError):
        fock_tomogram(FockLabel(1, 0), TrajectoryPoint.rest(), optical_frame(0, 0), 0.0, 0.0)


def test_quantum_numbers():
    assert fock_quantum_numbers(FockLabel(2, 5)) == (2.5, 3)

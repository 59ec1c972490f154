"""Numeric symplectic tomograms of sampled wavefunctions.

For one mode,

    w(X, mu, nu) = |int psi(y) exp(i mu y^2/(2 nu) - i X y/nu) dy|^2 / (2 pi |nu|),

and the two-mode tomogram applies the same kernel on each axis before
squaring the modulus. The integral is evaluated by trapezoid quadrature on
the psi grid when |nu| >= |mu| ("position route"). When |mu| > |nu| the
equivalent momentum-space form

    w(X, mu, nu) = |int phi(p) exp(-i nu p^2/(2 mu) + i X p/mu) dp|^2 / (2 pi |mu|)

is used instead, with phi from a zero-padded FFT of psi, so the chirp never
exceeds one cycle per unit of the quadrature variable. |nu| < EPS_NU drops
the chirp altogether, which is the position limit |psi(X/mu)|^2/|mu| by
band-limited interpolation.

A sampled transform is periodic in X. Values further than half a period
from the state's mean quadrature are periodic images and are set to zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import czt

from .core import (
    EPS_NU,
    Grid1D,
    InvalidArgumentError,
    SymplecticFrame,
    TwoModeFrame,
    optical_frame,
    rescale_two_mode,
)
from .wavefunctions import WavefunctionGrid

__all__ = [
    "DEFAULT_X_GRID",
    "TomogramSlice1D",
    "TomogramSlice2D",
    "tomogram_1d",
    "tomogram_2d",
    "tomogram_2d_values",
    "optical_tomogram_2d",
    "marginal",
    "moments",
    "cross_covariance",
    "check_homogeneity",
    "NumericTomogram1D",
]

DEFAULT_X_GRID = Grid1D(-10.0, 10.0, 256)
NORM_TOL = 1e-3
PAD = 2
# direct quadrature below this many kernel entries, chirp-z above
CZT_THRESHOLD = 1 << 18


@dataclass(frozen=True, eq=False)
class TomogramSlice1D:
    frame: SymplecticFrame
    x_grid: Grid1D
    values: np.ndarray

    def normalization(self) -> float:
        return float(np.sum(self.values) * self.x_grid.spacing)


@dataclass(frozen=True, eq=False)
class TomogramSlice2D:
    frame: TwoModeFrame
    x1_grid: Grid1D
    x2_grid: Grid1D
    values: np.ndarray

    def normalization(self) -> float:
        return float(np.sum(self.values) * self.x1_grid.spacing * self.x2_grid.spacing)


class _ModeTransform:
    """Quadrature kernel for one mode: psi samples on ``grid`` -> amplitude at X."""

    def __init__(self, grid: Grid1D, frame: SymplecticFrame, X: np.ndarray,
                 method: str = "auto", pad: int = PAD):
        self.grid, self.frame = grid, frame
        self.X = np.asarray(X, dtype=float)
        mu, nu = frame.mu, frame.nu
        n, dy = grid.count, grid.spacing
        if abs(nu) < EPS_NU:
            self.route = "position-limit"
        elif abs(nu) >= abs(mu):
            self.route = "position"
        else:
            self.route = "momentum"
        if self.route == "position":
            self.period = 2 * math.pi * abs(nu) / dy
        else:
            self.period = abs(mu) * pad * n * dy
        self.pad = pad
        if method == "auto":
            method = "czt" if (n * pad * self.X.size > CZT_THRESHOLD and _uniform(self.X)) else "direct"
        if method == "czt" and not _uniform(self.X):
            raise InvalidArgumentError("chirp-z path needs a uniform X grid")
        self.method = method

    def _momentum_samples(self, data, axis):
        # phi(p_m) = (2 pi)^(-1/2) sum_j psi_j exp(-i p_m y_j) dy on a zero-padded grid
        n, dy = self.grid.count, self.grid.spacing
        m = self.pad * n
        p = 2 * math.pi * np.fft.fftshift(np.fft.fftfreq(m, dy))
        phi = np.fft.fftshift(np.fft.fft(data, m, axis=axis), axes=axis)
        shape = [1] * data.ndim
        shape[axis] = m
        phi = phi * (np.exp(-1j * p * self.grid.min) * dy / math.sqrt(2 * math.pi)).reshape(shape)
        return p, phi

    def apply(self, data: np.ndarray, axis: int) -> np.ndarray:
        mu, nu = self.frame.mu, self.frame.nu
        X = self.X
        if self.route == "position":
            y = self.grid.points
            wts = np.full(y.size, self.grid.spacing)
            wts[0] = wts[-1] = 0.5 * self.grid.spacing
            pre = wts * np.exp(0.5j * mu * y * y / nu) / math.sqrt(2 * math.pi * abs(nu))
            nodes, coef, scale, src = y, -1.0 / nu, pre, data
        else:
            p, phi = self._momentum_samples(data, axis)
            dp = p[1] - p[0]
            chirp = 0.0 if self.route == "position-limit" else -0.5 * nu / mu
            pre = dp * np.exp(1j * chirp * p * p) / math.sqrt(2 * math.pi * abs(mu))
            nodes, coef, scale, src = p, 1.0 / mu, pre, phi
        moved = np.moveaxis(src, axis, -1) * scale
        if self.method == "direct":
            kern = np.exp(1j * coef * np.outer(X, nodes))
            out = moved @ kern.T
        else:
            out = _czt_sum(moved, nodes, X, coef)
        return np.moveaxis(out, -1, axis)

    def window(self, center: float) -> np.ndarray:
        return np.abs(self.X - center) <= 0.5 * self.period


def _uniform(X: np.ndarray) -> bool:
    if X.size < 3:
        return False
    d = np.diff(X)
    return bool(np.all(np.abs(d - d[0]) <= 1e-9 * max(abs(d[0]), 1e-300)))


def _czt_sum(g: np.ndarray, nodes: np.ndarray, X: np.ndarray, coef: float) -> np.ndarray:
    """sum_j g_j exp(i coef X_k nodes_j) along the last axis via chirp-z."""
    y0, dy = nodes[0], nodes[1] - nodes[0]
    x0, dx = X[0], X[1] - X[0]
    j = np.arange(nodes.size)
    k = np.arange(X.size)
    pre = np.exp(1j * coef * x0 * j * dy)
    w = np.exp(1j * coef * dx * dy)
    out = czt(g * pre, m=X.size, w=w, a=1.0, axis=-1)
    return out * np.exp(1j * coef * (x0 + k * dx) * y0)


def _mean_quadratures_2d(psi: WavefunctionGrid) -> tuple[tuple[float, float], tuple[float, float]]:
    """(<x>, <p_x>), (<y>, <p_y>) of a sampled state."""
    f = np.where(np.isfinite(psi.values), psi.values, 0)
    x, y = psi.grid.mesh()
    dens = np.abs(f) ** 2
    tot = dens.sum()
    gx, gy = np.gradient(f, psi.grid.gx.spacing, psi.grid.gy.spacing)
    px = float(np.sum(np.conj(f) * gx).imag / tot)
    py = float(np.sum(np.conj(f) * gy).imag / tot)
    return (float(np.sum(x * dens) / tot), px), (float(np.sum(y * dens) / tot), py)


def _mean_quadrature_1d(psi: np.ndarray, grid: Grid1D) -> tuple[float, float]:
    y = grid.points
    dens = np.abs(psi) ** 2
    tot = dens.sum()
    g = np.gradient(psi, grid.spacing)
    return float(np.sum(y * dens) / tot), float(np.sum(np.conj(psi) * g).imag / tot)


def _check_normalized_1d(psi: np.ndarray, grid: Grid1D):
    n = float(np.sum(np.abs(psi) ** 2) * grid.spacing)
    if abs(n - 1) > NORM_TOL:
        raise InvalidArgumentError(f"wavefunction norm {n:.6g} is not 1 within {NORM_TOL}")


def _check_normalized_2d(psi: WavefunctionGrid):
    n = psi.norm()
    if abs(n - 1) > NORM_TOL:
        raise InvalidArgumentError(f"wavefunction norm {n:.6g} is not 1 within {NORM_TOL}")


def tomogram_1d(psi: np.ndarray, psi_grid: Grid1D, frame: SymplecticFrame,
                x_grid: Grid1D = DEFAULT_X_GRID, method: str = "auto") -> TomogramSlice1D:
    """One-mode tomogram of samples ``psi`` taken on ``psi_grid``."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (psi_grid.count,):
        raise InvalidArgumentError("psi samples do not match their grid")
    _check_normalized_1d(psi, psi_grid)
    op = _ModeTransform(psi_grid, frame, x_grid.points, method)
    amp = op.apply(psi, 0)
    q, p = _mean_quadrature_1d(psi, psi_grid)
    amp = np.where(op.window(frame.mu * q + frame.nu * p), amp, 0)
    return TomogramSlice1D(frame, x_grid, np.abs(amp) ** 2)


def tomogram_2d_values(psi: WavefunctionGrid, frame: TwoModeFrame, X1: np.ndarray,
                       X2: np.ndarray, method: str = "auto") -> np.ndarray:
    """Tomogram on the outer grid X1 x X2 (arbitrary 1-D arrays)."""
    _check_normalized_2d(psi)
    f = np.where(np.isfinite(psi.values), psi.values, 0)
    op1 = _ModeTransform(psi.grid.gx, frame.f1, X1, method)
    op2 = _ModeTransform(psi.grid.gy, frame.f2, X2, method)
    amp = op1.apply(op2.apply(f, 1), 0)
    (qx, px), (qy, py) = _mean_quadratures_2d(psi)
    w1 = op1.window(frame.f1.mu * qx + frame.f1.nu * px)
    w2 = op2.window(frame.f2.mu * qy + frame.f2.nu * py)
    vals = np.abs(amp) ** 2
    vals[~w1, :] = 0.0
    vals[:, ~w2] = 0.0
    return vals


def tomogram_2d(psi: WavefunctionGrid, frame: TwoModeFrame, x1_grid: Grid1D = DEFAULT_X_GRID,
                x2_grid: Grid1D = DEFAULT_X_GRID, method: str = "auto") -> TomogramSlice2D:
    """Two-mode tomogram w(X1, X2) of a sampled psi(x, y); mode 1 is x, mode 2 is y."""
    vals = tomogram_2d_values(psi, frame, x1_grid.points, x2_grid.points, method)
    return TomogramSlice2D(frame, x1_grid, x2_grid, vals)


def optical_tomogram_2d(psi: WavefunctionGrid, theta1: float, theta2: float,
                        x1_grid: Grid1D = DEFAULT_X_GRID, x2_grid: Grid1D = DEFAULT_X_GRID,
                        method: str = "auto") -> TomogramSlice2D:
    return tomogram_2d(psi, optical_frame(theta1, theta2), x1_grid, x2_grid, method)


def marginal(s: TomogramSlice2D, axis: int) -> TomogramSlice1D:
    """Integrate out one mode; ``axis=0`` keeps X1, ``axis=1`` keeps X2."""
    if axis == 0:
        return TomogramSlice1D(s.frame.f1, s.x1_grid, s.values.sum(axis=1) * s.x2_grid.spacing)
    if axis == 1:
        return TomogramSlice1D(s.frame.f2, s.x2_grid, s.values.sum(axis=0) * s.x1_grid.spacing)
    raise InvalidArgumentError("axis must be 0 or 1")


def moments(s: TomogramSlice1D) -> tuple[float, float]:
    """Riemann-sum mean and variance of a normalized one-mode slice."""
    norm = s.normalization()
    if abs(norm - 1) > NORM_TOL:
        raise InvalidArgumentError(f"slice normalization {norm:.6g} is not 1 within {NORM_TOL}")
    X = s.x_grid.points
    dx = s.x_grid.spacing
    mean = float(np.sum(X * s.values) * dx / norm)
    var = float(np.sum((X - mean) ** 2 * s.values) * dx / norm)
    return mean, var


def cross_covariance(s: TomogramSlice2D) -> float:
    X1, X2 = s.x1_grid.points, s.x2_grid.points
    da = s.x1_grid.spacing * s.x2_grid.spacing
    w = s.values
    norm = w.sum() * da
    m1 = np.sum(X1[:, None] * w) * da / norm
    m2 = np.sum(X2[None, :] * w) * da / norm
    return float(np.sum((X1[:, None] - m1) * (X2[None, :] - m2) * w) * da / norm)


def check_homogeneity(psi: WavefunctionGrid, frame: TwoModeFrame, lam: float,
                      probe: np.ndarray | None = None) -> float:
    """max |w(lam X, lam frame) - w(X, frame)/lam^2| over a probe set.

    Each mode contributes a factor 1/|lam|, hence lam^2 for the pair.
    """
    scaled = rescale_two_mode(lam, frame)
    if probe is None:
        probe = np.linspace(-6.0, 6.0, 49)
    probe = np.asarray(probe, dtype=float)
    ref = tomogram_2d_values(psi, frame, probe, probe)
    if lam == 1:
        return 0.0
    got = tomogram_2d_values(psi, scaled, lam * probe, lam * probe)
    return float(np.max(np.abs(got - ref / (lam * lam))))


class NumericTomogram1D:
    """Callable one-mode tomogram w(X, mu, nu) of fixed samples ``psi``.

    ``mu`` and ``nu`` may be scalars or equal-length 1-D arrays; with arrays
    the result has one row per frame.
    """

    def __init__(self, psi: np.ndarray, grid: Grid1D, method: str = "direct"):
        self.psi = np.asarray(psi, dtype=complex)
        self.grid = grid
        self.method = method
        _check_normalized_1d(self.psi, grid)
        self._q, self._p = _mean_quadrature_1d(self.psi, grid)

    def _one(self, X, mu, nu):
        f = SymplecticFrame(mu, nu)
        op = _ModeTransform(self.grid, f, X, self.method)
        amp = op.apply(self.psi, 0)
        amp = np.where(op.window(mu * self._q + nu * self._p), amp, 0)
        return np.abs(amp) ** 2

    def __call__(self, X, mu, nu):
        X = np.atleast_1d(np.asarray(X, dtype=float))
        if np.ndim(mu) == 0 and np.ndim(nu) == 0:
            return self._one(X, float(mu), float(nu))
        mu, nu = np.broadcast_arrays(np.ravel(mu), np.ravel(nu))
        return np.stack([self._one(X, float(a), float(b)) for a, b in zip(mu, nu)])

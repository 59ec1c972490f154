"""Density matrices from tomograms, and state fidelities.

Both inversions go through the characteristic function of a tomogram,

    chi(mu, nu) = int w(X, mu, nu) exp(i X) dX,

which by homogeneity equals int w(X', mu/r, nu/r) exp(i r X') dX' with
r = hypot(mu, nu). Tomogram evaluators are therefore only ever called on
unit-radius frames, one batch of frames at a time.

Evaluator protocol: ``w(X, mu, nu)`` with 1-D ``X`` and equal-length 1-D
``mu``/``nu`` returns an array of shape ``(len(mu), len(X))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ChargeTomoError, Grid1D, InvalidArgumentError
from .wavefunctions import WavefunctionGrid

__all__ = [
    "ReconstructionError",
    "FidelityError",
    "DensityMatrixGrid1D",
    "FidelityResult",
    "reconstruct_density_1d",
    "fidelity_pure",
    "fidelity_tomographic",
    "fidelity_product",
    "TRACE_TOL",
    "FIDELITY_TOL",
]

TRACE_TOL = 1e-2
FIDELITY_TOL = 1e-2
NORM_TOL = 1e-2


class ReconstructionError(ChargeTomoError, ArithmeticError):
    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class FidelityError(ChargeTomoError, ArithmeticError):
    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


@dataclass(frozen=True, eq=False)
class DensityMatrixGrid1D:
    """rho(x_i, x_j) sampled on ``x_grid``; ``values[i, j]``."""

    x_grid: Grid1D
    values: np.ndarray

    def trace(self) -> complex:
        return complex(np.trace(self.values) * self.x_grid.spacing)

    def purity(self) -> float:
        h = self.x_grid.spacing
        return float(np.real(np.sum(self.values * self.values.T)) * h * h)

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.values - self.values.conj().T)))

    def min_eigenvalue(self) -> float:
        herm = 0.5 * (self.values + self.values.conj().T)
        return float(np.linalg.eigvalsh(herm * self.x_grid.spacing)[0])

    def diagonal(self) -> np.ndarray:
        return np.real(np.diag(self.values))


@dataclass(frozen=True)
class FidelityResult:
    value: float
    method: str
    tolerance: float

    def as_dict(self) -> dict:
        return {"value": min(max(self.value, 0.0), 1.0), "raw_value": self.value,
                "method": self.method, "tolerances": {"absolute": self.tolerance}}


def _trapezoid_weights(x: np.ndarray) -> np.ndarray:
    w = np.full(x.shape, x[1] - x[0])
    w[0] = w[-1] = 0.5 * (x[1] - x[0])
    return w


def _characteristic(w, X, wX, mu, nu):
    """chi(mu_k, nu_k) for arrays of frames, via unit-radius evaluation."""
    mu = np.asarray(mu, dtype=float)
    nu = np.asarray(nu, dtype=float)
    r = np.hypot(mu, nu)
    chi = np.ones(mu.shape, dtype=complex)
    nz = r > 0
    if np.any(nz):
        rows = np.asarray(w(X, mu[nz] / r[nz], nu[nz] / r[nz]), dtype=float)
        rows = rows.reshape(int(nz.sum()), X.size)
        chi[nz] = (rows * np.exp(1j * r[nz, None] * X[None, :])) @ wX
    return chi


def reconstruct_density_1d(w, x_grid: Grid1D, mu_max: float = 8.0, n_mu: int = 161,
                           x_max: float = 10.0, n_x: int = 401) -> DensityMatrixGrid1D:
    """rho(x, x') = (1/2pi) int chi(mu, x - x') exp(-i mu (x + x')/2) dmu.

    The Y integral inside chi runs over [-x_max, x_max] with ``n_x`` nodes and
    the mu integral over [-mu_max, mu_max] with ``n_mu`` nodes, both by the
    trapezoid rule. Only non-negative separations are evaluated; the rest
    follow from chi(-mu, -nu) = conj(chi(mu, nu)), which also makes the
    result exactly Hermitian.
    """
    if n_mu < 3 or n_x < 3 or mu_max <= 0 or x_max <= 0:
        raise InvalidArgumentError("quadrature sizes and cutoffs must be positive")
    xs = x_grid.points
    n = xs.size
    h = x_grid.spacing
    Y = np.linspace(-x_max, x_max, n_x)
    wY = _trapezoid_weights(Y)
    mu = np.linspace(-mu_max, mu_max, n_mu)
    wmu = _trapezoid_weights(mu)
    rho = np.zeros((n, n), dtype=complex)
    for k in range(n):
        chi = _characteristic(w, Y, wY, mu, np.full(n_mu, k * h))
        i = np.arange(k, n)
        s = xs[i] + xs[i - k]
        vals = (chi * wmu) @ np.exp(-0.5j * mu[:, None] * s[None, :]) / (2 * math.pi)
        rho[i, i - k] = vals
        if k:
            rho[i - k, i] = vals.conj()
    out = DensityMatrixGrid1D(x_grid, rho)
    tr = out.trace()
    if abs(tr - 1) > TRACE_TOL:
        raise ReconstructionError(
            f"reconstructed trace {tr.real:.6g}{tr.imag:+.3g}j is off by more than {TRACE_TOL}",
            {"trace": tr, "mu_max": mu_max, "n_mu": n_mu, "x_max": x_max, "n_x": n_x})
    return out


def fidelity_pure(psi1, psi2, grid=None) -> float:
    """|<psi1|psi2>|^2 by Riemann sum.

    Accepts two :class:`WavefunctionGrid` objects on the same grid, or two
    1-D sample arrays together with their common :class:`Grid1D`.
    """
    if isinstance(psi1, WavefunctionGrid) and isinstance(psi2, WavefunctionGrid):
        if psi1.grid != psi2.grid:
            raise InvalidArgumentError("wavefunctions live on different grids")
        return float(abs(psi1.inner(psi2)) ** 2)
    if isinstance(psi1, WavefunctionGrid) or isinstance(psi2, WavefunctionGrid):
        raise InvalidArgumentError("cannot mix grid wavefunctions and raw arrays")
    if grid is None:
        raise InvalidArgumentError("raw arrays need their Grid1D")
    a = np.asarray(psi1, dtype=complex)
    b = np.asarray(psi2, dtype=complex)
    if a.shape != b.shape or a.shape != (grid.count,):
        raise InvalidArgumentError("sample arrays do not match the grid")
    return float(abs(np.vdot(a, b) * grid.spacing) ** 2)


def fidelity_tomographic(w1, w2, n_theta: int = 64, r_max: float = 8.0, n_r: int = 161,
                         x_max: float = 10.0, n_x: int = 401) -> float:
    """P12 = (1/2pi) int w1(X, mu, nu) w2(Y, mu, nu) e^{i(X - Y)} dX dY dmu dnu.

    In polar frame coordinates mu = r cos(theta), nu = r sin(theta) with
    theta in [0, pi) and r of either sign this is

        P12 = (1/2pi) int_0^pi dtheta int_0^r_max 2 r Re[chi1 conj(chi2)] dr.
    """
    theta = math.pi * np.arange(n_theta) / n_theta
    c, s = np.cos(theta), np.sin(theta)
    X = np.linspace(-x_max, x_max, n_x)
    wX = _trapezoid_weights(X)
    r = np.linspace(0.0, r_max, n_r)
    wr = _trapezoid_weights(r)
    kernel = np.exp(1j * X[:, None] * r[None, :]) * wX[:, None]
    chis = []
    for w in (w1, w2):
        rows = np.asarray(w(X, c, s), dtype=float).reshape(n_theta, n_x)
        norms = rows @ wX
        bad = np.abs(norms - 1)
        if np.max(bad) > NORM_TOL:
            j = int(np.argmax(bad))
            raise FidelityError(
                f"tomogram normalization {norms[j]:.6g} at theta={theta[j]:.4g} is off by more than {NORM_TOL}",
                {"theta": float(theta[j]), "normalization": float(norms[j]), "x_max": x_max})
        chis.append(rows @ kernel)
    integrand = 2 * r[None, :] * np.real(chis[0] * chis[1].conj())
    value = float(np.sum(integrand @ wr) * (math.pi / n_theta) / (2 * math.pi))
    if not math.isfinite(value):
        raise FidelityError("fidelity quadrature produced a non-finite value",
                            {"n_theta": n_theta, "r_max": r_max, "n_r": n_r})
    return value


def fidelity_product(modes1, modes2, **kw) -> float:
    """Fidelity of product states as the product of per-mode tomographic values."""
    if len(modes1) != len(modes2):
        raise InvalidArgumentError("states have different numbers of modes")
    value = 1.0
    for a, b in zip(modes1, modes2):
        value *= fidelity_tomographic(a, b, **kw)
    return value

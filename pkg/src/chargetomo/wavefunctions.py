"""Sampled wavefunctions and finite-difference operators.

Coordinates: rows of ``values`` run over x, columns over y. Momenta are
p = -i d/dx realised by fourth-order central differences; the outer band of
two rows/columns where the stencil does not fit is set to NaN.

The ladder operators of the constant-field problem are

    A = ((p_x + i p_y) + (y - i x)/2) / sqrt(2)
    B = ((p_y + i p_x) + (x - i y)/2) / sqrt(2)

and the driven-problem invariants are written in the rotating variables
z = -(x + i y) exp(i t/2)/sqrt(2), zbar = -(x - i y) exp(-i t/2)/sqrt(2).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import eval_hermitenorm

from .core import (
    CoherentLabel,
    Grid1D,
    FockLabel,
    Grid2D,
    GridCoverageError,
    InvalidArgumentError,
)
from .drive import DriveField, TrajectoryPoint, ZeroDrive

__all__ = [
    "NORM_TOL",
    "WavefunctionGrid",
    "LadderKind",
    "coherent_wavefunction_const",
    "coherent_wavefunction_var",
    "ground_state",
    "apply_ladder",
    "apply_hamiltonian",
    "apply_angular_momentum",
    "fock_wavefunction_const",
    "rotating_coordinates",
    "interior",
    "relative_residual",
    "mode_coherent_wavefunction",
    "mode_fock_wavefunction",
]

SQRT2 = math.sqrt(2.0)
NORM_TOL = 1e-3
FOCK_CAP = 6
BAND = 2


@dataclass(frozen=True, eq=False)
class WavefunctionGrid:
    """Complex psi(x, y) on a :class:`Grid2D`, stamped with time ``t``.

    ``point`` is the trajectory point the state was built from (needed by the
    driven-problem invariants); ``None`` means the undriven orbit at rest.
    """

    grid: Grid2D
    values: np.ndarray
    t: float = 0.0
    point: TrajectoryPoint | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != self.grid.shape:
            raise InvalidArgumentError(
                f"values shape {values.shape} does not match grid {self.grid.shape}")
        object.__setattr__(self, "values", values)

    def norm(self) -> float:
        v = self.values[np.isfinite(self.values)]
        return float(np.sum(v.real ** 2 + v.imag ** 2) * self.grid.cell_area)

    def normalized(self) -> "WavefunctionGrid":
        v = np.where(np.isfinite(self.values), self.values, 0)
        return replace(self, values=v / math.sqrt(self.norm()))

    def inner(self, other: "WavefunctionGrid") -> complex:
        """Riemann-sum <self|other> over points finite in both."""
        if other.grid != self.grid:
            raise InvalidArgumentError("wavefunctions live on different grids")
        mask = np.isfinite(self.values) & np.isfinite(other.values)
        return complex(np.sum(np.conj(self.values[mask]) * other.values[mask]) * self.grid.cell_area)

    def _with(self, values) -> "WavefunctionGrid":
        return WavefunctionGrid(self.grid, values, self.t, self.point)


class LadderKind(enum.Enum):
    A = "A"
    Adag = "Adag"
    B = "B"
    Bdag = "Bdag"
    Avar = "Avar"
    Bvar = "Bvar"


def _check_norm(psi: WavefunctionGrid) -> WavefunctionGrid:
    n = psi.norm()
    if abs(n - 1.0) > NORM_TOL:
        raise GridCoverageError(
            f"grid norm {n:.6g} deviates from 1 by more than {NORM_TOL}; widen the grid")
    return psi


def rotating_coordinates(grid: Grid2D, t: float) -> tuple[np.ndarray, np.ndarray]:
    x, y = grid.mesh()
    z = -(x + 1j * y) * np.exp(0.5j * t) / SQRT2
    zb = -(x - 1j * y) * np.exp(-0.5j * t) / SQRT2
    return z, zb


def coherent_wavefunction_const(label: CoherentLabel, grid: Grid2D | None = None) -> WavefunctionGrid:
    """Coherent state |alpha, beta> of the constant field, sampled exactly."""
    grid = grid or Grid2D.square()
    x, y = grid.mesh()
    a, b = label.alpha, label.beta
    expo = (-(x * x + y * y) / 4 - 0.5 * (abs(a) ** 2 + abs(b) ** 2)
            + (b * (x + 1j * y) + 1j * a * (x - 1j * y)) / SQRT2 - 1j * a * b)
    psi = WavefunctionGrid(grid, np.exp(expo) / math.sqrt(2 * math.pi), 0.0)
    return _check_norm(psi)


def ground_state(grid: Grid2D | None = None) -> WavefunctionGrid:
    return coherent_wavefunction_const(CoherentLabel(0j, 0j), grid)


def coherent_wavefunction_var(label: CoherentLabel, p: TrajectoryPoint,
                              grid: Grid2D | None = None) -> WavefunctionGrid:
    """Coherent state of the driven problem at time ``p.t``.

    The label term is rotated by exp(-i t/2):

        -i exp(-i t/2) [alpha (zbar + conj(z0)) - i beta (z + z0)]

    which makes the state an exact solution of the driven Schrodinger
    equation with eigenvalues (alpha, beta) of the invariants Avar, Bvar.
    With exp(+i t/2) neither property holds for t != 0.
    """
    grid = grid or Grid2D.square()
    t = p.t
    z, zb = rotating_coordinates(grid, t)
    z0, z0b = p.z0, p.z0.conjugate()
    v, vb = p.z0_dot, p.z0_dot.conjugate()
    a, b = label.alpha, label.beta
    rot = np.exp(-0.5j * t)
    expo = (-0.5 * (z * zb + z0 * z0b)
            - (1j * vb + 0.5 * z0b) * z
            - (1j * v + 0.5 * z0) * zb
            - 0.5j * t
            - 0.5 * (abs(a) ** 2 + abs(b) ** 2)
            - 1j * a * b * np.exp(-1j * t)
            - 1j * rot * (a * (zb + z0b) - 1j * b * (z + z0))
            + 1j * p.phase)
    psi = WavefunctionGrid(grid, np.exp(expo) / math.sqrt(2 * math.pi), t, p)
    return _check_norm(psi)


# -- finite differences -------------------------------------------------------

_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


def _stencil(f: np.ndarray, coeffs: np.ndarray, scale: float, axis: int) -> np.ndarray:
    g = np.moveaxis(f, axis, 0)
    n = g.shape[0]
    out = np.full(g.shape, np.nan + 0j)
    out[BAND:n - BAND] = sum(c * g[k:n - 4 + k] for k, c in enumerate(coeffs) if c) / scale
    return np.moveaxis(out, 0, axis)


def _d1(f: np.ndarray, h: float, axis: int) -> np.ndarray:
    return _stencil(f, _D1, h, axis)


def _d2(f: np.ndarray, h: float, axis: int) -> np.ndarray:
    return _stencil(f, _D2, h * h, axis)


def _check_size(psi: WavefunctionGrid):
    nx, ny = psi.grid.shape
    if nx < 5 or ny < 5:
        raise InvalidArgumentError("finite-difference operators need at least 5 points per axis")


def _momenta(psi: WavefunctionGrid):
    f = psi.values
    px = -1j * _d1(f, psi.grid.gx.spacing, 0)
    py = -1j * _d1(f, psi.grid.gy.spacing, 1)
    return px, py


def _var_point(psi: WavefunctionGrid) -> TrajectoryPoint:
    return psi.point if psi.point is not None else TrajectoryPoint.rest(psi.t)


def apply_ladder(kind: LadderKind | str, psi: WavefunctionGrid) -> WavefunctionGrid:
    """Apply a ladder operator or driven-problem invariant to ``psi``.

    ``Avar``/``Bvar`` use the trajectory point stored on ``psi`` (rest orbit
    when absent) and its time stamp.
    """
    kind = LadderKind(kind)
    _check_size(psi)
    x, y = psi.grid.mesh()
    f = psi.values
    px, py = _momenta(psi)
    if kind is LadderKind.A:
        out = ((px + 1j * py) + 0.5 * (y - 1j * x) * f) / SQRT2
    elif kind is LadderKind.Adag:
        out = ((px - 1j * py) + 0.5 * (y + 1j * x) * f) / SQRT2
    elif kind is LadderKind.B:
        out = ((py + 1j * px) + 0.5 * (x - 1j * y) * f) / SQRT2
    elif kind is LadderKind.Bdag:
        out = ((py - 1j * px) + 0.5 * (x + 1j * y) * f) / SQRT2
    else:
        p = _var_point(psi)
        t = psi.t
        z, zb = rotating_coordinates(psi.grid, t)
        dx = 1j * px  # d/dx psi
        dy = 1j * py
        if kind is LadderKind.Avar:
            d_zb = -np.exp(0.5j * t) * (dx + 1j * dy) / SQRT2
            out = (1j * np.exp(0.5j * t) / SQRT2) * (
                (z + p.z0) * f / SQRT2 + SQRT2 * (d_zb + 1j * p.z0_dot * f))
        else:
            d_z = -np.exp(-0.5j * t) * (dx - 1j * dy) / SQRT2
            out = -(np.exp(0.5j * t) / SQRT2) * (
                (zb + p.z0.conjugate()) * f / SQRT2
                + SQRT2 * (d_z + 1j * p.z0_dot.conjugate() * f))
    return psi._with(out)


def apply_hamiltonian(psi: WavefunctionGrid, drive: DriveField | None = None) -> WavefunctionGrid:
    """Right-hand side of the driven Schrodinger equation at time ``psi.t``.

    H = -(d_xx + d_yy)/2 + (x^2 + y^2)/8 + (i/2)(x d_y - y d_x) - (E1 x + E2 y)
    """
    drive = drive or ZeroDrive()
    _check_size(psi)
    x, y = psi.grid.mesh()
    f = psi.values
    hx, hy = psi.grid.gx.spacing, psi.grid.gy.spacing
    lap = _d2(f, hx, 0) + _d2(f, hy, 1)
    dxf, dyf = _d1(f, hx, 0), _d1(f, hy, 1)
    e1, e2 = drive.field(psi.t)
    out = (-0.5 * lap + (x * x + y * y) / 8 * f + 0.5j * (x * dyf - y * dxf)
           - (float(e1) * x + float(e2) * y) * f)
    return psi._with(out)


def apply_angular_momentum(psi: WavefunctionGrid) -> WavefunctionGrid:
    """L_z = x p_y - y p_x."""
    _check_size(psi)
    x, y = psi.grid.mesh()
    px, py = _momenta(psi)
    return psi._with(x * py - y * px)


def fock_wavefunction_const(n: FockLabel, grid: Grid2D | None = None,
                            cap: int = FOCK_CAP) -> WavefunctionGrid:
    """|n1, n2> built by finite-difference raising of the analytic ground state.

    Each application invalidates a two-point band at the border; the band is
    zero-filled (the state is negligible there) and the result renormalised
    on the grid.
    """
    if n.total > cap:
        raise InvalidArgumentError(f"n1 + n2 = {n.total} exceeds the cap {cap}")
    psi = ground_state(grid)
    for kind, count in ((LadderKind.Adag, n.n1), (LadderKind.Bdag, n.n2)):
        for _ in range(count):
            v = apply_ladder(kind, psi).values
            psi = psi._with(np.where(np.isfinite(v), v, 0))
    if n.total:
        psi = psi.normalized()
    return psi


def interior(values: np.ndarray) -> np.ndarray:
    """Boolean mask of points where ``values`` is valid (finite)."""
    return np.isfinite(values)


def relative_residual(lhs: WavefunctionGrid | np.ndarray, rhs: WavefunctionGrid | np.ndarray,
                      ref: WavefunctionGrid | np.ndarray | None = None) -> float:
    """||lhs - rhs|| / ||ref|| over points valid in every operand."""
    a = lhs.values if isinstance(lhs, WavefunctionGrid) else np.asarray(lhs)
    b = rhs.values if isinstance(rhs, WavefunctionGrid) else np.asarray(rhs)
    r = b if ref is None else (ref.values if isinstance(ref, WavefunctionGrid) else np.asarray(ref))
    mask = np.isfinite(a) & np.isfinite(b) & np.isfinite(r)
    den = np.linalg.norm(r[mask])
    return float(np.linalg.norm((a - b)[mask]) / den)


# -- one-mode states ------------------------------------------------------------

def mode_coherent_wavefunction(k: complex, grid: Grid1D) -> np.ndarray:
    """Normalized psi(q) = (2 pi)^(-1/4) exp(-q^2/4 + k q - (Re k)^2)."""
    q = grid.points
    k = complex(k)
    return np.exp(-q * q / 4 + k * q - k.real ** 2) / (2 * math.pi) ** 0.25


def mode_fock_wavefunction(n: int, grid: Grid1D) -> np.ndarray:
    """n-th excitation of the mode whose ground state is exp(-q^2/4)."""
    if n < 0:
        raise InvalidArgumentError("n must be nonnegative")
    q = grid.points
    norm = (2 * math.pi) ** 0.25 * math.sqrt(math.factorial(n))
    return (eval_hermitenorm(n, q) * np.exp(-q * q / 4) / norm).astype(complex)

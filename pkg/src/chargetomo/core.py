"""Shared value types, grids and frame constructors.

Units throughout: hbar = c = e = m = 1 and cyclotron frequency 1, so every
quantity handled by the package is dimensionless. The particle charge is
taken positive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EPS_NU",
    "ChargeTomoError",
    "InvalidArgumentError",
    "RangeError",
    "NumericError",
    "GridCoverageError",
    "UnsupportedFrameError",
    "SymplecticFrame",
    "TwoModeFrame",
    "CoherentLabel",
    "FockLabel",
    "Grid1D",
    "Grid2D",
    "optical_frame",
    "rescale_frame",
    "rescale_two_mode",
    "orbit_center",
]

# |nu| below this is handled by the position-limit path of the FRFT engine.
EPS_NU = 1e-8


class ChargeTomoError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(ChargeTomoError, ValueError):
    pass


class RangeError(ChargeTomoError, ValueError):
    pass


class NumericError(ChargeTomoError, ArithmeticError):
    pass


class GridCoverageError(ChargeTomoError, ValueError):
    """The sampling grid does not contain the state (norm check failed)."""


class UnsupportedFrameError(ChargeTomoError, ValueError):
    pass


@dataclass(frozen=True)
class SymplecticFrame:
    """Reference-frame labels (mu, nu) of the quadrature X = mu*q + nu*p."""

    mu: float
    nu: float

    def __post_init__(self):
        mu, nu = float(self.mu), float(self.nu)
        if not (math.isfinite(mu) and math.isfinite(nu)):
            raise InvalidArgumentError(f"frame components must be finite, got ({mu}, {nu})")
        if mu == 0.0 and nu == 0.0:
            raise InvalidArgumentError("frame (0, 0) is not a valid symplectic frame")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)

    @property
    def scale(self) -> float:
        return math.hypot(self.mu, self.nu)

    @property
    def quadrature_variance(self) -> float:
        """Variance of X for the ground state: mu**2 + nu**2/4."""
        return self.mu * self.mu + 0.25 * self.nu * self.nu


@dataclass(frozen=True)
class TwoModeFrame:
    f1: SymplecticFrame
    f2: SymplecticFrame

    @classmethod
    def from_values(cls, mu1, nu1, mu2, nu2) -> "TwoModeFrame":
        return cls(SymplecticFrame(mu1, nu1), SymplecticFrame(mu2, nu2))

    def as_dict(self) -> dict:
        return {"mu1": self.f1.mu, "nu1": self.f1.nu, "mu2": self.f2.mu, "nu2": self.f2.nu}


@dataclass(frozen=True)
class CoherentLabel:
    """Eigenvalues (alpha, beta) of the lowering operators A and B."""

    alpha: complex = 0j
    beta: complex = 0j

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        if not all(math.isfinite(v) for v in (a.real, a.imag, b.real, b.imag)):
            raise InvalidArgumentError("coherent label components must be finite")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)


@dataclass(frozen=True)
class FockLabel:
    n1: int = 0
    n2: int = 0

    def __post_init__(self):
        for name in ("n1", "n2"):
            v = getattr(self, name)
            if int(v) != v or v < 0:
                raise InvalidArgumentError(f"{name} must be a nonnegative integer, got {v!r}")
            object.__setattr__(self, name, int(v))

    @property
    def total(self) -> int:
        return self.n1 + self.n2


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid of ``count`` points from ``min`` to ``max`` inclusive."""

    min: float
    max: float
    count: int

    def __post_init__(self):
        if not (math.isfinite(self.min) and math.isfinite(self.max)):
            raise InvalidArgumentError("grid bounds must be finite")
        if not self.min < self.max:
            raise InvalidArgumentError(f"grid needs min < max, got [{self.min}, {self.max}]")
        if int(self.count) != self.count or self.count < 2:
            raise InvalidArgumentError(f"grid needs at least 2 points, got {self.count}")
        object.__setattr__(self, "min", float(self.min))
        object.__setattr__(self, "max", float(self.max))
        object.__setattr__(self, "count", int(self.count))

    @classmethod
    def symmetric(cls, half_span: float, count: int) -> "Grid1D":
        return cls(-half_span, half_span, count)

    @property
    def spacing(self) -> float:
        return (self.max - self.min) / (self.count - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.count)

    def refined(self) -> "Grid1D":
        """Same interval with the spacing halved."""
        return Grid1D(self.min, self.max, 2 * self.count - 1)

    def as_dict(self) -> dict:
        return {"min": self.min, "max": self.max, "count": self.count}


@dataclass(frozen=True)
class Grid2D:
    gx: Grid1D
    gy: Grid1D

    @classmethod
    def square(cls, half_span: float = 12.0, count: int = 256) -> "Grid2D":
        g = Grid1D.symmetric(half_span, count)
        return cls(g, g)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.gx.count, self.gy.count)

    @property
    def cell_area(self) -> float:
        return self.gx.spacing * self.gy.spacing

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Coordinate arrays (x, y) with x varying along rows."""
        return np.meshgrid(self.gx.points, self.gy.points, indexing="ij")


def optical_frame(theta1: float, theta2: float) -> TwoModeFrame:
    return TwoModeFrame(
        SymplecticFrame(math.cos(theta1), math.sin(theta1)),
        SymplecticFrame(math.cos(theta2), math.sin(theta2)),
    )


def rescale_frame(lam: float, f: SymplecticFrame) -> SymplecticFrame:
    if lam == 0 or not math.isfinite(lam):
        raise InvalidArgumentError(f"rescaling factor must be finite and nonzero, got {lam}")
    return SymplecticFrame(lam * f.mu, lam * f.nu)


def rescale_two_mode(lam: float, frame: TwoModeFrame) -> TwoModeFrame:
    return TwoModeFrame(rescale_frame(lam, frame.f1), rescale_frame(lam, frame.f2))


def orbit_center(label: CoherentLabel) -> tuple[float, float]:
    """Cyclotron orbit centre (x0, y0) from beta = (x0 - i*y0)/sqrt(2)."""
    b = label.beta
    return (math.sqrt(2.0) * b.real, -math.sqrt(2.0) * b.imag)

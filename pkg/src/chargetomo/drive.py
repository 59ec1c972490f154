"""Electric drive fields and the classical orbit z0(t).

The guiding-centre coordinate obeys

    z0'' + z0/4 = F(t),   F(t) = (E1(t) + i E2(t)) exp(i t/2) / sqrt(2),

and every varying-field formula also needs the action integral

    phase(t) = int_0^t (|z0|^2/4 - |z0'|^2) dtau,

which is carried as a third component of the RK4 state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import InvalidArgumentError, NumericError, RangeError

__all__ = [
    "DriveField",
    "ZeroDrive",
    "ConstantDrive",
    "SinusoidalDrive",
    "TabulatedDrive",
    "TrajectoryPoint",
    "Trajectory",
    "forcing",
    "integrate_trajectory",
    "trajectory_at",
    "c_coefficients",
    "drive_from_dict",
]

SQRT2 = math.sqrt(2.0)
DEFAULT_STEP = 1e-3


class DriveField:
    """Uniform in-plane electric field E(t) = (E1(t), E2(t))."""

    kind = "abstract"

    def field(self, t):
        raise NotImplementedError

    def as_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class ZeroDrive(DriveField):
    kind = "zero"

    def field(self, t):
        z = np.zeros_like(np.asarray(t, dtype=float))
        return z, z.copy()

    def as_dict(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class ConstantDrive(DriveField):
    e1: float
    e2: float
    kind = "constant"

    def field(self, t):
        t = np.asarray(t, dtype=float)
        return np.full_like(t, self.e1), np.full_like(t, self.e2)

    def as_dict(self):
        return {"kind": self.kind, "e1": self.e1, "e2": self.e2}


@dataclass(frozen=True)
class SinusoidalDrive(DriveField):
    """E_j(t) = amp_j * cos(freq*t + phase)."""

    amp1: float
    amp2: float
    freq: float
    phase: float = 0.0
    kind = "sinusoidal"

    def field(self, t):
        c = np.cos(self.freq * np.asarray(t, dtype=float) + self.phase)
        return self.amp1 * c, self.amp2 * c

    def as_dict(self):
        return {"kind": self.kind, "amp1": self.amp1, "amp2": self.amp2,
                "freq": self.freq, "phase": self.phase}


@dataclass(frozen=True)
class TabulatedDrive(DriveField):
    """Sampled field, linearly interpolated; evaluation outside the table raises."""

    times: tuple
    e1: tuple
    e2: tuple
    kind = "tabulated"

    def __post_init__(self):
        times = tuple(float(v) for v in self.times)
        e1 = tuple(float(v) for v in self.e1)
        e2 = tuple(float(v) for v in self.e2)
        if len(times) < 2:
            raise InvalidArgumentError("tabulated drive needs at least 2 samples")
        if not (len(e1) == len(e2) == len(times)):
            raise InvalidArgumentError("tabulated drive columns differ in length")
        if np.any(np.diff(times) <= 0):
            raise InvalidArgumentError("tabulated drive times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "e1", e1)
        object.__setattr__(self, "e2", e2)

    def field(self, t):
        t = np.asarray(t, dtype=float)
        lo, hi = self.times[0], self.times[-1]
        if np.any(t < lo) or np.any(t > hi):
            raise RangeError(f"time outside tabulated drive range [{lo}, {hi}]")
        return np.interp(t, self.times, self.e1), np.interp(t, self.times, self.e2)

    def as_dict(self):
        return {"kind": self.kind, "times": list(self.times),
                "e1": list(self.e1), "e2": list(self.e2)}


def drive_from_dict(spec: dict | None) -> DriveField:
    """Build a drive from its JSON description (``{"kind": ...}``)."""
    if spec is None:
        return ZeroDrive()
    kind = spec.get("kind", "zero")
    if kind in ("zero", "const", "none"):
        return ZeroDrive()
    if kind == "constant":
        return ConstantDrive(float(spec.get("e1", 0.0)), float(spec.get("e2", 0.0)))
    if kind == "sinusoidal":
        return SinusoidalDrive(float(spec.get("amp1", 0.0)), float(spec.get("amp2", 0.0)),
                               float(spec.get("freq", 0.0)), float(spec.get("phase", 0.0)))
    if kind == "tabulated":
        return TabulatedDrive(spec["times"], spec["e1"], spec["e2"])
    raise InvalidArgumentError(f"unknown drive kind {kind!r}")


def forcing(drive: DriveField, t):
    """F(t) = (E1 + i E2) exp(i t/2) / sqrt(2); scalar in, scalar out."""
    e1, e2 = drive.field(t)
    f = (e1 + 1j * e2) * np.exp(0.5j * np.asarray(t, dtype=float)) / SQRT2
    if np.ndim(f) == 0:
        return complex(f)
    return f


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    z0: complex
    z0_dot: complex
    phase: float = 0.0

    def __post_init__(self):
        vals = (self.t, complex(self.z0).real, complex(self.z0).imag,
                complex(self.z0_dot).real, complex(self.z0_dot).imag, self.phase)
        if not all(math.isfinite(v) for v in vals):
            raise NumericError("trajectory point has non-finite components")
        object.__setattr__(self, "z0", complex(self.z0))
        object.__setattr__(self, "z0_dot", complex(self.z0_dot))
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "phase", float(self.phase))

    @classmethod
    def rest(cls, t: float = 0.0) -> "TrajectoryPoint":
        """Undriven orbit with z0 = z0' = 0; the phase integral vanishes."""
        return cls(t, 0j, 0j, 0.0)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """RK4 solution sampled on a uniform time grid starting at t = 0.

    Node arrays are stored directly; ``points`` materialises them as
    :class:`TrajectoryPoint` objects.
    """

    times: np.ndarray
    z0: np.ndarray
    z0_dot: np.ndarray
    phase: np.ndarray
    step: float
    drive: DriveField = field(default_factory=ZeroDrive)
    accel: np.ndarray | None = None

    def __len__(self):
        return len(self.times)

    @property
    def final_time(self) -> float:
        return float(self.times[-1])

    @property
    def points(self) -> list[TrajectoryPoint]:
        return [self.node(i) for i in range(len(self.times))]

    def node(self, i: int) -> TrajectoryPoint:
        return TrajectoryPoint(self.times[i], self.z0[i], self.z0_dot[i], self.phase[i])


def _derivs(f, z, v):
    return v, f - 0.25 * z, 0.25 * (z.real ** 2 + z.imag ** 2) - (v.real ** 2 + v.imag ** 2)


def integrate_trajectory(drive: DriveField, z0_init: complex = 0j, z0dot_init: complex = 0j,
                         t_end: float = 1.0, step: float = DEFAULT_STEP) -> Trajectory:
    """Integrate the guiding-centre ODE with classical fixed-step RK4.

    The number of steps is ``ceil(t_end/step)`` so the last node sits at or
    just past ``t_end``. The action phase is co-integrated with the same
    stages, so it inherits fourth-order accuracy.
    """
    if not (t_end > 0 and math.isfinite(t_end)):
        raise InvalidArgumentError(f"t_end must be positive, got {t_end}")
    if not (0 < step <= t_end):
        raise InvalidArgumentError(f"step must satisfy 0 < step <= t_end, got {step}")
    n = int(math.ceil(t_end / step - 1e-9))
    h = float(step)
    times = h * np.arange(n + 1)
    f_node = np.asarray(forcing(drive, times), dtype=complex)
    f_half = np.asarray(forcing(drive, times[:-1] + 0.5 * h), dtype=complex)
    if not (np.all(np.isfinite(f_node)) and np.all(np.isfinite(f_half))):
        raise NumericError("drive produced non-finite values")
    z = np.empty(n + 1, dtype=complex)
    v = np.empty(n + 1, dtype=complex)
    ph = np.empty(n + 1, dtype=float)
    zc, vc, pc = complex(z0_init), complex(z0dot_init), 0.0
    fn, fh = f_node.tolist(), f_half.tolist()
    for i in range(n):
        k1z, k1v, k1p = _derivs(fn[i], zc, vc)
        k2z, k2v, k2p = _derivs(fh[i], zc + 0.5 * h * k1z, vc + 0.5 * h * k1v)
        k3z, k3v, k3p = _derivs(fh[i], zc + 0.5 * h * k2z, vc + 0.5 * h * k2v)
        k4z, k4v, k4p = _derivs(fn[i + 1], zc + h * k3z, vc + h * k3v)
        z[i], v[i], ph[i] = zc, vc, pc
        zc = zc + h / 6.0 * (k1z + 2 * k2z + 2 * k3z + k4z)
        vc = vc + h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
        pc = pc + h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p)
    z[n], v[n], ph[n] = zc, vc, pc
    if not (np.all(np.isfinite(z)) and np.all(np.isfinite(v)) and np.all(np.isfinite(ph))):
        raise NumericError("trajectory became non-finite")
    return Trajectory(times, z, v, ph, h, drive, f_node - 0.25 * z)


def _hermite(y0, y1, d0, d1, h, s):
    h00 = (1 + 2 * s) * (1 - s) ** 2
    h10 = s * (1 - s) ** 2
    h01 = s * s * (3 - 2 * s)
    h11 = s * s * (s - 1)
    return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1


def trajectory_at(traj: Trajectory, t: float) -> TrajectoryPoint:
    """Cubic Hermite interpolation between nodes; exact at the nodes."""
    t = float(t)
    if t < 0 or t > traj.final_time or not math.isfinite(t):
        raise RangeError(f"t={t} outside trajectory range [0, {traj.final_time}]")
    h = traj.step
    i = min(int(t // h), len(traj.times) - 2)
    s = (t - traj.times[i]) / h
    if s == 0.0:
        return traj.node(i)
    if s == 1.0:
        return traj.node(i + 1)
    j = i + 1
    z, v, ph = traj.z0, traj.z0_dot, traj.phase
    if traj.accel is None:
        acc = forcing(traj.drive, traj.times[[i, j]]) - 0.25 * z[[i, j]]
    else:
        acc = traj.accel[[i, j]]
    dph = 0.25 * np.abs(z[[i, j]]) ** 2 - np.abs(v[[i, j]]) ** 2
    return TrajectoryPoint(
        t,
        _hermite(z[i], z[j], v[i], v[j], h, s),
        _hermite(v[i], v[j], acc[0], acc[1], h, s),
        _hermite(ph[i], ph[j], dph[0], dph[1], h, s),
    )


def c_coefficients(p: TrajectoryPoint) -> tuple[complex, complex]:
    """Return (c1, c2) shifting the tomogram means.

    c1 = (i conj(z0') + conj(z0)/2)/sqrt(2), c2 = (i z0' + z0/2)/sqrt(2).
    c1 pairs the conjugated velocity with the conjugated position; this is
    the pairing that appears in the coherent-state exponent multiplying z.
    """
    z, v = p.z0, p.z0_dot
    c1 = (1j * v.conjugate() + 0.5 * z.conjugate()) / SQRT2
    c2 = (1j * v + 0.5 * z) / SQRT2
    return c1, c2

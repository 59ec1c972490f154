"""Closed-form tomograms of coherent states.

Every coherent state handled here is a displaced ground state,
psi ~ exp(-(x^2 + y^2)/4 + kx x + ky y), so its two-mode tomogram is a
product of normal distributions with variances mu_i^2 + nu_i^2/4 and means
Re[(nu + 2 i mu)(-i k)]. The explicit mean formulas below are the
label/trajectory forms of that statement.

The quadratic chirp denominators are d_i = 1/2 - i mu_i/nu_i throughout.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    EPS_NU,
    CoherentLabel,
    SymplecticFrame,
    TwoModeFrame,
    UnsupportedFrameError,
)
from .drive import TrajectoryPoint, c_coefficients

__all__ = [
    "GaussianTomogram",
    "HermiteParams",
    "const_field_tomogram",
    "var_field_tomogram",
    "evaluate_gaussian",
    "linear_coefficients",
    "quadrature_mean",
    "hermite_parameters",
    "tomogram_envelope",
    "coherent_tomogram_generating",
    "GaussianModeTomogram",
    "coherent_mode_tomograms",
]

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class GaussianTomogram:
    """Uncorrelated normal distribution of (X1, X2)."""

    mean: tuple[float, float]
    variances: tuple[float, float]
    frame: TwoModeFrame | None = None
    label: CoherentLabel | None = None
    t: float = 0.0

    def as_dict(self) -> dict:
        lab = None
        if self.label is not None:
            lab = {"alpha": [self.label.alpha.real, self.label.alpha.imag],
                   "beta": [self.label.beta.real, self.label.beta.imag]}
        return {
            "mean": list(self.mean),
            "variances": list(self.variances),
            "frame": None if self.frame is None else self.frame.as_dict(),
            "label": lab,
            "t": self.t,
        }


def const_field_tomogram(label: CoherentLabel, frame: TwoModeFrame) -> GaussianTomogram:
    a, b = label.alpha, label.beta
    f1, f2 = frame.f1, frame.f2
    m1 = ((f1.nu + 2j * f1.mu) * (a - 1j * b) / SQRT2).real
    m2 = ((f2.nu + 2j * f2.mu) * (b - 1j * a) / SQRT2).real
    return GaussianTomogram((m1, m2), (f1.quadrature_variance, f2.quadrature_variance),
                            frame, label, 0.0)


def var_field_tomogram(label: CoherentLabel, p: TrajectoryPoint,
                       frame: TwoModeFrame) -> GaussianTomogram:
    """Coherent-state tomogram in the driven field at time ``p.t``.

    <X1> = Re[((e^{-it} alpha - i beta)/sqrt2 - i(c1 e^{it/2} + c2 e^{-it/2})) (nu1 + 2i mu1)]
    <X2> = Re[((-i e^{-it} alpha + beta)/sqrt2 + (c1 e^{it/2} - c2 e^{-it/2})) (nu2 + 2i mu2)]
    """
    a, b = label.alpha, label.beta
    f1, f2 = frame.f1, frame.f2
    c1, c2 = c_coefficients(p)
    t = p.t
    rot = cmath.exp(-1j * t)
    h = cmath.exp(0.5j * t)
    hc = cmath.exp(-0.5j * t)
    m1 = (((rot * a - 1j * b) / SQRT2 - 1j * (c1 * h + c2 * hc)) * (f1.nu + 2j * f1.mu)).real
    m2 = (((-1j * rot * a + b) / SQRT2 + (c1 * h - c2 * hc)) * (f2.nu + 2j * f2.mu)).real
    return GaussianTomogram((m1, m2), (f1.quadrature_variance, f2.quadrature_variance),
                            frame, label, t)


def evaluate_gaussian(g: GaussianTomogram, X1, X2):
    """Density of ``g`` at (X1, X2); arrays broadcast."""
    v1, v2 = g.variances
    d1 = np.asarray(X1, dtype=float) - g.mean[0]
    d2 = np.asarray(X2, dtype=float) - g.mean[1]
    return np.exp(-0.5 * d1 * d1 / v1 - 0.5 * d2 * d2 / v2) / (2 * math.pi * math.sqrt(v1 * v2))


def linear_coefficients(label: CoherentLabel, p: TrajectoryPoint | None = None) -> tuple[complex, complex]:
    """Coefficients (kx, ky) of x and y in the exponent of the coherent state."""
    p = p or TrajectoryPoint.rest()
    c1, c2 = c_coefficients(p)
    t = p.t
    h, hc, rot = cmath.exp(0.5j * t), cmath.exp(-0.5j * t), cmath.exp(-1j * t)
    a, b = label.alpha, label.beta
    kx = c1 * h + c2 * hc + (1j * a * rot + b) / SQRT2
    ky = 1j * (c1 * h - c2 * hc) + (a * rot + 1j * b) / SQRT2
    return kx, ky


def quadrature_mean(frame: SymplecticFrame, k: complex) -> float:
    """Mean of mu q + nu p for a mode psi ~ exp(-q^2/4 + k q)."""
    return ((frame.nu + 2j * frame.mu) * (-1j * k)).real


@dataclass(frozen=True, eq=False)
class HermiteParams:
    """Parameters of the generating function exp(-L D L^T/2 + L D l), L = (alpha, beta).

    ``l``, ``c1_tilde`` and ``c2_tilde`` carry the shape of the X arguments
    (``l`` has a leading axis of length 2); ``a``, ``b`` and ``D`` depend only
    on the frame and time.
    """

    a: complex
    b: complex
    D: np.ndarray
    l: np.ndarray
    c1_tilde: np.ndarray
    c2_tilde: np.ndarray


def _chirp_denominators(frame: TwoModeFrame) -> tuple[complex, complex]:
    for f in (frame.f1, frame.f2):
        if abs(f.nu) < EPS_NU:
            raise UnsupportedFrameError(
                f"Hermite parametrisation needs |nu| >= {EPS_NU}, got nu={f.nu}")
    return 0.5 - 1j * frame.f1.mu / frame.f1.nu, 0.5 - 1j * frame.f2.mu / frame.f2.nu


def _shifted_arguments(frame: TwoModeFrame, p: TrajectoryPoint, X1, X2):
    c1, c2 = c_coefficients(p)
    h, hc = cmath.exp(0.5j * p.t), cmath.exp(-0.5j * p.t)
    g1 = c1 * h + c2 * hc - 1j * np.asarray(X1, dtype=float) / frame.f1.nu
    g2 = 1j * c1 * h - 1j * c2 * hc - 1j * np.asarray(X2, dtype=float) / frame.f2.nu
    return np.broadcast_arrays(g1, g2)


def hermite_parameters(frame: TwoModeFrame, p: TrajectoryPoint, X1, X2) -> HermiteParams:
    d1, d2 = _chirp_denominators(frame)
    g1, g2 = _shifted_arguments(frame, p, X1, X2)
    t = p.t
    a = 1 / d1 + 1 / d2
    b = 1 / d1 - 1 / d2
    ct1, ct2 = g1 / d1, g2 / d2
    e1, eh, ehc = cmath.exp(1j * t), cmath.exp(0.5j * t), cmath.exp(-1j * t)
    one = 1 - a / 2
    D = np.array([[cmath.exp(-2j * t) * b / 2, 1j * ehc * one],
                  [1j * ehc * one, -b / 2]])
    z0, z0b = p.z0, p.z0.conjugate()
    den = one * one - (b / 2) ** 2
    l1 = (-1j * e1 / SQRT2 * (one + b / 2) * ct1 + e1 / SQRT2 * (one - b / 2) * ct2
          + 1j * eh * (z0b * e1 * b / 2 + z0 * one)) / den
    l2 = ((one + b / 2) * ct1 / SQRT2 - 1j / SQRT2 * (one - b / 2) * ct2
          - eh * (z0b * one + z0 * ehc * b / 2)) / den
    return HermiteParams(a, b, D, np.stack([l1, l2]), ct1, ct2)


def _log_envelope(frame: TwoModeFrame, p: TrajectoryPoint, X1, X2):
    d1, d2 = _chirp_denominators(frame)
    g1, g2 = _shifted_arguments(frame, p, X1, X2)
    f1, f2 = frame.f1, frame.f2
    pref = -math.log(2 * math.pi * math.sqrt(f1.quadrature_variance * f2.quadrature_variance))
    return pref - abs(p.z0) ** 2 + 2 * np.real(0.5 * g1 * g1 / d1 + 0.5 * g2 * g2 / d2)


def tomogram_envelope(frame: TwoModeFrame, p: TrajectoryPoint, X1, X2):
    """Label-independent Gaussian factor shared by coherent and Fock tomograms.

    Equals the tomogram of the alpha = beta = 0 state.
    """
    return np.exp(_log_envelope(frame, p, X1, X2))


def coherent_tomogram_generating(label: CoherentLabel, p: TrajectoryPoint, frame: TwoModeFrame,
                                 X1, X2):
    """Coherent tomogram as envelope x e^{-|alpha|^2-|beta|^2} |exp(-L D L^T/2 + L D l)|^2."""
    hp = hermite_parameters(frame, p, X1, X2)
    lam = np.array([label.alpha, label.beta])
    quad = -0.5 * lam @ hp.D @ lam
    dl = np.tensordot(hp.D, hp.l, axes=(1, 0))
    lin = lam[0] * dl[0] + lam[1] * dl[1]
    logw = (_log_envelope(frame, p, X1, X2) - abs(label.alpha) ** 2 - abs(label.beta) ** 2
            + 2 * np.real(quad + lin))
    return np.exp(logw)


class GaussianModeTomogram:
    """One-mode tomogram w(X, mu, nu) of psi(q) ~ exp(-q^2/4 + k q).

    Scalar frames broadcast against X. With 1-D ``mu``/``nu`` arrays the
    result has one row per frame, matching :class:`NumericTomogram1D`.
    """

    def __init__(self, k: complex = 0j):
        self.k = complex(k)

    def mean(self, mu, nu):
        return np.real((np.asarray(nu) + 2j * np.asarray(mu)) * (-1j * self.k))

    def __call__(self, X, mu, nu):
        mu = np.asarray(mu, dtype=float)
        nu = np.asarray(nu, dtype=float)
        if mu.ndim or nu.ndim:
            mu, nu = np.broadcast_arrays(mu.ravel()[:, None], nu.ravel()[:, None])
            X = np.atleast_1d(np.asarray(X, dtype=float))[None, :]
        var = mu * mu + 0.25 * nu * nu
        d = np.asarray(X, dtype=float) - self.mean(mu, nu)
        return np.exp(-0.5 * d * d / var) / np.sqrt(2 * math.pi * var)


def coherent_mode_tomograms(label: CoherentLabel,
                            p: TrajectoryPoint | None = None) -> tuple[GaussianModeTomogram, GaussianModeTomogram]:
    """The x- and y-mode factors of a coherent-state tomogram."""
    kx, ky = linear_coefficients(label, p)
    return GaussianModeTomogram(kx), GaussianModeTomogram(ky)

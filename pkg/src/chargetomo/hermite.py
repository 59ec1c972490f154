"""Two-variable Hermite polynomials and Fock-state tomograms.

H_{n1 n2}^{D}(l) are the Taylor coefficients of the generating function

    exp(-L D L^T / 2 + L D l) = sum H_{n1 n2}(l) alpha^n1 beta^n2 / (n1! n2!),

filled by the recurrence obtained from differentiating it in alpha or beta.
Because the coherent state is the generating function of the Fock states,
the Fock tomogram is the coherent envelope times |H_{n1 n2}|^2 / (n1! n2!).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import hermite_parameters, tomogram_envelope
from .core import FockLabel, InvalidArgumentError, TwoModeFrame
from .drive import TrajectoryPoint

__all__ = ["HERMITE_CAP", "HermiteTable", "hermite_2var", "fock_tomogram", "fock_quantum_numbers"]

HERMITE_CAP = 12


@dataclass(frozen=True, eq=False)
class HermiteTable:
    """``values[n1, n2]`` holds H_{n1 n2}; trailing axes follow the shape of ``l``."""

    D: np.ndarray
    l: np.ndarray
    values: np.ndarray

    @property
    def cap(self) -> int:
        return self.values.shape[0] - 1

    def __getitem__(self, n):
        return self.values[n]


def hermite_2var(D, l, cap: int = 6) -> HermiteTable:
    """Fill H_{n1 n2}^{D}(l) for all n1, n2 <= cap.

    H_{n1+1,n2} = (Dl)_1 H_{n1,n2} - D11 n1 H_{n1-1,n2} - D12 n2 H_{n1,n2-1}
    H_{n1,n2+1} = (Dl)_2 H_{n1,n2} - D12 n1 H_{n1-1,n2} - D22 n2 H_{n1,n2-1}
    """
    D = np.asarray(D, dtype=complex)
    l = np.asarray(l, dtype=complex)
    if D.shape != (2, 2):
        raise InvalidArgumentError("D must be a 2x2 matrix")
    if abs(D[0, 1] - D[1, 0]) > 1e-12 * max(1.0, abs(D[0, 1])):
        raise InvalidArgumentError("D must be symmetric")
    if int(cap) != cap or cap < 0 or cap > HERMITE_CAP:
        raise InvalidArgumentError(f"cap must be an integer in [0, {HERMITE_CAP}], got {cap}")
    if l.shape[:1] != (2,):
        raise InvalidArgumentError("l must have a leading axis of length 2")
    dl = np.tensordot(D, l, axes=(1, 0))
    d11, d12, d22 = D[0, 0], D[0, 1], D[1, 1]
    H = np.zeros((cap + 1, cap + 1) + l.shape[1:], dtype=complex)
    H[0, 0] = 1.0
    for n2 in range(cap + 1):
        if n2 > 0:
            prev = H[0, n2 - 1]
            H[0, n2] = dl[1] * prev - (d22 * (n2 - 1) * H[0, n2 - 2] if n2 > 1 else 0)
        for n1 in range(cap):
            term = dl[0] * H[n1, n2]
            if n1 > 0:
                term = term - d11 * n1 * H[n1 - 1, n2]
            if n2 > 0:
                term = term - d12 * n2 * H[n1, n2 - 1]
            H[n1 + 1, n2] = term
    return HermiteTable(D, l, H)


def fock_tomogram(n: FockLabel, p: TrajectoryPoint, frame: TwoModeFrame, X1, X2):
    """Tomogram of the Fock state |n1, n2> of the invariants at time ``p.t``."""
    if n.total > HERMITE_CAP:
        raise InvalidArgumentError(f"n1 + n2 = {n.total} exceeds {HERMITE_CAP}")
    env = tomogram_envelope(frame, p, X1, X2)
    if n.total == 0:
        return env
    hp = hermite_parameters(frame, p, X1, X2)
    table = hermite_2var(hp.D, hp.l, cap=max(n.n1, n.n2))
    h = table.values[n.n1, n.n2]
    return env * (h.real ** 2 + h.imag ** 2) / (math.factorial(n.n1) * math.factorial(n.n2))


def fock_quantum_numbers(n: FockLabel) -> tuple[float, int]:
    """(energy, L_z) = (n1 + 1/2, n2 - n1)."""
    return n.n1 + 0.5, n.n2 - n.n1

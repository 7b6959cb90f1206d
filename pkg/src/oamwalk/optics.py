"""Jones calculus for idealized polarization-OAM elements and their lattice lifts.

The polarization pair (H, V) plays the role of the walker's coin and the
integer orbital-angular-momentum index plays the role of the lattice site.
Three element kinds are modeled:

``JPlate``
    imprints independent phase profiles ``m*phi + c`` (phi the azimuthal
    coordinate, m an integer) on two orthogonal linear polarizations rotated
    by an angle; the ``m*phi`` part converts OAM mode ``|l>`` to ``|l+m>``.
``HalfWavePlate``
    fast axis at a given angle; an involution mixing H and V.
``VariableWavePlate``
    tunable retardance ``z`` between H and V, ``diag(e^{iz/2}, e^{-iz/2})``.

Lifting an element to the truncated lattice produces a dense matrix on the
basis ``|polarization> ⊗ |l>``; OAM-shift rows that leave the lattice are
dropped, so lifted operators are unitary on states that keep clear of the
boundary (the walk layer's guard) but not on the edge columns themselves.
:func:`equal_up_to_phase` therefore normalizes its overlap by Frobenius
norms, which coincides with the unitary normalization 1/dim away from edge
effects and keeps "fidelity 1 iff equal up to a global phase" exact.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np

__all__ = [
    "jones_rotation",
    "jplate_pointwise",
    "halfwave_pointwise",
    "varwave_pointwise",
    "JPlate",
    "HalfWavePlate",
    "VariableWavePlate",
    "OpticalElement",
    "oam_shift_matrix",
    "lift",
    "compose",
    "PhaseMatch",
    "equal_up_to_phase",
    "unitarity_defect",
]


def jones_rotation(angle: float) -> np.ndarray:
    """Axis rotation exp(-i*angle*s2) = [[cos a, -sin a], [sin a, cos a]]."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def jplate_pointwise(delta_x: float, delta_y: float, angle: float) -> np.ndarray:
    """Jones matrix of one J-plate point: R(-angle) diag(e^{i dx}, e^{i dy}) R(angle)."""
    d = np.diag([np.exp(1j * delta_x), np.exp(1j * delta_y)])
    return jones_rotation(-angle) @ d @ jones_rotation(angle)


def halfwave_pointwise(angle: float) -> np.ndarray:
    """Half-waveplate with fast axis at ``angle``: [[cos 2a, sin 2a], [sin 2a, -cos 2a]]."""
    c, s = math.cos(2 * angle), math.sin(2 * angle)
    return np.array([[c, s], [s, -c]], dtype=np.complex128)


def varwave_pointwise(retardance: float) -> np.ndarray:
    """Variable waveplate diag(e^{i z/2}, e^{-i z/2}) = exp(i*z*s3/2)."""
    return np.diag([np.exp(0.5j * retardance), np.exp(-0.5j * retardance)])


def oam_shift_matrix(m: int, half_width: int) -> np.ndarray:
    """Matrix of |l> -> |l+m> on l in [-half_width, half_width]; exiting rows dropped."""
    return np.eye(2 * half_width + 1, k=-m)


def _as_multiplier(value) -> int:
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise ValueError(f"OAM multiplier must be an integer, got {value!r}")


@dataclass(frozen=True)
class JPlate:
    """Phase profiles m_x*phi + c_x and m_y*phi + c_y on axes rotated by ``angle``."""

    m_x: int
    c_x: float = 0.0
    m_y: int = 0
    c_y: float = 0.0
    angle: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "m_x", _as_multiplier(self.m_x))
        object.__setattr__(self, "m_y", _as_multiplier(self.m_y))

    def lift(self, half_width: int) -> np.ndarray:
        n = 2 * half_width + 1
        core = np.exp(1j * self.c_x) * np.kron(
            np.diag([1.0, 0.0]), oam_shift_matrix(self.m_x, half_width)
        ) + np.exp(1j * self.c_y) * np.kron(
            np.diag([0.0, 1.0]), oam_shift_matrix(self.m_y, half_width)
        )
        if self.angle == 0.0:
            return core
        rot = np.kron(jones_rotation(self.angle), np.eye(n))
        rot_back = np.kron(jones_rotation(-self.angle), np.eye(n))
        return rot_back @ core @ rot


@dataclass(frozen=True)
class HalfWavePlate:
    angle: float = 0.0

    def jones(self) -> np.ndarray:
        return halfwave_pointwise(self.angle)

    def lift(self, half_width: int) -> np.ndarray:
        return np.kron(self.jones(), np.eye(2 * half_width + 1))


@dataclass(frozen=True)
class VariableWavePlate:
    retardance: float

    def jones(self) -> np.ndarray:
        return varwave_pointwise(self.retardance)

    def lift(self, half_width: int) -> np.ndarray:
        return np.kron(self.jones(), np.eye(2 * half_width + 1))


OpticalElement = Union[JPlate, HalfWavePlate, VariableWavePlate]


def lift(element, half_width: int) -> np.ndarray:
    """Dense operator of one element on the coin ⊗ lattice basis."""
    return element.lift(half_width)


def compose(elements: Sequence, half_width: int) -> np.ndarray:
    """Operator of an element train given in application order (first applied first)."""
    dim = 2 * (2 * half_width + 1)
    op = np.eye(dim, dtype=np.complex128)
    for element in elements:
        op = element.lift(half_width) @ op
    return op


class PhaseMatch(NamedTuple):
    match: bool
    fidelity: float
    phase: float


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-10) -> PhaseMatch:
    """Compare operators up to a global phase.

    Returns the normalized overlap |tr(a†b)| / (‖a‖_F ‖b‖_F), the phase
    arg tr(a†b) (so ``a ≈ e^{-i*phase} b`` at the optimum), and whether the
    phase-minimized Frobenius residual ‖a - e^{iϕ}b‖_F / ‖a‖_F is within
    ``tol``.  The overlap equals 1 exactly when a and b agree up to a unit
    scalar, and reduces to |tr(a†b)|/dim for unitary inputs.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"operators must be square and same shape, got {a.shape} vs {b.shape}")
    overlap = np.vdot(a, b)  # tr(a† b)
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    fidelity = float(abs(overlap) / (na * nb))
    phase = float(np.angle(overlap))
    # The optimal alignment phase is -arg tr(a†b); forming the difference
    # explicitly avoids the cancellation that the norm-expansion formula
    # na^2 + nb^2 - 2|overlap| suffers near equality.
    residual = np.linalg.norm(a - np.exp(-1j * phase) * b)
    return PhaseMatch(bool(residual / na <= tol), fidelity, phase)


def unitarity_defect(op: np.ndarray, margin: int = 0) -> float:
    """Largest deviation of a column norm from 1, ignoring ``margin`` edge sites.

    Lifted shift-carrying elements lose norm only in the edge columns their
    OAM shift empties; interior columns of a well-formed element are exactly
    isometric.
    """
    n = op.shape[0] // 2
    norms = np.linalg.norm(op, axis=0)
    keep = np.ones(2 * n, dtype=bool)
    if margin > 0:
        for block in (0, n):
            keep[block:block + margin] = False
            keep[block + n - margin:block + n] = False
    return float(np.max(np.abs(norms[keep] - 1.0)))

"""Number, phase, coherent, squeezed and thermal states on a window.

Every two-branch state places the same coefficient ``c_n`` on label ``n``
(positive helicity) and on its mirror ``-n-1`` (negative helicity). As
written these states have squared norm close to 2; ``Normalization.UNIT``
rescales them.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .space import KetVector, LinearOperator, TruncationWindow, from_dense

# below this |r| the squeezed state is evaluated as its coherent limit
R_EPS = 1e-12


class Normalization(enum.Enum):
    RAW = "raw"
    UNIT = "unit"


@dataclass(frozen=True)
class SqueezeParams:
    alpha: complex = 0.0
    r: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.r) or not math.isfinite(self.theta):
            raise ValueError("squeeze magnitude and angle must be finite")
        if not np.isfinite(complex(self.alpha)):
            raise ValueError("displacement must be finite")

    @property
    def gamma(self) -> complex:
        a = complex(self.alpha)
        return a * math.cosh(self.r) + a.conjugate() * np.exp(1j * self.theta) * math.sinh(self.r)

    @property
    def tanh_ratio(self) -> complex:
        """The base (1/2) e^{i theta} tanh r of the half-integer powers."""
        return 0.5 * np.exp(1j * self.theta) * math.tanh(self.r)

    @property
    def hermite_argument(self) -> complex:
        """gamma * (e^{i theta} sinh 2r)^{-1/2}; undefined at r = 0."""
        return self.gamma / np.sqrt(np.exp(1j * self.theta) * math.sinh(2 * self.r))

    @property
    def exponent(self) -> complex:
        """-(|alpha|^2 + conj(alpha)^2 e^{i theta} tanh r)."""
        a = complex(self.alpha)
        return -(abs(a) ** 2 + a.conjugate() ** 2 * np.exp(1j * self.theta) * math.tanh(self.r))


@dataclass(frozen=True)
class ThermalParams:
    nbar: float = 1.0

    def __post_init__(self):
        if not (self.nbar >= 0 and math.isfinite(self.nbar)):
            raise ValueError(f"mean photon number must be finite and >= 0, got {self.nbar}")

    def weight(self, n):
        """Bose-Einstein weight nbar^n / (1 + nbar)^(n+1)."""
        n = np.asarray(n)
        return np.power(self.nbar, n) / np.power(1.0 + self.nbar, n + 1)


def hermite(n: int, z: complex) -> complex:
    """Physicists' Hermite polynomial H_n(z) by upward recurrence."""
    return complex(hermite_sequence(n, z)[n])


def hermite_sequence(n_max: int, z: complex) -> np.ndarray:
    """[H_0(z), ..., H_{n_max}(z)]."""
    if n_max < 0:
        raise ValueError(f"Hermite order must be >= 0, got {n_max}")
    h = np.empty(n_max + 1, dtype=complex)
    h[0] = 1.0
    if n_max >= 1:
        h[1] = 2 * z
    for k in range(1, n_max):
        h[k + 1] = 2 * z * h[k] - 2 * k * h[k - 1]
    return h


def _branch_length(w: TruncationWindow) -> int:
    # coefficient indices needed to fill both branches of w
    return max(w.n_max + 1, -w.n_min)


def two_branch_ket(w: TruncationWindow, coeffs: np.ndarray) -> KetVector:
    """Ket with ``coeffs[n]`` on labels ``n`` and ``-n-1`` (where in window)."""
    labels = w.labels
    index = np.where(labels >= 0, labels, -labels - 1)
    return KetVector(w, np.asarray(coeffs, dtype=complex)[index])


def _finish(psi: KetVector, norm: Normalization) -> KetVector:
    if Normalization(norm) is Normalization.UNIT:
        return KetVector(psi.window, psi.amplitudes / np.linalg.norm(psi.amplitudes))
    return psi


def coherent_coefficients(alpha: complex, count: int) -> np.ndarray:
    """e^{-|alpha|^2/2} alpha^n / sqrt(n!) for n < count."""
    c = np.empty(count, dtype=complex)
    c[0] = np.exp(-abs(alpha) ** 2 / 2)
    for n in range(1, count):
        c[n] = c[n - 1] * alpha / math.sqrt(n)
    return c


def _normalized_hermite(count: int, z: complex) -> np.ndarray:
    """H_n(z) / sqrt(2^n n!), which stays finite where H_n overflows."""
    h = np.empty(count, dtype=complex)
    h[0] = 1.0
    if count > 1:
        h[1] = math.sqrt(2) * z
    for k in range(1, count - 1):
        h[k + 1] = z * math.sqrt(2 / (k + 1)) * h[k] - math.sqrt(k / (k + 1)) * h[k - 1]
    return h


def squeezed_coefficients(p: SqueezeParams, count: int) -> np.ndarray:
    """Number-state coefficients of the displaced squeezed state.

    ``(cosh r)^{-1/2} exp(-[|a|^2 + a*^2 e^{it} tanh r]/2) u^{n/2} H_n(z)/sqrt(n!)``
    with ``u = e^{it} tanh(r)/2`` and ``z = gamma (e^{it} sinh 2r)^{-1/2}``,
    the power taken on the principal branch. ``u^{n/2} H_n / sqrt(n!)`` is
    evaluated as ``(2u)^{n/2} H_n / sqrt(2^n n!)``.
    """
    if abs(p.r) < R_EPS:
        return coherent_coefficients(complex(p.alpha), count)
    pref = np.exp(p.exponent / 2) / math.sqrt(math.cosh(p.r))
    n = np.arange(count)
    powers = np.exp(0.5 * n * np.log(2 * p.tanh_ratio))
    return pref * powers * _normalized_hermite(count, p.hermite_argument)


def coherent_state(
    alpha: complex, w: TruncationWindow, norm: Normalization = Normalization.RAW
) -> KetVector:
    return _finish(two_branch_ket(w, coherent_coefficients(complex(alpha), _branch_length(w))), norm)


def squeezed_state(
    p: SqueezeParams, w: TruncationWindow, norm: Normalization = Normalization.RAW
) -> KetVector:
    """Two-branch squeezed state; the negative branch mirrors the positive one."""
    return _finish(two_branch_ket(w, squeezed_coefficients(p, _branch_length(w))), norm)


def thermal_amplitude_state(
    p: ThermalParams, w: TruncationWindow, norm: Normalization = Normalization.RAW
) -> KetVector:
    """Pure-state reading: amplitude P_n on labels n and -n-1."""
    weights = p.weight(np.arange(_branch_length(w)))
    return _finish(two_branch_ket(w, weights), norm)


def thermal_mixture(
    p: ThermalParams, w: TruncationWindow, norm: Normalization = Normalization.RAW
) -> LinearOperator:
    """Number-dephased thermal state sum_n P_n^2 |b_n><b_n|, b_n = |n> + |-n-1>.

    This is the thermal ket with every coherence between different photon
    numbers removed; its phase density is flat in each helicity branch.
    """
    count = _branch_length(w)
    rho = np.zeros((w.dimension, w.dimension), dtype=complex)
    weights = p.weight(np.arange(count)) ** 2
    for n in range(count):
        idx = [lab - w.n_min for lab in (n, -n - 1) if lab in w]
        rho[np.ix_(idx, idx)] += weights[n]
    if Normalization(norm) is Normalization.UNIT:
        rho /= np.trace(rho).real
    return from_dense(w, rho)


def phase_state(phi: float, w: TruncationWindow) -> KetVector:
    """Unnormalised phase eigenstate, amplitude e^{i(n+1/2)phi}/sqrt(2 pi)."""
    if not -math.pi - 1e-12 <= phi <= math.pi + 1e-12:
        raise ValueError(f"phase {phi} outside [-pi, pi]")
    return KetVector(w, phase_amplitudes(phi, w))


def phase_amplitudes(phi: float, w: TruncationWindow) -> np.ndarray:
    return np.exp(1j * (w.labels + 0.5) * phi) / math.sqrt(2 * math.pi)

"""Phase probability densities, computed two independent ways.

The *oracle* path sandwiches the phase-state projector |phi><phi| between
helicity projectors and a concrete state on a window. The *series* path
evaluates the closed double sums over number-state coefficients directly,
with no matrices. Both split the density into the right-handed part ``pR``,
the left-handed part ``pL`` and the cross-helicity interference ``pI``.

The interference term oscillates as ``e^{i(n+m+1)phi}`` when derived from
the half-integer phase-state amplitudes; the literal closed
forms use ``e^{i(n+m)phi}``. :class:`ExponentConvention` selects between the two.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .operators import projector
from .space import (
    KetVector,
    LinearOperator,
    TruncationWindow,
    apply,
    inner,
    outer,
)
from .states import (
    Normalization,
    SqueezeParams,
    ThermalParams,
    coherent_state,
    phase_state,
    squeezed_state,
    thermal_mixture,
)

DEFAULT_TERMS = 40
MIN_INTEGRATION_POINTS = 33

State = Union[KetVector, LinearOperator]


class ExponentConvention(enum.Enum):
    LITERAL = "literal"  # interference index n + m
    DERIVED = "derived"  # interference index n + m + 1


class DistributionComponents(NamedTuple):
    pR: float
    pL: float
    pI: float
    total: float


COLUMNS = ("phi",) + DistributionComponents._fields


@dataclass(frozen=True)
class PhaseGrid:
    resolution: int

    def __post_init__(self):
        if int(self.resolution) < 2:
            raise ValueError(f"grid resolution must be >= 2, got {self.resolution}")

    @property
    def points(self) -> np.ndarray:
        return np.linspace(-math.pi, math.pi, int(self.resolution))

    @property
    def spacing(self) -> float:
        return 2 * math.pi / (self.resolution - 1)


@dataclass(frozen=True)
class PhaseDistribution:
    """Sampled table phi -> (pR, pL, pI, total)."""

    phi: np.ndarray
    pR: np.ndarray
    pL: np.ndarray
    pI: np.ndarray
    total: np.ndarray

    @classmethod
    def from_rows(cls, phis, rows) -> PhaseDistribution:
        arr = np.array(rows, dtype=float).reshape(len(phis), 4)
        return cls(np.asarray(phis, dtype=float), *arr.T.copy())

    def as_array(self) -> np.ndarray:
        return np.column_stack([self.phi, self.pR, self.pL, self.pI, self.total])

    def __len__(self):
        return len(self.phi)


# ---------------------------------------------------------------- oracle


def phase_density_matrix(phi: float, w: TruncationWindow) -> LinearOperator:
    """Unnormalised rank-one projector |phi><phi|."""
    v = phase_state(phi, w)
    return outer(v, v)


def pdf_oracle(psi: State, phi: float) -> DistributionComponents:
    """Phase density <psi|rho_phi|psi> split by helicity projectors.

    ``psi`` may be a ket or a density operator; for the latter the
    expectation is ``tr(psi rho_phi)`` and its projected pieces.
    """
    w = psi.window
    rho = phase_density_matrix(phi, w)
    plus, minus = projector(1, w), projector(-1, w)
    if isinstance(psi, KetVector):
        right, left = apply(plus, psi), apply(minus, psi)
        pr = inner(right, apply(rho, right))
        pl = inner(left, apply(rho, left))
        pi = inner(right, apply(rho, left)) + inner(left, apply(rho, right))
        total = inner(psi, apply(rho, psi))
    else:
        sigma = psi.toarray()
        r = rho.toarray()
        pp, pm = plus.toarray(), minus.toarray()
        pr = np.trace(sigma @ pp @ r @ pp)
        pl = np.trace(sigma @ pm @ r @ pm)
        pi = np.trace(sigma @ (pp @ r @ pm + pm @ r @ pp))
        total = np.trace(sigma @ r)
    return DistributionComponents(pr.real, pl.real, pi.real, total.real)


# ---------------------------------------------------------------- series


def _double_sum(left, right, phase) -> complex:
    return complex(np.sum(np.conj(left)[:, None] * right[None, :] * phase))


def _split_terms(n_terms) -> tuple[int, int]:
    """``n_terms`` as (positive-branch, negative-branch) series lengths."""
    pos, neg = (n_terms, n_terms) if np.isscalar(n_terms) else n_terms
    if pos < 1 or neg < 1:
        raise ValueError(f"series needs at least one term per branch, got {n_terms}")
    return int(pos), int(neg)


def _branch_series(coef, phi, conv, pref, n_terms) -> DistributionComponents:
    """Double series for a state with ``sqrt(pref) * coef[n]`` on labels ``n``
    (first ``pos`` terms) and ``-n-1`` (first ``neg`` terms)."""
    pos, neg = _split_terms(n_terms)
    shift = 1 if ExponentConvention(conv) is ExponentConvention.DERIVED else 0
    right, left = coef[:pos], coef[:neg]
    n, m = np.arange(pos), np.arange(neg)
    pr = pref * _double_sum(right, right, np.exp(1j * (n[:, None] - n[None, :]) * phi))
    pl = pref * _double_sum(left, left, np.exp(-1j * (m[:, None] - m[None, :]) * phi))
    cross = n[:, None] + m[None, :] + shift
    pi = pref * (
        _double_sum(right, left, np.exp(1j * cross * phi))
        + _double_sum(np.conj(right), np.conj(left), np.exp(-1j * cross * phi))
    )
    pr, pl, pi = pr.real, pl.real, pi.real
    return DistributionComponents(pr, pl, pi, pr + pl + pi)


def coherent_series_terms(alpha: complex, n_terms):
    """Coefficients ``alpha^n/sqrt(n!)`` and prefactor ``e^{-|alpha|^2}/2pi``."""
    count = max(_split_terms(n_terms))
    alpha = complex(alpha)
    coef = np.empty(count, dtype=complex)
    coef[0] = 1.0
    for k in range(1, count):
        coef[k] = coef[k - 1] * alpha / math.sqrt(k)
    return coef, math.exp(-abs(alpha) ** 2) / (2 * math.pi)


def coherent_pdf_series(
    alpha: complex,
    phi: float,
    n_terms: int = DEFAULT_TERMS,
    conv: ExponentConvention = ExponentConvention.DERIVED,
) -> DistributionComponents:
    """Partial sums of the coherent-state double series.

    ``n_terms`` is the length per index, or a (positive, negative) branch pair.
    """
    coef, pref = coherent_series_terms(alpha, n_terms)
    return _branch_series(coef, phi, conv, pref, n_terms)


def scaled_hermite(p: SqueezeParams, count: int) -> np.ndarray:
    """u^{n/2} H_n(z) / sqrt(n!) for the squeezed state, via its own recurrence.

    With ``u = e^{it} tanh(r)/2`` and ``z = gamma (e^{it} sinh 2r)^{-1/2}``
    one has ``2 z u^{1/2} = gamma / cosh r``. The scaled polynomials
    ``G_n = u^{n/2} H_n(z)`` then obey ``G_{k+1} = (gamma/cosh r) G_k - 2k u G_{k-1}``,
    regular at r = 0; dividing by ``sqrt(n!)`` inside the recurrence keeps
    every term finite.
    """
    g = p.gamma / math.cosh(p.r)
    u = p.tanh_ratio
    out = np.empty(count, dtype=complex)
    out[0] = 1.0
    if count > 1:
        out[1] = g
    for k in range(1, count - 1):
        out[k + 1] = (g * out[k] - 2 * math.sqrt(k) * u * out[k - 1]) / math.sqrt(k + 1)
    return out


def squeezed_prefactor(p: SqueezeParams) -> float:
    """1/(2 pi cosh r) * exp(-Re[|a|^2 + a*^2 e^{it} tanh r])."""
    return math.exp(p.exponent.real) / (2 * math.pi * math.cosh(p.r))


def squeezed_series_terms(p: SqueezeParams, n_terms):
    return scaled_hermite(p, max(_split_terms(n_terms))), squeezed_prefactor(p)


def squeezed_pdf_series(
    p: SqueezeParams,
    phi: float,
    n_terms: int = DEFAULT_TERMS,
    conv: ExponentConvention = ExponentConvention.DERIVED,
) -> DistributionComponents:
    coef, pref = squeezed_series_terms(p, n_terms)
    return _branch_series(coef, phi, conv, pref, n_terms)


def thermal_pdf_series(
    p: ThermalParams,
    phi: float,
    conv: ExponentConvention = ExponentConvention.DERIVED,
    n_terms: int | None = None,
) -> DistributionComponents:
    """Thermal densities with weights P_n^2, summed in closed form.

    ``pR = pL = K / (1 - q^2)`` and ``pI = 2K Re[e^{is phi} / (1 - q^2 e^{2i phi})]``
    with ``K = 1/(2 pi (1+nbar)^2)``, ``q = nbar/(1+nbar)``, ``s`` the
    convention shift. ``n_terms`` truncates the geometric series instead.
    """
    shift = 1 if ExponentConvention(conv) is ExponentConvention.DERIVED else 0
    k = 1.0 / (2 * math.pi * (1 + p.nbar) ** 2)
    q2 = (p.nbar / (1 + p.nbar)) ** 2
    if n_terms is None:
        pr = k / (1 - q2)
        pi = 2 * k * (np.exp(1j * shift * phi) / (1 - q2 * np.exp(2j * phi))).real
    else:
        pos, neg = _split_terms(n_terms)
        # only the paired labels n and -n-1 interfere
        n = np.arange(min(pos, neg))
        pr = k * float(np.sum(q2 ** np.arange(pos)))
        pl = k * float(np.sum(q2 ** np.arange(neg)))
        pi = 2 * k * float(np.sum(q2 ** n * np.cos((2 * n + shift) * phi)))
        return DistributionComponents(pr, pl, pi, pr + pl + pi)
    pr, pi = float(pr), float(pi)
    return DistributionComponents(pr, pr, pi, 2 * pr + pi)


# ---------------------------------------------------------------- sampling


@dataclass(frozen=True)
class StateSpec:
    """Descriptor of a coherent, squeezed or thermal state."""

    kind: str
    alpha: complex = 1.0
    r: float = 0.0
    theta: float = 0.0
    nbar: float = 1.0

    KINDS = ("coherent", "squeezed", "thermal")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(
                f"unknown state kind {self.kind!r}; choose from {', '.join(self.KINDS)}"
            )

    @property
    def squeeze(self) -> SqueezeParams:
        return SqueezeParams(complex(self.alpha), self.r, self.theta)

    @property
    def thermal(self) -> ThermalParams:
        return ThermalParams(self.nbar)

    def state(self, w: TruncationWindow, norm=Normalization.RAW) -> State:
        """Concrete state for the oracle; thermal is the dephased mixture."""
        if self.kind == "coherent":
            return coherent_state(complex(self.alpha), w, norm)
        if self.kind == "squeezed":
            return squeezed_state(self.squeeze, w, norm)
        return thermal_mixture(self.thermal, w, norm)

    def series(self, phi, conv, n_terms: int | None = DEFAULT_TERMS) -> DistributionComponents:
        if self.kind == "coherent":
            return coherent_pdf_series(self.alpha, phi, n_terms or DEFAULT_TERMS, conv)
        if self.kind == "squeezed":
            return squeezed_pdf_series(self.squeeze, phi, n_terms or DEFAULT_TERMS, conv)
        return thermal_pdf_series(self.thermal, phi, conv, n_terms)

    def series_norm2(self, n_terms: int | None = DEFAULT_TERMS) -> float:
        """Squared norm of the two-branch state the series describes."""
        if self.kind == "thermal":
            q2 = (self.nbar / (1 + self.nbar)) ** 2
            k = 1.0 / (1 + self.nbar) ** 2
            if n_terms is None:
                return 2 * k / (1 - q2)
            pos, neg = _split_terms(n_terms)
            return k * float(np.sum(q2 ** np.arange(pos)) + np.sum(q2 ** np.arange(neg)))
        n = n_terms or DEFAULT_TERMS
        pos, neg = _split_terms(n)
        if self.kind == "coherent":
            coef, pref = coherent_series_terms(self.alpha, n)
        else:
            coef, pref = squeezed_series_terms(self.squeeze, n)
        weight = np.abs(coef) ** 2
        return 2 * math.pi * pref * float(np.sum(weight[:pos]) + np.sum(weight[:neg]))


def matched_terms(w: TruncationWindow) -> tuple[int, int]:
    """Per-branch series lengths covering exactly the labels of ``w``."""
    return (w.n_max + 1, -w.n_min)


def grid_sample(
    spec: StateSpec,
    grid: PhaseGrid,
    method: str = "series",
    conv: ExponentConvention = ExponentConvention.DERIVED,
    window: TruncationWindow | None = None,
    norm: Normalization = Normalization.RAW,
    n_terms: int | None = DEFAULT_TERMS,
    n_jobs: int = 1,
) -> PhaseDistribution:
    """Evaluate every grid point; ``n_jobs > 1`` spreads points over threads.

    The oracle ignores ``conv`` and ``n_terms``; the series ignores ``window``.
    """
    phis = grid.points
    norm = Normalization(norm)
    if method == "oracle":
        if window is None:
            raise ValueError("the oracle method needs a window")
        psi = spec.state(window, norm)
        point = lambda x: pdf_oracle(psi, x)  # noqa: E731
    elif method == "series":
        scale = 1.0
        if norm is Normalization.UNIT:
            scale = 1.0 / spec.series_norm2(n_terms)
        point = lambda x: tuple(c * scale for c in spec.series(x, conv, n_terms))  # noqa: E731
    else:
        raise ValueError(f"unknown method {method!r}; use 'series' or 'oracle'")
    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            rows = list(pool.map(point, phis))
    else:
        rows = [point(x) for x in phis]
    return PhaseDistribution.from_rows(phis, rows)


def integrate(dist: PhaseDistribution) -> DistributionComponents:
    """Composite trapezoid over [-pi, pi] for each component."""
    if len(dist) < MIN_INTEGRATION_POINTS:
        raise ValueError(
            f"need at least {MIN_INTEGRATION_POINTS} grid points to integrate, got {len(dist)}"
        )
    return DistributionComponents(
        *(float(np.trapezoid(getattr(dist, c), dist.phi)) for c in DistributionComponents._fields)
    )

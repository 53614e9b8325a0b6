"""Ladder, helicity and phase operators on a truncated two-sided Fock space.

Everything is built from coordinate triplets so each operator costs O(D)
entries. The lowering operator ``E`` needs a rule for the lowest label of
the window, selected by :class:`BoundaryMode`.
"""

from __future__ import annotations

import enum

import numpy as np
import scipy.linalg

from .space import (
    LinearOperator,
    TruncationWindow,
    from_dense,
    from_triplets,
)


class BoundaryMode(enum.Enum):
    OPEN = "open"  # E|n_min> = 0
    CYCLIC = "cyclic"  # E|n_min> = |n_max>, E is a permutation


def helicity(w: TruncationWindow) -> LinearOperator:
    labels = w.labels
    return from_triplets(w, labels, labels, np.where(labels >= 0, 1.0, -1.0))


def projector(sign: int, w: TruncationWindow) -> LinearOperator:
    """Helicity projector (I + sign*P)/2."""
    if sign not in (1, -1):
        raise ValueError(f"projector sign must be +1 or -1, got {sign!r}")
    labels = w.labels
    keep = labels >= 0 if sign == 1 else labels <= -1
    return from_triplets(w, labels[keep], labels[keep], np.ones(keep.sum()))


def bridge(w: TruncationWindow) -> LinearOperator:
    """Rank-one |-1><0| connecting the two vacua."""
    return from_triplets(w, [-1], [0], [1.0])


def _lowering_triplets(w: TruncationWindow):
    # |n> -> sqrt(|n|)|n-1> away from n = 0; the vacuum crossing has weight 1
    cols = np.arange(w.n_min + 1, w.n_max + 1)
    rows = cols - 1
    vals = np.sqrt(np.abs(cols).astype(float))
    vals[cols == 0] = 1.0
    return rows, cols, vals


def annihilation_modified(w: TruncationWindow) -> LinearOperator:
    """Modified annihilation operator a_m.

    Positive block: ``|n> -> sqrt(n)|n-1>``; vacuum ``|0> -> |-1>``;
    negative block: ``|n> -> sqrt(|n|)|n-1>``. The lowest label is annihilated.
    """
    return from_triplets(w, *_lowering_triplets(w))


def creation_modified(w: TruncationWindow) -> LinearOperator:
    rows, cols, vals = _lowering_triplets(w)
    return from_triplets(w, cols, rows, vals)


def number_modified(w: TruncationWindow) -> LinearOperator:
    labels = w.labels
    return from_triplets(w, labels, labels, labels.astype(float))


def susskind_glogower(
    w: TruncationWindow, mode: BoundaryMode = BoundaryMode.CYCLIC
) -> LinearOperator:
    """Exponential phase operator E: ``|n> -> |n-1>`` on every in-window step.

    Defined by its ladder action rather than ``a_m / sqrt(n_m)``, which is
    singular on the vacuum column.
    """
    mode = BoundaryMode(mode)
    cols = np.arange(w.n_min + 1, w.n_max + 1)
    rows = cols - 1
    if mode is BoundaryMode.CYCLIC:
        cols = np.append(cols, w.n_min)
        rows = np.append(rows, w.n_max)
    return from_triplets(w, rows, cols, np.ones(len(cols)))


class NonUnitaryError(ValueError):
    pass


def _principal_angles(eigvals: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    ang = np.angle(eigvals)
    # branch cut (-pi, pi]: an eigenvalue at -1 maps to +pi
    ang[ang <= -np.pi + tol] = np.pi
    return ang


def unitary_log(u: np.ndarray, tol: float = 1e-10):
    """Spectral decomposition ``u = Z diag(exp(i*theta)) Z^H`` of a unitary.

    Returns ``(theta, Z)`` with ``theta`` in (-pi, pi]. The complex Schur form
    of a normal matrix is diagonal, so ``Z`` is unitary to rounding.
    """
    u = np.asarray(u, dtype=complex)
    d = u.shape[0]
    if np.max(np.abs(u @ u.conj().T - np.eye(d))) > tol:
        raise NonUnitaryError("matrix is not unitary; no Hermitian logarithm")
    t, z = scipy.linalg.schur(u, output="complex")
    return _principal_angles(np.diag(t).copy()), z


def phase_operator(
    w: TruncationWindow, mode: BoundaryMode = BoundaryMode.CYCLIC
) -> LinearOperator:
    """Hermitian phase operator -i log(E) from the cyclic E."""
    if BoundaryMode(mode) is not BoundaryMode.CYCLIC:
        raise NonUnitaryError(
            "the open-boundary E annihilates |n_min> and has no Hermitian logarithm"
        )
    e = susskind_glogower(w, BoundaryMode.CYCLIC).toarray()
    theta, z = unitary_log(e)
    phi = (z * theta) @ z.conj().T
    # remove the rounding-level anti-Hermitian part
    phi = 0.5 * (phi + phi.conj().T)
    return from_dense(w, phi)


def phase_exponential(phi_op: LinearOperator) -> LinearOperator:
    """exp(i*phi) through the eigendecomposition of the Hermitian ``phi``."""
    vals, vecs = np.linalg.eigh(phi_op.toarray())
    return from_dense(phi_op.window, (vecs * np.exp(1j * vals)) @ vecs.conj().T)


OPERATORS = {
    "helicity": helicity,
    "proj+": lambda w: projector(1, w),
    "proj-": lambda w: projector(-1, w),
    "bridge": bridge,
    "a": annihilation_modified,
    "adag": creation_modified,
    "number": number_modified,
    "E-open": lambda w: susskind_glogower(w, BoundaryMode.OPEN),
    "E-cyclic": lambda w: susskind_glogower(w, BoundaryMode.CYCLIC),
    "phase": phase_operator,
}
# the minus sign as typeset
OPERATORS["proj\u2212"] = OPERATORS["proj-"]


def build_operator(name: str, w: TruncationWindow) -> LinearOperator:
    try:
        factory = OPERATORS[name]
    except KeyError:
        raise ValueError(
            f"unknown operator {name!r}; choose from {', '.join(OPERATORS)}"
        ) from None
    return factory(w)

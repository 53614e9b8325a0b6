"""Truncated two-sided Fock space.

Basis states are labelled by a signed integer ``n``: labels ``n >= 0`` carry
positive helicity, labels ``n <= -1`` negative helicity. A window keeps the
contiguous block ``n_min..n_max`` and always contains both vacua ``0`` and
``-1``. Matrix ordinals run from ``0`` at ``n_min`` upwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np
import scipy.sparse as sp

# operators on windows of this dimension or larger are stored sparse
DENSE_LIMIT = 256

Matrix = Union[np.ndarray, sp.csr_array]


class WindowError(ValueError):
    """Invalid window bounds, or a label/ordinal outside a window."""


class WindowMismatch(ValueError):
    """Operands live on different windows."""


@dataclass(frozen=True)
class TruncationWindow:
    n_min: int
    n_max: int

    def __post_init__(self):
        if self.n_min > -1 or self.n_max < 0:
            raise WindowError(
                f"window ({self.n_min}, {self.n_max}) must straddle both vacua: "
                "need n_min <= -1 and n_max >= 0"
            )

    @property
    def dimension(self) -> int:
        return self.n_max - self.n_min + 1

    @property
    def labels(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)

    def __contains__(self, n) -> bool:
        return self.n_min <= n <= self.n_max

    @property
    def sparse(self) -> bool:
        return self.dimension >= DENSE_LIMIT


def make_window(n_min: int, n_max: int) -> TruncationWindow:
    return TruncationWindow(int(n_min), int(n_max))


def helicity_of(n: int) -> int:
    return 1 if n >= 0 else -1


def ordinal_of(n: int, w: TruncationWindow) -> int:
    if n not in w:
        raise WindowError(f"label {n} outside window ({w.n_min}, {w.n_max})")
    return int(n) - w.n_min


def label_of(i: int, w: TruncationWindow) -> int:
    if not 0 <= i < w.dimension:
        raise WindowError(f"ordinal {i} outside 0..{w.dimension - 1}")
    return int(i) + w.n_min


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class KetVector:
    window: TruncationWindow
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = _frozen(self.amplitudes)
        if amps.shape != (self.window.dimension,):
            raise ValueError(
                f"expected {self.window.dimension} amplitudes, got shape {amps.shape}"
            )
        object.__setattr__(self, "amplitudes", amps)

    def amplitude(self, n: int) -> complex:
        return complex(self.amplitudes[ordinal_of(n, self.window)])


@dataclass(frozen=True)
class LinearOperator:
    """Square complex matrix over a window's basis.

    ``matrix`` is a dense ndarray for small windows and a CSR array once the
    window reaches ``DENSE_LIMIT``.
    """

    window: TruncationWindow
    matrix: Matrix = field(repr=False)

    def __post_init__(self):
        d = self.window.dimension
        if self.matrix.shape != (d, d):
            raise ValueError(f"expected {d}x{d} matrix, got {self.matrix.shape}")
        if sp.issparse(self.matrix):
            m = sp.csr_array(self.matrix, dtype=complex)
        else:
            m = _frozen(self.matrix)
        object.__setattr__(self, "matrix", m)

    def toarray(self) -> np.ndarray:
        if sp.issparse(self.matrix):
            return self.matrix.toarray()
        return np.array(self.matrix)

    def entry(self, row: int, col: int) -> complex:
        """Matrix element <row|M|col> addressed by signed labels."""
        i, j = ordinal_of(row, self.window), ordinal_of(col, self.window)
        return complex(self.matrix[i, j])

    def nonzero_entries(self):
        """Yield ``(row_label, col_label, value)`` in row-major order."""
        coo = sp.coo_array(self.matrix)
        order = np.lexsort((coo.col, coo.row))
        for k in order:
            v = complex(coo.data[k])
            if v != 0:
                yield (
                    label_of(int(coo.row[k]), self.window),
                    label_of(int(coo.col[k]), self.window),
                    v,
                )

    def __add__(self, other: LinearOperator) -> LinearOperator:
        _same_window(self.window, other.window)
        return LinearOperator(self.window, self.matrix + other.matrix)

    def __sub__(self, other: LinearOperator) -> LinearOperator:
        _same_window(self.window, other.window)
        return LinearOperator(self.window, self.matrix - other.matrix)

    def __mul__(self, scalar) -> LinearOperator:
        return LinearOperator(self.window, self.matrix * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, LinearOperator):
            return compose(self, other)
        if isinstance(other, KetVector):
            return apply(self, other)
        return NotImplemented


def from_triplets(w: TruncationWindow, rows, cols, values) -> LinearOperator:
    """Build an operator from (row_label, col_label, value) triplets.

    Duplicated coordinates are summed.
    """
    rows = np.asarray(rows, dtype=int) - w.n_min
    cols = np.asarray(cols, dtype=int) - w.n_min
    values = np.asarray(values, dtype=complex)
    d = w.dimension
    m = sp.coo_array((values, (rows, cols)), shape=(d, d)).tocsr()
    if not w.sparse:
        m = m.toarray()
    return LinearOperator(w, m)


def from_dense(w: TruncationWindow, a: np.ndarray) -> LinearOperator:
    if w.sparse:
        return LinearOperator(w, sp.csr_array(a))
    return LinearOperator(w, a)


def identity(w: TruncationWindow) -> LinearOperator:
    labels = w.labels
    return from_triplets(w, labels, labels, np.ones(w.dimension))


def basis_ket(n: int, w: TruncationWindow) -> KetVector:
    amps = np.zeros(w.dimension, dtype=complex)
    amps[ordinal_of(n, w)] = 1.0
    return KetVector(w, amps)


def ket_from_labels(w: TruncationWindow, amplitudes: dict) -> KetVector:
    """Ket with the given ``{label: amplitude}``; labels outside ``w`` are dropped."""
    amps = np.zeros(w.dimension, dtype=complex)
    for n, a in amplitudes.items():
        if n in w:
            amps[n - w.n_min] = a
    return KetVector(w, amps)


def _same_window(a: TruncationWindow, b: TruncationWindow):
    if a != b:
        raise WindowMismatch(
            f"window mismatch: ({a.n_min}, {a.n_max}) vs ({b.n_min}, {b.n_max})"
        )


def inner(a: KetVector, b: KetVector) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    _same_window(a.window, b.window)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def norm(a: KetVector) -> float:
    return float(np.linalg.norm(a.amplitudes))


def apply(m: LinearOperator, v: KetVector) -> KetVector:
    _same_window(m.window, v.window)
    return KetVector(v.window, m.matrix @ v.amplitudes)


def compose(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    _same_window(a.window, b.window)
    return LinearOperator(a.window, a.matrix @ b.matrix)


def adjoint(a: LinearOperator) -> LinearOperator:
    return LinearOperator(a.window, a.matrix.conj().T)


def commutator(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    """[a, b] = ab - ba."""
    _same_window(a.window, b.window)
    return LinearOperator(a.window, a.matrix @ b.matrix - b.matrix @ a.matrix)


def outer(a: KetVector, b: KetVector) -> LinearOperator:
    """|a><b| as a dense operator."""
    _same_window(a.window, b.window)
    return LinearOperator(a.window, np.outer(a.amplitudes, np.conj(b.amplitudes)))


def max_abs(m: LinearOperator | np.ndarray) -> float:
    a = m.toarray() if isinstance(m, LinearOperator) else np.asarray(m)
    return float(np.max(np.abs(a))) if a.size else 0.0

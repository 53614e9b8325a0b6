import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polphase.space import (
    DENSE_LIMIT,
    KetVector,
    LinearOperator,
    WindowError,
    WindowMismatch,
    adjoint,
    apply,
    basis_ket,
    commutator,
    compose,
    from_dense,
    inner,
    label_of,
    make_window,
    norm,
    ordinal_of,
)

windows = st.tuples(st.integers(-40, -1), st.integers(0, 40)).map(lambda t: make_window(*t))


def random_op(w, rng):
    d = w.dimension
    return from_dense(w, rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))


def random_ket(w, rng):
    d = w.dimension
    return KetVector(w, rng.normal(size=d) + 1j * rng.normal(size=d))


def test_minimal_window():
    w = make_window(-1, 0)
    assert w.dimension == 2
    assert list(w.labels) == [-1, 0]


def test_default_window_dimension():
    assert make_window(-32, 31).dimension == 64


@pytest.mark.parametrize("bounds", [(0, 10), (-3, -1), (1, 5)])
def test_window_must_hold_both_vacua(bounds):
    with pytest.raises(WindowError, match="vacua"):
        make_window(*bounds)


def test_ordinal_offset():
    w = make_window(-4, 3)
    assert ordinal_of(-4, w) == 0
    assert ordinal_of(0, w) == 4
    assert label_of(7, w) == 3


@given(windows)
def test_ordinal_label_roundtrip(w):
    for n in w.labels:
        assert label_of(ordinal_of(n, w), w) == n
    assert sorted(ordinal_of(n, w) for n in w.labels) == list(range(w.dimension))


def test_out_of_window_labels_rejected():
    w = make_window(-2, 2)
    with pytest.raises(WindowError):
        ordinal_of(3, w)
    with pytest.raises(WindowError):
        label_of(5, w)
    with pytest.raises(WindowError):
        basis_ket(-3, w)


def test_basis_kets_and_orthogonal_vacua():
    w = make_window(-3, 3)
    zero, minus = basis_ket(0, w), basis_ket(-1, w)
    assert zero.amplitude(0) == 1 and minus.amplitude(-1) == 1
    assert inner(zero, minus) == 0 and inner(minus, zero) == 0
    for n in w.labels:
        assert norm(basis_ket(n, w)) == 1.0


def test_inner_is_conjugate_linear_in_first_argument():
    w = make_window(-2, 2)
    a, b = basis_ket(1, w), basis_ket(1, w)
    scaled = KetVector(w, 1j * a.amplitudes)
    assert inner(scaled, b) == -1j
    assert inner(b, scaled) == 1j


def test_window_mismatch():
    a = basis_ket(0, make_window(-1, 1))
    b = basis_ket(0, make_window(-2, 1))
    with pytest.raises(WindowMismatch):
        inner(a, b)


def test_commutator_with_itself_vanishes():
    rng = np.random.default_rng(1)
    a = random_op(make_window(-3, 4), rng)
    assert np.all(commutator(a, a).toarray() == 0)


@settings(max_examples=25, deadline=None)
@given(windows, st.integers(0, 2**32 - 1))
def test_commutator_antisymmetric_exactly(w, seed):
    rng = np.random.default_rng(seed)
    a, b = random_op(w, rng), random_op(w, rng)
    assert np.array_equal(commutator(a, b).toarray(), -commutator(b, a).toarray())


@settings(max_examples=25, deadline=None)
@given(windows, st.integers(0, 2**32 - 1))
def test_adjoint_identity(w, seed):
    rng = np.random.default_rng(seed)
    m = random_op(w, rng)
    a, b = random_ket(w, rng), random_ket(w, rng)
    lhs = inner(a, apply(m, b))
    rhs = inner(apply(adjoint(m), a), b)
    assert abs(lhs - rhs) <= 1e-12 * max(abs(lhs), 1.0)
    assert np.array_equal(adjoint(adjoint(m)).toarray(), m.toarray())


def test_large_windows_are_sparse():
    small = from_dense(make_window(-2, 2), np.eye(5))
    big_w = make_window(-128, DENSE_LIMIT - 129)
    assert big_w.dimension == DENSE_LIMIT
    big = from_dense(big_w, np.eye(DENSE_LIMIT))
    assert isinstance(small.matrix, np.ndarray)
    assert not isinstance(big.matrix, np.ndarray)
    assert np.array_equal(compose(big, big).toarray(), np.eye(DENSE_LIMIT))


def test_values_are_immutable():
    k = basis_ket(0, make_window(-1, 1))
    with pytest.raises(ValueError):
        k.amplitudes[0] = 2
    op = LinearOperator(make_window(-1, 0), np.eye(2))
    with pytest.raises(ValueError):
        op.matrix[0, 0] = 3


def test_operator_shape_checked():
    with pytest.raises(ValueError):
        LinearOperator(make_window(-1, 1), np.eye(2))
    with pytest.raises(ValueError):
        KetVector(make_window(-1, 1), np.ones(2))

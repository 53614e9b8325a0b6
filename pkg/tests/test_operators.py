import math

import numpy as np
import pytest
import scipy.linalg

from polphase.operators import (
    BoundaryMode,
    NonUnitaryError,
    annihilation_modified,
    bridge,
    build_operator,
    creation_modified,
    helicity,
    number_modified,
    phase_exponential,
    phase_operator,
    projector,
    susskind_glogower,
    unitary_log,
)
from polphase.space import (
    adjoint,
    apply,
    basis_ket,
    commutator,
    compose,
    identity,
    make_window,
)

W = make_window(-6, 5)


def same(a, b):
    return np.array_equal(a.amplitudes, b.amplitudes)


def zero(k):
    return not np.any(k.amplitudes)


def test_helicity_signs():
    p = helicity(W)
    assert same(apply(p, basis_ket(3, W)), basis_ket(3, W))
    minus = apply(p, basis_ket(-2, W))
    assert np.array_equal(minus.amplitudes, -basis_ket(-2, W).amplitudes)
    assert np.array_equal(compose(p, p).toarray(), identity(W).toarray())


def test_projector_algebra():
    pp, pm, p = projector(1, W), projector(-1, W), helicity(W)
    assert np.array_equal((pp + pm).toarray(), np.eye(W.dimension))
    assert not np.any(compose(pp, pm).toarray())
    assert np.array_equal(compose(pp, pp).toarray(), pp.toarray())
    assert np.array_equal((pp - pm).toarray(), p.toarray())
    assert zero(apply(pp, basis_ket(-2, W)))
    # (I + sign P) / 2
    eye = np.eye(W.dimension)
    assert np.array_equal(pm.toarray(), (eye - p.toarray()) / 2)


def test_projector_rejects_bad_sign():
    with pytest.raises(ValueError):
        projector(0, W)


def test_bridge():
    b = bridge(W)
    assert same(apply(b, basis_ket(0, W)), basis_ket(-1, W))
    assert zero(apply(b, basis_ket(5, W)))
    assert same(apply(adjoint(b), basis_ket(-1, W)), basis_ket(0, W))
    assert np.linalg.matrix_rank(b.toarray()) == 1


def test_annihilation_action():
    a = annihilation_modified(W)
    assert same(apply(a, basis_ket(1, W)), basis_ket(0, W))
    assert same(apply(a, basis_ket(0, W)), basis_ket(-1, W))
    np.testing.assert_array_equal(apply(a, basis_ket(-2, W)).amplitudes, math.sqrt(2) * basis_ket(-3, W).amplitudes)
    assert zero(apply(a, basis_ket(W.n_min, W)))


def test_creation_action():
    ad = creation_modified(W)
    assert same(apply(ad, basis_ket(-1, W)), basis_ket(0, W))
    assert same(apply(ad, basis_ket(0, W)), basis_ket(1, W))
    np.testing.assert_array_equal(apply(ad, basis_ket(-3, W)).amplitudes, math.sqrt(2) * basis_ket(-2, W).amplitudes)
    assert np.array_equal(adjoint(annihilation_modified(W)).toarray(), ad.toarray())


def test_annihilation_block_formula():
    # Pi+ a+ Pi+  +  |-1><0|  +  Pi- a- Pi-, with the single-helicity ladders
    # written out over the whole window
    d, labels = W.dimension, W.labels
    a_plus = np.zeros((d, d))
    a_minus = np.zeros((d, d))
    for j, n in enumerate(labels):
        if n >= 1:
            a_plus[j - 1, j] = math.sqrt(n)
        if n <= -1 and j > 0:
            a_minus[j - 1, j] = math.sqrt(abs(n))
    pp, pm = projector(1, W).toarray(), projector(-1, W).toarray()
    block = pp @ a_plus @ pp + bridge(W).toarray() + pm @ a_minus @ pm
    assert np.array_equal(block, annihilation_modified(W).toarray())


def test_number_operator():
    n = number_modified(W)
    np.testing.assert_array_equal(apply(n, basis_ket(4, W)).amplitudes, 4 * basis_ket(4, W).amplitudes)
    assert zero(apply(n, basis_ket(0, W)))
    np.testing.assert_array_equal(apply(n, basis_ket(-3, W)).amplitudes, -3 * basis_ket(-3, W).amplitudes)


@pytest.mark.parametrize("mode", list(BoundaryMode))
def test_ladder_totality(mode):
    e = susskind_glogower(W, mode)
    for n in range(W.n_min + 1, W.n_max + 1):
        assert same(apply(e, basis_ket(n, W)), basis_ket(n - 1, W))
    assert same(apply(e, basis_ket(0, W)), basis_ket(-1, W))
    assert same(apply(adjoint(e), basis_ket(-1, W)), basis_ket(0, W))


def test_boundary_column():
    assert zero(apply(susskind_glogower(W, "open"), basis_ket(W.n_min, W)))
    assert same(apply(susskind_glogower(W, "cyclic"), basis_ket(W.n_min, W)), basis_ket(W.n_max, W))


@pytest.mark.parametrize("bounds", [(-1, 0), (-32, 31), (-128, 127)])
def test_cyclic_unitary(bounds):
    w = make_window(*bounds)
    e = susskind_glogower(w, BoundaryMode.CYCLIC)
    eye = np.eye(w.dimension)
    assert np.max(np.abs(compose(e, adjoint(e)).toarray() - eye)) < 1e-12
    assert np.max(np.abs(compose(adjoint(e), e).toarray() - eye)) < 1e-12


def test_open_not_unitary():
    e = susskind_glogower(W, BoundaryMode.OPEN)
    assert compose(adjoint(e), e).entry(W.n_min, W.n_min) == 0


@pytest.mark.parametrize("mode", list(BoundaryMode))
def test_exponentiated_commutator(mode):
    e = susskind_glogower(W, mode)
    defect = (commutator(e, number_modified(W)) - e).toarray()
    assert np.max(np.abs(defect[:, 1:])) < 1e-12
    if mode is BoundaryMode.CYCLIC:
        # the wrap column carries -D
        assert defect[-1, 0] == -W.dimension


def test_commutator_spectrum_and_vacuum_degeneracy():
    comm = commutator(annihilation_modified(W), creation_modified(W)).toarray()
    assert np.max(np.abs(comm - np.diag(np.diag(comm)))) == 0
    diag = dict(zip(W.labels, np.diag(comm).real))
    for n in range(1, W.n_max):
        assert diag[n] == pytest.approx(1, abs=1e-12)
    for n in range(W.n_min + 1, -1):
        assert diag[n] == pytest.approx(-1, abs=1e-12)
    assert diag[0] == 0 and diag[-1] == 0


@pytest.mark.parametrize("bounds", [(-1, 0), (-2, 2), (-4, 3), (-32, 31)])
def test_phase_operator(bounds):
    w = make_window(*bounds)
    phi = phase_operator(w).toarray()
    e = susskind_glogower(w, "cyclic").toarray()
    assert np.max(np.abs(phi - phi.conj().T)) < 1e-12
    # independent route: scipy's Pade expm
    assert np.max(np.abs(scipy.linalg.expm(1j * phi) - e)) < 1e-10
    assert np.max(np.abs(phase_exponential(phase_operator(w)).toarray() - e)) < 1e-10


def test_phase_spectrum_matches_direct_eigendecomposition():
    w = make_window(-4, 3)
    d = w.dimension
    e = susskind_glogower(w, "cyclic").toarray()
    direct = np.sort(np.angle(np.linalg.eigvals(e)))
    direct[np.isclose(direct, -np.pi)] = np.pi
    expected = np.sort([2 * np.pi * k / d - (2 * np.pi if k > d / 2 else 0) for k in range(d)])
    got = np.sort(np.linalg.eigvalsh(phase_operator(w).toarray()))
    np.testing.assert_allclose(got, expected, atol=1e-10)
    np.testing.assert_allclose(np.sort(direct), expected, atol=1e-10)
    assert got.min() > -np.pi and got.max() <= np.pi + 1e-12


def test_phase_operator_rejects_open_mode():
    with pytest.raises(NonUnitaryError):
        phase_operator(W, BoundaryMode.OPEN)
    with pytest.raises(NonUnitaryError):
        unitary_log(susskind_glogower(W, "open").toarray())


def test_sparse_operators_above_limit():
    w = make_window(-128, 127)
    e = susskind_glogower(w, "cyclic")
    assert not isinstance(e.matrix, np.ndarray)
    assert e.matrix.nnz == w.dimension


def test_build_operator_names():
    for name in ["helicity", "proj+", "proj-", "proj−", "bridge", "a", "adag", "number", "E-open", "E-cyclic", "phase"]:
        assert build_operator(name, make_window(-2, 1)).window.dimension == 4
    with pytest.raises(ValueError, match="unknown operator"):
        build_operator("sigma", W)

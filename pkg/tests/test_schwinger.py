"""Clock/shift pair, the symmetrized operator basis, and the kernel family."""

import numpy as np
import pytest

from qps.lattice import half_width, labels, center_mod, dagger
from qps.theta import kernel_table
from qps.schwinger import (
    check_order,
    u_matrix,
    v_matrix,
    s_op,
    s_op_ordered,
    t_op,
    t_family,
    t_overlap,
    decompose_schwinger,
    reconstruct_schwinger,
    decompose_t,
    reconstruct_t,
    depolarize,
)

DIMS = (3, 5, 7)
ORDERS = (-1, -0.5, 0, 0.5, 1, 0.5j)


def test_check_order_bounds():
    assert check_order(1) == 1 + 0j
    assert check_order(0.5j) == 0.5j
    with pytest.raises(ValueError):
        check_order(1.5)
    with pytest.raises(ValueError):
        check_order(1j + 1)


@pytest.mark.parametrize("N", DIMS)
def test_clock_shift_algebra(N):
    U, V = u_matrix(N), v_matrix(N)
    w = np.exp(-2j * np.pi / N)
    assert np.abs(U @ V - w * V @ U).max() < 1e-12
    assert np.abs(np.linalg.matrix_power(U, N) - np.eye(N)).max() < 1e-12
    assert np.abs(np.linalg.matrix_power(V, N) - np.eye(N)).max() < 1e-12


@pytest.mark.parametrize("N", DIMS)
def test_s_op_unitary_and_adjoint_identity(N):
    for eta in labels(N):
        for xi in labels(N):
            S = s_op(eta, xi, N)
            assert np.abs(N * S @ dagger(S) - np.eye(N)).max() < 1e-12
            assert np.abs(dagger(S) - s_op(-eta, -xi, N)).max() < 1e-12


@pytest.mark.parametrize("N", DIMS)
def test_s_op_trace_orthogonality(N):
    for e1 in labels(N):
        for x1 in labels(N):
            A = s_op(e1, x1, N)
            for e2 in labels(N):
                for x2 in labels(N):
                    tr = np.trace(dagger(A) @ s_op(e2, x2, N))
                    expect = 1.0 if (e1, x1) == (e2, x2) else 0.0
                    assert abs(tr - expect) < 1e-12


def test_s_op_quasi_periodicity():
    for N in DIMS:
        for eta, xi in [(0, 1), (1, 2), (2, 2), (-1, 1)]:
            S = s_op(eta, xi, N)
            assert np.abs(s_op(eta + N, xi, N) - (-1) ** xi * S).max() < 1e-12
            assert np.abs(s_op(eta, xi + N, N) - (-1) ** eta * S).max() < 1e-12


def test_s_op_ordered_weights():
    N = 5
    ell = half_width(N)
    K = kernel_table(N)
    for s in (0.5, -1, 0.5j):
        X = s_op_ordered(1, -2, s, N)
        assert np.abs(X - K[1 + ell, -2 + ell] ** (-s) * s_op(1, -2, N)).max() < 1e-12


@pytest.mark.parametrize("N", DIMS)
@pytest.mark.parametrize("s", ORDERS)
def test_t_family_resolution_trace_orthogonality(N, s):
    fam = t_family(s, N)
    # (i) resolution of the identity
    assert np.abs(fam.sum(axis=(0, 1)) / N - np.eye(N)).max() < 1e-10
    # (ii) unit trace
    traces = np.einsum("mnii->mn", fam)
    assert np.abs(traces - 1.0).max() < 1e-10
    # (iii) trace orthogonality against the dual order
    dual = t_family(-s, N)
    overlap = np.einsum("mnij,pqji->mnpq", dual, fam)
    expect = N * np.einsum("mp,nq->mnpq", np.eye(N), np.eye(N))
    assert np.abs(overlap - expect).max() < 1e-10


def test_t_family_hermiticity_under_order_conjugation():
    N = 5
    for s in (0.5j, 0.3 + 0.2j, -1):
        fam = t_family(s, N)
        famc = t_family(np.conj(complex(s)), N)
        for i in range(N):
            for j in range(N):
                assert np.abs(dagger(fam[i, j]) - famc[i, j]).max() < 1e-10


def test_t_op_mod_invariance():
    N = 5
    for mu, nu in [(1, 2), (-2, 0)]:
        T = t_op(mu, nu, 0.5, N)
        assert np.abs(t_op(mu + N, nu, 0.5, N) - T).max() < 1e-12
        assert np.abs(t_op(mu, nu - 2 * N, 0.5, N) - T).max() < 1e-12


def test_t_overlap_matches_direct_trace():
    N = 5
    for t, s in [(0, 0), (0, -1), (0.5, 0.5), (1, -1)]:
        for dmu, dnu in [(0, 0), (1, 0), (2, -1)]:
            direct = np.trace(t_op(0, 0, t, N) @ t_op(dmu, dnu, s, N))
            assert abs(t_overlap(t, s, dmu, dnu, N) - direct) < 1e-10


@pytest.mark.parametrize("N", DIMS)
def test_schwinger_decompose_reconstruct_roundtrip(N):
    rng = np.random.default_rng(11)
    O = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    C = decompose_schwinger(O)
    assert np.abs(reconstruct_schwinger(C) - O).max() < 1e-10


@pytest.mark.parametrize("s", (0, -0.5, 1, 0.5j))
def test_t_decompose_reconstruct_roundtrip(s):
    N = 5
    rng = np.random.default_rng(12)
    O = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    grid = decompose_t(O, s)
    assert np.abs(reconstruct_t(grid, s) - O).max() < 1e-10


@pytest.mark.parametrize("N", (3, 5, 7, 9))
def test_depolarizer_collapses_to_trace(N):
    rng = np.random.default_rng(13)
    for _ in range(5):
        O = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
        out = depolarize(O)
        assert np.abs(out - np.trace(O) * np.eye(N)).max() < 1e-10
        out_w = depolarize(O, omega=0.5)
        assert np.abs(out_w - np.trace(O) * np.eye(N)).max() < 1e-10

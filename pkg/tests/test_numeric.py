import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import C, T
from qclutch import S, SSstar, Sstar, one, tensor, u
from qclutch.homotopy import fourier_coeff, nu_t, tail_bound
from qclutch.milnor import exp_Q_closed, loring_lift_Q
from qclutch.numeric import (
    QuadratureError,
    TruncationConfig,
    TruncationError,
    herm_exp,
    interior_compress,
    matrix_from_json,
    matrix_to_json,
    quadrature_fourier,
    represent,
    save_npy,
    spec_norm_rank_trace,
    write_scan_csv,
)


def cfg(N=4, M=2, margin=0, **kw):
    return TruncationConfig(N=N, M_rep=M, margin=margin, **kw)


def test_config_validation():
    with pytest.raises(TruncationError):
        TruncationConfig(N=1)
    with pytest.raises(TruncationError):
        TruncationConfig(N=8, M_rep=8, margin=4)
    with pytest.raises(TruncationError):
        TruncationConfig(N=8, M_rep=8, margin=-1)
    TruncationConfig(N=3, M_rep=48, margin=8, toeplitz_margin=1)
    with pytest.raises(TruncationError):
        TruncationConfig(N=3, M_rep=48, margin=8, toeplitz_margin=2)


def test_represent_shift():
    assert np.array_equal(represent(S(), cfg(N=2)), np.array([[0, 0], [1, 0]]))
    c2 = cfg(N=2)
    assert np.array_equal(represent(Sstar(), c2) @ represent(S(), c2), np.diag([1, 0]))


def test_represent_minimal_projection():
    A = represent(one() - SSstar(), cfg(N=4))
    assert np.array_equal(A, np.diag([1, 0, 0, 0]))
    assert spec_norm_rank_trace(A)[1] == 1


def test_represent_circle_and_tensor():
    c = cfg(N=3, M=2)
    U = represent(u(), c)
    assert U.shape == (5, 5)
    assert np.array_equal(U, np.eye(5, k=-1))
    A = represent(tensor(S(), u()), c)
    assert np.array_equal(A, np.kron(represent(S(), c), U))


def test_represent_dimension_cap():
    with pytest.raises(TruncationError):
        represent(tensor(S(), u()), TruncationConfig(N=64, M_rep=32, margin=8))


def test_herm_exp_examples():
    assert np.allclose(herm_exp(np.zeros((3, 3))), np.eye(3))
    assert np.allclose(herm_exp(np.diag([1.0, 0.0])), np.eye(2), atol=1e-14)
    with pytest.raises(ValueError):
        herm_exp(np.array([[0, 1], [0, 0]]))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**31))
def test_herm_exp_unitary(n, seed):
    r = np.random.default_rng(seed)
    A = r.normal(size=(n, n)) + 1j * r.normal(size=(n, n))
    E = herm_exp((A + A.conj().T) / 2)
    assert np.linalg.norm(E.conj().T @ E - np.eye(n), 2) <= 1e-10


def test_herm_exp_matches_taylor_oracle():
    from scipy.linalg import expm

    r = np.random.default_rng(5)
    A = r.normal(size=(6, 6))
    A = (A + A.T) / 2
    assert np.allclose(herm_exp(A), expm(2j * np.pi * A), atol=1e-10)


def test_spec_norm_rank_trace_examples():
    k = one() - SSstar()
    assert spec_norm_rank_trace(represent(tensor(k, k), cfg(N=4)))[1] == 1
    for N in (3, 5, 8):
        assert spec_norm_rank_trace(represent(SSstar(), cfg(N=N)))[2] == N - 1
    assert spec_norm_rank_trace(represent(S(), cfg(N=6)))[0] == pytest.approx(1)


def test_interior_compress():
    A = np.arange(16.0).reshape(4, 4)
    assert interior_compress(A, cfg(N=4), (T,)) is A
    c = cfg(N=8, M=8, margin=2)
    D = represent(Sstar(), c) @ represent(S(), c)
    assert np.array_equal(interior_compress(D, c, (T,)), np.eye(6))


def test_quadrature_examples():
    assert quadrature_fourier(lambda s: 1.0, 0) == pytest.approx(1)
    assert abs(quadrature_fourier(lambda s: 1.0, 3)) < 1e-12
    val = quadrature_fourier(lambda s: complex(nu_t(s, 0.0)), 0, breakpoints=(0.5,))
    assert val == pytest.approx(0.5, abs=1e-10)


def test_quadrature_failure_is_reported():
    with pytest.raises(QuadratureError):
        quadrature_fourier(lambda s: 1 / np.sqrt(abs(s - 0.3)) * np.sin(1 / (s - 0.3)), 0, tol=1e-14, limit=5)


def test_exp_closed_form_on_interior():
    M = 48
    c = TruncationConfig(N=3, M_rep=M, margin=8, toeplitz_margin=1)
    D = herm_exp(represent(loring_lift_Q(M), c)) - represent(exp_Q_closed(M), c)
    gap = np.linalg.norm(interior_compress(D, c, (T, C), blocks=2), 2)
    assert gap <= 2 * tail_bound(M)


def test_exports(tmp_path):
    A = np.array([[1, 2j], [0, -1]])
    save_npy(A, tmp_path / "a.npy")
    B = np.load(tmp_path / "a.npy")
    assert B.dtype == np.dtype("<c16") and np.array_equal(A, B)
    back = matrix_from_json(json.loads(json.dumps(matrix_to_json(A))))
    assert np.array_equal(back, A)
    write_scan_csv([(16, 0.1), (32, 0.05)], tmp_path / "s.csv")
    assert (tmp_path / "s.csv").read_text().splitlines()[0] == "M,defect"

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from erasureframes import spectra
from erasureframes.errors import InvalidInput, NotLeftInvertible


def _random_symmetric(rng, n):
    A = rng.standard_normal((n, n))
    return (A + A.T) / 2


@pytest.mark.parametrize("n", [1, 2, 5, 17, 40])
def test_symm_eig_reconstructs(rng, n):
    M = _random_symmetric(rng, n)
    dec = spectra.symm_eig(M)
    assert np.all(np.diff(dec.eigenvalues) >= 0)
    assert np.abs(dec.reconstruct() - M).max() <= 1e-10 * max(1.0, np.abs(M).max())


@pytest.mark.parametrize("n", [1, 3, 8, 20])
def test_jacobi_agrees_with_lapack(rng, n):
    M = _random_symmetric(rng, n)
    assert np.allclose(spectra.jacobi_eigenvalues(M), np.linalg.eigvalsh(M), atol=1e-11)


def test_rejects_asymmetric_and_nonfinite():
    with pytest.raises(InvalidInput):
        spectra.symm_eig([[0.0, 1.0], [0.5, 0.0]])
    with pytest.raises(InvalidInput):
        spectra.top_eigenvalue([[np.nan]])
    with pytest.raises(InvalidInput):
        spectra.top_eigenvalue(np.zeros((2, 3)))


def test_top_eigenvalue_of_two_uniform_pair():
    # (36,15): k/n = 5/12, c = 1/12
    P = np.array([[5 / 12, 1 / 12], [1 / 12, 5 / 12]])
    assert spectra.top_eigenvalue(P) == pytest.approx(0.5, abs=1e-15)


def test_block_diagonal_top_eigenvalue(rng):
    M = _random_symmetric(rng, 4)
    N = _random_symmetric(rng, 3)
    D = np.zeros((7, 7))
    D[:4, :4] = M
    D[4:, 4:] = N
    assert spectra.top_eigenvalue(D) == pytest.approx(
        max(spectra.top_eigenvalue(M), spectra.top_eigenvalue(N)), abs=1e-12
    )


def test_multiplicities_groups_clusters():
    got = spectra.multiplicities([-5, -5 + 1e-9, 7, 7, 7])
    assert [m for _, m in got] == [2, 3]


def test_left_inverse_of_isometry():
    Q, _ = np.linalg.qr(np.random.default_rng(1).standard_normal((6, 3)))
    L, t = spectra.minimal_left_inverse(Q)
    assert t == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(L, Q.T, atol=1e-12)


def test_left_inverse_of_column():
    L, t = spectra.minimal_left_inverse(np.array([[1.0], [1.0]]))
    assert t == pytest.approx(math.sqrt(2))
    assert np.allclose(L, [[0.5, 0.5]])


def test_left_inverse_rank_deficient():
    with pytest.raises(NotLeftInvertible):
        spectra.minimal_left_inverse(np.array([[1.0, 1.0], [1.0, 1.0], [0.0, 0.0]]))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_left_inverse_properties(n, k, seed):
    k = min(k, n)
    A = np.random.default_rng(seed).standard_normal((n, k))
    L, t = spectra.minimal_left_inverse(A)
    assert np.allclose(L @ A, np.eye(k), atol=1e-8 * max(1, 1 / t))
    assert np.linalg.norm(L, 2) == pytest.approx(1 / t, rel=1e-8)

import numpy as np
import pytest

from erasureframes import constructions as C
from erasureframes import seidel
from erasureframes.errors import InvalidParameters
from erasureframes.frames import signature_parameters


@pytest.mark.parametrize("n,codim1,mu,k", [(3, False, 1, 1), (3, True, -1, 2), (2, True, 0, 1), (7, False, 5, 1)])
def test_trivial(n, codim1, mu, k):
    par = signature_parameters(C.trivial_signature(n, codim1))
    assert (par.mu, par.k) == (mu, k)


def test_trivial_smallest_case():
    assert np.array_equal(C.trivial_signature(2, True).entries, [[0, -1], [-1, 0]])
    with pytest.raises(InvalidParameters):
        C.trivial_signature(1)


@pytest.mark.parametrize("p", [5, 13, 17, 29, 37, 41])
def test_paley_is_conference(p):
    Q = C.paley_conference(p).entries
    assert np.array_equal(Q @ Q, p * np.eye(p + 1, dtype=np.int64))
    par = signature_parameters(C.paley_conference(p))
    assert (par.n, par.k, par.mu) == (p + 1, (p + 1) // 2, 0)


@pytest.mark.parametrize("p", [7, 9, 1, 2, 15])
def test_paley_preconditions(p):
    with pytest.raises(InvalidParameters):
        C.paley_conference(p)


def test_graph_hadamard():
    H = C.graph_hadamard(4)
    assert np.array_equal(H[0], [1, 1, 1, 1]) and np.all(np.diag(H) == 1)
    assert np.array_equal(H @ H, 4 * np.eye(4))
    H16 = C.graph_hadamard(16)
    assert C.is_graph_hadamard(H16)
    assert np.array_equal(H16 @ H16, 16 * np.eye(16))
    for bad in (8, 2, 1, 32):
        with pytest.raises(InvalidParameters):
            C.graph_hadamard(bad)


@pytest.mark.parametrize("order,plus,k,mu", [(16, True, 10, -2), (16, False, 6, 2), (64, True, 36, -2), (64, False, 28, 2)])
def test_hadamard_signatures(order, plus, k, mu):
    par = signature_parameters(C.hadamard_signature(C.graph_hadamard(order), plus))
    assert (par.n, par.k, par.mu) == (order, k, mu)


def test_order4_minus_is_trivial_class():
    Q = C.hadamard_signature(C.graph_hadamard(4), plus=False)
    par = signature_parameters(Q)
    assert (par.k, par.mu) == (1, 2)
    a = seidel.switching_certificate(seidel.graph_from_signature(Q))
    b = seidel.switching_certificate(seidel.graph_from_signature(C.trivial_signature(4)))
    assert a == b


def test_basis_repetition():
    V = C.basis_repetition(1).matrix
    assert np.allclose(V, [[2**-0.5], [2**-0.5]])
    V = C.basis_repetition(2).matrix
    P = V @ V.T
    assert np.allclose(V.T @ V, np.eye(2))
    assert P[0, 1] == 0 and P[0, 2] == pytest.approx(0.5)


def test_recipe_dispatch():
    for kind, size, n in [
        (C.Kind.TRIVIAL_DIM1, 5, 5),
        (C.Kind.TRIVIAL_CODIM1, 5, 5),
        (C.Kind.PALEY_CONFERENCE, 13, 14),
        (C.Kind.GRAPH_HADAMARD_PLUS, 16, 16),
        (C.Kind.GRAPH_HADAMARD_MINUS, 16, 16),
    ]:
        assert C.ConstructionRecipe(kind, size).build().n == n
    assert C.ConstructionRecipe(C.Kind.BASIS_REPETITION, 3).build().n == 6


def test_legendre():
    assert [C.legendre(a, 5) for a in range(5)] == [0, 1, -1, -1, 1]

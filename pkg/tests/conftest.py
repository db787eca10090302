import numpy as np
import pytest

from erasureframes import catalog
from erasureframes.constructions import graph_hadamard, hadamard_signature, paley_conference
from erasureframes.frames import grammian_from_signature


@pytest.fixture(scope="session")
def table2():
    return catalog.table2_matrices()


@pytest.fixture(scope="session")
def table2_grammians(table2):
    return [grammian_from_signature(Q) for Q in table2]


@pytest.fixture(scope="session")
def paley6():
    return paley_conference(5)


@pytest.fixture(scope="session")
def hadamard16_minus():
    return hadamard_signature(graph_hadamard(16), plus=False)


@pytest.fixture(scope="session")
def hadamard16_plus():
    return hadamard_signature(graph_hadamard(16), plus=True)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

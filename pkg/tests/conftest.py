"""
Pytest fixtures for clusterlab tests.

Seeds are rebuilt per test; they are cheap and mutation never touches them in place.
"""

import pytest
from fastapi.testclient import TestClient

from clusterlab.main import app
from clusterlab.services.cartan import datum_of_type
from clusterlab.services.cluster_engine import initial_state
from clusterlab.services.dbc_seed import framed_seed


@pytest.fixture
def sl2_framed():
    """Framed seed of SL_2: A0 (I' level), A1 mutable, A2 and A3 in Σ."""
    return framed_seed(datum_of_type("A1"))


@pytest.fixture
def sl2_initial(sl2_framed):
    return initial_state(sl2_framed.seed)


@pytest.fixture
def sl3_framed():
    return framed_seed(datum_of_type("A2"))


@pytest.fixture
def client():
    """FastAPI TestClient; the app keeps no state between requests."""
    with TestClient(app) as c:
        yield c

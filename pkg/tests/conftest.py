import pytest

from tnbn import accident_network, compile_network


@pytest.fixture(scope="session")
def accident_spec():
    return accident_network()


@pytest.fixture(scope="session")
def accident_net(accident_spec):
    return compile_network(accident_spec)

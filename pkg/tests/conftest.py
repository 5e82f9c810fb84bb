import pytest
from hypothesis import settings

from clustergal.galois import Universe
from clustergal.polysurf import polygon_model

settings.register_profile("exact", deadline=None, derandomize=True)
settings.load_profile("exact")


@pytest.fixture(scope="session")
def hexagon():
    m = polygon_model(6)
    return m, Universe(m.graph)


@pytest.fixture(scope="session")
def octagon():
    m = polygon_model(8)
    return m, Universe(m.graph)

import pytest

from detquartic.catalog import load_catalog, surface_entries
from detquartic.singularities import SolverConfig, profile


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def surfaces():
    return surface_entries()


@pytest.fixture(scope="session")
def catalog_profiles(surfaces):
    """One profile computation per surface entry, shared across tests."""
    out = {}
    for ent in surfaces:
        out[ent.name] = profile(ent.pencil, ent.definite_point, SolverConfig(seed=0))
    return out

"""Shared fixtures: the bundled catalog, compiled demo models, and their
scores. Session scoped because compiling and validating the larger demos
is the slow part of the suite."""

from pathlib import Path

import pytest

from brickline import compile_text, default_catalog, score
from brickline.inventory import load_inventory

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def compile_fixture(name, catalog):
    return compile_text((FIXTURES / name).read_text(encoding="utf-8"),
                        catalog)


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture(scope="session")
def castle(catalog):
    return compile_fixture("castle.bspec", catalog)


@pytest.fixture(scope="session")
def station(catalog):
    return compile_fixture("station.bspec", catalog)


@pytest.fixture(scope="session")
def helicopter(catalog):
    return compile_fixture("helicopter.bspec", catalog)


@pytest.fixture(scope="session")
def tool_models(catalog):
    paths = sorted((FIXTURES / "tools").glob("*.bspec"))
    assert len(paths) == 20
    return [compile_fixture(f"tools/{p.name}", catalog) for p in paths]


@pytest.fixture(scope="session")
def inventory47():
    return load_inventory(str(FIXTURES / "inventory_47.txt"))


@pytest.fixture(scope="session")
def castle_score(castle, catalog):
    return score(castle, catalog)


@pytest.fixture(scope="session")
def station_score(station, catalog):
    return score(station, catalog)


@pytest.fixture(scope="session")
def helicopter_score(helicopter, catalog):
    return score(helicopter, catalog)

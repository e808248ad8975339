from pathlib import Path

import pytest

from src.engines.symmetry_engine import automorphism_group
from src.repositories.theories_repo import builtin_theory, spekkens_bit

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def golden():
    return GOLDEN


@pytest.fixture(scope="session")
def classical2():
    return builtin_theory("classical-2")


@pytest.fixture(scope="session")
def gbit32():
    return builtin_theory("gbit-3-2")


@pytest.fixture(scope="session")
def gbit42():
    return builtin_theory("gbit-4-2")


@pytest.fixture(scope="session")
def octa():
    return builtin_theory("octahedron")


@pytest.fixture(scope="session")
def spekkens():
    return spekkens_bit()


@pytest.fixture(scope="session")
def gbit32_group(gbit32):
    return automorphism_group(gbit32)


@pytest.fixture(scope="session")
def gbit42_group(gbit42):
    return automorphism_group(gbit42)


@pytest.fixture(scope="session")
def spekkens_group(spekkens):
    return automorphism_group(spekkens.theory)

import sys
from pathlib import Path

import pytest

# Add the src directory to the Python path if running tests outside of pytest
src_path = Path(__file__).parent.parent / "src"
if src_path.exists() and str(src_path) not in sys.path:
    sys.path.insert(0, str(src_path))

from homotopy_monoids.cli import load_corpus  # noqa: E402

# Get the fixtures directory
FIXTURES_DIR = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    """Return the path to the fixtures directory"""
    return FIXTURES_DIR


@pytest.fixture(scope="session")
def corpus():
    """The shipped fixture corpus"""
    return load_corpus()


@pytest.fixture
def z2(corpus):
    return corpus.monoid("z2")


@pytest.fixture
def free2(corpus):
    """Words of length <= 2 in x, y; longer products are 0"""
    return corpus.semigroup("free2")


@pytest.fixture
def rp2_chain_path():
    """Return the path to the chain complex of RP^2"""
    return FIXTURES_DIR / "rp2.chain"

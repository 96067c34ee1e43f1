"""
Central pytest configuration and fixtures for the graph equivalence toolkit.

This module provides reusable fixtures for:
- Environment variable setup (GCE_* settings)
- Seeded random data (Faker)
- Random matrix factories
"""
import pytest
import sys
import os
from pathlib import Path

from faker import Faker

# Add gce directory to path for imports
gce_dir = Path(__file__).parent.parent / 'gce'
sys.path.insert(0, str(gce_dir))

from gce_config import reload_settings
from tests.fixtures.generators import random_matrix


FAKER_SEED = 20240611


# ==============================================================================
# Environment Setup
# ==============================================================================

@pytest.fixture(scope='session', autouse=True)
def set_test_environment():
    """Set up test environment variables for all tests."""
    os.environ['GCE_VERIFY_SNF'] = '1'
    os.environ['GCE_LOG_LEVEL'] = 'WARNING'
    for name in ('GCE_MAX_N', 'GCE_CANON_MAX_N', 'GCE_CLASS_MAX_SIZE',
                 'GCE_K0_BRUTE_FORCE_CAP', 'GCE_SEARCH_MAX_N'):
        os.environ.pop(name, None)
    reload_settings()

    yield

    reload_settings()


@pytest.fixture
def settings_env(monkeypatch):
    """
    Set GCE_* variables for one test: settings_env(GCE_MAX_N=4).

    Cached settings are reloaded on entry and exit.
    """
    def apply(**values):
        for name, value in values.items():
            monkeypatch.setenv(name, str(value))
        reload_settings()

    yield apply
    monkeypatch.undo()
    reload_settings()


# ==============================================================================
# Random Data
# ==============================================================================

@pytest.fixture
def fake():
    """Faker instance with a fixed seed so random suites are reproducible."""
    generator = Faker()
    generator.seed_instance(FAKER_SEED)
    return generator


@pytest.fixture
def matrix_factory(fake):
    """Factory for random matrices: matrix_factory(n, density=0.45)."""
    def create(n, density=0.45):
        return random_matrix(fake, n, density)
    return create

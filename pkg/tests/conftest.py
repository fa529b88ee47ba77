"""Shared fixtures: the standard systems and one large eigenvalue ledger.

Session scope so the expensive enumerations run once for the whole suite.
"""

import pytest

from fracspec import decimation


@pytest.fixture(scope="session")
def sg_dirichlet():
    return decimation.sg_system("dirichlet")


@pytest.fixture(scope="session")
def sg_neumann():
    return decimation.sg_system("neumann")


@pytest.fixture(scope="session")
def cheb():
    return decimation.chebyshev_system()


@pytest.fixture(scope="session")
def sg_spectrum_1e6(sg_dirichlet):
    """Dirichlet ledger up to 1e6, shared by counting and heat-trace tests."""
    return decimation.enumerate_spectrum(sg_dirichlet, cutoff=1.0e6,
                                         node_budget=2_000_000)


@pytest.fixture(scope="session")
def sg_spectrum_2e6(sg_dirichlet):
    """Deeper Dirichlet ledger for short-time heat-trace evaluation."""
    return decimation.enumerate_spectrum(sg_dirichlet, cutoff=2.0e6,
                                         node_budget=2_000_000)

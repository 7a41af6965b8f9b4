import pytest

from codual.bundles import Bundle, codual
from codual.fintop import FinTop, sierpinski
from codual.fixtures import fixture_bundles, no_adjoint_bundle
from codual.gflinalg import DualPair, full_subspace, span, zero_subspace


@pytest.fixture(scope="session")
def pair():
    return DualPair.standard(2, 2)


@pytest.fixture(scope="session")
def running(pair):
    """R: Sierpinski base, kappa(x) = <(1,0)>, kappa(y) = full."""
    return Bundle(sierpinski(), pair,
                  (span(2, 2, [(1, 0)]), full_subspace(2, 2)))


@pytest.fixture(scope="session")
def running_dual(running):
    return codual(running)


@pytest.fixture(scope="session")
def point_zero(pair):
    return Bundle(FinTop(1, (0, 1)), pair, (zero_subspace(2, 2),))


@pytest.fixture(scope="session")
def point_full(pair):
    return Bundle(FinTop(1, (0, 1)), pair, (full_subspace(2, 2),))


@pytest.fixture(scope="session")
def fixtures():
    return fixture_bundles()


@pytest.fixture(scope="session")
def adjointless():
    return no_adjoint_bundle()

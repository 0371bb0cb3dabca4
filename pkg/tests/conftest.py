"""Shared fixtures.

The two 5000-step growth runs take tens of seconds each, so they are
session-scoped and shared between the unit tests and the acceptance
suite.  Everything else is cheap enough to build inline.
"""

import pytest

from tilestat.ulam import UlamConfig, ulam_generate


@pytest.fixture(scope="session")
def unit_5000():
    return ulam_generate(UlamConfig.unit(), 5000)


@pytest.fixture(scope="session")
def golden_5000():
    return ulam_generate(UlamConfig.golden(), 5000)


# verify_structure needs the frontier of a run stopped at exactly 1500
# steps, so these cannot be sliced out of the long runs above.

@pytest.fixture(scope="session")
def unit_1500():
    return ulam_generate(UlamConfig.unit(), 1500)


@pytest.fixture(scope="session")
def golden_1500():
    return ulam_generate(UlamConfig.golden(), 1500)

import pytest

from psu4designs import permgroup, sieve
from psu4designs.geometry import ISOTROPIC, NONSQUARE_TYPE, SQUARE_TYPE


@pytest.fixture(scope="session")
def full_scan():
    """The acceptance-range scan, shared across tests (about a second)."""
    return sieve.scan_all(13, 3)


@pytest.fixture(scope="session")
def reflection_actions():
    """The induced reflection actions on the three orthogonal point sets."""
    return {
        "menon36": permgroup.orthogonal_reflection_action(SQUARE_TYPE),
        "minus45": permgroup.orthogonal_reflection_action(NONSQUARE_TYPE),
        "higman40": permgroup.orthogonal_reflection_action(ISOTROPIC),
    }

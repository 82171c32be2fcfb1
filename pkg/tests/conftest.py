import pytest

from dirac_nu.refdata import load_reference


@pytest.fixture(scope="session")
def ref():
    return load_reference()

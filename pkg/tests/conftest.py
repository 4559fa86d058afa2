import numpy as np
import pytest

from logigrow import data as lgdata
from logigrow.timeseries import extract_series


@pytest.fixture(scope="session")
def senegal_dataset():
    return lgdata.load_fixture()


@pytest.fixture(scope="session")
def total_cases(senegal_dataset):
    return extract_series(senegal_dataset, "total_cases")


@pytest.fixture(scope="session")
def new_cases(senegal_dataset):
    return extract_series(senegal_dataset, "new_cases")


@pytest.fixture(scope="session")
def total_deaths(senegal_dataset):
    return extract_series(senegal_dataset, "total_deaths")


@pytest.fixture(scope="session")
def new_deaths(senegal_dataset):
    return extract_series(senegal_dataset, "new_deaths")


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)

import pytest

from allocflow import fixtures
from allocflow.model import instance_from_dict


@pytest.fixture
def single_sort():
    return instance_from_dict(fixtures.single_sort())


@pytest.fixture
def dataset_d2():
    return instance_from_dict(fixtures.dataset_pipeline(2.0))


@pytest.fixture
def vision():
    return instance_from_dict(fixtures.vision_pipeline())

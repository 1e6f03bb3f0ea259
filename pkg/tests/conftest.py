import pytest

from sdconsensus import DesignSpec, PlantModel, design


@pytest.fixture(scope="session")
def example1_spec():
    return DesignSpec(3.0, 0.3, 6.0)


@pytest.fixture(scope="session")
def example1_design(example1_spec):
    return design(example1_spec)


@pytest.fixture(scope="session")
def example2_spec():
    return DesignSpec(1.0, 5.0, 60.0)


@pytest.fixture(scope="session")
def example2_design(example2_spec):
    return design(example2_spec)


@pytest.fixture(scope="session")
def di_plant():
    return PlantModel.double_integrator()

import numpy as np
import pytest

from mqtransfer import ChainSpec, summary_table


@pytest.fixture(scope="session")
def table_n6_free():
    return summary_table(ChainSpec(6), "free")


@pytest.fixture(scope="session")
def table_n6_one():
    return summary_table(ChainSpec(6), "fixed_one")


@pytest.fixture(scope="session")
def table_n42_free():
    return summary_table(ChainSpec(42), "free")


@pytest.fixture(scope="session")
def table_n42_one():
    return summary_table(ChainSpec(42), "fixed_one")


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)

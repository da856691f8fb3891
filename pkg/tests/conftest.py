import pytest

from gazepie import PieConfig, build_layout


@pytest.fixture
def cfg():
    return PieConfig()


@pytest.fixture
def layout6():
    return build_layout(6)

import numpy as np
import pytest
from omegaconf import OmegaConf

from basis.indices import FamilyId, parse_window
from verify.config import Tolerances


@pytest.fixture
def tolerances():
    return Tolerances()


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def fourier():
    return FamilyId("FourierCircle")


@pytest.fixture
def fourier_window(fourier):
    return parse_window(fourier, "|m|<=8")


@pytest.fixture
def logdir(tmp_path):
    return OmegaConf.create({"root": str(tmp_path / "run"), "data": "data", "overwrite": True})


@pytest.fixture
def offline():
    return OmegaConf.create({"online": False, "times": True})

import logfire
import numpy as np
import pytest
import torch

from motionloom.data import SyntheticSpec, gen_synthetic
from motionloom.model import Forecaster, ModelSettings, tiny_model_settings

logfire.configure(send_to_logfire=False, console=False)

TINY_JOINTS = 2


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def generator() -> torch.Generator:
    return torch.Generator().manual_seed(1234)


@pytest.fixture
def tiny_settings() -> ModelSettings:
    return tiny_model_settings()


@pytest.fixture
def tiny_forecaster(tiny_settings: ModelSettings) -> Forecaster:
    return Forecaster(3 * TINY_JOINTS, tiny_settings, seed=7)


@pytest.fixture
def periodic_frames() -> np.ndarray:
    spec = SyntheticSpec.random(joints=TINY_JOINTS, period=25, length=120, seed=3)
    return np.asarray(gen_synthetic(spec).frames)

import math
from pathlib import Path

import numpy as np
import pandas as pd
import pytest
import torch
from torch import nn

from motionloom.data import SyntheticSpec, gen_synthetic, sample_windows
from motionloom.exceptions import InvalidArgument, NumericFailure
from motionloom.model import Forecaster, tiny_model_settings
from motionloom.training import (
    LossKind,
    TrainSettings,
    backward,
    split_window,
    train,
    window_loss,
    write_loss_log,
)

POSE_DIM = 6
WINDOW = 24


def _windows(seed: int = 0, count: int = 8) -> list[np.ndarray]:
    spec = SyntheticSpec.random(
        joints=2,
        period=12,
        length=WINDOW + count - 1,
        seed=seed,
        amplitude=1.0,
        spread=5.0,
    )
    return sample_windows(gen_synthetic(spec), WINDOW, 1)[:count]


def _forecaster(seed: int = 0, **overrides) -> Forecaster:
    return Forecaster(POSE_DIM, tiny_model_settings(**overrides), seed=seed)


def test_split_window_shapes(tiny_settings) -> None:
    window = torch.arange(24 * 6, dtype=torch.float64).reshape(24, 6)
    history, target = split_window(window, tiny_settings)
    assert history.shape == (20, 6)
    assert target.shape == (16, 6)
    assert torch.equal(target, window[-16:])
    assert torch.equal(history, window[:20])


def test_split_window_needs_room_for_target(tiny_settings) -> None:
    with pytest.raises(InvalidArgument, match="at least 20 frames"):
        split_window(torch.zeros(19, 6, dtype=torch.float64), tiny_settings)


def test_backward_covers_every_parameter() -> None:
    forecaster = _forecaster()
    data = torch.from_numpy(np.stack(_windows()))
    grads = backward(window_loss(forecaster, data, LossKind.MPJPE3D), forecaster)
    params = dict(forecaster.named_parameters())
    assert grads.keys() == params.keys()
    for name, grad in grads.items():
        assert grad.shape == params[name].shape


def test_backward_zero_fills_unused_parameters() -> None:
    module = nn.Linear(2, 2, dtype=torch.float64)
    grads = backward(module.weight.sum(), module)
    assert not grads["bias"].any()
    assert (grads["weight"] == 1).all()


def test_backward_names_non_finite_parameter() -> None:
    module = nn.Linear(2, 2, dtype=torch.float64)
    with pytest.raises(NumericFailure, match="gradient of weight"):
        backward(module.weight.sum() * math.inf, module)


def test_training_reduces_loss() -> None:
    settings = TrainSettings(
        EPOCHS=30, BATCH_SIZE=8, LEARNING_RATE=0.003, LR_DECAY=1.0
    )
    result = train(_windows(), _forecaster(), settings)
    assert len(result.log) == 30
    assert result.log[-1].train_loss < result.log[0].train_loss
    assert all(r.val_loss is None for r in result.log)
    assert result.best_epoch == 30


def test_same_seed_gives_identical_logs() -> None:
    settings = TrainSettings(EPOCHS=3, BATCH_SIZE=3, SEED=5)
    first = train(_windows(), _forecaster(seed=2), settings)
    second = train(_windows(), _forecaster(seed=2), settings)
    assert first.log == second.log
    for (_, a), (_, b) in zip(
        first.forecaster.named_parameters(),
        second.forecaster.named_parameters(),
        strict=True,
    ):
        assert torch.equal(a, b)


@pytest.mark.filterwarnings("error::UserWarning")
def test_training_emits_no_user_warnings() -> None:
    settings = TrainSettings(EPOCHS=2, BATCH_SIZE=4)
    assert len(train(_windows(), _forecaster(), settings).log) == 2


def test_validation_restores_best_epoch() -> None:
    settings = TrainSettings(EPOCHS=4, BATCH_SIZE=4, LEARNING_RATE=0.01)
    result = train(_windows(), _forecaster(), settings, validation=_windows(seed=9))
    losses = [r.val_loss for r in result.log]
    assert all(loss is not None for loss in losses)
    assert result.best_epoch == 1 + int(np.argmin(losses))


def test_angle_loss_on_small_rotations() -> None:
    spec = SyntheticSpec.random(
        joints=2, period=12, length=40, seed=4, amplitude=0.5, spread=0.3
    )
    windows = sample_windows(gen_synthetic(spec), WINDOW, 4)
    result = train(
        windows,
        _forecaster(),
        TrainSettings(EPOCHS=2, BATCH_SIZE=2, LOSS_KIND=LossKind.ANGLE_L1),
    )
    assert all(math.isfinite(r.train_loss) for r in result.log)


def test_non_finite_window_aborts_with_position() -> None:
    windows = _windows()
    windows[0] = windows[0].copy()
    windows[0][3, 0] = np.nan
    with pytest.raises(NumericFailure, match="epoch 1, batch 0"):
        train(windows, _forecaster(), TrainSettings(EPOCHS=1, BATCH_SIZE=8))


def test_empty_training_set_is_rejected() -> None:
    with pytest.raises(InvalidArgument, match="no training windows"):
        train([], _forecaster(), TrainSettings())


def test_loss_log_columns(tmp_path: Path) -> None:
    result = train(_windows(), _forecaster(), TrainSettings(EPOCHS=2, BATCH_SIZE=8))
    write_loss_log(result.log, tmp_path / "loss.csv")
    frame = pd.read_csv(tmp_path / "loss.csv")
    assert list(frame.columns) == ["epoch", "lr", "train_loss"]
    assert frame["epoch"].tolist() == [1, 2]

    validated = train(
        _windows(),
        _forecaster(),
        TrainSettings(EPOCHS=2, BATCH_SIZE=8),
        validation=_windows(seed=1),
    )
    write_loss_log(validated.log, tmp_path / "val.csv")
    assert list(pd.read_csv(tmp_path / "val.csv").columns) == [
        "epoch",
        "lr",
        "train_loss",
        "val_loss",
    ]


@pytest.mark.slow
def test_small_set_overfits() -> None:
    settings = TrainSettings(
        EPOCHS=300, BATCH_SIZE=8, LEARNING_RATE=0.01, LR_DECAY=0.1 ** (1 / 299)
    )
    result = train(_windows(), _forecaster(), settings)
    assert result.log[-1].train_loss * 10 <= result.log[0].train_loss

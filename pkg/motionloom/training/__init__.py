from motionloom.training.backward import backward
from motionloom.training.loop import (
    EpochRecord,
    TrainResult,
    parameter_loss,
    split_window,
    train,
    validation_loss,
    window_loss,
    write_loss_log,
)
from motionloom.training.losses import angle_l1_loss, mpjpe_loss, safe_norm
from motionloom.training.optim import (
    OptimizerState,
    adam_step,
    init_state,
    lr_schedule,
)
from motionloom.training.settings import LossKind, TrainConfig, TrainSettings

__all__ = [
    "EpochRecord",
    "LossKind",
    "OptimizerState",
    "TrainConfig",
    "TrainResult",
    "TrainSettings",
    "adam_step",
    "angle_l1_loss",
    "backward",
    "init_state",
    "lr_schedule",
    "mpjpe_loss",
    "parameter_loss",
    "safe_norm",
    "split_window",
    "train",
    "validation_loss",
    "window_loss",
    "write_loss_log",
]

from motionloom.model.baselines import zero_velocity_baseline
from motionloom.model.forecaster import (
    ForecastBatch,
    Forecaster,
    predict_once,
    predict_recursive,
)
from motionloom.model.padding import pad_last_pose
from motionloom.model.schemas import ForecastResult, PoseRepr, PoseSequence
from motionloom.model.settings import ModelSettings, tiny_model_settings

__all__ = [
    "ForecastBatch",
    "ForecastResult",
    "Forecaster",
    "ModelSettings",
    "PoseRepr",
    "PoseSequence",
    "pad_last_pose",
    "predict_once",
    "predict_recursive",
    "tiny_model_settings",
    "zero_velocity_baseline",
]

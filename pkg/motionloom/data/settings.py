from pydantic import BaseModel, ConfigDict

from motionloom.types import PositiveFloat, PositiveInt


class DataSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    TRAIN_LENGTH: PositiveInt = 60
    WINDOW_STRIDE: PositiveInt = 1
    TARGET_FPS: PositiveFloat = 25.0
    EVAL_STRIDE: PositiveInt = 5

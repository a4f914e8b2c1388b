from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field

from motionloom.types import NonNegativeInt, PositiveFloat, PositiveInt

# lr(1) = 5e-4 decays geometrically to 5e-5 at epoch 50
DEFAULT_LR_DECAY = 0.1 ** (1 / 49)


class LossKind(StrEnum):
    MPJPE3D = "mpjpe3d"
    ANGLE_L1 = "angle_l1"


class TrainSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    LEARNING_RATE: PositiveFloat = 0.0005
    EPOCHS: PositiveInt = 50
    BATCH_SIZE: PositiveInt = 32
    LR_DECAY: float = Field(default=DEFAULT_LR_DECAY, gt=0, le=1)
    ADAM_BETA1: float = Field(default=0.9, ge=0, lt=1)
    ADAM_BETA2: float = Field(default=0.999, ge=0, lt=1)
    ADAM_EPSILON: PositiveFloat = 1e-8
    LOSS_KIND: LossKind = LossKind.MPJPE3D
    SEED: NonNegativeInt = 0


TrainConfig = TrainSettings

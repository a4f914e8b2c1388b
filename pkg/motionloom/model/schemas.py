from enum import StrEnum
from typing import Self

from pydantic import BaseModel, ConfigDict, model_validator

from motionloom.attention.schemas import AttentionOutput
from motionloom.types import FloatMatrix, PositiveFloat, PositiveInt


class PoseRepr(StrEnum):
    COORDS3D = "coords3d"
    EXPMAP = "expmap"


class PoseSequence(BaseModel):
    """N x K pose trajectory. ``joints`` is optional once constant
    dimensions have been stripped."""

    model_config = ConfigDict(frozen=True)

    frames: FloatMatrix
    fps: PositiveFloat
    repr: PoseRepr = PoseRepr.COORDS3D
    joints: PositiveInt | None = None

    @model_validator(mode="after")
    def check_joints(self) -> Self:
        if self.joints is not None and self.pose_dim != 3 * self.joints:
            raise ValueError(
                f"K={self.pose_dim} does not equal 3 x joints={self.joints}"
            )
        return self

    @property
    def pose_dim(self) -> int:
        return self.frames.shape[1]

    def __len__(self) -> int:
        return self.frames.shape[0]

    def with_frames(self, frames, **changes) -> "PoseSequence":
        return PoseSequence.model_validate(
            {
                "fps": self.fps,
                "repr": self.repr,
                "joints": self.joints,
                **changes,
                "frames": frames,
            }
        )


class ForecastResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    frames: FloatMatrix
    trace: list[AttentionOutput]

    @model_validator(mode="after")
    def check_steps(self) -> Self:
        if self.trace and self.frames.shape[0] % len(self.trace):
            raise ValueError(
                f"{self.frames.shape[0]} frames do not split into "
                f"{len(self.trace)} equal steps"
            )
        return self

    @property
    def steps(self) -> int:
        return len(self.trace)

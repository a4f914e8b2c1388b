from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from motionloom.types import KernelPair, PositiveFloat, PositiveInt


class AttentionKind(StrEnum):
    MOTION = "motion"
    FRAME_WISE = "frame_wise"


class AttentionSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    PAST_WINDOW: PositiveInt = 10
    FUTURE_WINDOW: PositiveInt = 10
    QUERY_DIM: PositiveInt = 256
    HIDDEN_CHANNELS: PositiveInt = 256
    KERNEL_SIZES: KernelPair = (6, 5)
    DCT_RETAIN: PositiveInt | None = None
    INPUT_SCALE: PositiveFloat = 1000.0
    ATTENTION_KIND: AttentionKind = AttentionKind.MOTION
    SCORE_EPSILON: float = Field(default=1e-12, ge=0)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def RECEPTIVE_FIELD(self) -> int:
        return self.KERNEL_SIZES[0] + self.KERNEL_SIZES[1] - 1

    @computed_field  # type: ignore[prop-decorator]
    @property
    def SEGMENT_LENGTH(self) -> int:
        return self.PAST_WINDOW + self.FUTURE_WINDOW

    @computed_field  # type: ignore[prop-decorator]
    @property
    def RETAIN(self) -> int:
        if self.DCT_RETAIN is not None:
            return self.DCT_RETAIN
        return 20 if self.SEGMENT_LENGTH == 60 else self.SEGMENT_LENGTH

    @model_validator(mode="after")
    def check_windows(self):
        if self.PAST_WINDOW < self.RECEPTIVE_FIELD:
            raise ValueError(
                f"PAST_WINDOW={self.PAST_WINDOW} is shorter than the encoder "
                f"receptive field {self.RECEPTIVE_FIELD}"
            )
        if self.RETAIN > self.SEGMENT_LENGTH:
            raise ValueError(
                f"DCT_RETAIN={self.RETAIN} exceeds PAST_WINDOW+FUTURE_WINDOW"
                f"={self.SEGMENT_LENGTH}"
            )
        return self


AttentionConfig = AttentionSettings

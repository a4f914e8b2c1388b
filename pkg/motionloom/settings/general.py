from typing import Self

from pydantic import BaseModel, model_validator

from motionloom.data.settings import DataSettings
from motionloom.logging.settings import LoggingSettings
from motionloom.model.settings import ModelSettings
from motionloom.observability.settings import ObservabilitySettings
from motionloom.training.settings import TrainSettings


class Settings(
    LoggingSettings,
    ObservabilitySettings,
    ModelSettings,
    TrainSettings,
    DataSettings,
):
    @model_validator(mode="after")
    def check_train_length(self) -> Self:
        required = self.SEGMENT_LENGTH + self.FUTURE_WINDOW
        if self.TRAIN_LENGTH < required:
            raise ValueError(
                f"TRAIN_LENGTH={self.TRAIN_LENGTH} leaves no room for a "
                f"{self.SEGMENT_LENGTH}-frame key/value pair plus "
                f"{self.FUTURE_WINDOW} target frames (need {required})"
            )
        return self

    def section[T: BaseModel](self, settings_cls: type[T]) -> T:
        return settings_cls.model_validate(
            {name: getattr(self, name) for name in settings_cls.model_fields}
        )

    @property
    def history_length(self) -> int:
        return self.TRAIN_LENGTH - self.FUTURE_WINDOW

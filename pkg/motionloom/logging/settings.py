from typing import Annotated, Literal

from pydantic import BeforeValidator, Field

from motionloom.settings.base import MonitoringSettings
from motionloom.settings.utils import pydantic_env_or_default

type LogLevel = int | Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class LoggingSettings(MonitoringSettings):
    LOG_LEVEL: Annotated[LogLevel, BeforeValidator(pydantic_env_or_default)] = (
        Field(default="INFO", validate_default=True)
    )
    LOGGING_QUIET_LOGGERS: tuple[str, ...] = ("matplotlib", "logfire")
    LOG_EVERY_N_BATCHES: int = Field(default=1, ge=1)

from typing import Annotated

from pydantic import BeforeValidator, Field

from motionloom.settings.base import MonitoringSettings
from motionloom.settings.utils import pydantic_env_or_default


def EnvDefault[T](default: T):
    return Field(default=default, validate_default=True)


class ObservabilitySettings(MonitoringSettings):
    OTEL_ENABLED: Annotated[int, BeforeValidator(pydantic_env_or_default)] = (
        EnvDefault(0)
    )
    OTEL_CONSOLE: bool = False

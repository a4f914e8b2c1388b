from pydantic import BaseModel, ConfigDict, Field


class ProjectSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    PROJECT_NAME: str = "motionloom"


class MonitoringSettings(ProjectSettings):
    ENVIRONMENT: str = Field(default="development")

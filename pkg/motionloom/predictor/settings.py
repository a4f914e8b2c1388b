from pydantic import BaseModel, ConfigDict

from motionloom.types import PositiveInt, UnitInterval


class GcnSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    GCN_BLOCKS: PositiveInt = 12
    GCN_WIDTH: PositiveInt = 256
    GCN_DROPOUT: UnitInterval = 0.0


GcnConfig = GcnSettings

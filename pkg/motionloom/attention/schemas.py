from typing import NamedTuple

from pydantic import BaseModel, ConfigDict

from motionloom.types import FloatMatrix, FloatVector


class SubsequencePair(NamedTuple):
    """1-based inclusive frame ranges of one key/value pair."""

    key_start: int
    key_end: int
    value_start: int
    value_end: int


class AttentionOutput(BaseModel):
    model_config = ConfigDict(frozen=True)

    scores: FloatVector
    values: FloatMatrix
    history_length: int

    @property
    def U(self):
        return self.values

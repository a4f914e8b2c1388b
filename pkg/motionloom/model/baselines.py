import numpy as np

from motionloom.exceptions import InvalidArgument
from motionloom.model.padding import pad_last_pose
from motionloom.model.schemas import PoseSequence


def zero_velocity_baseline(
    history: PoseSequence | np.ndarray, horizon: int
) -> np.ndarray:
    """``horizon`` copies of the last observed frame."""
    frames = history.frames if isinstance(history, PoseSequence) else history
    if horizon < 0:
        raise InvalidArgument(f"horizon must be >= 0, got {horizon}")
    return pad_last_pose(np.asarray(frames)[-1:], horizon)[1:]

from typing import overload

import numpy as np
import torch

from motionloom.exceptions import InvalidArgument


@overload
def pad_last_pose(window: np.ndarray, future: int) -> np.ndarray: ...
@overload
def pad_last_pose(window: torch.Tensor, future: int) -> torch.Tensor: ...
def pad_last_pose(window, future: int):
    """Append ``future`` copies of the last pose along the frame axis (-2)."""
    if window.ndim < 2 or window.shape[-2] == 0:
        raise InvalidArgument("cannot pad an empty window")
    if future < 0:
        raise InvalidArgument(f"padding length must be >= 0, got {future}")
    last = window[..., -1:, :]
    if isinstance(window, torch.Tensor):
        repeats = [1] * (window.ndim - 2) + [future, 1]
        return torch.cat([window, last.repeat(*repeats)], dim=-2)
    return np.concatenate(
        [window, np.repeat(last, future, axis=-2)], axis=-2
    )

import logging

import numpy as np

from motionloom.exceptions import EmptySequence, InvalidArgument
from motionloom.model.schemas import PoseSequence

logger = logging.getLogger(__name__)

RATIO_TOLERANCE = 0.01


def downsample(seq: PoseSequence, target_fps: float) -> PoseSequence:
    """Keep every k-th frame, k = round(fps / target_fps)."""
    if target_fps <= 0 or target_fps > seq.fps:
        raise InvalidArgument(
            f"cannot resample {seq.fps} fps to {target_fps} fps"
        )
    ratio = seq.fps / target_fps
    step = round(ratio)
    if abs(ratio - step) > RATIO_TOLERANCE * ratio:
        raise InvalidArgument(
            f"{seq.fps} / {target_fps} = {ratio:.4f} is not an integer ratio"
        )
    if step == 1:
        return seq
    return seq.with_frames(seq.frames[::step], fps=seq.fps / step)


def strip_constant_dims(
    seq: PoseSequence, tolerance: float = 1e-8
) -> tuple[PoseSequence, np.ndarray]:
    """Drop coordinates whose range over all frames is within ``tolerance``.

    Returns the reduced sequence and the indices of the kept coordinates.
    """
    if len(seq) < 2:
        raise InvalidArgument("need at least 2 frames to detect constant dims")
    spread = np.ptp(seq.frames, axis=0)
    kept = np.flatnonzero(spread > tolerance)
    if kept.size == 0:
        raise EmptySequence(
            f"all {seq.pose_dim} coordinates are constant within {tolerance}"
        )
    logger.debug("kept %d of %d coordinates", kept.size, seq.pose_dim)
    if kept.size == seq.pose_dim:
        return seq, kept
    return seq.with_frames(seq.frames[:, kept], joints=None), kept


def reassemble_dims(
    reduced: np.ndarray, kept: np.ndarray, template: np.ndarray
) -> np.ndarray:
    """Write the kept columns back into copies of the constant ``template``
    pose."""
    reduced = np.asarray(reduced, dtype=np.float64)
    if reduced.shape[-1] != len(kept):
        raise InvalidArgument(
            f"{reduced.shape[-1]} columns for {len(kept)} kept indices"
        )
    full = np.broadcast_to(
        np.asarray(template, dtype=np.float64),
        (*reduced.shape[:-1], len(template)),
    ).copy()
    full[..., kept] = reduced
    return full


def sample_windows(
    seq: PoseSequence | np.ndarray, length: int, stride: int = 1
) -> list[np.ndarray]:
    """Windows of ``length`` frames starting every ``stride`` frames.

    A sequence shorter than ``length`` yields no windows.
    """
    if length < 1 or stride < 1:
        raise InvalidArgument(
            f"window length and stride must be >= 1, got {length}, {stride}"
        )
    frames = seq.frames if isinstance(seq, PoseSequence) else np.asarray(seq)
    return [
        frames[start : start + length]
        for start in range(0, len(frames) - length + 1, stride)
    ]

import logging
from pathlib import Path

import numpy as np

from motionloom.data import downsample, load_sequence, sample_windows
from motionloom.exceptions import EmptySequence
from motionloom.model import PoseSequence

logger = logging.getLogger(__name__)

SEQUENCE_SUFFIX = ".seq"


def sequence_files(directory: Path) -> list[Path]:
    files = sorted(directory.glob(f"*{SEQUENCE_SUFFIX}"))
    if not files:
        raise EmptySequence(f"no {SEQUENCE_SUFFIX} files in {directory}")
    return files


def load_resampled(path: Path, target_fps: float) -> PoseSequence:
    seq = load_sequence(path)
    if seq.fps > target_fps:
        seq = downsample(seq, target_fps)
    return seq


def load_windows(
    directory: Path, length: int, stride: int, target_fps: float
) -> dict[str, list[np.ndarray]]:
    """Windows of every sequence file keyed by file stem.

    A sequence shorter than ``length`` contributes itself whole so that
    evaluation can report it as skipped.
    """
    windows: dict[str, list[np.ndarray]] = {}
    for path in sequence_files(directory):
        seq = load_resampled(path, target_fps)
        windows[path.stem] = sample_windows(seq, length, stride) or [
            np.asarray(seq.frames)
        ]
        logger.debug("%s: %d windows", path.name, len(windows[path.stem]))
    return windows

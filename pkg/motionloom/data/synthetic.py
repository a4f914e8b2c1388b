import logging

import numpy as np

from motionloom.data.schemas import SegmentKind, SyntheticSpec
from motionloom.model.schemas import PoseRepr, PoseSequence

logger = logging.getLogger(__name__)


def _oscillation(spec: SyntheticSpec, frames: np.ndarray) -> np.ndarray:
    base = (
        np.zeros(spec.pose_dim)
        if spec.base_pose is None
        else np.asarray(spec.base_pose, dtype=np.float64)
    )
    signal = np.tile(base, (len(frames), 1))
    for coordinate, harmonics in enumerate(spec.harmonics):
        for harmonic in harmonics:
            signal[:, coordinate] += harmonic.amplitude * np.sin(
                2 * np.pi * harmonic.order * frames / spec.period
                + harmonic.phase
            )
    return signal


def gen_synthetic(spec: SyntheticSpec, seed: int | None = None) -> PoseSequence:
    """Render ``spec`` frame by frame.

    Segments are applied in order; frames past the last segment continue
    the periodic motion with the accumulated drift offset.
    """
    seed = spec.seed if seed is None else seed
    frames = np.arange(spec.length, dtype=np.float64)
    oscillation = _oscillation(spec, frames)
    poses = oscillation.copy()
    offset = np.zeros(spec.pose_dim)

    start = 0
    for segment in spec.segments:
        stop = min(start + segment.length, spec.length)
        span = slice(start, stop)
        match segment.kind:
            case SegmentKind.PERIODIC:
                poses[span] = oscillation[span] + offset
            case SegmentKind.DRIFT:
                velocity = np.broadcast_to(
                    np.asarray(segment.velocity, dtype=np.float64),
                    (spec.pose_dim,),
                )
                steps = np.arange(1, stop - start + 1)[:, None]
                poses[span] = oscillation[span] + offset + velocity * steps
                offset = offset + velocity * (stop - start)
            case SegmentKind.REST:
                poses[span] = oscillation[start] + offset
        start = stop
        if start >= spec.length:
            break
    poses[start:] = oscillation[start:] + offset

    if spec.noise > 0:
        rng = np.random.default_rng(seed)
        poses += rng.normal(0.0, spec.noise, poses.shape)
    logger.debug(
        "generated %d frames, %d segments, seed %d",
        spec.length,
        len(spec.segments),
        seed,
    )
    return PoseSequence(
        frames=poses, fps=spec.fps, repr=PoseRepr.COORDS3D, joints=spec.joints
    )


def ambiguity_pair(
    spec: SyntheticSpec, seed: int | None = None
) -> tuple[PoseSequence, PoseSequence]:
    """Two ``spec.length``-frame sequences that end on the same pose while
    moving in opposite directions.

    Both are cut from one 2N-1 frame rendering: the first half as is and
    the second half played backwards.
    """
    doubled = spec.model_copy(update={"length": 2 * spec.length - 1})
    rendered = gen_synthetic(doubled, seed)
    forward = rendered.frames[: spec.length]
    backward = rendered.frames[spec.length - 1 :][::-1]
    return rendered.with_frames(forward), rendered.with_frames(backward)
